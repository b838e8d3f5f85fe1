#pragma once

#include "ubirk/homomorphism.hpp"
#include "ubirk/natural_hom.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ubirk {

/// Evidence that C = <b_1..b_n>_B is a homomorphic image of a subalgebra D of
/// a finite power A^F.
struct HspFinCertificate {
    AlgebraPtr a;
    AlgebraPtr b;
    std::vector<Element> generators;               // b_1..b_n
    std::vector<std::vector<Element>> support;     // F, tuples in A^n
    std::vector<std::vector<Element>> domain;      // D, rows in A^F, ascending
    std::vector<std::pair<std::vector<Element>, Element>> map;  // h as (row, value) pairs

    std::size_t arity() const noexcept { return generators.size(); }
};

struct CertificateFailure {
    std::string reason;
    std::optional<IdentityCounterexample> counterexample;
};

using CertificateResult = std::variant<HspFinCertificate, CertificateFailure>;

/// Builds the certificate along the uniform-continuity route: support F from
/// uc_witness, D generated by the coordinate rows d_j, and h read off phi.
CertificateResult hspfin_certificate(const AlgebraPtr& a, const AlgebraPtr& b,
                                     std::vector<Element> generators, const Caps& caps = {});

/// The generating rows d_j in A^F with d_j(a) = a_j.
std::vector<std::vector<Element>> coordinate_rows(std::size_t arity,
                                                  const std::vector<std::vector<Element>>& support);

/// D and C as explicit algebras with h between them; needs |D| within the
/// product size cap.
Homomorphism certificate_homomorphism(const HspFinCertificate& cert, const Caps& caps = {});

struct VerifyReport {
    bool valid = false;
    std::string violation;          // first failed check, empty when valid
    std::size_t checksRun = 0;
};

/// Re-derives every invariant from scratch: D regenerated from the d_j,
/// h(d_j) = b_j, the homomorphism law on D, surjectivity onto C.
VerifyReport verify_certificate(const HspFinCertificate& cert, const Caps& caps = {});

void write_certificate(std::ostream& out, const HspFinCertificate& cert);
std::string format_certificate(const HspFinCertificate& cert);
HspFinCertificate parse_certificate(std::string_view text);

} // namespace ubirk
