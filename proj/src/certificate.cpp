#include "ubirk/certificate.hpp"

#include "ubirk/errors.hpp"

#include <algorithm>
#include <map>

namespace ubirk {

std::vector<std::vector<Element>> coordinate_rows(std::size_t arity,
                                                  const std::vector<std::vector<Element>>& support)
{
    std::vector<std::vector<Element>> rows(arity, std::vector<Element>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = 0; j < arity; ++j)
            rows[j][i] = support[i][j];
    return rows;
}

namespace {

std::vector<std::vector<Element>> generate_domain(const FiniteAlgebra& a,
                                                  const std::vector<std::vector<Element>>& seeds,
                                                  std::size_t length, const Caps& caps)
{
    Block block{&a, length};
    ClosureResult closure = close_rows({&block, 1}, seeds, {caps.cloneMembers, caps.tableBytes});
    if (!closure.complete())
        throw CapExceeded("subalgebra of A^F exceeds the member cap");
    return sorted_rows(closure);
}

std::string row_text(const std::vector<Element>& row)
{
    std::string s = "(";
    for (std::size_t i = 0; i < row.size(); ++i)
        s += (i ? " " : "") + std::to_string(row[i]);
    return s + ")";
}

} // namespace

CertificateResult hspfin_certificate(const AlgebraPtr& a, const AlgebraPtr& b,
                                     std::vector<Element> generators, const Caps& caps)
{
    require_same_signature(*a, *b);
    if (generators.empty())
        throw InvalidArgument("certificates need at least one generator");
    for (Element g : generators)
        if (g >= b->size())
            throw InvalidArgument("generator " + std::to_string(g) + " outside '" + b->label() + "'");
    const std::size_t n = generators.size();

    auto result = natural_hom(a, b, n, caps);
    if (auto* cx = std::get_if<IdentityCounterexample>(&result))
        return CertificateFailure{"natural homomorphism undefined: '" + b->label() +
                                      "' is not in HSP('" + a->label() + "')",
                                  std::move(*cx)};
    const NaturalHom& hom = std::get<NaturalHom>(result);

    CloneEntourage alpha{n, {generators}};
    CloneEntourage witness = uc_witness(hom, alpha);

    HspFinCertificate cert;
    cert.a = a;
    cert.b = b;
    cert.generators = generators;
    cert.support = witness.support;
    const std::size_t width = cert.support.size();
    cert.domain = generate_domain(*a, coordinate_rows(n, cert.support), width, caps);

    std::vector<std::size_t> at;
    for (const auto& t : cert.support)
        at.push_back(tuple_index(t, a->size()));
    const std::size_t point = tuple_index(generators, b->size());

    // h((f(a))_{a in F}) := phi(f)(b_1..b_n), read off every member f.
    std::map<std::vector<Element>, Element> h;
    std::vector<Element> row(width);
    for (std::size_t m = 0; m < hom.sourceLevel.size(); ++m) {
        auto f = hom.sourceLevel.member(m);
        for (std::size_t i = 0; i < width; ++i)
            row[i] = f[at[i]];
        Element value = hom.image(m)[point];
        auto [it, inserted] = h.emplace(row, value);
        if (!inserted && it->second != value)
            throw InternalConsistency("h is ill-defined at " + row_text(row) + ": values " +
                                      std::to_string(it->second) + " and " +
                                      std::to_string(value));
    }
    if (h.size() != cert.domain.size() ||
        !std::equal(cert.domain.begin(), cert.domain.end(), h.begin(),
                    [](const auto& d, const auto& kv) { return d == kv.first; }))
        throw InternalConsistency("generated D differs from the restrictions of Clo_n(A) to F");
    for (auto& [r, v] : h)
        cert.map.emplace_back(r, v);

    VerifyReport report = verify_certificate(cert, caps);
    if (!report.valid)
        throw InternalConsistency("constructed certificate fails verification: " + report.violation);
    return cert;
}

VerifyReport verify_certificate(const HspFinCertificate& cert, const Caps& caps)
{
    VerifyReport report;
    auto fail = [&](std::string why) {
        report.valid = false;
        report.violation = std::move(why);
        return report;
    };
    auto pass = [&] { ++report.checksRun; };

    if (!cert.a || !cert.b)
        return fail("missing algebra");
    const FiniteAlgebra& a = *cert.a;
    const FiniteAlgebra& b = *cert.b;
    if (!(a.signature() == b.signature()))
        return fail("algebras have different signatures");
    pass();

    const std::size_t n = cert.generators.size();
    if (n == 0)
        return fail("no generators");
    for (Element g : cert.generators)
        if (g >= b.size())
            return fail("generator " + std::to_string(g) + " outside B");
    pass();

    if (cert.support.empty())
        return fail("support F is empty");
    for (std::size_t i = 0; i < cert.support.size(); ++i) {
        const auto& t = cert.support[i];
        if (t.size() != n)
            return fail("support tuple " + std::to_string(i) + " has length " +
                        std::to_string(t.size()) + ", expected " + std::to_string(n));
        for (Element x : t)
            if (x >= a.size())
                return fail("support tuple " + row_text(t) + " outside A^n");
        for (std::size_t j = 0; j < i; ++j)
            if (cert.support[j] == t)
                return fail("support tuple " + row_text(t) + " listed twice");
    }
    pass();

    const std::size_t width = cert.support.size();
    const auto seeds = coordinate_rows(n, cert.support);
    std::vector<std::vector<Element>> regenerated;
    try {
        regenerated = generate_domain(a, seeds, width, caps);
    } catch (const CapExceeded& e) {
        return fail(std::string("cannot regenerate D: ") + e.what());
    }
    for (const auto& row : cert.domain)
        if (row.size() != width)
            return fail("domain row " + row_text(row) + " has the wrong width");
    if (cert.domain != regenerated) {
        for (std::size_t i = 0; i < std::max(cert.domain.size(), regenerated.size()); ++i) {
            if (i >= cert.domain.size())
                return fail("domain is missing " + row_text(regenerated[i]));
            if (i >= regenerated.size() || cert.domain[i] != regenerated[i]) {
                bool listedIsMember = std::binary_search(regenerated.begin(), regenerated.end(),
                                                         cert.domain[i]);
                if (!listedIsMember)
                    return fail("domain row " + row_text(cert.domain[i]) +
                                " is not generated by the d_j");
                return fail("domain differs from the subalgebra generated by the d_j near row " +
                            row_text(cert.domain[i]));
            }
        }
    }
    pass();

    std::map<std::vector<Element>, Element> h;
    for (const auto& [row, value] : cert.map) {
        if (value >= b.size())
            return fail("h" + row_text(row) + " = " + std::to_string(value) + " outside B");
        if (!h.emplace(row, value).second)
            return fail("h lists " + row_text(row) + " twice");
        if (!std::binary_search(regenerated.begin(), regenerated.end(), row))
            return fail("h is defined outside D at " + row_text(row));
    }
    for (const auto& row : regenerated)
        if (!h.count(row))
            return fail("h is undefined at " + row_text(row));
    pass();

    for (std::size_t j = 0; j < n; ++j)
        if (h.at(seeds[j]) != cert.generators[j])
            return fail("h(d_" + std::to_string(j + 1) + ") = " + std::to_string(h.at(seeds[j])) +
                        " but b_" + std::to_string(j + 1) + " = " +
                        std::to_string(cert.generators[j]));
    pass();

    // Homomorphism law on D, componentwise in A^F.
    const Signature& sig = a.signature();
    std::vector<const std::vector<Element>*> rows;
    std::vector<Element> values;
    for (const auto& [row, value] : h) {
        rows.push_back(&row);
        values.push_back(value);
    }
    Block block{&a, width};
    std::vector<Element> out(width);
    for (std::size_t s = 0; s < sig.size(); ++s) {
        const std::size_t arity = sig[s].arity;
        std::vector<std::size_t> idx(arity, 0);
        std::vector<std::span<const Element>> args(arity);
        std::vector<Element> images(arity);
        for (;;) {
            for (std::size_t j = 0; j < arity; ++j) {
                args[j] = *rows[idx[j]];
                images[j] = values[idx[j]];
            }
            compose_rows({&block, 1}, s, args, out);
            auto it = h.find(out);
            if (it == h.end())
                return fail("D is not closed under '" + sig[s].name + "'");
            Element expected = b.apply(s, images);
            if (it->second != expected) {
                std::string where;
                for (std::size_t j = 0; j < arity; ++j)
                    where += (j ? ", " : "") + row_text(*rows[idx[j]]);
                return fail("homomorphism law fails for '" + sig[s].name + "' at (" + where +
                            "): h gives " + std::to_string(it->second) + ", B gives " +
                            std::to_string(expected));
            }
            std::size_t j = arity;
            while (j-- > 0) {
                if (++idx[j] < rows.size())
                    break;
                idx[j] = 0;
            }
            if (j == static_cast<std::size_t>(-1))
                break;
        }
    }
    pass();

    std::vector<Element> c = generate_subalgebra(b, cert.generators);
    std::vector<Element> image(values.begin(), values.end());
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image != c)
        return fail("h(D) has " + std::to_string(image.size()) + " elements but <b> has " +
                    std::to_string(c.size()));
    pass();

    report.valid = true;
    return report;
}

Homomorphism certificate_homomorphism(const HspFinCertificate& cert, const Caps& caps)
{
    const FiniteAlgebra& a = *cert.a;
    const std::size_t width = cert.support.size();
    if (cert.domain.size() > caps.productSize)
        throw CapExceeded("D exceeds the product size cap");
    std::map<std::vector<Element>, Element> index;
    for (std::size_t i = 0; i < cert.domain.size(); ++i)
        index.emplace(cert.domain[i], static_cast<Element>(i));

    const Signature& sig = a.signature();
    Block block{&a, width};
    std::vector<Element> out(width);
    std::vector<std::vector<Element>> tables;
    for (std::size_t s = 0; s < sig.size(); ++s) {
        std::size_t arity = sig[s].arity;
        std::size_t entries = checked_pow(cert.domain.size(), arity, caps.tableBytes / sizeof(Element));
        if (entries == 0)
            throw CapExceeded("table of D exceeds the byte cap");
        std::vector<Element> table(entries);
        std::vector<Element> idx(arity, 0);
        std::vector<std::span<const Element>> args(arity);
        for (std::size_t e = 0; e < entries; ++e) {
            for (std::size_t j = 0; j < arity; ++j)
                args[j] = cert.domain[idx[j]];
            compose_rows({&block, 1}, s, args, out);
            auto it = index.find(out);
            if (it == index.end())
                throw InvalidArgument("certificate domain is not closed under '" + sig[s].name + "'");
            table[e] = it->second;
            tuple_next(idx, cert.domain.size());
        }
        tables.push_back(std::move(table));
    }
    FiniteAlgebra d(sig, cert.domain.size(), std::move(tables), "D");
    Subalgebra c = restrict_to(*cert.b, generate_subalgebra(*cert.b, cert.generators));
    std::vector<Element> local(cert.b->size(), 0);
    for (std::size_t i = 0; i < c.carrier.size(); ++i)
        local[c.carrier[i]] = static_cast<Element>(i);
    std::vector<Element> map(cert.domain.size(), 0);
    for (const auto& [row, value] : cert.map) {
        auto it = index.find(row);
        if (it == index.end() || !std::binary_search(c.carrier.begin(), c.carrier.end(), value))
            throw InvalidArgument("certificate map does not fit D -> C");
        map[it->second] = local[value];
    }
    return {share(std::move(d)), share(std::move(c.algebra)), std::move(map)};
}

} // namespace ubirk
