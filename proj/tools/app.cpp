#include "app.hpp"

#include "cache.hpp"
#include "report.hpp"

#include "ubirk/algebra_io.hpp"
#include "ubirk/alf.hpp"
#include "ubirk/certificate.hpp"
#include "ubirk/errors.hpp"
#include "ubirk/natural_hom.hpp"
#include "ubirk/orbits.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace ubirk::app {

namespace {

struct Config {
    Caps caps;
    std::size_t probeDepth = 5;
    std::string cacheDir;
    std::string format = "text";
};

struct Outcome {
    Report report = Report::object();
    int exit = kSuccess;
};

struct LoadedAlgebra {
    AlgebraPtr alg;
    std::string bytes;
};

LoadedAlgebra load(const std::string& path)
{
    std::string bytes = read_file(path);
    try {
        return {share(parse_algebra(bytes)), bytes};
    } catch (const ParseError& e) {
        throw ParseError(path + ":" + e.what(), 0, 0);
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush())
        throw Error("cannot write '" + path + "'");
}

std::vector<Element> parse_tuple(const std::string& text)
{
    std::vector<Element> out;
    std::istringstream in(text);
    for (std::string part; std::getline(in, part, ',');) {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(part, &used);
            if (used != part.size())
                throw std::invalid_argument(part);
            out.push_back(static_cast<Element>(v));
        } catch (const std::exception&) {
            throw InvalidArgument("malformed tuple '" + text + "'");
        }
    }
    if (out.empty())
        throw InvalidArgument("empty tuple");
    return out;
}

// A cached level is used only when the caps would have let it complete.
bool within_caps(const CloneLevel& level, const Caps& caps)
{
    const std::size_t bytesPerTable = level.table_length() * sizeof(Element);
    return level.size() <= caps.cloneMembers && bytesPerTable <= caps.tableBytes &&
           level.size() <= caps.tableBytes / bytesPerTable;
}

CloneLevel level_for(const Config& cfg, const Cache& cache, const LoadedAlgebra& a, std::size_t n)
{
    if (auto hit = cache.load_level(a.alg, a.bytes, n); hit && within_caps(*hit, cfg.caps))
        return *hit;
    CloneLevel level = clone_generate(a.alg, n, cfg.caps);
    cache.store_level(a.bytes, level);
    return level;
}

Report table_json(std::span<const Element> t)
{
    return Report(std::vector<Element>(t.begin(), t.end()));
}

Report identity_report(const IdentityCounterexample& c, const FiniteAlgebra& a,
                       const FiniteAlgebra& b, const Caps& caps)
{
    Report r = Report::object();
    r["identity"] = print_term(c.left) + " = " + print_term(c.right);
    r["arity"] = c.arity;
    auto aTable = term_table(c.left, a, c.arity, caps);
    auto bLeft = term_table(c.left, b, c.arity, caps);
    auto bRight = term_table(c.right, b, c.arity, caps);
    r["a_table"] = aTable;
    r["b_left"] = bLeft;
    r["b_right"] = bRight;
    for (std::size_t i = 0; i < bLeft.size(); ++i)
        if (bLeft[i] != bRight[i]) {
            r["b_witness"] = tuple_decode(i, b.size(), c.arity);
            r["b_left_value"] = bLeft[i];
            r["b_right_value"] = bRight[i];
            break;
        }
    return r;
}

std::optional<std::vector<Element>> generator_option(const std::vector<Element>& gens, bool given)
{
    if (!given)
        return std::nullopt;
    return gens;
}

// ---- group options ----

struct GroupSpec {
    std::string file;
    std::size_t symmetric = 0;
    std::size_t trivial = 0;
    std::vector<std::size_t> equivalence;
};

void add_group_options(CLI::App* sub, GroupSpec& spec)
{
    sub->add_option("group", spec.file, "group file, one generator per line");
    sub->add_option("--symmetric", spec.symmetric, "use Sym(d)")->check(CLI::PositiveNumber);
    sub->add_option("--trivial", spec.trivial, "use the trivial group of degree d")
        ->check(CLI::PositiveNumber);
    sub->add_option("--equivalence", spec.equivalence,
                    "class labels of an equivalence; use its automorphism group");
}

PermGroup resolve_group(const GroupSpec& spec)
{
    int chosen = !spec.file.empty() + (spec.symmetric > 0) + (spec.trivial > 0) +
                 !spec.equivalence.empty();
    if (chosen != 1)
        throw InvalidArgument(
            "give exactly one of a group file, --symmetric, --trivial, --equivalence");
    if (!spec.file.empty())
        return load_group(spec.file);
    if (spec.symmetric > 0)
        return symmetric_group(spec.symmetric);
    if (spec.trivial > 0)
        return trivial_group(spec.trivial);
    return equivalence_automorphisms(spec.equivalence);
}

std::string group_bytes(const PermGroup& g)
{
    std::ostringstream out;
    write_group(out, g);
    return out.str();
}

OrbitPartition cached_orbits(const Config& cfg, const Cache& cache, const PermGroup& g,
                             const std::string& bytes, std::size_t length, OrbitBackend backend)
{
    PowerSpace space{g.degree(), length};
    space.points(cfg.caps);
    if (auto hit = cache.load_orbits(bytes, length); hit && hit->space_size() == space.points())
        return *hit;
    OrbitPartition part = orbits(g, space, cfg.caps, backend);
    cache.store_orbits(bytes, length, part);
    return part;
}

// ---- commands ----

struct CloneArgs {
    std::string algebra;
    std::size_t arity = 1;
    bool tables = false;
    bool terms = false;
};

Outcome cmd_clone(const Config& cfg, const Cache& cache, const CloneArgs& args)
{
    LoadedAlgebra a = load(args.algebra);
    CloneLevel level = level_for(cfg, cache, a, args.arity);
    Outcome o;
    o.report["algebra"] = a.alg->label();
    o.report["arity"] = args.arity;
    o.report["members"] = level.size();
    o.report["complete"] = level.complete();
    if (args.tables || args.terms) {
        Report list = Report::array();
        for (std::size_t i = 0; i < level.size(); ++i) {
            Report m = Report::object();
            m["index"] = i;
            if (args.tables)
                m["table"] = table_json(level.member(i));
            if (args.terms)
                m["term"] = print_term(level.witness(i));
            list.push_back(std::move(m));
        }
        o.report["operations"] = std::move(list);
    }
    if (!level.complete()) {
        o.report["cap"] = "member cap " + std::to_string(cfg.caps.cloneMembers) +
                          ", table byte cap " + std::to_string(cfg.caps.tableBytes);
        o.exit = kCap;
    }
    return o;
}

struct FreeArgs {
    std::string algebra;
    std::size_t arity = 1;
    std::string output;
};

Outcome cmd_free(const Config& cfg, const Cache& cache, const FreeArgs& args)
{
    LoadedAlgebra a = load(args.algebra);
    CloneLevel level = level_for(cfg, cache, a, args.arity);
    if (!level.complete())
        throw CapExceeded("Clo_" + std::to_string(args.arity) + " did not reach its fixpoint");
    FreeAlgebra f = free_algebra(level, cfg.caps);
    Outcome o;
    o.report["algebra"] = a.alg->label();
    o.report["arity"] = args.arity;
    o.report["size"] = f.algebra.size();
    o.report["generators"] = f.generators;
    if (!args.output.empty()) {
        write_text_file(args.output, format_algebra(f.algebra));
        o.report["written"] = args.output;
    } else {
        o.report["free_algebra"] = format_algebra(f.algebra);
    }
    return o;
}

struct PairArgs {
    std::string a;
    std::string b;
    std::vector<Element> generators;
    std::string certificate;
    std::size_t arity = 1;
    bool graph = false;
    std::vector<std::string> alpha;
};

Report certificate_summary(const HspFinCertificate& cert, const std::string& path)
{
    Report r = Report::object();
    r["support_size"] = cert.support.size();
    r["domain_size"] = cert.domain.size();
    VerifyReport v = verify_certificate(cert);
    if (!v.valid)
        throw InternalConsistency("emitted certificate fails verification: " + v.violation);
    r["verified"] = true;
    if (!path.empty()) {
        write_text_file(path, format_certificate(cert));
        r["written"] = path;
    } else {
        r["text"] = format_certificate(cert);
    }
    return r;
}

Outcome cmd_hsp(const Config& cfg, const PairArgs& args, bool generatorsGiven)
{
    LoadedAlgebra a = load(args.a);
    LoadedAlgebra b = load(args.b);
    HspVerdict v = hsp_membership(a.alg, b.alg, generator_option(args.generators, generatorsGiven),
                                  cfg.caps);
    Outcome o;
    o.report["verdict"] = v.member ? "yes" : "no";
    o.report["a"] = a.alg->label();
    o.report["b"] = b.alg->label();
    o.report["generators"] = v.generators;
    if (v.member) {
        o.report["clone_size_a"] = v.hom->sourceLevel.size();
        o.report["clone_size_b"] = v.hom->targetLevel.size();
        CertificateResult c = hspfin_certificate(a.alg, b.alg, v.generators, cfg.caps);
        if (auto* failure = std::get_if<CertificateFailure>(&c))
            throw InternalConsistency("no certificate for a positive verdict: " + failure->reason);
        o.report["certificate"] =
            certificate_summary(std::get<HspFinCertificate>(c), args.certificate);
    } else {
        o.report["separating_identity"] =
            identity_report(*v.counterexample, *a.alg, *b.alg, cfg.caps);
        o.exit = kNegative;
    }
    return o;
}

Outcome cmd_cert(const Config& cfg, const PairArgs& args, bool generatorsGiven)
{
    LoadedAlgebra a = load(args.a);
    LoadedAlgebra b = load(args.b);
    std::vector<Element> gens =
        generatorsGiven ? args.generators : minimal_generators(*b.alg);
    if (gens.empty())
        gens.push_back(0);
    CertificateResult c = hspfin_certificate(a.alg, b.alg, gens, cfg.caps);
    Outcome o;
    o.report["a"] = a.alg->label();
    o.report["b"] = b.alg->label();
    o.report["generators"] = gens;
    if (auto* failure = std::get_if<CertificateFailure>(&c)) {
        o.report["certificate"] = "none";
        o.report["reason"] = failure->reason;
        if (failure->counterexample)
            o.report["separating_identity"] =
                identity_report(*failure->counterexample, *a.alg, *b.alg, cfg.caps);
        o.exit = kNegative;
        return o;
    }
    o.report["certificate"] = certificate_summary(std::get<HspFinCertificate>(c), args.certificate);
    return o;
}

Outcome cmd_nat_hom(const Config& cfg, const PairArgs& args)
{
    LoadedAlgebra a = load(args.a);
    LoadedAlgebra b = load(args.b);
    NaturalHomResult r = natural_hom(a.alg, b.alg, args.arity, cfg.caps);
    Outcome o;
    o.report["a"] = a.alg->label();
    o.report["b"] = b.alg->label();
    o.report["arity"] = args.arity;
    if (auto* c = std::get_if<IdentityCounterexample>(&r)) {
        o.report["exists"] = false;
        o.report["separating_identity"] = identity_report(*c, *a.alg, *b.alg, cfg.caps);
        o.exit = kNegative;
        return o;
    }
    const NaturalHom& hom = std::get<NaturalHom>(r);
    if (auto failure = check_clone_hom_laws(hom))
        throw InternalConsistency("clone homomorphism law fails: " + *failure);
    o.report["exists"] = true;
    o.report["source_members"] = hom.sourceLevel.size();
    o.report["target_members"] = hom.targetLevel.size();
    o.report["generator_images"] = hom.generatorImages;
    if (args.graph) {
        Report list = Report::array();
        for (std::size_t i = 0; i < hom.sourceLevel.size(); ++i) {
            Report m = Report::object();
            m["term"] = print_term(hom.sourceLevel.witness(i));
            m["source"] = table_json(hom.sourceLevel.member(i));
            m["target"] = table_json(hom.image(i));
            list.push_back(std::move(m));
        }
        o.report["graph"] = std::move(list);
    }
    return o;
}

Outcome cmd_uc_witness(const Config& cfg, const PairArgs& args)
{
    LoadedAlgebra a = load(args.a);
    LoadedAlgebra b = load(args.b);
    CloneEntourage alpha{args.arity, {}};
    for (const auto& t : args.alpha) {
        alpha.support.push_back(parse_tuple(t));
        if (alpha.support.back().size() != args.arity)
            throw InvalidArgument("support tuple '" + t + "' does not have length " +
                                  std::to_string(args.arity));
        for (Element e : alpha.support.back())
            if (e >= b.alg->size())
                throw InvalidArgument("support tuple '" + t + "' leaves the carrier of B");
    }
    NaturalHomResult r = natural_hom(a.alg, b.alg, args.arity, cfg.caps);
    Outcome o;
    o.report["a"] = a.alg->label();
    o.report["b"] = b.alg->label();
    o.report["arity"] = args.arity;
    o.report["alpha"] = alpha.support;
    if (auto* c = std::get_if<IdentityCounterexample>(&r)) {
        o.report["exists"] = false;
        o.report["separating_identity"] = identity_report(*c, *a.alg, *b.alg, cfg.caps);
        o.exit = kNegative;
        return o;
    }
    const NaturalHom& hom = std::get<NaturalHom>(r);
    CloneEntourage e = uc_witness(hom, alpha);
    if (!uc_implication_holds(hom, e, alpha))
        throw InternalConsistency("uniform continuity witness fails its implication");
    o.report["witness"] = e.support;
    o.report["witness_size"] = e.support.size();
    return o;
}

Outcome cmd_verify(const Config& cfg, const std::string& path)
{
    std::string text = read_file(path);
    HspFinCertificate cert = [&] {
        try {
            return parse_certificate(text);
        } catch (const ParseError& e) {
            throw ParseError(path + ":" + e.what(), 0, 0);
        }
    }();
    VerifyReport v = verify_certificate(cert, cfg.caps);
    Outcome o;
    o.report["valid"] = v.valid;
    o.report["checks"] = v.checksRun;
    if (!v.valid) {
        o.report["violation"] = v.violation;
        o.exit = kNegative;
    }
    return o;
}

struct SpaceArgs {
    GroupSpec group;
    std::size_t arity = 1;
    bool list = false;
    std::string backend = "bfs";
    std::size_t depth = 0;
};

Outcome cmd_orbits(const Config& cfg, const Cache& cache, const SpaceArgs& args)
{
    PermGroup g = resolve_group(args.group);
    OrbitBackend backend =
        args.backend == "union-find" ? OrbitBackend::UnionFind : OrbitBackend::Bfs;
    OrbitPartition part = cached_orbits(cfg, cache, g, group_bytes(g), args.arity, backend);
    Outcome o;
    o.report["degree"] = g.degree();
    o.report["arity"] = args.arity;
    o.report["points"] = part.space_size();
    o.report["orbits"] = part.count();
    if (args.list) {
        std::vector<std::size_t> sizes(part.count(), 0);
        for (std::uint32_t id : part.orbitIndex)
            ++sizes[id];
        Report list = Report::array();
        for (std::size_t i = 0; i < part.count(); ++i) {
            Report m = Report::object();
            m["representative"] = tuple_decode(part.representatives[i], g.degree(), args.arity);
            m["size"] = sizes[i];
            list.push_back(std::move(m));
        }
        o.report["orbit_list"] = std::move(list);
    }
    return o;
}

Outcome cmd_oligo(const Config& cfg, const Cache& cache, const SpaceArgs& args)
{
    PermGroup g = resolve_group(args.group);
    const std::string bytes = group_bytes(g);
    std::vector<std::size_t> profile;
    for (std::size_t n = 1; n <= args.arity; ++n)
        profile.push_back(cached_orbits(cfg, cache, g, bytes, n, OrbitBackend::Bfs).count());
    Outcome o;
    o.report["degree"] = g.degree();
    o.report["max_arity"] = args.arity;
    o.report["profile"] = profile;
    return o;
}

Outcome cmd_probe(const Config& cfg, const SpaceArgs& args)
{
    PermGroup g = resolve_group(args.group);
    std::size_t depth = args.depth > 0 ? args.depth : cfg.probeDepth;
    std::vector<std::size_t> schedule(depth);
    std::iota(schedule.begin(), schedule.end(), std::size_t{1});
    ProbeReport p = precompactness_probe(g, schedule, cfg.caps);
    Outcome o;
    o.report["degree"] = g.degree();
    Report levels = Report::array();
    for (const ProbeLevel& l : p.levels) {
        Report m = Report::object();
        m["truncation"] = l.truncation;
        m["points"] = l.points;
        m["orbits"] = l.orbitCount;
        m["growth"] = l.growth;
        levels.push_back(std::move(m));
    }
    o.report["levels"] = std::move(levels);
    o.report["horizon"] = p.horizonReached ? Report(p.horizon) : Report("none");
    o.report["note"] = p.note;
    return o;
}

struct AlfArgs {
    std::string algebra;
    std::size_t maxArity = 2;
    std::size_t sample = 1;
    std::string output;
};

Report unary_group_elements(const UnaryGroup& g, const CloneLevel& unary)
{
    Report list = Report::array();
    for (const Perm& p : g.elements) {
        Report m = Report::object();
        m["perm"] = p;
        if (auto i = unary.find(p))
            m["term"] = print_term(unary.witness(*i));
        list.push_back(std::move(m));
    }
    return list;
}

Outcome cmd_unary_group(const Config& cfg, const Cache& cache, const AlfArgs& args)
{
    LoadedAlgebra a = load(args.algebra);
    CloneLevel unary = level_for(cfg, cache, a, 1);
    if (!unary.complete())
        throw CapExceeded("Clo_1 did not reach its fixpoint");
    UnaryGroup g = unary_group(unary);
    Outcome o;
    o.report["algebra"] = a.alg->label();
    o.report["order"] = g.elements.size();
    o.report["elements"] = unary_group_elements(g, unary);
    if (!args.output.empty()) {
        write_text_file(args.output, group_bytes(g.as_group()));
        o.report["written"] = args.output;
    }
    return o;
}

Outcome cmd_alf(const Config& cfg, const Cache& cache, const AlfArgs& args)
{
    LoadedAlgebra a = load(args.algebra);
    CloneLevel unary = level_for(cfg, cache, a, 1);
    if (!unary.complete())
        throw CapExceeded("Clo_1 did not reach its fixpoint");
    AlfReport r = alf_orbit_counts(a.alg, args.maxArity, args.sample, cfg.caps);
    UnaryGroup g = unary_group(unary);

    Outcome o;
    o.report["algebra"] = a.alg->label();
    o.report["assumption"] = r.assumption;
    o.report["unary_group"] = unary_group_elements(g, unary);
    Report arities = Report::array();
    for (const AlfArity& x : r.arities) {
        Report m = Report::object();
        m["arity"] = x.arity;
        m["clone_size"] = x.cloneSize;
        m["orbits"] = x.orbitCount;
        arities.push_back(std::move(m));
    }
    o.report["arities"] = std::move(arities);
    Report subs = Report::array();
    for (const FgOrbitResult& s : r.subalgebras) {
        Report m = Report::object();
        m["power"] = s.power;
        m["generators"] = s.generators;
        m["size"] = s.subalgebra.size();
        m["orbits"] = s.orbitCount;
        m["representatives"] = s.representatives;
        subs.push_back(std::move(m));
    }
    o.report["subalgebras"] = std::move(subs);

    auto samples = sample_generator_tuples(a.alg->size(), std::min(args.sample, args.maxArity));
    auto local = locally_finite_check(a.alg, samples, cfg.caps);
    std::size_t agreeing = 0;
    for (const auto& s : local)
        agreeing += s.imageMatches;
    if (agreeing != local.size())
        throw InternalConsistency("a clone evaluation image differs from its generated subalgebra");
    Report lf = Report::object();
    lf["samples"] = local.size();
    lf["agreeing"] = agreeing;
    o.report["local_finiteness"] = std::move(lf);

    Report oligo = Report::array();
    for (const FgOligoEntry& e : oligo_on_fg_subalgebras(a.alg, args.maxArity, args.sample, cfg.caps)) {
        Report m = Report::object();
        m["generators"] = e.generators;
        m["subalgebra"] = e.subalgebra;
        m["profile"] = e.profile;
        oligo.push_back(std::move(m));
    }
    o.report["fg_oligo"] = std::move(oligo);
    return o;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Clones, varieties and group actions of finite algebras", "ubirk"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--cap-members", cfg.caps.cloneMembers, "clone member cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--cap-table-bytes", cfg.caps.tableBytes, "table byte cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--cap-product", cfg.caps.productSize, "product carrier cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--cap-points", cfg.caps.spacePoints, "function space point cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--probe-depth", cfg.probeDepth, "default probe depth")
        ->check(CLI::PositiveNumber);
    app.add_option("--cache", cfg.cacheDir, "cache directory");
    app.add_option("--format", cfg.format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));

    std::function<Outcome(const Cache&)> action;

    CloneArgs cloneArgs;
    auto* clone = app.add_subcommand("clone", "n-ary term operations of an algebra");
    clone->add_option("algebra", cloneArgs.algebra)->required();
    clone->add_option("-n,--arity", cloneArgs.arity)->check(CLI::PositiveNumber);
    clone->add_flag("--tables", cloneArgs.tables, "print operation tables");
    clone->add_flag("--terms", cloneArgs.terms, "print witness terms");
    clone->callback([&] { action = [&](const Cache& c) { return cmd_clone(cfg, c, cloneArgs); }; });

    FreeArgs freeArgs;
    auto* free = app.add_subcommand("free", "relatively free algebra on n generators");
    free->add_option("algebra", freeArgs.algebra)->required();
    free->add_option("-n,--arity", freeArgs.arity)->check(CLI::PositiveNumber);
    free->add_option("-o,--output", freeArgs.output, "write the algebra to a file");
    free->callback([&] { action = [&](const Cache& c) { return cmd_free(cfg, c, freeArgs); }; });

    PairArgs pairArgs;
    auto add_pair = [&](CLI::App* sub) {
        sub->add_option("a", pairArgs.a)->required();
        sub->add_option("b", pairArgs.b)->required();
    };
    CLI::Option* hspGens = nullptr;
    auto* hsp = app.add_subcommand("hsp", "decide B in HSP(A)");
    add_pair(hsp);
    hspGens = hsp->add_option("-g,--generators", pairArgs.generators, "generators of B");
    hsp->add_option("-c,--certificate", pairArgs.certificate, "write the certificate to a file");
    hsp->callback([&] {
        action = [&](const Cache&) { return cmd_hsp(cfg, pairArgs, hspGens->count() > 0); };
    });

    CLI::Option* certGens = nullptr;
    auto* cert = app.add_subcommand("cert", "certificate that <generators>_B is in HSPfin(A)");
    add_pair(cert);
    certGens = cert->add_option("-g,--generators", pairArgs.generators, "generators in B");
    cert->add_option("-o,--output", pairArgs.certificate, "write the certificate to a file");
    cert->callback([&] {
        action = [&](const Cache&) { return cmd_cert(cfg, pairArgs, certGens->count() > 0); };
    });

    auto* natHom = app.add_subcommand("nat-hom", "arity-n natural clone homomorphism");
    add_pair(natHom);
    natHom->add_option("-n,--arity", pairArgs.arity)->check(CLI::PositiveNumber);
    natHom->add_flag("--graph", pairArgs.graph, "print the graph");
    natHom->callback([&] { action = [&](const Cache&) { return cmd_nat_hom(cfg, pairArgs); }; });

    auto* uc = app.add_subcommand("uc-witness", "support witnessing uniform continuity");
    add_pair(uc);
    uc->add_option("-n,--arity", pairArgs.arity)->check(CLI::PositiveNumber);
    uc->add_option("--alpha", pairArgs.alpha, "support tuples in B^n, e.g. 0,1")->required();
    uc->callback([&] { action = [&](const Cache&) { return cmd_uc_witness(cfg, pairArgs); }; });

    std::string certPath;
    auto* verify = app.add_subcommand("verify", "check a certificate");
    verify->add_option("certificate", certPath)->required();
    verify->callback([&] { action = [&](const Cache&) { return cmd_verify(cfg, certPath); }; });

    SpaceArgs spaceArgs;
    auto* orb = app.add_subcommand("orbits", "orbits on X^n");
    add_group_options(orb, spaceArgs.group);
    orb->add_option("-n,--arity", spaceArgs.arity)->check(CLI::PositiveNumber);
    orb->add_flag("--list", spaceArgs.list, "list representatives");
    orb->add_option("--backend", spaceArgs.backend)->check(CLI::IsMember({"bfs", "union-find"}));
    orb->callback([&] { action = [&](const Cache& c) { return cmd_orbits(cfg, c, spaceArgs); }; });

    auto* oligo = app.add_subcommand("oligo", "orbit counts on X^n for n = 1..k");
    add_group_options(oligo, spaceArgs.group);
    oligo->add_option("-k,--max-arity", spaceArgs.arity)->check(CLI::PositiveNumber);
    oligo->callback([&] { action = [&](const Cache& c) { return cmd_oligo(cfg, c, spaceArgs); }; });

    auto* probe = app.add_subcommand("probe", "orbit counts of growing truncations");
    add_group_options(probe, spaceArgs.group);
    probe->add_option("--depth", spaceArgs.depth, "largest truncation")->check(CLI::PositiveNumber);
    probe->callback([&] { action = [&](const Cache&) { return cmd_probe(cfg, spaceArgs); }; });

    AlfArgs alfArgs;
    auto* alf = app.add_subcommand("alf", "unary group orbits on clone levels and subalgebras");
    alf->add_option("algebra", alfArgs.algebra)->required();
    alf->add_option("-k,--max-arity", alfArgs.maxArity)->check(CLI::PositiveNumber);
    alf->add_option("--sample-generators", alfArgs.sample)->check(CLI::PositiveNumber);
    alf->callback([&] { action = [&](const Cache& c) { return cmd_alf(cfg, c, alfArgs); }; });

    auto* unary = app.add_subcommand("unary-group", "invertible unary term operations");
    unary->add_option("algebra", alfArgs.algebra)->required();
    unary->add_option("-o,--output", alfArgs.output, "write the group file");
    unary->callback(
        [&] { action = [&](const Cache& c) { return cmd_unary_group(cfg, c, alfArgs); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        Cache cache(cfg.cacheDir.empty() ? std::nullopt
                                         : std::optional<std::filesystem::path>(cfg.cacheDir));
        Outcome o = action(cache);
        render(out, o.report, cfg.format == "structured" ? Format::Structured : Format::Text);
        return o.exit;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return kCap;
    } catch (const IncompleteLevel& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return kCap;
    } catch (const InternalConsistency& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace ubirk::app
