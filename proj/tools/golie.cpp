#include "golie/driver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace golie;

namespace {

struct Globals {
    std::uint64_t seed = 7;
    std::string field = "standard";
    unsigned jobs = 1;
    bool recheck = false;
    std::string out;
    std::string catalog = default_catalog_path();
    bool timing = false;
};

RunOptions run_options(const Globals& gl)
{
    RunOptions o;
    o.seed = gl.seed;
    o.field = parse_field_option(gl.field);
    o.jobs = std::max(1u, gl.jobs);
    o.timing = gl.timing;
    o.catalog_path = gl.catalog;
    return o;
}

void emit(const json& j, const std::string& out)
{
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json_file(out, j);
    }
}

int finish(ReproReport& rep, const Globals& gl)
{
    if (gl.recheck) attach_recheck(rep);
    emit(rep.to_json(), gl.out);
    return rep.passed() ? 0 : 1;
}

LieAlgebra build_algebra(const std::string& type, const ScalarField* field)
{
    if (type.size() > 2 && type.rfind("sp", 0) == 0) return compact_classical("sp", std::stoul(type.substr(2)), field);
    return compact_form(type, field);
}

// Named subalgebra: catalog entry for the ambient type, or sp-blocks-a-b-c.
Subalgebra named_subalgebra(const LieAlgebra& g, const std::string& name, const Globals& gl, const ScalarField* field,
                            std::vector<Basis<Scalar>>* modules = nullptr)
{
    CatalogEntry e;
    if (name.rfind("sp-blocks", 0) == 0) {
        std::vector<std::size_t> blocks;
        std::stringstream ss(name.substr(9));
        std::string part;
        while (std::getline(ss, part, '-'))
            if (!part.empty()) blocks.push_back(std::stoul(part));
        e = sp_block_entry(blocks);
    } else {
        const std::string ambient = g.root_system() ? g.root_system()->type() : g.name();
        e = load_catalog(gl.catalog).find(name, ambient);
    }
    auto cl = span_closure_check(g, evaluate_recipes(g, e.basis, field));
    if (!cl.closed()) throw std::runtime_error("catalog entry '" + name + "' does not close under the bracket");
    if (modules)
        for (const auto& [mn, recipes] : e.modules) modules->push_back(evaluate_recipes(g, recipes, field));
    return *cl.subalgebra;
}

Rational rational_of(const json& j)
{
    Rational r;
    if (j.is_number_integer()) {
        r = Rational(j.get<long>());
    } else if (j.is_string()) {
        r = Rational(j.get<std::string>());
    } else if (j.is_number()) {
        auto q = detail::rationalize(j.get<double>(), 1000000, 1e-12);
        if (!q) throw std::invalid_argument("parameter is not a rational number");
        r = *q;
    } else {
        throw std::invalid_argument("parameter must be a number or a rational string");
    }
    r.canonicalize();
    return r;
}

ReproReport analysis_envelope(const std::string& command, const LieAlgebra& g, const RunOptions& o)
{
    ReproReport rep;
    rep.command = command;
    rep.seed = o.seed;
    rep.field = g.field();
    rep.convention = g.convention();
    rep.algebra = algebra_to_json(g);
    return rep;
}

int cmd_build(const Globals& gl, const std::string& type)
{
    auto o = run_options(gl);
    LieAlgebra g = build_algebra(type, o.field);
    json j = algebra_to_json(g);
    if (gl.recheck) {
        LieAlgebra back = algebra_from_json(json::parse(j.dump()));
        if (jacobi_violation(back) || !killing_negative_definite(back)) {
            std::cerr << "recheck failed for the serialized algebra\n";
            return 1;
        }
    }
    emit(j, gl.out);
    return 0;
}

int cmd_analyze(const Globals& gl, const std::string& path, const std::string& name)
{
    auto o = run_options(gl);
    LieAlgebra g = algebra_from_json(read_json_file(path));
    std::mt19937_64 rng(o.seed);
    ReproReport rep = analysis_envelope("analyze " + name, g, o);
    detail::StepRunner run(rep, o.timing);
    std::optional<Subalgebra> h;
    run.run(1, "subalgebra", true, [&](Step& s) {
        h = named_subalgebra(g, name, gl, g.field());
        auto rk = rank(*h, rng);
        const bool simple = detail::is_simple(g, h->basis());
        s.summary = json{{"dim", h->dim()}, {"rank", rk.rank}, {"simple", simple}};
        s.certificates.push_back(json{{"kind", "closure"}, {"basis", basis_to_json(h->basis())}, {"simple", simple}});
        s.certificates.push_back(detail::rank_cert(h->basis(), rk));
        s.check(rk.status == CertStatus::certified, "rank unresolved");
    });
    run.run(2, "normalizer", false, [&](Step& s) {
        auto n = normalizer(*h);
        auto c = centralizer(*h);
        s.summary = json{{"normalizer_dim", n.dim()}, {"centralizer_dim", c.dim()},
                         {"self_normalizing", same_span(n.basis(), h->basis(), g.dim())}};
        s.certificates.push_back(json{{"kind", "normalizer"}, {"basis", basis_to_json(h->basis())},
                                      {"normalizer", basis_to_json(n.basis())}, {"centralizer_dim", c.dim()}});
    });
    run.run(3, "regularity", false, [&](Step& s) {
        auto r = is_regular(*h, rng);
        auto n = normalizer(*h);
        s.summary = json{{"regular", r.regular}, {"normalizer_rank", r.normalizer_rank}, {"ambient_rank", r.ambient_rank},
                         {"status", to_string(r.status)}};
        s.certificates.push_back(json{{"kind", "non-regular"}, {"normalizer", basis_to_json(n.basis())},
                                      {"cartan", basis_to_json(r.cartan)}, {"ambient_rank", r.ambient_rank}, {"non_regular", !r.regular}});
        s.check(r.status == CertStatus::certified, "regularity unresolved");
    });
    run.run(4, "weak regularity", false, [&](Step& s) {
        auto w = weak_regularity(*h);
        s.summary = json{{"weakly_regular", w.weakly_regular}, {"hom_k_to_m", w.hom_k_to_m}, {"hom_m_to_k", w.hom_m_to_k}};
        s.certificates.push_back(json{{"kind", "weak-regularity"}, {"basis", basis_to_json(h->basis())},
                                      {"hom_k_to_m", w.hom_k_to_m}, {"hom_m_to_k", w.hom_m_to_k}, {"weakly_regular", w.weakly_regular}});
    });
    run.run(5, "complement decomposition", false, [&](Step& s) {
        auto k = normalizer(*h);
        auto m = killing_complement(g, k.basis());
        auto d = decompose(g, k.basis(), m, rng);
        s.summary = json{{"m_dim", m.size()}, {"modules", detail::decomposition_json(d)}, {"splits", d.splits}};
        json mods = json::array();
        for (const auto& mod : d.modules) mods.push_back(basis_to_json(mod.carrier));
        if (!m.empty()) {
            auto chk = verify_decomposition(g, k.basis(), [&] {
                std::vector<Basis<Scalar>> v;
                for (const auto& mod : d.modules) v.push_back(mod.carrier);
                return v;
            }(), m);
            s.certificates.push_back(json{{"kind", "decomposition"}, {"k", basis_to_json(k.basis())}, {"modules", mods}, {"ok", chk.ok}});
            s.check(chk.ok, "decomposition does not verify");
        }
    });
    return finish(rep, gl);
}

int cmd_go_check(const Globals& gl, const std::string& path, const std::string& name, const std::string& metric)
{
    auto o = run_options(gl);
    LieAlgebra g = algebra_from_json(read_json_file(path));
    std::mt19937_64 rng(o.seed);
    ReproReport rep = analysis_envelope("go-check " + name, g, o);
    detail::StepRunner run(rep, o.timing);
    const json spec = json::parse(metric);
    run.run(1, "go-check", false, [&](Step& s) {
        Subalgebra h = named_subalgebra(g, name, gl, g.field());
        Subalgebra k = normalizer(h);
        auto ideals = ideal_decomposition(k, rng);
        auto shape = natural_shape(k, ideals);
        std::vector<Rational> lambdas;
        if (spec.contains("lambda")) {
            if (spec["lambda"].is_array()) {
                for (const auto& x : spec["lambda"]) lambdas.push_back(rational_of(x));
            } else {
                lambdas.assign(shape.ideals.size(), rational_of(spec["lambda"]));
            }
        } else {
            lambdas.assign(shape.ideals.size(), Rational(1));
        }
        std::vector<std::vector<Rational>> center(shape.center.size(), std::vector<Rational>(shape.center.size(), 0));
        if (spec.contains("center")) {
            center.clear();
            for (const auto& row : spec["center"]) {
                std::vector<Rational> r;
                for (const auto& x : row) r.push_back(rational_of(x));
                center.push_back(r);
            }
        } else {
            for (std::size_t i = 0; i < center.size(); ++i) center[i][i] = 1;
        }
        const json mu = spec.value("mu", json(1));
        if (!mu.is_array()) {
            auto lam = metricform_build(g, shape, MetricParams{center, lambdas, rational_of(mu)});
            auto cert = verify_quadratic_identity(g, lam);
            s.summary = json{{"k_dim", k.dim()}, {"shape", "naturally reductive"}, {"identity_evaluations", cert.evaluations},
                             {"verdict", cert.holds ? "certified-go" : "refuted"}};
            s.certificates.push_back(detail::identity_cert(g, k.basis(), lam, cert));
            s.check(cert.holds, "witness identity fails");
            return;
        }
        // one value per irreducible piece of m, in computed order
        auto m = killing_complement(g, k.basis());
        auto d = decompose(g, k.basis(), m, rng);
        if (mu.size() != d.modules.size())
            throw std::invalid_argument("mu lists " + std::to_string(mu.size()) + " values for " + std::to_string(d.modules.size()) +
                                        " modules");
        auto base = metricform_build(g, shape, MetricParams{center, lambdas, Rational(1)});
        ExactMatrix lam = base.matrix() - projector_matrix(g, m);
        std::vector<Rational> mus;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            mus.push_back(rational_of(mu[i]));
            lam = lam + Scalar(mus.back()) * projector_matrix(g, d.modules[i].carrier);
        }
        std::optional<Counterexample> found;
        std::size_t tried = 0;
        for (std::size_t a = 0; a < d.modules.size() && !found; ++a)
            for (std::size_t b = a + 1; b < d.modules.size() && !found; ++b) {
                if (mus[a] == mus[b]) continue;
                auto r = find_counterexample(g, lam, k.basis(), d.modules[a].carrier, d.modules[b].carrier, o.jobs);
                tried += r.candidates_tried;
                found = r.found;
            }
        std::string verdict = "evidence-only";
        bool all_equal = std::all_of(mus.begin(), mus.end(), [&](const Rational& x) { return x == mus.front(); });
        if (found) {
            verdict = "refuted";
            s.certificates.push_back(detail::refutation_cert(lam, k.basis(), *found));
        } else if (all_equal) {
            auto lm = metricform_build(g, shape, MetricParams{center, lambdas, mus.front()});
            auto cert = verify_quadratic_identity(g, lm);
            s.certificates.push_back(detail::identity_cert(g, k.basis(), lm, cert));
            verdict = cert.holds ? "certified-go" : "refuted";
        }
        s.summary = json{{"k_dim", k.dim()}, {"modules", detail::decomposition_json(d)}, {"candidates_tried", tried}, {"verdict", verdict}};
        s.check(verdict != "evidence-only", "no certificate either way");
    });
    return finish(rep, gl);
}

int cmd_classify(const Globals& gl, const std::string& path, const std::string& name)
{
    auto o = run_options(gl);
    LieAlgebra g = algebra_from_json(read_json_file(path));
    std::mt19937_64 rng(o.seed);
    ReproReport rep = analysis_envelope("classify " + name, g, o);
    detail::StepRunner run(rep, o.timing);
    run.run(1, "classify", false, [&](Step& s) {
        std::vector<Basis<Scalar>> claimed;
        Subalgebra h = named_subalgebra(g, name, gl, g.field(), &claimed);
        auto r = classify(h, rng, ClassifyOptions{5, 4, o.jobs}, claimed);
        s.summary = detail::classify_json(r);
        for (auto& c : detail::classify_certificates(g, r)) s.certificates.push_back(std::move(c));
        s.check(r.family_certified, "naturally reductive family not certified");
        if (r.collapse != "direct obstruction")
            for (const auto& e : r.evidence) s.check(e.refuted || e.in_natural_family, "sampled metric not refuted");
    });
    return finish(rep, gl);
}

int cmd_euler_arnold(const Globals& gl, double horizon, double dt, std::size_t samples, const std::string& sub,
                     const std::string& lambda, const std::string& mu)
{
    auto o = run_options(gl);
    LieAlgebra g = compact_form("G2", o.field);
    std::mt19937_64 rng(o.seed);
    ReproReport rep = analysis_envelope("euler-arnold", g, o);
    detail::StepRunner run(rep, o.timing);
    Basis<Scalar> all;
    for (std::size_t i = 0; i < g.dim(); ++i) all.push_back(g.basis_vector(i));
    run.run(1, "bi-invariant", false, [&](Step& s) {
        ScalarVec x = random_combination(all, g.dim(), rng, 1);
        auto r = euler_arnold_check(g, ExactMatrix::identity(g.dim()), g.zero(), x, horizon, dt);
        s.summary = json{{"max_deviation", r.max_deviation}, {"energy_drift", r.energy_drift}, {"steps", r.steps}};
        s.check(r.max_deviation < 1e-10, "deviation exceeds 1e-10");
        s.check(r.energy_drift < 1e-8, "energy drift exceeds 1e-8");
    });
    run.run(2, "naturally reductive", false, [&](Step& s) {
        Subalgebra h = named_subalgebra(g, sub, gl, g.field());
        Subalgebra k = normalizer(h);
        auto shape = natural_shape(k, ideal_decomposition(k, rng));
        std::vector<std::vector<Rational>> center(shape.center.size(), std::vector<Rational>(shape.center.size(), 0));
        for (std::size_t i = 0; i < center.size(); ++i) center[i][i] = 1;
        auto lam = metricform_build(g, shape, MetricParams{center, std::vector<Rational>(shape.ideals.size(), Rational(lambda)), Rational(mu)});
        auto cert = verify_quadratic_identity(g, lam);
        s.certificates.push_back(detail::identity_cert(g, k.basis(), lam, cert));
        s.check(cert.holds, "witness identity fails");
        double worst = 0.0;
        json devs = json::array();
        for (std::size_t t = 0; t < samples; ++t) {
            ScalarVec x = random_combination(all, g.dim(), rng, 1);
            ScalarVec w = nr_witness(g, lam, x);
            s.check(is_zero_vec(go_residual(g, lam.matrix(), w, x)), "witness residual is nonzero");
            auto r = euler_arnold_check(g, lam.matrix(), w, x, horizon, dt);
            worst = std::max(worst, r.max_deviation);
            devs.push_back(r.max_deviation);
        }
        s.summary = json{{"subalgebra", sub}, {"lambda", lambda}, {"mu", mu}, {"samples", samples}, {"deviations", devs},
                         {"max_deviation", worst}};
        s.check(worst < 1e-7, "deviation exceeds 1e-7");
    });
    run.run(3, "non-g.o. control", false, [&](Step& s) {
        auto cat = load_catalog(gl.catalog);
        Subalgebra t = named_subalgebra(g, "cartan", gl, g.field());
        auto ma = evaluate_recipes(g, {"F[a]", "G[a]"}, g.field());
        auto mb = evaluate_recipes(g, {"F[b]", "G[b]"}, g.field());
        Basis<Scalar> both = ma;
        both.insert(both.end(), mb.begin(), mb.end());
        auto lam = block_metric(g, {ma, mb, killing_complement(g, both)}, {Rational(2), Rational(3), Rational(1)});
        auto ce = find_counterexample(g, lam.matrix(), t.basis(), ma, mb, o.jobs);
        s.check(ce.found.has_value(), "no counterexample found");
        if (!ce.found) return;
        s.certificates.push_back(detail::refutation_cert(lam.matrix(), t.basis(), *ce.found));
        ScalarVec w = least_squares_w(g, lam.matrix(), t.basis(), ce.found->x);
        auto r = euler_arnold_check(g, lam.matrix(), w, ce.found->x, horizon, dt);
        s.summary = json{{"max_deviation", r.max_deviation}};
        s.check(r.max_deviation > 1e-2, "closed form unexpectedly tracks the flow");
    });
    return finish(rep, gl);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"golie: exact Lie algebra computations and geodesic-orbit certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    app.add_option("--seed", gl.seed, "PRNG seed");
    app.add_option("--field", gl.field, "scalar field: standard, rationals, sqrtN-only or a list like 2,3,5");
    app.add_option("--jobs", gl.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--recheck", gl.recheck, "re-verify every emitted certificate");
    app.add_option("--out", gl.out, "output file (default stdout)");
    app.add_option("--catalog", gl.catalog, "subalgebra catalog file");
    app.add_flag("--timing", gl.timing, "record step timings (reports stop being byte-reproducible)");

    std::string type = "G2", algebra, sub, metric = R"({"lambda":1,"mu":1})";
    auto* build = app.add_subcommand("build", "build a compact simple Lie algebra");
    build->add_option("--type", type, "root system type (G2, A2, B3, ...) or spN");

    auto* analyze = app.add_subcommand("analyze", "analyze a catalog subalgebra");
    analyze->add_option("--algebra", algebra)->required();
    analyze->add_option("--subalgebra", sub)->required();

    auto* go = app.add_subcommand("go-check", "check the geodesic-orbit property of a metric");
    go->add_option("--algebra", algebra)->required();
    go->add_option("--subalgebra", sub)->required();
    go->add_option("--metric", metric, R"(JSON, e.g. {"lambda":5,"mu":2} or {"mu":[1,2,3]})");

    auto* cls = app.add_subcommand("classify", "classify equivariant g.o. metrics");
    cls->add_option("--algebra", algebra)->required();
    cls->add_option("--subalgebra", sub)->required();

    auto* repro = app.add_subcommand("reproduce", "run a reproduction pipeline");
    repro->require_subcommand(1);
    auto* g2 = repro->add_subcommand("g2", "G2 classification");
    std::size_t n1 = 1, n2 = 1, n3 = 1;
    bool large = false;
    auto* spn = repro->add_subcommand("spn", "Sp(n) example");
    spn->add_option("--n1", n1);
    spn->add_option("--n2", n2);
    spn->add_option("--n3", n3);
    spn->add_flag("--large", large, "allow n1+n2+n3 = 4");

    double horizon = 10.0, dt = 1e-3;
    std::size_t samples = 10;
    std::string ea_sub = "h1", ea_lambda = "5", ea_mu = "2";
    auto* ea = app.add_subcommand("euler-arnold", "numerical cross-check of homogeneous geodesics");
    ea->add_option("--T", horizon);
    ea->add_option("--dt", dt);
    ea->add_option("--samples", samples);
    ea->add_option("--subalgebra", ea_sub);
    ea->add_option("--lambda", ea_lambda);
    ea->add_option("--mu", ea_mu);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return cmd_build(gl, type);
        if (*analyze) return cmd_analyze(gl, algebra, sub);
        if (*go) return cmd_go_check(gl, algebra, sub, metric);
        if (*cls) return cmd_classify(gl, algebra, sub);
        if (*g2) {
            auto rep = reproduce_g2(run_options(gl));
            return finish(rep, gl);
        }
        if (*spn) {
            auto o = run_options(gl);
            o.large = large;
            auto rep = reproduce_spn(n1, n2, n3, o);
            return finish(rep, gl);
        }
        if (*ea) return cmd_euler_arnold(gl, horizon, dt, samples, ea_sub, ea_lambda, ea_mu);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
