#pragma once

// Reproduction pipelines, certificate emission and the round-trip audit.

#include "golie/catalog.hpp"
#include "golie/gomet.hpp"
#include "golie/serialize.hpp"

#include <chrono>
#include <functional>
#include <memory>

namespace golie {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int report_schema_version = 1;

struct RunOptions {
    std::uint64_t seed = 7;
    const ScalarField* field = ScalarField::standard();
    unsigned jobs = 1;
    bool timing = false;
    bool large = false;
    std::string catalog_path = default_catalog_path();
};

/// "standard", "rationals", "sqrtN-only" or a comma separated list of radicands.
inline const ScalarField* parse_field_option(const std::string& s)
{
    if (s.empty() || s == "standard") return ScalarField::standard();
    if (s == "rationals" || s == "Q") return ScalarField::rationals();
    std::string body = s;
    if (body.rfind("sqrt", 0) == 0 && body.size() > 9 && body.substr(body.size() - 5) == "-only")
        body = body.substr(4, body.size() - 9);
    std::vector<long> ds;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long d = 0;
        try {
            d = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || d < 2) throw std::invalid_argument("unrecognized field '" + s + "'");
        ds.push_back(d);
    }
    if (ds.empty()) throw std::invalid_argument("unrecognized field '" + s + "'");
    return ScalarField::create(ds);
}

inline json basis_to_json(const Basis<Scalar>& b)
{
    json out = json::array();
    for (const auto& v : b) out.push_back(vec_to_json(v));
    return out;
}

inline Basis<Scalar> basis_from_json(const json& j, const ScalarField* field)
{
    Basis<Scalar> out;
    for (const auto& v : j) out.push_back(vec_from_json(v, field));
    return out;
}

struct Step {
    int group = 0;
    std::string name;
    std::string status = "pass"; // pass | fail | skipped
    json summary = json::object();
    json certificates = json::array();
    std::vector<std::string> diagnostics;
    std::optional<double> seconds;

    void fail(std::string why)
    {
        status = "fail";
        diagnostics.push_back(std::move(why));
    }
    void check(bool ok, const std::string& why)
    {
        if (!ok) fail(why);
    }
    bool passed() const { return status == "pass"; }
};

struct ReproReport {
    std::string command;
    std::uint64_t seed = 0;
    const ScalarField* field = nullptr;
    std::string convention;
    json algebra; // structure of the ambient algebra, for the audit
    std::vector<Step> steps;
    json recheck;

    bool passed() const
    {
        if (steps.empty()) return false;
        for (const auto& s : steps)
            if (!s.passed()) return false;
        if (recheck.is_object() && recheck.value("status", "pass") != "pass") return false;
        return true;
    }

    json to_json() const
    {
        json j;
        j["schema_version"] = report_schema_version;
        j["tool"] = "golie";
        j["tool_version"] = tool_version;
        j["command"] = command;
        j["seed"] = seed;
        j["field"] = field ? field_to_json(field) : json::array();
        j["convention"] = convention;
        j["algebra"] = algebra;
        json st = json::array();
        for (const auto& s : steps) {
            json o;
            o["group"] = s.group;
            o["name"] = s.name;
            o["status"] = s.status;
            o["summary"] = s.summary;
            o["certificates"] = s.certificates;
            o["diagnostics"] = s.diagnostics;
            if (s.seconds) o["seconds"] = *s.seconds;
            st.push_back(std::move(o));
        }
        j["steps"] = std::move(st);
        if (!recheck.is_null()) j["recheck"] = recheck;
        j["verdict"] = passed() ? "pass" : "fail";
        return j;
    }
};

inline void report_emit(const ReproReport& r, const std::string& path) { write_json_file(path, r.to_json()); }

namespace detail {

// Runs steps in order; a failing step with halt = true skips the rest.
class StepRunner {
public:
    StepRunner(ReproReport& rep, bool timing) : rep_(rep), timing_(timing) {}

    void run(int group, const std::string& name, bool halt, const std::function<void(Step&)>& body)
    {
        Step s;
        s.group = group;
        s.name = name;
        if (halted_) {
            s.status = "skipped";
            s.diagnostics.push_back("skipped: an earlier step failed");
            rep_.steps.push_back(std::move(s));
            return;
        }
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(s);
        } catch (const FieldError& e) {
            s.fail(std::string("field-coverage error: ") + e.what());
        } catch (const std::exception& e) {
            s.fail(e.what());
        }
        if (timing_) s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!s.passed() && halt) halted_ = true;
        rep_.steps.push_back(std::move(s));
    }

private:
    ReproReport& rep_;
    bool timing_;
    bool halted_ = false;
};

inline json closure_witness_json(const ClosureWitness& w)
{
    return json{{"i", w.i}, {"j", w.j}, {"escaping", vec_to_json(w.escaping)}};
}

// ad-commutant of k on itself is one dimensional and the center is zero.
inline bool is_simple(const LieAlgebra& g, const Basis<Scalar>& k)
{
    if (k.empty() || is_abelian(g, k)) return false;
    return center(Subalgebra::trusted(g, k)).dim() == 0 && commutant_dimension(g, k, k) == 1;
}

inline bool is_cartan_of(const LieAlgebra& g, const Basis<Scalar>& cartan, const Basis<Scalar>& inside)
{
    if (!contains_all(inside, cartan) || !is_abelian(g, cartan)) return false;
    return same_span(centralizer_within(g, cartan, inside), cartan, g.dim());
}

inline json rank_cert(const Basis<Scalar>& basis, const RankResult& r)
{
    return json{{"kind", "rank"}, {"basis", basis_to_json(basis)}, {"cartan", basis_to_json(r.cartan)},
                {"rank", r.rank}, {"status", to_string(r.status)}};
}

inline json identity_cert(const LieAlgebra& g, const Basis<Scalar>& k, const MetricEndomorphism& lam, const IdentityCertificate& c)
{
    json j{{"kind", "identity"}, {"k", basis_to_json(k)}, {"lambda", matrix_to_json(lam.matrix())},
           {"witness", matrix_to_json(nr_witness_matrix(g, lam))}, {"holds", c.holds}, {"evaluations", c.evaluations}};
    if (lam.params()) {
        const auto& p = *lam.params();
        json lambdas = json::array();
        for (const auto& l : p.lambdas) lambdas.push_back(l.get_str());
        json center = json::array();
        for (const auto& row : p.center_form) {
            json r = json::array();
            for (const auto& x : row) r.push_back(x.get_str());
            center.push_back(r);
        }
        j["parameters"] = json{{"lambda", lambdas}, {"mu", p.mu.get_str()}, {"center", center}};
    }
    if (c.witness) j["failure"] = json{{"a", c.witness->first}, {"b", c.witness->second}, {"value", vec_to_json(c.witness_value)}};
    return j;
}

inline json refutation_cert(const ExactMatrix& lambda, const Basis<Scalar>& h, const Counterexample& ce)
{
    return json{{"kind", "refutation"}, {"lambda", matrix_to_json(lambda)}, {"h", basis_to_json(h)},
                {"x", vec_to_json(ce.x)}, {"rank_a", ce.rank_a}, {"rank_augmented", ce.rank_augmented}};
}

inline json decomposition_json(const InvariantDecomposition& d)
{
    json mods = json::array();
    for (std::size_t i = 0; i < d.modules.size(); ++i) {
        const auto& m = d.modules[i];
        mods.push_back(json{{"dim", m.carrier.size()},
                            {"certificate", to_string(m.cert)},
                            {"commutant_dim", m.commutant_dim},
                            {"self_adjoint_commutant_dim", m.symmetric_commutant_dim},
                            {"class", d.equivalence_class[i]}});
    }
    return mods;
}

inline json classify_json(const ClassifyReport& r)
{
    json atoms = json::array();
    for (const auto& a : r.atoms)
        atoms.push_back(json{{"kind", a.kind}, {"dim", a.dim}, {"certificate", to_string(a.cert)},
                             {"self_adjoint_commutant_dim", a.symmetric_commutant_dim}});
    json obs = json::array();
    for (const auto& o : r.m_obstructions) obs.push_back(json{{"i", o.i}, {"j", o.j}, {"obstructed", o.obstructed}});
    json ev = json::array();
    for (const auto& e : r.evidence)
        ev.push_back(json{{"metric", e.metric_index}, {"naturally_reductive_shape", e.in_natural_family},
                          {"refuted", e.refuted}, {"candidates_tried", e.candidates_tried}});
    json unref = json::array();
    for (const auto& u : r.unrefuted) unref.push_back(u);
    return json{{"h_dim", r.h_dim},
                {"k_dim", r.k_dim},
                {"m_dim", r.m_dim},
                {"self_normalizing", r.self_normalizing},
                {"weakly_regular", r.weak.weakly_regular},
                {"center_dim", r.center_dim},
                {"ideal_dims", r.ideal_dims},
                {"atoms", atoms},
                {"multiplicity_free", r.multiplicity_free},
                {"equivariant_dim", r.equivariant_dim},
                {"naturally_reductive_dim", r.natural_dim},
                {"m_obstructions", obs},
                {"partitions", r.partitions_total},
                {"partitions_splitting_m", r.partitions_to_refute},
                {"refuted_by_closure", r.refuted_closure},
                {"refuted_by_linear_certificate", r.refuted_linear},
                {"unrefuted_partitions", unref},
                {"collapse", r.collapse},
                {"survivors_dim", r.survivors_dim},
                {"family_certified", r.family_certified},
                {"evidence", ev},
                {"verdict", r.verdict}};
}

inline std::vector<json> classify_certificates(const LieAlgebra& g, const ClassifyReport& r)
{
    std::vector<json> out;
    out.push_back(json{{"kind", "equivariant-space"}, {"k", basis_to_json(r.shape.k)}, {"dimension", r.equivariant_dim}});
    for (std::size_t i = 0; i < r.metrics.size(); ++i) out.push_back(identity_cert(g, r.shape.k, r.metrics[i], r.identity[i]));
    for (const auto& e : r.evidence)
        if (e.counterexample) out.push_back(refutation_cert(e.lambda, r.shape.k, *e.counterexample));
    return out;
}

} // namespace detail

// ---------------------------------------------------------------- audit

struct RecheckResult {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    json to_json() const
    {
        return json{{"status", ok() ? "pass" : "fail"}, {"certificates_checked", checked}, {"failures", failures}};
    }
};

/// Re-verifies one embedded certificate against the algebra; empty on success.
inline std::optional<std::string> recheck_certificate(const LieAlgebra& g, const json& c)
{
    const ScalarField* f = g.field();
    const std::string kind = c.at("kind").get<std::string>();
    auto basis = [&](const char* key) { return basis_from_json(c.at(key), f); };
    if (kind == "algebra-checks") {
        if (g.dim() != c.at("dimension").get<std::size_t>()) return "dimension differs";
        if (antisymmetry_violation(g) || jacobi_violation(g)) return "bracket axioms fail";
        if (c.value("negative_definite", false) != killing_negative_definite(g)) return "definiteness differs";
        auto cartan = basis("cartan");
        if (cartan.size() != c.at("rank").get<std::size_t>() || !is_abelian(g, cartan) ||
            !same_span(centralizer_of(g, cartan), cartan, g.dim()))
            return "cartan subalgebra certificate fails";
        return std::nullopt;
    }
    if (kind == "roots") {
        if (!g.root_system()) return "algebra has no root system";
        std::vector<std::string> names;
        for (const auto& r : g.root_system()->positive_roots()) names.push_back(g.root_system()->label(r));
        if (names != c.at("positive").get<std::vector<std::string>>()) return "positive roots differ";
        return std::nullopt;
    }
    if (kind == "closure") {
        auto b = basis("basis");
        auto r = span_closure_check(g, b);
        if (!r.closed() || !r.independent) return "basis does not close";
        if (c.contains("simple") && c["simple"].get<bool>() != detail::is_simple(g, b)) return "simplicity differs";
        return std::nullopt;
    }
    if (kind == "rank") {
        auto b = basis("basis");
        auto cartan = basis("cartan");
        if (cartan.size() != c.at("rank").get<std::size_t>() || !detail::is_cartan_of(g, cartan, b))
            return "rank certificate fails";
        return std::nullopt;
    }
    if (kind == "normalizer") {
        auto h = Subalgebra::trusted(g, basis("basis"));
        if (!same_span(normalizer(h).basis(), basis("normalizer"), g.dim())) return "normalizer differs";
        if (centralizer(h).dim() != c.at("centralizer_dim").get<std::size_t>()) return "centralizer differs";
        return std::nullopt;
    }
    if (kind == "non-regular") {
        auto n = basis("normalizer");
        auto cartan = basis("cartan");
        const auto ambient = c.at("ambient_rank").get<std::size_t>();
        if (!detail::is_cartan_of(g, cartan, n)) return "normalizer cartan certificate fails";
        if ((cartan.size() < ambient) != c.at("non_regular").get<bool>()) return "regularity differs";
        return std::nullopt;
    }
    if (kind == "decomposition") {
        auto k = basis("k");
        std::vector<Basis<Scalar>> mods;
        for (const auto& m : c.at("modules")) mods.push_back(basis_from_json(m, f));
        auto chk = verify_decomposition(g, k, mods, killing_complement(g, k));
        if (chk.ok != c.at("ok").get<bool>()) return "decomposition verdict differs";
        return std::nullopt;
    }
    if (kind == "weak-regularity") {
        auto w = weak_regularity(Subalgebra::trusted(g, basis("basis")));
        if (w.hom_k_to_m != c.at("hom_k_to_m").get<std::size_t>() || w.hom_m_to_k != c.at("hom_m_to_k").get<std::size_t>() ||
            w.weakly_regular != c.at("weakly_regular").get<bool>())
            return "weak regularity differs";
        return std::nullopt;
    }
    if (kind == "identity") {
        auto k = basis("k");
        auto lam = matrix_from_json(c.at("lambda"), f);
        auto wit = matrix_from_json(c.at("witness"), f);
        if (!is_positive_metric(g, lam)) return "metric is not positive and symmetric";
        for (const auto& z : k)
            if (lam * g.ad(z) != g.ad(z) * lam) return "metric is not equivariant";
        for (std::size_t j = 0; j < wit.cols(); ++j)
            if (!in_span(k, wit.column(j))) return "witness leaves k";
        if (verify_quadratic_identity(g, lam, wit).holds != c.at("holds").get<bool>()) return "identity verdict differs";
        return std::nullopt;
    }
    if (kind == "refutation") {
        auto lam = matrix_from_json(c.at("lambda"), f);
        auto r = go_solve(g, lam, basis("h"), vec_from_json(c.at("x"), f));
        if (r.solvable() || r.rank_a != c.at("rank_a").get<std::size_t>() ||
            r.rank_augmented != c.at("rank_augmented").get<std::size_t>())
            return "inconsistency certificate fails";
        return std::nullopt;
    }
    if (kind == "obstruction") {
        auto r = eigenvalue_obstruction(g, basis("g1"), basis("g2"));
        if (r.obstructed != c.at("obstructed").get<bool>()) return "obstruction differs";
        return std::nullopt;
    }
    if (kind == "bracket-relation") {
        auto a = basis("a"), b = basis("b"), t = basis("target");
        bool holds = true;
        for (const auto& x : a)
            for (const auto& y : b)
                if (!in_span(t, g.bracket(x, y))) holds = false;
        if (holds != c.at("holds").get<bool>()) return "bracket relation differs";
        return std::nullopt;
    }
    if (kind == "hom") {
        auto d = hom_space(g, basis("k"), basis("u"), basis("v")).size();
        if (d != c.at("dimension").get<std::size_t>()) return "hom dimension differs";
        return std::nullopt;
    }
    if (kind == "equivariant-space") {
        if (equivariant_metric_space(g, basis("k")).size() != c.at("dimension").get<std::size_t>())
            return "equivariant space dimension differs";
        return std::nullopt;
    }
    return "unknown certificate kind '" + kind + "'";
}

/// Round-trip audit of an emitted report: every certificate is re-verified
/// against the algebra stored in the report.
inline RecheckResult recheck_report(const json& report)
{
    RecheckResult out;
    if (!report.contains("algebra") || report["algebra"].is_null()) {
        out.failures.push_back("report carries no algebra");
        return out;
    }
    LieAlgebra g = algebra_from_json(report["algebra"]);
    for (const auto& s : report.at("steps")) {
        for (const auto& c : s.at("certificates")) {
            ++out.checked;
            try {
                if (auto e = recheck_certificate(g, c))
                    out.failures.push_back("step " + std::to_string(s.at("group").get<int>()) + " " + c.at("kind").get<std::string>() +
                                           ": " + *e);
            } catch (const std::exception& e) {
                out.failures.push_back("step " + std::to_string(s.at("group").get<int>()) + ": " + e.what());
            }
        }
    }
    return out;
}

inline void attach_recheck(ReproReport& rep)
{
    // through text, so the audit sees exactly what is emitted
    json parsed = json::parse(rep.to_json().dump());
    rep.recheck = recheck_report(parsed).to_json();
}

// ---------------------------------------------------------------- G2

inline const std::vector<std::string>& g2_classification_entries()
{
    static const std::vector<std::string> names{"cartan", "u2-long", "u2-short", "su2su2", "su3", "h1", "h2", "g2"};
    return names;
}

inline ReproReport reproduce_g2(const RunOptions& opt)
{
    ReproReport rep;
    rep.command = "reproduce g2";
    rep.seed = opt.seed;
    rep.field = opt.field;
    rep.convention = ChevalleyConstants::convention();
    std::mt19937_64 rng(opt.seed);
    detail::StepRunner run(rep, opt.timing);

    std::unique_ptr<LieAlgebra> g;
    Catalog cat;
    std::map<std::string, Subalgebra> subs;
    const std::vector<std::string> reps{"h1", "h2"};

    run.run(1, "construction", true, [&](Step& s) {
        g = std::make_unique<LieAlgebra>(compact_form("G2", opt.field));
        rep.algebra = algebra_to_json(*g);
        auto rk = rank_of(*g, [&] {
            Basis<Scalar> all;
            for (std::size_t i = 0; i < g->dim(); ++i) all.push_back(g->basis_vector(i));
            return all;
        }(), rng);
        const bool jac = !antisymmetry_violation(*g) && !jacobi_violation(*g);
        const bool negdef = killing_negative_definite(*g);
        std::vector<std::string> roots;
        for (const auto& r : g->root_system()->positive_roots()) roots.push_back(g->root_system()->label(r));
        s.summary = json{{"dimension", g->dim()}, {"rank", rk.rank}, {"jacobi", jac}, {"killing_negative_definite", negdef},
                         {"positive_roots", roots}};
        s.certificates.push_back(json{{"kind", "algebra-checks"}, {"dimension", g->dim()}, {"rank", rk.rank},
                                      {"cartan", basis_to_json(rk.cartan)}, {"negative_definite", negdef}});
        s.certificates.push_back(json{{"kind", "roots"}, {"positive", roots}});
        s.check(g->dim() == 14, "dimension is not 14");
        s.check(rk.status == CertStatus::certified && rk.rank == 2, "rank is not certified as 2");
        s.check(jac, "bracket axioms fail");
        s.check(negdef, "Killing form is not negative definite");
        s.check(roots.size() == 6, "expected 6 positive roots");
    });

    run.run(2, "subalgebras", true, [&](Step& s) {
        cat = load_catalog(opt.catalog_path);
        for (const auto& name : reps) {
            const auto& e = cat.find(name, "G2");
            auto basis = evaluate_recipes(*g, e.basis, opt.field);
            auto cl = span_closure_check(*g, basis);
            json info{{"description", e.description}, {"closed", cl.closed()}, {"independent", cl.independent}};
            if (!cl.closed()) {
                if (cl.witness) info["bracket_escape"] = detail::closure_witness_json(*cl.witness);
                s.fail(name + ": span is not closed under the bracket" +
                       (cl.witness ? " ([b" + std::to_string(cl.witness->i) + ", b" + std::to_string(cl.witness->j) + "] escapes)" : ""));
                s.summary[name] = info;
                continue;
            }
            const auto& h = subs.emplace(name, *cl.subalgebra).first->second;
            const bool simple = detail::is_simple(*g, h.basis());
            auto rk = rank(h, rng);
            info["dim"] = h.dim();
            info["simple"] = simple;
            info["rank"] = rk.rank;
            s.summary[name] = info;
            s.certificates.push_back(json{{"kind", "closure"}, {"name", name}, {"basis", basis_to_json(h.basis())}, {"simple", simple}});
            s.certificates.push_back(detail::rank_cert(h.basis(), rk));
            s.check(cl.independent, name + ": recipe vectors are dependent");
            s.check(h.dim() == 3, name + ": dimension is not 3");
            s.check(simple, name + ": not simple");
            s.check(rk.status == CertStatus::certified && rk.rank == 1, name + ": rank is not certified as 1");
        }
    });

    run.run(3, "self-normalizing", false, [&](Step& s) {
        for (const auto& name : reps) {
            const auto& h = subs.at(name);
            auto n = normalizer(h);
            auto c = centralizer(h);
            const bool self = same_span(n.basis(), h.basis(), g->dim());
            s.summary[name] = json{{"normalizer_dim", n.dim()}, {"centralizer_dim", c.dim()}, {"self_normalizing", self}};
            s.certificates.push_back(json{{"kind", "normalizer"}, {"name", name}, {"basis", basis_to_json(h.basis())},
                                          {"normalizer", basis_to_json(n.basis())}, {"centralizer_dim", c.dim()}});
            s.check(self, name + ": normalizer is larger than the subalgebra");
            s.check(c.dim() == 0, name + ": centralizer is nonzero");
        }
    });

    run.run(4, "non-regular", false, [&](Step& s) {
        for (const auto& name : reps) {
            const auto& h = subs.at(name);
            auto r = is_regular(h, rng);
            auto n = normalizer(h);
            s.summary[name] = json{{"normalizer_rank", r.normalizer_rank}, {"ambient_rank", r.ambient_rank},
                                   {"regular", r.regular}, {"status", to_string(r.status)}};
            s.certificates.push_back(json{{"kind", "non-regular"}, {"name", name}, {"normalizer", basis_to_json(n.basis())},
                                          {"cartan", basis_to_json(r.cartan)}, {"ambient_rank", r.ambient_rank},
                                          {"non_regular", !r.regular}});
            s.check(r.status == CertStatus::certified, name + ": regularity unresolved");
            s.check(!r.regular, name + ": subalgebra is regular");
        }
    });

    run.run(5, "module decompositions", false, [&](Step& s) {
        for (const auto& name : reps) {
            const auto& h = subs.at(name);
            const auto& e = cat.find(name, "G2");
            auto k = normalizer(h);
            auto m = killing_complement(*g, k.basis());
            std::vector<Basis<Scalar>> claimed;
            json names = json::array();
            for (const auto& [mn, recipes] : e.modules) {
                claimed.push_back(evaluate_recipes(*g, recipes, opt.field));
                names.push_back(mn);
            }
            auto chk = verify_decomposition(*g, k.basis(), claimed, m);
            auto computed = decompose(*g, k.basis(), m, rng);
            json homs = json::array();
            for (std::size_t i = 0; i < chk.hom_dims.size(); ++i)
                homs.push_back(json{{"i", chk.hom_dims[i].first}, {"j", chk.hom_dims[i].second}, {"dimension", chk.hom_dim_values[i]}});
            json claimed_info = json::array();
            for (std::size_t i = 0; i < chk.modules.size(); ++i)
                claimed_info.push_back(json{{"name", names[i]}, {"dim", chk.modules[i].carrier.size()},
                                            {"certificate", to_string(chk.modules[i].cert)},
                                            {"commutant_dim", chk.modules[i].commutant_dim}});
            s.summary[name] = json{{"m_dim", m.size()}, {"claimed", claimed_info}, {"claimed_hom", homs},
                                   {"claimed_verified", chk.ok}, {"failures", chk.failures},
                                   {"computed", detail::decomposition_json(computed)}};
            json mods = json::array();
            for (const auto& c : claimed) mods.push_back(basis_to_json(c));
            s.certificates.push_back(json{{"kind", "decomposition"}, {"name", name}, {"k", basis_to_json(k.basis())},
                                          {"modules", mods}, {"ok", chk.ok}});
            for (const auto& f : chk.failures) s.fail(name + ": " + f);
        }
    });

    run.run(6, "weak regularity", false, [&](Step& s) {
        for (const auto& name : reps) {
            const auto& h = subs.at(name);
            auto w = weak_regularity(h);
            s.summary[name] = json{{"weakly_regular", w.weakly_regular}, {"hom_k_to_m", w.hom_k_to_m}, {"hom_m_to_k", w.hom_m_to_k}};
            s.certificates.push_back(json{{"kind", "weak-regularity"}, {"name", name}, {"basis", basis_to_json(h.basis())},
                                          {"hom_k_to_m", w.hom_k_to_m}, {"hom_m_to_k", w.hom_m_to_k},
                                          {"weakly_regular", w.weakly_regular}});
            s.check(w.weakly_regular, name + ": equivariant maps between k and m exist (k->m " + std::to_string(w.hom_k_to_m) +
                                          ", m->k " + std::to_string(w.hom_m_to_k) + ")");
        }
    });

    run.run(7, "classification", false, [&](Step& s) {
        const auto& names = g2_classification_entries();
        std::vector<std::optional<ClassifyReport>> results(names.size());
        std::vector<std::string> errors(names.size());
        std::vector<Subalgebra> hs;
        std::vector<std::vector<Basis<Scalar>>> claimed(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) {
            const auto& e = cat.find(names[i], "G2");
            auto cl = span_closure_check(*g, evaluate_recipes(*g, e.basis, opt.field));
            if (!cl.closed()) throw std::runtime_error(names[i] + ": catalog basis does not close");
            hs.push_back(*cl.subalgebra);
            for (const auto& [mn, recipes] : e.modules) claimed[i].push_back(evaluate_recipes(*g, recipes, opt.field));
        }
        auto work = [&](std::size_t i) {
            try {
                std::mt19937_64 local(opt.seed + 1000 + i);
                results[i] = classify(hs[i], local, ClassifyOptions{5, 4, 1}, claimed[i]);
            } catch (const std::exception& ex) {
                errors[i] = ex.what();
            }
        };
        if (opt.jobs <= 1) {
            for (std::size_t i = 0; i < names.size(); ++i) work(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::future<void>> fs;
            for (unsigned t = 0; t < std::min<std::size_t>(opt.jobs, names.size()); ++t)
                fs.push_back(std::async(std::launch::async, [&] {
                    for (std::size_t i = next++; i < names.size(); i = next++) work(i);
                }));
            for (auto& f : fs) f.get();
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (!results[i]) {
                s.fail(names[i] + ": " + errors[i]);
                continue;
            }
            const auto& r = *results[i];
            s.summary[names[i]] = detail::classify_json(r);
            for (auto& c : detail::classify_certificates(*g, r)) {
                c["name"] = names[i];
                s.certificates.push_back(std::move(c));
            }
            for (std::size_t a = 0; a < claimed[i].size(); ++a)
                for (std::size_t b = a + 1; b < claimed[i].size(); ++b)
                    s.certificates.push_back(json{{"kind", "obstruction"}, {"name", names[i]},
                                                  {"g1", basis_to_json(claimed[i][a])}, {"g2", basis_to_json(claimed[i][b])},
                                                  {"obstructed", eigenvalue_obstruction(*g, claimed[i][a], claimed[i][b]).obstructed}});
            s.check(r.family_certified, names[i] + ": naturally reductive family not certified");
            if (r.collapse != "direct obstruction") {
                bool evidence_ok = !r.evidence.empty();
                for (const auto& e : r.evidence) evidence_ok = evidence_ok && (e.refuted || e.in_natural_family);
                s.check(evidence_ok, names[i] + ": sampled metrics outside the family were not refuted");
            }
        }
    });
    return rep;
}

// ---------------------------------------------------------------- Sp(n)

inline ReproReport reproduce_spn(std::size_t n1, std::size_t n2, std::size_t n3, const RunOptions& opt)
{
    if (n1 == 0 || n2 == 0 || n3 == 0)
        throw std::invalid_argument("three nonzero blocks are required, got (" + std::to_string(n1) + "," + std::to_string(n2) +
                                    "," + std::to_string(n3) + ")");
    const std::size_t n = n1 + n2 + n3;
    if (n > 4) throw std::invalid_argument("n1+n2+n3 must be at most 4");
    if (n > 3 && !opt.large) throw std::invalid_argument("sp(" + std::to_string(n) + ") needs --large");

    ReproReport rep;
    rep.command = "reproduce spn " + std::to_string(n1) + " " + std::to_string(n2) + " " + std::to_string(n3);
    rep.seed = opt.seed;
    rep.field = opt.field;
    rep.convention = "quaternionic skew-Hermitian matrices, consecutive blocks";
    std::mt19937_64 rng(opt.seed);
    detail::StepRunner run(rep, opt.timing);

    std::unique_ptr<LieAlgebra> g;
    std::optional<Subalgebra> k;
    std::vector<Basis<Scalar>> ms;
    const CatalogEntry entry = sp_block_entry({n1, n2, n3});

    run.run(1, "construction", true, [&](Step& s) {
        g = std::make_unique<LieAlgebra>(compact_classical("sp", n, opt.field));
        rep.algebra = algebra_to_json(*g);
        Basis<Scalar> all;
        for (std::size_t i = 0; i < g->dim(); ++i) all.push_back(g->basis_vector(i));
        auto rk = rank_of(*g, all, rng);
        const bool jac = !antisymmetry_violation(*g) && !jacobi_violation(*g);
        const bool negdef = killing_negative_definite(*g);
        s.summary = json{{"dimension", g->dim()}, {"rank", rk.rank}, {"jacobi", jac}, {"killing_negative_definite", negdef}};
        s.certificates.push_back(json{{"kind", "algebra-checks"}, {"dimension", g->dim()}, {"rank", rk.rank},
                                      {"cartan", basis_to_json(rk.cartan)}, {"negative_definite", negdef}});
        s.check(g->dim() == n * (2 * n + 1), "unexpected dimension");
        s.check(rk.status == CertStatus::certified && rk.rank == n, "rank is not certified");
        s.check(jac, "bracket axioms fail");
        s.check(negdef, "Killing form is not negative definite");
    });

    run.run(2, "block subalgebra", true, [&](Step& s) {
        auto cl = span_closure_check(*g, evaluate_recipes(*g, entry.basis, opt.field));
        if (!cl.closed()) {
            s.fail("block subalgebra does not close");
            return;
        }
        k = *cl.subalgebra;
        auto nk = normalizer(*k);
        const bool self = same_span(nk.basis(), k->basis(), g->dim());
        s.summary = json{{"dim", k->dim()}, {"normalizer_dim", nk.dim()}, {"self_normalizing", self}};
        s.certificates.push_back(json{{"kind", "closure"}, {"name", entry.name}, {"basis", basis_to_json(k->basis())}});
        s.certificates.push_back(json{{"kind", "normalizer"}, {"name", entry.name}, {"basis", basis_to_json(k->basis())},
                                      {"normalizer", basis_to_json(nk.basis())}, {"centralizer_dim", centralizer(*k).dim()}});
        s.check(k->dim() == n1 * (2 * n1 + 1) + n2 * (2 * n2 + 1) + n3 * (2 * n3 + 1), "unexpected dimension");
        s.check(self, "block subalgebra is not self-normalizing");
    });

    run.run(3, "module decomposition", false, [&](Step& s) {
        for (const auto& [mn, recipes] : entry.modules) ms.push_back(evaluate_recipes(*g, recipes, opt.field));
        auto m = killing_complement(*g, k->basis());
        auto chk = verify_decomposition(*g, k->basis(), ms, m);
        json info = json::array();
        for (std::size_t i = 0; i < chk.modules.size(); ++i)
            info.push_back(json{{"name", entry.modules[i].first}, {"dim", chk.modules[i].carrier.size()},
                                {"certificate", to_string(chk.modules[i].cert)}, {"commutant_dim", chk.modules[i].commutant_dim}});
        s.summary = json{{"m_dim", m.size()}, {"modules", info}, {"verified", chk.ok}, {"failures", chk.failures}};
        json mods = json::array();
        for (const auto& c : ms) mods.push_back(basis_to_json(c));
        s.certificates.push_back(json{{"kind", "decomposition"}, {"k", basis_to_json(k->basis())}, {"modules", mods}, {"ok", chk.ok}});
        for (const auto& f : chk.failures) s.fail(f);
    });

    run.run(4, "bracket relations", false, [&](Step& s) {
        const std::size_t idx[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
        json rel = json::array();
        for (const auto& t : idx) {
            bool holds = true;
            for (const auto& x : ms[t[0]])
                for (const auto& y : ms[t[1]])
                    if (!in_span(ms[t[2]], g->bracket(x, y))) holds = false;
            const std::string label = "[m" + std::to_string(t[0] + 1) + ",m" + std::to_string(t[1] + 1) + "] in m" + std::to_string(t[2] + 1);
            rel.push_back(json{{"relation", label}, {"holds", holds}});
            s.certificates.push_back(json{{"kind", "bracket-relation"}, {"relation", label}, {"a", basis_to_json(ms[t[0]])},
                                          {"b", basis_to_json(ms[t[1]])}, {"target", basis_to_json(ms[t[2]])}, {"holds", holds}});
            s.check(holds, label + " fails");
        }
        s.summary = json{{"relations", rel}};
    });

    run.run(5, "pairwise inequivalence", false, [&](Step& s) {
        json homs = json::array();
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = a + 1; b < 3; ++b) {
                const std::size_t d = hom_space(*g, k->basis(), ms[a], ms[b]).size();
                homs.push_back(json{{"i", a + 1}, {"j", b + 1}, {"dimension", d}});
                s.certificates.push_back(json{{"kind", "hom"}, {"k", basis_to_json(k->basis())}, {"u", basis_to_json(ms[a])},
                                              {"v", basis_to_json(ms[b])}, {"dimension", d}});
                s.check(d == 0, "m" + std::to_string(a + 1) + " and m" + std::to_string(b + 1) + " are equivalent");
            }
        s.summary = json{{"hom", homs}};
    });

    run.run(6, "forced collapse", false, [&](Step& s) {
        json obs = json::array();
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = a + 1; b < 3; ++b) {
                auto r = eigenvalue_obstruction(*g, ms[a], ms[b]);
                obs.push_back(json{{"i", a + 1}, {"j", b + 1}, {"obstructed", r.obstructed}});
                s.certificates.push_back(json{{"kind", "obstruction"}, {"g1", basis_to_json(ms[a])}, {"g2", basis_to_json(ms[b])},
                                              {"obstructed", r.obstructed}});
                s.check(r.obstructed, "no obstruction between m" + std::to_string(a + 1) + " and m" + std::to_string(b + 1));
            }
        s.summary = json{{"obstructions", obs}, {"forced", "mu1 = mu2 = mu3"}};
    });

    run.run(7, "surviving family", false, [&](Step& s) {
        auto r = classify(*k, rng, ClassifyOptions{5, 4, opt.jobs});
        s.summary = detail::classify_json(r);
        json params = json::array();
        for (std::size_t i = 0; i < r.ideal_dims.size(); ++i) params.push_back("lambda" + std::to_string(i + 1));
        if (r.m_dim > 0) params.push_back("mu");
        s.summary["survivors"] = params;
        for (auto& c : detail::classify_certificates(*g, r)) s.certificates.push_back(std::move(c));
        s.check(r.collapse == "direct obstruction", "collapse is not certified by direct obstructions");
        s.check(r.family_certified, "surviving family not certified");
        s.check(r.ideal_dims.size() == 3 && r.center_dim == 0 && r.survivors_dim == 4, "survivors are not (lambda1, lambda2, lambda3, mu)");
    });
    return rep;
}

} // namespace golie
