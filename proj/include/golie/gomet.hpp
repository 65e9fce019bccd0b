#pragma once

// Metric endomorphisms, the geodesic-orbit condition [W + X, Lambda X] = 0,
// the eigenvalue obstruction, naturally reductive witnesses and the
// classification of equivariant metrics.

#include "golie/repth.hpp"

#include <Eigen/Dense>

#include <functional>
#include <future>
#include <thread>

namespace golie {

class MetricError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Projector matrix onto span(u) along its B-orthogonal complement.
inline ExactMatrix projector_matrix(const LieAlgebra& g, const Basis<Scalar>& u)
{
    const std::size_t n = g.dim();
    ExactMatrix p(n, n);
    if (u.empty()) return p;
    Projector<Scalar> pr(g.killing(), u);
    for (std::size_t j = 0; j < n; ++j) {
        ScalarVec c = pr.project(g.basis_vector(j));
        for (std::size_t i = 0; i < n; ++i) p(i, j) = c[i];
    }
    return p;
}

/// The pieces of g = z(k) + k_1 + ... + k_s + m.
struct NaturalShape {
    Basis<Scalar> k;
    Basis<Scalar> center;
    std::vector<Basis<Scalar>> ideals;
    Basis<Scalar> m;
};

inline NaturalShape natural_shape(const Subalgebra& k, const IdealDecomposition& d)
{
    NaturalShape s;
    s.k = k.basis();
    s.center = d.center;
    s.ideals = d.ideals;
    s.m = killing_complement(k.ambient(), k.basis());
    return s;
}

struct MetricParams {
    std::vector<std::vector<Rational>> center_form; // symmetric positive definite, dim z x dim z
    std::vector<Rational> lambdas;                  // one per simple ideal
    Rational mu = 1;
};

class MetricEndomorphism {
public:
    MetricEndomorphism() = default;
    MetricEndomorphism(ExactMatrix m) : matrix_(std::move(m)) {}

    const ExactMatrix& matrix() const { return matrix_; }
    ExactMatrix& matrix() { return matrix_; }

    /// Present when built with metricform_build.
    const std::optional<NaturalShape>& shape() const { return shape_; }
    const std::optional<MetricParams>& params() const { return params_; }

    ScalarVec apply(const ScalarVec& x) const { return matrix_ * x; }

    void set_shape(NaturalShape s, MetricParams p)
    {
        shape_ = std::move(s);
        params_ = std::move(p);
    }

private:
    ExactMatrix matrix_;
    std::optional<NaturalShape> shape_;
    std::optional<MetricParams> params_;
};

/// B(Lambda X, Y) = B(X, Lambda Y).
inline bool is_killing_symmetric(const LieAlgebra& g, const ExactMatrix& lambda)
{
    ExactMatrix bl = g.killing() * lambda;
    return bl == bl.transpose();
}

/// <X, Y> = -B(Lambda X, Y) positive definite.
inline bool is_positive_metric(const LieAlgebra& g, const ExactMatrix& lambda)
{
    ExactMatrix form = Scalar(-1) * (g.killing() * lambda);
    return form == form.transpose() && is_definite(form, 1);
}

/// Lambda = (center block) + sum lambda_i Id|k_i + mu Id|m.
inline MetricEndomorphism metricform_build(const LieAlgebra& g, const NaturalShape& shape, const MetricParams& p)
{
    const std::size_t dz = shape.center.size();
    if (p.lambdas.size() != shape.ideals.size())
        throw MetricError("expected " + std::to_string(shape.ideals.size()) + " ideal parameters, got " +
                          std::to_string(p.lambdas.size()));
    for (const auto& l : p.lambdas)
        if (sgn(l) <= 0) throw MetricError("ideal parameter must be positive, got " + l.get_str());
    if (sgn(p.mu) <= 0) throw MetricError("mu must be positive, got " + p.mu.get_str());
    if (p.center_form.size() != dz) throw MetricError("center form must be " + std::to_string(dz) + "x" + std::to_string(dz));
    ExactMatrix s(dz, dz);
    for (std::size_t i = 0; i < dz; ++i) {
        if (p.center_form[i].size() != dz) throw MetricError("center form is not square");
        for (std::size_t j = 0; j < dz; ++j) s(i, j) = Scalar(p.center_form[i][j]);
    }
    if (s != s.transpose()) throw MetricError("center form is not symmetric");
    if (dz > 0 && !is_definite(s, 1)) throw MetricError("center form is not positive definite");

    const std::size_t n = g.dim();
    ExactMatrix lambda(n, n);
    if (dz > 0) {
        // X -> U Gm^{-1} S c(X), Gm = U^T (-B) U, c(X) = coordinates of the projection to z
        Projector<Scalar> pr(g.killing(), shape.center);
        ExactMatrix gm(dz, dz);
        for (std::size_t i = 0; i < dz; ++i)
            for (std::size_t j = 0; j < dz; ++j) gm(i, j) = -g.killing(shape.center[i], shape.center[j]);
        ExactMatrix m = Projector<Scalar>::inverse(gm) * s;
        for (std::size_t j = 0; j < n; ++j) {
            ScalarVec c = m * pr.coords(g.basis_vector(j));
            for (std::size_t a = 0; a < dz; ++a)
                if (!is_zero(c[a]))
                    for (std::size_t i = 0; i < n; ++i) lambda(i, j) += c[a] * shape.center[a][i];
        }
    }
    for (std::size_t t = 0; t < shape.ideals.size(); ++t)
        lambda = lambda + Scalar(p.lambdas[t]) * projector_matrix(g, shape.ideals[t]);
    if (!shape.m.empty()) lambda = lambda + Scalar(p.mu) * projector_matrix(g, shape.m);
    MetricEndomorphism out(std::move(lambda));
    out.set_shape(shape, p);
    return out;
}

inline MetricEndomorphism identity_metric(const LieAlgebra& g) { return MetricEndomorphism(ExactMatrix::identity(g.dim())); }

/// sum_i values[i] * P_{blocks[i]} for B-orthogonal blocks spanning g.
inline MetricEndomorphism block_metric(const LieAlgebra& g, const std::vector<Basis<Scalar>>& blocks,
                                       const std::vector<Rational>& values)
{
    ExactMatrix lambda(g.dim(), g.dim());
    for (std::size_t i = 0; i < blocks.size(); ++i) lambda = lambda + Scalar(values.at(i)) * projector_matrix(g, blocks[i]);
    return MetricEndomorphism(std::move(lambda));
}

// ---------------------------------------------------------------- g.o. condition

struct GoSolveResult {
    std::optional<ScalarVec> w; // element of g
    std::size_t rank_a = 0, rank_augmented = 0;
    bool solvable() const { return w.has_value(); }
};

/// Solves sum_j w_j [h_j, Lambda X] = [Lambda X, X] for W in span(h).
inline GoSolveResult go_solve(const LieAlgebra& g, const ExactMatrix& lambda, const Basis<Scalar>& h, const ScalarVec& x)
{
    const ScalarVec lx = lambda * x;
    std::vector<ScalarVec> cols;
    for (const auto& hj : h) cols.push_back(g.bracket(hj, lx));
    const ScalarVec b = g.bracket(lx, x);
    GoSolveResult out;
    if (cols.empty()) {
        out.rank_augmented = is_zero_vec(b) ? 0 : 1;
        if (is_zero_vec(b)) out.w = g.zero();
        return out;
    }
    auto res = solve(ExactMatrix::from_columns(cols, g.dim()), b);
    out.rank_a = res.rank_matrix;
    out.rank_augmented = res.rank_augmented;
    if (res.solution) {
        ScalarVec w = g.zero();
        for (std::size_t j = 0; j < h.size(); ++j)
            if (!is_zero((*res.solution)[j])) w = w + scaled((*res.solution)[j], h[j]);
        out.w = std::move(w);
    }
    return out;
}

/// [W + X, Lambda X].
inline ScalarVec go_residual(const LieAlgebra& g, const ExactMatrix& lambda, const ScalarVec& w, const ScalarVec& x)
{
    return g.bracket(w + x, lambda * x);
}

/// Matrix of X -> W(X) = (1/mu) P_k Lambda P_k X - P_k X.
inline ExactMatrix nr_witness_matrix(const LieAlgebra& g, const MetricEndomorphism& lambda)
{
    if (!lambda.shape() || !lambda.params()) throw MetricError("nr_witness needs a metric of naturally reductive shape");
    ExactMatrix pk = projector_matrix(g, lambda.shape()->k);
    const Scalar inv_mu = Scalar(Rational(1) / lambda.params()->mu);
    return inv_mu * (pk * lambda.matrix() * pk) - pk;
}

inline ScalarVec nr_witness(const LieAlgebra& g, const MetricEndomorphism& lambda, const ScalarVec& x)
{
    return nr_witness_matrix(g, lambda) * x;
}

struct IdentityCertificate {
    bool holds = true;
    std::size_t evaluations = 0;
    std::optional<std::pair<std::size_t, std::size_t>> witness; // (a,a) or (a,b)
    ScalarVec witness_value;
};

/// Phi(X) = [W(X) + X, Lambda X] is quadratic in X, so Phi = 0 identically iff
/// Phi(e_a) = 0 for all a and Phi(e_a + e_b) - Phi(e_a) - Phi(e_b) = 0 for all a < b.
/// witness is the matrix of X -> W(X).
inline IdentityCertificate verify_quadratic_identity(const LieAlgebra& g, const ExactMatrix& lambda, const ExactMatrix& witness)
{
    const std::size_t n = g.dim();
    ExactMatrix wm = witness + ExactMatrix::identity(n);
    std::vector<ScalarVec> p(n), q(n);
    for (std::size_t a = 0; a < n; ++a) {
        p[a] = wm.column(a);
        q[a] = lambda.column(a);
    }
    IdentityCertificate out;
    for (std::size_t a = 0; a < n; ++a) {
        ++out.evaluations;
        ScalarVec v = g.bracket(p[a], q[a]);
        if (!is_zero_vec(v)) {
            out.holds = false;
            out.witness = std::make_pair(a, a);
            out.witness_value = std::move(v);
            return out;
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            ++out.evaluations;
            ScalarVec v = g.bracket(p[a], q[b]) + g.bracket(p[b], q[a]);
            if (!is_zero_vec(v)) {
                out.holds = false;
                out.witness = std::make_pair(a, b);
                out.witness_value = std::move(v);
                return out;
            }
        }
    return out;
}

inline IdentityCertificate verify_quadratic_identity(const LieAlgebra& g, const MetricEndomorphism& lambda)
{
    return verify_quadratic_identity(g, lambda.matrix(), nr_witness_matrix(g, lambda));
}

struct ObstructionResult {
    bool obstructed = false;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    ScalarVec projection; // component of the witness bracket outside g1 + g2
};

/// Whether [g1, g2] has nonzero B-orthogonal projection to (g1 + g2)^perp.
inline ObstructionResult eigenvalue_obstruction(const LieAlgebra& g, const Basis<Scalar>& g1, const Basis<Scalar>& g2)
{
    Basis<Scalar> both = g1;
    both.insert(both.end(), g2.begin(), g2.end());
    Basis<Scalar> perp = killing_complement(g, both);
    ObstructionResult out;
    if (perp.empty()) return out;
    Projector<Scalar> pr(g.killing(), perp);
    for (std::size_t i = 0; i < g1.size(); ++i)
        for (std::size_t j = 0; j < g2.size(); ++j) {
            ScalarVec v = pr.project(g.bracket(g1[i], g2[j]));
            if (!is_zero_vec(v)) {
                out.obstructed = true;
                out.witness = std::make_pair(i, j);
                out.projection = std::move(v);
                return out;
            }
        }
    return out;
}

/// Basis of the B-symmetric endomorphisms commuting with ad_Z for Z in k.
inline std::vector<ExactMatrix> equivariant_metric_space(const LieAlgebra& g, const Basis<Scalar>& k)
{
    const std::size_t n = g.dim();
    SparseEliminator<Scalar> elim(n * n);
    auto var = [n](std::size_t r, std::size_t c) { return r * n + c; };
    const ExactMatrix& b = g.killing();
    // B Lambda symmetric
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c) {
            SparseEliminator<Scalar>::Row row;
            for (std::size_t t = 0; t < n; ++t) {
                if (!is_zero(b(r, t))) row.emplace_back(var(t, c), b(r, t));
                if (!is_zero(b(c, t))) row.emplace_back(var(t, r), -b(c, t));
            }
            if (!row.empty()) elim.add_row(std::move(row));
        }
    for (const auto& z : k) {
        ExactMatrix a = g.ad(z);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                SparseEliminator<Scalar>::Row row;
                for (std::size_t t = 0; t < n; ++t) {
                    if (!is_zero(a(t, c))) row.emplace_back(var(r, t), a(t, c));
                    if (!is_zero(a(r, t))) row.emplace_back(var(t, c), -a(r, t));
                }
                if (!row.empty()) elim.add_row(std::move(row));
            }
    }
    std::vector<ExactMatrix> out;
    for (const auto& v : elim.nullspace()) {
        ExactMatrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = v[var(r, c)];
        out.push_back(std::move(m));
    }
    return out;
}

struct Counterexample {
    ScalarVec x;
    std::size_t a = 0, b = 0; // indices into the two blocks
    std::size_t rank_a = 0, rank_augmented = 0;
};

struct CounterexampleSearch {
    std::optional<Counterexample> found;
    std::size_t candidates_tried = 0;
};

constexpr std::size_t structured_candidate_budget = 64;

/// Tries X = u_a + v_b over the two blocks in a fixed order; the first
/// unsolvable candidate in that order is returned regardless of job count.
inline CounterexampleSearch find_counterexample(const LieAlgebra& g, const ExactMatrix& lambda, const Basis<Scalar>& h,
                                                const Basis<Scalar>& block1, const Basis<Scalar>& block2,
                                                unsigned jobs = 1)
{
    std::vector<std::pair<std::size_t, std::size_t>> cand;
    for (std::size_t a = 0; a < block1.size(); ++a)
        for (std::size_t b = 0; b < block2.size(); ++b)
            if (cand.size() < structured_candidate_budget) cand.emplace_back(a, b);
    std::vector<std::optional<Counterexample>> results(cand.size());
    auto run = [&](std::size_t idx) {
        auto [a, b] = cand[idx];
        ScalarVec x = block1[a] + block2[b];
        auto r = go_solve(g, lambda, h, x);
        if (!r.solvable()) results[idx] = Counterexample{x, a, b, r.rank_a, r.rank_augmented};
    };
    CounterexampleSearch out;
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < cand.size(); ++i) {
            run(i);
            ++out.candidates_tried;
            if (results[i]) {
                out.found = results[i];
                return out;
            }
        }
        return out;
    }
    std::vector<std::future<void>> fs;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < jobs; ++t)
        fs.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t i = next++; i < cand.size(); i = next++) run(i);
        }));
    for (auto& f : fs) f.get();
    for (std::size_t i = 0; i < cand.size(); ++i) {
        ++out.candidates_tried;
        if (results[i]) {
            out.found = results[i];
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------- classification

namespace detail {

// Restricted growth strings: all set partitions of {0..n-1}.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> a(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
        if (i == n) {
            f(a);
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            a[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    if (n == 0) {
        f(a);
        return;
    }
    a[0] = 0;
    rec(1, 1);
}

} // namespace detail

struct AtomInfo {
    std::string kind; // "ideal" or "m"
    std::size_t dim = 0;
    IrreducibilityCert cert = IrreducibilityCert::unresolved;
    std::size_t symmetric_commutant_dim = 0;
};

struct PairObstruction {
    std::size_t i, j;
    bool obstructed;
};

struct RefutationSample {
    std::vector<std::size_t> partition;
    std::string method; // "closure" or "linear"
    std::size_t block1 = 0, block2 = 0;
};

struct EvidenceSample {
    std::size_t metric_index = 0;
    bool in_natural_family = false;
    bool refuted = false;
    std::size_t candidates_tried = 0;
    ExactMatrix lambda;
    std::optional<Counterexample> counterexample;
};

struct ClassifyReport {
    std::size_t h_dim = 0, k_dim = 0, m_dim = 0;
    bool self_normalizing = false;
    WeakRegularityResult weak;
    std::size_t center_dim = 0;
    std::vector<std::size_t> ideal_dims;
    std::vector<AtomInfo> atoms; // ideals first, then m-modules
    bool ideals_certified = false;
    bool multiplicity_free = false;
    std::size_t equivariant_dim = 0;
    std::size_t predicted_equivariant_dim = 0; // from the atom structure
    std::size_t natural_dim = 0;               // dimension of the naturally reductive family
    std::vector<PairObstruction> m_obstructions;
    std::size_t partitions_total = 0, partitions_to_refute = 0;
    std::size_t refuted_closure = 0, refuted_linear = 0;
    std::vector<std::vector<std::size_t>> unrefuted;
    std::vector<RefutationSample> refutation_samples;
    std::vector<EvidenceSample> evidence;
    std::string collapse; // "direct obstruction" or "imported"
    std::size_t survivors_dim = 0;
    NaturalShape shape;
    std::vector<MetricEndomorphism> metrics; // the sampled naturally reductive metrics
    std::vector<IdentityCertificate> identity;
    bool family_certified = false;
    std::string verdict; // obstruction-collapse | evidence-only
};

struct ClassifyOptions {
    std::size_t assignments = 5;
    std::size_t evidence_metrics = 4;
    unsigned jobs = 1;
};

inline MetricParams sample_params(const NaturalShape& shape, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> pos(1, 9), off(-2, 2);
    MetricParams p;
    const std::size_t dz = shape.center.size();
    // S = L L^T with L unit-ish lower triangular: positive definite
    std::vector<std::vector<Rational>> l(dz, std::vector<Rational>(dz, 0));
    for (std::size_t i = 0; i < dz; ++i) {
        l[i][i] = pos(rng);
        for (std::size_t j = 0; j < i; ++j) l[i][j] = off(rng);
    }
    p.center_form.assign(dz, std::vector<Rational>(dz, 0));
    for (std::size_t i = 0; i < dz; ++i)
        for (std::size_t j = 0; j < dz; ++j)
            for (std::size_t t = 0; t < dz; ++t) p.center_form[i][j] += l[i][t] * l[j][t];
    for (std::size_t i = 0; i < shape.ideals.size(); ++i) p.lambdas.push_back(Rational(pos(rng), pos(rng)));
    p.mu = Rational(pos(rng), pos(rng));
    for (auto& x : p.lambdas) x.canonicalize();
    p.mu.canonicalize();
    return p;
}

inline std::size_t natural_family_dim(const NaturalShape& s)
{
    const std::size_t dz = s.center.size();
    return dz * (dz + 1) / 2 + s.ideals.size() + (s.m.empty() ? 0 : 1);
}

/// Lambda preserves z, acts as a scalar on every ideal and on m.
inline bool in_natural_family(const NaturalShape& shape, const ExactMatrix& lambda)
{
    auto scalar_on = [&](const Basis<Scalar>& u) {
        if (u.empty()) return true;
        ScalarVec img = lambda * u.front();
        std::size_t piv = 0;
        while (is_zero(u.front()[piv])) ++piv;
        Scalar c = img[piv] / u.front()[piv];
        for (const auto& v : u)
            if (lambda * v != scaled(c, v)) return false;
        return true;
    };
    for (const auto& i : shape.ideals)
        if (!scalar_on(i)) return false;
    if (!scalar_on(shape.m)) return false;
    for (const auto& z : shape.center)
        if (!in_span(shape.center, lambda * z)) return false;
    return true;
}

/// Classification of the G x H-g.o. metrics for a subalgebra h.
///
/// k = n(h); metrics are ad_k-equivariant. When k, m are Lambda-invariant and
/// the atoms (simple ideals and irreducible pieces of m) are pairwise
/// inequivalent with one-dimensional self-adjoint commutants, Lambda is a
/// scalar on every atom plus a form on the center, so each metric induces a
/// partition of the atoms by eigenvalue. A partition that splits m is refuted
/// by either
///  - a bracket of two blocks escaping the blocks and the center, or
///  - X1 in block 1, X2 in block 2 with no W in k, a, b > 0, a != b such that
///    ([W,X1],[W,X2]) = a (P1 v, 0) + b (0, P2 v), v = [X1,X2]
///    (the g.o. equation for X1 + X2 projected to the two eigenspaces).
/// If every such partition is refuted the collapse to the naturally reductive
/// family is direct; otherwise it is imported, with sampled evidence.
inline ClassifyReport classify(const Subalgebra& h, std::mt19937_64& rng, const ClassifyOptions& opt = {},
                               const std::vector<Basis<Scalar>>& claimed_modules = {})
{
    const auto& g = h.ambient();
    ClassifyReport rep;
    rep.h_dim = h.dim();
    Subalgebra k = normalizer(h);
    rep.k_dim = k.dim();
    rep.self_normalizing = k.dim() == h.dim();
    rep.weak = weak_regularity(h);
    IdealDecomposition ideals = ideal_decomposition(k, rng);
    rep.ideals_certified = ideals.certified;
    NaturalShape shape = natural_shape(k, ideals);
    rep.shape = shape;
    rep.m_dim = shape.m.size();
    rep.center_dim = shape.center.size();
    for (const auto& i : shape.ideals) rep.ideal_dims.push_back(i.size());
    rep.natural_dim = natural_family_dim(shape);
    const auto eq_space = equivariant_metric_space(g, k.basis());
    rep.equivariant_dim = eq_space.size();

    // atoms
    std::vector<Basis<Scalar>> atoms;
    for (const auto& i : shape.ideals) {
        atoms.push_back(i);
        rep.atoms.push_back(AtomInfo{"ideal", i.size(), IrreducibilityCert::commutant_dim_1, 1});
    }
    const std::size_t n_ideals = atoms.size();
    InvariantDecomposition mdec;
    if (!shape.m.empty()) mdec = decompose(g, k.basis(), shape.m, rng);
    for (const auto& mod : mdec.modules) {
        atoms.push_back(mod.carrier);
        rep.atoms.push_back(AtomInfo{"m", mod.carrier.size(), mod.cert, mod.symmetric_commutant_dim});
    }
    bool classes_distinct = true;
    for (std::size_t i = 0; i < mdec.equivalence_class.size(); ++i)
        for (std::size_t j = i + 1; j < mdec.equivalence_class.size(); ++j)
            if (mdec.equivalence_class[i] == mdec.equivalence_class[j]) classes_distinct = false;
    rep.multiplicity_free = rep.weak.weakly_regular && ideals.certified && mdec.all_irreducible() && classes_distinct;
    {
        const std::size_t dz = shape.center.size();
        rep.predicted_equivariant_dim = dz * (dz + 1) / 2 + atoms.size();
    }
    if (rep.multiplicity_free && rep.predicted_equivariant_dim != rep.equivariant_dim) rep.multiplicity_free = false;

    for (std::size_t i = n_ideals; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            rep.m_obstructions.push_back({i, j, eigenvalue_obstruction(g, atoms[i], atoms[j]).obstructed});
    if (rep.m_obstructions.empty() && claimed_modules.size() >= 2)
        for (std::size_t i = 0; i < claimed_modules.size(); ++i)
            for (std::size_t j = i + 1; j < claimed_modules.size(); ++j)
                rep.m_obstructions.push_back({i, j, eigenvalue_obstruction(g, claimed_modules[i], claimed_modules[j]).obstructed});

    bool all_refuted = true;
    if (rep.multiplicity_free) {
        const std::size_t na = atoms.size();
        std::vector<Projector<Scalar>> proj;
        for (const auto& a : atoms) proj.emplace_back(g.killing(), a);
        std::optional<Projector<Scalar>> zproj;
        if (!shape.center.empty()) zproj.emplace(g.killing(), shape.center);
        // per atom pair: samples with the atom components of their bracket
        struct Sample {
            std::size_t a, b;
            ScalarVec x, y;
            std::vector<ScalarVec> comp; // per atom
            bool center = false;
            std::uint64_t touch = 0;
        };
        std::vector<std::vector<std::vector<Sample>>> samples(na, std::vector<std::vector<Sample>>(na));
        std::vector<std::vector<std::uint64_t>> touch(na, std::vector<std::uint64_t>(na, 0));
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t b = 0; b < na; ++b) {
                if (a == b) continue;
                for (std::size_t s = 0; s < atoms[a].size(); ++s)
                    for (std::size_t t = 0; t < atoms[b].size(); ++t) {
                        Sample smp{a, b, atoms[a][s], atoms[b][t], {}, false, 0};
                        ScalarVec v = g.bracket(smp.x, smp.y);
                        if (is_zero_vec(v)) continue;
                        for (std::size_t c = 0; c < na; ++c) {
                            smp.comp.push_back(proj[c].project(v));
                            if (!is_zero_vec(smp.comp.back())) smp.touch |= std::uint64_t{1} << c;
                        }
                        if (zproj) smp.center = !is_zero_vec(zproj->project(v));
                        touch[a][b] |= smp.touch;
                        samples[a][b].push_back(std::move(smp));
                    }
            }
        std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::uint64_t, std::uint64_t>, bool> memo;
        auto linear_refutes = [&](const Sample& smp, std::size_t si, std::uint64_t e1, std::uint64_t e2) {
            const std::uint64_t m1 = smp.touch & e1, m2 = smp.touch & e2;
            auto key = std::make_tuple(smp.a, smp.b, si, m1, m2);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            const std::size_t n = g.dim();
            ScalarVec p1(n, Scalar(0)), p2(n, Scalar(0));
            for (std::size_t c = 0; c < na; ++c) {
                if (m1 >> c & 1) p1 = p1 + smp.comp[c];
                if (m2 >> c & 1) p2 = p2 + smp.comp[c];
            }
            std::vector<ScalarVec> cols;
            for (const auto& w : k.basis()) {
                ScalarVec col = g.bracket(w, smp.x);
                ScalarVec c2 = g.bracket(w, smp.y);
                col.insert(col.end(), c2.begin(), c2.end());
                cols.push_back(std::move(col));
            }
            ScalarVec u1 = p1, u2(n, Scalar(0));
            u1.insert(u1.end(), n, Scalar(0));
            u2.insert(u2.end(), p2.begin(), p2.end());
            cols.push_back(u1);
            cols.push_back(u2);
            auto ns = rank_nullspace(ExactMatrix::from_columns(cols, 2 * n)).nullspace;
            const std::size_t dk = k.dim();
            std::vector<ScalarVec> s;
            for (const auto& v : ns) {
                ScalarVec ab{v[dk], v[dk + 1]};
                if (!is_zero_vec(ab)) s.push_back(ab);
            }
            bool feasible;
            const std::size_t ds = span_dimension(s, 2);
            if (ds == 2) {
                feasible = true;
            } else if (ds == 0) {
                feasible = false;
            } else {
                const Scalar& a0 = s.front()[0];
                const Scalar& b0 = s.front()[1];
                feasible = sign_of(a0) != 0 && sign_of(a0) == sign_of(b0) && a0 != b0;
            }
            memo.emplace(key, !feasible);
            return !feasible;
        };
        std::uint64_t m_mask = 0;
        for (std::size_t c = n_ideals; c < na; ++c) m_mask |= std::uint64_t{1} << c;
        detail::for_each_partition(na, [&](const std::vector<std::size_t>& part) {
            ++rep.partitions_total;
            std::size_t nb = 0;
            for (auto p : part) nb = std::max(nb, p + 1);
            std::vector<std::uint64_t> blocks(nb, 0);
            for (std::size_t c = 0; c < na; ++c) blocks[part[c]] |= std::uint64_t{1} << c;
            bool splits_m = false;
            for (auto bl : blocks)
                if ((bl & m_mask) && (bl & m_mask) != m_mask) splits_m = true;
            if (!splits_m) return;
            ++rep.partitions_to_refute;
            for (std::size_t b1 = 0; b1 < nb; ++b1)
                for (std::size_t b2 = b1 + 1; b2 < nb; ++b2) {
                    const std::uint64_t both = blocks[b1] | blocks[b2];
                    for (std::size_t a = 0; a < na; ++a) {
                        if (!(blocks[b1] >> a & 1)) continue;
                        for (std::size_t b = 0; b < na; ++b) {
                            if (!(blocks[b2] >> b & 1)) continue;
                            if (touch[a][b] & ~both) {
                                ++rep.refuted_closure;
                                if (rep.refutation_samples.size() < 8)
                                    rep.refutation_samples.push_back({part, "closure", b1, b2});
                                return;
                            }
                        }
                    }
                }
            for (std::size_t b1 = 0; b1 < nb; ++b1)
                for (std::size_t b2 = 0; b2 < nb; ++b2) {
                    if (b1 == b2) continue;
                    for (std::size_t a = 0; a < na; ++a) {
                        if (!(blocks[b1] >> a & 1)) continue;
                        for (std::size_t b = 0; b < na; ++b) {
                            if (!(blocks[b2] >> b & 1)) continue;
                            const auto& ss = samples[a][b];
                            for (std::size_t si = 0; si < ss.size(); ++si) {
                                if (ss[si].center) continue;
                                if (linear_refutes(ss[si], si, blocks[b1], blocks[b2])) {
                                    ++rep.refuted_linear;
                                    if (rep.refutation_samples.size() < 8)
                                        rep.refutation_samples.push_back({part, "linear", b1, b2});
                                    return;
                                }
                            }
                        }
                    }
                }
            all_refuted = false;
            if (rep.unrefuted.size() < 16) rep.unrefuted.push_back(part);
        });
    } else {
        all_refuted = false;
    }
    rep.collapse = all_refuted ? "direct obstruction" : "imported";
    rep.survivors_dim = rep.natural_dim;

    // naturally reductive family: exact all-X certificate at sampled parameters
    rep.family_certified = true;
    for (std::size_t t = 0; t < opt.assignments; ++t) {
        MetricParams p = sample_params(shape, rng);
        auto lam = metricform_build(g, shape, p);
        auto cert = verify_quadratic_identity(g, lam);
        rep.family_certified = rep.family_certified && cert.holds && is_killing_symmetric(g, lam.matrix()) &&
                               is_positive_metric(g, lam.matrix());
        rep.identity.push_back(std::move(cert));
        rep.metrics.push_back(std::move(lam));
    }

    if (!all_refuted) {
        // sampled metrics from the equivariant family, searched for counterexamples
        std::uniform_int_distribution<int> coef(1, 6);
        for (std::size_t s = 0; s < opt.evidence_metrics; ++s) {
            EvidenceSample ev;
            ev.metric_index = s;
            ExactMatrix lam = ExactMatrix::identity(g.dim());
            for (std::size_t attempt = 0; attempt < 16; ++attempt) {
                ExactMatrix cand = Scalar(8) * ExactMatrix::identity(g.dim());
                for (const auto& e : eq_space) cand = cand + Scalar(Rational(coef(rng), 7)) * e;
                if (is_positive_metric(g, cand)) {
                    lam = cand;
                    break;
                }
            }
            ev.in_natural_family = in_natural_family(shape, lam);
            ev.lambda = lam;
            std::vector<Basis<Scalar>> pieces = atoms;
            if (!shape.center.empty()) pieces.push_back(shape.center);
            for (std::size_t i = 0; i < pieces.size() && !ev.refuted; ++i)
                for (std::size_t j = i + 1; j < pieces.size() && !ev.refuted; ++j) {
                    auto r = find_counterexample(g, lam, k.basis(), pieces[i], pieces[j], opt.jobs);
                    ev.candidates_tried += r.candidates_tried;
                    ev.refuted = r.found.has_value();
                    ev.counterexample = r.found;
                }
            rep.evidence.push_back(ev);
        }
    }
    rep.verdict = all_refuted && rep.family_certified ? "obstruction-collapse" : "evidence-only";
    return rep;
}

// ---------------------------------------------------------------- Euler-Arnold

struct FloatAlgebra {
    std::size_t n = 0;
    // [e_i, e_j] as sparse list
    std::vector<std::vector<std::pair<std::size_t, double>>> table;

    explicit FloatAlgebra(const LieAlgebra& g) : n(g.dim()), table(g.dim() * g.dim())
    {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [k, v] : g.structure(i, j)) table[i * n + j].emplace_back(k, to_double(v));
    }

    Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const
    {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (x[static_cast<Eigen::Index>(i)] == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double c = x[static_cast<Eigen::Index>(i)] * y[static_cast<Eigen::Index>(j)];
                if (c == 0.0) continue;
                for (const auto& [k, v] : table[i * n + j]) out[static_cast<Eigen::Index>(k)] += c * v;
            }
        }
        return out;
    }

    Eigen::MatrixXd ad(const Eigen::VectorXd& x) const
    {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) {
            Eigen::VectorXd e = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j));
            m.col(static_cast<Eigen::Index>(j)) = bracket(x, e);
        }
        return m;
    }
};

inline Eigen::MatrixXd to_eigen(const ExactMatrix& m)
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
    return out;
}

inline Eigen::VectorXd to_eigen(const ScalarVec& v)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = to_double(v[i]);
    return out;
}

/// exp(A) by scaling and squaring with a Taylor series.
inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a)
{
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    Eigen::MatrixXd b = a / std::ldexp(1.0, s);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    Eigen::MatrixXd sum = term;
    for (int k = 1; k <= 20; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

struct EulerArnoldResult {
    double max_deviation = 0.0;
    double energy_drift = 0.0; // relative
    std::size_t steps = 0;
};

/// Integrates dV/dt = Lambda^{-1}[Lambda V, V], V(0) = X, with RK4 and compares
/// with exp(t ad_W) X at every step.
inline EulerArnoldResult euler_arnold_check(const LieAlgebra& g, const ExactMatrix& lambda, const ScalarVec& w,
                                            const ScalarVec& x, double horizon, double dt)
{
    if (!(dt > 0) || !(horizon > 0) || dt > horizon) throw std::invalid_argument("euler_arnold_check: invalid step or horizon");
    FloatAlgebra fa(g);
    const Eigen::MatrixXd lam = to_eigen(lambda);
    const Eigen::MatrixXd lam_inv = lam.inverse();
    const Eigen::MatrixXd form = -to_eigen(g.killing()) * lam;
    auto rhs = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return lam_inv * fa.bracket(lam * v, v); };
    Eigen::VectorXd v = to_eigen(x);
    const Eigen::VectorXd v0 = v;
    const Eigen::MatrixXd step = expm(dt * fa.ad(to_eigen(w)));
    Eigen::VectorXd closed = v0;
    const double e0 = v0.dot(form * v0);
    EulerArnoldResult out;
    out.steps = static_cast<std::size_t>(std::llround(horizon / dt));
    for (std::size_t s = 0; s < out.steps; ++s) {
        Eigen::VectorXd k1 = rhs(v);
        Eigen::VectorXd k2 = rhs(v + 0.5 * dt * k1);
        Eigen::VectorXd k3 = rhs(v + 0.5 * dt * k2);
        Eigen::VectorXd k4 = rhs(v + dt * k3);
        v += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
        closed = step * closed;
        out.max_deviation = std::max(out.max_deviation, (v - closed).cwiseAbs().maxCoeff());
    }
    const double e1 = v.dot(form * v);
    out.energy_drift = e0 == 0 ? std::fabs(e1) : std::fabs(e1 - e0) / std::fabs(e0);
    return out;
}

/// Least-squares W in span(h) for [W, Lambda X] = [Lambda X, X] (diagnostic only).
inline ScalarVec least_squares_w(const LieAlgebra& g, const ExactMatrix& lambda, const Basis<Scalar>& h, const ScalarVec& x)
{
    FloatAlgebra fa(g);
    const Eigen::VectorXd lx = to_eigen(lambda) * to_eigen(x);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(g.dim()), static_cast<Eigen::Index>(h.size()));
    for (std::size_t j = 0; j < h.size(); ++j) a.col(static_cast<Eigen::Index>(j)) = fa.bracket(to_eigen(h[j]), lx);
    Eigen::VectorXd b = fa.bracket(lx, to_eigen(x));
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    ScalarVec w = g.zero();
    for (std::size_t j = 0; j < h.size(); ++j) {
        auto q = detail::rationalize(c[static_cast<Eigen::Index>(j)], 1000000, 1e-6);
        Rational r = q ? *q : Rational(static_cast<long>(std::llround(c[static_cast<Eigen::Index>(j)] * 1e6)), 1000000);
        r.canonicalize();
        w = w + scaled(Scalar(r), h[j]);
    }
    return w;
}

} // namespace golie
