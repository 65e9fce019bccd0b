#pragma once

// Decomposition of ad_k-invariant subspaces into irreducible submodules,
// with exact certificates, and Hom spaces between modules.

#include "golie/subalg.hpp"

#include <Eigen/Eigenvalues>

#include <numeric>

namespace golie {

enum class IrreducibilityCert { commutant_dim_1, division_algebra, reducible, unresolved };

inline const char* to_string(IrreducibilityCert c)
{
    switch (c) {
    case IrreducibilityCert::commutant_dim_1: return "commutant-dim-1";
    case IrreducibilityCert::division_algebra: return "division-algebra";
    case IrreducibilityCert::reducible: return "reducible";
    case IrreducibilityCert::unresolved: return "unresolved";
    }
    return "?";
}

inline bool is_irreducible(IrreducibilityCert c)
{
    return c == IrreducibilityCert::commutant_dim_1 || c == IrreducibilityCert::division_algebra;
}

struct InvariantModule {
    Basis<Scalar> carrier;
    std::size_t commutant_dim = 0;
    std::size_t symmetric_commutant_dim = 0; // B-self-adjoint part
    IrreducibilityCert cert = IrreducibilityCert::unresolved;
};

struct InvariantDecomposition {
    std::vector<InvariantModule> modules;
    std::vector<std::size_t> equivalence_class; // class id per module
    std::size_t splits = 0;
    bool all_irreducible() const
    {
        return std::all_of(modules.begin(), modules.end(), [](const auto& m) { return is_irreducible(m.cert); });
    }
};

/// Basis of Hom_k(U, V) as dim V x dim U matrices in carrier coordinates.
inline std::vector<ExactMatrix> hom_space(const LieAlgebra& g, const Basis<Scalar>& k, const Basis<Scalar>& u,
                                          const Basis<Scalar>& v)
{
    auto au = restricted_action(g, k, u);
    auto av = restricted_action(g, k, v);
    if (!au.invariant() || !av.invariant()) throw std::invalid_argument("hom_space: carrier is not ad_k-invariant");
    return equivariant_maps(au.matrices, av.matrices, u.size(), v.size());
}

namespace detail {

inline ExactMatrix gram_on(const LieAlgebra& g, const Basis<Scalar>& u)
{
    const std::size_t d = u.size();
    ExactMatrix m(d, d);
    std::vector<ScalarVec> bu;
    for (const auto& x : u) bu.push_back(g.killing() * x);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) m(i, j) = m(j, i) = dot(bu[i], u[j]);
    return m;
}

inline ExactMatrix combine(const std::vector<ExactMatrix>& ms, const ScalarVec& c)
{
    ExactMatrix out(ms.front().rows(), ms.front().cols());
    for (std::size_t i = 0; i < ms.size(); ++i)
        if (!is_zero(c[i])) out = out + c[i] * ms[i];
    return out;
}

/// Elements T of span(ts) with G T symmetric (self-adjoint for the form G).
inline std::vector<ExactMatrix> self_adjoint_part(const std::vector<ExactMatrix>& ts, const ExactMatrix& gram)
{
    if (ts.empty()) return {};
    const std::size_t d = gram.rows();
    SparseEliminator<Scalar> elim(ts.size());
    std::vector<ExactMatrix> gt;
    for (const auto& t : ts) gt.push_back(gram * t);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) {
            SparseEliminator<Scalar>::Row row;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                Scalar v = gt[i](a, b) - gt[i](b, a);
                if (!is_zero(v)) row.emplace_back(i, v);
            }
            if (!row.empty()) elim.add_row(std::move(row));
        }
    std::vector<ExactMatrix> out;
    for (const auto& c : elim.nullspace()) out.push_back(combine(ts, c));
    return out;
}

inline bool is_scalar_matrix(const ExactMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i == j ? m(i, i) != m(0, 0) : !is_zero(m(i, j))) return false;
    return true;
}

// Best rational approximation with bounded denominator.
inline std::optional<Rational> rationalize(double x, long max_den = 100000, double tol = 1e-9)
{
    if (!std::isfinite(x)) return std::nullopt;
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(r);
        if (std::fabs(a) > 1e12) break;
        long ai = static_cast<long>(a);
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - x) < tol * std::max(1.0, std::fabs(x)))
            return Rational(h1, k1);
        double frac = r - a;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

/// Exact field elements q * sqrt(m) (m a monomial of the field) close to x.
inline std::vector<Scalar> exact_candidates(double x, const ScalarField* field)
{
    std::vector<Scalar> out;
    for (std::uint32_t mask = 0; mask < field->dimension(); ++mask) {
        const double s = mask == 0 ? 1.0 : std::sqrt(field->mask_product(mask).get_d());
        if (auto q = rationalize(x / s)) out.push_back(Scalar::monomial(field, mask, *q));
    }
    return out;
}

inline std::vector<double> real_eigenvalues(const ExactMatrix& m)
{
    const std::size_t d = m.rows();
    Eigen::MatrixXd a(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        auto ev = es.eigenvalues()[i];
        if (std::fabs(ev.imag()) > 1e-7 * std::max(1.0, std::abs(ev))) continue;
        bool seen = false;
        for (double o : out)
            if (std::fabs(o - ev.real()) < 1e-7 * std::max(1.0, std::fabs(o))) seen = true;
        if (!seen) out.push_back(ev.real());
    }
    return out;
}

/// A proper exact eigenspace of t (in carrier coordinates), if one is found.
inline std::optional<std::vector<ScalarVec>> proper_eigenspace(const ExactMatrix& t, const ScalarField* field)
{
    const std::size_t d = t.rows();
    for (double ev : real_eigenvalues(t)) {
        for (const Scalar& lambda : exact_candidates(ev, field)) {
            ExactMatrix s = t;
            for (std::size_t i = 0; i < d; ++i) s(i, i) -= lambda;
            auto ns = rank_nullspace(s).nullspace;
            if (!ns.empty() && ns.size() < d) return ns;
            if (!ns.empty()) break;
        }
    }
    return std::nullopt;
}

} // namespace detail

constexpr std::size_t decompose_sample_budget = 16;

/// Irreducibility certificate for an invariant carrier. Over the reals the
/// commutant of an irreducible orthogonal module is R, C or H, whose
/// self-adjoint part is R; a reducible one contains the orthogonal projector
/// onto a submodule. So: self-adjoint commutant of dimension 1 <=> irreducible.
/// The division-algebra case additionally checks that every basis element of
/// the commutant has a minimal polynomial without real roots (or is scalar).
inline InvariantModule certify_module(const LieAlgebra& g, const Basis<Scalar>& k, const Basis<Scalar>& carrier,
                                      std::vector<ExactMatrix>* commutant_out = nullptr)
{
    InvariantModule mod;
    mod.carrier = carrier;
    auto act = restricted_action(g, k, carrier);
    if (!act.invariant()) throw std::invalid_argument("certify_module: carrier is not ad_k-invariant");
    auto comm = equivariant_maps(act.matrices, act.matrices, carrier.size(), carrier.size());
    mod.commutant_dim = comm.size();
    auto sym = detail::self_adjoint_part(comm, detail::gram_on(g, carrier));
    mod.symmetric_commutant_dim = sym.size();
    if (comm.size() == 1) {
        mod.cert = IrreducibilityCert::commutant_dim_1;
    } else if (sym.size() > 1) {
        mod.cert = IrreducibilityCert::reducible;
    } else if (comm.size() == 2 || comm.size() == 4) {
        bool division = true;
        for (const auto& t : comm) {
            if (detail::is_scalar_matrix(t)) continue;
            auto p = min_poly(t);
            if (p.size() != 3) {
                division = false;
                break;
            }
            // t^2 + p1 t + p0 with p1^2 - 4 p0 < 0
            Scalar disc = p[1] * p[1] - Scalar(4) * p[0];
            if (sign_of(disc) >= 0) {
                division = false;
                break;
            }
        }
        mod.cert = division ? IrreducibilityCert::division_algebra : IrreducibilityCert::unresolved;
    } else {
        mod.cert = IrreducibilityCert::unresolved;
    }
    if (commutant_out) *commutant_out = std::move(sym);
    return mod;
}

/// Splits span(carrier) into irreducible ad_k-submodules by exact eigenspaces
/// of self-adjoint commutant elements; complements are taken B-orthogonally.
inline InvariantDecomposition decompose(const LieAlgebra& g, const Basis<Scalar>& k, const Basis<Scalar>& carrier,
                                        std::mt19937_64& rng)
{
    InvariantDecomposition out;
    if (!restricted_action(g, k, carrier).invariant())
        throw std::invalid_argument("decompose: carrier is not ad_k-invariant");
    std::vector<Basis<Scalar>> pending{carrier};
    while (!pending.empty()) {
        Basis<Scalar> u = std::move(pending.back());
        pending.pop_back();
        if (u.empty()) continue;
        std::vector<ExactMatrix> sym;
        InvariantModule mod = certify_module(g, k, u, &sym);
        if (mod.cert != IrreducibilityCert::reducible) {
            out.modules.push_back(std::move(mod));
            continue;
        }
        std::optional<std::vector<ScalarVec>> eig;
        for (const auto& t : sym) {
            if (detail::is_scalar_matrix(t)) continue;
            if ((eig = detail::proper_eigenspace(t, g.field()))) break;
        }
        std::uniform_int_distribution<int> dist(-3, 3);
        for (std::size_t s = 0; !eig && s < decompose_sample_budget; ++s) {
            ScalarVec c(sym.size());
            for (auto& x : c) x = Scalar(dist(rng));
            ExactMatrix t = detail::combine(sym, c);
            if (detail::is_scalar_matrix(t)) continue;
            eig = detail::proper_eigenspace(t, g.field());
        }
        if (!eig) {
            mod.cert = IrreducibilityCert::unresolved;
            out.modules.push_back(std::move(mod));
            continue;
        }
        SubspaceCoords sc(g, u);
        Basis<Scalar> part;
        for (const auto& c : *eig) part.push_back(sc.combine(c));
        Basis<Scalar> rest = killing_complement_in(g, part, u);
        if (!restricted_action(g, k, part).invariant() || !restricted_action(g, k, rest).invariant())
            throw std::logic_error("decompose: eigenspace split is not invariant");
        ++out.splits;
        pending.push_back(std::move(rest));
        pending.push_back(std::move(part));
    }
    // equivalence classes by nonzero Hom
    const std::size_t n = out.modules.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (out.modules[i].carrier.size() != out.modules[j].carrier.size()) continue;
            if (find(i) == find(j)) continue;
            if (!hom_space(g, k, out.modules[i].carrier, out.modules[j].carrier).empty()) parent[find(j)] = find(i);
        }
    std::map<std::size_t, std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i) {
        auto r = find(i);
        if (!ids.count(r)) ids.emplace(r, ids.size());
        out.equivalence_class.push_back(ids[r]);
    }
    return out;
}

struct DecompositionCheck {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<InvariantModule> modules;
    std::vector<std::pair<std::size_t, std::size_t>> hom_dims; // (i,j) pairs with hom dim, flattened below
    std::vector<std::size_t> hom_dim_values;
};

/// Independent check of a claimed decomposition of span(carrier): each piece
/// invariant and certified irreducible, pieces B-orthogonal, and together
/// spanning the carrier.
inline DecompositionCheck verify_decomposition(const LieAlgebra& g, const Basis<Scalar>& k,
                                               const std::vector<Basis<Scalar>>& claimed, const Basis<Scalar>& carrier)
{
    DecompositionCheck out;
    auto fail = [&](std::string s) {
        out.ok = false;
        out.failures.push_back(std::move(s));
    };
    std::vector<bool> invariant(claimed.size(), false);
    for (std::size_t i = 0; i < claimed.size(); ++i) {
        auto act = restricted_action(g, k, claimed[i]);
        if (!act.invariant()) {
            const auto& w = *act.witness;
            fail("piece " + std::to_string(i) + " not invariant: [k_" + std::to_string(w.z) + ", v_" +
                 std::to_string(w.j) + "] escapes");
            out.modules.push_back(InvariantModule{claimed[i], 0, 0, IrreducibilityCert::unresolved});
            continue;
        }
        invariant[i] = true;
        auto mod = certify_module(g, k, claimed[i]);
        if (!is_irreducible(mod.cert))
            fail("piece " + std::to_string(i) + " (dim " + std::to_string(claimed[i].size()) + ") is " +
                 to_string(mod.cert) + ", commutant dim " + std::to_string(mod.commutant_dim));
        out.modules.push_back(std::move(mod));
    }
    for (std::size_t i = 0; i < claimed.size(); ++i)
        for (std::size_t j = i + 1; j < claimed.size(); ++j) {
            for (std::size_t a = 0; a < claimed[i].size(); ++a)
                for (std::size_t b = 0; b < claimed[j].size(); ++b)
                    if (!is_zero(g.killing(claimed[i][a], claimed[j][b]))) {
                        fail("pieces " + std::to_string(i) + " and " + std::to_string(j) + " not B-orthogonal (v_" +
                             std::to_string(a) + ", w_" + std::to_string(b) + ")");
                        a = claimed[i].size();
                        break;
                    }
            if (invariant[i] && invariant[j]) {
                out.hom_dims.emplace_back(i, j);
                out.hom_dim_values.push_back(hom_space(g, k, claimed[i], claimed[j]).size());
            }
        }
    Basis<Scalar> all;
    for (const auto& c : claimed) all.insert(all.end(), c.begin(), c.end());
    const std::size_t rk = span_dimension(all, g.dim());
    if (rk != all.size()) fail("pieces are not linearly independent");
    if (rk != span_dimension(carrier, g.dim()) || !contains_all(carrier, all))
        fail("pieces do not span the carrier");
    return out;
}

} // namespace golie
