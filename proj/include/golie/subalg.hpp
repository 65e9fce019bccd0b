#pragma once

// Subalgebras of a compact Lie algebra: closure, normalizer, centralizer,
// center, rank, regularity, ideals and weak regularity.

#include "golie/action.hpp"

#include <random>

namespace golie {

class Subalgebra {
public:
    const LieAlgebra& ambient() const { return *g_; }
    const Basis<Scalar>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    /// Use span_closure_check for unverified input.
    static Subalgebra trusted(const LieAlgebra& g, Basis<Scalar> basis)
    {
        Subalgebra s;
        s.g_ = &g;
        s.basis_ = std::move(basis);
        return s;
    }

private:
    const LieAlgebra* g_ = nullptr;
    Basis<Scalar> basis_;
};

struct ClosureWitness {
    std::size_t i, j;
    ScalarVec escaping; // component of [b_i, b_j] B-orthogonal to the span
};

struct ClosureResult {
    std::optional<Subalgebra> subalgebra;
    std::optional<ClosureWitness> witness;
    std::size_t input_count = 0;
    bool independent = true;
    bool closed() const { return subalgebra.has_value(); }
};

/// B-orthogonal complement of span(sub) in the whole algebra.
inline Basis<Scalar> killing_complement(const LieAlgebra& g, const Basis<Scalar>& sub)
{
    Basis<Scalar> all;
    for (std::size_t i = 0; i < g.dim(); ++i) all.push_back(g.basis_vector(i));
    return orthogonal_complement(g.killing(), sub, all);
}

/// B-orthogonal complement of span(sub) inside span(within).
inline Basis<Scalar> killing_complement_in(const LieAlgebra& g, const Basis<Scalar>& sub, const Basis<Scalar>& within)
{
    return orthogonal_complement(g.killing(), sub, within);
}

inline ClosureResult span_closure_check(const LieAlgebra& g, const Basis<Scalar>& vectors)
{
    ClosureResult out;
    out.input_count = vectors.size();
    Basis<Scalar> basis = independent_subset(vectors, g.dim());
    out.independent = basis.size() == vectors.size();
    SubspaceCoords sc(g, basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            ScalarVec br = g.bracket(basis[i], basis[j]);
            if (!sc.coords(br)) {
                out.witness = ClosureWitness{i, j, br - sc.project(br)};
                return out;
            }
        }
    out.subalgebra = Subalgebra::trusted(g, std::move(basis));
    return out;
}

inline bool is_abelian(const LieAlgebra& g, const Basis<Scalar>& basis)
{
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!is_zero_vec(g.bracket(basis[i], basis[j]))) return false;
    return true;
}

/// n_g(h) = { X : [X, h] in h }. Uses [X, h_j] in h iff B([X, h_j], m) = 0 for m in h^perp.
inline Subalgebra normalizer(const Subalgebra& h)
{
    const auto& g = h.ambient();
    const std::size_t n = g.dim();
    Basis<Scalar> perp = killing_complement(g, h.basis());
    std::vector<ScalarVec> bm;
    for (const auto& m : perp) bm.push_back(g.killing() * m);
    SparseEliminator<Scalar> elim(n);
    for (const auto& hj : h.basis()) {
        // column i: [e_i, h_j]
        std::vector<ScalarVec> cols;
        for (std::size_t i = 0; i < n; ++i) cols.push_back(g.bracket(g.basis_vector(i), hj));
        for (const auto& b : bm) {
            SparseEliminator<Scalar>::Row row;
            for (std::size_t i = 0; i < n; ++i) {
                Scalar v = dot(cols[i], b);
                if (!is_zero(v)) row.emplace_back(i, v);
            }
            if (!row.empty()) elim.add_row(std::move(row));
        }
    }
    Basis<Scalar> ns = elim.nullspace();
    auto res = span_closure_check(g, ns);
    if (!res.closed()) throw std::logic_error("normalizer is not closed under bracket");
    return *res.subalgebra;
}

/// c_g(S) = { X : [X, s] = 0 for all s in S }.
inline Basis<Scalar> centralizer_of(const LieAlgebra& g, const Basis<Scalar>& s)
{
    const std::size_t n = g.dim();
    SparseEliminator<Scalar> elim(n);
    for (const auto& v : s) {
        ExactMatrix a = g.ad(v); // [X, v] = -ad(v) X
        for (std::size_t r = 0; r < n; ++r) {
            SparseEliminator<Scalar>::Row row;
            for (std::size_t c = 0; c < n; ++c)
                if (!is_zero(a(r, c))) row.emplace_back(c, a(r, c));
            if (!row.empty()) elim.add_row(std::move(row));
        }
    }
    return elim.nullspace();
}

inline Subalgebra centralizer(const Subalgebra& h)
{
    return Subalgebra::trusted(h.ambient(), centralizer_of(h.ambient(), h.basis()));
}

/// Elements of span(inside) commuting with every element of s.
inline Basis<Scalar> centralizer_within(const LieAlgebra& g, const Basis<Scalar>& s, const Basis<Scalar>& inside)
{
    const std::size_t d = inside.size();
    if (d == 0) return {};
    SparseEliminator<Scalar> elim(d);
    for (const auto& v : s) {
        std::vector<ScalarVec> cols;
        for (const auto& u : inside) cols.push_back(g.bracket(u, v));
        for (std::size_t r = 0; r < g.dim(); ++r) {
            SparseEliminator<Scalar>::Row row;
            for (std::size_t c = 0; c < d; ++c)
                if (!is_zero(cols[c][r])) row.emplace_back(c, cols[c][r]);
            if (!row.empty()) elim.add_row(std::move(row));
        }
    }
    Basis<Scalar> out;
    for (const auto& c : elim.nullspace()) {
        ScalarVec x = g.zero();
        for (std::size_t i = 0; i < d; ++i)
            if (!is_zero(c[i])) x = x + scaled(c[i], inside[i]);
        out.push_back(std::move(x));
    }
    return out;
}

inline Subalgebra center(const Subalgebra& h)
{
    return Subalgebra::trusted(h.ambient(), centralizer_within(h.ambient(), h.basis(), h.basis()));
}

// ---------------------------------------------------------------- rank

enum class CertStatus { certified, unresolved };

inline const char* to_string(CertStatus s) { return s == CertStatus::certified ? "certified" : "unresolved"; }

struct RankResult {
    CertStatus status = CertStatus::unresolved;
    std::size_t rank = 0;
    Basis<Scalar> cartan;      // abelian c_h(Z), a Cartan subalgebra of h
    ScalarVec regular_element; // the Z that produced it
    std::size_t samples = 0;
};

inline ScalarVec random_combination(const Basis<Scalar>& basis, std::size_t dim, std::mt19937_64& rng, int bound = 3)
{
    std::uniform_int_distribution<int> dist(-bound, bound);
    ScalarVec x(dim, Scalar(0));
    for (const auto& b : basis) {
        int c = dist(rng);
        if (c != 0) x = x + scaled(Scalar(c), b);
    }
    return x;
}

constexpr std::size_t rank_sample_budget = 32;

/// Rank of a compact subalgebra: an element Z whose centralizer in h is
/// abelian is regular, and that centralizer is a Cartan subalgebra.
inline RankResult rank_of(const LieAlgebra& g, const Basis<Scalar>& h, std::mt19937_64& rng)
{
    RankResult out;
    if (h.empty()) {
        out.status = CertStatus::certified;
        out.regular_element = g.zero();
        return out;
    }
    for (std::size_t s = 0; s < rank_sample_budget; ++s) {
        ScalarVec z = random_combination(h, g.dim(), rng);
        ++out.samples;
        if (is_zero_vec(z)) continue;
        Basis<Scalar> c = centralizer_within(g, {z}, h);
        if (is_abelian(g, c)) {
            out.status = CertStatus::certified;
            out.rank = c.size();
            out.cartan = std::move(c);
            out.regular_element = std::move(z);
            return out;
        }
    }
    return out;
}

inline RankResult rank(const Subalgebra& h, std::mt19937_64& rng) { return rank_of(h.ambient(), h.basis(), rng); }

struct RegularityResult {
    CertStatus status = CertStatus::unresolved;
    bool regular = false;
    std::size_t normalizer_dim = 0;
    std::size_t normalizer_rank = 0;
    std::size_t ambient_rank = 0;
    Basis<Scalar> cartan; // Cartan subalgebra of the normalizer
};

/// Regular iff the normalizer contains a Cartan subalgebra of g, i.e. its
/// rank equals rank(g).
inline RegularityResult is_regular(const Subalgebra& h, std::mt19937_64& rng)
{
    RegularityResult out;
    const auto& g = h.ambient();
    Subalgebra k = normalizer(h);
    out.normalizer_dim = k.dim();
    Basis<Scalar> all;
    for (std::size_t i = 0; i < g.dim(); ++i) all.push_back(g.basis_vector(i));
    auto rg = rank_of(g, all, rng);
    auto rk = rank(k, rng);
    if (rg.status != CertStatus::certified || rk.status != CertStatus::certified) return out;
    out.status = CertStatus::certified;
    out.ambient_rank = rg.rank;
    out.normalizer_rank = rk.rank;
    out.regular = rk.rank == rg.rank;
    out.cartan = std::move(rk.cartan);
    return out;
}

// ---------------------------------------------------------------- ideals

/// Smallest ad_k-invariant subspace containing x.
inline Basis<Scalar> generated_ideal(const LieAlgebra& g, const Basis<Scalar>& k, const ScalarVec& x)
{
    SparseEliminator<Scalar> elim(g.dim());
    Basis<Scalar> out;
    if (is_zero_vec(x)) return out;
    elim.add_dense(x);
    out.push_back(x);
    for (std::size_t pos = 0; pos < out.size(); ++pos)
        for (const auto& z : k) {
            ScalarVec y = g.bracket(z, out[pos]);
            if (elim.add_dense(y)) out.push_back(std::move(y));
        }
    return out;
}

struct IdealDecomposition {
    Basis<Scalar> center;
    std::vector<Basis<Scalar>> ideals;
    std::size_t commutant_dim = 0; // of the action on the semisimple part
    bool certified = false;        // commutant_dim == number of ideals
};

/// Dimension of the commutant of ad_k on span(carrier).
inline std::size_t commutant_dimension(const LieAlgebra& g, const Basis<Scalar>& k, const Basis<Scalar>& carrier)
{
    auto act = restricted_action(g, k, carrier);
    if (!act.invariant()) throw std::logic_error("commutant_dimension: carrier not invariant");
    return equivariant_maps(act.matrices, act.matrices, carrier.size(), carrier.size()).size();
}

/// center + simple ideals of a compact subalgebra. Ideals are split off by
/// generating the ideal of candidate elements (basis vectors, then seeded
/// random ones); the split is certified when the commutant of the semisimple
/// part has dimension equal to the number of ideals found (one scalar per
/// absolutely irreducible simple ideal).
inline IdealDecomposition ideal_decomposition(const Subalgebra& k, std::mt19937_64& rng)
{
    const auto& g = k.ambient();
    IdealDecomposition out;
    out.center = center(k).basis();
    Basis<Scalar> semisimple = killing_complement_in(g, out.center, k.basis());
    std::vector<Basis<Scalar>> pending;
    if (!semisimple.empty()) pending.push_back(semisimple);
    while (!pending.empty()) {
        Basis<Scalar> s = std::move(pending.back());
        pending.pop_back();
        bool split = false;
        std::vector<ScalarVec> candidates = s;
        for (int t = 0; t < 8; ++t) candidates.push_back(random_combination(s, g.dim(), rng));
        for (const auto& x : candidates) {
            Basis<Scalar> ideal = generated_ideal(g, k.basis(), x);
            if (ideal.empty() || ideal.size() == s.size()) continue;
            Basis<Scalar> rest = killing_complement_in(g, ideal, s);
            pending.push_back(std::move(rest));
            pending.push_back(std::move(ideal));
            split = true;
            break;
        }
        if (!split) out.ideals.push_back(std::move(s));
    }
    std::sort(out.ideals.begin(), out.ideals.end(),
              [](const Basis<Scalar>& a, const Basis<Scalar>& b) { return a.size() > b.size(); });
    if (!semisimple.empty()) {
        out.commutant_dim = commutant_dimension(g, k.basis(), semisimple);
        out.certified = out.commutant_dim == out.ideals.size();
    } else {
        out.certified = true;
    }
    return out;
}

/// Checks the decomposition invariants: direct sum of k, pairwise bracket-
/// and B-orthogonal summands, each ideal centerless.
inline bool verify_ideal_decomposition(const Subalgebra& k, const IdealDecomposition& d)
{
    const auto& g = k.ambient();
    std::vector<Basis<Scalar>> parts;
    if (!d.center.empty()) parts.push_back(d.center);
    for (const auto& i : d.ideals) parts.push_back(i);
    Basis<Scalar> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    if (all.size() != k.dim() || span_dimension(all, g.dim()) != k.dim() || !contains_all(k.basis(), all)) return false;
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = a + 1; b < parts.size(); ++b)
            for (const auto& x : parts[a])
                for (const auto& y : parts[b])
                    if (!is_zero(g.killing(x, y)) || !is_zero_vec(g.bracket(x, y))) return false;
    for (const auto& i : d.ideals)
        if (!centralizer_within(g, i, i).empty()) return false;
    return true;
}

// ---------------------------------------------------------------- weak regularity

struct WeakRegularityResult {
    bool weakly_regular = false;
    std::size_t k_dim = 0, m_dim = 0;
    std::size_t hom_k_to_m = 0, hom_m_to_k = 0;
};

/// k = n_g(h), m = k^perp; weakly regular iff no nonzero ad_k-equivariant map
/// exists between k and m in either direction.
inline WeakRegularityResult weak_regularity(const Subalgebra& h)
{
    const auto& g = h.ambient();
    WeakRegularityResult out;
    Subalgebra k = normalizer(h);
    Basis<Scalar> m = killing_complement(g, k.basis());
    out.k_dim = k.dim();
    out.m_dim = m.size();
    auto ak = restricted_action(g, k.basis(), k.basis());
    auto am = restricted_action(g, k.basis(), m);
    if (!ak.invariant() || !am.invariant()) throw std::logic_error("weak_regularity: k or m not invariant");
    out.hom_k_to_m = equivariant_maps(ak.matrices, am.matrices, k.dim(), m.size()).size();
    out.hom_m_to_k = equivariant_maps(am.matrices, ak.matrices, m.size(), k.dim()).size();
    out.weakly_regular = out.hom_k_to_m == 0 && out.hom_m_to_k == 0;
    return out;
}

} // namespace golie
