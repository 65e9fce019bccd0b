#pragma once

// Subspaces represented by lists of spanning vectors.

#include "golie/linalg.hpp"

#include <optional>

namespace golie {

template <class F>
using Basis = std::vector<Vec<F>>;

/// Independent subset of the given vectors spanning the same space (keeps the
/// original vectors, in order).
template <class F>
Basis<F> independent_subset(const Basis<F>& vs, std::size_t dim)
{
    SparseEliminator<F> elim(dim);
    Basis<F> out;
    for (const auto& v : vs)
        if (elim.add_dense(v)) out.push_back(v);
    return out;
}

template <class F>
std::size_t span_dimension(const Basis<F>& vs, std::size_t dim)
{
    SparseEliminator<F> elim(dim);
    for (const auto& v : vs) elim.add_dense(v);
    return elim.rank();
}

/// Coordinates of v in an independent basis, or nothing when v is outside the span.
template <class F>
std::optional<Vec<F>> coordinates(const Basis<F>& basis, const Vec<F>& v)
{
    if (basis.empty()) {
        if (is_zero_vec(v)) return Vec<F>{};
        return std::nullopt;
    }
    auto m = Matrix<F>::from_columns(basis, v.size());
    auto res = solve(m, v);
    return res.solution;
}

template <class F>
bool in_span(const Basis<F>& basis, const Vec<F>& v)
{
    return coordinates(basis, v).has_value();
}

template <class F>
bool contains_all(const Basis<F>& big, const Basis<F>& small)
{
    if (small.empty()) return true;
    const std::size_t n = small.front().size();
    SparseEliminator<F> elim(n);
    for (const auto& v : big) elim.add_dense(v);
    for (const auto& v : small) {
        typename SparseEliminator<F>::Row row;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!is_zero(v[i])) row.emplace_back(i, v[i]);
        if (!elim.in_row_space(row)) return false;
    }
    return true;
}

template <class F>
bool same_span(const Basis<F>& a, const Basis<F>& b, std::size_t dim)
{
    return span_dimension(a, dim) == span_dimension(b, dim) && contains_all(a, b);
}

/// Vectors of span(within) orthogonal to span(sub) for the symmetric form
/// with Gram matrix gram. Returned as combinations of the `within` vectors.
template <class F>
Basis<F> orthogonal_complement(const Matrix<F>& gram, const Basis<F>& sub, const Basis<F>& within)
{
    if (within.empty()) return {};
    const std::size_t n = within.front().size();
    // constraint row for s: (G s)^T w_j
    std::vector<Vec<F>> gs;
    for (const auto& s : sub) gs.push_back(gram * s);
    Matrix<F> cons(sub.size(), within.size());
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (std::size_t j = 0; j < within.size(); ++j) cons(i, j) = dot(gs[i], within[j]);
    auto ns = sub.empty() ? RankNullspace<F>{0, {}} : rank_nullspace(cons);
    if (sub.empty()) {
        for (std::size_t j = 0; j < within.size(); ++j) ns.nullspace.push_back(unit_vector<F>(within.size(), j));
    }
    Basis<F> out;
    for (const auto& c : ns.nullspace) {
        Vec<F> v(n, F(0));
        for (std::size_t j = 0; j < within.size(); ++j)
            if (!is_zero(c[j])) v = v + scaled(c[j], within[j]);
        out.push_back(std::move(v));
    }
    return out;
}

/// Orthogonal projector data onto span(basis) along its gram-complement:
/// coords(x) = (U^T G U)^{-1} U^T G x.
template <class F>
class Projector {
public:
    Projector() = default;
    Projector(const Matrix<F>& gram, Basis<F> basis) : basis_(std::move(basis))
    {
        if (basis_.empty()) return;
        dim_ = basis_.front().size();
        for (const auto& u : basis_) gu_.push_back(gram * u);
        const std::size_t d = basis_.size();
        Matrix<F> g(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) g(i, j) = dot(gu_[i], basis_[j]);
        inv_ = inverse(g);
    }

    const Basis<F>& basis() const { return basis_; }

    Vec<F> coords(const Vec<F>& x) const
    {
        const std::size_t d = basis_.size();
        Vec<F> r(d);
        for (std::size_t i = 0; i < d; ++i) r[i] = dot(gu_[i], x);
        return inv_ * r;
    }

    Vec<F> project(const Vec<F>& x) const
    {
        Vec<F> out(dim_, F(0));
        if (basis_.empty()) return Vec<F>(x.size(), F(0));
        auto c = coords(x);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!is_zero(c[i])) out = out + scaled(c[i], basis_[i]);
        return out;
    }

    static Matrix<F> inverse(const Matrix<F>& g)
    {
        const std::size_t d = g.rows();
        Matrix<F> inv(d, d);
        for (std::size_t j = 0; j < d; ++j) {
            auto res = solve(g, unit_vector<F>(d, j));
            if (!res.solution) throw std::domain_error("projector: degenerate form on subspace");
            for (std::size_t i = 0; i < d; ++i) inv(i, j) = (*res.solution)[i];
        }
        return inv;
    }

private:
    Basis<F> basis_;
    Basis<F> gu_;
    Matrix<F> inv_;
    std::size_t dim_ = 0;
};

/// Sylvester check: the symmetric matrix is definite with the given sign
/// (+1 positive, -1 negative) iff every elimination pivot has that sign.
template <class F>
bool is_definite(Matrix<F> g, int expected_sign)
{
    const std::size_t n = g.rows();
    for (std::size_t k = 0; k < n; ++k) {
        if (sign_of(g(k, k)) != expected_sign) return false;
        const F piv = g(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (is_zero(g(i, k))) continue;
            const F f = g(i, k) / piv;
            for (std::size_t j = k; j < n; ++j)
                if (!is_zero(g(k, j))) g(i, j) -= f * g(k, j);
        }
    }
    return true;
}

} // namespace golie
