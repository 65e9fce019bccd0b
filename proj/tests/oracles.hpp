#pragma once

// Naive reference implementations used to cross-check the library.
// Only field arithmetic and raw structure constants are taken from golie.

#include "golie/algebra.hpp"

#include <map>
#include <optional>
#include <vector>

namespace oracle {

template <class F>
using Mat = std::vector<std::vector<F>>;

template <class F>
bool zero(const F& x)
{
    return x == F(0);
}

// Gauss-Jordan to reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(Mat<F>& a)
{
    std::vector<std::size_t> piv;
    if (a.empty()) return piv;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && zero(a[p][c])) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        F inv = F(1) / a[r][c];
        for (auto& x : a[r]) x = x * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || zero(a[i][c])) continue;
            F f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

template <class F>
std::size_t rank(Mat<F> a)
{
    return rref(a).size();
}

template <class F>
std::vector<std::vector<F>> nullspace(Mat<F> a, std::size_t cols)
{
    auto piv = rref(a);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<F>> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<F> v(cols, F(0));
        v[free] = F(1);
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F(0) - a[r][free];
        out.push_back(v);
    }
    return out;
}

template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& a, const std::vector<F>& b)
{
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    Mat<F> aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    std::vector<F> x(cols, F(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
    return x;
}

template <class F>
Mat<F> matmul(const Mat<F>& a, const Mat<F>& b)
{
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    Mat<F> c(n, std::vector<F>(m, F(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (zero(a[i][t])) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] = c[i][j] + a[i][t] * b[t][j];
        }
    return c;
}

template <class F>
Mat<F> identity(std::size_t n)
{
    Mat<F> m(n, std::vector<F>(n, F(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = F(1);
    return m;
}

// Degree of the minimal polynomial: first k with I, M, ..., M^k dependent.
template <class F>
std::size_t min_poly_degree(const Mat<F>& m)
{
    const std::size_t n = m.size();
    Mat<F> rows;
    Mat<F> p = identity<F>(n);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<F> flat;
        for (const auto& r : p) flat.insert(flat.end(), r.begin(), r.end());
        rows.push_back(flat);
        if (rank(rows) < rows.size()) return k;
        p = matmul(p, m);
    }
    return n;
}

template <class F>
Mat<F> poly_at(const std::vector<F>& coeffs, const Mat<F>& m)
{
    const std::size_t n = m.size();
    Mat<F> acc(n, std::vector<F>(n, F(0)));
    Mat<F> p = identity<F>(n);
    for (const auto& c : coeffs) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc[i][j] = acc[i][j] + c * p[i][j];
        p = matmul(p, m);
    }
    return acc;
}

// Incremental sparse rank for large systems (rows reduced one by one).
template <class F>
class RowSpace {
public:
    explicit RowSpace(std::size_t cols) : cols_(cols) {}

    void add(std::map<std::size_t, F> row)
    {
        for (const auto& [p, prow] : rows_) {
            auto it = row.find(p);
            if (it == row.end()) continue;
            F f = it->second;
            for (const auto& [c, v] : prow) {
                F nv = row.count(c) ? row[c] - f * v : F(0) - f * v;
                if (zero(nv)) row.erase(c);
                else row[c] = nv;
            }
        }
        for (auto it = row.begin(); it != row.end();)
            it = zero(it->second) ? row.erase(it) : std::next(it);
        if (row.empty()) return;
        const std::size_t p = row.begin()->first;
        F inv = F(1) / row.begin()->second;
        for (auto& [c, v] : row) v = v * inv;
        // keep existing rows reduced at the new pivot
        for (auto& [q, qrow] : rows_) {
            auto it = qrow.find(p);
            if (it == qrow.end()) continue;
            F f = it->second;
            for (const auto& [c, v] : row) {
                F nv = qrow.count(c) ? qrow[c] - f * v : F(0) - f * v;
                if (zero(nv)) qrow.erase(c);
                else qrow[c] = nv;
            }
        }
        rows_.emplace(p, std::move(row));
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t nullity() const { return cols_ - rows_.size(); }

private:
    std::size_t cols_;
    std::map<std::size_t, std::map<std::size_t, F>> rows_;
};

// ---------------------------------------------------------------- algebra

using golie::LieAlgebra;
using S = golie::Scalar;
using V = std::vector<S>;

inline V bracket(const LieAlgebra& g, const V& x, const V& y)
{
    V out(g.dim(), S(0));
    for (std::size_t i = 0; i < g.dim(); ++i) {
        if (zero(x[i])) continue;
        for (std::size_t j = 0; j < g.dim(); ++j) {
            if (zero(y[j])) continue;
            S c = x[i] * y[j];
            for (const auto& [k, v] : g.structure(i, j)) out[k] = out[k] + c * v;
        }
    }
    return out;
}

inline V unit(std::size_t n, std::size_t i)
{
    V v(n, S(0));
    v[i] = S(1);
    return v;
}

inline Mat<S> killing(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    // ad_i as dense matrices: (ad_i)_{k j} = c_{ij}^k
    std::vector<Mat<S>> ad(n, Mat<S>(n, std::vector<S>(n, S(0))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [k, v] : g.structure(i, j)) ad[i][k][j] = v;
    Mat<S> b(n, std::vector<S>(n, S(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            S t(0);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (!zero(ad[i][k][l]) && !zero(ad[j][l][k])) t = t + ad[i][k][l] * ad[j][l][k];
            b[i][j] = t;
            b[j][i] = t;
        }
    return b;
}

inline S form(const Mat<S>& b, const V& x, const V& y)
{
    S t(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (zero(x[i])) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (!zero(y[j]) && !zero(b[i][j])) t = t + x[i] * b[i][j] * y[j];
    }
    return t;
}

// Signs of the leading principal minors by elimination without pivoting.
inline bool negative_definite(Mat<S> b)
{
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (b[k][k].sign() >= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (zero(b[i][k])) continue;
            S f = b[i][k] / b[k][k];
            for (std::size_t j = k; j < n; ++j) b[i][j] = b[i][j] - f * b[k][j];
        }
    }
    return true;
}

inline Mat<S> columns(const std::vector<V>& vs)
{
    const std::size_t n = vs.empty() ? 0 : vs[0].size();
    Mat<S> m(n, std::vector<S>(vs.size(), S(0)));
    for (std::size_t j = 0; j < vs.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m[i][j] = vs[j][i];
    return m;
}

inline std::optional<V> coords(const std::vector<V>& basis, const V& v)
{
    if (basis.empty()) {
        for (const auto& x : v)
            if (!zero(x)) return std::nullopt;
        return V{};
    }
    return solve(columns(basis), v);
}

inline bool in_span(const std::vector<V>& basis, const V& v) { return coords(basis, v).has_value(); }

inline std::size_t span_dim(const std::vector<V>& vs)
{
    if (vs.empty()) return 0;
    return rank(columns(vs));
}

// B-orthogonal complement of span(sub) in g.
inline std::vector<V> complement(const Mat<S>& b, const std::vector<V>& sub)
{
    const std::size_t n = b.size();
    Mat<S> rows;
    for (const auto& s : sub) {
        V r(n, S(0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (!zero(s[i])) r[j] = r[j] + s[i] * b[i][j];
        rows.push_back(r);
    }
    if (rows.empty()) {
        std::vector<V> all;
        for (std::size_t i = 0; i < n; ++i) all.push_back(unit(n, i));
        return all;
    }
    return nullspace(rows, n);
}

// Matrices of ad_z restricted to span(u); nullopt if some ad_z escapes.
inline std::optional<std::vector<Mat<S>>> restricted(const LieAlgebra& g, const std::vector<V>& k, const std::vector<V>& u)
{
    std::vector<Mat<S>> out;
    for (const auto& z : k) {
        Mat<S> m(u.size(), std::vector<S>(u.size(), S(0)));
        for (std::size_t j = 0; j < u.size(); ++j) {
            auto c = coords(u, bracket(g, z, u[j]));
            if (!c) return std::nullopt;
            for (std::size_t i = 0; i < u.size(); ++i) m[i][j] = (*c)[i];
        }
        out.push_back(m);
    }
    return out;
}

// dim { T : U -> V | T a_z = b_z T }
inline std::size_t hom_dim(const LieAlgebra& g, const std::vector<V>& k, const std::vector<V>& u, const std::vector<V>& v)
{
    auto a = restricted(g, k, u);
    auto b = restricted(g, k, v);
    if (!a || !b) throw std::runtime_error("oracle::hom_dim: subspace not invariant");
    const std::size_t du = u.size(), dv = v.size();
    RowSpace<S> rs(du * dv);
    for (std::size_t z = 0; z < k.size(); ++z)
        for (std::size_t r = 0; r < dv; ++r)
            for (std::size_t c = 0; c < du; ++c) {
                std::map<std::size_t, S> row;
                for (std::size_t t = 0; t < du; ++t)
                    if (!zero((*a)[z][t][c])) row[r * du + t] = row[r * du + t] + (*a)[z][t][c];
                for (std::size_t t = 0; t < dv; ++t)
                    if (!zero((*b)[z][r][t])) row[t * du + c] = row[t * du + c] - (*b)[z][r][t];
                rs.add(std::move(row));
            }
    return rs.nullity();
}

// dim of the (-B)-symmetric endomorphisms commuting with ad_k.
inline std::size_t equivariant_dim(const LieAlgebra& g, const std::vector<V>& k)
{
    const std::size_t n = g.dim();
    const Mat<S> b = killing(g);
    RowSpace<S> rs(n * n);
    auto var = [n](std::size_t r, std::size_t c) { return r * n + c; };
    for (const auto& z : k) {
        Mat<S> a(n, std::vector<S>(n, S(0)));
        for (std::size_t j = 0; j < n; ++j) {
            V col = bracket(g, z, unit(n, j));
            for (std::size_t i = 0; i < n; ++i) a[i][j] = col[i];
        }
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                std::map<std::size_t, S> row;
                for (std::size_t t = 0; t < n; ++t) {
                    if (!zero(a[t][c])) row[var(r, t)] = row[var(r, t)] + a[t][c];
                    if (!zero(a[r][t])) row[var(t, c)] = row[var(t, c)] - a[r][t];
                }
                rs.add(std::move(row));
            }
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c) {
            std::map<std::size_t, S> row;
            for (std::size_t t = 0; t < n; ++t) {
                if (!zero(b[r][t])) row[var(t, c)] = row[var(t, c)] + b[r][t];
                if (!zero(b[c][t])) row[var(t, r)] = row[var(t, r)] - b[c][t];
            }
            rs.add(std::move(row));
        }
    return rs.nullity();
}

// B-orthogonal projection onto span(u).
inline V project(const Mat<S>& b, const std::vector<V>& u, const V& x)
{
    const std::size_t d = u.size();
    if (d == 0) return V(x.size(), S(0));
    Mat<S> gram(d, std::vector<S>(d, S(0)));
    V rhs(d, S(0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) gram[i][j] = form(b, u[i], u[j]);
        rhs[i] = form(b, u[i], x);
    }
    auto c = solve(gram, rhs);
    V out(x.size(), S(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t t = 0; t < x.size(); ++t) out[t] = out[t] + (*c)[i] * u[i][t];
    return out;
}

inline bool is_zero_vec(const V& v)
{
    for (const auto& x : v)
        if (!zero(x)) return false;
    return true;
}

inline V add(const V& a, const V& b)
{
    V o(a.size(), S(0));
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = a[i] + b[i];
    return o;
}

inline V scale(const S& s, const V& a)
{
    V o(a.size(), S(0));
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = s * a[i];
    return o;
}

// {X : B([X, h_j], u) = 0 for all j, u in h^perp}
inline std::size_t normalizer_dim(const LieAlgebra& g, const Mat<S>& b, const std::vector<V>& h)
{
    const std::size_t n = g.dim();
    auto m = complement(b, h);
    Mat<S> rows;
    for (const auto& hj : h)
        for (const auto& u : m) {
            V row(n, S(0));
            for (std::size_t i = 0; i < n; ++i) row[i] = form(b, bracket(g, unit(n, i), hj), u);
            rows.push_back(row);
        }
    if (rows.empty()) return n;
    return n - rank(rows);
}

inline std::size_t centralizer_dim(const LieAlgebra& g, const std::vector<V>& h)
{
    const std::size_t n = g.dim();
    Mat<S> rows;
    for (const auto& hj : h) {
        std::vector<V> cols;
        for (std::size_t i = 0; i < n; ++i) cols.push_back(bracket(g, unit(n, i), hj));
        auto m = columns(cols);
        rows.insert(rows.end(), m.begin(), m.end());
    }
    return n - rank(rows);
}

// self-adjoint part of the commutant of k on span(u)
inline std::size_t symmetric_commutant_dim(const LieAlgebra& g, const Mat<S>& b, const std::vector<V>& k,
                                           const std::vector<V>& u)
{
    auto a = restricted(g, k, u);
    if (!a) throw std::runtime_error("not invariant");
    const std::size_t d = u.size();
    Mat<S> gram(d, std::vector<S>(d, S(0)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) gram[i][j] = form(b, u[i], u[j]);
    RowSpace<S> rs(d * d);
    for (const auto& az : *a)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                std::map<std::size_t, S> row;
                for (std::size_t t = 0; t < d; ++t) {
                    if (!zero(az[t][c])) row[r * d + t] = row[r * d + t] + az[t][c];
                    if (!zero(az[r][t])) row[t * d + c] = row[t * d + c] - az[r][t];
                }
                rs.add(std::move(row));
            }
    // gram * T symmetric
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = r + 1; c < d; ++c) {
            std::map<std::size_t, S> row;
            for (std::size_t t = 0; t < d; ++t) {
                if (!zero(gram[r][t])) row[t * d + c] = row[t * d + c] + gram[r][t];
                if (!zero(gram[c][t])) row[t * d + r] = row[t * d + r] - gram[c][t];
            }
            rs.add(std::move(row));
        }
    return rs.nullity();
}

} // namespace oracle
