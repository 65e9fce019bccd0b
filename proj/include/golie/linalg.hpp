#pragma once

// Exact linear algebra: fraction-free (Bareiss) elimination for dense
// matrices, an incremental sparse eliminator for the large structured systems
// (equivariance, commutants), and characteristic / minimal polynomials.

#include "golie/matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

namespace golie {

template <class F>
struct Echelon {
    Matrix<F> form;                 // upper echelon form, rows beyond rank are zero
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

/// Bareiss elimination. Every row operation is
///   row_i <- (p * row_i - a_ic * row_r) / p_prev
/// which keeps entries equal to minors of the input, so no fraction growth
/// beyond the entries themselves.
template <class F>
Echelon<F> bareiss_echelon(Matrix<F> m)
{
    Echelon<F> out;
    const std::size_t rows = m.rows(), cols = m.cols();
    F prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && is_zero(m(p, c))) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
        const F piv = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const F a = m(i, c);
            const bool a_zero = is_zero(a);
            for (std::size_t j = c + 1; j < cols; ++j) {
                F v = piv * m(i, j);
                if (!a_zero && !is_zero(m(r, j))) v -= a * m(r, j);
                m(i, j) = is_zero(v) ? F(0) : v / prev;
            }
            m(i, c) = F(0);
        }
        // rows above r are untouched; scale is tracked through prev
        prev = piv;
        out.pivots.push_back(c);
        ++r;
    }
    out.form = std::move(m);
    return out;
}

template <class F>
struct RankNullspace {
    std::size_t rank = 0;
    std::vector<Vec<F>> nullspace;
};

template <class F>
std::vector<Vec<F>> nullspace_from_echelon(const Echelon<F>& e, std::size_t cols)
{
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec<F>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec<F> x(cols, F(0));
        x[f] = F(1);
        for (std::size_t k = e.pivots.size(); k-- > 0;) {
            const std::size_t c = e.pivots[k];
            F s(0);
            for (std::size_t j = c + 1; j < cols; ++j)
                if (!is_zero(x[j]) && !is_zero(e.form(k, j))) s += e.form(k, j) * x[j];
            x[c] = is_zero(s) ? F(0) : -(s / e.form(k, c));
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Exact rank and a nullspace basis of m.
template <class F>
RankNullspace<F> rank_nullspace(const Matrix<F>& m)
{
    auto e = bareiss_echelon(m);
    RankNullspace<F> out;
    out.rank = e.pivots.size();
    out.nullspace = nullspace_from_echelon(e, m.cols());
    return out;
}

template <class F>
std::size_t rank(const Matrix<F>& m)
{
    return bareiss_echelon(m).pivots.size();
}

template <class F>
struct SolveResult {
    std::optional<Vec<F>> solution;
    std::size_t rank_matrix = 0;    // rank(M)
    std::size_t rank_augmented = 0; // rank(M | b); exceeds rank_matrix iff inconsistent
};

/// Some solution of m v = b, or an inconsistency certificate
/// rank(M) < rank(M | b).
template <class F>
SolveResult<F> solve(const Matrix<F>& m, const Vec<F>& b)
{
    if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t n = m.cols();
    Matrix<F> aug(m.rows(), n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n) = b[i];
    }
    auto e = bareiss_echelon(std::move(aug));
    SolveResult<F> out;
    out.rank_augmented = e.pivots.size();
    out.rank_matrix = out.rank_augmented;
    if (!e.pivots.empty() && e.pivots.back() == n) {
        out.rank_matrix -= 1;
        return out;
    }
    Vec<F> x(n, F(0));
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
        const std::size_t c = e.pivots[k];
        F s = e.form(k, n);
        for (std::size_t j = c + 1; j < n; ++j)
            if (!is_zero(x[j]) && !is_zero(e.form(k, j))) s -= e.form(k, j) * x[j];
        x[c] = is_zero(s) ? F(0) : s / e.form(k, c);
    }
    out.solution = std::move(x);
    return out;
}

/// Incremental row-echelon eliminator over sparse rows. Pivot rows are stored
/// normalized (leading coefficient 1). Used for systems with hundreds of
/// unknowns and thousands of very sparse equations.
template <class F>
class SparseEliminator {
public:
    using Row = std::vector<std::pair<std::size_t, F>>;

    explicit SparseEliminator(std::size_t cols) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return pivots_.size(); }

    /// Adds an equation (entries need not be sorted; duplicates are summed).
    /// Returns true when it was independent of the rows seen so far.
    bool add_row(Row row)
    {
        row = canonical(std::move(row));
        reduce(row);
        if (row.empty()) return false;
        const F lead = row.front().second;
        if (lead != F(1)) {
            const F inv = F(1) / lead;
            for (auto& [c, v] : row) v = v * inv;
        }
        const std::size_t key = row.front().first;
        pivots_.emplace(key, std::move(row));
        return true;
    }

    bool add_dense(const Vec<F>& v)
    {
        Row row;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!is_zero(v[i])) row.emplace_back(i, v[i]);
        return add_row(std::move(row));
    }

    /// True when the row is in the span of the rows added so far.
    bool in_row_space(Row row) const
    {
        row = canonical(std::move(row));
        reduce(row);
        return row.empty();
    }

    std::vector<Vec<F>> nullspace() const
    {
        std::vector<Vec<F>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (pivots_.count(f)) continue;
            Vec<F> x(cols_, F(0));
            x[f] = F(1);
            for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
                F s(0);
                for (std::size_t k = 1; k < it->second.size(); ++k) {
                    const auto& [c, v] = it->second[k];
                    if (!is_zero(x[c])) s += v * x[c];
                }
                x[it->first] = -s;
            }
            basis.push_back(std::move(x));
        }
        return basis;
    }

private:
    static Row canonical(Row row)
    {
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Row out;
        out.reserve(row.size());
        for (auto& e : row) {
            if (!out.empty() && out.back().first == e.first)
                out.back().second += e.second;
            else
                out.push_back(std::move(e));
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return is_zero(e.second); }),
                  out.end());
        return out;
    }

    void reduce(Row& row) const
    {
        // Eliminate every entry that sits on a pivot column, left to right.
        std::size_t pos = 0;
        while (pos < row.size()) {
            auto it = pivots_.find(row[pos].first);
            if (it == pivots_.end()) {
                ++pos;
                continue;
            }
            const F factor = row[pos].second;
            row = axpy(row, it->second, factor);
            // entries before pos are unchanged because the pivot row starts at row[pos].first
        }
    }

    // row - factor * piv
    static Row axpy(const Row& row, const Row& piv, const F& factor)
    {
        Row out;
        out.reserve(row.size() + piv.size());
        auto a = row.begin();
        auto b = piv.begin();
        while (a != row.end() || b != piv.end()) {
            if (b == piv.end() || (a != row.end() && a->first < b->first)) {
                out.push_back(*a++);
            } else if (a == row.end() || b->first < a->first) {
                out.emplace_back(b->first, -(factor * b->second));
                ++b;
            } else {
                F v = a->second - factor * b->second;
                if (!is_zero(v)) out.emplace_back(a->first, std::move(v));
                ++a;
                ++b;
            }
        }
        return out;
    }

    std::size_t cols_;
    std::map<std::size_t, Row> pivots_;
};

/// Polynomial with coefficients in ascending degree order.
template <class F>
using Poly = std::vector<F>;

template <class F>
std::size_t degree(const Poly<F>& p)
{
    std::size_t d = p.size();
    while (d > 0 && is_zero(p[d - 1])) --d;
    return d == 0 ? 0 : d - 1;
}

/// p(M) by Horner's rule.
template <class F>
Matrix<F> evaluate(const Poly<F>& p, const Matrix<F>& m)
{
    const std::size_t n = m.rows();
    Matrix<F> acc(n, n);
    for (std::size_t k = p.size(); k-- > 0;) {
        acc = acc * m;
        if (!is_zero(p[k]))
            for (std::size_t i = 0; i < n; ++i) acc(i, i) += p[k];
    }
    return acc;
}

template <class F>
F evaluate(const Poly<F>& p, const F& x)
{
    F acc(0);
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

/// Characteristic polynomial det(t I - M) by the Faddeev-LeVerrier recursion.
template <class F>
Poly<F> char_poly(const Matrix<F>& m)
{
    if (!m.square()) throw std::invalid_argument("char_poly: matrix not square");
    const std::size_t n = m.rows();
    Poly<F> c(n + 1, F(0));
    c[n] = F(1);
    Matrix<F> mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
        F t = (m * mk).trace();
        c[n - k] = -(t / F(static_cast<long>(k)));
    }
    return c;
}

/// Monic minimal polynomial: the first power of M that is a linear
/// combination of the lower powers.
template <class F>
Poly<F> min_poly(const Matrix<F>& m)
{
    if (!m.square()) throw std::invalid_argument("min_poly: matrix not square");
    const std::size_t n = m.rows();
    std::vector<Vec<F>> powers;
    Matrix<F> p = Matrix<F>::identity(n);
    for (std::size_t d = 0; d <= n; ++d) {
        Vec<F> flat;
        flat.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) flat.push_back(p(i, j));
        if (d > 0) {
            auto sys = Matrix<F>::from_columns(powers, n * n);
            auto res = solve(sys, flat);
            if (res.solution) {
                Poly<F> out(d + 1, F(0));
                for (std::size_t k = 0; k < d; ++k) out[k] = -(*res.solution)[k];
                out[d] = F(1);
                return out;
            }
        }
        powers.push_back(std::move(flat));
        p = p * m;
    }
    throw std::logic_error("min_poly: no annihilating polynomial found");
}

} // namespace golie
