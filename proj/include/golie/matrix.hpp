#pragma once

#include "golie/field.hpp"

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace golie {

template <class F>
using Vec = std::vector<F>;

/// Dense row-major matrix over an exact field type (Scalar or Rational).
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    /// Matrix whose columns are the given vectors (all of length rows).
    static Matrix from_columns(const std::vector<Vec<F>>& cols, std::size_t rows)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    static Matrix from_rows(const std::vector<Vec<F>>& rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<F> row(std::size_t i) const { return Vec<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

    Vec<F> column(std::size_t j) const
    {
        Vec<F> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (!golie::is_zero(x)) return false;
        return true;
    }

    F trace() const
    {
        F t(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (golie::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const F& bkj = b(k, j);
                    if (golie::is_zero(bkj)) continue;
                    c(i, j) += aik * bkj;
                }
            }
        }
        return c;
    }

    friend Vec<F> operator*(const Matrix& a, const Vec<F>& v)
    {
        if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
        Vec<F> out(a.rows_, F(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (!golie::is_zero(a(i, j)) && !golie::is_zero(v[j])) out[i] += a(i, j) * v[j];
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend Matrix operator*(const F& s, Matrix a)
    {
        for (auto& x : a.data_)
            if (!golie::is_zero(x)) x = s * x;
        return a;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void check_same(const Matrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F> data_;
};

template <class F>
Vec<F> operator+(Vec<F> a, const Vec<F>& b)
{
    assert(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_zero(b[i])) a[i] += b[i];
    return a;
}

template <class F>
Vec<F> operator-(Vec<F> a, const Vec<F>& b)
{
    assert(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_zero(b[i])) a[i] -= b[i];
    return a;
}

template <class F>
Vec<F> scaled(const F& s, Vec<F> v)
{
    for (auto& x : v)
        if (!is_zero(x)) x = s * x;
    return v;
}

template <class F>
bool is_zero_vec(const Vec<F>& v)
{
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

template <class F>
F dot(const Vec<F>& a, const Vec<F>& b)
{
    F s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
    return s;
}

template <class F>
Vec<F> unit_vector(std::size_t n, std::size_t i)
{
    Vec<F> v(n, F(0));
    v[i] = F(1);
    return v;
}

using ExactMatrix = Matrix<Scalar>;
using ScalarVec = Vec<Scalar>;

} // namespace golie
