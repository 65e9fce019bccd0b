#include "golie/driver.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace golie;

namespace {

const ScalarField* std_field() { return ScalarField::standard(); }

Scalar r2() { return Scalar::sqrt_of(std_field(), 2); }
Scalar r3() { return Scalar::sqrt_of(std_field(), 3); }
Scalar r5() { return Scalar::sqrt_of(std_field(), 5); }

oracle::Mat<Scalar> to_oracle(const ExactMatrix& m)
{
    oracle::Mat<Scalar> o(m.rows(), std::vector<Scalar>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) o[i][j] = m(i, j);
    return o;
}

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t rank_bound, bool radicals)
{
    std::uniform_int_distribution<int> d(-3, 3);
    auto entry = [&] {
        Scalar s(d(rng));
        if (radicals && d(rng) > 1) s += r2() * Scalar(d(rng));
        if (radicals && d(rng) > 1) s += r5() * Scalar(d(rng));
        return s;
    };
    ExactMatrix l(r, rank_bound), rr(rank_bound, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < rank_bound; ++j) l(i, j) = entry();
    for (std::size_t i = 0; i < rank_bound; ++i)
        for (std::size_t j = 0; j < c; ++j) rr(i, j) = entry();
    return l * rr;
}

} // namespace

TEST(Field, SquareRootsMultiply)
{
    EXPECT_EQ(r2() * r2(), Scalar(2));
    EXPECT_EQ(r2() * r3() * r5() * r2() * r3() * r5(), Scalar(30));
    EXPECT_EQ(Scalar::sqrt_of(std_field(), 8), Scalar(2) * r2());
    EXPECT_EQ(Scalar::sqrt_of(std_field(), 12), Scalar(2) * r3());
    EXPECT_EQ(Scalar::sqrt_of(std_field(), 30), r2() * r3() * r5());
}

TEST(Field, InverseOfMixedElement)
{
    Scalar x = Scalar(1) + r2() + r3() * r5() + Scalar(Rational(2, 7)) * r2() * r3();
    EXPECT_EQ(x * x.inverse(), Scalar(1));
    EXPECT_EQ((Scalar(3) - r5()) / (Scalar(3) - r5()), Scalar(1));
    EXPECT_THROW(Scalar(0).inverse(), std::exception);
}

TEST(Field, SignAgreesWithDouble)
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int t = 0; t < 200; ++t) {
        Scalar x = Scalar(d(rng)) + Scalar(d(rng)) * r2() + Scalar(d(rng)) * r3() + Scalar(d(rng)) * r2() * r5();
        const double v = x.to_double();
        if (std::abs(v) < 1e-9) continue;
        EXPECT_EQ(x.sign(), v > 0 ? 1 : -1) << x.to_string();
    }
    // 99 - 70 sqrt2 is tiny and positive
    EXPECT_EQ((Scalar(99) - Scalar(70) * r2()).sign(), 1);
    EXPECT_EQ((Scalar(70) * r2() - Scalar(99)).sign(), -1);
}

TEST(Field, RootOutsideFieldIsAnError)
{
    EXPECT_THROW(Scalar::sqrt_of(std_field(), 7), FieldError);
    EXPECT_THROW(Scalar::sqrt_of(ScalarField::rationals(), 2), FieldError);
    EXPECT_EQ(Scalar::sqrt_of(ScalarField::rationals(), 9), Scalar(3));
    EXPECT_THROW(ScalarField::create({4}), FieldError);
    EXPECT_THROW(ScalarField::create({2, 2}), FieldError);
}

TEST(Field, ParseRoundTrip)
{
    std::vector<Scalar> xs{Scalar(0), Scalar(Rational(-3, 4)), r2(), Scalar(Rational(1, 3)) - r3() * r5(),
                           Scalar(5) + r2() * r3() * r5()};
    for (const auto& x : xs) EXPECT_EQ(parse_scalar(x.to_string(), std_field()), x) << x.to_string();
    EXPECT_THROW(parse_scalar("1+", std_field()), ParseError);
    EXPECT_THROW(parse_scalar("2*sqrt(x)", std_field()), ParseError);
    EXPECT_THROW(parse_scalar("2*sqrt(7)", std_field()), FieldError);
}

TEST(Linalg, RankMatchesOracle)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6, k = 1 + rng() % std::min(r, c);
        auto m = random_matrix(rng, r, c, k, t % 2 == 0);
        EXPECT_EQ(golie::rank(m), oracle::rank(to_oracle(m)));
    }
}

TEST(Linalg, NullspaceIsKernel)
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 40; ++t) {
        const std::size_t r = 1 + rng() % 5, c = 2 + rng() % 5, k = 1 + rng() % std::min(r, c);
        auto m = random_matrix(rng, r, c, k, t % 2 == 1);
        auto rn = rank_nullspace(m);
        EXPECT_EQ(rn.nullspace.size(), c - rn.rank);
        EXPECT_EQ(rn.nullspace.size(), oracle::nullspace(to_oracle(m), c).size());
        for (const auto& v : rn.nullspace) EXPECT_TRUE(is_zero_vec(m * v));
        EXPECT_EQ(span_dimension(rn.nullspace, c), rn.nullspace.size());
    }
}

TEST(Linalg, SolveOrCertifyInconsistency)
{
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 60; ++t) {
        const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6, k = 1 + rng() % std::min(r, c);
        auto m = random_matrix(rng, r, c, k, t % 3 == 0);
        ScalarVec b(r);
        for (auto& e : b) e = Scalar(d(rng));
        auto res = golie::solve(m, b);
        auto orc = oracle::solve(to_oracle(m), b);
        ASSERT_EQ(res.solution.has_value(), orc.has_value());
        if (res.solution) {
            EXPECT_EQ(m * *res.solution, b);
            EXPECT_EQ(res.rank_matrix, res.rank_augmented);
        } else {
            EXPECT_LT(res.rank_matrix, res.rank_augmented);
        }
    }
}

TEST(Linalg, CharPolyIsAnnihilating)
{
    std::mt19937_64 rng(14);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + rng() % 5;
        auto m = random_matrix(rng, n, n, n, t % 2 == 0);
        auto p = char_poly(m);
        ASSERT_EQ(degree(p), n);
        EXPECT_TRUE(evaluate(p, m) == ExactMatrix(n, n));
    }
}

TEST(Linalg, MinPolyOfJordanForm)
{
    // diag(2, 2, J_2(3)) has minimal polynomial (x-2)(x-3)^2
    ExactMatrix m(4, 4);
    m(0, 0) = Scalar(2);
    m(1, 1) = Scalar(2);
    m(2, 2) = Scalar(3);
    m(3, 3) = Scalar(3);
    m(2, 3) = Scalar(1);
    auto p = min_poly(m);
    ASSERT_EQ(degree(p), 3u);
    EXPECT_EQ(evaluate(p, Scalar(2)), Scalar(0));
    EXPECT_EQ(evaluate(p, Scalar(3)), Scalar(0));
    EXPECT_EQ(oracle::min_poly_degree(to_oracle(m)), 3u);
    // x^2 - 2, irreducible over Q
    ExactMatrix s(2, 2);
    s(0, 1) = Scalar(1);
    s(1, 0) = Scalar(2);
    auto q = min_poly(s);
    ASSERT_EQ(degree(q), 2u);
    EXPECT_EQ(evaluate(q, r2()), Scalar(0));
}

TEST(Linalg, SparseEliminatorMatchesDense)
{
    std::mt19937_64 rng(15);
    for (int t = 0; t < 30; ++t) {
        const std::size_t r = 2 + rng() % 8, c = 2 + rng() % 8, k = 1 + rng() % std::min(r, c);
        auto m = random_matrix(rng, r, c, k, t % 2 == 0);
        SparseEliminator<Scalar> e(c);
        for (std::size_t i = 0; i < r; ++i) {
            ScalarVec row(c);
            for (std::size_t j = 0; j < c; ++j) row[j] = m(i, j);
            e.add_dense(row);
        }
        EXPECT_EQ(e.rank(), golie::rank(m));
        auto ns = e.nullspace();
        EXPECT_EQ(ns.size(), c - e.rank());
        for (const auto& v : ns) EXPECT_TRUE(is_zero_vec(m * v));
    }
}

TEST(Linalg, DefinitenessBySylvester)
{
    ExactMatrix g(2, 2);
    g(0, 0) = Scalar(2);
    g(1, 1) = Scalar(1);
    g(0, 1) = g(1, 0) = r2() - Scalar(Rational(1, 100));
    EXPECT_TRUE(is_definite(g, 1));
    g(0, 1) = g(1, 0) = r2();
    EXPECT_FALSE(is_definite(g, 1));
}
