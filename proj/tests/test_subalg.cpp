#include "golie/driver.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace golie;

namespace {

const LieAlgebra& g2()
{
    static LieAlgebra g = compact_form("G2");
    return g;
}

Basis<Scalar> entry(const std::string& name)
{
    static Catalog c = load_catalog();
    return evaluate_recipes(g2(), c.find(name, "G2").basis, g2().field());
}

Subalgebra sub(const std::string& name) { return *span_closure_check(g2(), entry(name)).subalgebra; }

const std::vector<std::string> names{"cartan", "su2-long", "su2-short", "su2su2", "u2-long", "u2-short", "su3", "h1", "h2"};

} // namespace

TEST(Closure, CatalogEntriesClose)
{
    for (const auto& n : names) EXPECT_TRUE(span_closure_check(g2(), entry(n)).closed()) << n;
}

TEST(Closure, WitnessForOpenSpan)
{
    auto g = g2();
    auto r = span_closure_check(g, evaluate_recipes(g, {"F[a]", "F[b]"}, g.field()));
    ASSERT_FALSE(r.closed());
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_FALSE(is_zero_vec(r.witness->escaping));
    // the escaping part is B-orthogonal to the span
    for (const auto& v : evaluate_recipes(g, {"F[a]", "F[b]"}, g.field())) EXPECT_EQ(g.killing(v, r.witness->escaping), Scalar(0));
}

TEST(Normalizer, MatchesOracle)
{
    auto b = oracle::killing(g2());
    for (const auto& n : names) {
        auto h = sub(n);
        auto k = normalizer(h);
        EXPECT_EQ(k.dim(), oracle::normalizer_dim(g2(), b, h.basis())) << n;
        EXPECT_TRUE(contains_all(k.basis(), h.basis())) << n;
        // k normalizes h
        for (const auto& x : k.basis())
            for (const auto& y : h.basis()) EXPECT_TRUE(in_span(h.basis(), g2().bracket(x, y))) << n;
    }
}

TEST(Normalizer, SelfNormalizingEntries)
{
    for (const std::string n : {"cartan", "su2su2", "su3", "h1", "h2"}) EXPECT_EQ(normalizer(sub(n)).dim(), sub(n).dim()) << n;
    EXPECT_EQ(normalizer(sub("su2-long")).dim(), 6u);
    EXPECT_EQ(normalizer(sub("su2-short")).dim(), 6u);
}

TEST(Centralizer, MatchesOracle)
{
    for (const auto& n : names) {
        auto h = sub(n);
        EXPECT_EQ(centralizer(h).dim(), oracle::centralizer_dim(g2(), h.basis())) << n;
    }
    EXPECT_EQ(centralizer(sub("h1")).dim(), 0u);
    EXPECT_EQ(centralizer(sub("h2")).dim(), 0u);
    EXPECT_EQ(centralizer(sub("cartan")).dim(), 2u);
}

TEST(Rank, CertifiedValues)
{
    std::mt19937_64 rng(4);
    const std::map<std::string, std::size_t> expected{{"cartan", 2}, {"su2-long", 1}, {"su2su2", 2}, {"u2-short", 2},
                                                      {"su3", 2},    {"h1", 1},       {"h2", 1}};
    for (const auto& [n, r] : expected) {
        auto res = rank(sub(n), rng);
        ASSERT_EQ(res.status, CertStatus::certified) << n;
        EXPECT_EQ(res.rank, r) << n;
        EXPECT_TRUE(is_abelian(g2(), res.cartan)) << n;
        // self-centralizing inside h
        EXPECT_EQ(centralizer_within(g2(), res.cartan, sub(n).basis()).size(), res.cartan.size()) << n;
    }
}

TEST(Regularity, Table)
{
    std::mt19937_64 rng(5);
    for (const auto& n : names) {
        auto r = is_regular(sub(n), rng);
        ASSERT_EQ(r.status, CertStatus::certified) << n;
        const bool expect = n != "h1" && n != "h2";
        EXPECT_EQ(r.regular, expect) << n;
        EXPECT_EQ(r.ambient_rank, 2u);
    }
}

TEST(Ideals, Decompositions)
{
    std::mt19937_64 rng(6);
    auto d = ideal_decomposition(sub("su2su2"), rng);
    EXPECT_TRUE(d.certified);
    EXPECT_EQ(d.center.size(), 0u);
    ASSERT_EQ(d.ideals.size(), 2u);
    EXPECT_EQ(d.ideals[0].size() + d.ideals[1].size(), 6u);
    EXPECT_TRUE(verify_ideal_decomposition(sub("su2su2"), d));

    auto u = ideal_decomposition(sub("u2-long"), rng);
    EXPECT_TRUE(u.certified);
    EXPECT_EQ(u.center.size(), 1u);
    ASSERT_EQ(u.ideals.size(), 1u);
    EXPECT_EQ(u.ideals[0].size(), 3u);

    auto t = ideal_decomposition(sub("cartan"), rng);
    EXPECT_EQ(t.center.size(), 2u);
    EXPECT_TRUE(t.ideals.empty());

    auto s = ideal_decomposition(sub("su3"), rng);
    ASSERT_EQ(s.ideals.size(), 1u);
    EXPECT_EQ(s.ideals[0].size(), 8u);
}

TEST(WeakRegularity, MatchesOracle)
{
    auto b = oracle::killing(g2());
    for (const auto& n : names) {
        auto h = sub(n);
        auto k = normalizer(h);
        auto m = oracle::complement(b, k.basis());
        auto w = weak_regularity(h);
        EXPECT_EQ(w.k_dim + w.m_dim, 14u) << n;
        EXPECT_EQ(w.hom_k_to_m, oracle::hom_dim(g2(), k.basis(), k.basis(), m)) << n;
        EXPECT_EQ(w.hom_m_to_k, oracle::hom_dim(g2(), k.basis(), m, k.basis())) << n;
        EXPECT_EQ(w.weakly_regular, w.hom_k_to_m == 0 && w.hom_m_to_k == 0) << n;
    }
    // m of h1 contains two copies of the adjoint representation of h1
    EXPECT_EQ(weak_regularity(sub("h1")).hom_k_to_m, 2u);
    EXPECT_TRUE(weak_regularity(sub("h2")).weakly_regular);
}
