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

const Catalog& cat()
{
    static Catalog c = load_catalog();
    return c;
}

Basis<Scalar> entry(const std::string& name) { return evaluate_recipes(g2(), cat().find(name, "G2").basis, g2().field()); }

std::vector<std::size_t> sorted_dims(const InvariantDecomposition& d)
{
    std::vector<std::size_t> out;
    for (const auto& m : d.modules) out.push_back(m.carrier.size());
    std::sort(out.begin(), out.end());
    return out;
}

void check_against_oracle(const LieAlgebra& g, const Basis<Scalar>& k, const InvariantDecomposition& d)
{
    auto b = oracle::killing(g);
    Basis<Scalar> all;
    for (const auto& m : d.modules) {
        EXPECT_EQ(m.symmetric_commutant_dim, oracle::symmetric_commutant_dim(g, b, k, m.carrier));
        EXPECT_EQ(m.commutant_dim, oracle::hom_dim(g, k, m.carrier, m.carrier));
        EXPECT_TRUE(is_irreducible(m.cert));
        all.insert(all.end(), m.carrier.begin(), m.carrier.end());
    }
    EXPECT_EQ(oracle::span_dim(all), g.dim() - k.size());
    for (std::size_t i = 0; i < d.modules.size(); ++i)
        for (std::size_t j = 0; j < d.modules.size(); ++j) {
            const std::size_t h = oracle::hom_dim(g, k, d.modules[i].carrier, d.modules[j].carrier);
            EXPECT_EQ(h > 0, d.equivalence_class[i] == d.equivalence_class[j]) << i << "," << j;
        }
}

} // namespace

TEST(Decompose, H2ComplementIsIrreducible)
{
    std::mt19937_64 rng(1);
    auto k = entry("h2");
    auto d = decompose(g2(), k, killing_complement(g2(), k), rng);
    EXPECT_EQ(sorted_dims(d), (std::vector<std::size_t>{11}));
    check_against_oracle(g2(), k, d);
}

TEST(Decompose, H1ComplementSplitsFiveThreeThree)
{
    std::mt19937_64 rng(2);
    auto k = entry("h1");
    auto d = decompose(g2(), k, killing_complement(g2(), k), rng);
    EXPECT_EQ(sorted_dims(d), (std::vector<std::size_t>{3, 3, 5}));
    check_against_oracle(g2(), k, d);
    // the two 3-dim pieces are equivalent to each other and to h1 itself
    std::vector<Basis<Scalar>> threes;
    for (const auto& m : d.modules)
        if (m.carrier.size() == 3) threes.push_back(m.carrier);
    ASSERT_EQ(threes.size(), 2u);
    EXPECT_EQ(oracle::hom_dim(g2(), k, threes[0], threes[1]), 1u);
    EXPECT_EQ(oracle::hom_dim(g2(), k, k, threes[0]), 1u);
}

TEST(Decompose, CartanComplementIsSixRootPlanes)
{
    std::mt19937_64 rng(3);
    auto k = entry("cartan");
    auto d = decompose(g2(), k, killing_complement(g2(), k), rng);
    EXPECT_EQ(sorted_dims(d), (std::vector<std::size_t>(6, 2)));
    check_against_oracle(g2(), k, d);
    std::set<std::size_t> classes(d.equivalence_class.begin(), d.equivalence_class.end());
    EXPECT_EQ(classes.size(), 6u);
}

TEST(Decompose, SpBlocksGiveThreeFourDimModules)
{
    std::mt19937_64 rng(4);
    auto g = compact_classical("sp", 3);
    auto e = sp_block_entry({1, 1, 1});
    auto k = evaluate_recipes(g, e.basis, g.field());
    auto d = decompose(g, k, killing_complement(g, k), rng);
    EXPECT_EQ(sorted_dims(d), (std::vector<std::size_t>{4, 4, 4}));
    check_against_oracle(g, k, d);
}

TEST(VerifyDecomposition, ClaimedH1ModulesAreRejected)
{
    auto k = entry("h1");
    const auto& e = cat().find("h1", "G2");
    ASSERT_EQ(e.modules.size(), 2u);
    std::vector<Basis<Scalar>> claimed;
    for (const auto& [name, r] : e.modules) claimed.push_back(evaluate_recipes(g2(), r, g2().field()));
    auto chk = verify_decomposition(g2(), k, claimed, killing_complement(g2(), k));
    EXPECT_FALSE(chk.ok);
    ASSERT_EQ(chk.modules.size(), 2u);
    EXPECT_TRUE(is_irreducible(chk.modules[0].cert));
    EXPECT_EQ(chk.modules[1].cert, IrreducibilityCert::reducible);
    EXPECT_EQ(chk.modules[1].symmetric_commutant_dim, 3u);
}

TEST(VerifyDecomposition, H2ClaimAccepted)
{
    auto k = entry("h2");
    const auto& e = cat().find("h2", "G2");
    std::vector<Basis<Scalar>> claimed{evaluate_recipes(g2(), e.modules.at(0).second, g2().field())};
    auto chk = verify_decomposition(g2(), k, claimed, killing_complement(g2(), k));
    EXPECT_TRUE(chk.ok);
}

TEST(VerifyDecomposition, IncompleteSpanRejected)
{
    auto k = entry("cartan");
    auto a = evaluate_recipes(g2(), {"F[a]", "G[a]"}, g2().field());
    auto chk = verify_decomposition(g2(), k, {a}, killing_complement(g2(), k));
    EXPECT_FALSE(chk.ok);
    EXPECT_FALSE(chk.failures.empty());
}

TEST(HomSpace, DimensionsMatchOracle)
{
    auto k = entry("cartan");
    auto a = evaluate_recipes(g2(), {"F[a]", "G[a]"}, g2().field());
    auto b = evaluate_recipes(g2(), {"F[b]", "G[b]"}, g2().field());
    EXPECT_EQ(hom_space(g2(), k, a, a).size(), oracle::hom_dim(g2(), k, a, a));
    EXPECT_EQ(hom_space(g2(), k, a, a).size(), 2u); // complex type
    EXPECT_EQ(hom_space(g2(), k, a, b).size(), 0u);
    for (const auto& t : hom_space(g2(), k, a, a)) EXPECT_EQ(t.rows(), 2u);
    EXPECT_THROW(hom_space(g2(), k, evaluate_recipes(g2(), {"F[a]"}, g2().field()), a), std::invalid_argument);
}

TEST(Irreducibility, QuaternionicTypeCertified)
{
    // sp(1) acting on an off-diagonal block of sp(2): the 4-dim quaternionic module
    auto g = compact_classical("sp", 2);
    auto k = evaluate_recipes(g, sp_block_labels({1, 1})[0], g.field());
    auto m = evaluate_recipes(g, sp_offblock_labels({1, 1}, 0, 1), g.field());
    auto mod = certify_module(g, k, m);
    EXPECT_TRUE(is_irreducible(mod.cert));
    EXPECT_EQ(mod.commutant_dim, 4u);
    EXPECT_EQ(mod.symmetric_commutant_dim, 1u);
}
