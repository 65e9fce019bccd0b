#include "golie/driver.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace golie;

TEST(Roots, CountsPerType)
{
    const std::map<std::string, std::size_t> expected{{"A1", 2},  {"A2", 6},  {"A3", 12}, {"B2", 8},
                                                      {"B3", 18}, {"C3", 18}, {"D4", 24}, {"G2", 12}};
    for (const auto& [type, n] : expected) {
        auto rs = root_system(type);
        EXPECT_EQ(rs.roots().size(), n) << type;
        EXPECT_EQ(rs.positive_roots().size(), n / 2) << type;
    }
    EXPECT_THROW(root_system("G3"), RootSystemError);
    EXPECT_THROW(root_system("E6"), RootSystemError);
    EXPECT_THROW(root_system("A"), RootSystemError);
}

TEST(Roots, G2Labels)
{
    auto rs = root_system("G2");
    std::set<std::string> pos;
    for (const auto& r : rs.positive_roots()) pos.insert(rs.label(r));
    EXPECT_EQ(pos, (std::set<std::string>{"a", "b", "a+b", "2a+b", "3a+b", "3a+2b"}));
    EXPECT_EQ(rs.parse("3a+2b"), (RootVec{3, 2}));
    EXPECT_THROW(rs.parse("3a+"), RootSystemError);
}

TEST(Roots, ChevalleyConstantsAreStringLengths)
{
    for (const std::string type : {"A3", "B3", "C3", "D4", "G2"}) {
        auto rs = root_system(type);
        ChevalleyConstants n(rs);
        const auto& all = rs.roots();
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = 0; b < all.size(); ++b) {
                RootVec s = all[a];
                for (std::size_t i = 0; i < s.size(); ++i) s[i] += all[b][i];
                if (!rs.is_root(s)) continue;
                ++pairs;
                const long p = string_below(rs, all[a], all[b]);
                EXPECT_EQ(std::abs(n(a, b)), p + 1) << type;
                EXPECT_EQ(n(a, b), -n(b, a)) << type;
            }
        EXPECT_GT(pairs, 0u);
    }
}

TEST(Algebra, CompactFormsAreLieAlgebras)
{
    for (const std::string type : {"A2", "B2", "G2", "A3"}) {
        auto g = compact_form(type);
        EXPECT_FALSE(antisymmetry_violation(g).has_value()) << type;
        EXPECT_FALSE(jacobi_violation(g).has_value()) << type;
        EXPECT_FALSE(killing_invariance_violation(g).has_value()) << type;
        EXPECT_TRUE(killing_negative_definite(g)) << type;
    }
    auto sp = compact_classical("sp", 2);
    EXPECT_EQ(sp.dim(), 10u);
    EXPECT_FALSE(jacobi_violation(sp).has_value());
    EXPECT_TRUE(killing_negative_definite(sp));
    EXPECT_THROW(compact_classical("so", 3), AlgebraError);
    EXPECT_THROW(compact_classical("sp", 5), AlgebraError);
}

TEST(Algebra, G2JacobiByOracle)
{
    auto g = compact_form("G2");
    const std::size_t n = g.dim();
    ASSERT_EQ(n, 14u);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                auto e = [&](std::size_t t) { return oracle::unit(n, t); };
                auto v = oracle::add(oracle::add(oracle::bracket(g, e(i), oracle::bracket(g, e(j), e(k))),
                                                 oracle::bracket(g, e(j), oracle::bracket(g, e(k), e(i)))),
                                     oracle::bracket(g, e(k), oracle::bracket(g, e(i), e(j))));
                ASSERT_TRUE(oracle::is_zero_vec(v)) << i << "," << j << "," << k;
            }
}

TEST(Algebra, G2KillingValues)
{
    auto g = compact_form("G2");
    auto b = oracle::killing(g);
    auto at = [&](const std::string& x, const std::string& y) { return b[*g.label_index(x)][*g.label_index(y)]; };
    EXPECT_EQ(at("iH[a]", "iH[a]"), Scalar(-48));
    EXPECT_EQ(at("iH[b]", "iH[b]"), Scalar(-16));
    EXPECT_EQ(at("iH[a]", "iH[b]"), Scalar(24));
    for (const std::string r : {"a", "a+b", "2a+b"}) {
        EXPECT_EQ(at("F[" + r + "]", "F[" + r + "]"), Scalar(-48)) << r;
        EXPECT_EQ(at("G[" + r + "]", "G[" + r + "]"), Scalar(-48)) << r;
    }
    for (const std::string r : {"b", "3a+b", "3a+2b"}) EXPECT_EQ(at("F[" + r + "]", "F[" + r + "]"), Scalar(-16)) << r;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) EXPECT_EQ(b[i][j], g.killing()(i, j));
}

TEST(Algebra, CorootElements)
{
    auto g = compact_form("G2");
    EXPECT_EQ(g.coroot_element({1, 0}), g.basis_vector(*g.label_index("iH[a]")));
    // [iH_r, F_r] = 2 G_r for every root
    for (const auto& r : g.root_system()->positive_roots()) {
        const std::string l = g.root_system()->label(r);
        auto f = g.basis_vector(*g.label_index("F[" + l + "]"));
        auto gg = g.basis_vector(*g.label_index("G[" + l + "]"));
        auto x = g.bracket(g.coroot_element(r), f);
        EXPECT_TRUE(x == scaled(Scalar(2), gg) || x == scaled(Scalar(-2), gg)) << l;
    }
}

TEST(Serialize, AlgebraRoundTrip)
{
    for (const auto& g : {compact_form("G2"), compact_classical("sp", 2)}) {
        json j = algebra_to_json(g);
        auto back = algebra_from_json(json::parse(j.dump()));
        ASSERT_EQ(back.dim(), g.dim());
        EXPECT_EQ(back.labels(), g.labels());
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t k = 0; k < g.dim(); ++k) EXPECT_EQ(back.structure(i, k), g.structure(i, k));
    }
}

TEST(Serialize, MatrixAndVectorRoundTrip)
{
    auto f = ScalarField::standard();
    ExactMatrix m(2, 3);
    m(0, 1) = Scalar::sqrt_of(f, 6, Rational(-2, 3));
    m(1, 2) = Scalar(Rational(5, 4)) + Scalar::sqrt_of(f, 5);
    EXPECT_EQ(matrix_from_json(json::parse(matrix_to_json(m).dump()), f), m);
    ScalarVec v{Scalar(0), Scalar::sqrt_of(f, 30), Scalar(-7)};
    EXPECT_EQ(vec_from_json(vec_to_json(v), f), v);
}

TEST(Recipes, ParseAndErrors)
{
    auto g = compact_form("G2");
    auto f = g.field();
    auto v = parse_recipe(g, "sqrt(2)*(F[3a+2b]-F[b])", f);
    EXPECT_EQ(v[*g.label_index("F[3a+2b]")], Scalar::sqrt_of(f, 2));
    EXPECT_EQ(v[*g.label_index("F[b]")], -Scalar::sqrt_of(f, 2));
    EXPECT_EQ(parse_recipe(g, "2*iH[3a+b]", f), scaled(Scalar(2), g.coroot_element({3, 1})));
    EXPECT_THROW(parse_recipe(g, "F[c]", f), RecipeError);
    EXPECT_THROW(parse_recipe(g, "F[a", f), RecipeError);
    EXPECT_THROW(parse_recipe(g, "2*", f), RecipeError);
    EXPECT_THROW(parse_recipe(g, "sqrt(7)*F[a]", f), FieldError);
    EXPECT_THROW(parse_recipe(g, "sqrt(2)*F[a]", ScalarField::rationals()), FieldError);
}

TEST(Recipes, CatalogEntriesEvaluate)
{
    auto g = compact_form("G2");
    auto cat = load_catalog();
    const std::map<std::string, std::size_t> dims{{"cartan", 2}, {"su2-long", 3}, {"su2-short", 3}, {"su2su2", 6},
                                                  {"u2-long", 4}, {"u2-short", 4}, {"su3", 8},      {"h1", 3},
                                                  {"h2", 3}};
    for (const auto& [name, d] : dims) {
        auto b = evaluate_recipes(g, cat.find(name, "G2").basis, g.field());
        EXPECT_EQ(span_dimension(b, g.dim()), d) << name;
    }
    EXPECT_THROW(cat.find("nope", "G2"), RecipeError);
}
