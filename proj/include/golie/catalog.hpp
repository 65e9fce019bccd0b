#pragma once

// Named subalgebras given by basis recipes over the basis labels of an
// ambient algebra, e.g. "sqrt(2)*(F[3a+2b]-F[b])" or "14*iH[9a+5b]".

#include "golie/serialize.hpp"

namespace golie {

class RecipeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// Value of a recipe subexpression: a scalar or a vector of the algebra.
struct RecipeValue {
    bool is_vector = false;
    Scalar s;
    ScalarVec v;
};

class RecipeParser {
public:
    RecipeParser(const LieAlgebra& g, const ScalarField* field, std::string text)
        : g_(g), field_(field), text_(std::move(text))
    {
    }

    ScalarVec parse()
    {
        RecipeValue r = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        if (!r.is_vector) fail("recipe evaluates to a scalar, not an element");
        return r.v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw RecipeError("recipe '" + text_ + "' at position " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RecipeValue add(RecipeValue a, const RecipeValue& b, bool minus)
    {
        if (a.is_vector != b.is_vector) fail("cannot add a scalar and an element");
        if (a.is_vector) {
            a.v = minus ? a.v - b.v : a.v + b.v;
        } else {
            a.s = minus ? a.s - b.s : a.s + b.s;
        }
        return a;
    }

    RecipeValue mul(const RecipeValue& a, const RecipeValue& b)
    {
        if (a.is_vector && b.is_vector) fail("product of two elements");
        RecipeValue r;
        if (a.is_vector || b.is_vector) {
            r.is_vector = true;
            r.v = a.is_vector ? scaled(b.s, a.v) : scaled(a.s, b.v);
        } else {
            r.s = a.s * b.s;
        }
        return r;
    }

    RecipeValue expr()
    {
        RecipeValue acc = term();
        while (true) {
            if (eat('+')) {
                acc = add(acc, term(), false);
            } else if (eat('-')) {
                acc = add(acc, term(), true);
            } else {
                return acc;
            }
        }
    }

    RecipeValue term()
    {
        RecipeValue acc = unary();
        while (true) {
            if (eat('*')) {
                acc = mul(acc, unary());
            } else if (eat('/')) {
                RecipeValue d = unary();
                if (d.is_vector) fail("division by an element");
                if (is_zero(d.s)) fail("division by zero");
                RecipeValue inv;
                inv.s = d.s.inverse();
                acc = mul(acc, inv);
            } else {
                return acc;
            }
        }
    }

    RecipeValue unary()
    {
        if (eat('-')) {
            RecipeValue r = unary();
            RecipeValue m;
            m.s = Scalar(-1);
            return mul(m, r);
        }
        if (eat('+')) return unary();
        return primary();
    }

    RecipeValue primary()
    {
        skip();
        if (eat('(')) {
            RecipeValue r = expr();
            if (!eat(')')) fail("missing ')'");
            return r;
        }
        if (pos_ >= text_.size()) fail("unexpected end");
        if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            RecipeValue r;
            r.s = Scalar(Rational(Integer(text_.substr(start, pos_ - start))));
            return r;
        }
        if (!std::isalpha(static_cast<unsigned char>(text_[pos_]))) fail("unexpected character");
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string ident = text_.substr(start, pos_ - start);
        if (ident == "sqrt") {
            if (!eat('(')) fail("sqrt needs '('");
            skip();
            std::size_t s = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (s == pos_) fail("sqrt needs a positive integer");
            Integer n(text_.substr(s, pos_ - s));
            if (!eat(')')) fail("missing ')' after sqrt");
            RecipeValue r;
            r.s = Scalar::sqrt_of(field_, n);
            return r;
        }
        if (pos_ >= text_.size() || text_[pos_] != '[') fail("expected '[' after " + ident);
        const std::size_t close = text_.find(']', pos_);
        if (close == std::string::npos) fail("missing ']'");
        const std::string inside = text_.substr(pos_ + 1, close - pos_ - 1);
        pos_ = close + 1;
        const std::string label = ident + "[" + inside + "]";
        RecipeValue r;
        r.is_vector = true;
        if (auto idx = g_.label_index(label)) {
            r.v = g_.basis_vector(*idx);
            return r;
        }
        if (ident == "iH" && g_.root_system()) {
            try {
                r.v = g_.coroot_element(g_.root_system()->parse(inside));
            } catch (const std::exception& e) {
                fail(e.what());
            }
            return r;
        }
        fail("unknown basis label " + label);
    }

    const LieAlgebra& g_;
    const ScalarField* field_;
    std::string text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Element described by a recipe. Square roots are taken in `field`; a root
/// outside it raises FieldError.
inline ScalarVec parse_recipe(const LieAlgebra& g, const std::string& recipe, const ScalarField* field)
{
    return detail::RecipeParser(g, field, recipe).parse();
}

struct CatalogEntry {
    std::string name;
    std::string ambient;
    std::vector<std::string> basis;
    std::string description;
    // explicitly stated submodules of the complement, in order
    std::vector<std::pair<std::string, std::vector<std::string>>> modules;
};

struct Catalog {
    std::vector<CatalogEntry> entries;

    const CatalogEntry& find(const std::string& name, const std::string& ambient = {}) const
    {
        for (const auto& e : entries)
            if (e.name == name && (ambient.empty() || e.ambient == ambient)) return e;
        throw RecipeError("no catalog entry named '" + name + "'" + (ambient.empty() ? "" : " for " + ambient));
    }

    std::vector<std::string> names(const std::string& ambient) const
    {
        std::vector<std::string> out;
        for (const auto& e : entries)
            if (e.ambient == ambient) out.push_back(e.name);
        return out;
    }
};

inline Catalog catalog_from_json(const json& j)
{
    Catalog c;
    for (const auto& e : j.at("entries")) {
        CatalogEntry ce;
        ce.name = e.at("name").get<std::string>();
        ce.ambient = e.at("ambient").get<std::string>();
        ce.basis = e.at("basis").get<std::vector<std::string>>();
        ce.description = e.value("description", std::string{});
        if (e.contains("modules"))
            for (const auto& m : e["modules"])
                ce.modules.emplace_back(m.at("name").get<std::string>(), m.at("basis").get<std::vector<std::string>>());
        c.entries.push_back(std::move(ce));
    }
    return c;
}

#ifndef GOLIE_DATA_DIR
#define GOLIE_DATA_DIR "data"
#endif

inline std::string default_catalog_path() { return std::string(GOLIE_DATA_DIR) + "/catalog.json"; }

inline Catalog load_catalog(const std::string& path = default_catalog_path())
{
    return catalog_from_json(read_json_file(path));
}

inline std::vector<ScalarVec> evaluate_recipes(const LieAlgebra& g, const std::vector<std::string>& recipes,
                                               const ScalarField* field)
{
    std::vector<ScalarVec> out;
    for (const auto& r : recipes) out.push_back(parse_recipe(g, r, field));
    return out;
}

/// Block subalgebra sp(n1)+sp(n2)+sp(n3) of sp(n1+n2+n3) and the three
/// off-diagonal modules m1 (blocks 1,2), m2 (1,3), m3 (2,3).
inline CatalogEntry sp_block_entry(const std::vector<std::size_t>& blocks)
{
    CatalogEntry e;
    std::size_t n = 0;
    for (auto b : blocks) n += b;
    e.ambient = "sp" + std::to_string(n);
    e.name = "sp-blocks";
    for (auto b : blocks) e.name += "-" + std::to_string(b);
    for (const auto& part : sp_block_labels(blocks))
        for (const auto& l : part) e.basis.push_back(l);
    e.description = "block-diagonal sp(n1)+sp(n2)+sp(n3), generalized Wallach space";
    const std::pair<std::size_t, std::size_t> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    for (std::size_t t = 0; t < 3 && blocks.size() == 3; ++t)
        e.modules.emplace_back("m" + std::to_string(t + 1), sp_offblock_labels(blocks, pairs[t].first, pairs[t].second));
    return e;
}

} // namespace golie
