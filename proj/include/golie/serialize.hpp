#pragma once

// JSON forms of scalars, matrices and algebras.

#include "golie/algebra.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>

namespace golie {

using json = nlohmann::ordered_json;

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inverse of Scalar::to_string. Summands "p/q" or "p/q*sqrt(d)" joined by '+';
/// a leading '-' on a summand is also accepted.
inline Scalar parse_scalar(const std::string& text, const ScalarField* field)
{
    if (text == "0") return Scalar();
    Scalar out;
    std::size_t pos = 0;
    auto fail = [&]() { throw ParseError("malformed scalar: '" + text + "'"); };
    while (pos <= text.size()) {
        std::size_t end = text.find('+', pos);
        if (end == std::string::npos) end = text.size();
        std::string term = text.substr(pos, end - pos);
        if (term.empty()) fail();
        std::string coef = term, root;
        auto star = term.find('*');
        if (star != std::string::npos) {
            coef = term.substr(0, star);
            root = term.substr(star + 1);
        }
        Rational c;
        try {
            c = Rational(coef);
        } catch (const std::exception&) {
            fail();
        }
        c.canonicalize();
        if (root.empty()) {
            out += Scalar(c);
        } else {
            if (root.size() < 7 || root.compare(0, 5, "sqrt(") != 0 || root.back() != ')') fail();
            const std::string d = root.substr(5, root.size() - 6);
            if (d.empty() || !std::all_of(d.begin(), d.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                fail();
            out += Scalar::sqrt_of(field, Integer(d), c);
        }
        pos = end + 1;
    }
    return out;
}

inline json vec_to_json(const ScalarVec& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(x.to_string());
    return a;
}

inline ScalarVec vec_from_json(const json& j, const ScalarField* field)
{
    ScalarVec v;
    for (const auto& x : j) v.push_back(parse_scalar(x.get<std::string>(), field));
    return v;
}

inline json matrix_to_json(const ExactMatrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_to_json(m.row(i)));
    return a;
}

inline ExactMatrix matrix_from_json(const json& j, const ScalarField* field)
{
    std::vector<ScalarVec> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(r, field));
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    return ExactMatrix::from_rows(rows, cols);
}

inline json field_to_json(const ScalarField* f) { return f->generators(); }

inline json algebra_to_json(const LieAlgebra& g)
{
    json j;
    j["name"] = g.name();
    j["type"] = g.root_system() ? json(g.root_system()->type()) : json(nullptr);
    j["field"] = field_to_json(g.field());
    j["convention"] = g.convention();
    j["dimension"] = g.dim();
    j["labels"] = g.labels();
    json st = json::array();
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t k = i + 1; k < g.dim(); ++k)
            for (const auto& [t, v] : g.structure(i, k)) st.push_back(json::array({i, k, t, v.to_string()}));
    j["structure"] = std::move(st);
    j["killing"] = matrix_to_json(g.killing());
    return j;
}

/// Rebuilds an algebra; the stored Killing matrix must match the recomputed one.
inline LieAlgebra algebra_from_json(const json& j)
{
    const ScalarField* field = ScalarField::create(j.at("field").get<std::vector<long>>());
    std::vector<StructureEntry> entries;
    for (const auto& e : j.at("structure"))
        entries.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), e.at(2).get<std::size_t>(),
                           parse_scalar(e.at(3).get<std::string>(), field)});
    LieAlgebra g(j.at("name").get<std::string>(), j.at("labels").get<std::vector<std::string>>(), entries, field,
                 j.value("convention", std::string{}));
    if (j.contains("type") && j["type"].is_string()) g.set_root_system(root_system(j["type"].get<std::string>()));
    if (j.contains("killing") && matrix_from_json(j["killing"], field) != g.killing())
        throw ParseError("stored Killing form does not match the structure constants");
    return g;
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

inline void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace golie
