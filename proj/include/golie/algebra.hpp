#pragma once

// Real Lie algebras given by structure constants, the compact real forms of
// the root-system algebras, and the compact symplectic algebras sp(n).

#include "golie/roots.hpp"
#include "golie/subspace.hpp"

#include <array>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>

namespace golie {

class AlgebraError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

/// One structure constant: [e_i, e_j] has coefficient value on e_k.
struct StructureEntry {
    std::size_t i, j, k;
    Scalar value;
};

class LieAlgebra {
public:
    /// Entries only need to cover i < j; antisymmetry fills the rest.
    LieAlgebra(std::string name, std::vector<std::string> labels, const std::vector<StructureEntry>& entries,
               const ScalarField* field, std::string convention = {})
        : name_(std::move(name)), labels_(std::move(labels)), field_(field), convention_(std::move(convention))
    {
        const std::size_t n = labels_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (!label_index_.emplace(labels_[i], i).second) throw AlgebraError("duplicate basis label " + labels_[i]);
        }
        std::vector<std::map<std::size_t, Scalar>> acc(n * n);
        for (const auto& e : entries) {
            if (e.i >= n || e.j >= n || e.k >= n) throw AlgebraError("structure constant index out of range");
            if (e.i == e.j) {
                if (!is_zero(e.value)) throw AlgebraError("nonzero [e_i, e_i] for " + labels_[e.i]);
                continue;
            }
            const std::size_t a = std::min(e.i, e.j), b = std::max(e.i, e.j);
            const Scalar v = e.i < e.j ? e.value : -e.value;
            acc[a * n + b][e.k] += v;
        }
        table_.assign(n * n, {});
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                SparseVec up, down;
                for (auto& [k, v] : acc[a * n + b]) {
                    if (is_zero(v)) continue;
                    up.emplace_back(k, v);
                    down.emplace_back(k, -v);
                }
                table_[a * n + b] = std::move(up);
                table_[b * n + a] = std::move(down);
            }
        for (std::size_t j = 0; j < n; ++j) ad_basis_.push_back(ad(unit_vector<Scalar>(n, j)));
        killing_ = ExactMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const Scalar v = trace_product(ad_basis_[i], ad_basis_[j]);
                killing_(i, j) = v;
                killing_(j, i) = v;
            }
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const ScalarField* field() const { return field_; }
    const std::string& convention() const { return convention_; }

    std::optional<std::size_t> label_index(const std::string& label) const
    {
        auto it = label_index_.find(label);
        if (it == label_index_.end()) return std::nullopt;
        return it->second;
    }

    /// [e_i, e_j] in sparse coordinates.
    const SparseVec& structure(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

    ScalarVec basis_vector(std::size_t i) const { return unit_vector<Scalar>(dim(), i); }

    ScalarVec zero() const { return ScalarVec(dim(), Scalar(0)); }

    ScalarVec bracket(const ScalarVec& x, const ScalarVec& y) const
    {
        check_len(x);
        check_len(y);
        const std::size_t n = dim();
        ScalarVec out(n, Scalar(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (is_zero(x[i])) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || is_zero(y[j])) continue;
                const auto& s = table_[i * n + j];
                if (s.empty()) continue;
                const Scalar c = x[i] * y[j];
                for (const auto& [k, v] : s) out[k] += c * v;
            }
        }
        return out;
    }

    /// Matrix of ad_x; column j is [x, e_j].
    ExactMatrix ad(const ScalarVec& x) const
    {
        check_len(x);
        const std::size_t n = dim();
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (is_zero(x[i])) continue;
            for (std::size_t j = 0; j < n; ++j)
                for (const auto& [k, v] : table_[i * n + j]) m(k, j) += x[i] * v;
        }
        return m;
    }

    const ExactMatrix& ad_basis(std::size_t i) const { return ad_basis_[i]; }

    const ExactMatrix& killing() const { return killing_; }

    Scalar killing(const ScalarVec& x, const ScalarVec& y) const
    {
        check_len(x);
        check_len(y);
        return dot(x, killing_ * y);
    }

    /// Root data, when the algebra is a compact form built from a root system.
    const std::optional<RootSystem>& root_system() const { return roots_; }

    /// iH_lambda for an integral weight lambda in simple-root coordinates,
    /// with H_lambda = 2 t_lambda / (lambda, lambda); valid for non-roots too.
    ScalarVec coroot_element(const RootVec& lambda) const
    {
        if (!roots_) throw AlgebraError("algebra " + name_ + " carries no root data");
        const auto& rs = *roots_;
        if (lambda.size() != rs.rank()) throw AlgebraError("weight has wrong rank");
        const Rational ll = rs.pairing(lambda, lambda);
        if (ll == 0) throw AlgebraError("zero weight has no coroot");
        ScalarVec v = zero();
        for (std::size_t i = 0; i < rs.rank(); ++i) {
            if (lambda[i] == 0) continue;
            Rational c = Rational(lambda[i]) * rs.simple_pairing(i, i) / ll;
            v[*label_index("iH[" + rs.label(simple(i)) + "]")] = Scalar(c);
        }
        return v;
    }

    void set_root_system(RootSystem rs) { roots_ = std::move(rs); }

private:
    RootVec simple(std::size_t i) const
    {
        RootVec v(roots_->rank(), 0);
        v[i] = 1;
        return v;
    }

    void check_len(const ScalarVec& x) const
    {
        if (x.size() != dim()) throw AlgebraError("vector length does not match algebra " + name_);
    }

    static Scalar trace_product(const ExactMatrix& a, const ExactMatrix& b)
    {
        Scalar t(0);
        const std::size_t n = a.rows();
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                if (!is_zero(a(k, l)) && !is_zero(b(l, k))) t += a(k, l) * b(l, k);
        return t;
    }

    std::string name_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> label_index_;
    const ScalarField* field_;
    std::string convention_;
    std::vector<SparseVec> table_;
    std::vector<ExactMatrix> ad_basis_;
    ExactMatrix killing_;
    std::optional<RootSystem> roots_;
};

/// An element together with the algebra it lives in.
class Element {
public:
    Element(const LieAlgebra& alg, ScalarVec coords) : alg_(&alg), coords_(std::move(coords))
    {
        if (coords_.size() != alg.dim()) throw AlgebraError("element length does not match algebra");
    }

    const LieAlgebra& algebra() const { return *alg_; }
    const ScalarVec& coords() const { return coords_; }

    friend Element operator+(const Element& a, const Element& b)
    {
        same(a, b);
        return Element(*a.alg_, a.coords_ + b.coords_);
    }
    friend Element operator-(const Element& a, const Element& b)
    {
        same(a, b);
        return Element(*a.alg_, a.coords_ - b.coords_);
    }
    friend Element operator*(const Scalar& s, const Element& a) { return Element(*a.alg_, scaled(s, a.coords_)); }
    friend bool operator==(const Element& a, const Element& b)
    {
        return a.alg_ == b.alg_ && a.coords_ == b.coords_;
    }

    static void same(const Element& a, const Element& b)
    {
        if (a.alg_ != b.alg_) throw AlgebraError("elements of different algebras");
    }

private:
    const LieAlgebra* alg_;
    ScalarVec coords_;
};

inline Element bracket(const Element& x, const Element& y)
{
    Element::same(x, y);
    return Element(x.algebra(), x.algebra().bracket(x.coords(), y.coords()));
}

inline ExactMatrix ad(const Element& x) { return x.algebra().ad(x.coords()); }

inline Scalar killing(const Element& x, const Element& y)
{
    Element::same(x, y);
    return x.algebra().killing(x.coords(), y.coords());
}

// ---------------------------------------------------------------- checks

/// A basis triple violating an identity.
struct TripleWitness {
    std::size_t i, j, k;
};

inline std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_violation(const LieAlgebra& g)
{
    for (std::size_t i = 0; i < g.dim(); ++i) {
        if (!g.structure(i, i).empty()) return std::make_pair(i, i);
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            const auto& a = g.structure(i, j);
            const auto& b = g.structure(j, i);
            if (a.size() != b.size()) return std::make_pair(i, j);
            for (std::size_t t = 0; t < a.size(); ++t)
                if (a[t].first != b[t].first || a[t].second != -b[t].second) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

/// Jacobi identity on all basis triples i < j < k.
inline std::optional<TripleWitness> jacobi_violation(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    std::vector<ScalarVec> e;
    for (std::size_t i = 0; i < n; ++i) e.push_back(g.basis_vector(i));
    // [e_i,[e_j,e_k]] = ad_i applied to column
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                ScalarVec s = g.ad_basis(i) * g.bracket(e[j], e[k]);
                s = s + g.ad_basis(j) * g.bracket(e[k], e[i]);
                s = s + g.ad_basis(k) * g.bracket(e[i], e[j]);
                if (!is_zero_vec(s)) return TripleWitness{i, j, k};
            }
    return std::nullopt;
}

/// B([X,Y],Z) + B(Y,[X,Z]) = 0 on all basis triples.
inline std::optional<TripleWitness> killing_invariance_violation(const LieAlgebra& g)
{
    const std::size_t n = g.dim();
    const auto& b = g.killing();
    for (std::size_t x = 0; x < n; ++x) {
        // ad_x^T B + B ad_x = 0
        const auto& a = g.ad_basis(x);
        ExactMatrix m = a.transpose() * b + b * a;
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (!is_zero(m(y, z))) return TripleWitness{x, y, z};
    }
    return std::nullopt;
}

inline bool killing_negative_definite(const LieAlgebra& g) { return is_definite(g.killing(), -1); }

// ---------------------------------------------------------------- compact forms

namespace detail {

// Gaussian rational a + b i.
struct Gauss {
    Rational re = 0, im = 0;
    Gauss() = default;
    Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    friend Gauss operator*(const Gauss& x, const Gauss& y)
    {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    Gauss& operator+=(const Gauss& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    bool zero() const { return re == 0 && im == 0; }
};

// Complex Chevalley basis: H_1..H_r, then E_gamma in RootSystem::roots() order.
using ComplexVec = std::map<std::size_t, Gauss>;

class ChevalleyAlgebra {
public:
    explicit ChevalleyAlgebra(const RootSystem& rs) : rs_(rs), n_(rs)
    {
        // Touch every pair once so N is computed eagerly.
        (void)n_.table();
    }

    std::size_t rank() const { return rs_.rank(); }
    std::size_t e_index(std::size_t root) const { return rs_.rank() + root; }

    // Bracket of two basis elements of the complex Chevalley basis.
    ComplexVec basis_bracket(std::size_t a, std::size_t b) const
    {
        const std::size_t r = rank();
        ComplexVec out;
        if (a < r && b < r) return out;
        if (a < r) {
            const RootVec& g = rs_.roots()[b - r];
            out[b] = Gauss(rs_.coroot_pairing(g, simple(a)), 0);
            return out;
        }
        if (b < r) {
            auto o = basis_bracket(b, a);
            for (auto& [k, v] : o) v = Gauss(-v.re, -v.im);
            return o;
        }
        const std::size_t ga = a - r, gb = b - r;
        const RootVec& x = rs_.roots()[ga];
        const RootVec& y = rs_.roots()[gb];
        if (rs_.negative_index(ga) == gb) {
            // [E_g, E_-g] = H_g = sum_i g_i (a_i,a_i)/(g,g) H_i
            const Rational gg = rs_.pairing(x, x);
            for (std::size_t i = 0; i < r; ++i)
                if (x[i] != 0) out[i] = Gauss(Rational(x[i]) * rs_.simple_pairing(i, i) / gg, 0);
            return out;
        }
        RootVec s(x.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = x[i] + y[i];
        auto idx = rs_.index_of(s);
        if (!idx) return out;
        out[e_index(*idx)] = Gauss(Rational(n_(ga, gb)), 0);
        return out;
    }

    ComplexVec bracket(const ComplexVec& x, const ComplexVec& y) const
    {
        ComplexVec out;
        for (const auto& [a, ca] : x)
            for (const auto& [b, cb] : y) {
                if (a == b) continue;
                const Gauss c = ca * cb;
                for (const auto& [k, v] : basis_bracket(a, b)) out[k] += c * v;
            }
        for (auto it = out.begin(); it != out.end();)
            it = it->second.zero() ? out.erase(it) : std::next(it);
        return out;
    }

    const ChevalleyConstants& constants() const { return n_; }

private:
    RootVec simple(std::size_t i) const
    {
        RootVec v(rank(), 0);
        v[i] = 1;
        return v;
    }

    const RootSystem& rs_;
    ChevalleyConstants n_;
};

} // namespace detail

/// Compact real form with basis iH[a_i] (simple coroots), then F[g], G[g] for
/// each positive root g: F = E_g - E_-g, G = i (E_g + E_-g).
inline LieAlgebra compact_form(const RootSystem& rs, const ScalarField* field = ScalarField::standard())
{
    using detail::Gauss;
    detail::ChevalleyAlgebra ch(rs);
    const std::size_t r = rs.rank();
    const std::size_t np = rs.positive_roots().size();
    std::vector<std::string> labels;
    std::vector<detail::ComplexVec> complex_basis;
    for (std::size_t i = 0; i < r; ++i) {
        RootVec v(r, 0);
        v[i] = 1;
        labels.push_back("iH[" + rs.label(v) + "]");
        complex_basis.push_back({{i, Gauss(0, 1)}});
    }
    for (std::size_t p = 0; p < np; ++p) {
        const std::string l = rs.label(rs.positive_roots()[p]);
        const std::size_t ep = ch.e_index(p), en = ch.e_index(rs.negative_index(p));
        labels.push_back("F[" + l + "]");
        complex_basis.push_back({{ep, Gauss(1, 0)}, {en, Gauss(-1, 0)}});
        labels.push_back("G[" + l + "]");
        complex_basis.push_back({{ep, Gauss(0, 1)}, {en, Gauss(0, 1)}});
    }
    const std::size_t n = labels.size();
    auto to_real = [&](const detail::ComplexVec& z) {
        std::vector<std::pair<std::size_t, Rational>> out;
        auto get = [&](std::size_t k) {
            auto it = z.find(k);
            return it == z.end() ? Gauss() : it->second;
        };
        for (std::size_t i = 0; i < r; ++i) {
            Gauss c = get(i);
            if (c.re != 0) throw std::logic_error("compact_form: bracket left the real form");
            if (c.im != 0) out.emplace_back(i, c.im);
        }
        for (std::size_t p = 0; p < np; ++p) {
            Gauss c = get(ch.e_index(p));
            Gauss d = get(ch.e_index(rs.negative_index(p)));
            if (d.re != -c.re || d.im != c.im) throw std::logic_error("compact_form: bracket left the real form");
            if (c.re != 0) out.emplace_back(r + 2 * p, c.re);
            if (c.im != 0) out.emplace_back(r + 2 * p + 1, c.im);
        }
        return out;
    };
    std::vector<StructureEntry> entries;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (auto& [k, v] : to_real(ch.bracket(complex_basis[i], complex_basis[j])))
                entries.push_back({i, j, k, Scalar(v)});
    LieAlgebra g("compact " + rs.type(), std::move(labels), entries, field, ChevalleyConstants::convention());
    g.set_root_system(rs);
    return g;
}

inline LieAlgebra compact_form(const std::string& type, const ScalarField* field = ScalarField::standard())
{
    return compact_form(root_system(type), field);
}

namespace detail {

// Quaternion with rational coordinates a + b i + c j + d k.
struct Quat {
    std::array<Rational, 4> c{0, 0, 0, 0};
    friend Quat operator*(const Quat& x, const Quat& y)
    {
        const auto& [a1, b1, c1, d1] = x.c;
        const auto& [a2, b2, c2, d2] = y.c;
        Quat q;
        q.c[0] = a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2;
        q.c[1] = a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2;
        q.c[2] = a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2;
        q.c[3] = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2;
        return q;
    }
    Quat& operator+=(const Quat& o)
    {
        for (int t = 0; t < 4; ++t) c[t] += o.c[t];
        return *this;
    }
    Quat& operator-=(const Quat& o)
    {
        for (int t = 0; t < 4; ++t) c[t] -= o.c[t];
        return *this;
    }
    static Quat unit(int t, Rational v = 1)
    {
        Quat q;
        q.c[t] = std::move(v);
        return q;
    }
};

using QuatMatrix = std::vector<std::vector<Quat>>;

inline QuatMatrix qcommutator(const QuatMatrix& x, const QuatMatrix& y)
{
    const std::size_t n = x.size();
    QuatMatrix out(n, std::vector<Quat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                out[i][j] += x[i][k] * y[k][j];
                out[i][j] -= y[i][k] * x[k][j];
            }
    return out;
}

} // namespace detail

/// Compact sp(n): quaternionic skew-Hermitian n x n matrices. Basis:
/// Di[p], Dj[p], Dk[p] = (i, j, k) E_pp; for p < q, R[p,q] = E_pq - E_qp and
/// I/J/K[p,q] = u (E_pq + E_qp) with u = i, j, k. Indices are 1-based.
inline LieAlgebra compact_classical(const std::string& series, std::size_t n,
                                    const ScalarField* field = ScalarField::standard())
{
    if (series != "sp") throw AlgebraError("unsupported classical series '" + series + "' (only sp)");
    if (n < 1 || n > 4) throw AlgebraError("compact_classical: sp(n) needs 1 <= n <= 4, got " + std::to_string(n));
    using detail::Quat;
    using detail::QuatMatrix;
    std::vector<std::string> labels;
    std::vector<QuatMatrix> mats;
    auto blank = [&]() { return QuatMatrix(n, std::vector<Quat>(n)); };
    const char* diag[3] = {"Di", "Dj", "Dk"};
    for (std::size_t p = 0; p < n; ++p)
        for (int t = 1; t <= 3; ++t) {
            auto m = blank();
            m[p][p] = Quat::unit(t);
            labels.push_back(std::string(diag[t - 1]) + "[" + std::to_string(p + 1) + "]");
            mats.push_back(std::move(m));
        }
    const char* off[4] = {"R", "I", "J", "K"};
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
            for (int t = 0; t < 4; ++t) {
                auto m = blank();
                m[p][q] = Quat::unit(t);
                m[q][p] = Quat::unit(t, t == 0 ? -1 : 1);
                labels.push_back(std::string(off[t]) + "[" + std::to_string(p + 1) + "," + std::to_string(q + 1) + "]");
                mats.push_back(std::move(m));
            }
    // coordinates of a skew-Hermitian matrix
    std::vector<std::array<std::size_t, 4>> off_index(n * n);
    {
        std::size_t idx = 3 * n;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                for (std::size_t t = 0; t < 4; ++t) off_index[p * n + q][t] = idx + t;
                idx += 4;
            }
    }
    auto coords = [&](const QuatMatrix& m) {
        std::vector<std::pair<std::size_t, Rational>> out;
        for (std::size_t p = 0; p < n; ++p) {
            if (m[p][p].c[0] != 0) throw std::logic_error("sp(n): non skew-Hermitian commutator");
            for (int t = 1; t <= 3; ++t)
                if (m[p][p].c[t] != 0) out.emplace_back(3 * p + t - 1, m[p][p].c[t]);
        }
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                for (std::size_t t = 0; t < 4; ++t)
                    if (m[p][q].c[t] != 0) out.emplace_back(off_index[p * n + q][t], m[p][q].c[t]);
        return out;
    };
    std::vector<StructureEntry> entries;
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = i + 1; j < mats.size(); ++j)
            for (auto& [k, v] : coords(detail::qcommutator(mats[i], mats[j]))) entries.push_back({i, j, k, Scalar(v)});
    return LieAlgebra("compact sp(" + std::to_string(n) + ")", std::move(labels), entries, field,
                      "quaternionic skew-Hermitian matrices");
}

/// Basis labels of the block subalgebra sp(n1) + sp(n2) + ... inside sp(n),
/// blocks taken as consecutive index ranges.
inline std::vector<std::vector<std::string>> sp_block_labels(const std::vector<std::size_t>& blocks)
{
    std::vector<std::vector<std::string>> out;
    std::size_t start = 1;
    for (std::size_t b : blocks) {
        std::vector<std::string> labels;
        for (std::size_t p = start; p < start + b; ++p)
            for (const char* d : {"Di", "Dj", "Dk"}) labels.push_back(std::string(d) + "[" + std::to_string(p) + "]");
        for (std::size_t p = start; p < start + b; ++p)
            for (std::size_t q = p + 1; q < start + b; ++q)
                for (const char* o : {"R", "I", "J", "K"})
                    labels.push_back(std::string(o) + "[" + std::to_string(p) + "," + std::to_string(q) + "]");
        out.push_back(std::move(labels));
        start += b;
    }
    return out;
}

/// Labels of the off-diagonal block between block a and block b (0-based).
inline std::vector<std::string> sp_offblock_labels(const std::vector<std::size_t>& blocks, std::size_t a,
                                                   std::size_t b)
{
    std::vector<std::size_t> start(blocks.size() + 1, 1);
    for (std::size_t t = 0; t < blocks.size(); ++t) start[t + 1] = start[t] + blocks[t];
    std::vector<std::string> out;
    for (std::size_t p = start[a]; p < start[a + 1]; ++p)
        for (std::size_t q = start[b]; q < start[b + 1]; ++q)
            for (const char* o : {"R", "I", "J", "K"})
                out.push_back(std::string(o) + "[" + std::to_string(std::min(p, q)) + "," +
                              std::to_string(std::max(p, q)) + "]");
    return out;
}

} // namespace golie
