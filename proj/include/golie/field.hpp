#pragma once

// Exact arithmetic in multiquadratic towers Q(sqrt(d1), ..., sqrt(dk)).
//
// A field element is stored as a sparse list of (monomial mask, rational)
// pairs over the basis { prod_{i in S} sqrt(d_i) : S subset of generators }.
// The list is kept sorted by mask with no zero coefficients, so equality and
// zero-testing are plain coordinate comparisons.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace golie {

using Rational = mpq_class;
using Integer = mpz_class;

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_square_free(long d)
{
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

// Square-free kernel of n > 0: n = s^2 * f with f square-free. Returns (s, f).
inline std::pair<Integer, Integer> square_free_split(Integer n)
{
    Integer s = 1, f = 1;
    for (Integer p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i) s *= p;
        if (e % 2 == 1) f *= p;
    }
    f *= n;
    return {s, f};
}

} // namespace detail

/// A fixed tower Q(sqrt(d1), ..., sqrt(dk)). Instances are interned and live
/// for the whole process, so plain pointers to them are stable.
class ScalarField {
public:
    ScalarField(const ScalarField&) = delete;
    ScalarField& operator=(const ScalarField&) = delete;

    /// Interned field for the given generators (order-insensitive).
    static const ScalarField* create(std::vector<long> ds);

    static const ScalarField* rationals() { return create({}); }

    /// The default tower Q(sqrt 2, sqrt 3, sqrt 5).
    static const ScalarField* standard() { return create({2, 3, 5}); }

    const std::vector<long>& generators() const { return gens_; }
    std::size_t generator_count() const { return gens_.size(); }
    std::size_t dimension() const { return std::size_t{1} << gens_.size(); }

    /// Product of the generators selected by mask (the square of the monomial).
    const Integer& mask_product(std::uint32_t mask) const { return products_.at(mask); }

    /// Square-free representative of the monomial, as printed in "sqrt(d)".
    std::string monomial_name(std::uint32_t mask) const
    {
        if (mask == 0) return "1";
        return "sqrt(" + products_.at(mask).get_str() + ")";
    }

    /// Express sqrt(n) for n >= 1 as factor * monomial(mask), or nothing if
    /// sqrt(n) is not in this field.
    std::optional<std::pair<std::uint32_t, Rational>> locate_sqrt(const Integer& n) const
    {
        if (n <= 0) return std::nullopt;
        auto [s, f] = detail::square_free_split(n);
        for (std::uint32_t mask = 0; mask < dimension(); ++mask) {
            // products_[mask] = t^2 * f  =>  sqrt(n) = s * sqrt(products_) / t
            const Integer& p = products_[mask];
            if (p % f != 0) continue;
            Integer q = p / f;
            Integer t = sqrt(q);
            if (t * t != q) continue;
            return std::make_pair(mask, Rational(s, t));
        }
        return std::nullopt;
    }

    std::string describe() const
    {
        if (gens_.empty()) return "Q";
        std::string out = "Q(";
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (i) out += ",";
            out += "sqrt(" + std::to_string(gens_[i]) + ")";
        }
        return out + ")";
    }

private:
    explicit ScalarField(std::vector<long> ds) : gens_(std::move(ds))
    {
        products_.resize(dimension());
        for (std::uint32_t mask = 0; mask < dimension(); ++mask) {
            Integer p = 1;
            for (std::size_t i = 0; i < gens_.size(); ++i)
                if (mask & (1u << i)) p *= gens_[i];
            products_[mask] = p;
        }
    }

    std::vector<long> gens_;
    std::vector<Integer> products_;
};

inline const ScalarField* ScalarField::create(std::vector<long> ds)
{
    std::sort(ds.begin(), ds.end());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds[i] < 2) throw FieldError("field generator must be >= 2: " + std::to_string(ds[i]));
        if (!detail::is_square_free(ds[i]))
            throw FieldError("field generator is not square-free: " + std::to_string(ds[i]));
        if (i > 0 && ds[i] == ds[i - 1])
            throw FieldError("duplicate field generator: " + std::to_string(ds[i]));
    }
    // Generators must be independent modulo squares, otherwise the monomial
    // basis is not a basis (e.g. {2, 3, 6}).
    if (ds.size() > 1) {
        for (std::uint32_t mask = 1; mask < (1u << ds.size()); ++mask) {
            Integer p = 1;
            for (std::size_t i = 0; i < ds.size(); ++i)
                if (mask & (1u << i)) p *= ds[i];
            Integer r = sqrt(p);
            if (r * r == p) {
                long top = 0;
                for (std::size_t i = 0; i < ds.size(); ++i)
                    if (mask & (1u << i)) top = ds[i];
                throw FieldError("field generator is dependent on the others modulo squares: " +
                                 std::to_string(top));
            }
        }
    }
    if (ds.size() > 8) throw FieldError("field towers are limited to 8 generators");

    static std::mutex mutex;
    static std::map<std::vector<long>, std::unique_ptr<ScalarField>> registry;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = registry.find(ds);
    if (it == registry.end())
        it = registry.emplace(ds, std::unique_ptr<ScalarField>(new ScalarField(ds))).first;
    return it->second.get();
}

/// Element of a ScalarField. A scalar with no field attached is a plain
/// rational and combines with any field.
class Scalar {
public:
    using Term = std::pair<std::uint32_t, Rational>;

    Scalar() = default;
    Scalar(int v) { set_rational(Rational(v)); }
    Scalar(long v) { set_rational(Rational(v)); }
    Scalar(const Rational& v) { set_rational(v); }

    /// c * sqrt(n) in the given field; throws when sqrt(n) is not in it.
    static Scalar sqrt_of(const ScalarField* field, const Integer& n, const Rational& c = 1)
    {
        if (n == 0) return Scalar();
        auto loc = field->locate_sqrt(n);
        if (!loc) {
            throw FieldError("sqrt(" + n.get_str() + ") is not in the field " + field->describe());
        }
        Scalar out;
        out.field_ = loc->first == 0 ? nullptr : field;
        Rational coef = c * loc->second;
        if (coef != 0) out.terms_.emplace_back(loc->first, coef);
        return out;
    }

    static Scalar monomial(const ScalarField* field, std::uint32_t mask, const Rational& c)
    {
        Scalar out;
        out.field_ = mask == 0 ? nullptr : field;
        if (c != 0) out.terms_.emplace_back(mask, c);
        return out;
    }

    const ScalarField* field() const { return field_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

    Rational rational_value() const
    {
        if (!is_rational()) throw FieldError("scalar is not rational");
        return terms_.empty() ? Rational(0) : terms_[0].second;
    }

    /// Coordinate on the given monomial.
    Rational coord(std::uint32_t mask) const
    {
        for (const auto& t : terms_)
            if (t.first == mask) return t.second;
        return 0;
    }

    Scalar operator-() const
    {
        Scalar out = *this;
        for (auto& t : out.terms_) t.second = -t.second;
        return out;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b)
    {
        Scalar out;
        out.field_ = join(a, b);
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
                out.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->first < ia->first) {
                out.terms_.push_back(*ib++);
            } else {
                Rational s = ia->second + ib->second;
                if (s != 0) out.terms_.emplace_back(ia->first, std::move(s));
                ++ia;
                ++ib;
            }
        }
        out.normalize_field();
        return out;
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b)
    {
        if (a.is_zero() || b.is_zero()) return Scalar();
        const ScalarField* f = join(a, b);
        Scalar out;
        out.field_ = f;
        if (a.terms_.size() == 1 && b.terms_.size() == 1) {
            auto [ma, ca] = a.terms_[0];
            auto [mb, cb] = b.terms_[0];
            Rational c = ca * cb;
            if (ma & mb) c *= Rational(f->mask_product(ma & mb));
            out.terms_.emplace_back(ma ^ mb, std::move(c));
            out.normalize_field();
            return out;
        }
        std::vector<Term> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Rational c = ca * cb;
                if (ma & mb) c *= Rational(f->mask_product(ma & mb));
                acc.emplace_back(ma ^ mb, std::move(c));
            }
        }
        std::sort(acc.begin(), acc.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        for (auto& t : acc) {
            if (!out.terms_.empty() && out.terms_.back().first == t.first) {
                out.terms_.back().second += t.second;
            } else {
                if (!out.terms_.empty() && out.terms_.back().second == 0) out.terms_.pop_back();
                out.terms_.push_back(std::move(t));
            }
        }
        if (!out.terms_.empty() && out.terms_.back().second == 0) out.terms_.pop_back();
        out.normalize_field();
        return out;
    }

    Scalar inverse() const
    {
        if (is_zero()) throw std::domain_error("division by zero scalar");
        if (terms_.size() == 1) {
            auto [m, c] = terms_[0];
            // (c m)^-1 = m / (c * m^2)
            Rational denom = c;
            if (m) denom *= Rational(field_->mask_product(m));
            return monomial(field_, m, Rational(1) / denom);
        }
        // Split on the highest generator present: x = a + b sqrt(d).
        std::uint32_t all = 0;
        for (const auto& t : terms_) all |= t.first;
        std::uint32_t bit = 1;
        while ((bit << 1) <= all) bit <<= 1;
        Scalar a, b;
        a.field_ = b.field_ = field_;
        for (const auto& t : terms_) {
            if (t.first & bit)
                b.terms_.emplace_back(t.first & ~bit, t.second);
            else
                a.terms_.push_back(t);
        }
        a.normalize_field();
        b.normalize_field();
        Scalar root = monomial(field_, bit, 1);
        Scalar conj = a - b * root;
        Scalar norm = a * a - b * b * Scalar(Rational(field_->mask_product(bit)));
        return conj * norm.inverse();
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Sign of the real embedding with every sqrt(d) positive. Decided by
    /// dyadic interval refinement; terminates because a nonzero element of a
    /// real field has a nonzero embedding.
    int sign() const
    {
        if (terms_.empty()) return 0;
        if (is_rational()) return sgn(terms_[0].second);
        for (unsigned bits = 16;; bits *= 2) {
            Rational lo = 0, hi = 0;
            Integer scale = Integer(1) << bits;
            for (const auto& [m, c] : terms_) {
                Rational vlo, vhi;
                if (m == 0) {
                    vlo = vhi = 1;
                } else {
                    Integer r = sqrt(field_->mask_product(m) * scale * scale);
                    vlo = Rational(r, scale);
                    vhi = Rational(r + 1, scale);
                }
                if (c > 0) {
                    lo += c * vlo;
                    hi += c * vhi;
                } else {
                    lo += c * vhi;
                    hi += c * vlo;
                }
            }
            if (lo > 0) return 1;
            if (hi < 0) return -1;
        }
    }

    /// Untrusted double embedding.
    double to_double() const
    {
        double v = 0;
        for (const auto& [m, c] : terms_) {
            double s = m == 0 ? 1.0 : std::sqrt(field_->mask_product(m).get_d());
            v += c.get_d() * s;
        }
        return v;
    }

    /// "a/b" or "a/b*sqrt(d)" summands joined by "+"; "0" for zero.
    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& [m, c] = terms_[i];
            if (i) out += "+";
            out += c.get_num().get_str() + "/" + c.get_den().get_str();
            if (m) out += "*" + field_->monomial_name(m);
        }
        return out;
    }

private:
    void set_rational(const Rational& v)
    {
        terms_.clear();
        if (v != 0) {
            terms_.emplace_back(0, v);
            terms_.back().second.canonicalize();
        }
    }

    void normalize_field()
    {
        if (is_rational()) field_ = nullptr;
    }

    static const ScalarField* join(const Scalar& a, const Scalar& b)
    {
        if (!a.field_) return b.field_;
        if (!b.field_ || a.field_ == b.field_) return a.field_;
        throw FieldError("scalars from different fields: " + a.field_->describe() + " and " +
                         b.field_->describe());
    }

    const ScalarField* field_ = nullptr;
    std::vector<Term> terms_;
};

inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline int sign_of(const Scalar& x) { return x.sign(); }
inline int sign_of(const Rational& x) { return sgn(x); }
inline double to_double(const Scalar& x) { return x.to_double(); }
inline double to_double(const Rational& x) { return x.get_d(); }

} // namespace golie
