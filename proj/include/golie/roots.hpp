#pragma once

// Root systems of types A, B, C, D and G2, and Chevalley structure constants
// with the extraspecial-pair sign convention.

#include "golie/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace golie {

/// Coordinates in the basis of simple roots.
using RootVec = std::vector<int>;

class RootSystemError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class RootSystem {
public:
    RootSystem(std::string type, std::vector<std::vector<Rational>> gram);

    const std::string& type() const { return type_; }
    std::size_t rank() const { return gram_.size(); }

    /// (alpha_i, alpha_j) for simple roots.
    const Rational& simple_pairing(std::size_t i, std::size_t j) const { return gram_[i][j]; }

    /// Cartan integer <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
    int cartan(std::size_t i, std::size_t j) const { return cartan_[i][j]; }

    Rational pairing(const RootVec& a, const RootVec& b) const
    {
        Rational s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < rank(); ++j)
                if (b[j] != 0) s += gram_[i][j] * a[i] * b[j];
        }
        return s;
    }

    /// <a, b^vee> = 2 (a, b) / (b, b).
    Rational coroot_pairing(const RootVec& a, const RootVec& b) const
    {
        return 2 * pairing(a, b) / pairing(b, b);
    }

    /// Positive roots ordered by height, then lexicographically descending in
    /// simple-root coordinates (so the simple roots come first in index order).
    const std::vector<RootVec>& positive_roots() const { return positive_; }

    /// All roots: the positive roots followed by their negatives in the same order.
    const std::vector<RootVec>& roots() const { return all_; }

    std::optional<std::size_t> index_of(const RootVec& v) const
    {
        auto it = index_.find(v);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool is_root(const RootVec& v) const { return index_.count(v) > 0; }

    /// Index of -roots()[i].
    std::size_t negative_index(std::size_t i) const
    {
        const std::size_t np = positive_.size();
        return i < np ? i + np : i - np;
    }

    bool is_positive_index(std::size_t i) const { return i < positive_.size(); }

    static int height(const RootVec& v) { return std::accumulate(v.begin(), v.end(), 0); }

    /// Letters a, b, c, ... for the simple roots, e.g. "3a+2b", "a-b".
    std::string label(const RootVec& v) const
    {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            int c = v[i];
            if (c < 0) {
                out += "-";
                c = -c;
            } else if (!out.empty()) {
                out += "+";
            }
            if (c != 1) out += std::to_string(c);
            out += static_cast<char>('a' + i);
        }
        return out.empty() ? "0" : out;
    }

    /// Inverse of label(); accepts any integral combination, not only roots.
    RootVec parse(const std::string& text) const
    {
        RootVec v(rank(), 0);
        std::size_t pos = 0;
        bool any = false;
        auto fail = [&]() { throw RootSystemError("malformed root expression: '" + text + "'"); };
        while (pos < text.size()) {
            int sgn = 1;
            if (text[pos] == '+' || text[pos] == '-') {
                sgn = text[pos] == '-' ? -1 : 1;
                ++pos;
            } else if (any) {
                fail();
            }
            int coef = 0;
            bool digits = false;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                coef = coef * 10 + (text[pos] - '0');
                digits = true;
                ++pos;
            }
            if (!digits) coef = 1;
            if (pos >= text.size() || !std::islower(static_cast<unsigned char>(text[pos]))) fail();
            std::size_t idx = static_cast<std::size_t>(text[pos] - 'a');
            if (idx >= rank()) fail();
            v[idx] += sgn * coef;
            ++pos;
            any = true;
        }
        if (!any) fail();
        return v;
    }

private:
    std::string type_;
    std::vector<std::vector<Rational>> gram_;
    std::vector<std::vector<int>> cartan_;
    std::vector<RootVec> positive_;
    std::vector<RootVec> all_;
    std::map<RootVec, std::size_t> index_;
};

inline RootSystem::RootSystem(std::string type, std::vector<std::vector<Rational>> gram)
    : type_(std::move(type)), gram_(std::move(gram))
{
    const std::size_t l = gram_.size();
    cartan_.assign(l, std::vector<int>(l, 0));
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            Rational c = 2 * gram_[i][j] / gram_[j][j];
            if (c.get_den() != 1) throw RootSystemError("non-integral Cartan entry in " + type_);
            cartan_[i][j] = static_cast<int>(c.get_num().get_si());
        }
    }

    // Grow the positive roots height by height with root strings:
    // beta + alpha_i is a root iff q = p - <beta, alpha_i^vee> > 0, where p is
    // the largest k with beta - k alpha_i a root.
    std::set<RootVec> known;
    std::vector<RootVec> layer;
    for (std::size_t i = 0; i < l; ++i) {
        RootVec v(l, 0);
        v[i] = 1;
        layer.push_back(v);
        known.insert(v);
    }
    std::vector<RootVec> positives = layer;
    while (!layer.empty()) {
        std::set<RootVec> next;
        for (const auto& beta : layer) {
            for (std::size_t i = 0; i < l; ++i) {
                int p = 0;
                RootVec down = beta;
                while (true) {
                    down[i] -= 1;
                    if (known.count(down)) {
                        ++p;
                    } else {
                        break;
                    }
                }
                int pair = 0;
                for (std::size_t j = 0; j < l; ++j) pair += beta[j] * cartan_[j][i];
                if (p - pair > 0) {
                    RootVec up = beta;
                    up[i] += 1;
                    if (!known.count(up)) next.insert(up);
                }
            }
        }
        layer.assign(next.begin(), next.end());
        for (const auto& v : layer) {
            known.insert(v);
            positives.push_back(v);
        }
    }
    std::sort(positives.begin(), positives.end(), [](const RootVec& a, const RootVec& b) {
        int ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    positive_ = positives;
    all_ = positives;
    for (const auto& v : positives) {
        RootVec n = v;
        for (auto& x : n) x = -x;
        all_.push_back(n);
    }
    for (std::size_t i = 0; i < all_.size(); ++i) index_[all_[i]] = i;
}

/// Root system for a label such as "G2", "A1", "B3", "C3", "D4".
inline RootSystem root_system(const std::string& label)
{
    if (label.size() < 2) throw RootSystemError("unsupported root system type: '" + label + "'");
    const char series = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    int n = 0;
    try {
        std::size_t used = 0;
        n = std::stoi(label.substr(1), &used);
        if (used != label.size() - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw RootSystemError("unsupported root system type: '" + label + "'");
    }
    std::vector<std::vector<Rational>> g(static_cast<std::size_t>(std::max(n, 0)),
                                         std::vector<Rational>(static_cast<std::size_t>(std::max(n, 0)), 0));
    auto chain = [&](int len, Rational norm) {
        for (int i = 0; i < len; ++i) {
            g[i][i] = norm;
            if (i + 1 < len) g[i][i + 1] = g[i + 1][i] = -norm / 2;
        }
    };
    const std::string canon = std::string(1, series) + std::to_string(n);
    switch (series) {
    case 'A':
        if (n < 1 || n > 8) break;
        chain(n, 2);
        return RootSystem(canon, g);
    case 'B':
        if (n < 2 || n > 8) break;
        chain(n, 2);
        g[n - 1][n - 1] = 1;
        g[n - 2][n - 1] = g[n - 1][n - 2] = -1;
        return RootSystem(canon, g);
    case 'C':
        if (n < 2 || n > 8) break;
        chain(n, 2);
        g[n - 1][n - 1] = 4;
        g[n - 2][n - 1] = g[n - 1][n - 2] = -2;
        return RootSystem(canon, g);
    case 'D':
        if (n < 4 || n > 8) break;
        chain(n - 1, 2);
        g[n - 1][n - 1] = 2;
        g[n - 3][n - 1] = g[n - 1][n - 3] = -1;
        return RootSystem(canon, g);
    case 'G':
        if (n != 2) break;
        // alpha short, beta long; highest root 3a+2b
        g[0][0] = 2;
        g[1][1] = 6;
        g[0][1] = g[1][0] = -3;
        return RootSystem(canon, g);
    default:
        break;
    }
    throw RootSystemError("unsupported root system type: '" + label + "'");
}

/// Length of the r-string through s below s: largest p with s - p r a root.
inline int string_below(const RootSystem& rs, const RootVec& r, const RootVec& s)
{
    int p = 0;
    RootVec v = s;
    while (true) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= r[i];
        if (!rs.is_root(v)) return p;
        ++p;
    }
}

/// Structure constants N_{r,s} of a Chevalley basis, [E_r, E_s] = N_{r,s} E_{r+s}.
///
/// Signs: N = +(p+1) on every extraspecial pair (alpha_i, xi - alpha_i) with
/// i minimal, N_{-r,-s} = -N_{r,s}; everything else follows from the
/// standard relations between the N's.
class ChevalleyConstants {
public:
    explicit ChevalleyConstants(const RootSystem& rs) : rs_(rs)
    {
        const auto& all = rs_.roots();
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = 0; b < all.size(); ++b) {
                RootVec s = add(all[a], all[b]);
                if (rs_.is_root(s)) table_[{a, b}] = compute(a, b);
            }
    }

    /// N_{r,s} for root indices; zero when r + s is not a root.
    long operator()(std::size_t r, std::size_t s) const
    {
        auto it = table_.find({r, s});
        return it == table_.end() ? 0 : it->second;
    }

    const std::map<std::pair<std::size_t, std::size_t>, long>& table() const { return table_; }

    static std::string convention()
    {
        return "extraspecial pairs (alpha_i, xi - alpha_i) with minimal i carry N = +(p+1); "
               "N_{-r,-s} = -N_{r,s}";
    }

private:
    static RootVec add(const RootVec& a, const RootVec& b)
    {
        RootVec s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
        return s;
    }
    static RootVec neg(const RootVec& a)
    {
        RootVec s = a;
        for (auto& x : s) x = -x;
        return s;
    }

    std::size_t idx(const RootVec& v) const { return *rs_.index_of(v); }

    Rational norm(const RootVec& v) const { return rs_.pairing(v, v); }

    long compute(std::size_t a, std::size_t b)
    {
        auto it = memo_.find({a, b});
        if (it != memo_.end()) return it->second;
        long value = compute_uncached(a, b);
        memo_[{a, b}] = value;
        return value;
    }

    long compute_uncached(std::size_t a, std::size_t b)
    {
        const RootVec& r = rs_.roots()[a];
        const RootVec& s = rs_.roots()[b];
        const bool pa = rs_.is_positive_index(a), pb = rs_.is_positive_index(b);
        if (!pa && !pb) return -compute(rs_.negative_index(a), rs_.negative_index(b));
        if (!pa && pb) return -compute(b, a);
        if (pa && !pb) {
            RootVec sum = add(r, s);
            RootVec c = neg(sum);
            if (rs_.is_root(sum) && rs_.is_positive_index(idx(sum))) {
                // c negative: N_{r,s} = -(c,c)/(r,r) N_{-s,-c}
                Rational v = -norm(c) / norm(r) * compute(idx(neg(s)), idx(neg(c)));
                return to_long(v);
            }
            // c positive: N_{r,s} = (c,c)/(s,s) N_{c,r}
            Rational v = norm(c) / norm(s) * compute(idx(c), a);
            return to_long(v);
        }
        // Both positive.
        const RootVec xi = add(r, s);
        std::size_t r1 = rs_.rank();
        RootVec s1;
        for (std::size_t i = 0; i < rs_.rank(); ++i) {
            RootVec d = xi;
            d[i] -= 1;
            if (rs_.is_root(d) && rs_.is_positive_index(idx(d))) {
                r1 = i;
                s1 = d;
                break;
            }
        }
        RootVec r1v(rs_.rank(), 0);
        r1v[r1] = 1;
        if (r == r1v) return string_below(rs_, r, s) + 1;
        if (s == r1v) return -(string_below(rs_, s, r) + 1);
        const long n11 = compute(idx(r1v), idx(s1));
        Rational acc = 0;
        RootVec s_r1 = add(s, neg(r1v));
        if (rs_.is_root(s_r1)) {
            acc += Rational(compute(b, idx(neg(r1v))) * compute(a, idx(neg(s1)))) / norm(s_r1);
        }
        RootVec r_r1 = add(r, neg(r1v));
        if (rs_.is_root(r_r1)) {
            acc += Rational(compute(idx(neg(r1v)), a) * compute(b, idx(neg(s1)))) / norm(r_r1);
        }
        return to_long(norm(xi) * acc / n11);
    }

    static long to_long(const Rational& v)
    {
        if (v.get_den() != 1) throw std::logic_error("non-integral Chevalley constant");
        return v.get_num().get_si();
    }

    RootSystem rs_;
    std::map<std::pair<std::size_t, std::size_t>, long> table_;
    std::map<std::pair<std::size_t, std::size_t>, long> memo_;
};

} // namespace golie
