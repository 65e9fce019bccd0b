#pragma once

// Adjoint actions restricted to invariant subspaces, and spaces of
// equivariant maps between them.

#include "golie/algebra.hpp"

namespace golie {

/// A subspace that fails to be invariant: [acting[z], carrier[j]] escapes.
struct InvarianceWitness {
    std::size_t z, j;
    ScalarVec image;
};

/// Coordinates with respect to a basis of a subspace on which B is
/// nondegenerate (always the case in a compact algebra).
class SubspaceCoords {
public:
    SubspaceCoords(const LieAlgebra& g, Basis<Scalar> basis) : basis_(std::move(basis))
    {
        if (!basis_.empty()) proj_ = Projector<Scalar>(g.killing(), basis_);
    }

    const Basis<Scalar>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    /// Coordinates of x if x lies in the subspace.
    std::optional<ScalarVec> coords(const ScalarVec& x) const
    {
        if (basis_.empty()) {
            if (is_zero_vec(x)) return ScalarVec{};
            return std::nullopt;
        }
        ScalarVec c = proj_.coords(x);
        ScalarVec back(x.size(), Scalar(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!is_zero(c[i])) back = back + scaled(c[i], basis_[i]);
        if (back != x) return std::nullopt;
        return c;
    }

    ScalarVec project(const ScalarVec& x) const
    {
        if (basis_.empty()) return ScalarVec(x.size(), Scalar(0));
        return proj_.project(x);
    }

    ScalarVec combine(const ScalarVec& c) const
    {
        ScalarVec out(basis_.empty() ? 0 : basis_.front().size(), Scalar(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            if (!is_zero(c[i])) out = out + scaled(c[i], basis_[i]);
        return out;
    }

private:
    Basis<Scalar> basis_;
    Projector<Scalar> proj_;
};

struct RestrictedAction {
    std::vector<ExactMatrix> matrices; // one per acting element, in carrier coordinates
    std::optional<InvarianceWitness> witness;
    bool invariant() const { return !witness.has_value(); }
};

/// Matrices of ad_Z on span(carrier) for each Z in acting; reports the first
/// escaping bracket when the carrier is not invariant.
inline RestrictedAction restricted_action(const LieAlgebra& g, const Basis<Scalar>& acting, const Basis<Scalar>& carrier)
{
    RestrictedAction out;
    SubspaceCoords sc(g, carrier);
    const std::size_t d = carrier.size();
    for (std::size_t z = 0; z < acting.size(); ++z) {
        ExactMatrix m(d, d);
        for (std::size_t j = 0; j < d; ++j) {
            ScalarVec img = g.bracket(acting[z], carrier[j]);
            auto c = sc.coords(img);
            if (!c) {
                out.witness = InvarianceWitness{z, j, img};
                return out;
            }
            for (std::size_t i = 0; i < d; ++i) m(i, j) = (*c)[i];
        }
        out.matrices.push_back(std::move(m));
    }
    return out;
}

/// Basis of { T : U -> V | T a_z = b_z T for all z }, with a_z acting on U
/// (du x du) and b_z on V (dv x dv). T is dv x du.
inline std::vector<ExactMatrix> equivariant_maps(const std::vector<ExactMatrix>& a, const std::vector<ExactMatrix>& b,
                                                 std::size_t du, std::size_t dv)
{
    if (a.size() != b.size()) throw std::invalid_argument("equivariant_maps: action lists differ in length");
    const std::size_t unknowns = du * dv;
    SparseEliminator<Scalar> elim(unknowns);
    auto var = [&](std::size_t r, std::size_t c) { return r * du + c; };
    for (std::size_t z = 0; z < a.size(); ++z) {
        const auto& az = a[z];
        const auto& bz = b[z];
        for (std::size_t r = 0; r < dv; ++r)
            for (std::size_t c = 0; c < du; ++c) {
                // (T a)_{rc} - (b T)_{rc}
                SparseEliminator<Scalar>::Row row;
                for (std::size_t k = 0; k < du; ++k)
                    if (!is_zero(az(k, c))) row.emplace_back(var(r, k), az(k, c));
                for (std::size_t k = 0; k < dv; ++k)
                    if (!is_zero(bz(r, k))) row.emplace_back(var(k, c), -bz(r, k));
                if (!row.empty()) elim.add_row(std::move(row));
                if (elim.rank() == unknowns) return {};
            }
    }
    std::vector<ExactMatrix> out;
    for (const auto& v : elim.nullspace()) {
        ExactMatrix t(dv, du);
        for (std::size_t r = 0; r < dv; ++r)
            for (std::size_t c = 0; c < du; ++c) t(r, c) = v[var(r, c)];
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace golie
