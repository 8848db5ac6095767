#ifndef MUNORM_MU_HPP
#define MUNORM_MU_HPP

#include <vector>

#include "munorm/operator.hpp"

namespace munorm {

/// ||W pi_Y||: the weighted norm of W restricted to the columns in Y.
template <typename Derived>
Real restricted_norm(const MeasureSpace& space, const Eigen::MatrixBase<Derived>& W, const IndexSet& block) {
    check_operator(space, W);
    check_subset(space, block);
    if (block.empty()) return 0.0;
    const RVector s = space.weights().cwiseSqrt();
    CMatrix cols(W.rows(), static_cast<Eigen::Index>(block.size()));
    for (std::size_t c = 0; c < block.size(); ++c)
        cols.col(c) = s.asDiagonal() * W.col(block[c]).template cast<Complex>() / s[block[c]];
    Eigen::JacobiSVD<CMatrix> svd(cols);
    return svd.singularValues()(0);
}

/// M_chi(W) = sum over blocks Y of mu(Y) ||W pi_Y||^2.
template <typename Derived>
Real m_chi(const MeasureSpace& space, const Eigen::MatrixBase<Derived>& W, const Partition& chi) {
    check_partition(space, chi);
    Real total = 0.0;
    for (const auto& block : chi.blocks()) {
        const Real r = restricted_norm(space, W, block);
        total += measure_of(space, block) * r * r;
    }
    return total;
}

/// Squared mu-norm. On an atomic space refinement never increases M_chi, so the
/// infimum is attained at the finest partition, where it reduces to the
/// weighted Frobenius sum  sum_{k,j} mu_k |W_kj|^2.
template <typename Derived>
Real mu_norm_sq(const MeasureSpace& space, const Eigen::MatrixBase<Derived>& W) {
    check_operator(space, W);
    return (space.weights().transpose() * W.cwiseAbs2()).sum();
}

template <typename Derived>
Real mu_norm(const MeasureSpace& space, const Eigen::MatrixBase<Derived>& W) {
    return std::sqrt(mu_norm_sq(space, W));
}

/// Columns are basis vectors of a subspace H.
struct SubspaceBasis {
    static constexpr Real kTolerance = 1e-10;
    CMatrix vectors;
};

/// Weighted modified Gram-Schmidt; numerically dependent vectors are dropped.
SubspaceBasis orthonormalize(const MeasureSpace& space, const CMatrix& vectors);

/// Throws unless <v_i, v_k> = delta_ik within SubspaceBasis::kTolerance.
void check_orthonormal(const MeasureSpace& space, const SubspaceBasis& basis);

/// pi_H f = sum_i <f, v_i> v_i, i.e. V V^H D.
CMatrix subspace_projector(const MeasureSpace& space, const SubspaceBasis& basis);

/// dim_mu(H) = ||pi_H||_mu^2. With orthonormalize set, any spanning set is accepted.
Real mu_dim(const MeasureSpace& space, const SubspaceBasis& basis, bool orthonormalize_first = false);

/// Z_q action generated by an automorphism F_1 with F_1^q = id and every
/// orbit of exact size q.
class CyclicAction {
public:
    CyclicAction(const MeasureSpace& space, int order, Endomorphism generator);

    int order() const { return order_; }
    const Endomorphism& generator() const { return generator_; }

private:
    int order_;
    Endomorphism generator_;
};

/// Projector onto H_n = {f : U_s f = r^{ns} f}, r = exp(2 pi i / q):
/// (1/q) sum_k r^{-nk} U_k.
CMatrix cyclic_projector(const MeasureSpace& space, const CyclicAction& action, int residue);

}  // namespace munorm

#endif  // MUNORM_MU_HPP
