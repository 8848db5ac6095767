#include "munorm/mu.hpp"

#include <cmath>
#include <numbers>

namespace munorm {

SubspaceBasis orthonormalize(const MeasureSpace& space, const CMatrix& vectors) {
    if (vectors.rows() != space.size())
        throw ValidationError("basis vectors must have length " + std::to_string(space.size()));
    std::vector<CVector> kept;
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        CVector v = vectors.col(c);
        const Real original = norm(space, v);
        for (const auto& u : kept) v -= inner(space, v, u) * u;
        for (const auto& u : kept) v -= inner(space, v, u) * u;
        const Real n = norm(space, v);
        if (n <= 1e-10 * std::max(original, Real(1))) continue;
        kept.push_back(v / n);
    }
    SubspaceBasis out{CMatrix(space.size(), static_cast<Eigen::Index>(kept.size()))};
    for (std::size_t c = 0; c < kept.size(); ++c) out.vectors.col(c) = kept[c];
    return out;
}

void check_orthonormal(const MeasureSpace& space, const SubspaceBasis& basis) {
    if (basis.vectors.rows() != space.size())
        throw ValidationError("basis vectors must have length " + std::to_string(space.size()));
    const CMatrix gram = basis.vectors.adjoint() * space.weights().asDiagonal() * basis.vectors;
    const Real dev = basis.vectors.cols() == 0
                         ? 0.0
                         : (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (dev > SubspaceBasis::kTolerance)
        throw ValidationError("basis is not orthonormal in the weighted product (max Gram deviation " +
                              std::to_string(dev) + ")");
}

CMatrix subspace_projector(const MeasureSpace& space, const SubspaceBasis& basis) {
    check_orthonormal(space, basis);
    return basis.vectors * basis.vectors.adjoint() * space.weights().asDiagonal();
}

Real mu_dim(const MeasureSpace& space, const SubspaceBasis& basis, bool orthonormalize_first) {
    const SubspaceBasis b = orthonormalize_first ? orthonormalize(space, basis.vectors) : basis;
    return mu_norm_sq(space, subspace_projector(space, b));
}

CyclicAction::CyclicAction(const MeasureSpace& space, int order, Endomorphism generator)
    : order_(order), generator_(std::move(generator)) {
    if (order_ < 1) throw ValidationError("cyclic group order must be positive");
    if (generator_.size() != space.size()) throw ValidationError("generator acts on a different space");
    if (!generator_.is_bijective()) throw ValidationError("cyclic generator must be an automorphism");
    for (int x = 0; x < space.size(); ++x) {
        int y = x;
        for (int s = 1; s <= order_; ++s) {
            y = generator_(y);
            if (y == x && s < order_)
                throw ValidationError("action is not almost free: atom " + std::to_string(x + 1) +
                                      " has orbit of size " + std::to_string(s));
        }
        if (y != x)
            throw ValidationError("generator iterated " + std::to_string(order_) + " times is not the identity");
    }
}

CMatrix cyclic_projector(const MeasureSpace& space, const CyclicAction& action, int residue) {
    const int q = action.order();
    const CMatrix U = koopman(action.generator());
    CMatrix Uk = CMatrix::Identity(space.size(), space.size());
    CMatrix P = CMatrix::Zero(space.size(), space.size());
    const int n = ((residue % q) + q) % q;
    for (int k = 0; k < q; ++k) {
        const Real angle = -2.0 * std::numbers::pi * static_cast<Real>((n * k) % q) / q;
        P += std::polar(1.0, angle) * Uk;
        Uk = Uk * U;
    }
    return P / static_cast<Real>(q);
}

}  // namespace munorm
