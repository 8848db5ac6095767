#ifndef MUNORM_OPERATOR_HPP
#define MUNORM_OPERATOR_HPP

#include <string>
#include <vector>

#include "munorm/measure.hpp"

namespace munorm {

// Operators on L^2 of a finite space are J x J complex matrices, row = output
// atom, column = input atom. All geometry is the weighted product
// <f, g> = sum_j mu_j f_j conj(g_j).

template <typename Derived>
void check_operator(const MeasureSpace& space, const Eigen::MatrixBase<Derived>& W) {
    if (W.rows() != space.size() || W.cols() != space.size())
        throw ValidationError("operator is " + std::to_string(W.rows()) + "x" + std::to_string(W.cols()) +
                              " but the space has " + std::to_string(space.size()) + " atoms");
    if (!W.allFinite()) throw ValidationError("operator has non-finite entries");
}

template <typename DerivedF, typename DerivedG>
Complex inner(const MeasureSpace& space, const Eigen::MatrixBase<DerivedF>& f,
              const Eigen::MatrixBase<DerivedG>& g) {
    // Eigen's dot conjugates the first argument.
    return g.dot(space.weights().asDiagonal() * f.template cast<Complex>());
}

template <typename Derived>
Real norm(const MeasureSpace& space, const Eigen::MatrixBase<Derived>& f) {
    return std::sqrt((space.weights().array() * f.array().abs2()).sum());
}

/// D^{1/2} W D^{-1/2}: the weighted operator expressed in an orthonormal basis.
template <typename Derived>
CMatrix symmetrized(const MeasureSpace& space, const Eigen::MatrixBase<Derived>& W) {
    const RVector s = space.weights().cwiseSqrt();
    return s.asDiagonal() * W.template cast<Complex>() * s.cwiseInverse().asDiagonal();
}

/// sup_{||f|| = 1} ||W f|| in the weighted product.
template <typename Derived>
Real operator_norm(const MeasureSpace& space, const Eigen::MatrixBase<Derived>& W) {
    check_operator(space, W);
    if (W.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(symmetrized(space, W));
    return svd.singularValues()(0);
}

CMatrix projector(const MeasureSpace& space, const IndexSet& subset);

/// f -> g f.
CMatrix multiplication(const MeasureSpace& space, const CVector& g);

// Algebra on a common space. The adjoint is taken in the weighted product,
// W* = D^{-1} W^H D.
CMatrix add(const MeasureSpace& space, const CMatrix& lhs, const CMatrix& rhs);
CMatrix scale(const MeasureSpace& space, Complex lambda, const CMatrix& W);
CMatrix compose(const MeasureSpace& space, const CMatrix& lhs, const CMatrix& rhs);
CMatrix adjoint(const MeasureSpace& space, const CMatrix& W);

/// W* W = id within a relative tolerance (isometry in the weighted product).
bool is_isometry(const MeasureSpace& space, const CMatrix& W, Real tol = 1e-8);
/// Isometry with W W* = id as well.
bool is_unitary(const MeasureSpace& space, const CMatrix& W, Real tol = 1e-8);

/// Measure-preserving self-map F of the atoms, stored as a forward table:
/// mu_j = sum_{k : F(k) = j} mu_k for every atom j.
class Endomorphism {
public:
    static constexpr Real kTolerance = 1e-12;

    Endomorphism(const MeasureSpace& space, std::vector<int> table);

    int size() const { return static_cast<int>(table_.size()); }
    int operator()(int atom) const { return table_[atom]; }
    const std::vector<int>& table() const { return table_; }

    /// F applied n times.
    int iterate(int atom, int times) const;

    bool is_bijective() const { return bijective_; }

    /// F^{-1}(subset).
    IndexSet preimage(const IndexSet& subset) const;
    /// F^{-n}(subset).
    IndexSet preimage(const IndexSet& subset, int times) const;

    /// Composition: (F then G)(x) = G(F(x)); requires both over the same space.
    Endomorphism then(const MeasureSpace& space, const Endomorphism& next) const;

private:
    std::vector<int> table_;
    bool bijective_ = false;
};

Endomorphism identity_map(const MeasureSpace& space);

/// U_F f = f o F, so (U_F)_{jk} = 1 iff k = F(j).
CMatrix koopman(const Endomorphism& F);

}  // namespace munorm

#endif  // MUNORM_OPERATOR_HPP
