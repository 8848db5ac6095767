#include "munorm/operator.hpp"

#include <algorithm>
#include <cmath>

namespace munorm {

CMatrix projector(const MeasureSpace& space, const IndexSet& subset) {
    check_subset(space, subset);
    CVector diag = CVector::Zero(space.size());
    for (int j : subset) diag[j] = 1.0;
    return diag.asDiagonal();
}

CMatrix multiplication(const MeasureSpace& space, const CVector& g) {
    if (g.size() != space.size())
        throw ValidationError("multiplier has length " + std::to_string(g.size()) + ", expected " +
                              std::to_string(space.size()));
    if (!g.allFinite()) throw ValidationError("multiplier has non-finite entries");
    return g.asDiagonal();
}

CMatrix add(const MeasureSpace& space, const CMatrix& lhs, const CMatrix& rhs) {
    check_operator(space, lhs);
    check_operator(space, rhs);
    return lhs + rhs;
}

CMatrix scale(const MeasureSpace& space, Complex lambda, const CMatrix& W) {
    check_operator(space, W);
    return lambda * W;
}

CMatrix compose(const MeasureSpace& space, const CMatrix& lhs, const CMatrix& rhs) {
    check_operator(space, lhs);
    check_operator(space, rhs);
    return lhs * rhs;
}

CMatrix adjoint(const MeasureSpace& space, const CMatrix& W) {
    check_operator(space, W);
    const RVector& w = space.weights();
    return w.cwiseInverse().asDiagonal() * W.adjoint() * w.asDiagonal();
}

namespace {

Real deviation_from_identity(const CMatrix& M) {
    return (M - CMatrix::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

bool is_isometry(const MeasureSpace& space, const CMatrix& W, Real tol) {
    const CMatrix S = symmetrized(space, W);
    return deviation_from_identity(S.adjoint() * S) <= tol;
}

bool is_unitary(const MeasureSpace& space, const CMatrix& W, Real tol) {
    const CMatrix S = symmetrized(space, W);
    return deviation_from_identity(S.adjoint() * S) <= tol && deviation_from_identity(S * S.adjoint()) <= tol;
}

Endomorphism::Endomorphism(const MeasureSpace& space, std::vector<int> table) : table_(std::move(table)) {
    const int n = space.size();
    if (static_cast<int>(table_.size()) != n)
        throw ValidationError("map has " + std::to_string(table_.size()) + " entries, expected " +
                              std::to_string(n));
    RVector pushed = RVector::Zero(n);
    std::vector<int> hits(n, 0);
    for (int k = 0; k < n; ++k) {
        const int j = table_[k];
        if (j < 0 || j >= n)
            throw ValidationError("map sends atom " + std::to_string(k + 1) + " outside 1.." + std::to_string(n));
        pushed[j] += space.weight(k);
        ++hits[j];
    }
    for (int j = 0; j < n; ++j) {
        if (std::abs(pushed[j] - space.weight(j)) > kTolerance)
            throw ValidationError("map is not measure-preserving at atom " + std::to_string(j + 1) +
                                  ": mu(F^-1{j}) = " + std::to_string(pushed[j]) +
                                  " but mu_j = " + std::to_string(space.weight(j)));
    }
    bijective_ = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

int Endomorphism::iterate(int atom, int times) const {
    for (int n = 0; n < times; ++n) atom = table_[atom];
    return atom;
}

IndexSet Endomorphism::preimage(const IndexSet& subset) const { return preimage(subset, 1); }

IndexSet Endomorphism::preimage(const IndexSet& subset, int times) const {
    std::vector<bool> in(table_.size(), false);
    for (int j : subset) in.at(j) = true;
    IndexSet out;
    for (int x = 0; x < size(); ++x)
        if (in[iterate(x, times)]) out.push_back(x);
    return out;
}

Endomorphism Endomorphism::then(const MeasureSpace& space, const Endomorphism& next) const {
    std::vector<int> t(table_.size());
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = next(table_[x]);
    return Endomorphism(space, std::move(t));
}

Endomorphism identity_map(const MeasureSpace& space) {
    std::vector<int> t(space.size());
    for (int j = 0; j < space.size(); ++j) t[j] = j;
    return Endomorphism(space, std::move(t));
}

CMatrix koopman(const Endomorphism& F) {
    CMatrix U = CMatrix::Zero(F.size(), F.size());
    for (int j = 0; j < F.size(); ++j) U(j, F(j)) = 1.0;
    return U;
}

}  // namespace munorm
