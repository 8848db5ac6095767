#include "munorm/random.hpp"

#include <cmath>
#include <numbers>

namespace munorm {

Real Rng::normal() {
    const Real u1 = uniform(), u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
    const Real re = normal();
    const Real im = normal();
    return {re, im};
}

MeasureSpace random_space(Rng& rng, int size) {
    RVector w(size);
    for (int j = 0; j < size; ++j) w[j] = rng.uniform(0.1, 1.0);
    return MeasureSpace(w / w.sum());
}

CMatrix random_matrix(Rng& rng, int rows, int cols) {
    CMatrix M(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) M(r, c) = rng.complex_normal();
    return M;
}

CVector random_vector(Rng& rng, int size) { return random_matrix(rng, size, 1).col(0); }

CMatrix random_unitary(Rng& rng, int size) {
    Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, size, size));
    return qr.householderQ() * CMatrix::Identity(size, size);
}

CMatrix random_weighted_unitary(Rng& rng, const MeasureSpace& space) {
    const RVector s = space.weights().cwiseSqrt();
    return s.cwiseInverse().asDiagonal() * random_unitary(rng, space.size()) * s.asDiagonal();
}

IndexSet random_subset(Rng& rng, int size) {
    IndexSet out;
    for (int j = 0; j < size; ++j)
        if (rng.below(2) == 1) out.push_back(j);
    return out;
}

Partition random_partition(Rng& rng, int size, int max_blocks) {
    std::vector<IndexSet> cells(std::max(1, max_blocks));
    for (int j = 0; j < size; ++j) cells[rng.below(static_cast<int>(cells.size()))].push_back(j);
    std::vector<IndexSet> blocks;
    for (auto& c : cells)
        if (!c.empty()) blocks.push_back(std::move(c));
    return Partition(size, std::move(blocks));
}

std::vector<int> random_permutation(Rng& rng, int size) {
    std::vector<int> p(size);
    for (int j = 0; j < size; ++j) p[j] = j;
    for (int j = size - 1; j > 0; --j) std::swap(p[j], p[rng.below(j + 1)]);
    return p;
}

MeasureSpace space_for_permutation(Rng& rng, const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    RVector w = RVector::Zero(n);
    for (int x = 0; x < n; ++x) {
        if (w[x] != 0.0) continue;
        const Real v = rng.uniform(0.1, 1.0);
        for (int y = x; w[y] == 0.0; y = perm[y]) w[y] = v;
    }
    return MeasureSpace(w / w.sum());
}

circle::BandOperator random_band_operator(Rng& rng, int max_tau, int max_band, bool with_corrections) {
    const int tau = rng.between(1, max_tau);
    const int band = rng.between(0, max_band);
    CMatrix c = random_matrix(rng, tau, 2 * band + 1);
    circle::BandOperator::Perturbation p;
    if (with_corrections) {
        const int count = rng.between(1, 4);
        for (int i = 0; i < count; ++i) {
            const circle::Index row = rng.between(-10, 10);
            const circle::Index col = row + rng.between(-band, band);
            p[{row, col}] = rng.complex_normal();
        }
    }
    return circle::BandOperator(tau, band, std::move(c), std::move(p));
}

circle::EventuallyPeriodicSeq random_sequence(Rng& rng, int max_period, int max_k0) {
    auto period = [&] {
        std::vector<Complex> v(rng.between(1, max_period));
        for (auto& x : v) x = rng.complex_normal();
        return v;
    };
    auto left = period();
    auto right = period();
    const circle::Index k0 = rng.between(0, max_k0);
    std::map<circle::Index, Complex> middle;
    for (circle::Index k = -k0 + 1; k < k0; ++k)
        if (rng.below(2) == 1) middle[k] = rng.complex_normal();
    return circle::EventuallyPeriodicSeq(std::move(left), std::move(right), std::move(middle), k0);
}

}  // namespace munorm
