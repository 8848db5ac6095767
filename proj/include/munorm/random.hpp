#ifndef MUNORM_RANDOM_HPP
#define MUNORM_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "munorm/circle.hpp"
#include "munorm/mu.hpp"

namespace munorm {

/// Seeded generator with a fully specified output stream: std::mt19937_64
/// (whose sequence the C++ standard fixes) and explicit conversions, so runs
/// reproduce across platforms and can be reimplemented elsewhere.
///
///   uniform()  = (next() >> 11) * 2^-53
///   below(n)   = next() % n
///   normal()   = Box-Muller on uniforms u1, u2: sqrt(-2 log(1 - u1)) cos(2 pi u2)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    Real uniform() { return static_cast<Real>(next() >> 11) * 0x1.0p-53; }
    Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    int between(int lo, int hi) { return lo + below(hi - lo + 1); }
    Real normal();
    Complex complex_normal();

private:
    std::mt19937_64 engine_;
};

/// Weights drawn from [0.1, 1) and normalized.
MeasureSpace random_space(Rng& rng, int size);
CMatrix random_matrix(Rng& rng, int rows, int cols);
CVector random_vector(Rng& rng, int size);
/// Unitary in the standard product (QR of a complex Gaussian matrix).
CMatrix random_unitary(Rng& rng, int size);
/// Unitary in the weighted product of `space`: D^{-1/2} Q D^{1/2}.
CMatrix random_weighted_unitary(Rng& rng, const MeasureSpace& space);
IndexSet random_subset(Rng& rng, int size);
/// Random labelling of the atoms into at most max_blocks blocks.
Partition random_partition(Rng& rng, int size, int max_blocks);
std::vector<int> random_permutation(Rng& rng, int size);
/// Random weights that are constant on the cycles of `perm`, so it preserves them.
MeasureSpace space_for_permutation(Rng& rng, const std::vector<int>& perm);

circle::BandOperator random_band_operator(Rng& rng, int max_tau, int max_band, bool with_corrections = false);
circle::EventuallyPeriodicSeq random_sequence(Rng& rng, int max_period = 6, int max_k0 = 20);

}  // namespace munorm

#endif  // MUNORM_RANDOM_HPP
