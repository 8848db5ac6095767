#ifndef MUNORM_MEASURE_HPP
#define MUNORM_MEASURE_HPP

#include <span>
#include <vector>

#include "munorm/types.hpp"

namespace munorm {

// Measurable sets on a finite space are sorted lists of 0-based atom indices.
using IndexSet = std::vector<int>;

/// Probability space on the atoms {0, ..., J-1} with strictly positive masses.
class MeasureSpace {
public:
    static constexpr Real kSumTolerance = 1e-9;

    explicit MeasureSpace(RVector weights);

    static MeasureSpace uniform(int size);

    int size() const { return static_cast<int>(weights_.size()); }
    const RVector& weights() const { return weights_; }
    Real weight(int atom) const { return weights_[atom]; }

    /// True when every atom carries mass 1/J (to 1e-12).
    bool is_uniform() const;

    bool operator==(const MeasureSpace& other) const;

private:
    RVector weights_;
};

MeasureSpace make_space(std::span<const Real> weights);

Real measure_of(const MeasureSpace& space, const IndexSet& subset);

// Throws ValidationError when some index falls outside {0..J-1}.
void check_subset(const MeasureSpace& space, const IndexSet& subset);

IndexSet intersect(const IndexSet& a, const IndexSet& b);
IndexSet complement(int size, const IndexSet& subset);

/// Exact set partition of {0..J-1}. Blocks are sorted internally and ordered
/// by their smallest element, so equality is structural.
class Partition {
public:
    Partition(int size, std::vector<IndexSet> blocks);

    int size() const { return size_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<IndexSet>& blocks() const { return blocks_; }
    const IndexSet& block(int k) const { return blocks_[k]; }

    /// block_of()[atom] is the index of the block containing the atom.
    const std::vector<int>& block_of() const { return block_of_; }

    bool operator==(const Partition& other) const = default;

private:
    int size_;
    std::vector<IndexSet> blocks_;
    std::vector<int> block_of_;
};

Partition finest_partition(int size);
inline Partition finest_partition(const MeasureSpace& space) { return finest_partition(space.size()); }
Partition trivial_partition(int size);

Partition join(const Partition& chi, const Partition& kappa);

/// Every block of `fine` lies inside a block of `coarse`.
bool is_subpartition(const Partition& fine, const Partition& coarse);

void check_partition(const MeasureSpace& space, const Partition& chi);

}  // namespace munorm

#endif  // MUNORM_MEASURE_HPP
