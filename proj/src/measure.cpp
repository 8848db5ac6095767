#include "munorm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace munorm {

MeasureSpace::MeasureSpace(RVector weights) : weights_(std::move(weights)) {
    if (weights_.size() == 0) throw ValidationError("measure space needs at least one atom");
    for (Eigen::Index j = 0; j < weights_.size(); ++j) {
        if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j]))
            throw ValidationError("nonpositive weight at atom " + std::to_string(j + 1) + ": " +
                                  std::to_string(weights_[j]));
    }
    const Real deviation = weights_.sum() - 1.0;
    if (std::abs(deviation) > kSumTolerance)
        throw ValidationError("weights do not sum to 1 (deviation " + std::to_string(deviation) + ")");
}

MeasureSpace MeasureSpace::uniform(int size) {
    if (size < 1) throw ValidationError("measure space needs at least one atom");
    return MeasureSpace(RVector::Constant(size, 1.0 / size));
}

bool MeasureSpace::is_uniform() const {
    const Real target = 1.0 / size();
    return (weights_.array() - target).abs().maxCoeff() <= 1e-12;
}

bool MeasureSpace::operator==(const MeasureSpace& other) const {
    return size() == other.size() && weights_ == other.weights_;
}

MeasureSpace make_space(std::span<const Real> weights) {
    RVector w(static_cast<Eigen::Index>(weights.size()));
    std::copy(weights.begin(), weights.end(), w.data());
    return MeasureSpace(std::move(w));
}

void check_subset(const MeasureSpace& space, const IndexSet& subset) {
    for (int j : subset)
        if (j < 0 || j >= space.size())
            throw ValidationError("index " + std::to_string(j + 1) + " out of range 1.." +
                                  std::to_string(space.size()));
}

Real measure_of(const MeasureSpace& space, const IndexSet& subset) {
    check_subset(space, subset);
    Real total = 0.0;
    for (int j : subset) total += space.weight(j);
    return total;
}

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
    IndexSet sa = a, sb = b, out;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
    return out;
}

IndexSet complement(int size, const IndexSet& subset) {
    std::vector<bool> in(size, false);
    for (int j : subset) in.at(j) = true;
    IndexSet out;
    for (int j = 0; j < size; ++j)
        if (!in[j]) out.push_back(j);
    return out;
}

Partition::Partition(int size, std::vector<IndexSet> blocks) : size_(size), blocks_(std::move(blocks)) {
    if (size_ < 1) throw ValidationError("partition of an empty index set");
    block_of_.assign(size_, -1);
    for (auto& b : blocks_) {
        if (b.empty()) throw ValidationError("partition has an empty block");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const IndexSet& x, const IndexSet& y) { return x.front() < y.front(); });
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        for (int j : blocks_[k]) {
            if (j < 0 || j >= size_)
                throw ValidationError("partition index " + std::to_string(j + 1) + " out of range");
            if (block_of_[j] != -1)
                throw ValidationError("partition blocks overlap at index " + std::to_string(j + 1));
            block_of_[j] = static_cast<int>(k);
        }
    }
    for (int j = 0; j < size_; ++j)
        if (block_of_[j] == -1)
            throw ValidationError("partition does not cover index " + std::to_string(j + 1));
}

Partition finest_partition(int size) {
    std::vector<IndexSet> blocks;
    for (int j = 0; j < size; ++j) blocks.push_back({j});
    return Partition(size, std::move(blocks));
}

Partition trivial_partition(int size) {
    IndexSet all(size);
    for (int j = 0; j < size; ++j) all[j] = j;
    return Partition(size, {all});
}

Partition join(const Partition& chi, const Partition& kappa) {
    if (chi.size() != kappa.size())
        throw ValidationError("join of partitions over different index sets");
    std::map<std::pair<int, int>, IndexSet> cells;
    for (int j = 0; j < chi.size(); ++j)
        cells[{chi.block_of()[j], kappa.block_of()[j]}].push_back(j);
    std::vector<IndexSet> blocks;
    blocks.reserve(cells.size());
    for (auto& [key, cell] : cells) blocks.push_back(std::move(cell));
    return Partition(chi.size(), std::move(blocks));
}

bool is_subpartition(const Partition& fine, const Partition& coarse) {
    if (fine.size() != coarse.size()) return false;
    for (const auto& b : fine.blocks()) {
        const int target = coarse.block_of()[b.front()];
        for (int j : b)
            if (coarse.block_of()[j] != target) return false;
    }
    return true;
}

void check_partition(const MeasureSpace& space, const Partition& chi) {
    if (chi.size() != space.size())
        throw ValidationError("partition over " + std::to_string(chi.size()) + " atoms used on a space of " +
                              std::to_string(space.size()));
}

}  // namespace munorm
