#include "munorm/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace munorm {

std::uint64_t encode(const MultiIndex& j, int base) {
    std::uint64_t code = 0;
    for (int n = j.length() - 1; n >= 0; --n) code = code * static_cast<std::uint64_t>(base) + j.digits[n];
    return code;
}

MultiIndex decode(std::uint64_t code, int base, int length) {
    MultiIndex j{std::vector<int>(length)};
    for (int n = 0; n < length; ++n) {
        j.digits[n] = static_cast<int>(code % base);
        code /= base;
    }
    return j;
}

MultiIndex reversed(const MultiIndex& j) {
    MultiIndex r = j;
    std::reverse(r.digits.begin(), r.digits.end());
    return r;
}

std::uint64_t checked_path_count(int base, int length, std::uint64_t cap) {
    if (base < 1 || length < 1) throw ValidationError("multiindex needs at least one digit and one block");
    std::uint64_t count = 1;
    bool overflow = false;
    for (int n = 0; n < length; ++n) {
        if (count > std::numeric_limits<std::uint64_t>::max() / base) {
            overflow = true;
            break;
        }
        count *= base;
    }
    if (overflow || count > cap)
        throw CapError("path enumeration needs " +
                       (overflow ? std::to_string(base) + "^" + std::to_string(length) : std::to_string(count)) +
                       " terms, cap is " + std::to_string(cap));
    return count;
}

namespace {

void check_digits(const Partition& chi, const MultiIndex& j) {
    if (j.digits.empty()) throw ValidationError("multiindex needs at least one digit");
    for (int d : j.digits)
        if (d < 0 || d >= chi.block_count())
            throw ValidationError("multiindex digit " + std::to_string(d) + " outside 0.." +
                                  std::to_string(chi.block_count() - 1));
}

// Rows of U restricted to block `to`, columns restricted to block `from`.
CMatrix block_of(const CMatrix& U, const IndexSet& to, const IndexSet& from) {
    CMatrix B(static_cast<Eigen::Index>(to.size()), static_cast<Eigen::Index>(from.size()));
    for (std::size_t r = 0; r < to.size(); ++r)
        for (std::size_t c = 0; c < from.size(); ++c) B(r, c) = U(to[r], from[c]);
    return B;
}

struct PathWalker {
    const MeasureSpace& space;
    const Partition& chi;
    std::vector<std::vector<CMatrix>> blocks;  // blocks[to][from]
    int length;
    std::vector<Real>& out;

    // `reduced` holds the path operator's rows in block `last`, columns in block j_0.
    void walk(const CMatrix& reduced, int depth, int last, std::uint64_t code, std::uint64_t place) {
        if (depth == length) {
            const IndexSet& rows = chi.block(last);
            Real m = 0.0;
            for (std::size_t r = 0; r < rows.size(); ++r) m += space.weight(rows[r]) * reduced.row(r).squaredNorm();
            out[code] = m;
            return;
        }
        if (reduced.cwiseAbs().maxCoeff() == 0.0) return;
        const int base = chi.block_count();
        for (int b = 0; b < base; ++b)
            walk(blocks[b][last] * reduced, depth + 1, b, code + place * b, place * base);
    }
};

}  // namespace

CMatrix path_operator(const MeasureSpace& space, const CMatrix& U, const Partition& chi, const MultiIndex& j) {
    check_operator(space, U);
    check_partition(space, chi);
    check_digits(chi, j);
    CMatrix X = projector(space, chi.block(j.digits[0]));
    for (int n = 1; n < j.length(); ++n) X = projector(space, chi.block(j.digits[n])) * U * X;
    return X;
}

std::vector<Real> quantum_path_masses(const MeasureSpace& space, const CMatrix& U, const Partition& chi, int N,
                                      std::uint64_t cap) {
    check_operator(space, U);
    check_partition(space, chi);
    if (N < 0) throw ValidationError("N must be nonnegative");
    const int base = chi.block_count();
    const std::uint64_t count = checked_path_count(base, N + 1, cap);
    std::vector<Real> out(count, 0.0);
    PathWalker walker{space, chi, {}, N + 1, out};
    walker.blocks.resize(base);
    for (int to = 0; to < base; ++to)
        for (int from = 0; from < base; ++from) walker.blocks[to].push_back(block_of(U, chi.block(to), chi.block(from)));
    for (int b = 0; b < base; ++b) {
        const auto size = static_cast<Eigen::Index>(chi.block(b).size());
        walker.walk(CMatrix::Identity(size, size), 1, b, static_cast<std::uint64_t>(b), base);
    }
    return out;
}

namespace {

// Sums of masses that are exactly 1 can round slightly below zero.
Real settle(Real h) { return (h < 0 && h > -1e-12) ? Real(0) : h; }

}  // namespace

Real entropy_of(const std::vector<Real>& masses) {
    Real h = 0.0;
    for (Real m : masses) h -= xlogx(m);
    return h;
}

Real quantum_entropy_at(const MeasureSpace& space, const CMatrix& U, const Partition& chi, int N,
                        std::uint64_t cap) {
    return settle(entropy_of(quantum_path_masses(space, U, chi, N, cap)));
}

EntropyReport quantum_entropy_rate(const MeasureSpace& space, const CMatrix& U, const Partition& chi, int N_max,
                                   std::uint64_t cap) {
    if (N_max < 2) throw ValidationError("N_max must be at least 2");
    check_operator(space, U);
    checked_path_count(chi.block_count(), N_max + 1, cap);
    EntropyReport report;
    report.finest_partition = chi.block_count() == space.size();
    for (int N = 0; N <= N_max; ++N) {
        const Real h = quantum_entropy_at(space, U, chi, N, cap);
        report.n.push_back(N + 1);
        report.values.push_back(h);
        report.rates.push_back(h / (N + 1));
    }
    for (std::size_t i = 0; i + 1 < report.values.size(); ++i)
        report.differences.push_back(report.values[i + 1] - report.values[i]);
    if (space.is_uniform() && is_unitary(space, U)) report.closed_form = quantum_entropy_closed(space, U);
    return report;
}

Real quantum_entropy_closed(const MeasureSpace& space, const CMatrix& U) {
    check_operator(space, U);
    if (!space.is_uniform()) throw ValidationError("closed-form entropy needs a uniform space");
    if (!is_unitary(space, U)) throw ValidationError("closed-form entropy needs a unitary operator (tolerance 1e-8)");
    Real h = 0.0;
    for (Eigen::Index r = 0; r < U.rows(); ++r)
        for (Eigen::Index c = 0; c < U.cols(); ++c) h -= xlogx(std::norm(U(r, c)));
    return settle(h / static_cast<Real>(space.size()));
}

Real ks_path_measure(const MeasureSpace& space, const Endomorphism& F, const Partition& chi, const MultiIndex& j) {
    check_partition(space, chi);
    check_digits(chi, j);
    if (F.size() != space.size()) throw ValidationError("map acts on a different space");
    IndexSet cell = chi.block(j.digits[0]);
    for (int n = 1; n < j.length() && !cell.empty(); ++n)
        cell = intersect(cell, F.preimage(chi.block(j.digits[n]), n));
    return measure_of(space, cell);
}

std::vector<Real> ks_path_measures(const MeasureSpace& space, const Endomorphism& F, const Partition& chi, int N,
                                   std::uint64_t cap) {
    check_partition(space, chi);
    if (F.size() != space.size()) throw ValidationError("map acts on a different space");
    if (N < 0) throw ValidationError("N must be nonnegative");
    const int base = chi.block_count();
    std::vector<Real> out(checked_path_count(base, N + 1, cap), 0.0);
    // Each atom lies in exactly one cell: the one labelled by its itinerary.
    for (int x = 0; x < space.size(); ++x) {
        std::uint64_t code = 0, place = 1;
        int y = x;
        for (int n = 0; n <= N; ++n) {
            code += place * chi.block_of()[y];
            place *= base;
            y = F(y);
        }
        out[code] += space.weight(x);
    }
    return out;
}

Real ks_entropy_at(const MeasureSpace& space, const Endomorphism& F, const Partition& chi, int N,
                   std::uint64_t cap) {
    return settle(entropy_of(ks_path_measures(space, F, chi, N, cap)));
}

Real markov_entropy_rate(const RMatrix& P, const RVector& nu) {
    if (P.rows() != P.cols() || P.rows() != nu.size())
        throw ValidationError("transition matrix and distribution sizes disagree");
    if (!P.allFinite() || !nu.allFinite()) throw ValidationError("non-finite entries");
    if (P.minCoeff() < 0.0) throw ValidationError("transition matrix has negative entries");
    for (Eigen::Index r = 0; r < P.rows(); ++r)
        if (std::abs(P.row(r).sum() - 1.0) > 1e-10)
            throw ValidationError("row " + std::to_string(r + 1) + " of the transition matrix sums to " +
                                  std::to_string(P.row(r).sum()));
    if (nu.minCoeff() < 0.0 || std::abs(nu.sum() - 1.0) > 1e-9)
        throw ValidationError("stationary vector is not a probability distribution");
    Real h = 0.0;
    for (Eigen::Index r = 0; r < P.rows(); ++r)
        for (Eigen::Index c = 0; c < P.cols(); ++c) h -= nu[r] * xlogx(P(r, c));
    return settle(h);
}

}  // namespace munorm
