#include "munorm/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

namespace munorm::circle {

namespace {

// Shape-preserving operations on an already valid operator skip the caps.
constexpr Limits kNoLimits{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};

Index floor_mod(Index k, Index p) { return ((k % p) + p) % p; }

Real mean_sq(const std::vector<Complex>& period) {
    Real s = 0.0;
    for (const auto& v : period) s += std::norm(v);
    return s / static_cast<Real>(period.size());
}

void check_finite(Complex v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw ValidationError(std::string("non-finite value in ") + what);
}

int checked_lcm(int a, int b, const Limits& limits) {
    const long long l = std::lcm<long long>(a, b);
    if (l > limits.max_period)
        throw CapError("period " + std::to_string(l) + " exceeds the cap " + std::to_string(limits.max_period));
    return static_cast<int>(l);
}

}  // namespace

EventuallyPeriodicSeq::EventuallyPeriodicSeq(std::vector<Complex> left, std::vector<Complex> right,
                                             std::map<Index, Complex> middle, Index k0)
    : left_(std::move(left)), right_(std::move(right)), middle_(std::move(middle)), k0_(k0) {
    if (left_.empty() || right_.empty()) throw ValidationError("sequence periods must be nonempty");
    if (k0_ < 0) throw ValidationError("k0 must be nonnegative");
    for (const auto& v : left_) check_finite(v, "left period");
    for (const auto& v : right_) check_finite(v, "right period");
    for (const auto& [k, v] : middle_) {
        if (k <= -k0_ || k >= k0_)
            throw ValidationError("middle index " + std::to_string(k) + " lies outside (-k0, k0) = (" +
                                  std::to_string(-k0_) + ", " + std::to_string(k0_) + ")");
        check_finite(v, "middle");
    }
}

EventuallyPeriodicSeq EventuallyPeriodicSeq::constant(Complex c) { return EventuallyPeriodicSeq({c}, {c}); }

EventuallyPeriodicSeq EventuallyPeriodicSeq::finite(std::map<Index, Complex> values) {
    Index k0 = 1;
    for (const auto& [k, v] : values) k0 = std::max(k0, std::abs(k) + 1);
    return EventuallyPeriodicSeq({0.0}, {0.0}, std::move(values), k0);
}

Complex EventuallyPeriodicSeq::operator[](Index k) const {
    if (k >= k0_) return right_[floor_mod(k, static_cast<Index>(right_.size()))];
    if (k <= -k0_) return left_[floor_mod(k, static_cast<Index>(left_.size()))];
    const auto it = middle_.find(k);
    return it == middle_.end() ? Complex(0.0) : it->second;
}

Real EventuallyPeriodicSeq::left_mean_sq() const { return mean_sq(left_); }
Real EventuallyPeriodicSeq::right_mean_sq() const { return mean_sq(right_); }

Real rho(const EventuallyPeriodicSeq& seq) { return std::max(seq.left_mean_sq(), seq.right_mean_sq()); }

Real conv_norm(const EventuallyPeriodicSeq& seq) {
    Real sup = 0.0;
    for (const auto& v : seq.left()) sup = std::max(sup, std::abs(v));
    for (const auto& v : seq.right()) sup = std::max(sup, std::abs(v));
    for (const auto& [k, v] : seq.middle()) sup = std::max(sup, std::abs(v));
    return sup;
}

Real conv_mu_norm_sq(const EventuallyPeriodicSeq& seq) { return rho(seq); }

BandOperator::BandOperator(int tau, int band, CMatrix coeffs, Perturbation perturbation, Limits limits)
    : tau_(tau), band_(band), coeffs_(std::move(coeffs)), perturbation_(std::move(perturbation)) {
    if (tau_ < 1) throw ValidationError("period tau must be at least 1");
    if (band_ < 0) throw ValidationError("band radius must be nonnegative");
    if (tau_ > limits.max_period)
        throw CapError("period " + std::to_string(tau_) + " exceeds the cap " + std::to_string(limits.max_period));
    if (band_ > limits.max_band)
        throw CapError("band " + std::to_string(band_) + " exceeds the cap " + std::to_string(limits.max_band));
    if (coeffs_.rows() != tau_ || coeffs_.cols() != 2 * band_ + 1)
        throw ValidationError("coefficient table must be " + std::to_string(tau_) + " x " +
                              std::to_string(2 * band_ + 1));
    if (!coeffs_.allFinite()) throw ValidationError("coefficient table has non-finite entries");
    for (auto it = perturbation_.begin(); it != perturbation_.end();) {
        const auto [row, col] = it->first;
        if (std::abs(row - col) > band_)
            throw ValidationError("correction at (" + std::to_string(row) + ", " + std::to_string(col) +
                                  ") lies outside the band");
        check_finite(it->second, "perturbation");
        it = it->second == Complex(0.0) ? perturbation_.erase(it) : std::next(it);
    }
}

BandOperator BandOperator::identity() { return BandOperator(1, 0, CMatrix::Ones(1, 1)); }
BandOperator BandOperator::zero() { return BandOperator(1, 0, CMatrix::Zero(1, 1)); }

Complex BandOperator::periodic(Index row, Index col) const {
    const Index c = col - row;
    if (c < -band_ || c > band_) return 0.0;
    return coeffs_(floor_mod(row, tau_), c + band_);
}

Complex BandOperator::operator()(Index row, Index col) const {
    const auto it = perturbation_.find({row, col});
    return periodic(row, col) + (it == perturbation_.end() ? Complex(0.0) : it->second);
}

BandOperator BandOperator::lifted(int new_tau) const {
    if (new_tau % tau_ != 0) throw ValidationError("lifted period must be a multiple of tau");
    CMatrix c(new_tau, coeffs_.cols());
    for (int l = 0; l < new_tau; ++l) c.row(l) = coeffs_.row(l % tau_);
    return BandOperator(new_tau, band_, std::move(c), perturbation_, kNoLimits);
}

namespace {

// Pads the band of a table to `band` with zeros.
CMatrix widened(const BandOperator& W, int band) {
    CMatrix c = CMatrix::Zero(W.tau(), 2 * band + 1);
    c.middleCols(band - W.band(), 2 * W.band() + 1) = W.coeffs();
    return c;
}

}  // namespace

Real dt_norm(const BandOperator& W) {
    Real total = 0.0;
    for (int c = -W.band(); c <= W.band(); ++c) {
        Real sup = W.coeffs().col(c + W.band()).cwiseAbs().maxCoeff();
        for (const auto& [pos, delta] : W.perturbation())
            if (pos.second - pos.first == c) sup = std::max(sup, std::abs(W(pos.first, pos.second)));
        total += sup;
    }
    return total;
}

BandOperator dt_add(const BandOperator& A, const BandOperator& B, Limits limits) {
    const int tau = checked_lcm(A.tau(), B.tau(), limits);
    const int band = std::max(A.band(), B.band());
    const BandOperator a = A.lifted(tau), b = B.lifted(tau);
    CMatrix c = widened(a, band) + widened(b, band);
    BandOperator::Perturbation p = a.perturbation();
    for (const auto& [pos, delta] : b.perturbation()) p[pos] += delta;
    return BandOperator(tau, band, std::move(c), std::move(p), limits);
}

BandOperator dt_scale(Complex lambda, const BandOperator& W) {
    BandOperator::Perturbation p = W.perturbation();
    for (auto& [pos, delta] : p) delta *= lambda;
    return BandOperator(W.tau(), W.band(), lambda * W.coeffs(), std::move(p),
                        kNoLimits);
}

BandOperator dt_compose(const BandOperator& A, const BandOperator& B, Limits limits) {
    const int tau = checked_lcm(A.tau(), B.tau(), limits);
    const int band = A.band() + B.band();
    if (band > limits.max_band)
        throw CapError("band " + std::to_string(band) + " exceeds the cap " + std::to_string(limits.max_band));

    CMatrix c = CMatrix::Zero(tau, 2 * band + 1);
    for (int l = 0; l < tau; ++l)
        for (int off = -band; off <= band; ++off) {
            Complex s = 0.0;
            for (Index m = l - A.band(); m <= l + A.band(); ++m) s += A.periodic(l, m) * B.periodic(m, l + off);
            c(l, off + band) = s;
        }

    // Corrections live where a row of A's corrections or a column of B's meets the band.
    std::set<std::pair<Index, Index>> touched;
    for (const auto& [pos, delta] : A.perturbation())
        for (Index col = pos.second - B.band(); col <= pos.second + B.band(); ++col) touched.insert({pos.first, col});
    for (const auto& [pos, delta] : B.perturbation())
        for (Index row = pos.first - A.band(); row <= pos.first + A.band(); ++row) touched.insert({row, pos.second});

    BandOperator::Perturbation p;
    for (const auto& [row, col] : touched) {
        Complex full = 0.0, base = 0.0;
        for (Index m = row - A.band(); m <= row + A.band(); ++m) {
            full += A(row, m) * B(m, col);
            base += A.periodic(row, m) * B.periodic(m, col);
        }
        if (full != base) p[{row, col}] = full - base;
    }
    return BandOperator(tau, band, std::move(c), std::move(p), limits);
}

BandOperator dt_adjoint(const BandOperator& W) {
    const int band = W.band();
    CMatrix c(W.tau(), 2 * band + 1);
    for (int l = 0; l < W.tau(); ++l)
        for (int off = -band; off <= band; ++off) c(l, off + band) = std::conj(W.periodic(l + off, l));
    BandOperator::Perturbation p;
    for (const auto& [pos, delta] : W.perturbation()) p[{pos.second, pos.first}] = std::conj(delta);
    return BandOperator(W.tau(), band, std::move(c), std::move(p), kNoLimits);
}

BandOperator dt_from_multiplier(const std::map<Index, Complex>& g, Limits limits) {
    Index band = 0;
    for (const auto& [k, v] : g) band = std::max(band, std::abs(k));
    if (band > limits.max_band)
        throw CapError("band " + std::to_string(band) + " exceeds the cap " + std::to_string(limits.max_band));
    CMatrix c = CMatrix::Zero(1, 2 * band + 1);
    // W(l, l + off) = g_{-off}.
    for (const auto& [k, v] : g) c(0, -k + band) = v;
    return BandOperator(1, static_cast<int>(band), std::move(c), {}, limits);
}

Complex w_l(const BandOperator& W, Index l, Real a) {
    Complex s = 0.0;
    for (Index j = l - W.band(); j <= l + W.band(); ++j) s += W(l, j) * std::polar(1.0, static_cast<Real>(l - j) * a);
    return s;
}

Real rho_La(const BandOperator& W, Real a) {
    Real total = 0.0;
    for (int l = 0; l < W.tau(); ++l) {
        Complex s = 0.0;
        for (Index j = l - W.band(); j <= l + W.band(); ++j)
            s += W.periodic(l, j) * std::polar(1.0, static_cast<Real>(l - j) * a);
        total += std::norm(s);
    }
    return total / W.tau();
}

int min_quad_points(const BandOperator& W) { return 2 * (2 * W.band() * W.tau() + 1); }

int default_quad_points(const BandOperator& W) { return std::max(8 * W.band(), min_quad_points(W)); }

MuNormQuadrature dt_mu_norm_sq(const BandOperator& W, int quad_points) {
    if (quad_points < min_quad_points(W))
        throw ValidationError("quadrature needs at least " + std::to_string(min_quad_points(W)) + " points, got " +
                              std::to_string(quad_points));
    // Rectangle rule is exact for trigonometric polynomials of degree < quad_points;
    // rho(L_a) has degree at most 2 band.
    Real sum = 0.0;
    for (int m = 0; m < quad_points; ++m) sum += rho_La(W, 2.0 * std::numbers::pi * m / quad_points);
    return {sum / quad_points, avg_trace(W), quad_points};
}

Real avg_trace(const BandOperator& W) { return W.coeffs().cwiseAbs2().sum() / W.tau(); }

CMatrix finite_section(const BandOperator& W, Index first, Index last) {
    if (last < first) throw ValidationError("finite section over an empty index range");
    const Index n = last - first + 1;
    CMatrix M(n, n);
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) M(r, c) = W(first + r, first + c);
    return M;
}

ConvolutionDiagonal dt_from_conv(const EventuallyPeriodicSeq& seq) { return {seq}; }

Real dt_norm(const ConvolutionDiagonal& D) { return conv_norm(D.seq); }

Complex w_l(const ConvolutionDiagonal& D, Index l, Real) { return D.seq[l]; }

Real rho_La(const ConvolutionDiagonal& D, Real) { return rho(D.seq); }

Real dt_mu_norm_sq(const ConvolutionDiagonal& D) { return rho(D.seq); }

Real avg_trace(const ConvolutionDiagonal& D) { return rho(D.seq); }

BandOperator to_band_operator(const ConvolutionDiagonal& D, Limits limits) {
    const auto& s = D.seq;
    const int pl = static_cast<int>(s.left().size()), pr = static_cast<int>(s.right().size());
    const int tau = checked_lcm(pl, pr, limits);
    CMatrix c(tau, 1);
    for (int l = 0; l < tau; ++l) {
        c(l, 0) = s.right()[l % pr];
        if (s.left()[l % pl] != c(l, 0))
            throw ValidationError("left and right tails differ at residue " + std::to_string(l) + " mod " +
                                  std::to_string(tau) + "; the diagonal is not eventually one periodic sequence");
    }
    BandOperator::Perturbation p;
    for (Index k = -s.k0() + 1; k < s.k0(); ++k) {
        const Complex delta = s[k] - c(floor_mod(k, tau), 0);
        if (delta != Complex(0.0)) p[{k, k}] = delta;
    }
    return BandOperator(tau, 0, std::move(c), std::move(p), limits);
}

}  // namespace munorm::circle
