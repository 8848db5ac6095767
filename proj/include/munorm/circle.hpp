#ifndef MUNORM_CIRCLE_HPP
#define MUNORM_CIRCLE_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "munorm/types.hpp"

// Operators on L^2 of the circle, written in the Fourier basis e^{ikx}.
// Entries W(l, j) map coefficient j of the input to coefficient l of the output.
namespace munorm::circle {

using Index = std::int64_t;

/// Bounded two-sided sequence lambda_k: periodic tails with a finite middle.
///
/// right[k mod p_R] for k >= k0, left[k mod p_L] for k <= -k0 (k0 = 0 puts k = 0
/// on the right), and middle values for -k0 < k < k0, unlisted ones being 0.
/// Period indexing is by k mod p over the whole integer line.
class EventuallyPeriodicSeq {
public:
    EventuallyPeriodicSeq(std::vector<Complex> left, std::vector<Complex> right, std::map<Index, Complex> middle = {},
                          Index k0 = 0);

    static EventuallyPeriodicSeq constant(Complex c);
    /// Finitely supported sequence (both tails zero).
    static EventuallyPeriodicSeq finite(std::map<Index, Complex> values);

    Complex operator[](Index k) const;

    const std::vector<Complex>& left() const { return left_; }
    const std::vector<Complex>& right() const { return right_; }
    const std::map<Index, Complex>& middle() const { return middle_; }
    Index k0() const { return k0_; }

    /// Mean of |lambda_k|^2 over one period of each tail.
    Real left_mean_sq() const;
    Real right_mean_sq() const;

private:
    std::vector<Complex> left_;
    std::vector<Complex> right_;
    std::map<Index, Complex> middle_;
    Index k0_;
};

/// Upper density limsup_{#I -> inf} (1/#I) sum_{k in I} |lambda_k|^2. For this
/// class it is the larger of the two tail means.
Real rho(const EventuallyPeriodicSeq& seq);

/// ||Conv_lambda|| = sup_k |lambda_k|.
Real conv_norm(const EventuallyPeriodicSeq& seq);

/// ||Conv_lambda||_mu^2, which equals rho(lambda).
Real conv_mu_norm_sq(const EventuallyPeriodicSeq& seq);

struct Limits {
    int max_band = 128;
    int max_period = 128;
};

/// tau-periodic banded matrix with W(k + tau, j + tau) = W(k, j), plus finitely
/// many corrections inside the band.
///
/// coeffs is tau x (2 band + 1); coeffs(l, c + band) = W(l, l + c) for l in
/// [0, tau) and c in [-band, band].
class BandOperator {
public:
    using Perturbation = std::map<std::pair<Index, Index>, Complex>;

    BandOperator(int tau, int band, CMatrix coeffs, Perturbation perturbation = {}, Limits limits = {});

    static BandOperator identity();
    static BandOperator zero();

    int tau() const { return tau_; }
    int band() const { return band_; }
    const CMatrix& coeffs() const { return coeffs_; }
    const Perturbation& perturbation() const { return perturbation_; }

    /// Entry of the periodic part.
    Complex periodic(Index row, Index col) const;
    /// Entry including corrections.
    Complex operator()(Index row, Index col) const;

    /// Same operator described with period tau * factor.
    BandOperator lifted(int new_tau) const;

private:
    int tau_;
    int band_;
    CMatrix coeffs_;
    Perturbation perturbation_;
};

/// Sum over diagonals k of sup_j |W(k + j, j)|.
Real dt_norm(const BandOperator& W);

BandOperator dt_add(const BandOperator& A, const BandOperator& B, Limits limits = {});
BandOperator dt_scale(Complex lambda, const BandOperator& W);
/// A B; band radii add and the period becomes lcm(tau_A, tau_B).
BandOperator dt_compose(const BandOperator& A, const BandOperator& B, Limits limits = {});
/// Conjugate transpose (the circle measure is uniform).
BandOperator dt_adjoint(const BandOperator& W);

/// Multiplication by g(x) = sum_k g_k e^{ikx}: the Toeplitz operator W(l, j) = g_{l-j}.
BandOperator dt_from_multiplier(const std::map<Index, Complex>& g, Limits limits = {});

/// w_l(a) = sum_j W(l, j) e^{i (l - j) a}.
Complex w_l(const BandOperator& W, Index l, Real a);

/// rho(L_a) = (1/tau) sum_{l < tau} |w_l(a)|^2 over the periodic part.
Real rho_La(const BandOperator& W, Real a);

struct MuNormQuadrature {
    Real quadrature;   // rectangle rule for (1/2pi) int rho(L_a) da
    Real closed_form;  // (1/tau) sum_{l < tau, j} |W(l, j)|^2
    int points;
};

/// Fewest rectangle-rule points accepted: 2 (2 band tau + 1).
int min_quad_points(const BandOperator& W);
/// max(8 band, min_quad_points).
int default_quad_points(const BandOperator& W);

MuNormQuadrature dt_mu_norm_sq(const BandOperator& W, int quad_points);
inline MuNormQuadrature dt_mu_norm_sq(const BandOperator& W) { return dt_mu_norm_sq(W, default_quad_points(W)); }

/// Upper average of the row masses sum_j |W(l, j)|^2; corrections do not count.
Real avg_trace(const BandOperator& W);

/// Dense block W(l, j) for l, j in [first, last].
CMatrix finite_section(const BandOperator& W, Index first, Index last);

/// Diagonal operator W(k, k) = lambda_k, kept in sequence form since it is
/// periodic only when the two tails agree.
struct ConvolutionDiagonal {
    EventuallyPeriodicSeq seq;
};

ConvolutionDiagonal dt_from_conv(const EventuallyPeriodicSeq& seq);

Real dt_norm(const ConvolutionDiagonal& D);
Complex w_l(const ConvolutionDiagonal& D, Index l, Real a);
Real rho_La(const ConvolutionDiagonal& D, Real a);
Real dt_mu_norm_sq(const ConvolutionDiagonal& D);
Real avg_trace(const ConvolutionDiagonal& D);

/// Band form with tau = lcm(p_L, p_R) and the middle as corrections; throws
/// ValidationError when the tails are not one periodic sequence.
BandOperator to_band_operator(const ConvolutionDiagonal& D, Limits limits = {});

}  // namespace munorm::circle

#endif  // MUNORM_CIRCLE_HPP
