// One line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "munorm/circle.hpp"
#include "munorm/entropy.hpp"
#include "munorm/random.hpp"

using namespace munorm;
namespace dt = munorm::circle;

namespace {

using Clock = std::chrono::steady_clock;
constexpr Real kPi = std::numbers::pi;

int failures = 0;

struct Deviation {
    Real worst = 0.0;
    void add(Real d) { worst = std::max(worst, std::abs(d)); }
    // Amount by which lhs exceeds rhs.
    void add_excess(Real lhs, Real rhs) { worst = std::max(worst, lhs - rhs); }
};

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(), detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Real seconds_since(Clock::time_point t0) { return std::chrono::duration<Real>(Clock::now() - t0).count(); }

Real frobenius_sq(const CMatrix& W) { return W.cwiseAbs2().sum(); }

Real spectral_norm(const CMatrix& A) {
    if (A.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(A);
    return svd.singularValues()(0);
}

void projector_law() {
    Rng rng(101);
    const auto t0 = Clock::now();
    Deviation d;
    for (int t = 0; t < 200; ++t) {
        const auto space = random_space(rng, rng.between(1, 16));
        const auto X = random_subset(rng, space.size());
        Real mu = 0.0;
        for (int j : X) mu += space.weight(j);
        d.add(mu_norm_sq(space, projector(space, X)) - mu);
    }
    const Real secs = seconds_since(t0);
    report(1, "projector law, 200 trials", d.worst <= 1e-12 && secs < 1.0,
           fmt("max dev %.3g <= 1e-12, %.3g s < 1 s", d.worst, secs));
}

void finite_formula() {
    Rng rng(102);
    Deviation closed, finest;
    for (int t = 0; t < 100; ++t) {
        const int J = rng.between(1, 16);
        const auto space = MeasureSpace::uniform(J);
        const CMatrix W = random_matrix(rng, J, J);
        const Real v = mu_norm_sq(space, W);
        closed.add(v - frobenius_sq(W) / J);
        finest.add(v - m_chi(space, W, finest_partition(J)));
    }
    report(2, "finite formula on uniform spaces, J <= 16", closed.worst <= 1e-12 && finest.worst <= 1e-10,
           fmt("closed form dev %.3g <= 1e-12, finest m_chi dev %.3g <= 1e-10", closed.worst, finest.worst));
}

void multiplication_law() {
    Rng rng(103);
    Deviation d;
    for (int t = 0; t < 100; ++t) {
        const auto space = random_space(rng, rng.between(1, 16));
        const CVector g = random_vector(rng, space.size());
        Real expect = 0.0;
        for (int j = 0; j < space.size(); ++j) expect += space.weight(j) * std::norm(g[j]);
        d.add(mu_norm_sq(space, multiplication(space, g)) - expect);
    }
    report(3, "multiplication law, 100 trials", d.worst <= 1e-12, fmt("max dev %.3g <= %.0e", d.worst, 1e-12));
}

void invariance_battery() {
    Rng rng(104);
    const int trials = 200;
    Deviation tri, hom, left_u, right_k, right_add, left_sub, weighted, lip;
    for (int t = 0; t < trials; ++t) {
        const int J = rng.between(1, 10);
        const auto space = random_space(rng, J);
        const CMatrix A = random_matrix(rng, J, J), B = random_matrix(rng, J, J);
        const Real nA = mu_norm(space, A), nB = mu_norm(space, B);

        tri.add_excess(mu_norm(space, CMatrix(A + B)), nA + nB);

        const Complex lambda = rng.complex_normal();
        hom.add(mu_norm_sq(space, CMatrix(lambda * A)) - std::norm(lambda) * nA * nA);

        const CMatrix U = random_weighted_unitary(rng, space);
        left_u.add(mu_norm_sq(space, CMatrix(U * A)) - nA * nA);

        const auto perm = random_permutation(rng, J);
        const auto pspace = space_for_permutation(rng, perm);
        const CMatrix P = koopman(Endomorphism(pspace, perm));
        right_k.add(mu_norm_sq(pspace, CMatrix(A * P)) - mu_norm_sq(pspace, A));

        const auto chi = random_partition(rng, J, J);
        Real right_sum = 0.0, left_sum = 0.0;
        for (const auto& block : chi.blocks()) {
            const CMatrix pi = projector(space, block);
            right_sum += mu_norm_sq(space, CMatrix(A * pi));
            left_sum += mu_norm_sq(space, CMatrix(pi * A));
        }
        right_add.add(right_sum - nA * nA);
        left_sub.add_excess(nA * nA, left_sum);

        // Split g into pieces g_k = c_k g with sum_k |c_k|^2 = 1 at every atom.
        const CVector g = random_vector(rng, J);
        const int pieces = rng.between(1, 4);
        CMatrix c = random_matrix(rng, J, pieces);
        for (int j = 0; j < J; ++j) c.row(j) /= c.row(j).norm();
        Real split = 0.0;
        for (int k = 0; k < pieces; ++k)
            split += mu_norm_sq(space, CMatrix(A * multiplication(space, g.cwiseProduct(c.col(k)))));
        weighted.add(split - mu_norm_sq(space, CMatrix(A * multiplication(space, g))));

        lip.add_excess(std::abs(nB - nA), operator_norm(space, CMatrix(B - A)));
    }
    const Real worst = std::max({tri.worst, hom.worst, left_u.worst, right_k.worst, right_add.worst, left_sub.worst,
                                 weighted.worst, lip.worst});
    char detail[400];
    std::snprintf(detail, sizeof detail,
                  "%d trials each; triangle %.2g, homogeneity %.2g, left unitary %.2g, right Koopman %.2g, right "
                  "additivity %.2g, left subadditivity %.2g, weighted additivity %.2g, Lipschitz %.2g <= 1e-9",
                  trials, tri.worst, hom.worst, left_u.worst, right_k.worst, right_add.worst, left_sub.worst,
                  weighted.worst, lip.worst);
    report(4, "invariance battery", worst <= 1e-9, detail);
}

void koopman_bridge() {
    Rng rng(105);
    Deviation terms, totals;
    for (int t = 0; t < 50; ++t) {
        const int J = rng.between(1, 6);
        const auto perm = random_permutation(rng, J);
        const auto space = space_for_permutation(rng, perm);
        const Endomorphism F(space, perm);
        const auto chi = random_partition(rng, J, J);
        const int N = rng.between(0, 3);
        const auto quantum = quantum_path_masses(space, koopman(F), chi, N);
        const auto ks = ks_path_measures(space, F, chi, N);
        const int K = chi.block_count();
        for (std::uint64_t c = 0; c < quantum.size(); ++c)
            terms.add(quantum[c] - ks[encode(reversed(decode(c, K, N + 1)), K)]);
        totals.add(quantum_entropy_at(space, koopman(F), chi, N) - ks_entropy_at(space, F, chi, N));
    }
    report(5, "Koopman bridge, 50 trials, N <= 3, J <= 6", terms.worst <= 1e-10 && totals.worst <= 1e-10,
           fmt("per-path dev %.3g, entropy dev %.3g <= 1e-10", terms.worst, totals.worst));
}

void closed_entropy() {
    Rng rng(106);
    bool perm_exact = true;
    for (int t = 0; t < 20; ++t) {
        const int J = rng.between(1, 8);
        const auto perm = random_permutation(rng, J);
        CMatrix P = CMatrix::Zero(J, J);
        for (int j = 0; j < J; ++j) P(perm[j], j) = 1.0;
        perm_exact = perm_exact && quantum_entropy_closed(MeasureSpace::uniform(J), P) == 0.0;
    }
    Deviation had;
    for (int t = 0; t < 20; ++t) {
        const Real a = rng.uniform(0, 2 * kPi), b = rng.uniform(0, 2 * kPi), c = rng.uniform(0, 2 * kPi);
        CMatrix H(2, 2);
        H << std::polar(1.0, a), std::polar(1.0, b), std::polar(1.0, c), -std::polar(1.0, c + b - a);
        had.add(quantum_entropy_closed(MeasureSpace::uniform(2), CMatrix(H / std::sqrt(2.0))) - std::log(2.0));
    }
    Deviation markov;
    for (int t = 0; t < 50; ++t) {
        const int J = rng.between(1, 8);
        const CMatrix U = random_unitary(rng, J);
        markov.add(quantum_entropy_closed(MeasureSpace::uniform(J), U) -
                   markov_entropy_rate(U.cwiseAbs2(), RVector::Constant(J, 1.0 / J)));
    }
    char detail[200];
    std::snprintf(detail, sizeof detail, "permutations exactly 0: %s; modulus-1/sqrt2 dev %.3g <= 1e-12; Markov dev %.3g <= 1e-12",
                  perm_exact ? "yes" : "no", had.worst, markov.worst);
    report(6, "closed entropy", perm_exact && had.worst <= 1e-12 && markov.worst <= 1e-12, detail);
}

void cyclic_dimension() {
    Rng rng(107);
    Deviation d;
    int cases = 0;
    for (int q : {2, 3, 4, 6})
        for (int m : {1, 2, 3}) {
            const int J = q * m;
            std::vector<int> table(J);
            RVector w(J);
            for (int o = 0; o < m; ++o) {
                const Real orbit_weight = rng.uniform(0.1, 1.0);
                for (int s = 0; s < q; ++s) {
                    table[o * q + s] = o * q + (s + 1) % q;
                    w[o * q + s] = orbit_weight;
                }
            }
            const MeasureSpace space(w / w.sum());
            const CyclicAction action(space, q, Endomorphism(space, table));
            for (int n = 0; n < q; ++n, ++cases) d.add(mu_norm_sq(space, cyclic_projector(space, action, n)) - 1.0 / q);
        }
    report(7, "cyclic dimension, q in {2,3,4,6}, m in {1,2,3}", d.worst <= 1e-10,
           fmt("%.0f residues, max dev %.3g <= 1e-10", cases, d.worst));
}

// Largest average of |lambda_k|^2 over windows of L consecutive indices.
Real window_max(const dt::EventuallyPeriodicSeq& s, dt::Index L) {
    const dt::Index lo = -s.k0() - L - 64, hi = s.k0() + L + 64;
    Real sum = 0.0;
    for (dt::Index k = lo; k < lo + L; ++k) sum += std::norm(s[k]);
    Real best = sum;
    for (dt::Index start = lo + 1; start + L - 1 <= hi; ++start) {
        sum += std::norm(s[start + L - 1]) - std::norm(s[start - 1]);
        best = std::max(best, sum);
    }
    return best / static_cast<Real>(L);
}

void rho_oracle() {
    Rng rng(108);
    Deviation d4, d5;
    for (int t = 0; t < 50; ++t) {
        const auto s = random_sequence(rng);
        const Real r = dt::rho(s);
        d4.add(r - window_max(s, 10'000));
        d5.add(r - window_max(s, 100'000));
    }
    report(8, "rho against sliding windows, 50 sequences", d4.worst <= 1e-2 && d5.worst <= 1e-3,
           fmt("L=1e4 dev %.3g <= 1e-2, L=1e5 dev %.3g <= 1e-3", d4.worst, d5.worst));
}

void dt_integral() {
    Rng rng(109);
    Deviation d;
    for (int t = 0; t < 100; ++t) {
        const auto W = random_band_operator(rng, 8, 8, false);
        Real parseval = 0.0;
        for (int l = 0; l < W.tau(); ++l)
            for (dt::Index j = l - W.band(); j <= l + W.band(); ++j) parseval += std::norm(W(l, j));
        d.add(dt::dt_mu_norm_sq(W).quadrature - parseval / W.tau());
    }
    const Real cos2 = dt::dt_mu_norm_sq(dt::dt_from_multiplier({{-1, 1.0}, {1, 1.0}})).quadrature;
    const bool cos_ok = std::abs(cos2 - 2.0) <= 1e-12;
    report(9, "quadrature integral, 100 operators, tau <= 8, band <= 8", d.worst <= 1e-10 && cos_ok,
           fmt("max dev %.3g <= 1e-10; 2cos x gives %.15g", d.worst, cos2));
}

void trace_bound() {
    Rng rng(110);
    Deviation bound, inv;
    for (int t = 0; t < 100; ++t) {
        const auto W = random_band_operator(rng, 8, 8, rng.below(2) == 1);
        bound.add_excess(dt::avg_trace(W), dt::dt_mu_norm_sq(W).quadrature);
        const int power = rng.between(-4, 4);
        const auto U = dt::dt_from_multiplier({{power, std::polar(1.0, rng.uniform(0, 2 * kPi))}});
        const Real base = dt::avg_trace(W);
        inv.add(dt::avg_trace(dt::dt_compose(U, W)) - base);
        inv.add(dt::avg_trace(dt::dt_compose(W, U)) - base);
        inv.add(dt::avg_trace(dt::dt_compose(dt::dt_compose(U, W), dt::dt_adjoint(U))) - base);
    }
    report(10, "trace bound and unitary invariance, 100 operators", bound.worst <= 1e-10 && inv.worst <= 1e-10,
           fmt("bound excess %.3g <= 1e-10, invariance dev %.3g <= 1e-10", std::max(bound.worst, 0.0), inv.worst));
}

void norm_chain() {
    Rng rng(111);
    Deviation chain, submult;
    for (int t = 0; t < 100; ++t) {
        const auto W = random_band_operator(rng, 8, 8, rng.below(2) == 1);
        const int size = rng.between(1, 64);
        const dt::Index first = rng.between(-80, 40);
        chain.add_excess(spectral_norm(dt::finite_section(W, first, first + size - 1)), dt::dt_norm(W));
        const auto V = random_band_operator(rng, 8, 8, rng.below(2) == 1);
        const Real bound = dt::dt_norm(W) * dt::dt_norm(V);
        submult.add_excess(dt::dt_norm(dt::dt_compose(W, V)) / std::max(Real(1), bound), bound / std::max(Real(1), bound));
    }
    report(11, "norm chain, 100 operators, sections <= 64", chain.worst <= 1e-10 && submult.worst <= 1e-10,
           fmt("section excess %.3g <= 1e-10, submultiplicativity excess %.3g (relative) <= 1e-10",
               std::max(chain.worst, 0.0), std::max(submult.worst, 0.0)));
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    projector_law();
    finite_formula();
    multiplication_law();
    invariance_battery();
    koopman_bridge();
    closed_entropy();
    cyclic_dimension();
    rho_oracle();
    dt_integral();
    trace_bound();
    norm_chain();
    const Real secs = seconds_since(t0);
    std::printf("%d of 11 criteria failed; total %.2f s\n", failures, secs);
    return failures == 0 ? 0 : 1;
}
