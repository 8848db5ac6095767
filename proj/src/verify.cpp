#include "munorm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "munorm/random.hpp"

namespace munorm::verify {

namespace {

using io::json;
using circle::BandOperator;

class Check {
public:
    Check(std::string name, Real tolerance) { result_.name = std::move(name), result_.tolerance = tolerance; }

    // deviation is |lhs - rhs| for identities and max(0, lhs - rhs) for lhs <= rhs.
    void record(Real deviation, const std::function<json()>& instance) {
        ++result_.trials;
        if (!(deviation <= result_.max_deviation)) result_.max_deviation = deviation;
        if (!(deviation <= result_.tolerance)) {
            ++result_.violations;
            if (!result_.failing_instance) {
                json inst = instance();
                inst["trial"] = result_.trials - 1;
                inst["deviation"] = deviation;
                result_.failing_instance = std::move(inst);
            }
        }
    }

    PropertyResult result() const { return result_; }

private:
    PropertyResult result_;
};

Real excess(Real lhs, Real rhs) { return std::max(Real(0), lhs - rhs); }

json describe(const MeasureSpace& space, const CMatrix& W) {
    return {{"space", io::to_json(space)}, {"op", io::to_json(W)}};
}

using Suite = std::function<std::vector<PropertyResult>(Rng&, int)>;

std::vector<PropertyResult> lemma_mupi(Rng& rng, int trials) {
    Check c("mu_norm_sq(pi_X) = mu(X)", 1e-12);
    for (int t = 0; t < trials; ++t) {
        const MeasureSpace space = random_space(rng, rng.between(1, 12));
        const IndexSet X = random_subset(rng, space.size());
        const CMatrix P = projector(space, X);
        c.record(std::abs(mu_norm_sq(space, P) - measure_of(space, X)), [&] { return describe(space, P); });
    }
    return {c.result()};
}

std::vector<PropertyResult> finite_formula(Rng& rng, int trials) {
    Check frob("uniform: mu_norm_sq = (1/J) sum |W_kj|^2", 1e-12);
    Check finest("mu_norm_sq = m_chi(finest)", 1e-10);
    Check inf("mu_norm_sq <= m_chi(chi)", 1e-10);
    for (int t = 0; t < trials; ++t) {
        const int J = rng.between(1, 16);
        const MeasureSpace uni = MeasureSpace::uniform(J);
        const CMatrix W = random_matrix(rng, J, J);
        frob.record(std::abs(mu_norm_sq(uni, W) - W.cwiseAbs2().sum() / J), [&] { return describe(uni, W); });
        const MeasureSpace space = random_space(rng, J);
        const Real mu2 = mu_norm_sq(space, W);
        finest.record(std::abs(mu2 - m_chi(space, W, finest_partition(J))) / std::max(Real(1), mu2),
                      [&] { return describe(space, W); });
        const Partition chi = random_partition(rng, J, rng.between(1, J));
        inf.record(excess(mu2, m_chi(space, W, chi)), [&] { return describe(space, W); });
    }
    return {frob.result(), finest.result(), inf.result()};
}

std::vector<PropertyResult> multiplication_law(Rng& rng, int trials) {
    Check c("mu_norm_sq(g^) = sum mu_j |g_j|^2", 1e-12);
    for (int t = 0; t < trials; ++t) {
        const MeasureSpace space = random_space(rng, rng.between(1, 12));
        const CVector g = random_vector(rng, space.size());
        const Real expected = (space.weights().array() * g.array().abs2()).sum();
        c.record(std::abs(mu_norm_sq(space, multiplication(space, g)) - expected) / std::max(Real(1), expected),
                 [&] { return describe(space, multiplication(space, g)); });
    }
    return {c.result()};
}

std::vector<PropertyResult> subpartition(Rng& rng, int trials) {
    Check c("m_chi(W, chi v kappa) <= m_chi(W, chi)", 1e-9);
    for (int t = 0; t < trials; ++t) {
        const int J = rng.between(1, 10);
        const MeasureSpace space = random_space(rng, J);
        const CMatrix W = random_matrix(rng, J, J);
        const Partition chi = random_partition(rng, J, rng.between(1, J));
        const Partition kappa = random_partition(rng, J, rng.between(1, J));
        c.record(excess(m_chi(space, W, join(chi, kappa)), m_chi(space, W, chi)), [&] { return describe(space, W); });
    }
    return {c.result()};
}

std::vector<PropertyResult> invariance(Rng& rng, int trials) {
    Check tri("triangle", 1e-9), hom("homogeneity", 1e-9), left("left unitary invariance", 1e-9),
        right_uni("right unitary invariance (uniform)", 1e-9), right_koop("right Koopman invariance", 1e-9),
        sub("submultiplicativity", 1e-9), lip("Lipschitz bound", 1e-9), radd("right additivity", 1e-9),
        lsub("left subadditivity", 1e-9), wadd("weighted right additivity", 1e-9);
    for (int t = 0; t < trials; ++t) {
        const int J = rng.between(1, 8);
        const MeasureSpace space = random_space(rng, J);
        const CMatrix W1 = random_matrix(rng, J, J), W2 = random_matrix(rng, J, J);
        auto inst = [&] { return json{{"space", io::to_json(space)}, {"W1", io::to_json(W1)}, {"W2", io::to_json(W2)}}; };

        tri.record(excess(mu_norm(space, W1 + W2), mu_norm(space, W1) + mu_norm(space, W2)), inst);

        const Complex lambda = rng.complex_normal();
        hom.record(std::abs(mu_norm_sq(space, lambda * W1) - std::norm(lambda) * mu_norm_sq(space, W1)) /
                       std::max(Real(1), std::norm(lambda) * mu_norm_sq(space, W1)),
                   inst);

        const CMatrix U = random_weighted_unitary(rng, space);
        left.record(std::abs(mu_norm_sq(space, U * W1) - mu_norm_sq(space, W1)) / std::max(Real(1), mu_norm_sq(space, W1)),
                    inst);

        const MeasureSpace uni = MeasureSpace::uniform(J);
        const CMatrix V = random_unitary(rng, J);
        right_uni.record(std::abs(mu_norm_sq(uni, W1 * V) - mu_norm_sq(uni, W1)) / std::max(Real(1), mu_norm_sq(uni, W1)),
                         inst);

        const auto perm = random_permutation(rng, J);
        const MeasureSpace pspace = space_for_permutation(rng, perm);
        const CMatrix UF = koopman(Endomorphism(pspace, perm));
        right_koop.record(std::abs(mu_norm_sq(pspace, W1 * UF) - mu_norm_sq(pspace, W1)) /
                              std::max(Real(1), mu_norm_sq(pspace, W1)),
                          inst);

        const Real n1 = operator_norm(space, W1);
        sub.record(excess(mu_norm_sq(space, W1 * W2), n1 * n1 * mu_norm_sq(space, W2)) /
                       std::max(Real(1), n1 * n1 * mu_norm_sq(space, W2)),
                   inst);

        lip.record(excess(std::abs(mu_norm(space, W2) - mu_norm(space, W1)), operator_norm(space, W2 - W1)), inst);

        const Partition kappa = random_partition(rng, J, rng.between(1, J));
        Real right_sum = 0.0, left_sum = 0.0;
        for (const auto& block : kappa.blocks()) {
            right_sum += mu_norm_sq(space, W1 * projector(space, block));
            left_sum += mu_norm_sq(space, projector(space, block) * W1);
        }
        const Real base = mu_norm_sq(space, W1);
        radd.record(std::abs(base - right_sum) / std::max(Real(1), base), inst);
        lsub.record(excess(base, left_sum) / std::max(Real(1), base), inst);

        // g_1..g_K with sum |g_k|^2 = |g|^2 pointwise.
        const int K = rng.between(1, 4);
        CMatrix G = random_matrix(rng, J, K);
        CVector g(J);
        for (int x = 0; x < J; ++x) g[x] = std::polar(G.row(x).norm(), rng.uniform(0.0, 2.0 * std::numbers::pi));
        Real parts = 0.0;
        for (int k = 0; k < K; ++k) parts += mu_norm_sq(space, W1 * multiplication(space, G.col(k)));
        const Real whole = mu_norm_sq(space, W1 * multiplication(space, g));
        wadd.record(std::abs(parts - whole) / std::max(Real(1), whole), inst);
    }
    return {tri.result(),  hom.result(), left.result(), right_uni.result(), right_koop.result(),
            sub.result(),  lip.result(), radd.result(), lsub.result(),      wadd.result()};
}

std::vector<PropertyResult> projector_product(Rng& rng, int trials) {
    Check c("||pi_{Y_K} U_F ... U_F pi_{Y_0}||_mu^2 = mu(Y_K cap ... cap F^-K(Y_0))", 1e-12);
    for (int t = 0; t < trials; ++t) {
        const int J = rng.between(1, 8);
        const auto perm = random_permutation(rng, J);
        const MeasureSpace space = space_for_permutation(rng, perm);
        const Endomorphism F(space, perm);
        const CMatrix U = koopman(F);
        const int K = rng.between(0, 4);
        std::vector<IndexSet> Y;
        for (int k = 0; k <= K; ++k) Y.push_back(random_subset(rng, J));
        CMatrix X = projector(space, Y[0]);
        for (int k = 1; k <= K; ++k) X = projector(space, Y[k]) * U * X;
        IndexSet cell = Y[K];
        for (int k = 1; k <= K; ++k) cell = intersect(cell, F.preimage(Y[K - k], k));
        c.record(std::abs(mu_norm_sq(space, X) - measure_of(space, cell)), [&] { return describe(space, U); });
    }
    return {c.result()};
}

std::vector<PropertyResult> koopman_bridge(Rng& rng, int trials) {
    Check terms("path masses match KS cells (digits reversed)", 1e-10);
    Check total("quantum_entropy_at(U_F) = ks_entropy_at(F)", 1e-10);
    for (int t = 0; t < trials; ++t) {
        const int J = rng.between(1, 6);
        const auto perm = random_permutation(rng, J);
        const MeasureSpace space = space_for_permutation(rng, perm);
        const Endomorphism F(space, perm);
        const Partition chi = random_partition(rng, J, rng.between(1, J));
        const int N = rng.between(0, 3);
        const CMatrix U = koopman(F);
        const auto q = quantum_path_masses(space, U, chi, N);
        Real worst = 0.0;
        for (std::uint64_t code = 0; code < q.size(); ++code) {
            const MultiIndex j = decode(code, chi.block_count(), N + 1);
            worst = std::max(worst, std::abs(q[code] - ks_path_measure(space, F, chi, reversed(j))));
        }
        auto inst = [&] {
            return json{{"space", io::to_json(space)}, {"map", perm}, {"partition", io::to_json(chi)}, {"N", N}};
        };
        terms.record(worst, inst);
        total.record(std::abs(quantum_entropy_at(space, U, chi, N) - ks_entropy_at(space, F, chi, N)), inst);
    }
    return {terms.result(), total.result()};
}

std::vector<PropertyResult> closed_entropy(Rng& rng, int trials) {
    Check perm_zero("closed entropy of a permutation = 0", 0.0);
    Check markov("closed entropy = Markov rate of |U|^2", 1e-12);
    Check diffs("rate differences = closed entropy (finest, uniform)", 1e-9);
    for (int t = 0; t < trials; ++t) {
        const int J = rng.between(1, 6);
        const MeasureSpace uni = MeasureSpace::uniform(J);
        const CMatrix P = koopman(Endomorphism(uni, random_permutation(rng, J)));
        perm_zero.record(std::abs(quantum_entropy_closed(uni, P)), [&] { return describe(uni, P); });
        const CMatrix U = random_unitary(rng, J);
        const RMatrix T = U.cwiseAbs2();
        const RVector nu = RVector::Constant(J, 1.0 / J);
        // |U|^2 rows sum to 1 only up to rounding; renormalize for the stochastic check.
        const RMatrix Tn = T.array().colwise() / T.rowwise().sum().array();
        markov.record(std::abs(quantum_entropy_closed(uni, U) - markov_entropy_rate(Tn, nu)), [&] { return describe(uni, U); });
        if (J <= 4) {
            const auto report = quantum_entropy_rate(uni, U, finest_partition(J), 3);
            Real worst = 0.0;
            for (Real d : report.differences) worst = std::max(worst, std::abs(d - *report.closed_form));
            diffs.record(worst, [&] { return describe(uni, U); });
        }
    }
    return {perm_zero.result(), markov.result(), diffs.result()};
}

std::vector<PropertyResult> cyclic_dim(Rng& rng, int trials) {
    Check c("mu_norm_sq(pi_{H_n}) = 1/q", 1e-10);
    Check idem("pi_{H_n} idempotent and self-adjoint", 1e-10);
    for (int t = 0; t < trials; ++t) {
        const int q = rng.between(1, 6), m = rng.between(1, 3);
        const int J = q * m;
        // Orbit weights are constant; orbits are laid out through a random relabelling.
        const auto relabel = random_permutation(rng, J);
        RVector w(J);
        std::vector<int> gen(J);
        for (int o = 0; o < m; ++o) {
            const Real v = rng.uniform(0.1, 1.0);
            for (int s = 0; s < q; ++s) {
                w[relabel[o * q + s]] = v;
                gen[relabel[o * q + s]] = relabel[o * q + (s + 1) % q];
            }
        }
        const MeasureSpace space(w / w.sum());
        const CyclicAction action(space, q, Endomorphism(space, gen));
        for (int n = 0; n < q; ++n) {
            const CMatrix P = cyclic_projector(space, action, n);
            c.record(std::abs(mu_norm_sq(space, P) - 1.0 / q), [&] { return describe(space, P); });
            idem.record(std::max((P * P - P).cwiseAbs().maxCoeff(), (adjoint(space, P) - P).cwiseAbs().maxCoeff()),
                        [&] { return describe(space, P); });
        }
    }
    return {c.result(), idem.result()};
}

// Largest window average over windows of length L that start anywhere a
// distinct window can start (far-out windows repeat by periodicity).
Real window_max(const circle::EventuallyPeriodicSeq& s, circle::Index L) {
    const circle::Index pad = static_cast<circle::Index>(std::max(s.left().size(), s.right().size()));
    const circle::Index lo = -s.k0() - L - 2 * pad, hi = s.k0() + L + 2 * pad;
    std::vector<Real> prefix{0.0};
    for (circle::Index k = lo; k <= hi; ++k) prefix.push_back(prefix.back() + std::norm(s[k]));
    Real best = 0.0;
    for (std::size_t start = 0; start + L < prefix.size(); ++start)
        best = std::max(best, (prefix[start + L] - prefix[start]) / static_cast<Real>(L));
    return best;
}

std::vector<PropertyResult> rho_oracle(Rng& rng, int trials) {
    Check c("rho = window maximum, L = 1e4", 1e-2);
    for (int t = 0; t < trials; ++t) {
        const auto s = random_sequence(rng);
        c.record(std::abs(circle::rho(s) - window_max(s, 10000)), [&] { return json{{"seq", io::to_json(s)}}; });
    }
    return {c.result()};
}

std::vector<PropertyResult> diagonal_type(Rng& rng, int trials) {
    Check parseval("quadrature = closed form", 1e-10), bound("avg_trace <= dt_mu_norm_sq", 1e-10),
        trace_inv("avg_trace invariant under unitary products", 1e-10), chain("||section|| <= dt_norm", 1e-10),
        submult("dt_norm(AB) <= dt_norm(A) dt_norm(B)", 1e-10), tri("dt_norm(A+B) <= dt_norm(A)+dt_norm(B)", 1e-10),
        adj("dt_norm(W*) = dt_norm(W)", 1e-12), wbound("|w_l(a)| <= dt_norm", 1e-10),
        cont("rho(L_a) Lipschitz on a 2^10 grid", 1e-12);
    for (int t = 0; t < trials; ++t) {
        const BandOperator W = random_band_operator(rng, 8, 8, rng.below(2) == 1);
        const BandOperator V = random_band_operator(rng, 8, 8, rng.below(2) == 1);
        auto inst = [&] { return json{{"W", io::to_json(W)}, {"V", io::to_json(V)}}; };
        const auto q = circle::dt_mu_norm_sq(W);
        parseval.record(std::abs(q.quadrature - q.closed_form) / std::max(Real(1), q.closed_form), inst);
        bound.record(excess(circle::avg_trace(W), q.quadrature), inst);

        const int power = rng.between(-3, 3);
        BandOperator U = circle::dt_from_multiplier({{power, std::polar(1.0, rng.uniform(0.0, 6.28))}});
        const Real base = circle::avg_trace(W);
        const Real left = circle::avg_trace(circle::dt_compose(U, W));
        const Real right = circle::avg_trace(circle::dt_compose(W, U));
        trace_inv.record(std::max(std::abs(left - base), std::abs(right - base)) / std::max(Real(1), base), inst);

        const int n = rng.between(1, 64);
        const circle::Index first = rng.between(-40, 40);
        const CMatrix S = circle::finite_section(W, first, first + n - 1);
        Eigen::JacobiSVD<CMatrix> svd(S);
        chain.record(excess(svd.singularValues()(0), circle::dt_norm(W)), inst);

        submult.record(excess(circle::dt_norm(circle::dt_compose(W, V)), circle::dt_norm(W) * circle::dt_norm(V)), inst);
        tri.record(excess(circle::dt_norm(circle::dt_add(W, V)), circle::dt_norm(W) + circle::dt_norm(V)), inst);
        adj.record(std::abs(circle::dt_norm(circle::dt_adjoint(W)) - circle::dt_norm(W)), inst);

        const circle::Index l = rng.between(-30, 30);
        wbound.record(excess(std::abs(circle::w_l(W, l, rng.uniform(0.0, 2.0 * std::numbers::pi))), circle::dt_norm(W)),
                      inst);

        const int grid = 1 << 10;
        const Real step = 2.0 * std::numbers::pi / grid;
        const Real C = circle::dt_norm(W) * circle::dt_norm(W) * (W.band() * W.tau() * 4);
        Real worst = 0.0;
        Real prev = circle::rho_La(W, 0.0);
        for (int m = 1; m <= grid; ++m) {
            const Real cur = circle::rho_La(W, m * step);
            worst = std::max(worst, excess(std::abs(cur - prev), C * step));
            prev = cur;
        }
        cont.record(worst, inst);
    }
    return {parseval.result(), bound.result(), trace_inv.result(), chain.result(), submult.result(),
            tri.result(),      adj.result(),   wbound.result(),    cont.result()};
}

const std::vector<std::pair<std::string, Suite>>& registry() {
    static const std::vector<std::pair<std::string, Suite>> suites = {
        {"lemma-mupi", lemma_mupi},
        {"finite-formula", finite_formula},
        {"multiplication", multiplication_law},
        {"subpartition", subpartition},
        {"invariance", invariance},
        {"projector-product", projector_product},
        {"koopman-bridge", koopman_bridge},
        {"closed-entropy", closed_entropy},
        {"cyclic-dim", cyclic_dim},
        {"rho-oracle", rho_oracle},
        {"diagonal-type", diagonal_type},
    };
    return suites;
}

// Single-property aliases into the suites above.
const std::map<std::string, std::pair<std::string, std::string>>& aliases() {
    static const std::map<std::string, std::pair<std::string, std::string>> a = {
        {"triangle", {"invariance", "triangle"}},
        {"trace-bound", {"diagonal-type", "avg_trace <= dt_mu_norm_sq"}},
        {"parseval", {"diagonal-type", "quadrature = closed form"}},
        {"norm-chain", {"diagonal-type", "||section|| <= dt_norm"}},
    };
    return a;
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.violations == 0; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, suite] : registry()) n.push_back(name);
        for (const auto& [name, target] : aliases()) n.push_back(name);
        n.push_back("all");
        return n;
    }();
    return names;
}

SuiteReport verify_suite(const std::string& name, int trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("trials must be positive");
    SuiteReport report{name, seed, trials, {}};
    auto run = [&](const Suite& suite) {
        Rng rng(seed);
        auto results = suite(rng, trials);
        report.properties.insert(report.properties.end(), results.begin(), results.end());
    };
    if (name == "all") {
        for (const auto& [n, suite] : registry()) run(suite);
        return report;
    }
    for (const auto& [n, suite] : registry())
        if (n == name) {
            run(suite);
            return report;
        }
    if (const auto it = aliases().find(name); it != aliases().end()) {
        for (const auto& [n, suite] : registry())
            if (n == it->second.first) {
                Rng rng(seed);
                for (auto& p : suite(rng, trials))
                    if (p.name == it->second.second) report.properties.push_back(std::move(p));
            }
        return report;
    }
    throw ValidationError("unknown verify suite '" + name + "'");
}

io::json to_json(const SuiteReport& report) {
    json props = json::array();
    for (const auto& p : report.properties) {
        json j = {{"name", p.name},
                  {"trials", p.trials},
                  {"violations", p.violations},
                  {"max_deviation", p.max_deviation},
                  {"tolerance", p.tolerance},
                  {"passed", p.violations == 0}};
        if (p.failing_instance) j["failing_instance"] = *p.failing_instance;
        props.push_back(std::move(j));
    }
    return {{"suite", report.suite},
            {"seed", report.seed},
            {"trials", report.trials},
            {"passed", report.passed()},
            {"properties", props}};
}

}  // namespace munorm::verify
