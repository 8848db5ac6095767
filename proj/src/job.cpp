#include "munorm/job.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numbers>

#include "munorm/verify.hpp"

namespace munorm::job {

namespace {

using io::json;

// Tolerances each reported quantity is computed (or checked) against.
constexpr Real kNormTolerance = 1e-10;
constexpr Real kSumTolerance = 1e-12;

struct Context {
    const JobSpec& job;
    json results = json::object();
    json tolerances = json::object();
    json diagnostics = json::object();

    void put(const std::string& key, json value, Real tolerance) {
        results[key] = std::move(value);
        tolerances[key] = tolerance;
    }

    const std::string& path(const std::string& role) const {
        const auto it = job.inputs.find(role);
        if (it == job.inputs.end() || it->second.empty())
            throw ValidationError("command '" + job.command + "' needs --" + role);
        return it->second;
    }
    bool has(const std::string& role) const {
        const auto it = job.inputs.find(role);
        return it != job.inputs.end() && !it->second.empty();
    }
    json load(const std::string& role) const { return io::read_json_file(path(role)); }

    MeasureSpace space() const { return io::space_from_json(load("space")); }
    Partition partition_or_finest(const MeasureSpace& space) const {
        return has("partition") ? io::partition_from_json(load("partition"), space.size()) : finest_partition(space);
    }
    Real log_scale() const { return job.log_base == "2" ? 1.0 / std::numbers::ln2 : 1.0; }
};

void mu_norm_cmd(Context& ctx) {
    const MeasureSpace space = ctx.space();
    const CMatrix W = io::matrix_from_json(ctx.load("op"));
    check_operator(space, W);
    ctx.put("mu_norm_sq", mu_norm_sq(space, W), kSumTolerance);
    ctx.put("operator_norm", operator_norm(space, W), kNormTolerance);
    if (ctx.has("partition"))
        ctx.put("m_chi", m_chi(space, W, io::partition_from_json(ctx.load("partition"), space.size())), kNormTolerance);
}

void m_chi_cmd(Context& ctx) {
    const MeasureSpace space = ctx.space();
    const CMatrix W = io::matrix_from_json(ctx.load("op"));
    const Partition chi = ctx.partition_or_finest(space);
    json blocks = json::array();
    for (const auto& b : chi.blocks()) {
        const Real r = restricted_norm(space, W, b);
        blocks.push_back({{"measure", measure_of(space, b)}, {"restricted_norm_sq", r * r}});
    }
    ctx.put("m_chi", m_chi(space, W, chi), kNormTolerance);
    ctx.put("mu_norm_sq", mu_norm_sq(space, W), kSumTolerance);
    ctx.put("blocks", blocks, kNormTolerance);
    ctx.diagnostics["partition"] = io::to_json(chi);
    ctx.diagnostics["finest_partition"] = chi.block_count() == space.size();
}

void mu_dim_cmd(Context& ctx) {
    const MeasureSpace space = ctx.space();
    bool orth = false;
    const CMatrix vectors = io::basis_from_json(ctx.load("basis"), space.size(), &orth);
    const SubspaceBasis basis = orth ? orthonormalize(space, vectors) : SubspaceBasis{vectors};
    ctx.put("mu_dim", mu_dim(space, basis), kSumTolerance);
    ctx.put("dimension", basis.vectors.cols(), 0.0);
    ctx.diagnostics["orthonormalized"] = orth;
}

void entropy_cmd(Context& ctx) {
    const MeasureSpace space = ctx.space();
    const CMatrix U = io::matrix_from_json(ctx.load("op"));
    const Partition chi = ctx.partition_or_finest(space);
    const int N = ctx.job.N.value_or(3);
    ctx.put("entropy", io::to_json(quantum_entropy_rate(space, U, chi, N, ctx.job.term_cap), ctx.log_scale()),
            kNormTolerance);
    ctx.diagnostics["log_base"] = ctx.job.log_base;
    ctx.diagnostics["partition"] = io::to_json(chi);
}

void ks_entropy_cmd(Context& ctx) {
    const MeasureSpace space = ctx.space();
    const Endomorphism F = io::endomorphism_from_json(ctx.load("map"), space);
    const Partition chi = ctx.partition_or_finest(space);
    const int N = ctx.job.N.value_or(3);
    if (N < 0) throw ValidationError("--N must be nonnegative");
    checked_path_count(chi.block_count(), N + 1, ctx.job.term_cap);
    EntropyReport report;
    report.finest_partition = chi.block_count() == space.size();
    for (int n = 0; n <= N; ++n) {
        const Real h = ks_entropy_at(space, F, chi, n, ctx.job.term_cap);
        report.n.push_back(n + 1);
        report.values.push_back(h);
        report.rates.push_back(h / (n + 1));
    }
    for (std::size_t i = 0; i + 1 < report.values.size(); ++i)
        report.differences.push_back(report.values[i + 1] - report.values[i]);
    ctx.put("ks_entropy", io::to_json(report, ctx.log_scale()), kSumTolerance);
    ctx.diagnostics["log_base"] = ctx.job.log_base;
}

void markov_rate_cmd(Context& ctx) {
    const CMatrix P = io::matrix_from_json(ctx.load("op"));
    if (P.imag().cwiseAbs().maxCoeff() != 0.0) throw ValidationError("transition matrix must be real");
    RVector nu = RVector::Constant(P.rows(), 1.0 / static_cast<Real>(std::max<Eigen::Index>(1, P.rows())));
    if (ctx.has("space")) {
        const json j = ctx.load("space");
        if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
            throw ValidationError("field 'weights': expected an array");
        nu.resize(static_cast<Eigen::Index>(j["weights"].size()));
        for (std::size_t i = 0; i < j["weights"].size(); ++i) {
            if (!j["weights"][i].is_number()) throw ValidationError("field 'weights': expected numbers");
            nu[i] = j["weights"][i].get<Real>();
        }
    }
    ctx.put("entropy_rate", markov_entropy_rate(P.real(), nu) * ctx.log_scale(), kSumTolerance);
    ctx.diagnostics["log_base"] = ctx.job.log_base;
}

void rho_cmd(Context& ctx) {
    const auto s = io::sequence_from_json(ctx.load("seq"));
    ctx.put("rho", circle::rho(s), kSumTolerance);
    ctx.put("left_mean_sq", s.left_mean_sq(), kSumTolerance);
    ctx.put("right_mean_sq", s.right_mean_sq(), kSumTolerance);
}

void conv_cmd(Context& ctx) {
    const auto s = io::sequence_from_json(ctx.load("seq"));
    ctx.put("conv_norm", circle::conv_norm(s), 0.0);
    ctx.put("conv_mu_norm_sq", circle::conv_mu_norm_sq(s), kSumTolerance);
}

void dt_norm_cmd(Context& ctx) {
    ctx.put("dt_norm", circle::dt_norm(io::band_from_json(ctx.load("op"))), kSumTolerance);
}

void dt_mu_norm_cmd(Context& ctx) {
    const auto W = io::band_from_json(ctx.load("op"));
    const auto q = circle::dt_mu_norm_sq(W, ctx.job.quad_points.value_or(circle::default_quad_points(W)));
    ctx.put("quadrature", q.quadrature, kNormTolerance);
    ctx.put("closed_form", q.closed_form, kSumTolerance);
    ctx.diagnostics["quad_points"] = q.points;
}

void avg_trace_cmd(Context& ctx) {
    ctx.put("avg_trace", circle::avg_trace(io::band_from_json(ctx.load("op"))), kSumTolerance);
}

int verify_cmd(Context& ctx) {
    const std::string suite = ctx.job.suite.empty() ? "all" : ctx.job.suite;
    const auto report = verify::verify_suite(suite, ctx.job.trials, ctx.job.seed);
    ctx.results = verify::to_json(report);
    for (const auto& p : report.properties) ctx.tolerances[p.name] = p.tolerance;
    return report.passed() ? kOk : kPropertyFailure;
}

using Handler = int (*)(Context&);

template <void (*F)(Context&)>
int wrap(Context& ctx) {
    F(ctx);
    return kOk;
}

const std::vector<std::pair<std::string, Handler>>& table() {
    static const std::vector<std::pair<std::string, Handler>> t = {
        {"mu-norm", wrap<mu_norm_cmd>},         {"m-chi", wrap<m_chi_cmd>},
        {"mu-dim", wrap<mu_dim_cmd>},           {"entropy", wrap<entropy_cmd>},
        {"ks-entropy", wrap<ks_entropy_cmd>},   {"markov-rate", wrap<markov_rate_cmd>},
        {"rho", wrap<rho_cmd>},                 {"conv", wrap<conv_cmd>},
        {"dt-norm", wrap<dt_norm_cmd>},         {"dt-mu-norm", wrap<dt_mu_norm_cmd>},
        {"avg-trace", wrap<avg_trace_cmd>},     {"verify", verify_cmd},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, h] : table()) n.push_back(name);
        return n;
    }();
    return names;
}

std::string inputs_digest(const std::map<std::string, std::string>& inputs) {
    std::uint64_t h = 14695981039346656037ull;
    auto feed = [&](unsigned char c) {
        h ^= c;
        h *= 1099511628211ull;
    };
    for (const auto& [role, path] : inputs) {
        if (path.empty()) continue;
        for (char c : role + "=") feed(static_cast<unsigned char>(c));
        std::ifstream in(path, std::ios::binary);
        for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) feed(static_cast<unsigned char>(*it));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

JobResult run(const JobSpec& job) {
    Context ctx{job};
    JobResult out;
    json report = {{"schema", kSchema}, {"command", job.command}, {"inputs_digest", inputs_digest(job.inputs)}};
    try {
        if (job.log_base != "e" && job.log_base != "2") throw ValidationError("--log-base must be 'e' or '2'");
        Handler handler = nullptr;
        for (const auto& [name, h] : table())
            if (name == job.command) handler = h;
        if (!handler) throw ValidationError("unknown command '" + job.command + "'");
        out.exit_code = handler(ctx);
        report["results"] = ctx.results;
    } catch (const CapError& e) {
        out.exit_code = kCap;
        ctx.diagnostics["error"] = {{"kind", "cap"}, {"message", e.what()}};
    } catch (const ValidationError& e) {
        out.exit_code = kValidation;
        ctx.diagnostics["error"] = {{"kind", "validation"}, {"message", e.what()}};
    } catch (const json::exception& e) {
        out.exit_code = kValidation;
        ctx.diagnostics["error"] = {{"kind", "validation"}, {"message", e.what()}};
    }
    if (!report.contains("results")) report["results"] = nullptr;
    ctx.diagnostics["tolerances"] = ctx.tolerances;
    report["diagnostics"] = ctx.diagnostics;
    out.report = std::move(report);
    return out;
}

}  // namespace munorm::job
