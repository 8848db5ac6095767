// mu-norm-lab: command-line front end for the munorm library.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "munorm/job.hpp"
#include "munorm/verify.hpp"

int main(int argc, char** argv) {
    using munorm::job::JobSpec;

    CLI::App app{"mu-norm of operators on finite measure spaces and on the circle"};
    JobSpec job;
    std::string space, op, partition, seq, map, basis, out;
    int N = -1, quad = -1;

    app.add_option("command", job.command, "mu-norm | m-chi | mu-dim | entropy | ks-entropy | markov-rate | rho | conv | "
                                           "dt-norm | dt-mu-norm | avg-trace | verify")
        ->required();
    app.add_option("--space", space, "measure space JSON {\"weights\": [...]}");
    app.add_option("--op", op, "operator JSON (matrix, band operator or transition matrix)");
    app.add_option("--partition", partition, "partition JSON {\"blocks\": [[...], ...]} (default: finest)");
    app.add_option("--seq", seq, "eventually periodic sequence JSON");
    app.add_option("--map", map, "endomorphism JSON {\"map\": [...]}");
    app.add_option("--basis", basis, "subspace basis JSON {\"vectors\": [...]}");
    app.add_option("--N", N, "number of U factors (entropy: N_max)");
    app.add_option("--quad", quad, "quadrature points for dt-mu-norm");
    app.add_option("--cap", job.term_cap, "term cap for path enumeration")->capture_default_str();
    app.add_option("--log-base", job.log_base, "entropy units: e (nats) or 2 (bits)")->capture_default_str();
    app.add_option("--seed", job.seed, "verify: RNG seed")->capture_default_str();
    app.add_option("--trials", job.trials, "verify: random instances per property")->capture_default_str();
    app.add_option("--suite", job.suite, "verify: suite name (default: all)");
    app.add_option("--out", out, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : munorm::job::kValidation;
    }

    job.inputs = {{"space", space}, {"op", op}, {"partition", partition}, {"seq", seq}, {"map", map}, {"basis", basis}};
    if (N >= 0) job.N = N;
    if (quad >= 0) job.quad_points = quad;

    const auto result = munorm::job::run(job);
    const std::string text = result.report.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(out, std::ios::binary);
        if (!file) {
            std::cerr << "cannot write " << out << "\n";
            return munorm::job::kValidation;
        }
        file << text;
    }
    if (const auto& d = result.report["diagnostics"]; d.contains("error"))
        std::cerr << "error: " << d["error"]["message"].get<std::string>() << "\n";
    return result.exit_code;
}
