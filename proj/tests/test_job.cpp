#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "munorm/job.hpp"

using namespace munorm;
using namespace munorm::job;

namespace {

std::string data(const std::string& name) { return std::string(MUNORM_TEST_DATA) + "/" + name; }

JobResult run_cmd(const std::string& command, std::initializer_list<std::pair<std::string, std::string>> inputs) {
    JobSpec spec;
    spec.command = command;
    for (const auto& [role, name] : inputs) spec.inputs[role] = data(name);
    return run(spec);
}

}  // namespace

TEST_CASE("report skeleton") {
    const auto r = run_cmd("mu-norm", {{"space", "u4.json"}, {"op", "proj13.json"}});
    CHECK(r.exit_code == kOk);
    CHECK(r.report["schema"] == kSchema);
    CHECK(r.report["command"] == "mu-norm");
    CHECK(r.report["inputs_digest"].get<std::string>().size() == 16);
    CHECK(r.report["results"]["mu_norm_sq"].get<double>() == 0.5);
    CHECK(r.report["results"]["operator_norm"].get<double>() == doctest::Approx(1.0));
    CHECK(r.report["diagnostics"]["tolerances"].contains("mu_norm_sq"));
}

TEST_CASE("reports are reproducible byte for byte") {
    const auto a = run_cmd("entropy", {{"space", "u2.json"}, {"op", "hadamard.json"}});
    const auto b = run_cmd("entropy", {{"space", "u2.json"}, {"op", "hadamard.json"}});
    CHECK(a.report.dump(2) == b.report.dump(2));
    JobSpec v;
    v.command = "verify";
    v.suite = "lemma-mupi";
    v.seed = 7;
    CHECK(run(v).report.dump() == run(v).report.dump());
    CHECK(inputs_digest({{"space", data("u2.json")}}) != inputs_digest({{"space", data("u4.json")}}));
    CHECK(inputs_digest({{"space", data("u2.json")}}) != inputs_digest({{"op", data("u2.json")}}));
}

TEST_CASE("computational commands") {
    auto res = [](const JobResult& r) {
        INFO(r.report.dump());
        REQUIRE(r.exit_code == kOk);
        return r.report["results"];
    };
    CHECK(res(run_cmd("m-chi", {{"space", "w4.json"}, {"op", "proj13.json"}, {"partition", "blocks13.json"}}))["m_chi"]
              .get<double>() == doctest::Approx(0.4));
    CHECK(res(run_cmd("mu-dim", {{"space", "u4.json"}, {"basis", "basis.json"}}))["mu_dim"].get<double>() ==
          doctest::Approx(0.5));

    const auto e = res(run_cmd("entropy", {{"space", "u2.json"}, {"op", "hadamard.json"}}))["entropy"];
    CHECK(e["differences"].size() == 3);
    for (const auto& d : e["differences"]) CHECK(d.get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(e["closed_form"].get<double>() == doctest::Approx(std::log(2.0)));

    const auto ks = res(run_cmd("ks-entropy", {{"space", "cycle-space.json"}, {"map", "cycle-map.json"}}))["ks_entropy"];
    const double h0 = -(3 * 0.2 * std::log(0.2) + 0.4 * std::log(0.4));
    for (const auto& v : ks["values"]) CHECK(v.get<double>() == doctest::Approx(h0));

    CHECK(res(run_cmd("markov-rate", {{"op", "markov.json"}}))["entropy_rate"].get<double>() ==
          doctest::Approx(0.5 * std::log(2.0)));
    CHECK(res(run_cmd("rho", {{"seq", "half.json"}}))["rho"].get<double>() == 0.5);
    CHECK(res(run_cmd("conv", {{"seq", "half.json"}}))["conv_norm"].get<double>() == 1.0);
    CHECK(res(run_cmd("dt-norm", {{"op", "cos-multiplier.json"}}))["dt_norm"].get<double>() == 2.0);
    const auto q = res(run_cmd("dt-mu-norm", {{"op", "cos-multiplier.json"}}));
    CHECK(q["quadrature"].get<double>() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(q["closed_form"].get<double>() == 2.0);
    CHECK(res(run_cmd("avg-trace", {{"op", "shift-band.json"}}))["avg_trace"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("log base 2") {
    JobSpec spec;
    spec.command = "entropy";
    spec.inputs = {{"space", data("u2.json")}, {"op", data("hadamard.json")}};
    spec.log_base = "2";
    const auto r = run(spec);
    REQUIRE(r.exit_code == kOk);
    CHECK(r.report["results"]["entropy"]["closed_form"].get<double>() == doctest::Approx(1.0));
    spec.log_base = "10";
    CHECK(run(spec).exit_code == kValidation);
}

TEST_CASE("errors map to exit codes") {
    const auto bad = run_cmd("mu-norm", {{"space", "bad-space.json"}, {"op", "proj13.json"}});
    CHECK(bad.exit_code == kValidation);
    CHECK(bad.report["diagnostics"]["error"]["kind"] == "validation");
    CHECK(bad.report["results"].is_null());

    const auto malformed = run_cmd("mu-norm", {{"space", "malformed.json"}, {"op", "proj13.json"}});
    CHECK(malformed.exit_code == kValidation);
    CHECK(malformed.report["diagnostics"]["error"]["message"].get<std::string>().find("malformed.json:2:") !=
          std::string::npos);

    CHECK(run_cmd("mu-norm", {{"space", "u2.json"}, {"op", "proj13.json"}}).exit_code == kValidation);
    CHECK(run_cmd("mu-norm", {{"space", "u4.json"}}).exit_code == kValidation);
    CHECK(run_cmd("no-such-command", {}).exit_code == kValidation);

    JobSpec cap;
    cap.command = "entropy";
    cap.inputs = {{"space", data("u10.json")}, {"op", data("id10.json")}};
    cap.N = 7;
    const auto c = run(cap);
    CHECK(c.exit_code == kCap);
    CHECK(c.report["diagnostics"]["error"]["kind"] == "cap");

    JobSpec v;
    v.command = "verify";
    v.suite = "nonexistent";
    CHECK(run(v).exit_code == kValidation);
}

TEST_CASE("verify command") {
    JobSpec v;
    v.command = "verify";
    v.suite = "lemma-mupi";
    v.trials = 100;
    v.seed = 7;
    const auto r = run(v);
    CHECK(r.exit_code == kOk);
    const auto& props = r.report["results"]["properties"];
    REQUIRE(props.size() >= 1);
    for (const auto& p : props) {
        CHECK(p["trials"] == 100);
        CHECK(p["violations"] == 0);
        CHECK(p.contains("max_deviation"));
    }
}
