#ifndef MUNORM_JOB_HPP
#define MUNORM_JOB_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "munorm/io.hpp"

namespace munorm::job {

inline constexpr const char* kSchema = "mu-norm-lab/1";

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kValidation = 2, kCap = 3 };

/// Commands accepted by run().
const std::vector<std::string>& commands();

struct JobSpec {
    std::string command;
    std::map<std::string, std::string> inputs;  // role ("space", "op", ...) -> file path
    std::optional<int> N;
    std::optional<int> quad_points;
    std::uint64_t term_cap = kDefaultTermCap;
    std::string log_base = "e";
    std::uint64_t seed = 0;
    int trials = 100;
    std::string suite;
};

struct JobResult {
    int exit_code = kOk;
    io::json report;
};

/// Executes one command; never throws for bad input, the report carries the error.
JobResult run(const JobSpec& job);

/// FNV-1a 64 over "role=<bytes>" for each input in role order, as 16 hex digits.
std::string inputs_digest(const std::map<std::string, std::string>& inputs);

}  // namespace munorm::job

#endif  // MUNORM_JOB_HPP
