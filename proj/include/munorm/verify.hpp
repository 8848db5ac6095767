#ifndef MUNORM_VERIFY_HPP
#define MUNORM_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "munorm/io.hpp"

// Seeded property suites: each draws random instances from Rng(seed) and
// records the largest violation of one identity or inequality.
namespace munorm::verify {

struct PropertyResult {
    std::string name;
    int trials = 0;
    int violations = 0;
    Real max_deviation = 0.0;
    Real tolerance = 0.0;
    std::optional<io::json> failing_instance;  // first offending instance
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<PropertyResult> properties;

    bool passed() const;
};

/// Registered suite names, in a fixed order.
const std::vector<std::string>& suite_names();

/// Throws ValidationError for an unknown suite. "all" runs every suite.
SuiteReport verify_suite(const std::string& name, int trials, std::uint64_t seed);

io::json to_json(const SuiteReport& report);

}  // namespace munorm::verify

#endif  // MUNORM_VERIFY_HPP
