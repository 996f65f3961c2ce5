#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qk/check.hpp"
#include "qk/gaussian_rational.hpp"

namespace qk::cli {

// Invalid configuration; `field` names the offending key.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string f, const std::string& msg) : std::runtime_error(f + ": " + msg), field(std::move(f)) {}
};

struct StageSplit {
    std::vector<int> sub;
    std::vector<int> complement;
};

struct ScenarioConfig {
    std::string scenario = "custom";
    int n = 1;
    std::vector<int> translated;  // 1-based configuration indices
    std::string star = "weyl";    // weyl | wick | std
    int lambda_order = 6;
    int max_degree = 3;
    int samples = 20;
    std::uint64_t seed = 1;
    mpq_class b = 0;
    std::pair<int, int> magnetic_pair{1, 2};
    std::vector<mpq_class> mu;  // empty means 0
    std::optional<StageSplit> stage_split;
    std::vector<std::string> checks;
};

// axioms, momentum, complex, reduction, knp, stages, ce
const std::vector<std::string>& suite_names();
std::vector<std::string> builtin_names();
ScenarioConfig builtin(const std::string& name);

ScenarioConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioConfig& cfg);
void validate(const ScenarioConfig& cfg);

struct Report {
    std::string scenario;
    nlohmann::json config;
    std::vector<std::pair<std::string, std::string>> conventions;
    CheckList checks;  // sorted by name

    bool passed() const { return all_required_pass(checks); }
};

// Sign conventions evaluated on the canonical generators.
std::vector<std::pair<std::string, std::string>> derive_conventions();

Report run_scenario(const ScenarioConfig& cfg);

enum class Format { Json, Text };
std::string emit_report(const Report& r, Format f);

// Full command line; returns the process exit status (0 pass, 1 check
// failure, 2 configuration error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qk::cli
