#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ptlab {

// A named experiment run: the JSON report embeds the fully resolved config,
// the seed, per-assertion outcomes, and a segregated "meta" object holding
// the timestamp (everything outside "meta" is byte-reproducible).
struct ExperimentReport {
  std::string name;
  bool pass = false;
  std::string json;
};

const std::vector<std::string>& experiment_names();

// params_json: a JSON object; unknown keys are rejected, missing keys take
// their defaults. Throws std::invalid_argument for unknown experiments or
// bad parameters. Assertion failures do not throw; they clear `pass`.
ExperimentReport run_experiment(const std::string& name, const std::string& params_json,
                                std::uint64_t seed);

}  // namespace ptlab
