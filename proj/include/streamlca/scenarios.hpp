#ifndef STREAMLCA_SCENARIOS_HPP
#define STREAMLCA_SCENARIOS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "streamlca/diary.hpp"
#include "streamlca/params.hpp"

namespace streamlca {

struct ScenarioSpec {
  std::string name = "identity";
  // dotted parameter path -> replacement value
  std::map<std::string, double> param_overrides;
  std::map<DeviceKind, DeviceKind> device_substitution;
  std::map<PlatformCategory, Resolution> forced_resolution;
  std::map<PlatformCategory, double> duration_scale;  // factors >= 0
};

ScenarioSpec load_scenario(const std::string& path);
ScenarioSpec scenario_from_json(const std::string& text);

// Returns transformed copies; inputs untouched. Substituted devices stream
// at the substitute's native resolution unless an entry carries an explicit
// one.
std::pair<ModelParams, DiaryDataset> apply_scenario(const ScenarioSpec& spec,
                                                    const ModelParams& params,
                                                    const DiaryDataset& ds);

struct SensitivityItem {
  std::string param;
  double low_total = 0;
  double high_total = 0;
  double swing = 0;  // |high - low|
};

struct SensitivityReport {
  double baseline_total = 0;
  std::vector<SensitivityItem> items;  // sorted by descending swing
};

// One-at-a-time perturbation: each parameter to (1 -/+ fraction) * baseline,
// others held fixed.
SensitivityReport tornado(const ModelParams& params, const DiaryDataset& ds,
                          const std::string& participant,
                          const std::map<std::string, double>& range_fractions);

enum class DistKind { uniform, triangular };

struct ParamDist {
  std::string param;
  DistKind kind = DistKind::uniform;
  double low = 0;
  double high = 0;
  double mode = 0;  // triangular only
};

struct McConfig {
  std::uint64_t seed = 0;
  std::size_t n_samples = 1;
  std::vector<ParamDist> dists;
};

McConfig load_mc_config(const std::string& path);

// Shipped default uncertainty set: +-20 % on network/grid intensities,
// +-30 % on embodied emissions (placeholder ranges, no published source).
McConfig default_mc_config(const ModelParams& params, std::uint64_t seed,
                           std::size_t n_samples);

struct McSummary {
  double mean = 0;
  double sd = 0;
  double p5 = 0;
  double p50 = 0;
  double p95 = 0;  // nearest-rank percentiles
};

// Seeded, reproducible sampling of the weekly footprint total. Each sample
// draws from a substream derived from (seed, sample index) with splitmix64,
// so results do not depend on evaluation order.
McSummary monte_carlo(const ModelParams& params, const DiaryDataset& ds,
                      const std::string& participant, const McConfig& cfg);

// splitmix64 step; also the per-sample stream derivation.
std::uint64_t splitmix64(std::uint64_t& state);
// Uniform draw in [0,1) from a splitmix64 stream.
double uniform01(std::uint64_t& state);

}  // namespace streamlca

#endif
