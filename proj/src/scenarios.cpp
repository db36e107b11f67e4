#include "streamlca/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "streamlca/engine.hpp"

namespace streamlca {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

ScenarioSpec scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario file is not valid JSON: ") +
                     e.what());
  }
  ScenarioSpec spec;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "name") {
      spec.name = it->get<std::string>();
    } else if (key == "param_overrides") {
      for (auto p = it->begin(); p != it->end(); ++p) {
        if (!p->is_number())
          throw ParseError("param override '" + p.key() + "' must be numeric");
        spec.param_overrides[p.key()] = p->get<double>();
      }
    } else if (key == "device_substitution") {
      for (auto p = it->begin(); p != it->end(); ++p)
        spec.device_substitution[device_from_string(p.key())] =
            device_from_string(p->get<std::string>());
    } else if (key == "forced_resolution") {
      for (auto p = it->begin(); p != it->end(); ++p)
        spec.forced_resolution[platform_from_string(p.key())] =
            resolution_from_string(p->get<std::string>());
    } else if (key == "duration_scale") {
      for (auto p = it->begin(); p != it->end(); ++p) {
        const double f = p->get<double>();
        if (f < 0)
          throw ValidationError("duration scale for " + p.key() +
                                " must be >= 0");
        spec.duration_scale[platform_from_string(p.key())] = f;
      }
    } else {
      throw ParseError("unknown field '" + key + "' in scenario file");
    }
  }
  return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

std::pair<ModelParams, DiaryDataset> apply_scenario(const ScenarioSpec& spec,
                                                    const ModelParams& params,
                                                    const DiaryDataset& ds) {
  ModelParams p = params;
  for (const auto& [path, value] : spec.param_overrides)
    set_param(p, path, value);  // throws ConfigError on unknown key
  validate(p);

  DiaryDataset out = ds;
  for (auto& e : out.entries) {
    auto sub = spec.device_substitution.find(e.device);
    if (sub != spec.device_substitution.end()) {
      e.device = sub->second;
      // the substitute streams at its own default unless the diary pinned one
      if (e.resolution == Resolution::unknown)
        e.resolution = Resolution::automatic;
    }
    auto forced = spec.forced_resolution.find(e.platform);
    if (forced != spec.forced_resolution.end()) e.resolution = forced->second;
    auto scale = spec.duration_scale.find(e.platform);
    if (scale != spec.duration_scale.end()) e.hours *= scale->second;
  }
  return {std::move(p), std::move(out)};
}

SensitivityReport tornado(const ModelParams& params, const DiaryDataset& ds,
                          const std::string& participant,
                          const std::map<std::string, double>& range_fractions) {
  if (range_fractions.empty())
    throw ValidationError("tornado: no parameter ranges given");
  SensitivityReport rep;
  rep.baseline_total = footprint(params, ds, participant).grand_total().total();
  for (const auto& [path, frac] : range_fractions) {
    const double base = get_param(params, path);
    auto eval_at = [&](double v) {
      ModelParams p = params;
      set_param(p, path, v);
      validate(p);
      return footprint(p, ds, participant).grand_total().total();
    };
    SensitivityItem item;
    item.param = path;
    item.low_total = eval_at(base * (1.0 - frac));
    item.high_total = eval_at(base * (1.0 + frac));
    item.swing = std::fabs(item.high_total - item.low_total);
    rep.items.push_back(std::move(item));
  }
  // descending swing; name breaks ties so the order is reproducible
  std::stable_sort(rep.items.begin(), rep.items.end(),
                   [](const SensitivityItem& a, const SensitivityItem& b) {
                     if (a.swing != b.swing) return a.swing > b.swing;
                     return a.param < b.param;
                   });
  return rep;
}

namespace {

double sample_dist(const ParamDist& d, std::uint64_t& state) {
  const double u = uniform01(state);
  if (d.kind == DistKind::uniform) return d.low + u * (d.high - d.low);
  // triangular, inverse CDF
  const double span = d.high - d.low;
  if (span == 0) return d.low;
  const double fc = (d.mode - d.low) / span;
  if (u < fc) return d.low + std::sqrt(u * span * (d.mode - d.low));
  return d.high - std::sqrt((1.0 - u) * span * (d.high - d.mode));
}

void check_bounds(const ModelParams& params, const ParamDist& d) {
  if (d.high < d.low)
    throw ValidationError("distribution for '" + d.param +
                          "' has high < low");
  if (d.kind == DistKind::triangular &&
      (d.mode < d.low || d.mode > d.high))
    throw ValidationError("triangular mode for '" + d.param +
                          "' outside [low, high]");
  for (double v : {d.low, d.high}) {
    ModelParams p = params;
    set_param(p, d.param, v);
    try {
      validate(p);
    } catch (const ValidationError& e) {
      throw ValidationError("distribution bound for '" + d.param +
                            "' violates a parameter invariant: " + e.what());
    }
  }
}

}  // namespace

McConfig default_mc_config(const ModelParams& params, std::uint64_t seed,
                           std::size_t n_samples) {
  McConfig cfg;
  cfg.seed = seed;
  cfg.n_samples = n_samples;
  auto pm = [&](const std::string& path, double frac) {
    const double base = get_param(params, path);
    cfg.dists.push_back({path, DistKind::uniform, base * (1.0 - frac),
                         base * (1.0 + frac), base});
  };
  for (DeviceKind d : all_devices)
    pm("devices." + to_string(d) + ".embodied_kg", 0.30);
  pm("network.access_kwh_per_gb", 0.20);
  pm("network.core_edge_kwh_per_gb", 0.20);
  pm("network.datacenter_kwh_per_gb", 0.20);
  pm("grid_device.kg_per_kwh", 0.20);
  pm("grid_network.kg_per_kwh", 0.20);
  return cfg;
}

McConfig load_mc_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open MC config: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("MC config is not valid JSON: ") + e.what());
  }
  McConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "seed") {
      cfg.seed = it->get<std::uint64_t>();
    } else if (key == "n_samples") {
      cfg.n_samples = it->get<std::size_t>();
    } else if (key == "distributions") {
      for (const auto& dj : *it) {
        ParamDist d;
        d.param = dj.at("param").get<std::string>();
        const std::string kind = dj.at("kind").get<std::string>();
        if (kind == "uniform") {
          d.kind = DistKind::uniform;
        } else if (kind == "triangular") {
          d.kind = DistKind::triangular;
        } else {
          throw ParseError("unknown distribution kind '" + kind + "'");
        }
        d.low = dj.at("low").get<double>();
        d.high = dj.at("high").get<double>();
        d.mode = dj.contains("mode") ? dj.at("mode").get<double>()
                                     : 0.5 * (d.low + d.high);
        cfg.dists.push_back(std::move(d));
      }
    } else {
      throw ParseError("unknown field '" + key + "' in MC config");
    }
  }
  if (cfg.n_samples < 1)
    throw ValidationError("MC config: n_samples must be >= 1");
  return cfg;
}

McSummary monte_carlo(const ModelParams& params, const DiaryDataset& ds,
                      const std::string& participant, const McConfig& cfg) {
  if (cfg.n_samples < 1)
    throw ValidationError("monte_carlo: n_samples must be >= 1");
  for (const auto& d : cfg.dists) check_bounds(params, d);

  std::vector<double> totals;
  totals.reserve(cfg.n_samples);
  for (std::size_t i = 0; i < cfg.n_samples; ++i) {
    // independent substream per sample: schedule never matters
    std::uint64_t mix = cfg.seed;
    (void)splitmix64(mix);
    std::uint64_t state = mix ^ (0x9e3779b97f4a7c15ULL * (i + 1));
    ModelParams p = params;
    for (const auto& d : cfg.dists) set_param(p, d.param, sample_dist(d, state));
    totals.push_back(footprint(p, ds, participant).grand_total().total());
  }

  McSummary s;
  std::vector<double> sorted = totals;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    // constant sample (degenerate distributions): report the value itself
    // rather than letting summation rounding shift it by an ulp
    s.mean = sorted.front();
    s.sd = 0.0;
  } else {
    double sum = 0;
    for (double t : totals) sum += t;
    s.mean = sum / static_cast<double>(totals.size());
    double ss = 0;
    for (double t : totals) ss += (t - s.mean) * (t - s.mean);
    s.sd = totals.size() > 1
               ? std::sqrt(ss / static_cast<double>(totals.size() - 1))
               : 0.0;
  }
  auto nearest_rank = [&](double pct) {
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
  };
  s.p5 = nearest_rank(5);
  s.p50 = nearest_rank(50);
  s.p95 = nearest_rank(95);
  return s;
}

}  // namespace streamlca
