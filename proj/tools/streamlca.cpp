#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "streamlca/analysis.hpp"
#include "streamlca/diary.hpp"
#include "streamlca/engine.hpp"
#include "streamlca/params.hpp"
#include "streamlca/report.hpp"
#include "streamlca/scenarios.hpp"

namespace fs = std::filesystem;
using namespace streamlca;

namespace {

struct CommonOpts {
  std::string params_path;
  std::string out_dir = ".";
  std::string format = "delimited";
  bool strict = false;
};

ReportFormat report_format(const CommonOpts& o) {
  return o.format == "table" ? ReportFormat::table : ReportFormat::delimited;
}

std::string ext(const CommonOpts& o) {
  return o.format == "table" ? ".txt" : ".tsv";
}

ModelParams resolve_params(const CommonOpts& o) {
  return o.params_path.empty() ? default_params() : load_params(o.params_path);
}

// Reports are buffered and flushed only after every computation succeeded,
// so a failing run leaves no partial files behind.
struct Emitter {
  RunManifest manifest;
  CommonOpts opts;
  std::vector<std::pair<std::string, std::string>> files;

  void add_table(const std::string& name, const Table& t) {
    files.emplace_back(name + ext(opts),
                       manifest.header() + t.render(report_format(opts)));
  }
  void add_raw(const std::string& filename, const std::string& content) {
    files.emplace_back(filename, content);
  }
  void flush() {
    fs::create_directories(opts.out_dir);
    for (const auto& [name, content] : files) {
      const std::string path = opts.out_dir + "/" + name;
      std::ofstream out(path, std::ios::binary);
      if (!out) throw Error("cannot write report: " + path);
      out << content;
      std::cout << "wrote " << path << "\n";
    }
  }
};

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

RunManifest manifest_for(const CommonOpts& o, const std::string& cmdline,
                         const std::vector<std::pair<std::string, std::string>>&
                             input_files) {
  RunManifest m = make_manifest(cmdline);
  if (!o.params_path.empty())
    m.input_hashes.emplace_back("params", file_hash(o.params_path));
  else
    m.input_hashes.emplace_back("params", "builtin-defaults");
  for (const auto& [label, path] : input_files)
    m.input_hashes.emplace_back(label, file_hash(path));
  return m;
}

std::string svg_chart_string(const std::string& title,
                             const std::vector<std::pair<std::string, double>>& bars,
                             const std::string& unit) {
  const std::string tmp = fs::temp_directory_path() /
                          ("streamlca_chart_" + std::to_string(::getpid()));
  write_bar_chart_svg(tmp, title, bars, unit);
  std::ifstream in(tmp, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  fs::remove(tmp);
  return content;
}

std::vector<std::string> components_row(const Components& c, double hours) {
  return {fixed6(hours), fixed6(c.production_kg), fixed6(c.operation_kg),
          fixed6(c.traffic_kg), fixed6(c.total())};
}

int warnings_exit(const DiaryDataset& ds, const CommonOpts& o) {
  for (const auto& w : ds.warnings) std::cerr << "warning: " << w << "\n";
  return (!ds.warnings.empty() && o.strict) ? 2 : 0;
}

// hours per group key, for the duration columns next to GWP columns
template <typename Key, typename KeyFn>
std::map<Key, double> group_hours(const DiaryDataset& ds, KeyFn key_fn) {
  std::map<Key, double> out;
  for (const auto& e : ds.entries)
    if (in_model(e.platform)) out[key_fn(e)] += e.hours;
  return out;
}

void run_footprint(const CommonOpts& o, const std::string& diary,
                   const std::string& profiles, const std::string& scenario,
                   bool per_viewer, const std::string& by, Emitter& em) {
  ModelParams params = resolve_params(o);
  DiaryDataset ds = parse_dataset(diary, profiles);
  ScenarioSpec spec;
  if (!scenario.empty()) {
    spec = load_scenario(scenario);
    auto [p2, ds2] = apply_scenario(spec, params, ds);
    params = std::move(p2);
    ds = std::move(ds2);
  }
  FootprintOptions fo{per_viewer};

  Table cells;
  cells.columns = {"participant", "device",      "platform",
                   "day",         "production_kg", "operation_kg",
                   "traffic_kg",  "total_kg"};
  std::map<std::string, FootprintBreakdown> per_person;
  for (const auto& p : ds.participants) {
    auto fb = footprint(params, ds, p.participant_id, fo);
    for (const auto& [key, c] : fb.cells)
      cells.rows.push_back({p.participant_id, to_string(key.device),
                            to_string(key.platform),
                            std::to_string(key.day_index),
                            fixed6(c.production_kg), fixed6(c.operation_kg),
                            fixed6(c.traffic_kg), fixed6(c.total())});
    per_person[p.participant_id] = std::move(fb);
  }
  em.add_table("footprint_cells", cells);

  const double np = static_cast<double>(ds.participants.size());
  Table grouped;
  grouped.columns = {"group", "hours", "production_kg", "operation_kg",
                     "traffic_kg", "total_kg"};
  std::vector<std::pair<std::string, double>> bars;

  auto emit_group = [&](const std::map<std::string, Components>& totals,
                        const std::map<std::string, double>& hours) {
    for (const auto& [label, c] : totals) {
      Components mean = c;
      mean.production_kg /= np;
      mean.operation_kg /= np;
      mean.traffic_kg /= np;
      double h = hours.count(label) ? hours.at(label) / np : 0.0;
      auto row = components_row(mean, h);
      row.insert(row.begin(), label);
      grouped.rows.push_back(row);
      bars.emplace_back(label, mean.total());
    }
  };

  std::map<std::string, Components> totals;
  std::map<std::string, double> hours;
  if (by == "device") {
    for (auto& [id, fb] : per_person)
      for (const auto& [d, c] : fb.by_device()) totals[to_string(d)] += c;
    for (const auto& [d, h] :
         group_hours<DeviceKind>(ds, [](const DiaryEntry& e) { return e.device; }))
      hours[to_string(d)] = h;
  } else if (by == "platform") {
    for (auto& [id, fb] : per_person)
      for (const auto& [p, c] : fb.by_platform()) totals[to_string(p)] += c;
    for (const auto& [p, h] : group_hours<PlatformCategory>(
             ds, [](const DiaryEntry& e) { return e.platform; }))
      hours[to_string(p)] = h;
  } else if (by == "day") {
    for (auto& [id, fb] : per_person)
      for (const auto& [d, c] : fb.by_day()) totals["day_" + std::to_string(d)] += c;
    for (const auto& [d, h] : group_hours<int>(
             ds, [](const DiaryEntry& e) { return e.day_index; }))
      hours["day_" + std::to_string(d)] = h;
  } else if (by == "slot") {
    for (auto& [id, fb] : per_person)
      for (const auto& [s, c] : fb.by_slot) totals[to_string(s)] += c;
    for (const auto& [s, h] : group_hours<DaytimeSlot>(
             ds, [](const DiaryEntry& e) { return e.slot; }))
      hours[to_string(s)] = h;
  } else {
    throw Error("unknown --by axis: '" + by + "'");
  }
  emit_group(totals, hours);

  Components grand;
  for (auto& [id, fb] : per_person) grand += fb.grand_total();
  Components grand_mean = grand;
  grand_mean.production_kg /= np;
  grand_mean.operation_kg /= np;
  grand_mean.traffic_kg /= np;
  double total_hours = 0;
  for (const auto& e : ds.entries)
    if (in_model(e.platform)) total_hours += e.hours;
  auto row = components_row(grand_mean, total_hours / np);
  row.insert(row.begin(), "all");
  grouped.rows.push_back(row);

  em.add_table("footprint_by_" + by, grouped);
  em.add_raw("footprint_by_" + by + ".svg",
             svg_chart_string("Weekly GWP by " + by + " (cohort mean)", bars,
                              "kg CO2-eq."));
}

void run_intensity(const CommonOpts& o, Emitter& em) {
  ModelParams params = resolve_params(o);
  Table t;
  t.columns = {"device", "production_kg_per_h", "electricity_kg_per_h",
               "traffic_kg_per_h", "total_kg_per_h"};
  std::vector<std::pair<std::string, double>> bars;
  for (const auto& r : intensity_table(params)) {
    t.rows.push_back({to_string(r.device), fixed6(r.production_kg_per_h),
                      fixed6(r.electricity_kg_per_h),
                      fixed6(r.traffic_kg_per_h), fixed6(r.total_kg_per_h)});
    bars.emplace_back(to_string(r.device), r.total_kg_per_h);
  }
  em.add_table("intensity", t);
  em.add_raw("intensity.svg",
             svg_chart_string("GWP per streaming hour", bars, "kg CO2-eq./h"));
  std::cout << t.render(ReportFormat::table);
}

std::string significance_marker(double p) {
  if (p < 0.001) return "**";
  if (p < 0.01) return "*";
  if (p < 0.05) return "+";
  return "";
}

Table regression_table(const RegressionResult& r,
                       const std::vector<double>& outcome,
                       const std::vector<std::vector<double>>& cols) {
  Table t;
  t.columns = {"predictor", "b", "SE", "beta", "t", "p", "r"};
  for (std::size_t j = 0; j < r.predictors.size(); ++j) {
    const auto& ps = r.predictors[j];
    double zr = pearson_r(cols[j], outcome);
    // zero-order correlation significance via t = r*sqrt((n-2)/(1-r^2))
    const double n = static_cast<double>(outcome.size());
    const double tr = zr * std::sqrt((n - 2) / (1 - zr * zr));
    const std::string marker = significance_marker(two_sided_p(tr, n - 2));
    t.rows.push_back({ps.label, fixed6(ps.b), fixed6(ps.se), fixed6(ps.beta),
                      fixed6(ps.t), fixed6(ps.p), fixed6(zr) + marker});
  }
  t.rows.push_back({"intercept", fixed6(r.intercept), fixed6(r.intercept_se),
                    "", "", "", ""});
  t.rows.push_back({"R_squared", fixed6(r.r_squared), "", "", "", "", ""});
  t.rows.push_back({"n", std::to_string(r.n), "", "", "", "", ""});
  return t;
}

void run_analyze(const CommonOpts& o, const std::string& diary,
                 const std::string& profiles, Emitter& em) {
  ModelParams params = resolve_params(o);
  DiaryDataset ds = parse_dataset(diary, profiles);
  if (ds.participants.size() < 2)
    throw ValidationError(
        "analyze needs at least 2 participants; t-test and regressions are "
        "undefined for a single diary");

  // weekly-hours descriptives per device across the cohort
  Table desc;
  desc.columns = {"device", "n", "mean_h", "sd_h", "min_h", "max_h"};
  for (DeviceKind d : all_devices) {
    std::vector<double> weekly;
    for (const auto& p : ds.participants) {
      auto wh = weekly_device_hours(ds, p.participant_id);
      weekly.push_back(wh.count(d) ? wh.at(d) : 0.0);
    }
    auto s = describe(weekly);
    desc.rows.push_back({to_string(d), std::to_string(s.n), fixed6(s.mean),
                         s.sd ? fixed6(*s.sd) : "NA", fixed6(s.min),
                         fixed6(s.max)});
  }
  em.add_table("descriptives", desc);

  auto split = weekday_weekend_split(ds);
  auto tt = paired_ttest(split.weekend_mean, split.weekday_mean);
  Table ttab;
  ttab.columns = {"comparison", "t", "df", "p", "cohens_d"};
  ttab.rows.push_back({"weekend_vs_weekday_daily_hours", fixed6(tt.t),
                       std::to_string(tt.df), fixed6(tt.p),
                       fixed6(tt.cohens_d)});
  em.add_table("ttest", ttab);

  std::map<std::string, double> gwp;
  for (const auto& p : ds.participants)
    gwp[p.participant_id] =
        footprint(params, ds, p.participant_id).grand_total().total();
  auto rep = determinants_report(ds, gwp);

  // rebuild the design columns for the zero-order correlations
  const auto daily = mean_daily_hours(ds);
  std::vector<double> y_hours, y_gwp;
  std::vector<std::vector<double>> cols(rep.hours_model.predictors.size());
  {
    std::size_t n_other = 0;
    for (const auto& p : ds.participants)
      if (p.gender == "other") ++n_other;
    double max_tier = 0;
    for (const auto& p : ds.participants)
      if (p.mobile_flatrate.kind == FlatrateKind::limited)
        max_tier = std::max(max_tier, p.mobile_flatrate.gb_per_month);
    for (const auto& p : ds.participants) {
      if (p.mobile_flatrate.kind == FlatrateKind::unknown) continue;
      if (p.gender == "other" && n_other < 2) continue;
      cols[0].push_back(p.digital_literacy);
      cols[1].push_back(p.impact_knowledge);
      cols[2].push_back(p.personal_norm);
      cols[3].push_back(p.paid_membership ? 1.0 : 0.0);
      cols[4].push_back(p.mobile_flatrate.kind == FlatrateKind::unlimited
                            ? 2.0 * max_tier
                            : p.mobile_flatrate.gb_per_month);
      cols[5].push_back(p.age);
      cols[6].push_back(p.education_level == "primary" ? 0.0
                        : p.education_level == "secondary" ? 1.0 : 2.0);
      cols[7].push_back(p.income_band == "low" ? 1.0
                        : p.income_band == "mid" ? 2.0 : 3.0);
      cols[8].push_back(p.gender == "female" ? 1.0 : 0.0);
      y_hours.push_back(daily.at(p.participant_id));
      y_gwp.push_back(gwp.at(p.participant_id));
    }
  }
  em.add_table("regression_hours",
               regression_table(rep.hours_model, y_hours, cols));
  em.add_table("regression_gwp", regression_table(rep.gwp_model, y_gwp, cols));
}

void run_scenario(const CommonOpts& o, const std::string& diary,
                  const std::string& profiles, const std::string& scenario,
                  Emitter& em) {
  ModelParams params = resolve_params(o);
  DiaryDataset ds = parse_dataset(diary, profiles);
  ScenarioSpec spec = load_scenario(scenario);
  auto [p2, ds2] = apply_scenario(spec, params, ds);

  auto cohort_total = [](const ModelParams& p, const DiaryDataset& d) {
    Components sum;
    for (const auto& part : d.participants)
      sum += footprint(p, d, part.participant_id).grand_total();
    return sum;
  };
  Components before = cohort_total(params, ds);
  Components after = cohort_total(p2, ds2);

  Table t;
  t.columns = {"component", "baseline_kg", "scenario_kg", "delta_kg",
               "delta_rel"};
  auto row = [&](const std::string& name, double b, double a) {
    const double rel = b != 0 ? (a - b) / b : 0.0;
    t.rows.push_back({name, fixed6(b), fixed6(a), fixed6(a - b), fixed6(rel)});
  };
  row("production", before.production_kg, after.production_kg);
  row("operation", before.operation_kg, after.operation_kg);
  row("traffic", before.traffic_kg, after.traffic_kg);
  row("total", before.total(), after.total());
  em.add_table("scenario_" + spec.name, t);
  std::cout << t.render(ReportFormat::table);
}

void run_tornado(const CommonOpts& o, const std::string& diary,
                 const std::string& profiles, const std::string& participant,
                 double fraction, Emitter& em) {
  ModelParams params = resolve_params(o);
  DiaryDataset ds = parse_dataset(diary, profiles);
  std::string pid = participant.empty() && !ds.participants.empty()
                        ? ds.participants.front().participant_id
                        : participant;
  std::map<std::string, double> ranges;
  for (const auto& path : numeric_param_paths()) ranges[path] = fraction;
  auto rep = tornado(params, ds, pid, ranges);
  Table t;
  t.columns = {"parameter", "low_total_kg", "high_total_kg", "swing_kg"};
  for (const auto& item : rep.items)
    t.rows.push_back({item.param, fixed6(item.low_total),
                      fixed6(item.high_total), fixed6(item.swing)});
  t.rows.push_back({"baseline", fixed6(rep.baseline_total), "", ""});
  em.add_table("tornado", t);
}

void run_mc(const CommonOpts& o, const std::string& diary,
            const std::string& profiles, const std::string& participant,
            const std::string& mc_config, std::uint64_t seed,
            std::size_t n_samples, Emitter& em) {
  ModelParams params = resolve_params(o);
  DiaryDataset ds = parse_dataset(diary, profiles);
  std::string pid = participant.empty() && !ds.participants.empty()
                        ? ds.participants.front().participant_id
                        : participant;
  McConfig cfg;
  if (!mc_config.empty()) {
    cfg = load_mc_config(mc_config);
    cfg.seed = seed;  // the flag always wins, for reproducibility by command
    if (n_samples) cfg.n_samples = n_samples;
  } else {
    cfg = default_mc_config(params, seed, n_samples ? n_samples : 1000);
  }
  auto s = monte_carlo(params, ds, pid, cfg);
  em.manifest.seed = std::to_string(cfg.seed);
  Table t;
  t.columns = {"participant", "mean_kg", "sd_kg", "p5_kg", "p50_kg", "p95_kg",
               "n_samples"};
  t.rows.push_back({pid, fixed6(s.mean), fixed6(s.sd), fixed6(s.p5),
                    fixed6(s.p50), fixed6(s.p95),
                    std::to_string(cfg.n_samples)});
  em.add_table("mc_summary", t);
  std::cout << t.render(ReportFormat::table);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greenhouse-gas footprint of online video streaming from usage diaries"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--params", common.params_path,
                 "parameter file (JSON); built-in defaults when omitted");
  app.add_option("--out-dir", common.out_dir, "directory for report files");
  app.add_option("--format", common.format, "report format: table|delimited")
      ->check(CLI::IsMember({"table", "delimited"}));
  app.add_flag("--strict", common.strict,
               "exit 2 when validation warnings are present");

  std::string diary, profiles, scenario, participant, by = "device",
                                                     mc_config;
  bool per_viewer = false;
  std::uint64_t seed = 20200101;  // fixed default, not wall-clock
  std::size_t n_samples = 0;
  double fraction = 0.2;

  auto* v = app.add_subcommand("validate", "parse and validate diary files");
  v->add_option("--diary", diary)->required();
  v->add_option("--profiles", profiles)->required();

  auto* f = app.add_subcommand("footprint", "weekly GWP breakdowns");
  f->add_option("--diary", diary)->required();
  f->add_option("--profiles", profiles)->required();
  f->add_option("--scenario", scenario, "scenario file to apply first");
  f->add_flag("--per-viewer", per_viewer,
              "divide emissions by audience size (not part of the published model)");
  f->add_option("--by", by, "grouping axis: device|platform|day|slot")
      ->check(CLI::IsMember({"device", "platform", "day", "slot"}));

  auto* i = app.add_subcommand("intensity", "per-hour GWP intensity per device");

  auto* a = app.add_subcommand("analyze",
                               "descriptives, weekend t-test, determinant regressions");
  a->add_option("--diary", diary)->required();
  a->add_option("--profiles", profiles)->required();

  auto* s = app.add_subcommand("scenario", "baseline vs scenario comparison");
  s->add_option("--diary", diary)->required();
  s->add_option("--profiles", profiles)->required();
  s->add_option("--scenario", scenario)->required();

  auto* tor = app.add_subcommand("tornado", "one-at-a-time sensitivity");
  tor->add_option("--diary", diary)->required();
  tor->add_option("--profiles", profiles)->required();
  tor->add_option("--participant", participant, "defaults to first participant");
  tor->add_option("--fraction", fraction, "relative range, default 0.2");

  auto* mc = app.add_subcommand("mc", "Monte Carlo over parameter ranges");
  mc->add_option("--diary", diary)->required();
  mc->add_option("--profiles", profiles)->required();
  mc->add_option("--participant", participant, "defaults to first participant");
  mc->add_option("--mc-config", mc_config, "distribution config (JSON)");
  mc->add_option("--seed", seed, "RNG seed (fixed default when omitted)");
  mc->add_option("--samples", n_samples, "number of samples");

  CLI11_PARSE(app, argc, argv);

  try {
    Emitter em;
    em.opts = common;
    std::vector<std::pair<std::string, std::string>> inputs;
    if (!diary.empty()) inputs.emplace_back("diary", diary);
    if (!profiles.empty()) inputs.emplace_back("profiles", profiles);
    if (!scenario.empty()) inputs.emplace_back("scenario", scenario);
    if (!mc_config.empty()) inputs.emplace_back("mc_config", mc_config);
    em.manifest = manifest_for(common, join_args(argc, argv), inputs);

    int rc = 0;
    if (v->parsed()) {
      DiaryDataset ds = parse_dataset(diary, profiles);
      std::cout << "ok: " << ds.participants.size() << " participants, "
                << ds.entries.size() << " entries, " << ds.warnings.size()
                << " warnings\n";
      return warnings_exit(ds, common);
    } else if (f->parsed()) {
      DiaryDataset ds = parse_dataset(diary, profiles);
      rc = warnings_exit(ds, common);
      run_footprint(common, diary, profiles, scenario, per_viewer, by, em);
    } else if (i->parsed()) {
      run_intensity(common, em);
    } else if (a->parsed()) {
      run_analyze(common, diary, profiles, em);
    } else if (s->parsed()) {
      run_scenario(common, diary, profiles, scenario, em);
    } else if (tor->parsed()) {
      run_tornado(common, diary, profiles, participant, fraction, em);
    } else if (mc->parsed()) {
      run_mc(common, diary, profiles, participant, mc_config, seed, n_samples,
             em);
    }
    em.flush();
    return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
