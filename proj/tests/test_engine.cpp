#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "streamlca/engine.hpp"

using namespace streamlca;

namespace {

// Reading tolerance: the published cells carry two (sometimes three)
// decimals, so small cells get the tighter band.
double cell_tol(double published) { return published >= 0.05 ? 0.01 : 0.005; }

// Straight per-entry recomputation, independent of the engine's accumulation
// path. Used as the brute-force oracle on tiny datasets.
Components brute_force_total(const ModelParams& p, const DiaryDataset& ds,
                             const std::string& pid) {
  Components sum;
  for (const auto& e : ds.entries) {
    if (e.participant_id != pid || e.platform == PlatformCategory::broadcast_tv)
      continue;
    const DeviceProfile& prof = p.devices.at(e.device);
    sum.production_kg += prof.embodied_kg / (prof.lifetime_years * 365.0) *
                         e.hours / prof.daily_use_hours;
    sum.operation_kg +=
        prof.power_watts / 1000.0 * e.hours * p.grid_device.kg_per_kwh;
    Resolution r = e.resolution;
    if (r == Resolution::automatic || r == Resolution::unknown)
      r = prof.native_resolution;
    sum.traffic_kg += p.bitrates.gb_per_hour.at(r) * e.hours *
                      (p.network.access_kwh_per_gb +
                       p.network.core_edge_kwh_per_gb +
                       p.network.datacenter_kwh_per_gb) *
                      p.grid_network.kg_per_kwh;
  }
  return sum;
}

DiaryEntry make_entry(const std::string& pid, int day, DaytimeSlot slot,
                      PlatformCategory plat, DeviceKind dev, double hours,
                      Resolution res = Resolution::automatic,
                      int audience = 1) {
  DiaryEntry e;
  e.participant_id = pid;
  e.day_index = day;
  e.slot = slot;
  e.platform = plat;
  e.device = dev;
  e.hours = hours;
  e.resolution = res;
  e.audience = audience;
  return e;
}

DiaryDataset single_participant(std::vector<DiaryEntry> entries) {
  DiaryDataset ds;
  ParticipantProfile p;
  p.participant_id = "p1";
  p.gender = "female";
  p.education_level = "tertiary";
  p.income_band = "mid";
  p.employment = "full_time";
  p.digital_literacy = p.impact_knowledge = p.personal_norm =
      p.environmental_concern = 3;
  ds.participants.push_back(p);
  ds.entries = std::move(entries);
  return ds;
}

}  // namespace

TEST_CASE("component formulas match the published per-hour intensities") {
  ModelParams p = default_params();
  // production: hand arithmetic E / (L * 365 * U)
  CHECK(production_kg(p, DeviceKind::laptop_pc, 1.0) ==
        doctest::Approx(250.0 / (6 * 365 * 1.27)).epsilon(1e-12));
  CHECK(std::fabs(production_kg(p, DeviceKind::laptop_pc, 1.0) - 0.09) <
        cell_tol(0.09));
  CHECK(std::fabs(production_kg(p, DeviceKind::smart_tv, 1.0) - 0.16) <
        cell_tol(0.16));
  CHECK(production_kg(p, DeviceKind::tablet, 0.0) == 0.0);

  CHECK(std::fabs(operation_kg(p, DeviceKind::smart_tv, 1.0) - 0.12) <
        cell_tol(0.12));
  CHECK(std::fabs(operation_kg(p, DeviceKind::laptop_pc, 1.0) - 0.02) <
        cell_tol(0.02));
  CHECK(operation_kg(p, DeviceKind::smartphone, 0.0) == 0.0);

  CHECK(std::fabs(traffic_kg(p, DeviceKind::smart_tv, Resolution::automatic,
                             1.0) - 0.07) < cell_tol(0.07));
  CHECK(std::fabs(traffic_kg(p, DeviceKind::smartphone, Resolution::automatic,
                             1.0) - 0.01) < cell_tol(0.01));
  CHECK(traffic_kg(p, DeviceKind::tablet, Resolution::automatic, 0.0) == 0.0);
}

TEST_CASE("intensity table matches all published cells within reading tolerance") {
  ModelParams p = default_params();
  struct Ref { DeviceKind d; double prod, elec, traf, sum; };
  const Ref refs[] = {
      {DeviceKind::laptop_pc, 0.09, 0.02, 0.05, 0.15},
      {DeviceKind::smartphone, 0.02, 0.004, 0.01, 0.03},
      {DeviceKind::smart_tv, 0.16, 0.12, 0.07, 0.36},
      {DeviceKind::tablet, 0.21, 0.003, 0.02, 0.23},
  };
  auto rows = intensity_table(p);
  for (const Ref& ref : refs) {
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const IntensityRow& r) { return r.device == ref.d; });
    REQUIRE(it != rows.end());
    CHECK(std::fabs(it->production_kg_per_h - ref.prod) < cell_tol(ref.prod));
    CHECK(std::fabs(it->electricity_kg_per_h - ref.elec) < cell_tol(ref.elec));
    CHECK(std::fabs(it->traffic_kg_per_h - ref.traf) < cell_tol(ref.traf));
    CHECK(std::fabs(it->total_kg_per_h - ref.sum) < cell_tol(ref.sum));
    CHECK(it->total_kg_per_h == it->production_kg_per_h +
                                    it->electricity_kg_per_h +
                                    it->traffic_kg_per_h);
  }
}

TEST_CASE("device ordering of total intensity") {
  auto rows = intensity_table(default_params());
  std::map<DeviceKind, double> total;
  for (const auto& r : rows) total[r.device] = r.total_kg_per_h;
  CHECK(total[DeviceKind::smartphone] < total[DeviceKind::laptop_pc]);
  CHECK(total[DeviceKind::laptop_pc] < total[DeviceKind::tablet]);
  CHECK(total[DeviceKind::tablet] < total[DeviceKind::smart_tv]);
  // headline device factor
  const double ratio =
      total[DeviceKind::smart_tv] / total[DeviceKind::smartphone];
  CHECK(ratio >= 10.0);
  CHECK(ratio <= 12.0);
}

TEST_CASE("single smart TV hour lands at the published total") {
  ModelParams p = default_params();
  auto ds = single_participant({make_entry("p1", 1, DaytimeSlot::evening,
                                           PlatformCategory::paid_platform,
                                           DeviceKind::smart_tv, 1.0)});
  const double total = footprint(p, ds, "p1").grand_total().total();
  CHECK(std::fabs(total - 0.36) < cell_tol(0.36));
}

TEST_CASE("empty diary gives an all-zero breakdown") {
  ModelParams p = default_params();
  auto ds = single_participant({});
  auto fb = footprint(p, ds, "p1");
  CHECK(fb.cells.empty());
  CHECK(fb.grand_total().total() == 0.0);
  CHECK_THROWS_AS(footprint(p, ds, "nobody"), ValidationError);
}

TEST_CASE("broadcast TV is outside the model") {
  ModelParams p = default_params();
  auto ds = single_participant({make_entry("p1", 1, DaytimeSlot::evening,
                                           PlatformCategory::broadcast_tv,
                                           DeviceKind::smart_tv, 3.0)});
  CHECK(footprint(p, ds, "p1").grand_total().total() == 0.0);
}

TEST_CASE("per-viewer option divides all components by audience") {
  ModelParams p = default_params();
  auto ds = single_participant({make_entry("p1", 1, DaytimeSlot::evening,
                                           PlatformCategory::paid_platform,
                                           DeviceKind::smart_tv, 2.0,
                                           Resolution::automatic, 2)});
  auto base = footprint(p, ds, "p1").grand_total();
  auto per = footprint(p, ds, "p1", {true}).grand_total();
  CHECK(per.production_kg == doctest::Approx(base.production_kg / 2).epsilon(1e-15));
  CHECK(per.operation_kg == doctest::Approx(base.operation_kg / 2).epsilon(1e-15));
  CHECK(per.traffic_kg == doctest::Approx(base.traffic_kg / 2).epsilon(1e-15));
}

TEST_CASE("resolution overrides touch only the traffic component") {
  ModelParams p = default_params();
  auto auto_ds = single_participant({make_entry("p1", 1, DaytimeSlot::evening,
                                                PlatformCategory::paid_platform,
                                                DeviceKind::smart_tv, 2.0)});
  auto low_ds = single_participant({make_entry("p1", 1, DaytimeSlot::evening,
                                               PlatformCategory::paid_platform,
                                               DeviceKind::smart_tv, 2.0,
                                               Resolution::r360p)});
  auto a = footprint(p, auto_ds, "p1").grand_total();
  auto b = footprint(p, low_ds, "p1").grand_total();
  CHECK(a.production_kg == b.production_kg);
  CHECK(a.operation_kg == b.operation_kg);
  CHECK(b.traffic_kg == doctest::Approx(a.traffic_kg * 0.3 / 1.8).epsilon(1e-12));
}

TEST_CASE("annual budget share") {
  CHECK(annual_budget_share(2.0) == doctest::Approx(104.0 / 1609.0).epsilon(1e-12));
  CHECK(annual_budget_share(0.0) == 0.0);
  CHECK(annual_budget_share(1609.0 / 52.0, 1609.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(annual_budget_share(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(annual_budget_share(-1.0), ValidationError);
}

TEST_CASE("weekly footprint of the synthetic average participant") {
  ModelParams p = default_params();
  DiaryDataset ds = synth_average_participant();
  auto fb = footprint(p, ds, "avg");
  const double total = fb.grand_total().total();
  CHECK(total == doctest::Approx(2.0).epsilon(0.10));
  CHECK(annual_budget_share(total) == doctest::Approx(0.065).epsilon(0.10));

  auto by_dev = fb.by_device();
  CHECK(by_dev.at(DeviceKind::smart_tv).total() ==
        doctest::Approx(0.89).epsilon(0.15));
  CHECK(by_dev.at(DeviceKind::smartphone).total() ==
        doctest::Approx(0.13).epsilon(0.15));

  auto by_plat = fb.by_platform();
  CHECK(by_plat.at(PlatformCategory::paid_platform).total() ==
        doctest::Approx(1.07).epsilon(0.15));
  CHECK(by_plat.at(PlatformCategory::free_platform).total() ==
        doctest::Approx(0.44).epsilon(0.15));
  CHECK(by_plat.at(PlatformCategory::tv_station_stream).total() ==
        doctest::Approx(0.39).epsilon(0.15));
  CHECK(by_plat.at(PlatformCategory::social_media).total() ==
        doctest::Approx(0.10).epsilon(0.15));

  const auto& paid = by_plat.at(PlatformCategory::paid_platform);
  const double traffic_share = paid.traffic_kg / paid.total();
  CHECK(traffic_share > 0.17);
  CHECK(traffic_share < 0.27);
}

namespace {

DiaryDataset random_dataset(std::mt19937_64& rng, int max_entries) {
  std::uniform_int_distribution<int> n_entries(0, max_entries);
  std::uniform_int_distribution<int> day(1, 7);
  std::uniform_int_distribution<int> slot(0, 3);
  std::uniform_int_distribution<int> plat(0, 4);
  std::uniform_int_distribution<int> dev(0, 3);
  std::uniform_int_distribution<int> res(0, 5);
  std::uniform_real_distribution<double> hours(0.0, 6.0);
  DiaryDataset ds = single_participant({});
  const Resolution all_res[] = {Resolution::r360p,    Resolution::r480p,
                                Resolution::r720p,    Resolution::r1080p,
                                Resolution::automatic, Resolution::unknown};
  int n = n_entries(rng);
  for (int i = 0; i < n; ++i) {
    ds.entries.push_back(make_entry(
        "p1", day(rng), all_slots[slot(rng)], all_platforms[plat(rng)],
        all_devices[dev(rng)], hours(rng), all_res[res(rng)]));
  }
  return ds;
}

bool close_rel(double a, double b, double rel) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-30});
  return std::fabs(a - b) <= rel * scale;
}

}  // namespace

TEST_CASE("properties: linearity, additivity, marginals, brute-force oracle") {
  ModelParams p = default_params();
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 300; ++iter) {
    DiaryDataset ds = random_dataset(rng, 10);
    auto fb = footprint(p, ds, "p1");
    auto total = fb.grand_total();

    // linearity: halving every entry's hours halves every cell
    DiaryDataset halved = ds;
    for (auto& e : halved.entries) e.hours *= 0.5;
    auto fbh = footprint(p, halved, "p1");
    for (const auto& [key, c] : fb.cells) {
      const auto& h = fbh.cells.at(key);
      CHECK(close_rel(h.production_kg * 2, c.production_kg, 1e-12));
      CHECK(close_rel(h.operation_kg * 2, c.operation_kg, 1e-12));
      CHECK(close_rel(h.traffic_kg * 2, c.traffic_kg, 1e-12));
    }

    // additivity over an entry partition
    DiaryDataset part1 = ds, part2 = ds;
    part1.entries.clear();
    part2.entries.clear();
    for (std::size_t i = 0; i < ds.entries.size(); ++i)
      (i % 2 ? part1 : part2).entries.push_back(ds.entries[i]);
    const double split_sum = footprint(p, part1, "p1").grand_total().total() +
                             footprint(p, part2, "p1").grand_total().total();
    CHECK(close_rel(split_sum, total.total(), 1e-12));

    // marginal consistency
    for (double marg : {[&] { double s = 0; for (auto& [k, c] : fb.by_device()) s += c.total(); return s; }(),
                        [&] { double s = 0; for (auto& [k, c] : fb.by_platform()) s += c.total(); return s; }(),
                        [&] { double s = 0; for (auto& [k, c] : fb.by_day()) s += c.total(); return s; }()})
      CHECK(close_rel(marg, total.total(), 1e-9));

    // brute-force oracle on small datasets
    if (ds.entries.size() <= 5) {
      auto oracle = brute_force_total(p, ds, "p1");
      CHECK(close_rel(oracle.production_kg, total.production_kg, 1e-12));
      CHECK(close_rel(oracle.operation_kg, total.operation_kg, 1e-12));
      CHECK(close_rel(oracle.traffic_kg, total.traffic_kg, 1e-12));
    }
  }
}
