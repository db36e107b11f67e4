#ifndef STREAMLCA_ENGINE_HPP
#define STREAMLCA_ENGINE_HPP

#include <compare>
#include <map>
#include <vector>

#include "streamlca/diary.hpp"
#include "streamlca/params.hpp"

namespace streamlca {

struct Components {
  double production_kg = 0;
  double operation_kg = 0;
  double traffic_kg = 0;
  double total() const { return production_kg + operation_kg + traffic_kg; }
  Components& operator+=(const Components& o) {
    production_kg += o.production_kg;
    operation_kg += o.operation_kg;
    traffic_kg += o.traffic_kg;
    return *this;
  }
};

struct CellKey {
  DeviceKind device;
  PlatformCategory platform;
  int day_index;
  auto operator<=>(const CellKey&) const = default;
};

struct FootprintBreakdown {
  std::map<CellKey, Components> cells;
  std::map<DaytimeSlot, Components> by_slot;

  Components grand_total() const;
  std::map<DeviceKind, Components> by_device() const;
  std::map<PlatformCategory, Components> by_platform() const;
  std::map<int, Components> by_day() const;
};

struct FootprintOptions {
  // Divide all components of an entry by its audience size. Not part of the
  // published model; off by default.
  bool per_viewer = false;
};

// Embodied emissions allocated to streaming_hours_day of streaming:
// E_i / (lifetime_days) * streaming_hours_day / daily_use_hours.
double production_kg(const ModelParams& p, DeviceKind device,
                     double streaming_hours_day);

// Device operation electricity: P_i(kW) * hours * grid_device intensity.
double operation_kg(const ModelParams& p, DeviceKind device, double hours);

// Data transmission: bitrate * hours * network intensity * grid_network
// intensity.
double traffic_kg(const ModelParams& p, DeviceKind device,
                  Resolution resolution, double hours);

// Per-entry emissions for one entry (audience division applied when
// opts.per_viewer).
Components entry_components(const ModelParams& p, const DiaryEntry& e,
                            const FootprintOptions& opts = {});

// Weekly footprint of one participant; broadcast TV excluded.
FootprintBreakdown footprint(const ModelParams& p, const DiaryDataset& ds,
                             const std::string& participant,
                             const FootprintOptions& opts = {});

struct IntensityRow {
  DeviceKind device;
  double production_kg_per_h = 0;
  double electricity_kg_per_h = 0;
  double traffic_kg_per_h = 0;
  double total_kg_per_h = 0;
};

// Per-hour intensities for each device at its native resolution.
std::vector<IntensityRow> intensity_table(const ModelParams& p);

// weekly_kg * 52 / budget_kg_per_year. Default budget: 1609 kg/yr.
double annual_budget_share(double weekly_kg, double budget_kg_per_year = 1609.0);

}  // namespace streamlca

#endif
