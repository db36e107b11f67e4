#include "streamlca/engine.hpp"

namespace streamlca {

Components FootprintBreakdown::grand_total() const {
  Components t;
  for (const auto& [key, c] : cells) t += c;
  return t;
}

std::map<DeviceKind, Components> FootprintBreakdown::by_device() const {
  std::map<DeviceKind, Components> out;
  for (const auto& [key, c] : cells) out[key.device] += c;
  return out;
}

std::map<PlatformCategory, Components> FootprintBreakdown::by_platform() const {
  std::map<PlatformCategory, Components> out;
  for (const auto& [key, c] : cells) out[key.platform] += c;
  return out;
}

std::map<int, Components> FootprintBreakdown::by_day() const {
  std::map<int, Components> out;
  for (const auto& [key, c] : cells) out[key.day_index] += c;
  return out;
}

double production_kg(const ModelParams& p, DeviceKind device,
                     double streaming_hours_day) {
  const DeviceProfile& prof = p.devices.at(device);
  const double lifetime_days = prof.lifetime_years * 365.0;
  return prof.embodied_kg / lifetime_days *
         (streaming_hours_day / prof.daily_use_hours);
}

double operation_kg(const ModelParams& p, DeviceKind device, double hours) {
  const DeviceProfile& prof = p.devices.at(device);
  return prof.power_watts / 1000.0 * hours * p.grid_device.kg_per_kwh;
}

double traffic_kg(const ModelParams& p, DeviceKind device,
                  Resolution resolution, double hours) {
  return bitrate_for(p, device, resolution) * hours * p.network.total() *
         p.grid_network.kg_per_kwh;
}

Components entry_components(const ModelParams& p, const DiaryEntry& e,
                            const FootprintOptions& opts) {
  Components c;
  c.production_kg = production_kg(p, e.device, e.hours);
  c.operation_kg = operation_kg(p, e.device, e.hours);
  c.traffic_kg = traffic_kg(p, e.device, e.resolution, e.hours);
  if (opts.per_viewer && e.audience > 1) {
    c.production_kg /= e.audience;
    c.operation_kg /= e.audience;
    c.traffic_kg /= e.audience;
  }
  return c;
}

FootprintBreakdown footprint(const ModelParams& p, const DiaryDataset& ds,
                             const std::string& participant,
                             const FootprintOptions& opts) {
  if (!ds.find_participant(participant))
    throw ValidationError("unknown participant: " + participant);
  FootprintBreakdown out;
  // sorted-key maps give order-independent accumulation
  for (const auto& e : ds.entries) {
    if (e.participant_id != participant || !in_model(e.platform)) continue;
    Components c = entry_components(p, e, opts);
    out.cells[{e.device, e.platform, e.day_index}] += c;
    out.by_slot[e.slot] += c;
  }
  return out;
}

std::vector<IntensityRow> intensity_table(const ModelParams& p) {
  std::vector<IntensityRow> rows;
  for (DeviceKind d : all_devices) {
    IntensityRow r;
    r.device = d;
    r.production_kg_per_h = production_kg(p, d, 1.0);
    r.electricity_kg_per_h = operation_kg(p, d, 1.0);
    r.traffic_kg_per_h = traffic_kg(p, d, Resolution::automatic, 1.0);
    r.total_kg_per_h =
        r.production_kg_per_h + r.electricity_kg_per_h + r.traffic_kg_per_h;
    rows.push_back(r);
  }
  return rows;
}

double annual_budget_share(double weekly_kg, double budget_kg_per_year) {
  if (!(budget_kg_per_year > 0))
    throw ValidationError("annual budget must be > 0");
  if (weekly_kg < 0) throw ValidationError("weekly footprint must be >= 0");
  return weekly_kg * 52.0 / budget_kg_per_year;
}

}  // namespace streamlca
