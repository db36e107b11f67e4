#ifndef STREAMLCA_PARAMS_HPP
#define STREAMLCA_PARAMS_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "streamlca/error.hpp"

namespace streamlca {

enum class DeviceKind { smartphone, tablet, laptop_pc, smart_tv };

inline constexpr std::array<DeviceKind, 4> all_devices{
    DeviceKind::smartphone, DeviceKind::tablet, DeviceKind::laptop_pc,
    DeviceKind::smart_tv};

enum class Resolution { r360p, r480p, r720p, r1080p, automatic, unknown };

// The four concrete resolutions, in ascending order.
inline constexpr std::array<Resolution, 4> concrete_resolutions{
    Resolution::r360p, Resolution::r480p, Resolution::r720p,
    Resolution::r1080p};

std::string to_string(DeviceKind d);
std::string to_string(Resolution r);
DeviceKind device_from_string(const std::string& s);
Resolution resolution_from_string(const std::string& s);

struct DeviceProfile {
  DeviceKind kind{};
  double embodied_kg = 0;       // production emissions, kg CO2-eq.
  double lifetime_years = 0;
  double power_watts = 0;       // medium load
  Resolution native_resolution = Resolution::unknown;
  double daily_use_hours = 0;   // overall daily device use, allocation denominator
};

struct BitrateTable {
  std::map<Resolution, double> gb_per_hour;  // concrete resolutions only
};

struct NetworkIntensity {
  double access_kwh_per_gb = 0;
  double core_edge_kwh_per_gb = 0;
  double datacenter_kwh_per_gb = 0;
  double total() const {
    return access_kwh_per_gb + core_edge_kwh_per_gb + datacenter_kwh_per_gb;
  }
};

struct GridIntensity {
  std::string region_label;
  double kg_per_kwh = 0;
};

struct ModelParams {
  std::map<DeviceKind, DeviceProfile> devices;
  BitrateTable bitrates;
  NetworkIntensity network;
  GridIntensity grid_device;   // device operation electricity
  GridIntensity grid_network;  // network + data-center electricity
  // dotted parameter path -> origin of the value ("paper-table-3", ...)
  std::map<std::string, std::string> provenance;
};

// Built-in parameter set; see data/default_params.json for the same values
// in file form.
ModelParams default_params();

// Throws ValidationError naming the first violated field and bound.
void validate(const ModelParams& p);

// Bitrate for a device/resolution choice. automatic/unknown resolve to the
// device's native resolution.
double bitrate_for(const ModelParams& p, DeviceKind device, Resolution chosen);

ModelParams load_params(const std::string& path);
void save_params(const ModelParams& p, const std::string& path);
std::string params_to_json(const ModelParams& p);
ModelParams params_from_json(const std::string& text);

// Numeric leaves addressable by dotted path, e.g. "devices.smart_tv.embodied_kg",
// "bitrates.720p", "grid_network.kg_per_kwh". Used by scenario overrides,
// tornado ranges and Monte Carlo distributions.
std::vector<std::string> numeric_param_paths();
double get_param(const ModelParams& p, const std::string& path);
void set_param(ModelParams& p, const std::string& path, double value);

}  // namespace streamlca

#endif
