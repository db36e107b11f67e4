#include "streamlca/params.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace streamlca {

using nlohmann::json;

std::string to_string(DeviceKind d) {
  switch (d) {
    case DeviceKind::smartphone: return "smartphone";
    case DeviceKind::tablet: return "tablet";
    case DeviceKind::laptop_pc: return "laptop_pc";
    case DeviceKind::smart_tv: return "smart_tv";
  }
  return "?";
}

std::string to_string(Resolution r) {
  switch (r) {
    case Resolution::r360p: return "360p";
    case Resolution::r480p: return "480p";
    case Resolution::r720p: return "720p";
    case Resolution::r1080p: return "1080p";
    case Resolution::automatic: return "automatic";
    case Resolution::unknown: return "unknown";
  }
  return "?";
}

DeviceKind device_from_string(const std::string& s) {
  for (DeviceKind d : all_devices)
    if (to_string(d) == s) return d;
  throw ParseError("unknown device kind: '" + s + "'");
}

Resolution resolution_from_string(const std::string& s) {
  for (Resolution r : {Resolution::r360p, Resolution::r480p, Resolution::r720p,
                       Resolution::r1080p, Resolution::automatic,
                       Resolution::unknown})
    if (to_string(r) == s) return r;
  throw ParseError("unknown resolution: '" + s + "'");
}

ModelParams default_params() {
  ModelParams p;
  auto dev = [&](DeviceKind k, double e, double life, double watts,
                 Resolution native, double use) {
    p.devices[k] = DeviceProfile{k, e, life, watts, native, use};
  };
  dev(DeviceKind::smartphone, 44, 3, 6, Resolution::r360p, 2.01);
  dev(DeviceKind::tablet, 138, 3, 7, Resolution::r480p, 0.60);
  dev(DeviceKind::laptop_pc, 250, 6, 32, Resolution::r720p, 1.27);
  dev(DeviceKind::smart_tv, 1000, 8, 200, Resolution::r1080p, 2.14);

  p.bitrates.gb_per_hour = {{Resolution::r360p, 0.3},
                            {Resolution::r480p, 0.45},
                            {Resolution::r720p, 1.2},
                            {Resolution::r1080p, 1.8}};

  p.network = NetworkIntensity{0.004, 0.02, 0.049};

  p.grid_device = GridIntensity{"DE", 0.64};
  p.grid_network = GridIntensity{"EU-28", 0.48};

  for (DeviceKind d : all_devices) {
    const std::string base = "devices." + to_string(d) + ".";
    p.provenance[base + "embodied_kg"] = "paper-table-3";
    p.provenance[base + "lifetime_years"] = "paper-table-3";
    p.provenance[base + "power_watts"] = "paper-table-3";
    p.provenance[base + "native_resolution"] = "paper-table-2";
    p.provenance[base + "daily_use_hours"] = "derived-table-8";
  }
  for (Resolution r : concrete_resolutions)
    p.provenance["bitrates." + to_string(r)] = "paper-table-2";
  p.provenance["network.access_kwh_per_gb"] = "paper-table-4";
  p.provenance["network.core_edge_kwh_per_gb"] = "paper-table-4";
  p.provenance["network.datacenter_kwh_per_gb"] = "paper-table-4";
  p.provenance["grid_device.kg_per_kwh"] = "derived-table-8-fit";
  p.provenance["grid_network.kg_per_kwh"] = "derived-table-8-fit";
  return p;
}

namespace {

void require_positive(double v, const std::string& field) {
  if (!(v > 0))
    throw ValidationError(field + " must be > 0, got " + std::to_string(v));
}

void validate_grid(const GridIntensity& g, const std::string& field) {
  require_positive(g.kg_per_kwh, field + ".kg_per_kwh");
  if (!(g.kg_per_kwh < 2.0))
    throw ValidationError(field + ".kg_per_kwh must be < 2.0, got " +
                          std::to_string(g.kg_per_kwh));
}

}  // namespace

void validate(const ModelParams& p) {
  for (DeviceKind d : all_devices) {
    auto it = p.devices.find(d);
    if (it == p.devices.end())
      throw ValidationError("missing device profile: " + to_string(d));
    const DeviceProfile& prof = it->second;
    const std::string base = "devices." + to_string(d) + ".";
    require_positive(prof.embodied_kg, base + "embodied_kg");
    require_positive(prof.lifetime_years, base + "lifetime_years");
    require_positive(prof.power_watts, base + "power_watts");
    require_positive(prof.daily_use_hours, base + "daily_use_hours");
    if (prof.daily_use_hours > 24.0)
      throw ValidationError(base + "daily_use_hours must be <= 24, got " +
                            std::to_string(prof.daily_use_hours));
    if (prof.native_resolution == Resolution::automatic ||
        prof.native_resolution == Resolution::unknown)
      throw ValidationError(base + "native_resolution must be concrete");
    if (!p.bitrates.gb_per_hour.count(prof.native_resolution))
      throw ValidationError("no bitrate entry for native resolution of " +
                            to_string(d));
  }
  double prev = 0;
  for (Resolution r : concrete_resolutions) {
    auto it = p.bitrates.gb_per_hour.find(r);
    if (it == p.bitrates.gb_per_hour.end())
      throw ValidationError("missing bitrate for " + to_string(r));
    require_positive(it->second, "bitrates." + to_string(r));
    if (it->second < prev)
      throw ValidationError("bitrates must be non-decreasing in resolution; " +
                            to_string(r) + " breaks the order");
    prev = it->second;
  }
  if (p.network.access_kwh_per_gb < 0 || p.network.core_edge_kwh_per_gb < 0 ||
      p.network.datacenter_kwh_per_gb < 0)
    throw ValidationError("network intensities must be >= 0");
  validate_grid(p.grid_device, "grid_device");
  validate_grid(p.grid_network, "grid_network");
}

double bitrate_for(const ModelParams& p, DeviceKind device, Resolution chosen) {
  Resolution r = chosen;
  if (r == Resolution::automatic || r == Resolution::unknown) {
    auto it = p.devices.find(device);
    if (it == p.devices.end())
      throw ConfigError("no profile for device " + to_string(device));
    r = it->second.native_resolution;
  }
  auto it = p.bitrates.gb_per_hour.find(r);
  if (it == p.bitrates.gb_per_hour.end())
    throw ConfigError("no bitrate entry for resolution " + to_string(r));
  return it->second;
}

namespace {

// Rejects any key not in `allowed`; silent drift would skew results.
void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok)
      throw ParseError("unknown field '" + it.key() + "' in " + where);
  }
}

double get_num(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key))
    throw ParseError("missing field '" + std::string(key) + "' in " + where);
  if (!obj[key].is_number())
    throw ParseError("field '" + std::string(key) + "' in " + where +
                     " must be numeric");
  return obj[key].get<double>();
}

json grid_to_json(const GridIntensity& g) {
  return json{{"region_label", g.region_label}, {"kg_per_kwh", g.kg_per_kwh}};
}

GridIntensity grid_from_json(const json& j, const std::string& where) {
  check_keys(j, {"region_label", "kg_per_kwh"}, where);
  GridIntensity g;
  if (j.contains("region_label")) g.region_label = j["region_label"].get<std::string>();
  g.kg_per_kwh = get_num(j, "kg_per_kwh", where);
  return g;
}

}  // namespace

std::string params_to_json(const ModelParams& p) {
  json j;
  for (const auto& [kind, prof] : p.devices) {
    j["devices"][to_string(kind)] = {
        {"embodied_kg", prof.embodied_kg},
        {"lifetime_years", prof.lifetime_years},
        {"power_watts", prof.power_watts},
        {"native_resolution", to_string(prof.native_resolution)},
        {"daily_use_hours", prof.daily_use_hours}};
  }
  for (const auto& [r, v] : p.bitrates.gb_per_hour)
    j["bitrates"][to_string(r)] = v;
  j["network"] = {{"access_kwh_per_gb", p.network.access_kwh_per_gb},
                  {"core_edge_kwh_per_gb", p.network.core_edge_kwh_per_gb},
                  {"datacenter_kwh_per_gb", p.network.datacenter_kwh_per_gb}};
  j["grid_device"] = grid_to_json(p.grid_device);
  j["grid_network"] = grid_to_json(p.grid_network);
  if (!p.provenance.empty()) {
    json prov = json::object();
    for (const auto& [k, v] : p.provenance) prov[k] = v;
    j["provenance"] = prov;
  }
  return j.dump(2) + "\n";
}

ModelParams params_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("parameter file is not valid JSON: ") +
                     e.what());
  }
  check_keys(j, {"devices", "bitrates", "network", "grid_device",
                 "grid_network", "provenance"},
             "parameter file");
  ModelParams p;
  if (!j.contains("devices"))
    throw ParseError("missing 'devices' section in parameter file");
  for (auto it = j["devices"].begin(); it != j["devices"].end(); ++it) {
    DeviceKind kind = device_from_string(it.key());
    const std::string where = "devices." + it.key();
    check_keys(*it,
               {"embodied_kg", "lifetime_years", "power_watts",
                "native_resolution", "daily_use_hours"},
               where);
    DeviceProfile prof;
    prof.kind = kind;
    prof.embodied_kg = get_num(*it, "embodied_kg", where);
    prof.lifetime_years = get_num(*it, "lifetime_years", where);
    prof.power_watts = get_num(*it, "power_watts", where);
    prof.daily_use_hours = get_num(*it, "daily_use_hours", where);
    if (!it->contains("native_resolution"))
      throw ParseError("missing field 'native_resolution' in " + where);
    prof.native_resolution =
        resolution_from_string((*it)["native_resolution"].get<std::string>());
    p.devices[kind] = prof;
  }
  if (!j.contains("bitrates"))
    throw ParseError("missing 'bitrates' section in parameter file");
  for (auto it = j["bitrates"].begin(); it != j["bitrates"].end(); ++it) {
    Resolution r = resolution_from_string(it.key());
    if (!it->is_number())
      throw ParseError("bitrates." + it.key() + " must be numeric");
    p.bitrates.gb_per_hour[r] = it->get<double>();
  }
  if (!j.contains("network"))
    throw ParseError("missing 'network' section in parameter file");
  check_keys(j["network"],
             {"access_kwh_per_gb", "core_edge_kwh_per_gb",
              "datacenter_kwh_per_gb"},
             "network");
  p.network.access_kwh_per_gb = get_num(j["network"], "access_kwh_per_gb", "network");
  p.network.core_edge_kwh_per_gb =
      get_num(j["network"], "core_edge_kwh_per_gb", "network");
  p.network.datacenter_kwh_per_gb =
      get_num(j["network"], "datacenter_kwh_per_gb", "network");
  if (!j.contains("grid_device") || !j.contains("grid_network"))
    throw ParseError("missing grid_device/grid_network section");
  p.grid_device = grid_from_json(j["grid_device"], "grid_device");
  p.grid_network = grid_from_json(j["grid_network"], "grid_network");
  if (j.contains("provenance"))
    for (auto it = j["provenance"].begin(); it != j["provenance"].end(); ++it)
      p.provenance[it.key()] = it->get<std::string>();
  validate(p);
  return p;
}

ModelParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open parameter file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return params_from_json(ss.str());
}

void save_params(const ModelParams& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write parameter file: " + path);
  out << params_to_json(p);
}

std::vector<std::string> numeric_param_paths() {
  std::vector<std::string> paths;
  for (DeviceKind d : all_devices) {
    const std::string base = "devices." + to_string(d) + ".";
    for (const char* f :
         {"embodied_kg", "lifetime_years", "power_watts", "daily_use_hours"})
      paths.push_back(base + f);
  }
  for (Resolution r : concrete_resolutions)
    paths.push_back("bitrates." + to_string(r));
  for (const char* f :
       {"access_kwh_per_gb", "core_edge_kwh_per_gb", "datacenter_kwh_per_gb"})
    paths.push_back(std::string("network.") + f);
  paths.push_back("grid_device.kg_per_kwh");
  paths.push_back("grid_network.kg_per_kwh");
  return paths;
}

namespace {

double* resolve(ModelParams& p, const std::string& path) {
  auto dot = path.find('.');
  if (dot == std::string::npos) return nullptr;
  const std::string head = path.substr(0, dot);
  const std::string rest = path.substr(dot + 1);
  if (head == "devices") {
    auto dot2 = rest.find('.');
    if (dot2 == std::string::npos) return nullptr;
    DeviceKind d = device_from_string(rest.substr(0, dot2));
    const std::string field = rest.substr(dot2 + 1);
    DeviceProfile& prof = p.devices.at(d);
    if (field == "embodied_kg") return &prof.embodied_kg;
    if (field == "lifetime_years") return &prof.lifetime_years;
    if (field == "power_watts") return &prof.power_watts;
    if (field == "daily_use_hours") return &prof.daily_use_hours;
    return nullptr;
  }
  if (head == "bitrates") {
    Resolution r = resolution_from_string(rest);
    auto it = p.bitrates.gb_per_hour.find(r);
    return it == p.bitrates.gb_per_hour.end() ? nullptr : &it->second;
  }
  if (head == "network") {
    if (rest == "access_kwh_per_gb") return &p.network.access_kwh_per_gb;
    if (rest == "core_edge_kwh_per_gb") return &p.network.core_edge_kwh_per_gb;
    if (rest == "datacenter_kwh_per_gb")
      return &p.network.datacenter_kwh_per_gb;
    return nullptr;
  }
  if (head == "grid_device" && rest == "kg_per_kwh")
    return &p.grid_device.kg_per_kwh;
  if (head == "grid_network" && rest == "kg_per_kwh")
    return &p.grid_network.kg_per_kwh;
  return nullptr;
}

}  // namespace

double get_param(const ModelParams& p, const std::string& path) {
  ModelParams& mut = const_cast<ModelParams&>(p);
  double* leaf = nullptr;
  try {
    leaf = resolve(mut, path);
  } catch (const Error&) {
    leaf = nullptr;
  }
  if (!leaf) throw ConfigError("unknown parameter path: '" + path + "'");
  return *leaf;
}

void set_param(ModelParams& p, const std::string& path, double value) {
  double* leaf = nullptr;
  try {
    leaf = resolve(p, path);
  } catch (const Error&) {
    leaf = nullptr;
  }
  if (!leaf) throw ConfigError("unknown parameter path: '" + path + "'");
  *leaf = value;
}

}  // namespace streamlca
