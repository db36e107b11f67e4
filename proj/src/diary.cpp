#include "streamlca/diary.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace streamlca {

bool in_model(PlatformCategory p) {
  return p != PlatformCategory::broadcast_tv;
}

std::string to_string(PlatformCategory p) {
  switch (p) {
    case PlatformCategory::free_platform: return "free_platform";
    case PlatformCategory::paid_platform: return "paid_platform";
    case PlatformCategory::social_media: return "social_media";
    case PlatformCategory::tv_station_stream: return "tv_station_stream";
    case PlatformCategory::broadcast_tv: return "broadcast_tv";
  }
  return "?";
}

std::string to_string(DaytimeSlot s) {
  switch (s) {
    case DaytimeSlot::morning: return "morning";
    case DaytimeSlot::afternoon: return "afternoon";
    case DaytimeSlot::evening: return "evening";
    case DaytimeSlot::night: return "night";
  }
  return "?";
}

PlatformCategory platform_from_string(const std::string& s) {
  for (PlatformCategory p : all_platforms)
    if (to_string(p) == s) return p;
  throw ParseError("unknown platform: '" + s + "'");
}

DaytimeSlot slot_from_string(const std::string& s) {
  for (DaytimeSlot sl : all_slots)
    if (to_string(sl) == s) return sl;
  throw ParseError("unknown daytime slot: '" + s + "'");
}

const ParticipantProfile* DiaryDataset::find_participant(
    const std::string& id) const {
  for (const auto& p : participants)
    if (p.participant_id == id) return &p;
  return nullptr;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what, int row) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(what + " is not a number ('" + s + "'), row " +
                     std::to_string(row));
  }
}

int parse_int(const std::string& s, const std::string& what, int row) {
  double v = parse_double(s, what, row);
  int i = static_cast<int>(v);
  if (v != i)
    throw ParseError(what + " must be an integer, row " + std::to_string(row));
  return i;
}

const std::vector<std::string> entry_header = {
    "participant_id", "day",      "slot",       "platform", "device",
    "hours",          "audience", "resolution", "parallel_activities"};

const std::vector<std::string> profile_header = {
    "participant_id",   "age",
    "gender",           "education",
    "income",           "employment",
    "paid_membership",  "mobile_flatrate_gb",
    "digital_literacy", "impact_knowledge",
    "personal_norm",    "environmental_concern"};

void check_header(const std::vector<std::string>& got,
                  const std::vector<std::string>& want,
                  const std::string& file) {
  if (got != want) {
    std::string expect;
    for (const auto& c : want) expect += (expect.empty() ? "" : ",") + c;
    throw ParseError("bad header in " + file + "; expected: " + expect);
  }
}

void check_score(double v, const std::string& what, const std::string& id) {
  if (v < 1 || v > 5)
    throw ValidationError(what + " out of scale bounds [1,5] for participant " +
                          id);
}

bool parse_bool(const std::string& s, const std::string& what, int row) {
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no") return false;
  throw ParseError(what + " must be boolean, row " + std::to_string(row));
}

}  // namespace

DiaryDataset parse_dataset(const std::string& diary_path,
                           const std::string& profile_path) {
  DiaryDataset ds;

  std::ifstream pf(profile_path);
  if (!pf) throw ParseError("cannot open profile file: " + profile_path);
  std::string line;
  int row = 0;
  std::set<std::string> seen_ids;
  while (std::getline(pf, line)) {
    ++row;
    if (line.empty()) continue;
    auto cols = split(line, ',');
    if (row == 1) {
      check_header(cols, profile_header, profile_path);
      continue;
    }
    if (cols.size() != profile_header.size())
      throw ParseError("wrong column count in profile row " +
                       std::to_string(row));
    ParticipantProfile p;
    p.participant_id = cols[0];
    if (p.participant_id.empty())
      throw ParseError("empty participant_id, row " + std::to_string(row));
    if (!seen_ids.insert(p.participant_id).second)
      throw ValidationError("duplicate participant_id '" + p.participant_id +
                            "', row " + std::to_string(row));
    p.age = parse_double(cols[1], "age", row);
    if (p.age < 0) throw ValidationError("negative age, row " + std::to_string(row));
    p.gender = cols[2];
    if (p.gender != "female" && p.gender != "male" && p.gender != "other")
      throw ParseError("unknown gender '" + p.gender + "', row " +
                       std::to_string(row));
    p.education_level = cols[3];
    if (p.education_level != "primary" && p.education_level != "secondary" &&
        p.education_level != "tertiary")
      throw ParseError("unknown education level '" + p.education_level +
                       "', row " + std::to_string(row));
    p.income_band = cols[4];
    if (p.income_band != "low" && p.income_band != "mid" &&
        p.income_band != "high")
      throw ParseError("unknown income band '" + p.income_band + "', row " +
                       std::to_string(row));
    p.employment = cols[5];
    if (p.employment != "full_time" && p.employment != "half_time" &&
        p.employment != "unemployed")
      throw ParseError("unknown employment '" + p.employment + "', row " +
                       std::to_string(row));
    p.paid_membership = parse_bool(cols[6], "paid_membership", row);
    if (cols[7] == "unlimited") {
      p.mobile_flatrate.kind = FlatrateKind::unlimited;
    } else if (cols[7] == "unknown") {
      p.mobile_flatrate.kind = FlatrateKind::unknown;
    } else {
      p.mobile_flatrate.kind = FlatrateKind::limited;
      p.mobile_flatrate.gb_per_month =
          parse_double(cols[7], "mobile_flatrate_gb", row);
      if (p.mobile_flatrate.gb_per_month < 0)
        throw ValidationError("negative flat rate, row " + std::to_string(row));
    }
    p.digital_literacy = parse_double(cols[8], "digital_literacy", row);
    p.impact_knowledge = parse_double(cols[9], "impact_knowledge", row);
    p.personal_norm = parse_double(cols[10], "personal_norm", row);
    p.environmental_concern =
        parse_double(cols[11], "environmental_concern", row);
    check_score(p.digital_literacy, "digital_literacy", p.participant_id);
    check_score(p.impact_knowledge, "impact_knowledge", p.participant_id);
    check_score(p.personal_norm, "personal_norm", p.participant_id);
    check_score(p.environmental_concern, "environmental_concern",
                p.participant_id);
    ds.participants.push_back(std::move(p));
  }

  std::ifstream ef(diary_path);
  if (!ef) throw ParseError("cannot open diary file: " + diary_path);
  row = 0;
  std::set<std::tuple<std::string, int, DaytimeSlot, PlatformCategory>> keys;
  while (std::getline(ef, line)) {
    ++row;
    if (line.empty()) continue;
    auto cols = split(line, ',');
    if (row == 1) {
      check_header(cols, entry_header, diary_path);
      continue;
    }
    if (cols.size() != entry_header.size())
      throw ParseError("wrong column count in diary row " +
                       std::to_string(row));
    DiaryEntry e;
    e.participant_id = cols[0];
    if (!ds.find_participant(e.participant_id))
      throw ValidationError("unknown participant_id '" + e.participant_id +
                            "', row " + std::to_string(row));
    e.day_index = parse_int(cols[1], "day", row);
    if (e.day_index < 1 || e.day_index > 7)
      throw ValidationError("day out of range 1..7, row " +
                            std::to_string(row));
    try {
      e.slot = slot_from_string(cols[2]);
      e.platform = platform_from_string(cols[3]);
      e.device = device_from_string(cols[4]);
    } catch (const ParseError& err) {
      throw ParseError(std::string(err.what()) + ", row " +
                       std::to_string(row));
    }
    e.hours = parse_double(cols[5], "hours", row);
    if (e.hours < 0 || e.hours > slot_hours)
      throw ValidationError("hours out of range [0," +
                            std::to_string(static_cast<int>(slot_hours)) +
                            "], row " + std::to_string(row));
    e.audience = parse_int(cols[6], "audience", row);
    if (e.audience < 1)
      throw ValidationError("audience must be >= 1, row " +
                            std::to_string(row));
    try {
      e.resolution = resolution_from_string(cols[7]);
    } catch (const ParseError& err) {
      throw ParseError(std::string(err.what()) + ", row " +
                       std::to_string(row));
    }
    if (!cols[8].empty())
      for (const auto& act : split(cols[8], ';'))
        if (!act.empty()) e.parallel_activities.insert(act);
    auto key = std::make_tuple(e.participant_id, e.day_index, e.slot,
                               e.platform);
    if (!keys.insert(key).second)
      throw ValidationError("duplicate (participant, day, slot, platform) key, row " +
                            std::to_string(row));
    ds.entries.push_back(std::move(e));
  }

  // oversubscribed slots: totals above the slot length point at
  // multi-watching, which the diary format allows
  std::map<std::tuple<std::string, int, DaytimeSlot>, double> slot_totals;
  for (const auto& e : ds.entries)
    slot_totals[{e.participant_id, e.day_index, e.slot}] += e.hours;
  for (const auto& [key, total] : slot_totals) {
    if (total > slot_hours) {
      std::ostringstream w;
      w << "slot oversubscribed (multi-watching?): participant "
        << std::get<0>(key) << ", day " << std::get<1>(key) << ", "
        << to_string(std::get<2>(key)) << " totals " << total << " h";
      ds.warnings.push_back(w.str());
    }
  }
  return ds;
}

namespace {

std::string join(const std::set<std::string>& items, char sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::string num(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

}  // namespace

void save_dataset(const DiaryDataset& ds, const std::string& diary_path,
                  const std::string& profile_path) {
  std::ofstream pf(profile_path);
  if (!pf) throw Error("cannot write profile file: " + profile_path);
  for (std::size_t i = 0; i < profile_header.size(); ++i)
    pf << (i ? "," : "") << profile_header[i];
  pf << "\n";
  for (const auto& p : ds.participants) {
    std::string flat;
    switch (p.mobile_flatrate.kind) {
      case FlatrateKind::unlimited: flat = "unlimited"; break;
      case FlatrateKind::unknown: flat = "unknown"; break;
      case FlatrateKind::limited: flat = num(p.mobile_flatrate.gb_per_month); break;
    }
    pf << p.participant_id << "," << num(p.age) << "," << p.gender << ","
       << p.education_level << "," << p.income_band << "," << p.employment
       << "," << (p.paid_membership ? "1" : "0") << "," << flat << ","
       << num(p.digital_literacy) << "," << num(p.impact_knowledge) << ","
       << num(p.personal_norm) << "," << num(p.environmental_concern) << "\n";
  }

  std::ofstream ef(diary_path);
  if (!ef) throw Error("cannot write diary file: " + diary_path);
  for (std::size_t i = 0; i < entry_header.size(); ++i)
    ef << (i ? "," : "") << entry_header[i];
  ef << "\n";
  for (const auto& e : ds.entries) {
    ef << e.participant_id << "," << e.day_index << "," << to_string(e.slot)
       << "," << to_string(e.platform) << "," << to_string(e.device) << ","
       << num(e.hours) << "," << e.audience << "," << to_string(e.resolution)
       << "," << join(e.parallel_activities, ';') << "\n";
  }
}

std::map<DeviceKind, double> weekly_device_hours(const DiaryDataset& ds,
                                                 const std::string& participant) {
  if (!ds.find_participant(participant))
    throw ValidationError("unknown participant: " + participant);
  std::map<DeviceKind, double> out;
  for (const auto& e : ds.entries) {
    if (e.participant_id != participant || !in_model(e.platform)) continue;
    out[e.device] += e.hours;
  }
  return out;
}

DiaryDataset synth_average_participant() {
  DiaryDataset ds;
  ParticipantProfile p;
  p.participant_id = "avg";
  p.age = 35;
  p.gender = "female";
  p.education_level = "tertiary";
  p.income_band = "mid";
  p.employment = "full_time";
  p.paid_membership = true;
  p.mobile_flatrate = {FlatrateKind::limited, 2.0};
  p.digital_literacy = 3.3;
  p.impact_knowledge = 2.67;
  p.personal_norm = 3.08;
  p.environmental_concern = 3.5;
  ds.participants.push_back(p);

  // Weekly hours per (platform, device); column sums reproduce the survey's
  // per-device weekly means. See data/fixtures/README.md for how the split
  // was chosen.
  struct Cell {
    PlatformCategory platform;
    DeviceKind device;
    double hours;
    int day;
    DaytimeSlot slot;
  };
  using P = PlatformCategory;
  using D = DeviceKind;
  using S = DaytimeSlot;
  const Cell cells[] = {
      {P::free_platform, D::laptop_pc, 1.50, 6, S::evening},
      {P::free_platform, D::smartphone, 1.20, 3, S::evening},
      {P::free_platform, D::smart_tv, 0.40, 7, S::evening},
      {P::paid_platform, D::laptop_pc, 2.10, 2, S::evening},
      {P::paid_platform, D::smartphone, 0.50, 4, S::afternoon},
      {P::paid_platform, D::smart_tv, 1.77, 7, S::evening},
      {P::paid_platform, D::tablet, 0.43, 5, S::evening},
      {P::social_media, D::laptop_pc, 0.15, 1, S::morning},
      {P::social_media, D::smartphone, 2.06, 5, S::afternoon},
      {P::tv_station_stream, D::laptop_pc, 1.17, 1, S::evening},
      {P::tv_station_stream, D::smart_tv, 0.32, 3, S::night},
      {P::tv_station_stream, D::tablet, 0.54, 2, S::afternoon},
  };
  for (const Cell& c : cells) {
    DiaryEntry e;
    e.participant_id = "avg";
    e.day_index = c.day;
    e.slot = c.slot;
    e.platform = c.platform;
    e.device = c.device;
    e.hours = c.hours;
    e.audience = 1;
    e.resolution = Resolution::automatic;
    ds.entries.push_back(e);
  }
  return ds;
}

}  // namespace streamlca
