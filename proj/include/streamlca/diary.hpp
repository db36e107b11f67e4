#ifndef STREAMLCA_DIARY_HPP
#define STREAMLCA_DIARY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "streamlca/params.hpp"

namespace streamlca {

enum class PlatformCategory {
  free_platform,
  paid_platform,
  social_media,
  tv_station_stream,
  broadcast_tv
};

inline constexpr std::array<PlatformCategory, 5> all_platforms{
    PlatformCategory::free_platform, PlatformCategory::paid_platform,
    PlatformCategory::social_media, PlatformCategory::tv_station_stream,
    PlatformCategory::broadcast_tv};

// broadcast_tv is diary data but stays outside the GWP model
bool in_model(PlatformCategory p);

enum class DaytimeSlot { morning, afternoon, evening, night };

inline constexpr std::array<DaytimeSlot, 4> all_slots{
    DaytimeSlot::morning, DaytimeSlot::afternoon, DaytimeSlot::evening,
    DaytimeSlot::night};

inline constexpr double slot_hours = 6.0;

std::string to_string(PlatformCategory p);
std::string to_string(DaytimeSlot s);
PlatformCategory platform_from_string(const std::string& s);
DaytimeSlot slot_from_string(const std::string& s);

struct DiaryEntry {
  std::string participant_id;
  int day_index = 0;  // 1..7, Monday = 1
  DaytimeSlot slot = DaytimeSlot::evening;
  PlatformCategory platform = PlatformCategory::free_platform;
  double hours = 0;
  DeviceKind device = DeviceKind::smartphone;
  int audience = 1;  // persons watching together, >= 1
  Resolution resolution = Resolution::automatic;
  std::set<std::string> parallel_activities;
};

enum class FlatrateKind { limited, unlimited, unknown };

struct MobileFlatrate {
  FlatrateKind kind = FlatrateKind::unknown;
  double gb_per_month = 0;  // meaningful only for limited
};

struct ParticipantProfile {
  std::string participant_id;
  double age = 0;
  std::string gender;           // female | male | other
  std::string education_level;  // primary | secondary | tertiary
  std::string income_band;      // low | mid | high
  std::string employment;       // full_time | half_time | unemployed
  bool paid_membership = false;
  MobileFlatrate mobile_flatrate;
  double digital_literacy = 0;      // 1..5
  double impact_knowledge = 0;      // 1..5
  double personal_norm = 0;         // 1..5
  double environmental_concern = 0; // 1..5
};

struct DiaryDataset {
  std::vector<ParticipantProfile> participants;
  std::vector<DiaryEntry> entries;
  std::vector<std::string> warnings;

  const ParticipantProfile* find_participant(const std::string& id) const;
};

// Parses and validates the two delimited files. Hard violations throw
// ParseError/ValidationError with row numbers; soft anomalies (per-slot
// totals above the slot length, multi-watching) land in warnings.
DiaryDataset parse_dataset(const std::string& diary_path,
                           const std::string& profile_path);

void save_dataset(const DiaryDataset& ds, const std::string& diary_path,
                  const std::string& profile_path);

// Weekly streaming hours per device for one participant, in-model entries
// only. Devices without entries are absent from the map.
std::map<DeviceKind, double> weekly_device_hours(const DiaryDataset& ds,
                                                 const std::string& participant);

// Built-in one-participant week whose per-device totals match the survey's
// reported weekly means (laptop 4.92 h, smartphone 3.76 h, smart TV 2.49 h,
// tablet 0.97 h). The platform split is documented in
// data/fixtures/README.md.
DiaryDataset synth_average_participant();

}  // namespace streamlca

#endif
