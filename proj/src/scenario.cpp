#include "faultnet/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "faultnet/error.hpp"

namespace faultnet {

const SwitchMap& default_switch_map() noexcept {
  static const SwitchMap map = {{
      {Leg::A, Position::Upper},  // S1
      {Leg::C, Position::Lower},  // S2
      {Leg::B, Position::Upper},  // S3
      {Leg::A, Position::Lower},  // S4
      {Leg::C, Position::Upper},  // S5
      {Leg::B, Position::Lower},  // S6
  }};
  return map;
}

SwitchLocation switch_effect(SwitchId s) noexcept {
  return default_switch_map()[static_cast<std::size_t>(s)];
}

std::string_view to_string(SwitchId s) noexcept {
  static constexpr std::array<std::string_view, 6> names = {"S1", "S2", "S3",
                                                            "S4", "S5", "S6"};
  return names[static_cast<std::size_t>(s)];
}

std::string_view to_string(Leg leg) noexcept {
  switch (leg) {
    case Leg::A: return "A";
    case Leg::B: return "B";
    case Leg::C: return "C";
  }
  return "?";
}

std::string_view to_string(Position p) noexcept {
  return p == Position::Upper ? "Upper" : "Lower";
}

std::optional<SwitchId> parse_switch(std::string_view text) noexcept {
  for (SwitchId s : kAllSwitches) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

SwitchSet::SwitchSet(std::initializer_list<SwitchId> ids) {
  for (SwitchId s : ids) insert(s);
}

std::size_t SwitchSet::size() const noexcept {
  return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<SwitchId> SwitchSet::members() const {
  std::vector<SwitchId> out;
  for (SwitchId s : kAllSwitches) {
    if (contains(s)) out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](SwitchId a, SwitchId b) {
    const bool ua = switch_effect(a).position == Position::Upper;
    const bool ub = switch_effect(b).position == Position::Upper;
    return ua && !ub;
  });
  return out;
}

std::string SwitchSet::name() const {
  if (empty()) return "None";
  std::string out;
  for (SwitchId s : members()) {
    if (!out.empty()) out += '+';
    out += to_string(s);
  }
  return out;
}

std::optional<SwitchSet> SwitchSet::parse(std::string_view name) {
  SwitchSet set;
  if (name == "None") return set;
  while (!name.empty()) {
    const auto plus = name.find('+');
    const auto token = name.substr(0, plus);
    const auto id = parse_switch(token);
    if (!id || set.contains(*id)) return std::nullopt;
    set.insert(*id);
    if (plus == std::string_view::npos) break;
    name.remove_prefix(plus + 1);
    if (name.empty()) return std::nullopt;
  }
  if (set.empty()) return std::nullopt;
  return set;
}

const std::vector<SwitchSet>& table_single_cases() {
  static const std::vector<SwitchSet> cases = {
      {SwitchId::S1}, {SwitchId::S2}, {SwitchId::S3},
      {SwitchId::S4}, {SwitchId::S5}, {SwitchId::S6},
  };
  return cases;
}

const std::vector<SwitchSet>& table_pair_cases() {
  static const std::vector<SwitchSet> cases = {
      {SwitchId::S1, SwitchId::S4}, {SwitchId::S1, SwitchId::S6},
      {SwitchId::S3, SwitchId::S2}, {SwitchId::S3, SwitchId::S6},
      {SwitchId::S5, SwitchId::S2}, {SwitchId::S5, SwitchId::S4},
  };
  return cases;
}

bool is_grid_pair(const SwitchSet& s) {
  const auto& pairs = table_pair_cases();
  return std::find(pairs.begin(), pairs.end(), s) != pairs.end();
}

int location_rank(const SwitchSet& s) {
  if (s.empty()) return 0;
  const auto& singles = table_single_cases();
  if (auto it = std::find(singles.begin(), singles.end(), s); it != singles.end())
    return 1 + static_cast<int>(it - singles.begin());
  const auto& pairs = table_pair_cases();
  if (auto it = std::find(pairs.begin(), pairs.end(), s); it != pairs.end())
    return 7 + static_cast<int>(it - pairs.begin());
  return 13 + s.bits();
}

std::vector<std::string> canonical_location_classes() {
  std::vector<std::string> names{"None"};
  for (const auto& s : table_single_cases()) names.push_back(s.name());
  for (const auto& s : table_pair_cases()) names.push_back(s.name());
  return names;
}

std::size_t SimConfig::num_samples() const noexcept {
  return static_cast<std::size_t>(std::llround(fs * duration));
}

void SimConfig::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(f0) || f0 <= 0.0) fail(ErrorKind::Config, "f0 must be > 0");
  if (!finite(fs) || fs < 20.0 * f0)
    fail(ErrorKind::Config, "fs must satisfy fs >= 20*f0");
  if (!finite(duration) || duration <= 0.0)
    fail(ErrorKind::Config, "duration must be > 0");
  if (!finite(v_amp) || v_amp <= 0.0) fail(ErrorKind::Config, "v_amp must be > 0");
  if (!finite(i_amp) || i_amp <= 0.0) fail(ErrorKind::Config, "i_amp must be > 0");
  if (!finite(phase_offset_i))
    fail(ErrorKind::Config, "phase_offset_i must be finite");
  if (!finite(sensor_noise_std) || sensor_noise_std < 0.0)
    fail(ErrorKind::Config, "sensor_noise_std must be >= 0");
  if (!finite(residual_factor) || residual_factor < 0.0 || residual_factor > 1.0)
    fail(ErrorKind::Config, "residual_factor must lie in [0, 1]");
  if (!finite(voltage_distortion) || voltage_distortion < 0.0 ||
      voltage_distortion > 1.0)
    fail(ErrorKind::Config, "voltage_distortion must lie in [0, 1]");
  // The switch map must be a bijection onto legs x positions.
  std::array<bool, 6> seen{};
  for (const auto& loc : switch_map) {
    const auto slot = static_cast<std::size_t>(loc.leg) * 2 +
                      static_cast<std::size_t>(loc.position);
    if (slot >= seen.size() || seen[slot])
      fail(ErrorKind::Config, "switch_map must be a bijection onto legs x positions");
    seen[slot] = true;
  }
}

void FaultScenario::validate(const SimConfig& config) const {
  if (switches.size() > 2)
    fail(ErrorKind::Scenario, "at most two faulted switches are supported");
  if (config.strict_grid && switches.size() == 2 && !is_grid_pair(switches))
    fail(ErrorKind::Scenario,
         "switch pair " + switches.name() + " is not one of the six table pairs");
  if (!std::isfinite(fault_time) || fault_time < 0.0 || fault_time >= config.duration)
    fail(ErrorKind::Scenario, "fault_time must satisfy 0 <= fault_time < duration");
  if (!std::isfinite(load_level) || load_level <= 0.0)
    fail(ErrorKind::Scenario, "load_level must be > 0");
}

std::string_view to_string(FaultKind k) noexcept {
  switch (k) {
    case FaultKind::None: return "None";
    case FaultKind::Hardware: return "Hardware";
    case FaultKind::Anomaly: return "Anomaly";
  }
  return "?";
}

bool LabelSet::valid() const noexcept {
  if (!fault_present) return fault_kind == FaultKind::None && switch_set.empty();
  if (fault_kind == FaultKind::None) return false;
  if (fault_kind == FaultKind::Hardware) return !switch_set.empty();
  return true;
}

LabelSet record_label(const FaultScenario& scenario) {
  LabelSet label;
  const bool fdi = scenario.anomaly && scenario.anomaly->active();
  label.switch_set = scenario.switches;
  label.fault_present = fdi || !scenario.switches.empty();
  if (fdi)
    label.fault_kind = FaultKind::Anomaly;
  else if (!scenario.switches.empty())
    label.fault_kind = FaultKind::Hardware;
  return label;
}

}  // namespace faultnet
