#pragma once
// Domain types shared by the simulator, the FDI injector and the feature
// extractor: switch identities, fault scenarios and sampled records.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace faultnet {

enum class SwitchId : std::uint8_t { S1, S2, S3, S4, S5, S6 };
enum class Leg : std::uint8_t { A, B, C };
enum class Position : std::uint8_t { Upper, Lower };

inline constexpr std::array<SwitchId, 6> kAllSwitches = {
    SwitchId::S1, SwitchId::S2, SwitchId::S3,
    SwitchId::S4, SwitchId::S5, SwitchId::S6};

struct SwitchLocation {
  Leg leg;
  Position position;
  friend bool operator==(const SwitchLocation&, const SwitchLocation&) = default;
};

// Switch -> (leg, position). Indexed by SwitchId.
using SwitchMap = std::array<SwitchLocation, 6>;

// S1/S4 on leg A, S3/S6 on leg B, S5/S2 on leg C; odd numbers are the upper
// devices (standard two-level VSI numbering by conduction order).
const SwitchMap& default_switch_map() noexcept;

SwitchLocation switch_effect(SwitchId s) noexcept;

std::string_view to_string(SwitchId s) noexcept;
std::string_view to_string(Leg leg) noexcept;
std::string_view to_string(Position p) noexcept;
std::optional<SwitchId> parse_switch(std::string_view text) noexcept;

// Set of faulted switches, stored as a bitmask over SwitchId.
class SwitchSet {
 public:
  SwitchSet() = default;
  SwitchSet(std::initializer_list<SwitchId> ids);

  void insert(SwitchId s) noexcept { bits_ |= mask(s); }
  bool contains(SwitchId s) const noexcept { return (bits_ & mask(s)) != 0; }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return bits_ == 0; }
  std::uint8_t bits() const noexcept { return bits_; }

  // Members ordered upper devices first, then by switch number, which is the
  // order used in the switch-combination table ("S3+S2", "S5+S4").
  std::vector<SwitchId> members() const;

  // "None", "S1", "S1+S4", ...
  std::string name() const;
  static std::optional<SwitchSet> parse(std::string_view name);

  friend bool operator==(const SwitchSet&, const SwitchSet&) = default;

 private:
  static constexpr std::uint8_t mask(SwitchId s) noexcept {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(s));
  }
  std::uint8_t bits_ = 0;
};

// The six single-switch and six two-switch cases of the experiment grid.
const std::vector<SwitchSet>& table_single_cases();
const std::vector<SwitchSet>& table_pair_cases();
bool is_grid_pair(const SwitchSet& s);

// Canonical localizer class order: "None", the singles, the table pairs,
// then any other pair in bitmask order.
std::vector<std::string> canonical_location_classes();
int location_rank(const SwitchSet& s);

enum class CurrentChannel : std::uint8_t { Ia, Ib, Ic };

struct AnomalyConfig {
  double f_amplitude = 1.0;   // F
  double inject_time = 0.15;  // seconds
  double base_power = 0.1;    // noise variance, p.u.^2
  double mean = 0.0;          // p.u.
  std::uint64_t seed = 1;
  std::array<bool, 3> targets = {true, true, true};  // Ia, Ib, Ic

  // F == 0 means no perturbation; such records are not anomalous.
  bool active() const noexcept { return f_amplitude > 0.0; }
};

struct SimConfig {
  double f0 = 60.0;
  double fs = 10000.0;
  double duration = 0.3;
  double v_amp = 1.0;
  double i_amp = 1.0;  // rated load current, p.u.
  double phase_offset_i = 0.5235987755982988;  // 30 degrees lag
  std::uint64_t seed = 1;
  double sensor_noise_std = 0.01;

  // Open-switch signal model.
  double residual_factor = 0.05;     // remnant of a suppressed half-cycle
  double voltage_distortion = 0.5;   // fractional amplitude loss on the leg
  SwitchMap switch_map = default_switch_map();

  // Enforces the experiment-grid constraints on pairs and FDI parameters.
  bool strict_grid = true;

  std::size_t num_samples() const noexcept;
  // Throws ErrorKind::Config naming the first violated invariant.
  void validate() const;
};

struct FaultScenario {
  SwitchSet switches;
  double fault_time = 0.1;
  double load_level = 1.0;
  std::optional<AnomalyConfig> anomaly;

  bool healthy() const noexcept { return switches.empty(); }
  // Throws ErrorKind::Scenario.
  void validate(const SimConfig& config) const;
};

enum class FaultKind : std::uint8_t { None, Hardware, Anomaly };

std::string_view to_string(FaultKind k) noexcept;

struct LabelSet {
  bool fault_present = false;
  FaultKind fault_kind = FaultKind::None;
  SwitchSet switch_set;

  bool valid() const noexcept;
  friend bool operator==(const LabelSet&, const LabelSet&) = default;
};

// Record-level ground truth. An FDI with F > 0 makes the record anomalous
// whether or not a switch fault is also present.
LabelSet record_label(const FaultScenario& scenario);

struct WaveformRecord {
  std::vector<double> t;
  std::array<std::vector<double>, 3> v_abc;
  std::array<std::vector<double>, 3> i_abc;
  FaultScenario scenario;
  SimConfig config;

  std::size_t size() const noexcept { return t.size(); }
  LabelSet label() const { return record_label(scenario); }
};

}  // namespace faultnet
