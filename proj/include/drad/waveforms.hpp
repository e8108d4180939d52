#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "drad/rng.hpp"
#include "drad/signal.hpp"

namespace drad {

/// The 23 DeepRadar2022 modulation classes, in dataset label order.
enum class RadarClass {
  NM,
  LFM,
  PSK2,
  PSK4,
  PSK8,
  Barker,
  Frank,
  P1,
  P2,
  P3,
  P4,
  Px,
  ZadoffChu,
  Huffman,
  T1,
  T2,
  T3,
  T4,
  FSK2,
  FSK4,
  FSK8,
  Costas,
  Noise,
};

inline constexpr std::size_t kRadarClassCount = 23;

std::string_view class_name(RadarClass c) noexcept;
std::optional<RadarClass> radar_class_from_name(std::string_view name) noexcept;
const std::array<RadarClass, kRadarClassCount>& all_radar_classes() noexcept;

/// One sampled parameter draw for a DeepRadar2022 example. Fields that do not
/// apply to the class stay empty.
struct WaveformSpec {
  RadarClass class_id = RadarClass::NM;
  double fc_hz = 0.0;
  std::optional<double> bw_hz;
  std::optional<int> vs_msym;  ///< symbol rate, Msymb/s
  std::optional<int> order;    ///< PSK/FSK order
  std::optional<int> lc;       ///< Barker length
  std::optional<int> m;        ///< code-length parameter
  std::optional<int> r;        ///< Zadoff-Chu root
  std::optional<int> s_db;     ///< Huffman end-lobe level
  std::optional<int> ng;       ///< polytime segment count
  std::optional<int> pw_samples;
  std::optional<int> ps;       ///< phase states
  std::optional<double> delta_f_hz;
};

/// Draws every parameter of `c` from its published set or range.
WaveformSpec sample_spec(RadarClass c, CounterRng& rng);

/// Throws std::invalid_argument when a field is missing, out of range or set
/// for a class that does not use it.
void validate(const WaveformSpec& spec);

/// Chip sequence shared by all code families.
struct CodeSequence {
  std::vector<cplx> entries;
  std::size_t size() const noexcept { return entries.size(); }
};

CodeSequence barker_sequence(int lc);

enum class Polyphase { Frank, P1, P2, P3, P4, Px };

/// Frank/P1/P2/Px take M (length M^2); P3/P4 take the code length directly.
CodeSequence polyphase_code(Polyphase variant, int m);
/// The phases (radians) behind polyphase_code, before wrapping.
std::vector<double> polyphase_phases(Polyphase variant, int m);

CodeSequence zadoff_chu(int m, int r);

/// Unit-energy Huffman code of length m with end lobes at s_db relative to
/// the autocorrelation peak.
CodeSequence huffman_sequence(int m, int s_db);

/// Every Costas permutation of {1..m}, lexicographic order (m in 3..6).
const std::vector<std::vector<int>>& costas_arrays(int m);
/// One stored array of order m, uniformly at random.
std::vector<int> costas_array(int m, CounterRng& rng);
/// True if `perm` is a permutation of 1..n with distinct entries in every
/// row of its difference triangle.
bool is_costas(std::span<const int> perm) noexcept;

enum class Polytime { T1, T2, T3, T4 };

struct PolytimePhases {
  std::vector<double> unquantized;  ///< continuous phase law, radians
  std::vector<double> quantized;    ///< wrapped to the ps phase states
};

/// Stepped-phase law on a pulse of spec.pw_samples samples.
PolytimePhases polytime_phases(Polytime variant, const WaveformSpec& spec);

/// Raw CAWN draw of the Noise class (sigma = 1, before power normalization).
std::vector<cplx> noise_waveform(std::size_t n, CounterRng& rng);

/// Noiseless, unit-power, 1024-sample signal for `spec`. `rng` supplies the
/// per-example randomness (symbols, Costas pick, pulse offset).
IQSignal synthesize(const WaveformSpec& spec, CounterRng& rng);

/// Samples of chip k occupy [k * fs / vs, (k + 1) * fs / vs) with integer
/// symbol-boundary accumulation; returns the chip index of sample n.
inline std::size_t chip_of_sample(std::size_t n, int vs_msym) noexcept {
  return n * static_cast<std::size_t>(vs_msym) / 100;
}
/// Samples needed to hold `chips` chips at vs_msym with fs = 100 MHz.
inline std::size_t samples_for_chips(std::size_t chips, int vs_msym) noexcept {
  const auto vs = static_cast<std::size_t>(vs_msym);
  return (chips * 100 + vs - 1) / vs;
}

// ---------------------------------------------------------------------------
// 8-class comparison set

enum class EightClass { CW, LFM, BFSK, SIN, EXP, SFW, BPSK, BASK };

inline constexpr std::size_t kEightClassCount = 8;

std::string_view class_name(EightClass c) noexcept;
std::optional<EightClass> eight_class_from_name(std::string_view name) noexcept;
const std::array<EightClass, kEightClassCount>& all_eight_classes() noexcept;

/// Parameter ranges of the 8-class generators. These are not published with
/// the original dataset; the defaults keep every family inside fs/20..fs/4 of
/// occupied bandwidth.
struct EightClassParams {
  double bw_min_frac = 1.0 / 20.0;  ///< of fs
  double bw_max_frac = 1.0 / 4.0;
  std::array<int, 4> symbol_rates_msym{2, 5, 10, 20};
  double bfsk_df_min_frac = 1.0 / 20.0;
  double bfsk_df_max_frac = 1.0 / 10.0;
  double sin_cycles_min = 1.0;  ///< FM cycles per window
  double sin_cycles_max = 4.0;
  double exp_rate_min = 1.0;    ///< exponent at the window end
  double exp_rate_max = 4.0;
  std::array<int, 3> sfw_steps{4, 8, 16};
  double bask_low_level = 0.3;  ///< amplitude of a '0' symbol; '1' is 1.0
};

IQSignal synthesize_8class(EightClass c, CounterRng& rng, const EightClassParams& params = {});

}  // namespace drad
