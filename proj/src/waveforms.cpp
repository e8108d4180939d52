#include "drad/waveforms.hpp"

#include "drad/fft.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace drad {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFs = kRadarSampleRateHz;
constexpr std::size_t kN = kSignalLength;

constexpr std::array<std::string_view, kRadarClassCount> kRadarNames{
    "NM", "LFM", "2PSK", "4PSK", "8PSK", "Barker", "Frank", "P1",
    "P2", "P3", "P4", "Px", "Zadoff-Chu", "Huffman", "T1", "T2",
    "T3", "T4", "2FSK", "4FSK", "8FSK", "Costas", "Noise"};

constexpr std::array<int, 5> kPskRates{2, 5, 10, 15, 20};
constexpr std::array<int, 4> kCodeRates{7, 10, 15, 20};
constexpr std::array<int, 5> kFskRates{1, 2, 5, 10, 15};
constexpr std::array<int, 4> kBarkerLengths{5, 7, 11, 13};
constexpr std::array<int, 5> kFrankM{4, 5, 6, 7, 8};
constexpr std::array<int, 3> kP2M{4, 6, 8};
constexpr std::array<int, 5> kLongM{16, 25, 36, 49, 64};
constexpr std::array<int, 2> kZcRoots{11, 13};
constexpr std::array<int, 3> kHuffmanLevels{-63, -60, -56};
constexpr std::array<int, 3> kSegments{4, 5, 6};
constexpr std::array<int, 4> kCostasOrders{3, 4, 5, 6};
constexpr int kPwMin = 256;
constexpr int kPwMax = 1024;

template <typename T, std::size_t N>
bool in_set(const std::array<T, N>& set, T v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

template <typename T, std::size_t N>
T pick(CounterRng& rng, const std::array<T, N>& set) {
  return set[rng.index(N)];
}

cplx unit_phasor(double phase) { return {std::cos(phase), std::sin(phase)}; }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

double wrap_2pi(double phase) {
  double w = std::fmod(phase, 2.0 * kPi);
  if (w < 0) w += 2.0 * kPi;
  return w;
}

int psk_order(RadarClass c) {
  switch (c) {
    case RadarClass::PSK2: case RadarClass::FSK2: return 2;
    case RadarClass::PSK4: case RadarClass::FSK4: return 4;
    default: return 8;
  }
}

bool is_psk(RadarClass c) {
  return c == RadarClass::PSK2 || c == RadarClass::PSK4 || c == RadarClass::PSK8;
}
bool is_fsk(RadarClass c) {
  return c == RadarClass::FSK2 || c == RadarClass::FSK4 || c == RadarClass::FSK8;
}

/// Holds each chip for its samples at vs_msym.
std::vector<cplx> expand_chips(std::span<const cplx> chips, int vs_msym) {
  const std::size_t len = samples_for_chips(chips.size(), vs_msym);
  std::vector<cplx> out(len);
  for (std::size_t n = 0; n < len; ++n) out[n] = chips[chip_of_sample(n, vs_msym)];
  return out;
}

/// Short signals are resampled up to the window, long ones truncated.
std::vector<cplx> fit_to_window(std::vector<cplx> x) {
  if (x.size() < kN) return resample_to_length(x, kN);
  x.resize(kN);
  return x;
}

void apply_carrier(std::vector<cplx>& x, double fc_hz) {
  for (std::size_t n = 0; n < x.size(); ++n) {
    x[n] *= unit_phasor(2.0 * kPi * fc_hz * static_cast<double>(n) / kFs);
  }
}

std::vector<cplx> tone(double fc_hz, std::size_t n) {
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = unit_phasor(2.0 * kPi * fc_hz * static_cast<double>(i) / kFs);
  }
  return out;
}

std::vector<cplx> chirp(double fc_hz, double bw_hz, std::size_t n) {
  const double dur = static_cast<double>(n) / kFs;
  const double f0 = fc_hz - bw_hz / 2.0;
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / kFs;
    out[i] = unit_phasor(2.0 * kPi * (f0 * t + bw_hz / (2.0 * dur) * t * t));
  }
  return out;
}

/// Phase-continuous tone sequence: sample n has frequency freq_of(n).
template <typename F>
std::vector<cplx> continuous_phase(std::size_t n, F&& freq_of) {
  std::vector<cplx> out(n);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = unit_phasor(phase);
    phase = wrap_2pi(phase + 2.0 * kPi * freq_of(i) / kFs);
  }
  return out;
}

CodeSequence from_phases(const std::vector<double>& phases) {
  CodeSequence code;
  code.entries.reserve(phases.size());
  for (double p : phases) code.entries.push_back(unit_phasor(p));
  return code;
}

std::vector<std::vector<int>> enumerate_costas(int m) {
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    if (is_costas(perm)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

std::string_view class_name(RadarClass c) noexcept {
  return kRadarNames[static_cast<std::size_t>(c)];
}

std::optional<RadarClass> radar_class_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kRadarNames.size(); ++i) {
    if (kRadarNames[i] == name) return static_cast<RadarClass>(i);
  }
  return std::nullopt;
}

const std::array<RadarClass, kRadarClassCount>& all_radar_classes() noexcept {
  static const auto all = [] {
    std::array<RadarClass, kRadarClassCount> a{};
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<RadarClass>(i);
    return a;
  }();
  return all;
}

WaveformSpec sample_spec(RadarClass c, CounterRng& rng) {
  WaveformSpec s;
  s.class_id = c;
  if (c != RadarClass::Noise) s.fc_hz = rng.uniform(-kFs / 4.0, kFs / 4.0);
  switch (c) {
    case RadarClass::NM:
    case RadarClass::Noise:
      break;
    case RadarClass::LFM:
      s.bw_hz = rng.uniform(kFs / 20.0, kFs / 4.0);
      break;
    case RadarClass::PSK2:
    case RadarClass::PSK4:
    case RadarClass::PSK8:
      s.order = psk_order(c);
      s.vs_msym = pick(rng, kPskRates);
      break;
    case RadarClass::Barker:
      s.lc = pick(rng, kBarkerLengths);
      s.vs_msym = pick(rng, kPskRates);
      break;
    case RadarClass::Frank:
    case RadarClass::P1:
    case RadarClass::Px:
      s.m = pick(rng, kFrankM);
      s.vs_msym = pick(rng, kCodeRates);
      break;
    case RadarClass::P2:
      s.m = pick(rng, kP2M);
      s.vs_msym = pick(rng, kCodeRates);
      break;
    case RadarClass::P3:
    case RadarClass::P4:
      s.m = pick(rng, kLongM);
      s.vs_msym = pick(rng, kCodeRates);
      break;
    case RadarClass::ZadoffChu:
      s.m = pick(rng, kLongM);
      s.r = pick(rng, kZcRoots);
      s.vs_msym = pick(rng, kCodeRates);
      break;
    case RadarClass::Huffman:
      s.m = pick(rng, kLongM);
      s.vs_msym = pick(rng, kCodeRates);
      s.s_db = pick(rng, kHuffmanLevels);
      break;
    case RadarClass::T1:
    case RadarClass::T2:
      s.ng = pick(rng, kSegments);
      s.pw_samples = static_cast<int>(rng.uniform_int(kPwMin, kPwMax));
      s.ps = 2;
      break;
    case RadarClass::T3:
    case RadarClass::T4:
      s.bw_hz = rng.uniform(kFs / 20.0, kFs / 4.0);
      s.pw_samples = static_cast<int>(rng.uniform_int(kPwMin, kPwMax));
      s.ps = 2;
      break;
    case RadarClass::FSK2:
    case RadarClass::FSK4:
    case RadarClass::FSK8:
      s.order = psk_order(c);
      s.vs_msym = pick(rng, kFskRates);
      s.delta_f_hz = *s.vs_msym * 1e6;
      break;
    case RadarClass::Costas:
      s.m = pick(rng, kCostasOrders);
      s.vs_msym = pick(rng, kFskRates);
      s.delta_f_hz = *s.vs_msym * 1e6;
      break;
  }
  return s;
}

void validate(const WaveformSpec& s) {
  const auto fail = [&](const std::string& what) {
    throw std::invalid_argument(std::string(class_name(s.class_id)) + ": " + what);
  };
  if (!(std::abs(s.fc_hz) <= kFs / 4.0)) fail("fc outside [-fs/4, fs/4]");

  const RadarClass c = s.class_id;
  const bool uses_bw = c == RadarClass::LFM || c == RadarClass::T3 || c == RadarClass::T4;
  const bool uses_vs = !(c == RadarClass::NM || c == RadarClass::LFM || c == RadarClass::Noise ||
                         c == RadarClass::T1 || c == RadarClass::T2 || c == RadarClass::T3 ||
                         c == RadarClass::T4);
  const bool uses_order = is_psk(c) || is_fsk(c);
  const bool uses_m = c == RadarClass::Frank || c == RadarClass::P1 || c == RadarClass::P2 ||
                      c == RadarClass::P3 || c == RadarClass::P4 || c == RadarClass::Px ||
                      c == RadarClass::ZadoffChu || c == RadarClass::Huffman ||
                      c == RadarClass::Costas;
  const bool polytime = c == RadarClass::T1 || c == RadarClass::T2 || c == RadarClass::T3 ||
                        c == RadarClass::T4;
  const bool uses_df = is_fsk(c) || c == RadarClass::Costas;

  const auto check_presence = [&](bool present, bool used, const char* name) {
    if (present != used) fail(std::string(name) + (used ? " missing" : " not applicable"));
  };
  check_presence(s.bw_hz.has_value(), uses_bw, "bw");
  check_presence(s.vs_msym.has_value(), uses_vs, "vs");
  check_presence(s.order.has_value(), uses_order, "order");
  check_presence(s.lc.has_value(), c == RadarClass::Barker, "lc");
  check_presence(s.m.has_value(), uses_m, "m");
  check_presence(s.r.has_value(), c == RadarClass::ZadoffChu, "r");
  check_presence(s.s_db.has_value(), c == RadarClass::Huffman, "s_db");
  check_presence(s.ng.has_value(), c == RadarClass::T1 || c == RadarClass::T2, "ng");
  check_presence(s.pw_samples.has_value(), polytime, "pw");
  check_presence(s.ps.has_value(), polytime, "ps");
  check_presence(s.delta_f_hz.has_value(), uses_df, "delta_f");

  if (uses_bw && !(*s.bw_hz >= kFs / 20.0 && *s.bw_hz <= kFs / 4.0)) fail("bw outside [fs/20, fs/4]");
  if (uses_order && *s.order != psk_order(c)) fail("order does not match class");
  if (is_psk(c) || c == RadarClass::Barker) {
    if (!in_set(kPskRates, *s.vs_msym)) fail("vs not in {2,5,10,15,20}");
  } else if (uses_df) {
    if (!in_set(kFskRates, *s.vs_msym)) fail("vs not in {1,2,5,10,15}");
    if (*s.delta_f_hz != *s.vs_msym * 1e6) fail("delta_f must equal vs");
  } else if (uses_vs) {
    if (!in_set(kCodeRates, *s.vs_msym)) fail("vs not in {7,10,15,20}");
  }
  if (c == RadarClass::Barker && !in_set(kBarkerLengths, *s.lc)) fail("lc not in {5,7,11,13}");
  switch (c) {
    case RadarClass::Frank: case RadarClass::P1: case RadarClass::Px:
      if (!in_set(kFrankM, *s.m)) fail("m not in {4..8}");
      break;
    case RadarClass::P2:
      if (!in_set(kP2M, *s.m)) fail("m not in {4,6,8}");
      break;
    case RadarClass::P3: case RadarClass::P4: case RadarClass::ZadoffChu: case RadarClass::Huffman:
      if (!in_set(kLongM, *s.m)) fail("m not in {16,25,36,49,64}");
      break;
    case RadarClass::Costas:
      if (!in_set(kCostasOrders, *s.m)) fail("m not in {3,4,5,6}");
      break;
    default:
      break;
  }
  if (c == RadarClass::ZadoffChu && !in_set(kZcRoots, *s.r)) fail("r not in {11,13}");
  if (c == RadarClass::Huffman && !in_set(kHuffmanLevels, *s.s_db)) fail("s_db not in {-63,-60,-56}");
  if (s.ng && !in_set(kSegments, *s.ng)) fail("ng not in {4,5,6}");
  if (polytime) {
    if (*s.pw_samples < kPwMin || *s.pw_samples > kPwMax) fail("pw outside [256, 1024]");
    if (*s.ps != 2) fail("ps must be 2");
  }
}

// ---------------------------------------------------------------------------
// Code families

CodeSequence barker_sequence(int lc) {
  std::vector<int> signs;
  switch (lc) {
    case 5: signs = {1, 1, 1, -1, 1}; break;
    case 7: signs = {1, 1, 1, -1, -1, 1, -1}; break;
    case 11: signs = {1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1}; break;
    case 13: signs = {1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1}; break;
    default: throw std::invalid_argument("unsupported Barker length " + std::to_string(lc));
  }
  CodeSequence code;
  for (int s : signs) code.entries.emplace_back(static_cast<double>(s), 0.0);
  return code;
}

std::vector<double> polyphase_phases(Polyphase variant, int m) {
  if (m < 2) throw std::invalid_argument("polyphase code parameter must be >= 2");
  const double M = m;
  std::vector<double> ph;
  switch (variant) {
    case Polyphase::Frank:
      // phi(i, j) = 2 pi i j / M,  i, j = 0..M-1, i indexes the frequency step.
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) ph.push_back(2.0 * kPi * i * j / M);
      break;
    case Polyphase::P1:
      // phi(i, j) = -(pi / M) [M - (2j - 1)] [(j - 1) M + (i - 1)],  i, j = 1..M,
      // j the frequency step, i the sample within it.
      for (int j = 1; j <= m; ++j)
        for (int i = 1; i <= m; ++i)
          ph.push_back(-(kPi / M) * (M - (2.0 * j - 1.0)) * ((j - 1.0) * M + (i - 1.0)));
      break;
    case Polyphase::P2:
      // phi(i, j) = {(pi / 2)(M - 1) / M - (pi / M)(i - 1)} (M + 1 - 2j),  M even.
      if (m % 2 != 0) throw std::invalid_argument("P2 code requires an even M");
      for (int j = 1; j <= m; ++j)
        for (int i = 1; i <= m; ++i)
          ph.push_back(((kPi / 2.0) * (M - 1.0) / M - (kPi / M) * (i - 1.0)) * (M + 1.0 - 2.0 * j));
      break;
    case Polyphase::Px:
      // M even: phi(n, k) = (2 pi / M) [(M + 1)/2 - k] [(M + 1)/2 - n]
      // M odd:  phi(n, k) = (2 pi / M) [M/2 - k]       [(M + 1)/2 - n],  n, k = 1..M.
      for (int k = 1; k <= m; ++k)
        for (int n = 1; n <= m; ++n) {
          const double a = (m % 2 == 0) ? (M + 1.0) / 2.0 - k : M / 2.0 - k;
          ph.push_back((2.0 * kPi / M) * a * ((M + 1.0) / 2.0 - n));
        }
      break;
    case Polyphase::P3:
      // phi(j) = pi j^2 / M,  j = 0..M-1.
      for (int j = 0; j < m; ++j) ph.push_back(kPi * j * j / M);
      break;
    case Polyphase::P4:
      // phi(j) = pi j^2 / M - pi j,  j = 0..M-1.
      for (int j = 0; j < m; ++j) ph.push_back(kPi * j * j / M - kPi * j);
      break;
  }
  return ph;
}

CodeSequence polyphase_code(Polyphase variant, int m) {
  return from_phases(polyphase_phases(variant, m));
}

CodeSequence zadoff_chu(int m, int r) {
  if (m < 2) throw std::invalid_argument("Zadoff-Chu length must be >= 2");
  if (std::gcd(m, r) != 1) {
    throw std::invalid_argument("Zadoff-Chu root " + std::to_string(r) +
                                " is not coprime with length " + std::to_string(m));
  }
  std::vector<double> ph(static_cast<std::size_t>(m));
  for (int n = 0; n < m; ++n) {
    // Reduce r n (n + m%2) mod 2m before scaling to keep the argument small.
    const long long q = static_cast<long long>(r) * n * (n + (m % 2)) % (2LL * m);
    ph[static_cast<std::size_t>(n)] = -kPi * static_cast<double>(q) / m;
  }
  return from_phases(ph);
}

CodeSequence huffman_sequence(int m, int s_db) {
  if (!in_set(kLongM, m)) throw std::invalid_argument("Huffman length not in {16,25,36,49,64}");
  if (!in_set(kHuffmanLevels, s_db)) throw std::invalid_argument("Huffman level not in {-63,-60,-56}");
  // Autocorrelation target: R[0] = 1, R[+-(m-1)] = eps, zero elsewhere. With
  // w = z^(m-1) its z-transform vanishes where eps w^2 + w + eps = 0, i.e. on
  // two circles of radius rho and 1/rho at m-1 equally spaced angles. Picking
  // one root per angle gives a code polynomial with that autocorrelation.
  const double eps = std::pow(10.0, s_db / 20.0);
  const double w_small = (1.0 - std::sqrt(1.0 - 4.0 * eps * eps)) / (2.0 * eps);
  const int deg = m - 1;
  const double rho = std::pow(w_small, 1.0 / deg);

  // Expanding the product root by root cancels catastrophically for long
  // codes, so evaluate it on m points of the unit circle and transform back:
  // C(e^{j 2 pi q / m}) = sum_i c_i e^{j 2 pi q i / m}.
  std::vector<cplx> values(static_cast<std::size_t>(m));
  for (int q = 0; q < m; ++q) {
    const cplx z = std::polar(1.0, 2.0 * kPi * q / m);
    cplx v(1.0, 0.0);
    for (int k = 0; k < deg; ++k) {
      const double angle = (kPi + 2.0 * kPi * k) / deg;
      const double radius = (k % 2 == 0) ? rho : 1.0 / rho;
      v *= z - std::polar(radius, angle);
    }
    values[static_cast<std::size_t>(q)] = v;
  }
  std::vector<cplx> coeffs = dft(values, false);
  double energy = 0.0;
  for (const auto& c : coeffs) energy += std::norm(c);
  const double scale = 1.0 / std::sqrt(energy);
  for (auto& c : coeffs) c *= scale;
  return CodeSequence{std::move(coeffs)};
}

bool is_costas(std::span<const int> perm) noexcept {
  const std::size_t n = perm.size();
  if (n == 0) return false;
  std::vector<bool> seen(n + 1, false);
  for (int v : perm) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  for (std::size_t d = 1; d < n; ++d) {
    std::vector<bool> used(2 * n + 1, false);
    for (std::size_t i = 0; i + d < n; ++i) {
      const auto diff = static_cast<std::size_t>(perm[i + d] - perm[i] + static_cast<int>(n));
      if (used[diff]) return false;
      used[diff] = true;
    }
  }
  return true;
}

const std::vector<std::vector<int>>& costas_arrays(int m) {
  if (!in_set(kCostasOrders, m)) throw std::invalid_argument("Costas order not in {3,4,5,6}");
  static const std::array<std::vector<std::vector<int>>, 4> tables = [] {
    std::array<std::vector<std::vector<int>>, 4> t;
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = enumerate_costas(kCostasOrders[i]);
    return t;
  }();
  return tables[static_cast<std::size_t>(m - 3)];
}

std::vector<int> costas_array(int m, CounterRng& rng) {
  const auto& all = costas_arrays(m);
  return all[rng.index(all.size())];
}

PolytimePhases polytime_phases(Polytime variant, const WaveformSpec& spec) {
  if (!spec.ps || *spec.ps != 2) throw std::invalid_argument("polytime codes use PS = 2");
  if (!spec.pw_samples || *spec.pw_samples < kPwMin || *spec.pw_samples > kPwMax) {
    throw std::invalid_argument("polytime pulse width outside [256, 1024]");
  }
  const std::int64_t pw = *spec.pw_samples;
  const std::int64_t ps = *spec.ps;
  PolytimePhases out;
  out.unquantized.resize(static_cast<std::size_t>(pw));
  out.quantized.resize(static_cast<std::size_t>(pw));
  const double step = 2.0 * kPi / static_cast<double>(ps);

  if (variant == Polytime::T1 || variant == Polytime::T2) {
    if (!spec.ng || !in_set(kSegments, *spec.ng)) throw std::invalid_argument("ng not in {4,5,6}");
    const std::int64_t k = *spec.ng;
    for (std::int64_t n = 0; n < pw; ++n) {
      const std::int64_t j = k * n / pw;       // segment index
      const std::int64_t ramp = k * n - j * pw;  // (k t - j T) in samples
      // Phase in units of 1/(2 pw) cycles, kept integral so quantization is exact.
      const std::int64_t numer = variant == Polytime::T1 ? 2 * ramp * j : ramp * (2 * j - k + 1);
      out.unquantized[static_cast<std::size_t>(n)] =
          2.0 * kPi * static_cast<double>(numer) / (2.0 * static_cast<double>(pw));
      const std::int64_t level = floor_div(ps * numer, 2 * pw);
      out.quantized[static_cast<std::size_t>(n)] = step * static_cast<double>(((level % ps) + ps) % ps);
    }
    return out;
  }

  if (!spec.bw_hz) throw std::invalid_argument("T3/T4 require a bandwidth");
  const double bw = *spec.bw_hz;
  const double pwd = static_cast<double>(pw);
  for (std::int64_t n = 0; n < pw; ++n) {
    const double t = static_cast<double>(n);
    // Cycles: bw t^2 / (2 T) (T3), minus bw t / 2 (T4); t, T in samples.
    double cycles = bw * t * t / (2.0 * pwd * kFs);
    if (variant == Polytime::T4) cycles -= bw * t / (2.0 * kFs);
    out.unquantized[static_cast<std::size_t>(n)] = 2.0 * kPi * cycles;
    const auto level = static_cast<std::int64_t>(std::floor(static_cast<double>(ps) * cycles));
    out.quantized[static_cast<std::size_t>(n)] = step * static_cast<double>(((level % ps) + ps) % ps);
  }
  return out;
}

std::vector<cplx> noise_waveform(std::size_t n, CounterRng& rng) {
  return complex_gaussian_noise(n, 1.0, rng);
}

IQSignal synthesize(const WaveformSpec& spec, CounterRng& rng) {
  validate(spec);
  const RadarClass c = spec.class_id;
  std::vector<cplx> x;

  const auto coded = [&](const CodeSequence& code) {
    auto base = fit_to_window(expand_chips(code.entries, *spec.vs_msym));
    apply_carrier(base, spec.fc_hz);
    return base;
  };

  switch (c) {
    case RadarClass::NM:
      x = tone(spec.fc_hz, kN);
      break;
    case RadarClass::LFM:
      x = chirp(spec.fc_hz, *spec.bw_hz, kN);
      break;
    case RadarClass::PSK2:
    case RadarClass::PSK4:
    case RadarClass::PSK8: {
      const std::size_t n_sym = chip_of_sample(kN - 1, *spec.vs_msym) + 1;
      CodeSequence symbols;
      for (std::size_t i = 0; i < n_sym; ++i) {
        const auto k = rng.index(static_cast<std::size_t>(*spec.order));
        symbols.entries.push_back(unit_phasor(2.0 * kPi * static_cast<double>(k) / *spec.order));
      }
      x = coded(symbols);
      break;
    }
    case RadarClass::Barker:
      x = coded(barker_sequence(*spec.lc));
      break;
    case RadarClass::Frank: x = coded(polyphase_code(Polyphase::Frank, *spec.m)); break;
    case RadarClass::P1: x = coded(polyphase_code(Polyphase::P1, *spec.m)); break;
    case RadarClass::P2: x = coded(polyphase_code(Polyphase::P2, *spec.m)); break;
    case RadarClass::P3: x = coded(polyphase_code(Polyphase::P3, *spec.m)); break;
    case RadarClass::P4: x = coded(polyphase_code(Polyphase::P4, *spec.m)); break;
    case RadarClass::Px: x = coded(polyphase_code(Polyphase::Px, *spec.m)); break;
    case RadarClass::ZadoffChu: x = coded(zadoff_chu(*spec.m, *spec.r)); break;
    case RadarClass::Huffman: x = coded(huffman_sequence(*spec.m, *spec.s_db)); break;
    case RadarClass::T1:
    case RadarClass::T2:
    case RadarClass::T3:
    case RadarClass::T4: {
      const auto variant = static_cast<Polytime>(static_cast<int>(c) - static_cast<int>(RadarClass::T1));
      const auto phases = polytime_phases(variant, spec);
      const auto pw = static_cast<std::size_t>(*spec.pw_samples);
      const auto offset = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(kN - pw)));
      x.assign(kN, cplx{});
      for (std::size_t n = 0; n < pw; ++n) {
        const double carrier = 2.0 * kPi * spec.fc_hz * static_cast<double>(offset + n) / kFs;
        x[offset + n] = unit_phasor(phases.quantized[n] + carrier);
      }
      break;
    }
    case RadarClass::FSK2:
    case RadarClass::FSK4:
    case RadarClass::FSK8: {
      const int vs = *spec.vs_msym;
      const std::size_t n_sym = chip_of_sample(kN - 1, vs) + 1;
      std::vector<double> freqs(n_sym);
      const double centre = (*spec.order - 1) / 2.0;
      for (auto& f : freqs) {
        const auto k = static_cast<double>(rng.index(static_cast<std::size_t>(*spec.order)));
        f = spec.fc_hz + (k - centre) * *spec.delta_f_hz;
      }
      x = continuous_phase(kN, [&](std::size_t n) { return freqs[chip_of_sample(n, vs)]; });
      break;
    }
    case RadarClass::Costas: {
      const auto perm = costas_array(*spec.m, rng);
      const int vs = *spec.vs_msym;
      const double centre = (*spec.m + 1) / 2.0;
      const std::size_t len = samples_for_chips(perm.size(), vs);
      auto base = continuous_phase(len, [&](std::size_t n) {
        return (perm[chip_of_sample(n, vs)] - centre) * *spec.delta_f_hz;
      });
      x = fit_to_window(std::move(base));
      apply_carrier(x, spec.fc_hz);
      break;
    }
    case RadarClass::Noise:
      x = noise_waveform(kN, rng);
      break;
  }
  return IQSignal{normalize_power(x), kFs};
}

// ---------------------------------------------------------------------------
// 8-class comparison set

namespace {
constexpr std::array<std::string_view, kEightClassCount> kEightNames{
    "CW", "LFM", "BFSK", "SIN", "EXP", "SFW", "BPSK", "BASK"};

std::vector<int> random_bits(std::size_t n, CounterRng& rng) {
  std::vector<int> bits(n);
  for (auto& b : bits) b = static_cast<int>(rng.index(2));
  // Both symbol values must appear so the family is identifiable.
  if (n >= 2 && std::all_of(bits.begin(), bits.end(), [&](int b) { return b == bits[0]; })) {
    bits[rng.index(n)] ^= 1;
  }
  return bits;
}
}  // namespace

std::string_view class_name(EightClass c) noexcept {
  return kEightNames[static_cast<std::size_t>(c)];
}

std::optional<EightClass> eight_class_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kEightNames.size(); ++i) {
    if (kEightNames[i] == name) return static_cast<EightClass>(i);
  }
  return std::nullopt;
}

const std::array<EightClass, kEightClassCount>& all_eight_classes() noexcept {
  static const std::array<EightClass, kEightClassCount> all{
      EightClass::CW, EightClass::LFM, EightClass::BFSK, EightClass::SIN,
      EightClass::EXP, EightClass::SFW, EightClass::BPSK, EightClass::BASK};
  return all;
}

IQSignal synthesize_8class(EightClass c, CounterRng& rng, const EightClassParams& p) {
  const double fc = rng.uniform(-kFs / 4.0, kFs / 4.0);
  const auto draw_bw = [&] { return rng.uniform(p.bw_min_frac * kFs, p.bw_max_frac * kFs); };
  const double nd = static_cast<double>(kN);
  std::vector<cplx> x;

  switch (c) {
    case EightClass::CW:
      x = tone(fc, kN);
      break;
    case EightClass::LFM:
      x = chirp(fc, draw_bw(), kN);
      break;
    case EightClass::BFSK: {
      const int vs = pick(rng, p.symbol_rates_msym);
      const double df = rng.uniform(p.bfsk_df_min_frac * kFs, p.bfsk_df_max_frac * kFs);
      const auto bits = random_bits(chip_of_sample(kN - 1, vs) + 1, rng);
      x = continuous_phase(kN, [&](std::size_t n) {
        return fc + (bits[chip_of_sample(n, vs)] ? 0.5 : -0.5) * df;
      });
      break;
    }
    case EightClass::SIN: {
      const double bw = draw_bw();
      const double cycles = rng.uniform(p.sin_cycles_min, p.sin_cycles_max);
      x = continuous_phase(kN, [&](std::size_t n) {
        return fc + 0.5 * bw * std::sin(2.0 * kPi * cycles * static_cast<double>(n) / nd);
      });
      break;
    }
    case EightClass::EXP: {
      const double bw = draw_bw();
      const double rate = rng.uniform(p.exp_rate_min, p.exp_rate_max);
      const double denom = std::expm1(rate);
      x = continuous_phase(kN, [&](std::size_t n) {
        return fc - 0.5 * bw + bw * std::expm1(rate * static_cast<double>(n) / nd) / denom;
      });
      break;
    }
    case EightClass::SFW: {
      const double bw = draw_bw();
      const auto steps = static_cast<std::size_t>(pick(rng, p.sfw_steps));
      const std::size_t width = kN / steps;
      x = continuous_phase(kN, [&](std::size_t n) {
        const double k = static_cast<double>(std::min(n / width, steps - 1));
        return fc - 0.5 * bw + bw * k / static_cast<double>(steps - 1);
      });
      break;
    }
    case EightClass::BPSK: {
      const int vs = pick(rng, p.symbol_rates_msym);
      const auto bits = random_bits(chip_of_sample(kN - 1, vs) + 1, rng);
      x.resize(kN);
      for (std::size_t n = 0; n < kN; ++n) x[n] = bits[chip_of_sample(n, vs)] ? -1.0 : 1.0;
      apply_carrier(x, fc);
      break;
    }
    case EightClass::BASK: {
      const int vs = pick(rng, p.symbol_rates_msym);
      const auto bits = random_bits(chip_of_sample(kN - 1, vs) + 1, rng);
      x.resize(kN);
      for (std::size_t n = 0; n < kN; ++n) x[n] = bits[chip_of_sample(n, vs)] ? 1.0 : p.bask_low_level;
      apply_carrier(x, fc);
      break;
    }
  }
  return IQSignal{normalize_power(x), kFs};
}

}  // namespace drad
