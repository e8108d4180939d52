#include <doctest.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <regex>

#include "drad/evaluation.hpp"
#include "drad/rng.hpp"
#include "scratch_dir.hpp"

using namespace drad;

namespace {

// Balanced labelled split; iq[0] carries a unique id so stubs can hash it.
SplitData balanced_split(std::uint16_t n_classes, const std::vector<int>& snrs, std::size_t per_cell) {
  SplitData s;
  s.n_classes = n_classes;
  s.signal_length = 1;
  float id = 0.0f;
  for (std::uint16_t c = 0; c < n_classes; ++c)
    for (int snr : snrs)
      for (std::size_t i = 0; i < per_cell; ++i) {
        LabeledExample ex;
        ex.iq = {id, 0.0f};
        id += 1.0f;
        ex.class_index = c;
        ex.snr_db = static_cast<std::int16_t>(snr);
        s.examples.push_back(ex);
      }
  return s;
}

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("C" + std::to_string(i));
  return v;
}

AccuracyCurve curve_of(const std::vector<std::pair<int, double>>& pts) {
  AccuracyCurve c;
  for (auto [s, a] : pts) c.points.push_back({s, a, 100});
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const std::vector<int> kGrid{-12, -10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};

}  // namespace

TEST_CASE("oracle stub scores 1 everywhere") {
  const auto split = balanced_split(5, {-2, 0, 4}, 7);
  const auto preds = predictions_from([](const LabeledExample& e) { return std::size_t{e.class_index}; }, split);
  const auto set = accuracy_by_snr(preds, split, names(5));
  REQUIRE(set.overall.points.size() == 3);
  for (const auto& p : set.overall.points) {
    CHECK(p.accuracy == 1.0);
    CHECK(p.n_examples == 35);
  }
  CHECK(set.per_class.size() == 5);
  CHECK(set.warnings.empty());
  const auto cm = confusion_matrix(preds, split, 0, 5);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) CHECK(cm.at(r, c) == (r == c ? 7u : 0u));
}

TEST_CASE("constant stub on a balanced 23-class split scores exactly 1/23") {
  const auto split = balanced_split(23, {-2, 10}, 4);
  const auto preds = predictions_from([](const LabeledExample&) { return std::size_t{6}; }, split);
  const auto set = accuracy_by_snr(preds, split, names(23));
  for (const auto& p : set.overall.points) CHECK(p.accuracy == 4.0 / 92.0);
  CHECK(set.overall.points[0].accuracy == 1.0 / 23.0);
  const auto cm = confusion_matrix(preds, split, -2, 23);
  for (std::size_t r = 0; r < 23; ++r) {
    CHECK(cm.row_sum(r) == 4);
    for (std::size_t c = 0; c < 23; ++c) CHECK(cm.at(r, c) == (c == 6 ? 4u : 0u));
  }
}

TEST_CASE("uniform-random stub stays inside the 3-sigma binomial band") {
  const std::size_t n = 8, per_cell = 250;
  const auto split = balanced_split(static_cast<std::uint16_t>(n), {0, 10}, per_cell);
  const auto preds = predictions_from(
      [&](const LabeledExample& e) {
        CounterRng r(hash_seed({99, static_cast<std::uint64_t>(e.iq[0])}));
        return static_cast<std::size_t>(r.index(n));
      },
      split);
  const auto set = accuracy_by_snr(preds, split, names(n));
  const double total = static_cast<double>(n * per_cell);
  const double sigma = std::sqrt((1.0 / n) * (1.0 - 1.0 / n) / total);
  for (const auto& p : set.overall.points) CHECK(std::abs(p.accuracy - 1.0 / n) <= 3.0 * sigma);
}

TEST_CASE("grid points without examples are omitted with a warning") {
  const auto split = balanced_split(2, {0, 4}, 3);
  std::vector<std::size_t> preds(split.examples.size(), 0);
  const std::vector<int> grid{0, 2, 4};
  const auto set = accuracy_by_snr(preds, split, names(2), grid);
  REQUIRE(set.overall.points.size() == 2);
  CHECK(set.overall.points[0].snr_db == 0);
  CHECK(set.overall.points[1].snr_db == 4);
  CHECK_FALSE(set.warnings.empty());
  CHECK_THROWS_AS(confusion_matrix(preds, split, 2, 2), std::invalid_argument);
}

TEST_CASE("sensitivity constructed cases") {
  std::vector<std::pair<int, double>> a{{-2, 0.85}, {0, 0.91}, {2, 0.95}};
  for (int s = 4; s <= 20; s += 2) a.push_back({s, 0.97});
  CHECK(sensitivity(curve_of(a), 0.9) == 0);

  std::vector<std::pair<int, double>> never;
  for (int s = -12; s <= 20; s += 2) never.push_back({s, 0.89});
  CHECK_FALSE(sensitivity(curve_of(never), 0.9).has_value());

  std::vector<std::pair<int, double>> dip{{-4, 0.92}, {-2, 0.88}, {0, 0.95}};
  for (int s = 2; s <= 20; s += 2) dip.push_back({s, 0.93});
  CHECK(sensitivity(curve_of(dip), 0.9) == 0);

  CHECK(sensitivity(curve_of({{0, 0.95}, {2, 0.85}}), 0.9) == std::nullopt);
  CHECK(sensitivity(curve_of({{0, 0.9}}), 0.9) == 0);
}

TEST_CASE("sensitivity is monotone under pointwise improvement") {
  CounterRng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::pair<int, double>> pts;
    for (int s = -12; s <= 20; s += 2) pts.push_back({s, rng.uniform()});
    const auto base = sensitivity(curve_of(pts), 0.5);
    auto better = pts;
    const std::size_t k = rng.index(better.size());
    better[k].second = better[k].second + (1.0 - better[k].second) * rng.uniform();
    const auto improved = sensitivity(curve_of(better), 0.5);
    if (base) {
      REQUIRE(improved.has_value());
      CHECK(*improved <= *base);
    }
  }
}

TEST_CASE("confusion matrices agree with the accuracy curves exactly") {
  const std::size_t n = 6;
  const auto split = balanced_split(static_cast<std::uint16_t>(n), {-4, 0, 8}, 13);
  const auto preds = predictions_from(
      [&](const LabeledExample& e) {
        CounterRng r(hash_seed({7, static_cast<std::uint64_t>(e.iq[0])}));
        return r.uniform() < 0.6 ? std::size_t{e.class_index} : static_cast<std::size_t>(r.index(n));
      },
      split);
  const auto set = accuracy_by_snr(preds, split, names(n));
  for (std::size_t i = 0; i < set.overall.points.size(); ++i) {
    const auto& p = set.overall.points[i];
    const auto cm = confusion_matrix(preds, split, p.snr_db, n);
    CHECK(cm.total() == p.n_examples);
    CHECK(static_cast<double>(cm.diagonal_sum()) / static_cast<double>(cm.total()) == p.accuracy);
    for (std::size_t c = 0; c < n; ++c) {
      CHECK(cm.row_sum(c) == 13);
      const auto& pc = set.per_class[c].points[i];
      CHECK(pc.snr_db == p.snr_db);
      CHECK(static_cast<double>(cm.at(c, c)) / static_cast<double>(cm.row_sum(c)) == pc.accuracy);
    }
  }
}

TEST_CASE("curve CSV with 17 points has 17 data rows") {
  std::vector<std::pair<int, double>> pts;
  for (int s : kGrid) pts.push_back({s, 0.5});
  const auto csv = curves_csv({curve_of(pts)});
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 18);
  CHECK(csv.rfind("scope,class_name,snr_db,accuracy,n_examples\n", 0) == 0);
  CHECK(csv.find("overall,all,-12,0.500000,100\n") != std::string::npos);
}

TEST_CASE("report files are deterministic and heatmaps annotate the counts") {
  const std::size_t n = 4;
  const auto split = balanced_split(static_cast<std::uint16_t>(n), {-2, 6}, 9);
  const auto preds = predictions_from(
      [&](const LabeledExample& e) { return static_cast<std::size_t>((e.class_index + (e.iq[0] > 40 ? 1 : 0)) % n); },
      split);
  const auto report = build_report(preds, split, names(n), {}, 0.9);
  CHECK(report.confusions.size() == 2);
  CHECK(report.sensitivities.size() == n + 1);

  ScratchDir a("rep_a"), b("rep_b");
  emit_report(report, a.path());
  emit_report(report, b.path());
  for (const char* f : {"accuracy_vs_snr.csv", "sensitivity.csv", "confusion.csv", "accuracy_vs_snr.svg",
                        "confusion_snr_-2.svg", "confusion_snr_6.svg"}) {
    INFO(f);
    REQUIRE(std::filesystem::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  const auto conf = slurp(a / "confusion.csv");
  CHECK(conf.rfind("snr_db,true_class,pred_class,count\n", 0) == 0);
  CHECK(std::count(conf.begin(), conf.end(), '\n') == static_cast<long>(1 + 2 * n * n));
  CHECK(slurp(a / "sensitivity.csv").rfind("scope,class_name,threshold,snr_db_or_NA\n", 0) == 0);

  for (const auto& cm : report.confusions) {
    const auto svg = slurp(a / ("confusion_snr_" + std::to_string(cm.snr_db) + ".svg"));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
    const std::regex cell(R"re(<text class="count" data-row="(\d+)" data-col="(\d+)"[^>]*>(\d+)</text>)re");
    std::size_t seen = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), cell); it != std::sregex_iterator(); ++it) {
      const auto r = std::stoul((*it)[1]);
      const auto c = std::stoul((*it)[2]);
      CHECK(std::stoull((*it)[3]) == cm.at(r, c));
      ++seen;
    }
    CHECK(seen == n * n);
  }
}

TEST_CASE("emit_report surfaces I/O failures") {
  ScratchDir dir("rep_io");
  std::ofstream(dir / "blocker") << "x";
  const auto split = balanced_split(2, {0}, 2);
  std::vector<std::size_t> preds(split.examples.size(), 0);
  const auto report = build_report(preds, split, names(2));
  CHECK_THROWS_AS(emit_report(report, dir / "blocker" / "sub"), std::runtime_error);
}
