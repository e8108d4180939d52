#include "drad/evaluation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace drad {

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::uint64_t s = 0;
  for (std::size_t p = 0; p < n_classes; ++p) s += at(truth, p);
  return s;
}

std::uint64_t ConfusionMatrix::diagonal_sum() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < n_classes; ++i) s += at(i, i);
  return s;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

std::vector<std::size_t> predictions_from(const Classifier& classify, const SplitData& split) {
  std::vector<std::size_t> out;
  out.reserve(split.examples.size());
  for (const auto& ex : split.examples) out.push_back(classify(ex));
  return out;
}

namespace {

struct Tally {
  std::size_t correct = 0;
  std::size_t total = 0;
};

std::vector<int> snr_keys(const SplitData& split, std::span<const int> grid) {
  if (!grid.empty()) return {grid.begin(), grid.end()};
  std::vector<int> keys;
  for (const auto& ex : split.examples) keys.push_back(ex.snr_db);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

}  // namespace

CurveSet accuracy_by_snr(std::span<const std::size_t> predictions, const SplitData& split,
                         const std::vector<std::string>& class_names, std::span<const int> snr_grid) {
  if (predictions.size() != split.examples.size()) {
    throw std::invalid_argument("prediction count does not match the split");
  }
  std::map<int, Tally> pooled;
  std::vector<std::map<int, Tally>> by_class(class_names.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& ex = split.examples[i];
    const bool ok = predictions[i] == ex.class_index;
    auto& p = pooled[ex.snr_db];
    p.total++;
    p.correct += ok;
    if (ex.class_index < by_class.size()) {
      auto& c = by_class[ex.class_index][ex.snr_db];
      c.total++;
      c.correct += ok;
    }
  }

  CurveSet set;
  const auto keys = snr_keys(split, snr_grid);
  const auto fill = [&](AccuracyCurve& curve, const std::map<int, Tally>& tallies) {
    for (int s : keys) {
      const auto it = tallies.find(s);
      if (it == tallies.end() || it->second.total == 0) {
        set.warnings.push_back("no examples for " + curve.class_name + " at " + std::to_string(s) + " dB");
        continue;
      }
      curve.points.push_back({s, static_cast<double>(it->second.correct) / static_cast<double>(it->second.total),
                              it->second.total});
    }
  };
  fill(set.overall, pooled);
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    AccuracyCurve curve;
    curve.scope = "class";
    curve.class_name = class_names[c];
    fill(curve, by_class[c]);
    set.per_class.push_back(std::move(curve));
  }
  return set;
}

std::optional<int> sensitivity(const AccuracyCurve& curve, double threshold) {
  std::optional<int> best;
  // Walk down from the highest SNR while the suffix stays above threshold.
  for (auto it = curve.points.rbegin(); it != curve.points.rend(); ++it) {
    if (it->accuracy < threshold) break;
    best = it->snr_db;
  }
  return best;
}

ConfusionMatrix confusion_matrix(std::span<const std::size_t> predictions, const SplitData& split, int snr_db,
                                 std::size_t n_classes) {
  if (predictions.size() != split.examples.size()) {
    throw std::invalid_argument("prediction count does not match the split");
  }
  ConfusionMatrix cm;
  cm.snr_db = snr_db;
  cm.n_classes = n_classes;
  cm.counts.assign(n_classes * n_classes, 0);
  bool any = false;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto& ex = split.examples[i];
    if (ex.snr_db != snr_db) continue;
    if (ex.class_index >= n_classes || predictions[i] >= n_classes) {
      throw std::invalid_argument("class index out of range for the confusion matrix");
    }
    any = true;
    cm.counts[ex.class_index * n_classes + predictions[i]]++;
  }
  if (!any) throw std::invalid_argument("no examples at " + std::to_string(snr_db) + " dB");
  return cm;
}

EvalReport build_report(std::span<const std::size_t> predictions, const SplitData& split,
                        const std::vector<std::string>& class_names, std::span<const int> snr_grid,
                        double threshold) {
  EvalReport r;
  r.class_names = class_names;
  r.curves = accuracy_by_snr(predictions, split, class_names, snr_grid);
  r.sensitivities.push_back({"overall", "all", threshold, sensitivity(r.curves.overall, threshold)});
  for (const auto& c : r.curves.per_class) {
    r.sensitivities.push_back({"class", c.class_name, threshold, sensitivity(c, threshold)});
  }
  for (const auto& p : r.curves.overall.points) {
    r.confusions.push_back(confusion_matrix(predictions, split, p.snr_db, class_names.size()));
  }
  return r;
}

}  // namespace drad
