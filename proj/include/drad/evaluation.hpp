#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drad/dataset.hpp"

namespace drad {

struct AccuracyPoint {
  int snr_db = 0;
  double accuracy = 0.0;
  std::size_t n_examples = 0;
};

/// Accuracy against SNR for all classes pooled ("overall") or one class.
struct AccuracyCurve {
  std::string scope = "overall";  ///< "overall" or "class"
  std::string class_name = "all";
  std::vector<AccuracyPoint> points;  ///< ascending SNR
};

struct CurveSet {
  AccuracyCurve overall;
  std::vector<AccuracyCurve> per_class;
  std::vector<std::string> warnings;  ///< one per omitted (empty) cell
};

/// Row = true class, column = predicted class, at one SNR.
struct ConfusionMatrix {
  int snr_db = 0;
  std::size_t n_classes = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::size_t truth, std::size_t pred) const { return counts[truth * n_classes + pred]; }
  std::uint64_t row_sum(std::size_t truth) const;
  std::uint64_t diagonal_sum() const;
  std::uint64_t total() const;
};

struct Sensitivity {
  std::string scope;
  std::string class_name;
  double threshold = 0.9;
  std::optional<int> snr_db;
};

/// A prediction rule for stubs and tests.
using Classifier = std::function<std::size_t(const LabeledExample&)>;

std::vector<std::size_t> predictions_from(const Classifier& classify, const SplitData& split);

/// Pooled accuracy per SNR plus per-class curves. `snr_grid` lists the SNRs
/// to report (empty: those present in the split); grid points without
/// examples are left out and reported in `warnings`.
CurveSet accuracy_by_snr(std::span<const std::size_t> predictions, const SplitData& split,
                         const std::vector<std::string>& class_names, std::span<const int> snr_grid = {});

/// Smallest grid SNR s such that accuracy >= threshold at s and at every
/// higher grid point; nullopt when no such point exists.
std::optional<int> sensitivity(const AccuracyCurve& curve, double threshold = 0.9);

/// Throws std::invalid_argument when no example has the requested SNR.
ConfusionMatrix confusion_matrix(std::span<const std::size_t> predictions, const SplitData& split,
                                 int snr_db, std::size_t n_classes);

struct EvalReport {
  std::vector<std::string> class_names;
  CurveSet curves;
  std::vector<Sensitivity> sensitivities;
  std::vector<ConfusionMatrix> confusions;
};

EvalReport build_report(std::span<const std::size_t> predictions, const SplitData& split,
                        const std::vector<std::string>& class_names, std::span<const int> snr_grid = {},
                        double threshold = 0.9);

/// Writes accuracy_vs_snr.csv, sensitivity.csv, confusion.csv,
/// accuracy_vs_snr.svg and one confusion_snr_<s>.svg per SNR.
void emit_report(const EvalReport& report, const std::filesystem::path& out_dir);

/// Self-contained SVG line chart of accuracy against SNR.
std::string render_curves_svg(const std::vector<AccuracyCurve>& curves, const std::string& title);

/// Self-contained SVG heatmap; each cell is annotated with its count.
std::string render_confusion_svg(const ConfusionMatrix& cm, const std::vector<std::string>& class_names);

std::string curves_csv(const std::vector<AccuracyCurve>& curves);

}  // namespace drad
