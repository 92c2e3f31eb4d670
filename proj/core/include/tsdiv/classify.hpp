#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tsdiv/barycenter.hpp"
#include "tsdiv/divergences.hpp"
#include "tsdiv/matrix.hpp"

namespace tsdiv {

struct LabeledDataset {
  std::vector<TimeSeries> series;
  std::vector<long> labels;

  std::size_t size() const { return series.size(); }
};

struct CentroidModel {
  std::map<long, TimeSeries> centroids;
  DivergenceKind kind;
  CostKind cost = CostKind::squared_euclidean;
};

/// k-nearest-neighbor prediction. Votes among the k smallest divergence
/// values; vote ties go to the label with the smaller summed divergence,
/// then to the smaller label id. Self terms of debiased kinds are
/// precomputed once per series.
std::vector<long> knn_predict(const LabeledDataset& train,
                              const std::vector<TimeSeries>& test,
                              const DivergenceKind& kind, CostKind cost, int k);

/// Per-class Fréchet means under `kind` with the averaging defaults.
/// gamma_selected overrides the kind's gamma when the kind depends on it.
CentroidModel fit_centroids(const LabeledDataset& train, const DivergenceKind& kind,
                            CostKind cost,
                            std::optional<double> gamma_selected = std::nullopt,
                            int max_iters = 200);

std::vector<long> centroid_predict(const CentroidModel& model,
                                   const std::vector<TimeSeries>& test);

enum class ClassifierMethod { knn, nearest_centroid };

struct SelectGammaOptions {
  int splits = 5;
  ClassifierMethod method = ClassifierMethod::knn;
  int k = 1;                 // only for knn
  std::uint64_t seed = 0;    // recorded for reproducibility
  int centroid_iters = 200;
};

struct GammaSelection {
  /// Empty for gamma-free kinds (cross-validation skipped).
  std::optional<double> gamma;
  /// Mean held-out accuracy per grid value, in grid order.
  std::vector<double> mean_accuracy;
  std::uint64_t seed = 0;
  int splits = 0;
};

/// Cross-validated gamma selection: `splits` random stratified 2/3-1/3
/// splits of the training set, scored with the given classifier; best
/// mean accuracy wins, ties to the smaller gamma.
GammaSelection select_gamma(const LabeledDataset& train, const DivergenceKind& kind,
                            CostKind cost, const std::vector<double>& grid,
                            const SelectGammaOptions& options = {});

/// The paper's cross-validation grid {1e-4, ..., 1e4}.
std::vector<double> default_gamma_grid();

/// Fraction of matching labels, in [0, 1].
double accuracy(const std::vector<long>& predicted, const std::vector<long>& truth);

} // namespace tsdiv
