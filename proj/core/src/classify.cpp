#include "tsdiv/classify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "tsdiv/parallel.hpp"

namespace tsdiv {

namespace {

// Pairwise values between test and train series. Debiased kinds reuse
// per-series self terms; the combining expression matches divergence()
// exactly so cached evaluation is bit-identical to the uncached one.
std::vector<std::vector<double>> pairwise_values(
    const std::vector<TimeSeries>& test, const std::vector<TimeSeries>& train,
    const DivergenceKind& kind, CostKind cost) {
  const DivergenceKind base = biased_counterpart(kind);
  const bool debiased = is_debiased(kind.tag);

  std::vector<double> self_train, self_test;
  if (debiased) {
    self_train.resize(train.size());
    parallel_for(train.size(), [&](std::size_t r) {
      self_train[r] = discrepancy(base, train[r], train[r], cost);
    });
    self_test.resize(test.size());
    parallel_for(test.size(), [&](std::size_t t) {
      self_test[t] = discrepancy(base, test[t], test[t], cost);
    });
  }

  std::vector<std::vector<double>> values(test.size(),
                                          std::vector<double>(train.size()));
  parallel_for(test.size() * train.size(), [&](std::size_t idx) {
    const std::size_t t = idx / train.size();
    const std::size_t r = idx % train.size();
    const double base_val = discrepancy(base, test[t], train[r], cost);
    values[t][r] =
        debiased ? debias(base_val, self_test[t], self_train[r]) : base_val;
  });
  return values;
}

long vote(const std::vector<double>& values, const std::vector<long>& labels,
          int k) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k),
                                               values.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(kk),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (values[a] != values[b]) return values[a] < values[b];
                      return a < b;
                    });

  std::map<long, std::pair<int, double>> tally; // label -> (count, summed value)
  for (std::size_t i = 0; i < kk; ++i) {
    auto& t = tally[labels[order[i]]];
    t.first += 1;
    t.second += values[order[i]];
  }
  long best_label = tally.begin()->first;
  auto best = tally.begin()->second;
  for (const auto& [label, t] : tally) {
    if (t.first > best.first ||
        (t.first == best.first && t.second < best.second)) {
      best_label = label;
      best = t;
    }
    // equal count and sum: map order already favors the smaller label id
  }
  return best_label;
}

struct Split {
  std::vector<std::size_t> train, validation;
};

Split stratified_split(const LabeledDataset& data, std::mt19937_64& rng) {
  std::map<long, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < data.size(); ++i)
    by_label[data.labels[i]].push_back(i);

  for (int attempt = 0; attempt < 100; ++attempt) {
    Split split;
    for (auto& [label, indices] : by_label) {
      std::vector<std::size_t> shuffled = indices;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const std::size_t n_train = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::llround(2.0 * shuffled.size() / 3.0)));
      for (std::size_t i = 0; i < shuffled.size(); ++i)
        (i < n_train ? split.train : split.validation).push_back(shuffled[i]);
    }
    const bool train_covers_all =
        std::all_of(by_label.begin(), by_label.end(), [&](const auto& kv) {
          return std::any_of(split.train.begin(), split.train.end(), [&](std::size_t i) {
            return data.labels[i] == kv.first;
          });
        });
    if (train_covers_all && !split.validation.empty()) {
      std::sort(split.train.begin(), split.train.end());
      std::sort(split.validation.begin(), split.validation.end());
      return split;
    }
  }

  // Unstratified fallback.
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t n_train =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(2.0 * data.size() / 3.0)));
  Split split;
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < n_train ? split.train : split.validation).push_back(order[i]);
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.validation.begin(), split.validation.end());
  return split;
}

LabeledDataset subset(const LabeledDataset& data,
                      const std::vector<std::size_t>& indices) {
  LabeledDataset out;
  out.series.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) {
    out.series.push_back(data.series[i]);
    out.labels.push_back(data.labels[i]);
  }
  return out;
}

void check_dataset(const LabeledDataset& data) {
  if (data.series.empty()) throw std::invalid_argument("empty training set");
  if (data.series.size() != data.labels.size())
    throw std::invalid_argument("series and label counts differ");
}

} // namespace

std::vector<long> knn_predict(const LabeledDataset& train,
                              const std::vector<TimeSeries>& test,
                              const DivergenceKind& kind, CostKind cost, int k) {
  check_dataset(train);
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("k must be a positive odd integer");

  const auto values = pairwise_values(test, train.series, kind, cost);
  std::vector<long> predicted(test.size());
  for (std::size_t t = 0; t < test.size(); ++t)
    predicted[t] = vote(values[t], train.labels, k);
  return predicted;
}

CentroidModel fit_centroids(const LabeledDataset& train, const DivergenceKind& kind,
                            CostKind cost, std::optional<double> gamma_selected,
                            int max_iters) {
  check_dataset(train);
  if (!is_differentiable(kind.tag))
    throw std::invalid_argument("fit_centroids requires a differentiable kind");

  DivergenceKind fit_kind = kind;
  if (gamma_selected.has_value() && is_gamma_dependent(kind.tag))
    fit_kind = kind.with_gamma(*gamma_selected);

  std::map<long, std::vector<TimeSeries>> by_label;
  for (std::size_t i = 0; i < train.size(); ++i)
    by_label[train.labels[i]].push_back(train.series[i]);

  CentroidModel model;
  model.kind = fit_kind;
  model.cost = cost;
  for (auto& [label, members] : by_label) {
    AveragingProblem problem;
    problem.series = std::move(members);
    problem.kind = fit_kind;
    problem.cost = cost;
    model.centroids.emplace(label, frechet_mean(problem, max_iters).x);
  }
  return model;
}

std::vector<long> centroid_predict(const CentroidModel& model,
                                   const std::vector<TimeSeries>& test) {
  if (model.centroids.empty()) throw std::invalid_argument("model has no centroids");

  std::vector<long> labels;
  std::vector<TimeSeries> centroids;
  for (const auto& [label, series] : model.centroids) {
    labels.push_back(label);
    centroids.push_back(series);
  }
  const auto values = pairwise_values(test, centroids, model.kind, model.cost);

  std::vector<long> predicted(test.size());
  for (std::size_t t = 0; t < test.size(); ++t) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < centroids.size(); ++c)
      if (values[t][c] < values[t][best]) best = c; // tie keeps smaller label
    predicted[t] = labels[best];
  }
  return predicted;
}

std::vector<double> default_gamma_grid() {
  return {1e-4, 1e-3, 1e-2, 1e-1, 1e0, 1e1, 1e2, 1e3, 1e4};
}

double accuracy(const std::vector<long>& predicted, const std::vector<long>& truth) {
  if (predicted.size() != truth.size())
    throw std::invalid_argument("prediction and truth sizes differ");
  if (predicted.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

GammaSelection select_gamma(const LabeledDataset& train, const DivergenceKind& kind,
                            CostKind cost, const std::vector<double>& grid,
                            const SelectGammaOptions& options) {
  check_dataset(train);
  if (grid.empty()) throw std::invalid_argument("gamma grid is empty");

  GammaSelection selection;
  selection.seed = options.seed;
  selection.splits = options.splits;
  if (!is_gamma_dependent(kind.tag)) return selection; // CV skipped

  std::mt19937_64 rng(options.seed);
  std::vector<Split> splits;
  splits.reserve(static_cast<std::size_t>(options.splits));
  for (int s = 0; s < options.splits; ++s) splits.push_back(stratified_split(train, rng));

  selection.mean_accuracy.assign(grid.size(), 0.0);
  for (const Split& split : splits) {
    const LabeledDataset fold_train = subset(train, split.train);
    const LabeledDataset fold_val = subset(train, split.validation);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const DivergenceKind kind_g = kind.with_gamma(grid[g]);
      std::vector<long> predicted;
      if (options.method == ClassifierMethod::knn) {
        predicted = knn_predict(fold_train, fold_val.series, kind_g, cost, options.k);
      } else {
        const CentroidModel model = fit_centroids(fold_train, kind_g, cost,
                                                  std::nullopt, options.centroid_iters);
        predicted = centroid_predict(model, fold_val.series);
      }
      selection.mean_accuracy[g] += accuracy(predicted, fold_val.labels);
    }
  }
  for (double& acc : selection.mean_accuracy)
    acc /= static_cast<double>(options.splits);

  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    const bool better = selection.mean_accuracy[g] > selection.mean_accuracy[best];
    const bool tie_smaller = selection.mean_accuracy[g] == selection.mean_accuracy[best] &&
                             grid[g] < grid[best];
    if (better || tie_smaller) best = g;
  }
  selection.gamma = grid[best];
  return selection;
}

} // namespace tsdiv
