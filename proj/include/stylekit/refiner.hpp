#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stylekit/corpus.hpp"

namespace stylekit {

inline constexpr std::size_t kStyleLabelCount = 50;

// The 50-label style taxonomy, grouped into four categories.
struct LabelSet {
  std::vector<std::string> labels;
  std::vector<std::string> categories;  // parallel to labels

  static LabelSet builtin();
  // File format: label <TAB> category, one per line. Must define exactly 50
  // unique labels.
  static LabelSet load(const std::string& path);

  std::size_t size() const { return labels.size(); }
  std::optional<std::size_t> index_of(const std::string& label) const;
};

struct RefinerExample {
  std::vector<double> utterance_embedding;
  std::vector<double> context_embedding;
  std::vector<double> prototype_features;  // 50 centroid cosines
  std::vector<std::uint8_t> gold_labels;   // multi-hot over 50 labels
};

// Cosine of the utterance embedding against each label centroid, in label
// order. This is the "style prototype" block of the refiner input.
std::vector<double> make_prototype_features(const std::vector<double>& utterance_embedding,
                                            const EmbeddingTable& label_centroids,
                                            const LabelSet& labels);

// Convenience for building label centroids from per-label exemplar keys.
std::vector<double> average_embeddings(const std::vector<std::string>& keys,
                                       const EmbeddingTable& table);

struct OversampleOutcome {
  std::vector<RefinerExample> examples;
  std::vector<std::string> zero_count_labels;  // could not be oversampled
};

// Duplicates examples of labels with fewer than min_count instances,
// round-robin over each label's examples in input order. Never deletes.
OversampleOutcome oversample_rare_labels(const std::vector<RefinerExample>& examples,
                                         std::size_t min_count = 23,
                                         const LabelSet* labels = nullptr);

struct RefinerConfig {
  std::size_t hidden_width = 256;
  double learning_rate = 1e-3;
  std::size_t max_epochs = 200;
  std::size_t patience = 10;
  std::uint64_t seed = 0;
  double val_fraction = 0.15;
  std::size_t batch_size = 32;
  bool zero_prototypes = false;  // end-to-end ablation: bypass style priors
};

// Single-hidden-layer multi-label classifier: relu hidden layer, 50 sigmoid
// outputs, weighted binary cross-entropy.
struct RefinerModel {
  std::size_t embedding_dim = 0;
  std::size_t hidden_width = 0;
  std::size_t label_count = kStyleLabelCount;
  std::vector<double> w1, b1;  // hidden_width x input_dim, hidden_width
  std::vector<double> w2, b2;  // label_count x hidden_width, label_count
  std::vector<double> label_weights;
  bool trained = false;
  bool zero_prototypes = false;

  std::size_t input_dim() const { return 2 * embedding_dim + label_count; }

  void save(const std::string& path) const;
  static RefinerModel load(const std::string& path);
};

struct TrainStats {
  std::size_t epochs_run = 0;
  double best_val_loss = 0.0;
  bool untrained = false;
  std::size_t train_size = 0;
  std::size_t val_size = 0;
};

struct ExampleSplit {
  std::vector<RefinerExample> train;
  std::vector<RefinerExample> validation;
};

// Seeded shuffle split; the trainer uses the identical split internally so
// threshold tuning can run on the same validation set.
ExampleSplit split_examples(const std::vector<RefinerExample>& examples, double val_fraction,
                            std::uint64_t seed);

RefinerModel train_refiner(const std::vector<RefinerExample>& examples, const RefinerConfig& config,
                           TrainStats* stats = nullptr);

struct RefinerGradients {
  std::vector<double> w1, b1, w2, b2;
};

// Mean weighted BCE over the batch; fills analytic gradients when asked.
// Exposed for finite-difference verification.
double refiner_loss(const RefinerModel& model, const std::vector<RefinerExample>& batch,
                    RefinerGradients* gradients = nullptr);

struct ThresholdVector {
  std::vector<double> values;  // length 50, each in [0,1]

  void save(const std::string& path, const LabelSet& labels) const;
  static ThresholdVector load(const std::string& path, const LabelSet& labels);
  static ThresholdVector uniform(double value, std::size_t count = kStyleLabelCount);
};

std::vector<double> default_threshold_grid();  // {0.01, 0.02, ..., 0.99}

std::vector<double> predict_probabilities(const RefinerModel& model, const RefinerExample& features);

struct Prediction {
  std::vector<double> probabilities;
  std::vector<std::uint8_t> decisions;  // probability >= per-label threshold
};

Prediction predict(const RefinerModel& model, const RefinerExample& features,
                   const ThresholdVector& thresholds);

// Per-label threshold maximizing that label's F1 on the validation examples;
// ties resolve to the lowest candidate.
ThresholdVector optimize_thresholds(const RefinerModel& model,
                                    const std::vector<RefinerExample>& validation,
                                    const std::vector<double>& grid = default_threshold_grid());

struct LabelMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  std::size_t tp = 0, fp = 0, fn = 0;
};

struct ClassificationReport {
  std::vector<LabelMetrics> per_label;
  double macro_f1 = 0.0;  // unweighted mean over all labels, 0/0 -> 0
};

ClassificationReport macro_f1(const std::vector<std::vector<std::uint8_t>>& decisions,
                              const std::vector<std::vector<std::uint8_t>>& gold,
                              std::size_t label_count = kStyleLabelCount);

void write_classification_report(const ClassificationReport& report, const LabelSet& labels,
                                 const std::string& path);

// Label active iff cosine(utterance, label centroid) >= threshold.
std::vector<std::vector<std::uint8_t>> centroid_baseline(
    const std::vector<std::vector<double>>& utterance_embeddings,
    const EmbeddingTable& label_centroids, const LabelSet& labels, double threshold);

struct StyleProfile {
  std::string character;
  std::vector<std::pair<std::string, double>> entries;  // rate desc, top_k kept
  bool empty_flag = false;

  std::vector<std::string> label_names() const;
};

// Activation rate per label = fraction of utterances where the label fires.
StyleProfile corpus_profile(const RefinerModel& model,
                            const std::vector<RefinerExample>& corpus_features,
                            const ThresholdVector& thresholds, const LabelSet& labels,
                            std::size_t top_k, const std::string& character);

}  // namespace stylekit
