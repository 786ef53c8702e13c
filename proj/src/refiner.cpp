#include "stylekit/refiner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include "stylekit/common.hpp"
#include "stylekit/rng.hpp"

namespace stylekit {

namespace {

// Table style_labels taxonomy: 50 labels over four categories.
const std::array<std::pair<const char*, const char*>, 50> kBuiltinLabels = {{
    {"kind", "social_stance"},
    {"modest", "social_stance"},
    {"clingy", "social_stance"},
    {"playful", "social_stance"},
    {"cold", "social_stance"},
    {"proud", "social_stance"},
    {"sharp_tongued", "social_stance"},
    {"subservient", "social_stance"},
    {"submissive", "social_stance"},
    {"controlling", "social_stance"},
    {"strong", "social_stance"},
    {"defensive", "social_stance"},
    {"tsukkomi", "social_stance"},
    {"rational", "cognitive_tendency"},
    {"curious", "cognitive_tendency"},
    {"imaginative", "cognitive_tendency"},
    {"cautious", "cognitive_tendency"},
    {"idealistic", "cognitive_tendency"},
    {"conservative", "cognitive_tendency"},
    {"radical", "cognitive_tendency"},
    {"obsessive", "cognitive_tendency"},
    {"hesitant", "cognitive_tendency"},
    {"energetic", "emotional_tone"},
    {"optimistic", "emotional_tone"},
    {"confident", "emotional_tone"},
    {"passionate", "emotional_tone"},
    {"melancholy", "emotional_tone"},
    {"serious", "emotional_tone"},
    {"emotional", "emotional_tone"},
    {"sensitive", "emotional_tone"},
    {"shy", "emotional_tone"},
    {"irritable", "emotional_tone"},
    {"anxious", "emotional_tone"},
    {"lazy", "emotional_tone"},
    {"tsundere", "core_archetype"},
    {"yandere", "core_archetype"},
    {"chuunibyou", "core_archetype"},
    {"cute", "core_archetype"},
    {"naive", "core_archetype"},
    {"airhead", "core_archetype"},
    {"elegant", "core_archetype"},
    {"humorous", "core_archetype"},
    {"loyal", "core_archetype"},
    {"responsible", "core_archetype"},
    {"willful", "core_archetype"},
    {"antisocial", "core_archetype"},
    {"talkative", "core_archetype"},
    {"masochistic", "core_archetype"},
    {"sadistic", "core_archetype"},
    {"evil", "core_archetype"},
}};

void check_label_count(std::size_t n, const std::string& where) {
  if (n != kStyleLabelCount) {
    throw validation_error(where + ": expected " + std::to_string(kStyleLabelCount) +
                           " labels, got " + std::to_string(n));
  }
}

std::vector<double> assemble_input(const RefinerModel& model, const RefinerExample& ex) {
  if (ex.utterance_embedding.size() != model.embedding_dim ||
      ex.context_embedding.size() != model.embedding_dim ||
      ex.prototype_features.size() != model.label_count) {
    throw validation_error("refiner: feature dimensions do not match the model (embedding " +
                           std::to_string(ex.utterance_embedding.size()) + "/" +
                           std::to_string(ex.context_embedding.size()) + " vs " +
                           std::to_string(model.embedding_dim) + ", prototypes " +
                           std::to_string(ex.prototype_features.size()) + " vs " +
                           std::to_string(model.label_count) + ")");
  }
  std::vector<double> x;
  x.reserve(model.input_dim());
  x.insert(x.end(), ex.utterance_embedding.begin(), ex.utterance_embedding.end());
  x.insert(x.end(), ex.context_embedding.begin(), ex.context_embedding.end());
  if (model.zero_prototypes) {
    x.insert(x.end(), ex.prototype_features.size(), 0.0);
  } else {
    x.insert(x.end(), ex.prototype_features.begin(), ex.prototype_features.end());
  }
  return x;
}

struct Forward {
  std::vector<double> x;
  std::vector<double> hidden;  // post-relu
  std::vector<double> logits;
};

Forward forward_pass(const RefinerModel& model, const RefinerExample& ex) {
  Forward f;
  f.x = assemble_input(model, ex);
  const std::size_t in = model.input_dim();
  f.hidden.assign(model.hidden_width, 0.0);
  for (std::size_t h = 0; h < model.hidden_width; ++h) {
    double acc = model.b1[h];
    const double* row = &model.w1[h * in];
    for (std::size_t i = 0; i < in; ++i) acc += row[i] * f.x[i];
    f.hidden[h] = acc > 0.0 ? acc : 0.0;
  }
  f.logits.assign(model.label_count, 0.0);
  for (std::size_t l = 0; l < model.label_count; ++l) {
    double acc = model.b2[l];
    const double* row = &model.w2[l * model.hidden_width];
    for (std::size_t h = 0; h < model.hidden_width; ++h) acc += row[h] * f.hidden[h];
    f.logits[l] = acc;
  }
  return f;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Numerically stable BCE from the logit: max(z,0) - z*y + log(1+exp(-|z|)).
double bce_from_logit(double z, double y) {
  return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::fabs(z)));
}

void write_u64_le(std::ofstream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64_le(std::ifstream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void write_doubles_le(std::ofstream& out, const std::vector<double>& values) {
  for (double d : values) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    write_u64_le(out, bits);
  }
}

void read_doubles_le(std::ifstream& in, std::vector<double>& values, std::size_t count) {
  values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = read_u64_le(in);
    double d;
    std::memcpy(&d, &bits, 8);
    values[i] = d;
  }
}

struct AdamState {
  std::vector<double> m, v;
  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

void adam_step(std::vector<double>& params, const std::vector<double>& grad, AdamState& state,
               double lr, std::size_t t) {
  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grad[i];
    state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

}  // namespace

LabelSet LabelSet::builtin() {
  LabelSet set;
  set.labels.reserve(kBuiltinLabels.size());
  set.categories.reserve(kBuiltinLabels.size());
  for (const auto& [label, category] : kBuiltinLabels) {
    set.labels.emplace_back(label);
    set.categories.emplace_back(category);
  }
  return set;
}

LabelSet LabelSet::load(const std::string& path) {
  LabelSet set;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": expected \"label<TAB>category\"");
    }
    if (set.index_of(fields[0])) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": duplicate label \"" + fields[0] + "\"");
    }
    set.labels.push_back(fields[0]);
    set.categories.push_back(fields[1]);
  }
  check_label_count(set.labels.size(), path);
  return set;
}

std::optional<std::size_t> LabelSet::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

std::vector<double> make_prototype_features(const std::vector<double>& utterance_embedding,
                                            const EmbeddingTable& label_centroids,
                                            const LabelSet& labels) {
  std::vector<double> features;
  features.reserve(labels.size());
  for (const auto& label : labels.labels) {
    features.push_back(cosine(utterance_embedding, label_centroids.at(label)));
  }
  return features;
}

std::vector<double> average_embeddings(const std::vector<std::string>& keys,
                                       const EmbeddingTable& table) {
  if (keys.empty()) throw validation_error("average_embeddings: no keys given");
  std::vector<double> mean(table.dimension, 0.0);
  for (const auto& key : keys) {
    const auto& v = table.at(key);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += v[i];
  }
  for (auto& x : mean) x /= static_cast<double>(keys.size());
  return mean;
}

OversampleOutcome oversample_rare_labels(const std::vector<RefinerExample>& examples,
                                         std::size_t min_count, const LabelSet* labels) {
  OversampleOutcome outcome;
  outcome.examples = examples;
  if (examples.empty()) return outcome;
  const std::size_t label_count = examples.front().gold_labels.size();

  std::vector<std::size_t> counts(label_count, 0);
  std::vector<std::vector<std::size_t>> by_label(label_count);
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto& gold = examples[i].gold_labels;
    if (gold.size() != label_count) {
      throw validation_error("oversample_rare_labels: inconsistent gold label width");
    }
    for (std::size_t l = 0; l < label_count; ++l) {
      if (gold[l]) {
        ++counts[l];
        by_label[l].push_back(i);
      }
    }
  }

  for (std::size_t l = 0; l < label_count; ++l) {
    if (counts[l] == 0) {
      outcome.zero_count_labels.push_back(labels && l < labels->size() ? labels->labels[l]
                                                                       : std::to_string(l));
      continue;
    }
    std::size_t cursor = 0;
    while (counts[l] < min_count) {
      const RefinerExample& dup = examples[by_label[l][cursor % by_label[l].size()]];
      ++cursor;
      outcome.examples.push_back(dup);
      for (std::size_t k = 0; k < label_count; ++k) {
        if (dup.gold_labels[k]) ++counts[k];
      }
    }
  }
  return outcome;
}

ExampleSplit split_examples(const std::vector<RefinerExample>& examples, double val_fraction,
                            std::uint64_t seed) {
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng = derive_rng(seed, 0);
  rng.shuffle(order);

  std::size_t n_val = static_cast<std::size_t>(
      std::llround(val_fraction * static_cast<double>(examples.size())));
  n_val = std::clamp<std::size_t>(n_val, std::min<std::size_t>(2, examples.size()), examples.size());
  ExampleSplit split;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_val ? split.validation : split.train).push_back(examples[order[i]]);
  }
  if (split.train.size() < 2 || split.validation.size() < 2) {
    throw validation_error("train_refiner: need at least 2 examples per split, got " +
                           std::to_string(split.train.size()) + " train / " +
                           std::to_string(split.validation.size()) + " validation");
  }
  return split;
}

double refiner_loss(const RefinerModel& model, const std::vector<RefinerExample>& batch,
                    RefinerGradients* gradients) {
  if (batch.empty()) throw validation_error("refiner_loss: empty batch");
  const std::size_t in = model.input_dim();
  if (gradients) {
    gradients->w1.assign(model.w1.size(), 0.0);
    gradients->b1.assign(model.b1.size(), 0.0);
    gradients->w2.assign(model.w2.size(), 0.0);
    gradients->b2.assign(model.b2.size(), 0.0);
  }
  const double denom = static_cast<double>(batch.size() * model.label_count);
  double loss = 0.0;
  std::vector<double> dlogit(model.label_count);
  std::vector<double> dhidden(model.hidden_width);
  for (const auto& ex : batch) {
    if (ex.gold_labels.size() != model.label_count) {
      throw validation_error("refiner_loss: gold label width mismatch");
    }
    Forward f = forward_pass(model, ex);
    for (std::size_t l = 0; l < model.label_count; ++l) {
      const double w = model.label_weights[l];
      const double y = ex.gold_labels[l] ? 1.0 : 0.0;
      loss += w * bce_from_logit(f.logits[l], y) / denom;
      dlogit[l] = w * (sigmoid(f.logits[l]) - y) / denom;
    }
    if (!gradients) continue;
    std::fill(dhidden.begin(), dhidden.end(), 0.0);
    for (std::size_t l = 0; l < model.label_count; ++l) {
      const double g = dlogit[l];
      gradients->b2[l] += g;
      double* w2_grad = &gradients->w2[l * model.hidden_width];
      const double* w2_row = &model.w2[l * model.hidden_width];
      for (std::size_t h = 0; h < model.hidden_width; ++h) {
        w2_grad[h] += g * f.hidden[h];
        dhidden[h] += g * w2_row[h];
      }
    }
    for (std::size_t h = 0; h < model.hidden_width; ++h) {
      if (f.hidden[h] <= 0.0) continue;  // relu gate
      const double g = dhidden[h];
      gradients->b1[h] += g;
      double* w1_grad = &gradients->w1[h * in];
      for (std::size_t i = 0; i < in; ++i) w1_grad[i] += g * f.x[i];
    }
  }
  return loss;
}

RefinerModel train_refiner(const std::vector<RefinerExample>& examples, const RefinerConfig& config,
                           TrainStats* stats) {
  if (examples.empty()) throw validation_error("train_refiner: no examples");
  const std::size_t label_count = examples.front().gold_labels.size();
  check_label_count(label_count, "train_refiner");
  for (const auto& ex : examples) {
    if (ex.gold_labels.size() != label_count ||
        ex.prototype_features.size() != label_count ||
        ex.utterance_embedding.size() != examples.front().utterance_embedding.size() ||
        ex.context_embedding.size() != examples.front().utterance_embedding.size()) {
      throw validation_error("train_refiner: inconsistent example dimensions");
    }
    bool any = false;
    for (auto g : ex.gold_labels) any = any || g;
    if (!any) throw validation_error("train_refiner: example with no active gold label");
  }

  RefinerModel model;
  model.embedding_dim = examples.front().utterance_embedding.size();
  model.hidden_width = config.hidden_width;
  model.label_count = label_count;
  model.zero_prototypes = config.zero_prototypes;

  ExampleSplit split = split_examples(examples, config.val_fraction, config.seed);

  // Inverse-frequency label weights from the training split, normalized to
  // mean 1; labels unseen in training fall back to frequency 1.
  std::vector<std::size_t> freq(label_count, 0);
  for (const auto& ex : split.train) {
    for (std::size_t l = 0; l < label_count; ++l) {
      if (ex.gold_labels[l]) ++freq[l];
    }
  }
  model.label_weights.assign(label_count, 0.0);
  double weight_sum = 0.0;
  for (std::size_t l = 0; l < label_count; ++l) {
    model.label_weights[l] = 1.0 / static_cast<double>(std::max<std::size_t>(freq[l], 1));
    weight_sum += model.label_weights[l];
  }
  for (auto& w : model.label_weights) w *= static_cast<double>(label_count) / weight_sum;

  // Xavier-uniform init from a dedicated stream.
  Rng init_rng = derive_rng(config.seed, 1);
  const std::size_t in = model.input_dim();
  model.w1.resize(model.hidden_width * in);
  model.b1.assign(model.hidden_width, 0.0);
  model.w2.resize(label_count * model.hidden_width);
  model.b2.assign(label_count, 0.0);
  const double r1 = std::sqrt(6.0 / static_cast<double>(in + model.hidden_width));
  for (auto& w : model.w1) w = init_rng.range(-r1, r1);
  const double r2 = std::sqrt(6.0 / static_cast<double>(model.hidden_width + label_count));
  for (auto& w : model.w2) w = init_rng.range(-r2, r2);

  if (stats) {
    stats->train_size = split.train.size();
    stats->val_size = split.validation.size();
    stats->epochs_run = 0;
    stats->untrained = true;
    stats->best_val_loss = 0.0;
  }
  if (config.max_epochs == 0) {
    return model;  // initialized but untrained, flagged via model.trained
  }

  AdamState adam_w1(model.w1.size()), adam_b1(model.b1.size());
  AdamState adam_w2(model.w2.size()), adam_b2(model.b2.size());
  std::size_t adam_t = 0;

  RefinerModel best = model;
  double best_val = refiner_loss(model, split.validation, nullptr);
  std::size_t bad_epochs = 0;
  std::size_t epochs_run = 0;

  const std::size_t batch_size = std::max<std::size_t>(1, config.batch_size);
  std::vector<std::size_t> order(split.train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  RefinerGradients grads;
  std::vector<RefinerExample> batch;
  for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    Rng epoch_rng = derive_rng(config.seed, 1000 + epoch);
    epoch_rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      batch.clear();
      for (std::size_t i = start; i < std::min(order.size(), start + batch_size); ++i) {
        batch.push_back(split.train[order[i]]);
      }
      const double loss = refiner_loss(model, batch, &grads);
      if (!std::isfinite(loss)) {
        throw validation_error("train_refiner: non-finite training loss at epoch " +
                               std::to_string(epoch));
      }
      ++adam_t;
      adam_step(model.w1, grads.w1, adam_w1, config.learning_rate, adam_t);
      adam_step(model.b1, grads.b1, adam_b1, config.learning_rate, adam_t);
      adam_step(model.w2, grads.w2, adam_w2, config.learning_rate, adam_t);
      adam_step(model.b2, grads.b2, adam_b2, config.learning_rate, adam_t);
    }
    ++epochs_run;
    const double val_loss = refiner_loss(model, split.validation, nullptr);
    if (!std::isfinite(val_loss)) {
      throw validation_error("train_refiner: non-finite validation loss at epoch " +
                             std::to_string(epoch));
    }
    if (val_loss < best_val) {
      best_val = val_loss;
      best = model;
      best.trained = true;
      bad_epochs = 0;
    } else {
      ++bad_epochs;
      if (bad_epochs > config.patience) break;
    }
  }

  best.trained = true;
  if (stats) {
    stats->epochs_run = epochs_run;
    stats->best_val_loss = best_val;
    stats->untrained = false;
  }
  return best;
}

std::vector<double> predict_probabilities(const RefinerModel& model, const RefinerExample& features) {
  Forward f = forward_pass(model, features);
  std::vector<double> probs(model.label_count);
  for (std::size_t l = 0; l < model.label_count; ++l) probs[l] = sigmoid(f.logits[l]);
  return probs;
}

Prediction predict(const RefinerModel& model, const RefinerExample& features,
                   const ThresholdVector& thresholds) {
  if (thresholds.values.size() != model.label_count) {
    throw validation_error("predict: threshold vector length mismatch");
  }
  Prediction pred;
  pred.probabilities = predict_probabilities(model, features);
  pred.decisions.resize(model.label_count);
  for (std::size_t l = 0; l < model.label_count; ++l) {
    pred.decisions[l] = pred.probabilities[l] >= thresholds.values[l] ? 1 : 0;
  }
  return pred;
}

std::vector<double> default_threshold_grid() {
  std::vector<double> grid;
  grid.reserve(99);
  for (int i = 1; i <= 99; ++i) grid.push_back(static_cast<double>(i) / 100.0);
  return grid;
}

ThresholdVector ThresholdVector::uniform(double value, std::size_t count) {
  ThresholdVector t;
  t.values.assign(count, value);
  return t;
}

void ThresholdVector::save(const std::string& path, const LabelSet& labels) const {
  if (values.size() != labels.size()) {
    throw validation_error("ThresholdVector::save: length does not match label set");
  }
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += labels.labels[i];
    out += '\t';
    out += format_fixed(values[i]);
    out += '\n';
  }
  write_file(path, out);
}

ThresholdVector ThresholdVector::load(const std::string& path, const LabelSet& labels) {
  ThresholdVector t;
  t.values.assign(labels.size(), 0.5);
  std::vector<bool> seen(labels.size(), false);
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": expected \"label<TAB>threshold\"");
    }
    auto idx = labels.index_of(fields[0]);
    if (!idx) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": unknown label \"" + fields[0] + "\"");
    }
    t.values[*idx] = parse_double(fields[1], "threshold");
    seen[*idx] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw validation_error(path + ": missing threshold for label \"" + labels.labels[i] + "\"");
    }
  }
  return t;
}

ThresholdVector optimize_thresholds(const RefinerModel& model,
                                    const std::vector<RefinerExample>& validation,
                                    const std::vector<double>& grid) {
  if (grid.empty()) throw validation_error("optimize_thresholds: empty candidate grid");
  if (validation.empty()) throw validation_error("optimize_thresholds: no validation examples");
  std::vector<double> sorted_grid = grid;
  std::sort(sorted_grid.begin(), sorted_grid.end());

  std::vector<std::vector<double>> probs;
  probs.reserve(validation.size());
  for (const auto& ex : validation) probs.push_back(predict_probabilities(model, ex));

  ThresholdVector best;
  best.values.assign(model.label_count, sorted_grid.front());
  for (std::size_t l = 0; l < model.label_count; ++l) {
    double best_f1 = -1.0;
    for (double t : sorted_grid) {
      std::size_t tp = 0, fp = 0, fn = 0;
      for (std::size_t i = 0; i < validation.size(); ++i) {
        const bool decided = probs[i][l] >= t;
        const bool gold = validation[i].gold_labels[l] != 0;
        if (decided && gold) ++tp;
        if (decided && !gold) ++fp;
        if (!decided && gold) ++fn;
      }
      const double denom = static_cast<double>(2 * tp + fp + fn);
      const double f1 = denom == 0.0 ? 0.0 : 2.0 * static_cast<double>(tp) / denom;
      if (f1 > best_f1) {  // ties keep the lowest threshold
        best_f1 = f1;
        best.values[l] = t;
      }
    }
  }
  return best;
}

ClassificationReport macro_f1(const std::vector<std::vector<std::uint8_t>>& decisions,
                              const std::vector<std::vector<std::uint8_t>>& gold,
                              std::size_t label_count) {
  if (decisions.size() != gold.size()) {
    throw validation_error("macro_f1: decision/gold count mismatch");
  }
  ClassificationReport report;
  report.per_label.assign(label_count, LabelMetrics{});
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (decisions[i].size() != label_count || gold[i].size() != label_count) {
      throw validation_error("macro_f1: row width mismatch");
    }
    for (std::size_t l = 0; l < label_count; ++l) {
      const bool d = decisions[i][l] != 0;
      const bool g = gold[i][l] != 0;
      if (d && g) ++report.per_label[l].tp;
      if (d && !g) ++report.per_label[l].fp;
      if (!d && g) ++report.per_label[l].fn;
    }
  }
  double f1_sum = 0.0;
  for (auto& m : report.per_label) {
    m.support = m.tp + m.fn;
    m.precision = (m.tp + m.fp) == 0 ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
    m.recall = m.support == 0 ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.support);
    m.f1 = (m.precision + m.recall) == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    f1_sum += m.f1;
  }
  report.macro_f1 = label_count == 0 ? 0.0 : f1_sum / static_cast<double>(label_count);
  return report;
}

void write_classification_report(const ClassificationReport& report, const LabelSet& labels,
                                 const std::string& path) {
  std::string out = "label\tprecision\trecall\tf1\tsupport\n";
  for (std::size_t l = 0; l < report.per_label.size(); ++l) {
    const auto& m = report.per_label[l];
    out += l < labels.size() ? labels.labels[l] : std::to_string(l);
    out += '\t';
    out += format_fixed(m.precision, 4);
    out += '\t';
    out += format_fixed(m.recall, 4);
    out += '\t';
    out += format_fixed(m.f1, 4);
    out += '\t';
    out += std::to_string(m.support);
    out += '\n';
  }
  out += "macro_f1\t";
  out += format_fixed(report.macro_f1, 4);
  out += '\n';
  write_file(path, out);
}

std::vector<std::vector<std::uint8_t>> centroid_baseline(
    const std::vector<std::vector<double>>& utterance_embeddings,
    const EmbeddingTable& label_centroids, const LabelSet& labels, double threshold) {
  for (const auto& label : labels.labels) {
    if (!label_centroids.find(label)) {
      throw validation_error("centroid_baseline: no centroid for label \"" + label + "\"");
    }
  }
  std::vector<std::vector<std::uint8_t>> decisions;
  decisions.reserve(utterance_embeddings.size());
  for (const auto& emb : utterance_embeddings) {
    std::vector<std::uint8_t> row(labels.size(), 0);
    for (std::size_t l = 0; l < labels.size(); ++l) {
      row[l] = cosine(emb, label_centroids.at(labels.labels[l])) >= threshold ? 1 : 0;
    }
    decisions.push_back(std::move(row));
  }
  return decisions;
}

std::vector<std::string> StyleProfile::label_names() const {
  std::vector<std::string> names;
  names.reserve(entries.size());
  for (const auto& [label, rate] : entries) names.push_back(label);
  return names;
}

StyleProfile corpus_profile(const RefinerModel& model,
                            const std::vector<RefinerExample>& corpus_features,
                            const ThresholdVector& thresholds, const LabelSet& labels,
                            std::size_t top_k, const std::string& character) {
  if (corpus_features.empty()) throw validation_error("corpus_profile: empty corpus");
  if (!model.trained) throw validation_error("untrained model requested for prediction");
  std::vector<std::size_t> fires(model.label_count, 0);
  for (const auto& ex : corpus_features) {
    Prediction pred = predict(model, ex, thresholds);
    for (std::size_t l = 0; l < model.label_count; ++l) fires[l] += pred.decisions[l];
  }
  StyleProfile profile;
  profile.character = character;
  std::vector<std::pair<std::string, double>> rates;
  for (std::size_t l = 0; l < model.label_count; ++l) {
    if (fires[l] == 0) continue;
    rates.emplace_back(labels.labels[l],
                       static_cast<double>(fires[l]) / static_cast<double>(corpus_features.size()));
  }
  std::sort(rates.begin(), rates.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (rates.size() > top_k) rates.resize(top_k);
  profile.entries = std::move(rates);
  profile.empty_flag = profile.entries.empty();
  return profile;
}

void RefinerModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write model file: " + path);
  out.write("SKRM", 4);
  write_u64_le(out, 1);  // format version
  write_u64_le(out, embedding_dim);
  write_u64_le(out, hidden_width);
  write_u64_le(out, label_count);
  write_u64_le(out, (trained ? 1u : 0u) | (zero_prototypes ? 2u : 0u));
  write_doubles_le(out, w1);
  write_doubles_le(out, b1);
  write_doubles_le(out, w2);
  write_doubles_le(out, b2);
  write_doubles_le(out, label_weights);
  if (!out) throw io_error("write failed: " + path);
}

RefinerModel RefinerModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open model file: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "SKRM") {
    throw validation_error(path + ": not a refiner model file");
  }
  const std::uint64_t version = read_u64_le(in);
  if (version != 1) throw validation_error(path + ": unsupported model version");
  RefinerModel model;
  model.embedding_dim = read_u64_le(in);
  model.hidden_width = read_u64_le(in);
  model.label_count = read_u64_le(in);
  const std::uint64_t flags = read_u64_le(in);
  model.trained = (flags & 1u) != 0;
  model.zero_prototypes = (flags & 2u) != 0;
  read_doubles_le(in, model.w1, model.hidden_width * model.input_dim());
  read_doubles_le(in, model.b1, model.hidden_width);
  read_doubles_le(in, model.w2, model.label_count * model.hidden_width);
  read_doubles_le(in, model.b2, model.label_count);
  read_doubles_le(in, model.label_weights, model.label_count);
  if (!in) throw validation_error(path + ": truncated model file");
  return model;
}

}  // namespace stylekit
