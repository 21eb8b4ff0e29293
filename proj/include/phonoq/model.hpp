// Copyright 2026 phonoq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "phonoq/decode.hpp"
#include "phonoq/error.hpp"
#include "phonoq/features.hpp"
#include "phonoq/frames.hpp"
#include "phonoq/io.hpp"
#include "phonoq/logits.hpp"
#include "phonoq/metrics.hpp"
#include "phonoq/rng.hpp"

namespace phonoq {

// Five classification heads mirroring the feature group layout.
inline constexpr std::size_t kNumHeads = 5;
inline constexpr std::array<std::size_t, kNumHeads> kHeadSizes = {
    kMannerSize, kHeightSize, kBacknessSize, kPlaceSize, kVoicingSize};
inline constexpr std::array<std::size_t, kNumHeads> kHeadOffsets = {
    kMannerOffset, kHeightOffset, kBacknessOffset, kPlaceOffset,
    kVoicingOffset};
inline constexpr std::array<std::string_view, kNumHeads> kHeadNames = {
    "manner", "height", "backness", "place", "voicing"};

// Target class for a head under the masking rules, or -1 when the frame
// does not supervise that head: height and backness only on vowels, place
// only on consonants with a specified place, voicing on everything except
// silence. The manner head is always supervised.
inline int head_target(const FeatureVector& label, std::size_t head) {
  switch (head) {
    case 0:
      return static_cast<int>(label.manner);
    case 1:
      return label.manner == Manner::Vowel && label.height
                 ? static_cast<int>(*label.height)
                 : -1;
    case 2:
      return label.manner == Manner::Vowel && label.backness
                 ? static_cast<int>(*label.backness)
                 : -1;
    case 3:
      return is_consonant(label.manner) && label.place
                 ? static_cast<int>(*label.place)
                 : -1;
    case 4:
      return label.manner != Manner::Silence && label.voicing
                 ? static_cast<int>(*label.voicing)
                 : -1;
    default:
      return -1;
  }
}

struct ModelConfig {
  std::size_t input_dim = 0;
  std::size_t hidden = 64;
};

// Flat parameter layout: trunk weights (hidden x input, row-major), trunk
// bias, then per head weights (size x hidden) and bias.
struct ParamLayout {
  std::size_t input_dim = 0;
  std::size_t hidden = 0;
  std::size_t trunk_w = 0;
  std::size_t trunk_b = 0;
  std::array<std::size_t, kNumHeads> head_w{};
  std::array<std::size_t, kNumHeads> head_b{};
  std::size_t total = 0;

  static ParamLayout make(const ModelConfig& c) {
    ParamLayout l;
    l.input_dim = c.input_dim;
    l.hidden = c.hidden;
    std::size_t off = 0;
    l.trunk_w = off;
    off += c.hidden * c.input_dim;
    l.trunk_b = off;
    off += c.hidden;
    for (std::size_t g = 0; g < kNumHeads; ++g) {
      l.head_w[g] = off;
      off += kHeadSizes[g] * c.hidden;
      l.head_b[g] = off;
      off += kHeadSizes[g];
    }
    l.total = off;
    return l;
  }
};

struct ModelParams {
  ModelConfig config;
  std::vector<double> values;

  ParamLayout layout() const { return ParamLayout::make(config); }
};

// Glorot-uniform weights, zero biases, from a dedicated seed stream.
inline ModelParams init_params(const ModelConfig& config,
                               std::uint64_t seed) {
  if (config.input_dim == 0 || config.hidden == 0)
    throw Error(ErrorKind::ShapeMismatch,
                "model needs positive input and hidden sizes");
  const ParamLayout l = ParamLayout::make(config);
  ModelParams p;
  p.config = config;
  p.values.assign(l.total, 0.0);
  Rng rng(derive_seed(seed, 10, 0));
  auto fill = [&](std::size_t off, std::size_t rows, std::size_t cols) {
    const double a =
        std::sqrt(6.0 / static_cast<double>(rows + cols));
    for (std::size_t i = 0; i < rows * cols; ++i)
      p.values[off + i] = rng.uniform(-a, a);
  };
  fill(l.trunk_w, config.hidden, config.input_dim);
  for (std::size_t g = 0; g < kNumHeads; ++g)
    fill(l.head_w[g], kHeadSizes[g], config.hidden);
  return p;
}

namespace model_detail {

inline void forward_frame(const ModelParams& p, const ParamLayout& l,
                          const std::vector<double>& x,
                          std::vector<double>& hidden, LogitRow& out) {
  if (x.size() != l.input_dim)
    throw Error(ErrorKind::ShapeMismatch,
                "feature row has " + std::to_string(x.size()) +
                    " dims, model expects " + std::to_string(l.input_dim));
  hidden.resize(l.hidden);
  for (std::size_t i = 0; i < l.hidden; ++i) {
    double acc = p.values[l.trunk_b + i];
    const double* w = p.values.data() + l.trunk_w + i * l.input_dim;
    for (std::size_t j = 0; j < l.input_dim; ++j) acc += w[j] * x[j];
    hidden[i] = std::tanh(acc);
  }
  for (std::size_t g = 0; g < kNumHeads; ++g) {
    const std::size_t k_n = kHeadSizes[g];
    for (std::size_t k = 0; k < k_n; ++k) {
      double acc = p.values[l.head_b[g] + k];
      const double* w = p.values.data() + l.head_w[g] + k * l.hidden;
      for (std::size_t i = 0; i < l.hidden; ++i) acc += w[i] * hidden[i];
      out[kHeadOffsets[g] + k] = acc;
    }
  }
}

}  // namespace model_detail

inline LogitMatrix forward(const ModelParams& p, const FeatureMatrix& x,
                           double fps = kDefaultFps) {
  const ParamLayout l = p.layout();
  LogitMatrix m;
  m.fps = fps;
  m.rows.resize(x.size());
  std::vector<double> hidden;
  for (std::size_t t = 0; t < x.size(); ++t)
    model_detail::forward_frame(p, l, x[t], hidden, m.rows[t]);
  return m;
}

struct CorpusItem {
  FeatureMatrix features;
  FrameLabelSeq labels;
};

struct Corpus {
  std::vector<CorpusItem> items;
};

inline void validate_corpus(const Corpus& corpus, const char* which) {
  if (corpus.items.empty())
    throw Error(ErrorKind::EmptyCorpus,
                std::string(which) + " corpus has no utterances");
  for (const auto& item : corpus.items)
    if (item.features.size() != item.labels.frames())
      throw Error(ErrorKind::LengthMismatch,
                  std::string(which) +
                      " corpus: feature and label frame counts differ");
}

// Inverse-frequency class weights over supervised frames, normalized to
// mean one per head. Classes never observed get the largest seen weight and
// are reported back.
struct ClassWeights {
  std::array<std::vector<double>, kNumHeads> w;
  std::vector<std::string> unseen;  // "head/class" entries

  static ClassWeights uniform() {
    ClassWeights cw;
    for (std::size_t g = 0; g < kNumHeads; ++g)
      cw.w[g].assign(kHeadSizes[g], 1.0);
    return cw;
  }
};

inline ClassWeights compute_class_weights(const Corpus& corpus) {
  std::array<std::vector<long>, kNumHeads> freq;
  for (std::size_t g = 0; g < kNumHeads; ++g)
    freq[g].assign(kHeadSizes[g], 0);
  for (const auto& item : corpus.items)
    for (const auto& label : item.labels.labels)
      for (std::size_t g = 0; g < kNumHeads; ++g) {
        const int target = head_target(label, g);
        if (target >= 0) ++freq[g][static_cast<std::size_t>(target)];
      }

  ClassWeights cw;
  for (std::size_t g = 0; g < kNumHeads; ++g) {
    const std::size_t k_n = kHeadSizes[g];
    cw.w[g].assign(k_n, 1.0);
    double max_seen = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < k_n; ++k)
      if (freq[g][k] > 0) {
        any = true;
        max_seen = std::max(max_seen, 1.0 / static_cast<double>(freq[g][k]));
      }
    if (!any) continue;  // head never supervised: keep uniform weights
    for (std::size_t k = 0; k < k_n; ++k) {
      if (freq[g][k] > 0) {
        cw.w[g][k] = 1.0 / static_cast<double>(freq[g][k]);
      } else {
        cw.w[g][k] = max_seen;
        cw.unseen.push_back(std::string(kHeadNames[g]) + "/" +
                            std::string(kDimNames[kHeadOffsets[g] + k]));
      }
    }
    double sum = 0.0;
    for (double v : cw.w[g]) sum += v;
    const double scale = static_cast<double>(k_n) / sum;
    for (auto& v : cw.w[g]) v *= scale;
  }
  return cw;
}

struct MaskedLoss {
  double loss = 0.0;
  std::vector<LogitRow> dlogits;
  std::array<std::size_t, kNumHeads> frames_per_head{};
};

// Masked, label-smoothed, class-weighted cross entropy. Each head averages
// over its own supervised frames; heads with no supervised frames
// contribute nothing. The returned dlogits hold the exact analytic
// gradient, w * (softmax - smoothed_target) / n_head per supervised frame.
inline MaskedLoss masked_loss(const std::vector<LogitRow>& logits,
                              const std::vector<FeatureVector>& labels,
                              const ClassWeights& weights,
                              double label_smoothing) {
  if (logits.size() != labels.size())
    throw Error(ErrorKind::LengthMismatch,
                "logit and label frame counts differ");
  MaskedLoss result;
  result.dlogits.assign(logits.size(), LogitRow{});
  for (std::size_t t = 0; t < labels.size(); ++t)
    for (std::size_t g = 0; g < kNumHeads; ++g)
      if (head_target(labels[t], g) >= 0) ++result.frames_per_head[g];

  for (std::size_t t = 0; t < labels.size(); ++t) {
    for (std::size_t g = 0; g < kNumHeads; ++g) {
      const int target = head_target(labels[t], g);
      if (target < 0) continue;
      const std::size_t off = kHeadOffsets[g];
      const std::size_t k_n = kHeadSizes[g];
      const double inv_n =
          1.0 / static_cast<double>(result.frames_per_head[g]);
      const double w = weights.w[g][static_cast<std::size_t>(target)];

      double zmax = logits[t][off];
      for (std::size_t k = 1; k < k_n; ++k)
        zmax = std::max(zmax, logits[t][off + k]);
      double expsum = 0.0;
      for (std::size_t k = 0; k < k_n; ++k)
        expsum += std::exp(logits[t][off + k] - zmax);
      const double lse = zmax + std::log(expsum);

      const double uniform_q = label_smoothing / static_cast<double>(k_n);
      double qdotz = 0.0;
      for (std::size_t k = 0; k < k_n; ++k) {
        double q = uniform_q;
        if (static_cast<int>(k) == target) q += 1.0 - label_smoothing;
        qdotz += q * logits[t][off + k];
        const double pk = std::exp(logits[t][off + k] - zmax) / expsum;
        result.dlogits[t][off + k] = w * (pk - q) * inv_n;
      }
      result.loss += w * (lse - qdotz) * inv_n;
    }
  }
  return result;
}

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

// Loss plus full parameter gradient for one utterance.
inline LossAndGrad loss_and_gradients(const ModelParams& p,
                                      const FeatureMatrix& features,
                                      const std::vector<FeatureVector>& labels,
                                      const ClassWeights& weights,
                                      double label_smoothing) {
  const ParamLayout l = p.layout();
  if (features.size() != labels.size())
    throw Error(ErrorKind::LengthMismatch,
                "feature and label frame counts differ");

  std::vector<LogitRow> logits(features.size());
  std::vector<std::vector<double>> hidden(features.size());
  for (std::size_t t = 0; t < features.size(); ++t)
    model_detail::forward_frame(p, l, features[t], hidden[t], logits[t]);

  const MaskedLoss ml = masked_loss(logits, labels, weights, label_smoothing);

  LossAndGrad out;
  out.loss = ml.loss;
  out.grad.assign(l.total, 0.0);
  std::vector<double> dhidden(l.hidden);
  for (std::size_t t = 0; t < features.size(); ++t) {
    std::fill(dhidden.begin(), dhidden.end(), 0.0);
    for (std::size_t g = 0; g < kNumHeads; ++g) {
      const std::size_t off = kHeadOffsets[g];
      for (std::size_t k = 0; k < kHeadSizes[g]; ++k) {
        const double dz = ml.dlogits[t][off + k];
        if (dz == 0.0) continue;
        out.grad[l.head_b[g] + k] += dz;
        double* gw = out.grad.data() + l.head_w[g] + k * l.hidden;
        const double* hw = p.values.data() + l.head_w[g] + k * l.hidden;
        for (std::size_t i = 0; i < l.hidden; ++i) {
          gw[i] += dz * hidden[t][i];
          dhidden[i] += dz * hw[i];
        }
      }
    }
    for (std::size_t i = 0; i < l.hidden; ++i) {
      const double dpre =
          dhidden[i] * (1.0 - hidden[t][i] * hidden[t][i]);
      if (dpre == 0.0) continue;
      out.grad[l.trunk_b + i] += dpre;
      double* gw = out.grad.data() + l.trunk_w + i * l.input_dim;
      const auto& x = features[t];
      for (std::size_t j = 0; j < l.input_dim; ++j) gw[j] += dpre * x[j];
    }
  }
  return out;
}

struct OptimConfig {
  double lr = 1e-3;
  double weight_decay = 0.01;
  double clip_norm = 0.5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::size_t step = 0;
  std::vector<double> m;
  std::vector<double> v;
};

// One decoupled-weight-decay Adam update. The gradient is clipped to the
// configured global L2 norm before any moment update; non-finite gradients
// are rejected rather than propagated into the parameters.
inline void adamw_step(ModelParams& params, std::vector<double> grad,
                       const OptimConfig& cfg, AdamState& state) {
  if (grad.size() != params.values.size())
    throw Error(ErrorKind::ShapeMismatch,
                "gradient and parameter sizes differ");
  double sq = 0.0;
  for (double g : grad) {
    if (!std::isfinite(g))
      throw Error(ErrorKind::NonFiniteGradient,
                  "non-finite gradient in optimizer step");
    sq += g * g;
  }
  const double norm = std::sqrt(sq);
  if (cfg.clip_norm > 0.0 && norm > cfg.clip_norm) {
    const double scale = cfg.clip_norm / norm;
    for (double& g : grad) g *= scale;
  }
  if (state.m.size() != grad.size()) {
    state.m.assign(grad.size(), 0.0);
    state.v.assign(grad.size(), 0.0);
    state.step = 0;
  }
  ++state.step;
  const double bc1 =
      1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bc2 =
      1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < grad.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grad[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params.values[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    params.values[i] -= cfg.lr * cfg.weight_decay * params.values[i];
  }
}

struct TrainConfig {
  std::size_t hidden = 64;
  double lr = 1e-3;
  double weight_decay = 0.01;
  double clip_norm = 0.5;
  double label_smoothing = 0.05;
  std::size_t batch_size = 8;
  std::size_t max_epochs = 40;
  std::size_t patience = 5;
  std::uint64_t seed = 0;
};

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double dev_macro_f1 = 0.0;
};

struct FitResult {
  ModelParams params;  // best-scoring parameters, not the last ones
  ClassWeights weights;
  std::vector<EpochStats> log;
  std::size_t best_epoch = 0;
  double best_dev_f1 = 0.0;
};

// Segment-level macro F1 of a model on a labeled corpus: forward, recover
// constant-label spans from the reference frames, aggregate activations per
// span, decode, score.
inline double evaluate_macro_f1(const ModelParams& params,
                                const Corpus& corpus) {
  std::vector<FeatureVector> refs;
  std::vector<FeatureVector> preds;
  for (const auto& item : corpus.items) {
    if (item.features.empty()) continue;
    const LogitMatrix logits =
        forward(params, item.features, item.labels.fps);
    for (const auto& span : frames_to_segments(item.labels)) {
      if (span.label.manner == Manner::Silence) continue;
      refs.push_back(span.label);
      preds.push_back(aggregate_span(logits, span.start, span.end).label);
    }
  }
  if (refs.empty()) return 0.0;
  return macro_f1(count_features(refs, preds), all21_dims());
}

// Deterministic minibatch training with early stopping on dev macro F1.
// Identical inputs produce bit-identical parameters and logs: fixed
// accumulation order, a seeded shuffle per epoch, and no parallelism.
inline FitResult fit(const TrainConfig& cfg, const Corpus& train,
                     const Corpus& dev) {
  validate_corpus(train, "train");
  validate_corpus(dev, "dev");
  const std::size_t input_dim =
      train.items[0].features.empty() ? 0
                                      : train.items[0].features[0].size();
  if (input_dim == 0)
    throw Error(ErrorKind::EmptyCorpus,
                "train corpus has no feature frames");

  FitResult result;
  result.weights = compute_class_weights(train);
  ModelParams params = init_params({input_dim, cfg.hidden}, cfg.seed);
  AdamState state;
  const OptimConfig optim{cfg.lr, cfg.weight_decay, cfg.clip_norm,
                          0.9,    0.999,            1e-8};
  const std::size_t batch =
      cfg.batch_size == 0 ? train.items.size() : cfg.batch_size;

  result.best_dev_f1 = -1.0;
  std::size_t since_best = 0;
  std::vector<std::size_t> order(train.items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(cfg.seed, 11, epoch));
    for (std::size_t i = order.size(); i > 1; --i) {
      const std::size_t j =
          static_cast<std::size_t>(shuffle_rng.below(i));
      std::swap(order[i - 1], order[j]);
    }

    double loss_sum = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += batch) {
      const std::size_t end = std::min(begin + batch, order.size());
      std::vector<double> grad(params.values.size(), 0.0);
      const double inv = 1.0 / static_cast<double>(end - begin);
      for (std::size_t i = begin; i < end; ++i) {
        const auto& item = train.items[order[i]];
        LossAndGrad lg =
            loss_and_gradients(params, item.features, item.labels.labels,
                               result.weights, cfg.label_smoothing);
        loss_sum += lg.loss;
        for (std::size_t k = 0; k < grad.size(); ++k)
          grad[k] += lg.grad[k] * inv;
      }
      adamw_step(params, std::move(grad), optim, state);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss =
        loss_sum / static_cast<double>(train.items.size());
    stats.dev_macro_f1 = evaluate_macro_f1(params, dev);
    result.log.push_back(stats);

    if (stats.dev_macro_f1 > result.best_dev_f1) {
      result.best_dev_f1 = stats.dev_macro_f1;
      result.best_epoch = epoch;
      result.params = params;
      since_best = 0;
    } else {
      ++since_best;
      if (since_best > cfg.patience) break;
    }
  }
  return result;
}

// Training input CSV: header f0..f{D-1}, then one row of floats per frame.
inline std::string render_features_csv(const FeatureMatrix& x) {
  const std::size_t dims = x.empty() ? 0 : x[0].size();
  std::string out;
  for (std::size_t d = 0; d < dims; ++d) {
    if (d) out += ',';
    out += "f" + std::to_string(d);
  }
  out += '\n';
  char buf[48];
  for (const auto& row : x) {
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (d) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[d]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

inline FeatureMatrix parse_features_csv(std::string_view text) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty())
    throw Error(ErrorKind::FormatError, "feature CSV is empty");
  const std::vector<std::string> header = split(trim(lines[0]), ',');
  for (std::size_t d = 0; d < header.size(); ++d)
    if (trim(header[d]) != "f" + std::to_string(d))
      throw Error(ErrorKind::FormatError,
                  "feature CSV header column " + std::to_string(d + 1) +
                      " is '" + header[d] + "', expected 'f" +
                      std::to_string(d) + "'");
  FeatureMatrix x;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string row = trim(lines[i]);
    if (row.empty()) continue;
    const std::vector<std::string> cells = split(row, ',');
    if (cells.size() != header.size())
      throw Error(ErrorKind::FormatError,
                  "feature CSV line " + std::to_string(i + 1) + " has " +
                      std::to_string(cells.size()) + " columns, expected " +
                      std::to_string(header.size()));
    std::vector<double> values(cells.size());
    for (std::size_t d = 0; d < cells.size(); ++d)
      values[d] = parse_double(trim(cells[d]), "feature CSV");
    x.push_back(std::move(values));
  }
  return x;
}

// Loads a corpus directory of paired <stem>.features.csv and
// <stem>.labels.csv files, ordered by stem.
inline Corpus load_corpus(const std::string& dir, double fps = kDefaultFps) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw Error(ErrorKind::IoError, "not a corpus directory: " + dir);
  std::vector<std::string> stems;
  const std::string suffix = ".features.csv";
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      stems.push_back(name.substr(0, name.size() - suffix.size()));
  }
  std::sort(stems.begin(), stems.end());
  Corpus corpus;
  for (const auto& stem : stems) {
    CorpusItem item;
    item.features =
        parse_features_csv(read_file(dir + "/" + stem + suffix));
    item.labels =
        parse_frame_csv(read_file(dir + "/" + stem + ".labels.csv"), fps);
    corpus.items.push_back(std::move(item));
  }
  if (corpus.items.empty())
    throw Error(ErrorKind::EmptyCorpus,
                "no *.features.csv files in " + dir);
  return corpus;
}

inline std::string render_train_log(const std::vector<EpochStats>& log) {
  std::string out = "epoch,loss,dev_macro_f1\n";
  char buf[96];
  for (const auto& row : log) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.6f\n", row.epoch,
                  row.train_loss, row.dev_macro_f1);
    out += buf;
  }
  return out;
}

namespace model_detail {
inline constexpr char kModelMagic[5] = {'P', 'H', 'Q', '2', 'M'};
inline constexpr std::uint32_t kModelVersion = 1;
}  // namespace model_detail

// Binary model format: magic "PHQ2M", little-endian u32 version, input and
// hidden sizes, head count and sizes, then all parameters as float64 in
// layout order.
inline std::string render_model(const ModelParams& p) {
  std::string out;
  out.append(model_detail::kModelMagic, 5);
  put_u32(out, model_detail::kModelVersion);
  put_u32(out, static_cast<std::uint32_t>(p.config.input_dim));
  put_u32(out, static_cast<std::uint32_t>(p.config.hidden));
  put_u32(out, static_cast<std::uint32_t>(kNumHeads));
  for (std::size_t g = 0; g < kNumHeads; ++g)
    put_u32(out, static_cast<std::uint32_t>(kHeadSizes[g]));
  put_u32(out, static_cast<std::uint32_t>(p.values.size()));
  for (double v : p.values) put_f64(out, v);
  return out;
}

inline ModelParams parse_model(std::string_view bytes) {
  BinaryReader r(bytes, "model file");
  if (r.bytes(5) != std::string(model_detail::kModelMagic, 5))
    throw Error(ErrorKind::FormatError, "bad model file magic");
  const std::uint32_t version = r.u32();
  if (version != model_detail::kModelVersion)
    throw Error(ErrorKind::FormatError,
                "unsupported model file version " + std::to_string(version));
  ModelParams p;
  p.config.input_dim = r.u32();
  p.config.hidden = r.u32();
  const std::uint32_t heads = r.u32();
  if (heads != kNumHeads)
    throw Error(ErrorKind::FormatError, "model head count mismatch");
  for (std::size_t g = 0; g < kNumHeads; ++g)
    if (r.u32() != kHeadSizes[g])
      throw Error(ErrorKind::FormatError, "model head size mismatch");
  const std::uint32_t count = r.u32();
  if (count != p.layout().total)
    throw Error(ErrorKind::FormatError,
                "model parameter count does not match its shape");
  p.values.resize(count);
  for (auto& v : p.values) v = r.f64();
  if (!r.at_end())
    throw Error(ErrorKind::FormatError, "trailing bytes in model file");
  return p;
}

// Uniformly samples a structurally valid feature vector: any manner, vowel
// quality for vowels, specified-or-not place for consonants.
inline FeatureVector random_valid_label(Rng& rng) {
  FeatureVector v;
  v.manner = static_cast<Manner>(rng.below(kMannerSize));
  if (v.manner == Manner::Silence) return v;
  v.voicing = static_cast<Voicing>(rng.below(kVoicingSize));
  if (v.manner == Manner::Vowel) {
    v.height = static_cast<Height>(rng.below(kHeightSize));
    v.backness = static_cast<Backness>(rng.below(kBacknessSize));
    v.voicing = Voicing::Voiced;  // vowels are voiced in this space
  } else {
    const std::uint64_t place = rng.below(kPlaceSize + 1);
    if (place < kPlaceSize) v.place = static_cast<Place>(place);
  }
  return v;
}

struct GradCheckConfig {
  std::size_t input_dim = 6;
  std::size_t hidden = 8;
  std::size_t frames = 12;
  double label_smoothing = 0.1;
  std::uint64_t seed = 42;
};

// Central-difference check of the analytic gradient on a small randomized
// problem. Returns the largest relative disagreement over all parameters;
// coordinate differences below 1e-9 count as zero so vanishing gradients do
// not inflate the ratio.
inline double gradient_check(const GradCheckConfig& cfg = {}) {
  ModelParams p = init_params({cfg.input_dim, cfg.hidden}, cfg.seed);
  Rng rng(derive_seed(cfg.seed, 20, 0));
  FeatureMatrix x(cfg.frames, std::vector<double>(cfg.input_dim));
  for (auto& row : x)
    for (auto& v : row) v = rng.gaussian();

  // The first labels pin every masking case (vowel, placed consonant,
  // place-unspecified consonant, silence); the rest are sampled.
  std::vector<FeatureVector> labels;
  FeatureVector vowel;
  vowel.manner = Manner::Vowel;
  vowel.height = Height::High;
  vowel.backness = Backness::Front;
  vowel.voicing = Voicing::Voiced;
  FeatureVector stop;
  stop.manner = Manner::Stop;
  stop.place = Place::Labial;
  stop.voicing = Voicing::Voiceless;
  FeatureVector glottal;
  glottal.manner = Manner::Fricative;
  glottal.voicing = Voicing::Voiceless;  // place unspecified
  for (std::size_t t = 0; t < cfg.frames; ++t) {
    switch (t) {
      case 0: labels.push_back(vowel); break;
      case 1: labels.push_back(stop); break;
      case 2: labels.push_back(glottal); break;
      case 3: labels.push_back(silence_vector()); break;
      default: labels.push_back(random_valid_label(rng)); break;
    }
  }

  ClassWeights weights = ClassWeights::uniform();
  for (std::size_t g = 0; g < kNumHeads; ++g)
    for (auto& w : weights.w[g]) w = rng.uniform(0.25, 4.0);

  const LossAndGrad analytic =
      loss_and_gradients(p, x, labels, weights, cfg.label_smoothing);
  double worst = 0.0;
  const double h = 1e-5;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    const double saved = p.values[i];
    p.values[i] = saved + h;
    const double up =
        loss_and_gradients(p, x, labels, weights, cfg.label_smoothing).loss;
    p.values[i] = saved - h;
    const double down =
        loss_and_gradients(p, x, labels, weights, cfg.label_smoothing).loss;
    p.values[i] = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double diff = std::abs(analytic.grad[i] - numeric);
    if (diff < 1e-9) continue;
    const double denom = std::abs(analytic.grad[i]) + std::abs(numeric);
    worst = std::max(worst, diff / denom);
  }
  return worst;
}

}  // namespace phonoq
