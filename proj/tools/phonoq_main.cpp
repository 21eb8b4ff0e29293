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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phonoq/phonoq.hpp"

namespace {

using namespace phonoq;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

// Errors caused by what the user handed us exit 2; broken internal
// assumptions exit 1.
int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownSymbol:
    case ErrorKind::ParseError:
    case ErrorKind::FormatError:
    case ErrorKind::MissingTier:
    case ErrorKind::ConfigError:
    case ErrorKind::IoError:
    case ErrorKind::EmptyCorpus:
    case ErrorKind::EmptyReference:
    case ErrorKind::EmptyLogits:
    case ErrorKind::EmptySubset:
      return kExitUsage;
    default:
      return kExitInternal;
  }
}

// Shared context assembled once per invocation.
struct ToolContext {
  std::string command_line;
  std::string table_path;  // --table flag, else PHQ2_TABLE, else built-in
  const FeatureTable* table = nullptr;
  FeatureTable owned_table;

  void resolve_table() {
    std::string path = table_path;
    if (path.empty()) {
      if (const char* env = std::getenv("PHQ2_TABLE")) path = env;
    }
    if (path.empty()) {
      table = &default_table();
    } else {
      owned_table = load_table(path);
      table = &owned_table;
    }
  }
};

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

std::string describe(const FeatureVector& v) {
  std::string out(manner_name(v.manner));
  out += '/';
  out += v.height ? std::string(height_name(*v.height)) : "-";
  out += '/';
  out += v.backness ? std::string(backness_name(*v.backness)) : "-";
  out += '/';
  out += v.place ? std::string(place_name(*v.place)) : "-";
  out += '/';
  out += v.voicing ? std::string(voicing_name(*v.voicing)) : "-";
  return out;
}

std::string dense_csv(const FeatureVector& v) {
  const DenseVector d = to_dense(v);
  std::string out;
  for (std::size_t i = 0; i < kNumDims; ++i) {
    if (i) out += ',';
    out += static_cast<char>('0' + d[i]);
  }
  return out;
}

std::vector<std::size_t> parse_dims_flag(const std::string& value) {
  if (value == "all21") return all21_dims();
  if (value == "shared12") return shared12_dims();
  std::vector<std::size_t> dims;
  for (const auto& part : split(value, ',')) {
    const std::string name = trim(part);
    if (name.empty()) continue;
    bool found = false;
    for (std::size_t d = 1; d < kNumDims; ++d) {
      if (name == kDimNames[d]) {
        dims.push_back(d);
        found = true;
        break;
      }
    }
    if (!found)
      throw Error(ErrorKind::ConfigError,
                  "--dims: unknown dimension '" + name +
                      "' (expected all21, shared12, or dimension names)");
  }
  validate_dims(dims);
  return dims;
}

std::string format_time(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return std::string(buf);
}

// Renders the effective settings of a run for the manifest digest.
std::string settings_text(
    const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

struct CanonOptions {
  std::string lang = "generic";
  std::string tier = "phones";
  std::string overrides_path;
  bool unknown_as_silence = false;
  double fps = kDefaultFps;
};

void add_canon_flags(CLI::App* cmd, CanonOptions& opt, bool with_tier) {
  cmd->add_option("--lang", opt.lang,
                  "Language tag: de en es cs fr it ru generic")
      ->default_val(opt.lang);
  if (with_tier)
    cmd->add_option("--tier", opt.tier, "IntervalTier name to read")
        ->default_val(opt.tier);
  cmd->add_option("--overrides", opt.overrides_path,
                  "User mapping overrides (lang<TAB>from<TAB>to)");
  cmd->add_flag("--unknown-as-silence", opt.unknown_as_silence,
                "Treat unmappable labels as silence instead of failing");
}

Utterance load_utterance(const std::string& path, const CanonOptions& opt,
                         const FeatureTable& table,
                         const OverrideRules* overrides) {
  TextGridOptions tg;
  tg.tier_name = opt.tier;
  tg.unknown_as_silence = opt.unknown_as_silence;
  tg.overrides = overrides;
  return parse_textgrid(read_file(path), parse_lang(opt.lang), table, tg);
}

int cmd_map(ToolContext& ctx, const std::string& phones_path,
            const CanonOptions& opt, const std::string& out_path) {
  ctx.resolve_table();
  std::optional<OverrideRules> rules;
  if (!opt.overrides_path.empty())
    rules = OverrideRules::load(opt.overrides_path);
  const Lang lang = parse_lang(opt.lang);

  std::string out;
  for (const auto& raw_line : split_lines(read_file(phones_path))) {
    const std::string line = trim(raw_line);
    if (line.empty() || line[0] == '#') continue;
    const CanonicalPhone canon = canonicalize_label(
        line, lang, *ctx.table, rules ? &*rules : nullptr,
        opt.unknown_as_silence, nullptr);
    const FeatureVector v = ctx.table->map_phone(canon.symbol);
    out += line + "\t" + canon.symbol + "\t" + describe(v) + "\t" +
           dense_csv(v) + "\n";
  }
  if (out_path.empty()) {
    std::fputs(out.c_str(), stdout);
  } else {
    RunManifest manifest;
    manifest.command = ctx.command_line;
    manifest.config_text = settings_text(
        {{"lang", opt.lang},
         {"unknown_as_silence", opt.unknown_as_silence ? "1" : "0"}});
    manifest.inputs = {phones_path};
    manifest.outputs = {out_path};
    write_with_manifest(out_path, out, manifest);
  }
  return kExitOk;
}

int cmd_labels(ToolContext& ctx, const std::string& grid_path,
               const CanonOptions& opt, const std::string& out_path) {
  ctx.resolve_table();
  std::optional<OverrideRules> rules;
  if (!opt.overrides_path.empty())
    rules = OverrideRules::load(opt.overrides_path);
  const Utterance utt =
      load_utterance(grid_path, opt, *ctx.table, rules ? &*rules : nullptr);
  const FrameLabelSeq seq =
      segments_to_frames(utt.segments, *ctx.table, utt.duration, opt.fps);
  const std::string csv = render_frame_csv(seq);
  if (out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    RunManifest manifest;
    manifest.command = ctx.command_line;
    manifest.config_text = settings_text(
        {{"fps", format_time(opt.fps)},
         {"lang", opt.lang},
         {"tier", opt.tier},
         {"unknown_as_silence", opt.unknown_as_silence ? "1" : "0"}});
    manifest.inputs = {grid_path};
    manifest.outputs = {out_path};
    write_with_manifest(out_path, csv, manifest);
  }
  return kExitOk;
}

std::string render_predictions(const std::vector<PhoneSegment>& segments,
                               const std::vector<SegmentPrediction>& preds) {
  std::string out =
      "start\tend\tref_phone\tmanner\theight\tbackness\tplace\tvoicing\t"
      "zero_frames\n";
  std::size_t i = 0;
  for (const auto& seg : segments) {
    if (seg.phone.is_silence()) continue;
    const auto& p = preds[i++];
    const auto& v = p.label;
    out += format_time(p.start) + "\t" + format_time(p.end) + "\t" +
           seg.phone.symbol + "\t" + std::string(manner_name(v.manner)) +
           "\t" + (v.height ? std::string(height_name(*v.height)) : "-") +
           "\t" +
           (v.backness ? std::string(backness_name(*v.backness)) : "-") +
           "\t" + (v.place ? std::string(place_name(*v.place)) : "-") + "\t" +
           (v.voicing ? std::string(voicing_name(*v.voicing)) : "-") + "\t" +
           (p.zero_frames ? "1" : "0") + "\n";
  }
  return out;
}

int cmd_decode(ToolContext& ctx, const std::string& logits_path,
               const std::string& grid_path, const CanonOptions& opt,
               bool force_vowel_voiced, const std::string& out_path) {
  ctx.resolve_table();
  std::optional<OverrideRules> rules;
  if (!opt.overrides_path.empty())
    rules = OverrideRules::load(opt.overrides_path);
  const Utterance utt =
      load_utterance(grid_path, opt, *ctx.table, rules ? &*rules : nullptr);
  const LogitMatrix logits = load_logits(logits_path, opt.fps);
  DecodeOptions dopt;
  dopt.force_vowel_voiced = force_vowel_voiced;
  const auto preds = aggregate_and_decode(logits, utt.segments, dopt);
  const std::string tsv = render_predictions(utt.segments, preds);
  if (out_path.empty()) {
    std::fputs(tsv.c_str(), stdout);
  } else {
    RunManifest manifest;
    manifest.command = ctx.command_line;
    manifest.config_text = settings_text(
        {{"force_vowel_voiced", force_vowel_voiced ? "1" : "0"},
         {"fps", format_time(opt.fps)},
         {"lang", opt.lang},
         {"tier", opt.tier}});
    manifest.inputs = {logits_path, grid_path};
    manifest.outputs = {out_path};
    write_with_manifest(out_path, tsv, manifest);
  }
  return kExitOk;
}

void emit_report(ToolContext& ctx, const EvalReport& report,
                 const std::vector<std::string>& inputs,
                 const std::string& report_out, const std::string& csv_out,
                 const std::string& config_text) {
  const std::string text = render_report_text(report);
  if (report_out.empty() && csv_out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  RunManifest manifest;
  manifest.command = ctx.command_line;
  manifest.config_text = config_text;
  manifest.inputs = inputs;
  for (const auto& out : {report_out, csv_out})
    if (!out.empty()) manifest.outputs.push_back(out);
  if (!report_out.empty()) write_with_manifest(report_out, text, manifest);
  if (!csv_out.empty())
    write_with_manifest(csv_out, render_report_csv(report), manifest);
}

int cmd_eval(ToolContext& ctx, const std::string& logits_path,
             const std::string& grid_path, const CanonOptions& opt,
             bool force_vowel_voiced, const std::string& dims_flag,
             const std::string& report_out, const std::string& csv_out) {
  ctx.resolve_table();
  std::optional<OverrideRules> rules;
  if (!opt.overrides_path.empty())
    rules = OverrideRules::load(opt.overrides_path);
  const Utterance utt =
      load_utterance(grid_path, opt, *ctx.table, rules ? &*rules : nullptr);
  const LogitMatrix logits = load_logits(logits_path, opt.fps);
  DecodeOptions dopt;
  dopt.force_vowel_voiced = force_vowel_voiced;
  const auto preds = aggregate_and_decode(logits, utt.segments, dopt);

  std::vector<FeatureVector> refs, hyps;
  long zero_frames = 0;
  std::size_t i = 0;
  for (const auto& seg : utt.segments) {
    if (seg.phone.is_silence()) continue;
    refs.push_back(ctx.table->map_phone(seg.phone.symbol));
    hyps.push_back(preds[i].label);
    if (preds[i].zero_frames) ++zero_frames;
    ++i;
  }

  EvalReport report;
  report.counts = count_features(refs, hyps);
  report.macro_dims = parse_dims_flag(dims_flag);
  report.zero_frame_segments = zero_frames;
  emit_report(ctx, report, {logits_path, grid_path}, report_out, csv_out,
              settings_text(
                  {{"dims", dims_flag},
                   {"force_vowel_voiced", force_vowel_voiced ? "1" : "0"},
                   {"fps", format_time(opt.fps)},
                   {"lang", opt.lang},
                   {"tier", opt.tier}}));
  return kExitOk;
}

int cmd_baseline_eval(ToolContext& ctx, const std::string& hyp_path,
                      const std::string& posteriors_path,
                      const std::string& grid_path, const CanonOptions& opt,
                      const std::string& dims_flag,
                      const std::string& report_out,
                      const std::string& csv_out) {
  ctx.resolve_table();
  std::optional<OverrideRules> rules;
  if (!opt.overrides_path.empty())
    rules = OverrideRules::load(opt.overrides_path);
  const Lang lang = parse_lang(opt.lang);
  const Utterance utt =
      load_utterance(grid_path, opt, *ctx.table, rules ? &*rules : nullptr);

  std::vector<std::string> raw_hyp;
  if (!posteriors_path.empty()) {
    raw_hyp = ctc_greedy(load_posteriors(posteriors_path, opt.fps));
  } else {
    std::vector<std::string> lines;
    for (const auto& line : split_lines(read_file(hyp_path)))
      if (!trim(line).empty()) lines.push_back(trim(line));
    if (lines.size() != 1)
      throw Error(ErrorKind::FormatError,
                  "hypothesis file must hold exactly one utterance line, got " +
                      std::to_string(lines.size()));
    raw_hyp = parse_hyp_line(lines[0]);
  }

  // Hypothesis symbols go through the same canonicalization as reference
  // labels; silence-like tokens are dropped.
  std::vector<std::string> hyp;
  for (const auto& sym : raw_hyp) {
    const CanonicalPhone canon = canonicalize_label(
        sym, lang, *ctx.table, rules ? &*rules : nullptr,
        opt.unknown_as_silence, nullptr);
    if (!canon.is_silence()) hyp.push_back(canon.symbol);
  }

  std::vector<std::string> ref_syms;
  std::vector<FeatureVector> refs;
  for (const auto& seg : utt.segments) {
    if (seg.phone.is_silence()) continue;
    ref_syms.push_back(seg.phone.symbol);
    refs.push_back(ctx.table->map_phone(seg.phone.symbol));
  }

  const auto preds = project_to_segments(utt.segments, hyp, *ctx.table);
  std::vector<FeatureVector> hyp_vectors;
  for (const auto& p : preds) hyp_vectors.push_back(p.label);

  EvalReport report;
  report.counts = count_features(refs, hyp_vectors);
  report.macro_dims = parse_dims_flag(dims_flag);
  report.per = per(ref_syms, hyp);

  std::vector<std::string> inputs = {grid_path};
  inputs.push_back(posteriors_path.empty() ? hyp_path : posteriors_path);
  emit_report(ctx, report, inputs, report_out, csv_out,
              settings_text({{"dims", dims_flag},
                             {"fps", format_time(opt.fps)},
                             {"lang", opt.lang},
                             {"tier", opt.tier}}));
  return kExitOk;
}

struct SynthFlags {
  std::string config_path;
  std::string out_dir = "synth_out";
  SynthConfig cfg;
  long dev_every = 5;
};

SynthConfig synth_config_from_kv(const KeyValueConfig& kv, SynthConfig base,
                                 long& dev_every) {
  kv.require_known({"seed", "utterances", "segments_per_utterance",
                    "min_duration", "max_duration", "fps",
                    "silence_gap_prob", "logit_scale", "logit_noise",
                    "feature_dim", "cluster_separation", "feature_noise",
                    "inventory", "dev_every"});
  base.seed = static_cast<std::uint64_t>(
      kv.get_long("seed", static_cast<long>(base.seed)));
  base.utterances = static_cast<std::size_t>(
      kv.get_long("utterances", static_cast<long>(base.utterances)));
  base.segments_per_utterance = static_cast<std::size_t>(kv.get_long(
      "segments_per_utterance",
      static_cast<long>(base.segments_per_utterance)));
  base.min_duration = kv.get_double("min_duration", base.min_duration);
  base.max_duration = kv.get_double("max_duration", base.max_duration);
  base.fps = kv.get_double("fps", base.fps);
  base.silence_gap_prob =
      kv.get_double("silence_gap_prob", base.silence_gap_prob);
  base.logit_scale = kv.get_double("logit_scale", base.logit_scale);
  base.logit_noise = kv.get_double("logit_noise", base.logit_noise);
  base.feature_dim = static_cast<std::size_t>(
      kv.get_long("feature_dim", static_cast<long>(base.feature_dim)));
  base.cluster_separation =
      kv.get_double("cluster_separation", base.cluster_separation);
  base.feature_noise = kv.get_double("feature_noise", base.feature_noise);
  if (kv.has("inventory")) base.inventory = kv.get_list("inventory");
  dev_every = kv.get_long("dev_every", dev_every);
  return base;
}

std::vector<std::pair<std::string, std::string>> synth_settings(
    const SynthConfig& cfg, long dev_every) {
  std::string inventory;
  for (std::size_t i = 0; i < cfg.inventory.size(); ++i) {
    if (i) inventory += ',';
    inventory += cfg.inventory[i];
  }
  char buf[48];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  return {{"cluster_separation", num(cfg.cluster_separation)},
          {"dev_every", std::to_string(dev_every)},
          {"feature_dim", std::to_string(cfg.feature_dim)},
          {"feature_noise", num(cfg.feature_noise)},
          {"fps", num(cfg.fps)},
          {"inventory", inventory},
          {"logit_noise", num(cfg.logit_noise)},
          {"logit_scale", num(cfg.logit_scale)},
          {"max_duration", num(cfg.max_duration)},
          {"min_duration", num(cfg.min_duration)},
          {"seed", std::to_string(cfg.seed)},
          {"segments_per_utterance",
           std::to_string(cfg.segments_per_utterance)},
          {"silence_gap_prob", num(cfg.silence_gap_prob)},
          {"utterances", std::to_string(cfg.utterances)}};
}

int cmd_synth(ToolContext& ctx, const SynthFlags& flags) {
  namespace fs = std::filesystem;
  ctx.resolve_table();
  const SynthConfig& cfg = flags.cfg;
  const auto utts = gen_segments(cfg, *ctx.table);

  const fs::path root(flags.out_dir);
  fs::create_directories(root / "grids");
  fs::create_directories(root / "logits");
  fs::create_directories(root / "train");
  fs::create_directories(root / "dev");

  RunManifest manifest;
  manifest.command = ctx.command_line;
  manifest.seed = cfg.seed;
  manifest.config_text = settings_text(synth_settings(cfg, flags.dev_every));

  char name[32];
  for (std::size_t u = 0; u < utts.size(); ++u) {
    std::snprintf(name, sizeof(name), "utt_%04zu", u);
    const std::string stem(name);
    const bool is_dev =
        flags.dev_every > 0 &&
        (u + 1) % static_cast<std::size_t>(flags.dev_every) == 0;
    const std::string split = is_dev ? "dev" : "train";

    const std::string grid_path = (root / "grids" / (stem + ".TextGrid")).string();
    write_file_atomic(grid_path,
                      render_textgrid(utts[u].segments, utts[u].duration));
    manifest.outputs.push_back(grid_path);

    const LogitMatrix logits = gen_logits(utts[u], *ctx.table, cfg, u);
    const std::string csv_path =
        (root / "logits" / (stem + ".logits.csv")).string();
    const std::string bin_path =
        (root / "logits" / (stem + ".logits.phq2")).string();
    write_file_atomic(csv_path, render_logits_csv(logits));
    write_file_atomic(bin_path, render_logits_binary(logits));
    manifest.outputs.push_back(csv_path);
    manifest.outputs.push_back(bin_path);

    const FeatureMatrix features = gen_training_features(utts[u], cfg, u);
    const FrameLabelSeq labels = segments_to_frames(
        utts[u].segments, *ctx.table, utts[u].duration, cfg.fps);
    const std::string feat_path =
        (root / split / (stem + ".features.csv")).string();
    const std::string label_path =
        (root / split / (stem + ".labels.csv")).string();
    write_file_atomic(feat_path, render_features_csv(features));
    write_file_atomic(label_path, render_frame_csv(labels));
    manifest.outputs.push_back(feat_path);
    manifest.outputs.push_back(label_path);
  }
  write_file_atomic((root / "corpus.manifest").string(),
                    render_manifest(manifest));
  std::printf("wrote %zu utterances to %s\n", utts.size(),
              flags.out_dir.c_str());
  return kExitOk;
}

struct TrainFlags {
  std::string config_path;
  std::string train_dir;
  std::string dev_dir;
  std::string model_out = "model.phq2m";
  std::string log_out;
  TrainConfig cfg;
};

TrainConfig train_config_from_kv(const KeyValueConfig& kv, TrainConfig base) {
  kv.require_known({"hidden", "lr", "weight_decay", "clip_norm",
                    "label_smoothing", "batch_size", "max_epochs", "patience",
                    "seed"});
  base.hidden = static_cast<std::size_t>(
      kv.get_long("hidden", static_cast<long>(base.hidden)));
  base.lr = kv.get_double("lr", base.lr);
  base.weight_decay = kv.get_double("weight_decay", base.weight_decay);
  base.clip_norm = kv.get_double("clip_norm", base.clip_norm);
  base.label_smoothing =
      kv.get_double("label_smoothing", base.label_smoothing);
  base.batch_size = static_cast<std::size_t>(
      kv.get_long("batch_size", static_cast<long>(base.batch_size)));
  base.max_epochs = static_cast<std::size_t>(
      kv.get_long("max_epochs", static_cast<long>(base.max_epochs)));
  base.patience = static_cast<std::size_t>(
      kv.get_long("patience", static_cast<long>(base.patience)));
  base.seed = static_cast<std::uint64_t>(
      kv.get_long("seed", static_cast<long>(base.seed)));
  return base;
}

void validate_train_config(const TrainConfig& cfg) {
  if (!(cfg.lr > 0.0) || !(cfg.weight_decay >= 0.0) ||
      !(cfg.clip_norm >= 0.0) || cfg.hidden == 0 || cfg.max_epochs == 0)
    throw Error(ErrorKind::ConfigError,
                "training settings must be positive");
  if (cfg.label_smoothing < 0.0 || cfg.label_smoothing >= 1.0)
    throw Error(ErrorKind::ConfigError,
                "label_smoothing must be in [0, 1)");
}

std::vector<std::pair<std::string, std::string>> train_settings(
    const TrainConfig& cfg) {
  char buf[48];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  return {{"batch_size", std::to_string(cfg.batch_size)},
          {"clip_norm", num(cfg.clip_norm)},
          {"hidden", std::to_string(cfg.hidden)},
          {"label_smoothing", num(cfg.label_smoothing)},
          {"lr", num(cfg.lr)},
          {"max_epochs", std::to_string(cfg.max_epochs)},
          {"patience", std::to_string(cfg.patience)},
          {"seed", std::to_string(cfg.seed)},
          {"weight_decay", num(cfg.weight_decay)}};
}

int cmd_train(ToolContext& ctx, const TrainFlags& flags) {
  validate_train_config(flags.cfg);
  const Corpus train = load_corpus(flags.train_dir);
  const Corpus dev = load_corpus(flags.dev_dir);
  const FitResult result = fit(flags.cfg, train, dev);

  RunManifest manifest;
  manifest.command = ctx.command_line;
  manifest.seed = flags.cfg.seed;
  manifest.config_text = settings_text(train_settings(flags.cfg));
  manifest.inputs = {flags.train_dir, flags.dev_dir};
  manifest.outputs = {flags.model_out};
  if (!flags.log_out.empty()) manifest.outputs.push_back(flags.log_out);

  write_with_manifest(flags.model_out, render_model(result.params), manifest);
  if (!flags.log_out.empty())
    write_with_manifest(flags.log_out, render_train_log(result.log),
                        manifest);
  for (const auto& unseen : result.weights.unseen)
    std::fprintf(stderr, "warning: class never observed in training: %s\n",
                 unseen.c_str());
  std::printf("best_epoch\t%zu\ndev_macro_f1\t%.6f\nepochs_run\t%zu\n",
              result.best_epoch, result.best_dev_f1, result.log.size());
  return kExitOk;
}

int cmd_gradcheck(long trials, std::uint64_t seed, double tolerance) {
  double worst = 0.0;
  for (long t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, 30, static_cast<std::uint64_t>(t)));
    GradCheckConfig cfg;
    cfg.input_dim = 2 + static_cast<std::size_t>(rng.below(9));
    cfg.hidden = 4 + static_cast<std::size_t>(rng.below(13));
    cfg.frames = 4 + static_cast<std::size_t>(rng.below(21));
    const double smoothings[4] = {0.0, 0.05, 0.1, 0.3};
    cfg.label_smoothing = smoothings[rng.below(4)];
    cfg.seed = derive_seed(seed, 31, static_cast<std::uint64_t>(t));
    worst = std::max(worst, gradient_check(cfg));
  }
  std::printf("trials\t%ld\nmax_relative_error\t%.3e\ntolerance\t%.3e\n",
              trials, worst, tolerance);
  return worst < tolerance ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phonological feature pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("phonoq ") + kToolVersion);

  ToolContext ctx;
  ctx.command_line = join_args(argc, argv);
  app.add_option("--table", ctx.table_path,
                 "Feature table TSV (overrides PHQ2_TABLE and the built-in)");

  // map
  auto* map_cmd = app.add_subcommand(
      "map", "Map phone labels (one per line) to feature vectors");
  std::string map_phones, map_out;
  CanonOptions map_opt;
  map_cmd->add_option("phones", map_phones, "Input phone list file")
      ->required();
  add_canon_flags(map_cmd, map_opt, false);
  map_cmd->add_option("--out", map_out, "Write rows here instead of stdout");

  // labels
  auto* labels_cmd = app.add_subcommand(
      "labels", "Rasterize a TextGrid into per-frame feature labels (CSV)");
  std::string labels_grid, labels_out;
  CanonOptions labels_opt;
  labels_cmd->add_option("--textgrid", labels_grid, "Aligned TextGrid")
      ->required();
  add_canon_flags(labels_cmd, labels_opt, true);
  labels_cmd->add_option("--fps", labels_opt.fps, "Frames per second")
      ->default_val(kDefaultFps);
  labels_cmd->add_option("--out", labels_out, "Output CSV path");

  // decode
  auto* decode_cmd = app.add_subcommand(
      "decode", "Aggregate activations per segment and decode features");
  std::string decode_logits, decode_grid, decode_out;
  CanonOptions decode_opt;
  bool decode_force_vowel = false;
  decode_cmd->add_option("--logits", decode_logits, "Activation matrix (CSV or binary)")
      ->required();
  decode_cmd->add_option("--textgrid", decode_grid, "Reference TextGrid")
      ->required();
  add_canon_flags(decode_cmd, decode_opt, true);
  decode_cmd->add_option("--fps", decode_opt.fps, "Frames per second")
      ->default_val(kDefaultFps);
  decode_cmd->add_flag("--force-vowel-voiced", decode_force_vowel,
                       "Pin decoded vowels to voiced");
  decode_cmd->add_option("--out", decode_out, "Output TSV path");

  // eval
  auto* eval_cmd = app.add_subcommand(
      "eval", "Score decoded features against a reference TextGrid");
  std::string eval_logits, eval_grid, eval_report, eval_csv;
  std::string eval_dims = "all21";
  CanonOptions eval_opt;
  bool eval_force_vowel = false;
  eval_cmd->add_option("--logits", eval_logits, "Activation matrix (CSV or binary)")
      ->required();
  eval_cmd->add_option("--textgrid", eval_grid, "Reference TextGrid")
      ->required();
  add_canon_flags(eval_cmd, eval_opt, true);
  eval_cmd->add_option("--fps", eval_opt.fps, "Frames per second")
      ->default_val(kDefaultFps);
  eval_cmd->add_flag("--force-vowel-voiced", eval_force_vowel,
                     "Pin decoded vowels to voiced");
  eval_cmd
      ->add_option("--dims", eval_dims,
                   "all21, shared12, or comma-separated dimension names")
      ->default_val("all21");
  eval_cmd->add_option("--report-out", eval_report, "Text report path");
  eval_cmd->add_option("--csv-out", eval_csv, "CSV report path");

  // baseline-eval
  auto* base_cmd = app.add_subcommand(
      "baseline-eval",
      "Score a phoneme hypothesis against a reference TextGrid");
  std::string base_hyp, base_post, base_grid, base_report, base_csv;
  std::string base_dims = "all21";
  CanonOptions base_opt;
  auto* hyp_opt = base_cmd->add_option(
      "--hyp", base_hyp, "Hypothesis transcript (one line, space-separated)");
  auto* post_opt = base_cmd->add_option(
      "--posteriors", base_post, "Posterior matrix for greedy CTC decoding");
  hyp_opt->excludes(post_opt);
  base_cmd->add_option("--textgrid", base_grid, "Reference TextGrid")
      ->required();
  add_canon_flags(base_cmd, base_opt, true);
  base_cmd->add_option("--fps", base_opt.fps, "Frames per second")
      ->default_val(kDefaultFps);
  base_cmd
      ->add_option("--dims", base_dims,
                   "all21, shared12, or comma-separated dimension names")
      ->default_val("all21");
  base_cmd->add_option("--report-out", base_report, "Text report path");
  base_cmd->add_option("--csv-out", base_csv, "CSV report path");

  // synth
  auto* synth_cmd = app.add_subcommand(
      "synth", "Generate a deterministic synthetic corpus");
  SynthFlags synth_flags;
  std::string synth_inventory;
  synth_cmd->add_option("--config", synth_flags.config_path,
                        "key=value settings file");
  synth_cmd->add_option("--out", synth_flags.out_dir, "Output directory")
      ->default_val(synth_flags.out_dir);
  auto* sf_seed = synth_cmd->add_option("--seed", synth_flags.cfg.seed);
  auto* sf_utts =
      synth_cmd->add_option("--utterances", synth_flags.cfg.utterances);
  auto* sf_segs = synth_cmd->add_option("--segments-per-utterance",
                                        synth_flags.cfg.segments_per_utterance);
  auto* sf_min =
      synth_cmd->add_option("--min-duration", synth_flags.cfg.min_duration);
  auto* sf_max =
      synth_cmd->add_option("--max-duration", synth_flags.cfg.max_duration);
  auto* sf_fps = synth_cmd->add_option("--fps", synth_flags.cfg.fps);
  auto* sf_gap = synth_cmd->add_option("--silence-gap-prob",
                                       synth_flags.cfg.silence_gap_prob);
  auto* sf_scale =
      synth_cmd->add_option("--logit-scale", synth_flags.cfg.logit_scale);
  auto* sf_noise =
      synth_cmd->add_option("--logit-noise", synth_flags.cfg.logit_noise);
  auto* sf_dim =
      synth_cmd->add_option("--feature-dim", synth_flags.cfg.feature_dim);
  auto* sf_sep = synth_cmd->add_option("--cluster-separation",
                                       synth_flags.cfg.cluster_separation);
  auto* sf_fnoise =
      synth_cmd->add_option("--feature-noise", synth_flags.cfg.feature_noise);
  auto* sf_inv = synth_cmd->add_option("--inventory", synth_inventory,
                                       "Comma-separated phone symbols");
  auto* sf_dev = synth_cmd->add_option("--dev-every", synth_flags.dev_every,
                                       "Every n-th utterance goes to dev/");

  // train
  auto* train_cmd = app.add_subcommand(
      "train", "Train the multi-head classifier on a corpus directory");
  TrainFlags train_flags;
  train_cmd->add_option("--train", train_flags.train_dir,
                        "Training corpus directory")
      ->required();
  train_cmd->add_option("--dev", train_flags.dev_dir,
                        "Development corpus directory")
      ->required();
  train_cmd->add_option("--config", train_flags.config_path,
                        "key=value settings file");
  train_cmd->add_option("--model-out", train_flags.model_out,
                        "Model output path")
      ->default_val(train_flags.model_out);
  train_cmd->add_option("--log-out", train_flags.log_out,
                        "Per-epoch CSV log path");
  auto* tf_hidden = train_cmd->add_option("--hidden", train_flags.cfg.hidden);
  auto* tf_lr = train_cmd->add_option("--lr", train_flags.cfg.lr);
  auto* tf_wd =
      train_cmd->add_option("--weight-decay", train_flags.cfg.weight_decay);
  auto* tf_clip =
      train_cmd->add_option("--clip-norm", train_flags.cfg.clip_norm);
  auto* tf_smooth = train_cmd->add_option("--label-smoothing",
                                          train_flags.cfg.label_smoothing);
  auto* tf_batch =
      train_cmd->add_option("--batch-size", train_flags.cfg.batch_size);
  auto* tf_epochs =
      train_cmd->add_option("--max-epochs", train_flags.cfg.max_epochs);
  auto* tf_patience =
      train_cmd->add_option("--patience", train_flags.cfg.patience);
  auto* tf_seed = train_cmd->add_option("--seed", train_flags.cfg.seed);

  // gradcheck
  auto* grad_cmd = app.add_subcommand(
      "gradcheck", "Verify analytic gradients against finite differences");
  long grad_trials = 100;
  std::uint64_t grad_seed = 5;
  double grad_tol = 1e-6;
  grad_cmd->add_option("--trials", grad_trials)->default_val(100);
  grad_cmd->add_option("--seed", grad_seed)->default_val(5);
  grad_cmd->add_option("--tolerance", grad_tol)->default_val(1e-6);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Keep the documented contract: 0 for --help/--version, 2 for bad usage.
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (map_cmd->parsed()) return cmd_map(ctx, map_phones, map_opt, map_out);
    if (labels_cmd->parsed())
      return cmd_labels(ctx, labels_grid, labels_opt, labels_out);
    if (decode_cmd->parsed())
      return cmd_decode(ctx, decode_logits, decode_grid, decode_opt,
                        decode_force_vowel, decode_out);
    if (eval_cmd->parsed())
      return cmd_eval(ctx, eval_logits, eval_grid, eval_opt, eval_force_vowel,
                      eval_dims, eval_report, eval_csv);
    if (base_cmd->parsed()) {
      if (base_hyp.empty() == base_post.empty())
        throw CLI::RequiredError("exactly one of --hyp/--posteriors");
      return cmd_baseline_eval(ctx, base_hyp, base_post, base_grid, base_opt,
                               base_dims, base_report, base_csv);
    }
    if (synth_cmd->parsed()) {
      // Settings resolve config file first, then flags on top.
      long dev_every = 5;
      SynthConfig cfg;
      if (!synth_flags.config_path.empty())
        cfg = synth_config_from_kv(
            KeyValueConfig::load(synth_flags.config_path), cfg, dev_every);
      if (sf_seed->count()) cfg.seed = synth_flags.cfg.seed;
      if (sf_utts->count()) cfg.utterances = synth_flags.cfg.utterances;
      if (sf_segs->count())
        cfg.segments_per_utterance = synth_flags.cfg.segments_per_utterance;
      if (sf_min->count()) cfg.min_duration = synth_flags.cfg.min_duration;
      if (sf_max->count()) cfg.max_duration = synth_flags.cfg.max_duration;
      if (sf_fps->count()) cfg.fps = synth_flags.cfg.fps;
      if (sf_gap->count())
        cfg.silence_gap_prob = synth_flags.cfg.silence_gap_prob;
      if (sf_scale->count()) cfg.logit_scale = synth_flags.cfg.logit_scale;
      if (sf_noise->count()) cfg.logit_noise = synth_flags.cfg.logit_noise;
      if (sf_dim->count()) cfg.feature_dim = synth_flags.cfg.feature_dim;
      if (sf_sep->count())
        cfg.cluster_separation = synth_flags.cfg.cluster_separation;
      if (sf_fnoise->count())
        cfg.feature_noise = synth_flags.cfg.feature_noise;
      if (sf_inv->count()) {
        cfg.inventory.clear();
        for (const auto& part : split(synth_inventory, ','))
          if (!trim(part).empty()) cfg.inventory.push_back(trim(part));
      }
      if (sf_dev->count()) dev_every = synth_flags.dev_every;
      synth_flags.cfg = cfg;
      synth_flags.dev_every = dev_every;
      return cmd_synth(ctx, synth_flags);
    }
    if (train_cmd->parsed()) {
      TrainConfig cfg;  // defaults
      if (!train_flags.config_path.empty())
        cfg = train_config_from_kv(
            KeyValueConfig::load(train_flags.config_path), cfg);
      if (tf_hidden->count()) cfg.hidden = train_flags.cfg.hidden;
      if (tf_lr->count()) cfg.lr = train_flags.cfg.lr;
      if (tf_wd->count()) cfg.weight_decay = train_flags.cfg.weight_decay;
      if (tf_clip->count()) cfg.clip_norm = train_flags.cfg.clip_norm;
      if (tf_smooth->count())
        cfg.label_smoothing = train_flags.cfg.label_smoothing;
      if (tf_batch->count()) cfg.batch_size = train_flags.cfg.batch_size;
      if (tf_epochs->count()) cfg.max_epochs = train_flags.cfg.max_epochs;
      if (tf_patience->count()) cfg.patience = train_flags.cfg.patience;
      if (tf_seed->count()) cfg.seed = train_flags.cfg.seed;
      train_flags.cfg = cfg;
      return cmd_train(ctx, train_flags);
    }
    if (grad_cmd->parsed())
      return cmd_gradcheck(grad_trials, grad_seed, grad_tol);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}
