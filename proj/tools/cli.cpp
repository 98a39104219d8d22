// Copyright 2026 The sppkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sppkit/datagen.hpp"
#include "sppkit/dump_io.hpp"
#include "sppkit/enhance.hpp"
#include "sppkit/errors.hpp"
#include "sppkit/metrics.hpp"
#include "sppkit/nn/bundle_io.hpp"
#include "sppkit/nn/golden.hpp"
#include "sppkit/wav_io.hpp"

namespace sppkit::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Flag combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t worker_count() {
  if (const char* env = std::getenv("SPP_ENHANCE_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
    throw UsageError("SPP_ENHANCE_THREADS must be a positive integer, got '" +
                     std::string(env) + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(i) for i in [0, n) on a small worker pool. The first exception
/// thrown by any task is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_name(std::size_t index) {
  std::ostringstream name;
  name << "pair_" << std::setw(5) << std::setfill('0') << index << ".sppd";
  return name.str();
}

double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw IoError("cannot write " + path.string());
}

// ---- enhance ---------------------------------------------------------------

struct EnhanceArgs {
  std::string input;
  std::string output;
  std::string spp = "stat";
  std::string model;
  std::string tracker = "subopt";
  std::string dd = "printed";
  std::string dump_dir;
  double alpha_snr = 0.90;
  double gain_floor = 0.0;
  double xi_h1_db = 15.0;
  double beta = 0.9;
  double lambda_cap = 0.99;
  double xi_floor_db = kXiFloorDb;
  double smoothing = 0.8;
  bool pcm16 = false;
};

void add_enhance(CLI::App& app, EnhanceArgs& a) {
  auto* cmd = app.add_subcommand("enhance", "Enhance a noisy 16 kHz mono WAV file");
  cmd->add_option("input", a.input, "Noisy input WAV")->required();
  cmd->add_option("output", a.output, "Enhanced output WAV")->required();
  cmd->add_option("--spp", a.spp, "SPP source")
      ->check(CLI::IsMember({"stat", "nn"}))
      ->capture_default_str();
  cmd->add_option("--model", a.model, "Model bundle, required with --spp nn");
  cmd->add_option("--tracker", a.tracker, "Noise tracker")
      ->check(CLI::IsMember({"subopt", "opt"}))
      ->capture_default_str();
  cmd->add_option("--dd", a.dd, "Decision-directed previous-frame term")
      ->check(CLI::IsMember({"printed", "classical"}))
      ->capture_default_str();
  cmd->add_option("--alpha-snr", a.alpha_snr, "Decision-directed smoothing")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  cmd->add_option("--gain-floor", a.gain_floor, "Lower gain limit, 0 disables")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--xi-h1-db", a.xi_h1_db, "Fixed a priori SNR under speech presence")
      ->capture_default_str();
  cmd->add_option("--beta", a.beta, "SPP smoothing factor")->capture_default_str();
  cmd->add_option("--lambda", a.lambda_cap, "SPP stagnation cap")->capture_default_str();
  cmd->add_option("--xi-floor-db", a.xi_floor_db, "Lower limit of the a priori SNR")
      ->capture_default_str();
  cmd->add_option("--smoothing", a.smoothing, "Optimal tracker smoothing constant")
      ->capture_default_str();
  cmd->add_option("--dump-dir", a.dump_dir, "Write SPP, noise and gain dumps here");
  cmd->add_flag("--pcm16", a.pcm16, "Write 16-bit PCM instead of float");
}

int run_enhance(const EnhanceArgs& a, std::ostream& err) {
  EnhanceConfig config;
  config.alpha_snr = a.alpha_snr;
  config.gain_floor = a.gain_floor;
  config.spp_source = parse_spp_source(a.spp);
  config.tracker = parse_tracker(a.tracker);
  config.dd_mode = a.dd == "classical" ? DdMode::kClassical : DdMode::kAsPrinted;
  config.prior.xi_h1_db = a.xi_h1_db;
  config.prior.beta = a.beta;
  config.prior.lambda_cap = a.lambda_cap;
  config.xi_floor_db = a.xi_floor_db;
  config.tracker_config.smoothing = a.smoothing;
  config.validate();

  std::shared_ptr<const nn::ModelBundle> model;
  if (config.spp_source == SppSource::kNeural) {
    std::vector<std::string> warnings;
    model = std::make_shared<nn::ModelBundle>(nn::load_model(a.model, &warnings));
    for (const auto& w : warnings) err << "warning: " << w << '\n';
  }
  auto provider = make_spp_provider(config, model);

  const WavFile input = read_wav(a.input);
  EnhanceResult result = enhance(input.audio, config, *provider);
  write_wav(a.output, result.audio, a.pcm16 ? WavEncoding::kPcm16 : WavEncoding::kFloat32);

  if (!a.dump_dir.empty()) {
    const fs::path dir(a.dump_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const std::string stem = fs::path(a.input).stem().string();
    write_dump(dir / (stem + ".sppp"), DumpKind::kSpp, result.spp.values());
    write_dump(dir / (stem + ".sppn"), DumpKind::kNoise, result.noise_psd);
    write_dump(dir / (stem + ".sppg"), DumpKind::kGain, result.gain);
  }
  return kExitOk;
}

// ---- make-dataset ----------------------------------------------------------

struct DatasetArgs {
  std::size_t count = 0;
  double snr_min = -10.0;
  double snr_max = 10.0;
  std::uint64_t seed = 0;
  std::string out;
  double duration_s = 2.0;
  std::string noise = "white";
  bool snr_active = false;
};

void add_dataset(CLI::App& app, DatasetArgs& a) {
  auto* cmd = app.add_subcommand("make-dataset", "Write synthetic training pairs");
  cmd->add_option("--count", a.count, "Number of utterances")->required();
  cmd->add_option("--snr-min", a.snr_min, "Lowest mixing SNR in dB")->capture_default_str();
  cmd->add_option("--snr-max", a.snr_max, "Highest mixing SNR in dB")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Master seed")->capture_default_str();
  cmd->add_option("--out", a.out, "Output directory")->required();
  cmd->add_option("--duration", a.duration_s, "Utterance length in seconds")
      ->capture_default_str();
  cmd->add_option("--noise", a.noise, "Noise kind")
      ->check(CLI::IsMember({"white", "pink", "modulated"}))
      ->capture_default_str();
  cmd->add_flag("--snr-active", a.snr_active, "Measure SNR over active clean frames only");
}

int run_dataset(const DatasetArgs& a, std::ostream& out) {
  if (a.snr_min > a.snr_max) throw UsageError("--snr-min exceeds --snr-max");
  const NoiseKind kind = parse_noise_kind(a.noise);
  std::vector<MixSpec> specs(a.count);
  for (std::size_t i = 0; i < a.count; ++i) {
    specs[i].seed = derive_seed(a.seed, 2 * i + 1);
    specs[i].snr_db = a.snr_min + (a.snr_max - a.snr_min) * unit_interval(derive_seed(a.seed, 2 * i + 2));
    specs[i].duration_s = a.duration_s;
    specs[i].noise_kind = kind;
    specs[i].snr_reference =
        a.snr_active ? SnrReference::kActiveSpeech : SnrReference::kFullUtterance;
    specs[i].validate();
  }

  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  const StftConfig stft_config;
  json manifest = {{"seed", a.seed},         {"count", a.count},
                   {"snr_min", a.snr_min},   {"snr_max", a.snr_max},
                   {"duration_s", a.duration_s}, {"noise", a.noise},
                   {"snr_reference", a.snr_active ? "active" : "full"},
                   {"norm", nullptr},        {"items", json::array()}};

  if (a.count > 0) {
    // Statistics over the whole set first, merged in index order so the
    // result does not depend on the worker count.
    std::vector<NormStatsAccumulator> partial(a.count);
    parallel_for(a.count, [&](std::size_t i) {
      const SyntheticUtterance u = make_utterance(specs[i]);
      partial[i].add(log_power(stft(u.noisy, stft_config)));
    });
    NormStatsAccumulator total;
    for (const auto& p : partial) total.merge(p);
    const NormStats stats = total.finish();
    manifest["norm"] = {{"mean", stats.mean}, {"std", stats.std}};

    parallel_for(a.count, [&](std::size_t i) {
      const SyntheticUtterance u = make_utterance(specs[i]);
      const PairRecord record = make_training_pairs(u.clean, u.noise, specs[i].snr_db,
                                                    stft_config, stats, specs[i].seed,
                                                    specs[i].snr_reference);
      write_pair_file(dir / format_name(i), record);
    });
  }
  for (std::size_t i = 0; i < a.count; ++i) {
    manifest["items"].push_back(
        {{"file", format_name(i)}, {"seed", specs[i].seed}, {"snr_db", specs[i].snr_db}});
  }
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  out << manifest.dump() << '\n';
  return kExitOk;
}

// ---- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string metric;
  std::vector<std::string> inputs;
  double threshold = kDefaultLabelThreshold;
  double pfa = kDefaultPfaTarget;
  double eps = kDefaultKlEps;
  bool full_binary = false;
  std::size_t frame_len = 256;
  std::string csv;
};

void add_eval(CLI::App& app, EvalArgs& a) {
  auto* cmd = app.add_subcommand("eval", "Compute an evaluation metric");
  cmd->add_option("--metric", a.metric, "Metric")
      ->check(CLI::IsMember({"logerr", "roc", "auc", "pd", "segsnr", "kl"}))
      ->required();
  cmd->add_option("inputs", a.inputs,
                  "logerr: REF.sppn EST.sppn; roc/auc/pd: (SCORES.sppp TRUTH.sppp|.sppd)...; "
                  "kl: (TARGET EST)...; segsnr: REF.wav EST.wav")
      ->required();
  cmd->add_option("--threshold", a.threshold, "Truth label threshold")->capture_default_str();
  cmd->add_option("--pfa", a.pfa, "False-alarm rate for pd")->capture_default_str();
  cmd->add_option("--eps", a.eps, "KL clamp")->capture_default_str();
  cmd->add_flag("--full-binary", a.full_binary, "Add the complementary KL term");
  cmd->add_option("--frame-len", a.frame_len, "Segmental SNR frame length")
      ->capture_default_str();
  cmd->add_option("--csv", a.csv, "Also write a CSV table here");
}

struct LoadedMap {
  RealGrid values;
  std::optional<std::uint64_t> seed;
};

/// SPPP dump or the target block of an SPPD pair file.
LoadedMap load_probability_map(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  char magic[4] = {};
  file.read(magic, 4);
  if (file.gcount() == 4 && std::string_view(magic, 4) == "SPPD") {
    PairRecord record = read_pair_file(path);
    return {record.target.values(), record.seed};
  }
  return {read_dump(path, DumpKind::kSpp), std::nullopt};
}

void require_inputs(const EvalArgs& a, bool pairs) {
  const bool ok = pairs ? (!a.inputs.empty() && a.inputs.size() % 2 == 0) : a.inputs.size() == 2;
  if (!ok) {
    throw UsageError("metric '" + a.metric + "' needs " +
                     (pairs ? std::string("pairs of inputs") : std::string("exactly two inputs")) +
                     ", got " + std::to_string(a.inputs.size()));
  }
}

int run_eval(const EvalArgs& a, std::ostream& out) {
  json record = {{"metric", a.metric}, {"seed", nullptr}};
  std::string csv;

  if (a.metric == "logerr") {
    require_inputs(a, false);
    const RealGrid ref = read_dump(a.inputs[0], DumpKind::kNoise);
    const RealGrid est = read_dump(a.inputs[1], DumpKind::kNoise);
    record["value"] = log_err(ref, est);
    record["config"] = {{"floor", kNoiseFloor}};
  } else if (a.metric == "segsnr") {
    require_inputs(a, false);
    SegSnrConfig config;
    config.frame_len = a.frame_len;
    record["value"] = segmental_snr(read_wav(a.inputs[0]).audio, read_wav(a.inputs[1]).audio, config);
    record["config"] = {{"frame_len", config.frame_len},
                        {"floor_db", config.floor_db},
                        {"ceil_db", config.ceil_db}};
  } else {
    require_inputs(a, true);
    std::vector<double> first, second;
    json seeds = json::array();
    for (std::size_t i = 0; i < a.inputs.size(); i += 2) {
      LoadedMap lhs = load_probability_map(a.inputs[i]);
      LoadedMap rhs = load_probability_map(a.inputs[i + 1]);
      if (!lhs.values.same_shape(rhs.values)) {
        throw ShapeMismatch(a.inputs[i] + " and " + a.inputs[i + 1] + " differ in shape");
      }
      for (const auto& s : {lhs.seed, rhs.seed}) {
        if (s && std::find(seeds.begin(), seeds.end(), json(*s)) == seeds.end()) {
          seeds.push_back(*s);
        }
      }
      first.insert(first.end(), lhs.values.values().begin(), lhs.values.values().end());
      second.insert(second.end(), rhs.values.values().begin(), rhs.values.values().end());
    }
    if (seeds.size() == 1) {
      record["seed"] = seeds[0];
    } else if (!seeds.empty()) {
      record["seed"] = seeds;
    }

    if (a.metric == "kl") {
      const KlForm form = a.full_binary ? KlForm::kBinary : KlForm::kAsPrinted;
      record["value"] = kl_divergence(first, second, a.eps, form);
      record["config"] = {{"eps", a.eps}, {"full_binary", a.full_binary}};
    } else {
      const RocCurve curve = roc(first, second, a.threshold);
      record["config"] = {{"label_threshold", a.threshold}, {"pooled_pairs", a.inputs.size() / 2}};
      if (a.metric == "pd") {
        record["value"] = pd_at_pfa(curve, a.pfa);
        record["config"]["pfa"] = a.pfa;
      } else {
        record["value"] = auc(curve);
      }
      if (a.metric == "roc") {
        json points = json::array();
        for (const auto& p : curve.points) points.push_back({p.pfa, p.pd});
        record["points"] = std::move(points);
      }
      csv = roc_csv(curve);
    }
  }

  if (!a.csv.empty()) {
    if (csv.empty()) {
      std::ostringstream row;
      row.precision(17);
      row << "metric,value\n" << a.metric << ',' << record["value"].get<double>() << '\n';
      csv = row.str();
    }
    write_text(a.csv, csv);
  }
  out << record.dump() << '\n';
  return kExitOk;
}

// ---- model-info ------------------------------------------------------------

int run_model_info(const std::string& path, std::ostream& out, std::ostream& err) {
  std::vector<std::string> warnings;
  const nn::ModelBundle bundle = nn::load_model(path, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  const nn::ModelDescriptor& d = bundle.descriptor;
  json tensors = json::array();
  for (const auto& spec : d.inventory()) {
    tensors.push_back({{"name", spec.name}, {"shape", spec.shape}});
  }
  json info = {
      {"variant", nn::variant_name(d.variant)},
      {"format_version", bundle.format_version},
      {"param_count", nn::param_count(d)},
      {"descriptor",
       {{"num_bins", d.num_bins},
        {"latent_dim", d.latent_dim},
        {"encoder_hidden", d.encoder_hidden},
        {"decoder_hidden", d.decoder_hidden},
        {"heads", d.heads},
        {"attention_layers", d.attention_layers},
        {"fc1_out", d.fc1_out}}},
      {"norm_stats", {{"mean", bundle.norm_stats.mean}, {"std", bundle.norm_stats.std}}},
      {"tensors", std::move(tensors)},
      {"warnings", warnings},
  };
  out << info.dump() << '\n';
  return kExitOk;
}

// ---- gen-golden ------------------------------------------------------------

struct GoldenArgs {
  std::uint64_t seed = 0;
  std::string out;
  std::string variant = "both";
  std::size_t count = 10;
  double duration_s = 0.4;
};

void add_golden(CLI::App& app, GoldenArgs& a) {
  auto* cmd = app.add_subcommand("gen-golden", "Write reference fixtures for the network runtime");
  cmd->add_option("--seed", a.seed, "Seed of the first fixture")->capture_default_str();
  cmd->add_option("--out", a.out, "Output directory")->required();
  cmd->add_option("--variant", a.variant, "Model variant")
      ->check(CLI::IsMember({"blstm", "attention", "both"}))
      ->capture_default_str();
  cmd->add_option("--count", a.count, "Fixtures per variant")->capture_default_str();
  cmd->add_option("--duration", a.duration_s, "Input length in seconds")->capture_default_str();
}

int run_golden(const GoldenArgs& a, std::ostream& out) {
  std::vector<nn::ModelVariant> variants;
  if (a.variant != "attention") variants.push_back(nn::ModelVariant::kBlstm);
  if (a.variant != "blstm") variants.push_back(nn::ModelVariant::kAttention);

  json index = {{"seed", a.seed}, {"fixtures", json::array()}};
  std::vector<std::pair<nn::ModelVariant, std::uint64_t>> jobs;
  for (auto v : variants) {
    for (std::size_t i = 0; i < a.count; ++i) jobs.emplace_back(v, a.seed + i);
  }
  auto stem_of = [](nn::ModelVariant v, std::uint64_t seed) {
    return std::string(nn::variant_name(v)) + "_" + std::to_string(seed);
  };
  parallel_for(jobs.size(), [&](std::size_t j) {
    const auto [variant, seed] = jobs[j];
    nn::write_golden(a.out, stem_of(variant, seed), nn::make_golden(variant, seed, a.duration_s));
  });
  for (const auto& [variant, seed] : jobs) {
    index["fixtures"].push_back(
        {{"stem", stem_of(variant, seed)}, {"variant", nn::variant_name(variant)}, {"seed", seed}});
  }
  write_text(fs::path(a.out) / "golden.json", index.dump(2) + "\n");
  out << index.dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Speech-presence-probability toolkit", "sppkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  EnhanceArgs enhance_args;
  DatasetArgs dataset_args;
  EvalArgs eval_args;
  GoldenArgs golden_args;
  std::string model_path;
  add_enhance(app, enhance_args);
  add_dataset(app, dataset_args);
  add_eval(app, eval_args);
  app.add_subcommand("model-info", "Describe a model bundle")
      ->add_option("model", model_path, "Model bundle")
      ->required();
  add_golden(app, golden_args);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  try {
    if (name == "enhance") {
      if (enhance_args.spp == "nn" && enhance_args.model.empty()) {
        throw UsageError("--spp nn requires --model");
      }
      return run_enhance(enhance_args, err);
    }
    if (name == "make-dataset") return run_dataset(dataset_args, out);
    if (name == "eval") return run_eval(eval_args, out);
    if (name == "model-info") return run_model_info(model_path, out, err);
    return run_golden(golden_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << cmd->help();
    return kExitUsage;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << "\n\n" << cmd->help();
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace sppkit::cli
