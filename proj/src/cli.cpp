// Copyright 2026 The ristpc Authors
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

#include "ristpc/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "ristpc/config.hpp"
#include "ristpc/predictor.hpp"
#include "ristpc/sim.hpp"
#include "ristpc/simd/kernels.hpp"
#include "ristpc/synth.hpp"
#include "ristpc/verify.hpp"

namespace ristpc {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string methods;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file (comments allowed)");
  cmd->add_option("--seed", f.seed, "Seed for the scenario and training (overrides config)");
  cmd->add_option("--threads", f.threads, "Worker thread cap (default: available cores)");
  cmd->add_option("--methods", f.methods, "Comma-separated methods: " + valid_method_names());
  cmd->add_option("--out", f.out, "Output directory (overrides paths.out_dir)");
}

RunConfig resolve_config(const CommonFlags& f) {
  RunConfig c;
  if (!f.config.empty()) c = load_run_config(f.config);
  if (f.seed) {
    c.scenario.seed = *f.seed;
    c.train.seed = *f.seed;
  }
  if (f.threads) c.threads = *f.threads;
  if (!f.methods.empty()) c.sweep.methods = parse_method_list(f.methods);
  if (!f.out.empty()) c.paths.out_dir = f.out;
  c.validate();
  return c;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw ValidationError(what + " path not set");
  if (!fs::is_regular_file(path)) throw ValidationError(what + " not found: " + path);
}

void require_dir(const std::string& path, const std::string& what) {
  if (path.empty()) throw ValidationError(what + " path not set");
  if (!fs::is_directory(path)) throw ValidationError(what + " not found: " + path);
}

// Manifest written next to every command's outputs; enough to rerun it.
void write_run_manifest(const RunConfig& c, const std::string& command, json extra) {
  json m = {{"command", command},
            {"version", RISTPC_VERSION},
            {"simd", std::string(simd::isa_name(simd::active_kernels().isa))},
            {"config", json::parse(run_config_json(c))}};
  for (auto& [k, v] : extra.items()) m[k] = v;
  write_file(fs::path(c.paths.out_dir) / (command + "_manifest.json"), m.dump(2) + "\n");
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_prepare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_dir(c.paths.data_dir, "data directory");
  const Dataset ds = prepare_dataset(c.paths.data_dir, c.dataset);
  for (const auto& u : ds.unreadable) err << "skipped " << u << "\n";
  const std::string manifest = manifest_json(ds);
  const fs::path path =
      c.paths.manifest.empty() ? fs::path(c.paths.out_dir) / "manifest.json" : fs::path(c.paths.manifest);
  write_file(path, manifest);
  std::array<std::size_t, 3> files{}, windows{};
  for (const auto& f : ds.files) ++files[static_cast<std::size_t>(f.split)];
  for (std::size_t s = 0; s < 3; ++s) windows[s] = ds.windows[s].size();
  out << "files " << ds.files.size() << " (train " << files[0] << ", val " << files[1]
      << ", test " << files[2] << "), unreadable " << ds.unreadable.size() << "\n";
  out << "windows train " << windows[0] << ", val " << windows[1] << ", test " << windows[2]
      << "\n";
  out << "manifest " << path.string() << "\n";
  write_run_manifest(c, "prepare", {{"dataset_manifest", path.string()},
                                    {"dataset_hash", hex64(fnv1a64(manifest))}});
  return kExitOk;
}

Dataset load_manifest(const RunConfig& c, std::string* text_out = nullptr) {
  require_file(c.paths.manifest, "manifest");
  const std::string text = read_file(c.paths.manifest);
  if (text_out) *text_out = text;
  return load_dataset(text);
}

double one_step_error(const LstmParams& params, const NormStats& stats,
                      const std::vector<WindowSample>& windows, double dt) {
  if (windows.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& w : windows) {
    sum += haversine_m(predict_horizon(params, stats, w.input, 1, dt).front(), w.target);
  }
  return sum / static_cast<double>(windows.size());
}

int cmd_train(const RunConfig& c, std::ostream& out) {
  std::string manifest_text;
  const Dataset ds = load_manifest(c, &manifest_text);
  const auto& train_w = ds.split_windows(Split::kTrain);
  const auto& val_w = ds.split_windows(Split::kValidation);
  if (train_w.empty() || val_w.empty()) {
    throw std::runtime_error("train: dataset needs training and validation windows");
  }
  const TrainResult r = train(train_w, val_w, ds.stats, c.train);
  const fs::path dir = c.paths.out_dir;
  const fs::path ckpt_path =
      c.paths.checkpoint.empty() ? dir / "checkpoint.json" : fs::path(c.paths.checkpoint);
  Checkpoint ckpt{r.params, ds.stats, ds.options.dt, c.train, hex64(fnv1a64(manifest_text))};
  save_checkpoint(ckpt_path, ckpt);

  std::string curve = "epoch,train_loss,val_loss\n";
  for (const auto& e : r.curve) {
    curve += std::to_string(e.epoch) + "," + format_double(e.train_loss) + "," +
             format_double(e.val_loss) + "\n";
  }
  write_file(dir / "loss_curve.csv", curve);

  const EpochStats& last = r.curve.back();
  const double val_err = one_step_error(r.params, ds.stats, val_w, ds.options.dt);
  out << "epochs " << last.epoch << ", best epoch " << r.best_epoch << "\n";
  out << "final train loss " << format_double(last.train_loss) << ", val loss "
      << format_double(last.val_loss) << "\n";
  out << "validation mean haversine error (one step) " << fmt(val_err, 2) << " m\n";
  out << "checkpoint " << ckpt_path.string() << "\n";
  write_run_manifest(c, "train", {{"checkpoint", ckpt_path.string()},
                                  {"dataset_hash", ckpt.dataset_hash},
                                  {"best_epoch", r.best_epoch},
                                  {"validation_error_m", val_err}});
  return kExitOk;
}

int cmd_eval(const RunConfig& c, const std::string& split_name_arg, bool points,
             std::ostream& out) {
  const Split split = parse_split(split_name_arg);
  require_file(c.paths.checkpoint, "checkpoint");
  const Dataset ds = load_manifest(c);
  const Checkpoint ckpt = load_checkpoint(c.paths.checkpoint);
  if (norm_stats_hash(ckpt.stats) != norm_stats_hash(ds.stats)) {
    throw ValidationError("eval: normalization statistics of the checkpoint do not match the "
                          "dataset manifest");
  }
  if (std::abs(ckpt.dt - ds.options.dt) > 1e-12) {
    throw ValidationError("eval: checkpoint dt differs from the dataset dt");
  }
  const LstmPredictor model(ckpt.params, ckpt.stats);
  const LinearPredictor baseline;
  const auto& segs = ds.split_segments(split);
  const std::size_t steps = c.scenario.horizon_steps();
  const HorizonReport rep = evaluate_horizon(model, baseline, segs, steps, ds.options.dt);

  std::map<std::size_t, std::pair<double, std::size_t>> per_seg;
  for (const auto& s : rep.samples) {
    auto& acc = per_seg[s.segment];
    acc.first += s.model_error_m;
    ++acc.second;
  }
  json per = json::array();
  for (const auto& [seg, acc] : per_seg) {
    per.push_back({{"segment", seg},
                   {"samples", acc.second},
                   {"mean_error_m", acc.first / static_cast<double>(acc.second)}});
  }
  const json report = {{"split", std::string(split_name(split))},
                       {"horizon_s", static_cast<double>(steps) * ds.options.dt},
                       {"trajectories", rep.trajectories},
                       {"samples", rep.samples.size()},
                       {"model_mean_m", rep.model_mean_m},
                       {"baseline_mean_m", rep.baseline_mean_m},
                       {"curved_samples", rep.curved},
                       {"model_curved_mean_m", rep.model_curved_mean_m},
                       {"baseline_curved_mean_m", rep.baseline_curved_mean_m},
                       {"per_trajectory", per}};
  const fs::path dir = c.paths.out_dir;
  write_file(dir / ("eval_" + std::string(split_name(split)) + ".json"), report.dump(2) + "\n");
  if (points) {
    std::string csv = "segment,index,model_error_m,baseline_error_m,curved\n";
    for (const auto& s : rep.samples) {
      csv += std::to_string(s.segment) + "," + std::to_string(s.index) + "," +
             format_double(s.model_error_m) + "," + format_double(s.baseline_error_m) + "," +
             (s.curved ? "1" : "0") + "\n";
    }
    write_file(dir / ("eval_" + std::string(split_name(split)) + "_points.csv"), csv);
  }
  out << "split " << split_name(split) << ": " << rep.trajectories << " trajectories, "
      << rep.samples.size() << " windows, horizon " << fmt(report["horizon_s"].get<double>(), 0)
      << " s\n";
  out << "mean haversine error: lstm " << fmt(rep.model_mean_m, 2) << " m, linear "
      << fmt(rep.baseline_mean_m, 2) << " m\n";
  out << "curved windows " << rep.curved << ": lstm " << fmt(rep.model_curved_mean_m, 2)
      << " m, linear " << fmt(rep.baseline_curved_mean_m, 2) << " m\n";
  write_run_manifest(c, "eval", {{"split", std::string(split_name(split))},
                                 {"checkpoint", c.paths.checkpoint}});
  return kExitOk;
}

// Trajectory files for the scenario: explicit list, else the PLT files of the
// data directory ordered test split first (when a manifest is available),
// keeping those long enough to replay every frame.
std::vector<std::pair<std::string, Trajectory>> pick_trajectories(const RunConfig& c) {
  const ScenarioConfig& s = c.scenario;
  const std::size_t users = 1 + s.interferers;
  std::vector<std::string> candidates;
  bool explicit_list = !c.paths.trajectories.empty();
  if (explicit_list) {
    candidates = c.paths.trajectories;
  } else {
    std::string dir = c.paths.data_dir;
    std::vector<std::string> ordered;
    if (!c.paths.manifest.empty()) {
      require_file(c.paths.manifest, "manifest");
      const json m = json::parse(read_file(c.paths.manifest));
      if (dir.empty()) dir = m.at("data_dir").get<std::string>();
      for (const char* want : {"test", "validation", "train"}) {
        for (const auto& f : m.at("files")) {
          if (f.at("split").get<std::string>() == want) {
            ordered.push_back(f.at("name").get<std::string>());
          }
        }
      }
    }
    require_dir(dir, "data directory");
    if (ordered.empty()) ordered = list_plt_files(dir);
    for (const auto& name : ordered) candidates.push_back((fs::path(dir) / name).string());
  }
  const std::size_t replay = kWindowLength + s.horizon_steps() + s.frames - 1;
  std::vector<std::pair<std::string, Trajectory>> picked;
  for (const auto& path : candidates) {
    if (picked.size() == users) break;
    if (explicit_list) require_file(path, "trajectory");
    PltParseResult parsed;
    try {
      parsed = parse_plt(read_file(path));
    } catch (const std::exception& e) {
      if (explicit_list) throw ValidationError("trajectory " + path + ": " + e.what());
      continue;
    }
    std::size_t longest = 0;
    try {
      for (const auto& seg : resample(parsed.trajectory, s.dt)) {
        longest = std::max(longest, seg.points.size());
      }
    } catch (const std::invalid_argument&) {
    }
    if (!explicit_list && longest < replay) continue;
    picked.emplace_back(path, std::move(parsed.trajectory));
  }
  if (picked.size() < users) {
    throw ValidationError("scenario needs " + std::to_string(users) +
                          " trajectories covering " + std::to_string(replay) +
                          " samples, found " + std::to_string(picked.size()));
  }
  return picked;
}

std::unique_ptr<TrajectoryPredictor> make_predictor(const RunConfig& c, std::string* hash) {
  if (c.sweep.predictor == "linear") return std::make_unique<LinearPredictor>();
  require_file(c.paths.checkpoint, "checkpoint");
  const std::string text = read_file(c.paths.checkpoint);
  if (hash) *hash = hex64(fnv1a64(text));
  Checkpoint ckpt = parse_checkpoint(text);
  if (std::abs(ckpt.dt - c.scenario.dt) > 1e-12) {
    throw ValidationError("checkpoint dt differs from scenario.dt");
  }
  return std::make_unique<LstmPredictor>(std::move(ckpt.params), ckpt.stats);
}

std::string summary_table(const SweepResult& r) {
  std::string out = r.kind == SweepKind::kPower ? "p_tx_w" : "elements";
  for (Method m : r.methods) out += "\t" + std::string(method_name(m)) + "_db";
  out += "\n";
  for (double p : r.params) {
    out += format_double(p);
    for (Method m : r.methods) out += "\t" + fmt(r.mean_db(m, p), 3);
    out += "\n";
  }
  return out;
}

int cmd_sweep(const RunConfig& c, const std::string& kind, const std::string& command,
              std::ostream& out, std::ostream& err) {
  // Everything that can be validated is checked before any simulation work.
  std::string ckpt_hash;
  const auto predictor = make_predictor(c, &ckpt_hash);
  const auto picked = pick_trajectories(c);
  std::string dataset_hash;
  if (!c.paths.manifest.empty()) dataset_hash = hex64(fnv1a64(read_file(c.paths.manifest)));

  std::vector<Trajectory> trajs;
  for (const auto& p : picked) trajs.push_back(p.second);
  const Scenario sc = build_scenario(c.scenario, trajs);
  const std::size_t threads = c.effective_threads();

  SweepResult r;
  std::string file;
  if (command == "simulate") {
    const std::vector<double> powers{c.scenario.p_tx};
    r = sweep_power(sc, powers, c.scenario.frames, c.sweep.methods, *predictor, threads);
    file = "simulate.csv";
  } else if (kind == "power") {
    r = sweep_power(sc, c.sweep.powers, c.scenario.frames, c.sweep.methods, *predictor, threads);
    file = "sweep_power.csv";
  } else {
    r = sweep_elements(sc, c.sweep.elements, c.scenario.frames, c.sweep.methods, *predictor,
                       threads);
    file = "sweep_elements.csv";
  }
  const fs::path csv_path = fs::path(c.paths.out_dir) / file;
  write_file(csv_path, sweep_csv(r));
  for (const auto& s : r.skipped) err << "skipped " << s << "\n";

  out << summary_table(r);
  out << "evaluated frames " << (r.summary.empty() ? 0 : r.summary.front().frames) << " of "
      << c.scenario.frames << "\n";
  out << "csv " << csv_path.string() << "\n";

  json users = json::array();
  for (std::size_t u = 0; u < sc.users.size(); ++u) {
    users.push_back({{"file", picked[u].first},
                     {"role", u == 0 ? "desired" : "interferer"},
                     {"scale", sc.users[u].scale},
                     {"offset_m", {sc.users[u].offset.x, sc.users[u].offset.y}}});
  }
  json summary = json::array();
  for (const auto& s : r.summary) {
    summary.push_back({{"method", std::string(method_name(s.method))},
                       {"param", s.param},
                       {"mean_gamma_db", s.mean_gamma_db},
                       {"frames", s.frames}});
  }
  write_run_manifest(c, command,
                     {{"csv", csv_path.string()},
                      {"kind", command == "simulate" ? "power" : kind},
                      {"predictor", predictor->name()},
                      {"checkpoint_hash", ckpt_hash},
                      {"dataset_hash", dataset_hash},
                      {"users", users},
                      {"skipped", r.skipped},
                      {"summary", summary}});
  return kExitOk;
}

int cmd_verify(const RunConfig& c, bool inject_fault, std::ostream& out) {
  VerifyOptions opt;
  opt.seed = c.scenario.seed;
  opt.inject_backward_fault = inject_fault;
  const VerifyReport rep = run_verification(opt);
  out << rep.table();
  json checks = json::array();
  for (const auto& ch : rep.checks) {
    checks.push_back({{"name", ch.name},
                      {"pass", ch.pass},
                      {"measured", ch.measured},
                      {"tolerance", ch.tolerance}});
  }
  write_run_manifest(c, "verify", {{"checks", checks}, {"inject_backward_fault", inject_fault}});
  if (!rep.all_passed()) throw VerificationFailure("verification failed");
  out << "all checks passed\n";
  return kExitOk;
}

int cmd_synth(const RunConfig& c, std::size_t count, std::uint64_t seed, std::ostream& out) {
  if (count < 1) throw ValidationError("synth: --count must be >= 1");
  const auto paths = write_synthetic_corpus(c.paths.out_dir, count, seed);
  out << "wrote " << paths.size() << " files to " << c.paths.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-RIS uplink simulator with trajectory-prediction-based ON-OFF control",
               "ristpc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RISTPC_VERSION);

  CommonFlags flags;
  std::string data_dir, manifest, checkpoint, split = "test", kind;
  bool points = false, inject_fault = false;
  std::size_t count = 71;

  auto* prepare = app.add_subcommand("prepare", "Parse, resample and split a PLT corpus");
  prepare->add_option("--data", data_dir, "Directory of PLT files");
  prepare->add_option("--manifest", manifest, "Output manifest path");
  auto* train_cmd = app.add_subcommand("train", "Train the LSTM predictor");
  train_cmd->add_option("--manifest", manifest, "Dataset manifest");
  train_cmd->add_option("--checkpoint", checkpoint, "Output checkpoint path");
  auto* eval = app.add_subcommand("eval", "Prediction error at the control horizon");
  eval->add_option("--manifest", manifest, "Dataset manifest");
  eval->add_option("--checkpoint", checkpoint, "Checkpoint to evaluate");
  eval->add_option("--split", split, "train, validation or test");
  eval->add_flag("--points", points, "Also write per-window errors as CSV");
  auto* simulate = app.add_subcommand("simulate", "Run the frame loop at one operating point");
  auto* sweep = app.add_subcommand("sweep", "Sweep transmit power or RIS element count");
  sweep->add_option("--kind", kind, "power or elements");
  for (auto* cmd : {simulate, sweep}) {
    cmd->add_option("--data", data_dir, "Directory of PLT files");
    cmd->add_option("--manifest", manifest, "Dataset manifest");
    cmd->add_option("--checkpoint", checkpoint, "LSTM checkpoint");
  }
  auto* verify = app.add_subcommand("verify", "Small-instance oracle checks");
  verify->add_flag("--inject-backward-fault", inject_fault,
                   "Negative control: corrupt one analytic gradient group");
  auto* synth = app.add_subcommand("synth", "Write a synthetic PLT corpus");
  synth->add_option("--count", count, "Number of files");
  for (auto* cmd : {prepare, train_cmd, eval, simulate, sweep, verify, synth}) {
    add_common(cmd, flags);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    RunConfig c = resolve_config(flags);
    if (!data_dir.empty()) c.paths.data_dir = data_dir;
    if (!manifest.empty()) c.paths.manifest = manifest;
    if (!checkpoint.empty()) c.paths.checkpoint = checkpoint;
    if (!kind.empty()) c.sweep.kind = kind;
    c.validate();
    fs::create_directories(c.paths.out_dir);

    if (prepare->parsed()) return cmd_prepare(c, out, err);
    if (train_cmd->parsed()) return cmd_train(c, out);
    if (eval->parsed()) return cmd_eval(c, split, points, out);
    if (simulate->parsed()) return cmd_sweep(c, "power", "simulate", out, err);
    if (sweep->parsed()) return cmd_sweep(c, c.sweep.kind, "sweep", out, err);
    if (verify->parsed()) return cmd_verify(c, inject_fault, out);
    if (synth->parsed()) {
      return cmd_synth(c, count, flags.seed.value_or(1), out);
    }
  } catch (const VerificationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace ristpc
