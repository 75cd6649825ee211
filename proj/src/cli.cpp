#include "dynabench/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "dynabench/io.hpp"
#include "dynabench/qasm.hpp"
#include "dynabench/schedule.hpp"
#include "dynabench/scoring.hpp"

namespace dynabench {

namespace {

namespace fs = std::filesystem;

struct MissingStage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct StageContext {
  RunManifest manifest;
  fs::path out;
  NoiseModel noise;
  std::string noise_name;
};

std::string stem_for(Family family, int size, uint64_t seed) {
  return lower(family_name(family)) + "_n" + std::to_string(size) + "_s" +
         std::to_string(seed);
}

std::vector<fs::path> sorted_files(const fs::path& dir, const std::string& suffix) {
  if (!fs::exists(dir)) throw MissingStage("missing stage output: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().string().ends_with(suffix)) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw MissingStage("no stage files under " + dir.string());
  return files;
}

int cmd_generate(const StageContext& ctx) {
  for (const auto& [family, sizes] : ctx.manifest.suite) {
    std::map<std::string, double> params;
    if (auto it = ctx.manifest.params.find(family); it != ctx.manifest.params.end())
      params = it->second;
    for (int size : sizes) {
      for (int inst = 0; inst < ctx.manifest.instances; ++inst) {
        uint64_t seed = ctx.manifest.seed + static_cast<uint64_t>(inst);
        if (auto warn = size_advisory(family, size)) std::cerr << "warning: " << *warn << "\n";
        auto bench = generate_benchmark(family, size, params, seed);
        auto path = ctx.out / "circuits" / (stem_for(family, size, seed) + ".json");
        write_text_atomic(path, benchmark_to_json(bench, seed).dump(2) + "\n");
      }
    }
  }
  std::cout << "generated circuits under " << (ctx.out / "circuits").string() << "\n";
  return 0;
}

// Simulation seed per circuit: instance seed mixed with the file stem, so
// distinct circuits never share per-shot noise draws.
uint64_t sim_seed(uint64_t instance_seed, const std::string& stem) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : stem) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return mix_seed(instance_seed, h);
}

int cmd_run(const StageContext& ctx) {
  auto files = sorted_files(ctx.out / "circuits", ".json");
  for (const auto& file : files) {
    uint64_t seed = 0;
    auto bench = benchmark_from_json(json::parse(read_text(file)), &seed);
    auto result = run(bench.circuit, ctx.manifest.shots, ctx.noise,
                      sim_seed(seed, file.stem().string()), bench.readout_clbits);
    auto path = ctx.out / "counts" / (file.stem().string() + ".counts.json");
    write_text_atomic(path, counts_to_json(result).dump(2) + "\n");
  }
  std::cout << "simulated " << files.size() << " circuits (noise: " << ctx.noise_name
            << ", shots: " << ctx.manifest.shots << ")\n";
  return 0;
}

BranchModel instantiate_branch_model(const BranchModel& bm, const NoiseModel& noise) {
  if (bm.kind != BranchModel::Kind::QecNoise) return bm;
  BranchModel out = bm;
  out.p = noise.p2;
  out.m = noise.pm;
  out.s = noise.pidle;
  return out;
}

int cmd_featurize(const StageContext& ctx) {
  auto files = sorted_files(ctx.out / "circuits", ".json");
  std::vector<FeatureRow> rows;
  for (const auto& file : files) {
    uint64_t seed = 0;
    auto bench = benchmark_from_json(json::parse(read_text(file)), &seed);
    BranchModel bm = instantiate_branch_model(bench.branch_model, ctx.noise);
    FeatureRow row;
    row.features = feature_vector(bench.circuit, bm);
    row.benchmark = file.stem().string();
    row.family = family_name(bench.family);
    row.n = bench.circuit.num_qubits;
    row.n_s = static_cast<int>(bench.circuit.system_qubits.size());
    row.seed = seed;
    rows.push_back(std::move(row));
  }
  write_text_atomic(ctx.out / "features.csv", features_csv(rows));
  std::cout << "featurized " << rows.size() << " circuits -> features.csv\n";
  return 0;
}

int cmd_score(const StageContext& ctx) {
  auto files = sorted_files(ctx.out / "circuits", ".json");
  std::vector<ScoreRow> rows;
  for (const auto& file : files) {
    uint64_t seed = 0;
    auto bench = benchmark_from_json(json::parse(read_text(file)), &seed);
    auto counts_path = ctx.out / "counts" / (file.stem().string() + ".counts.json");
    if (!fs::exists(counts_path))
      throw MissingStage("missing counts for " + file.stem().string());
    auto result = counts_from_json(json::parse(read_text(counts_path)));
    auto score = score_benchmark(bench, result, ctx.noise,
                                 sim_seed(seed, file.stem().string()));
    rows.push_back({file.stem().string(), family_name(bench.family),
                    bench.circuit.num_qubits, seed, ctx.noise_name, score.score});
  }
  write_text_atomic(ctx.out / "scores.csv", scores_csv(rows));
  std::cout << "scored " << rows.size() << " circuits -> scores.csv\n";
  return 0;
}

Dataset load_dataset(const StageContext& ctx) {
  auto features_path = ctx.out / "features.csv";
  auto scores_path = ctx.out / "scores.csv";
  if (!fs::exists(features_path)) throw MissingStage("features.csv not found; run featurize");
  if (!fs::exists(scores_path)) throw MissingStage("scores.csv not found; run score");
  auto features = parse_features_csv(read_text(features_path));
  auto scores = parse_scores_csv(read_text(scores_path));
  std::string backend = scores.empty() ? ctx.noise_name : scores[0].noise;
  return join_dataset(features, scores, backend);
}

struct SplitStats {
  int n = 0;
  double mean = 0, sd = 0;
};

SplitStats split_r2_stats(const Dataset& d, double lambda, uint64_t seed, int n_splits) {
  std::vector<double> r2s;
  for (int i = 0; i < n_splits; ++i) {
    try {
      auto [train, test] = split(d, 0.8, seed + static_cast<uint64_t>(i));
      auto fit = ridge_fit(train, lambda);
      r2s.push_back(r2_score(predict(fit, test), test.y));
    } catch (const std::invalid_argument&) {
      // degenerate split (e.g. constant test targets); skip it
    }
  }
  SplitStats stats;
  stats.n = static_cast<int>(r2s.size());
  if (r2s.empty()) return stats;
  for (double v : r2s) stats.mean += v;
  stats.mean /= r2s.size();
  for (double v : r2s) stats.sd += (v - stats.mean) * (v - stats.mean);
  stats.sd = std::sqrt(stats.sd / r2s.size());
  return stats;
}

int cmd_fit(const StageContext& ctx) {
  Dataset d = load_dataset(ctx);
  FitResult fit = ridge_fit_cv(d, ctx.manifest.seed);
  write_text_atomic(ctx.out / "model.json", fit_to_json(fit).dump(2) + "\n");
  std::cout << "fit " << d.rows() << " rows: lambda " << fit.lambda << ", train R2 "
            << format_double(fit.train_r2) << "\n";
  if (d.rows() >= 10) {
    auto stats = split_r2_stats(d, fit.lambda, ctx.manifest.seed, 50);
    std::cout << "80/20 splits (" << stats.n << "): R2 " << format_double(stats.mean)
              << " +/- " << format_double(stats.sd) << "\n";
  }
  return 0;
}

int cmd_report(const StageContext& ctx, const std::string& transfer_dir) {
  Dataset d = load_dataset(ctx);
  FitResult fit = ridge_fit_cv(d, ctx.manifest.seed);

  json report;
  report["full_fit"] = {{"r2", fit.train_r2}, {"lambda", fit.lambda}, {"rows", d.rows()}};

  if (d.rows() >= 10) {
    auto stats = split_r2_stats(d, fit.lambda, ctx.manifest.seed, 50);
    report["splits"] = {{"n", stats.n}, {"ratio", 0.8}, {"mean_r2", stats.mean},
                        {"sd_r2", stats.sd}};
  }

  json holdout;
  std::set<std::string> families;
  for (const auto& meta : d.meta) families.insert(meta.family);
  for (const auto& family : families) {
    try {
      auto [train, test] = holdout_family(d, family);
      auto hf = ridge_fit(train, fit.lambda);
      holdout[family] = r2_score(predict(hf, test), test.y);
    } catch (const std::invalid_argument&) {
      holdout[family] = nullptr;  // not enough structure to evaluate
    }
  }
  report["holdout"] = holdout;

  auto [sv, dominant] = pca_screen(d);
  report["pca"] = {{"singular_values", std::vector<double>(sv.data(), sv.data() + sv.size())},
                   {"dominant", dominant},
                   {"cutoff_ratio", 1.0 / 50.0}};

  if (!transfer_dir.empty()) {
    StageContext other = ctx;
    other.out = transfer_dir;
    Dataset od = load_dataset(other);
    FitResult ofit = ridge_fit_cv(od, ctx.manifest.seed);
    report["transfer"] = {{"here_to_other", transfer_evaluate(fit, od)},
                          {"other_to_here", transfer_evaluate(ofit, d)}};
  }

  json fid_series;
  for (const auto& family : families) {
    json points = json::array();
    for (long i = 0; i < d.rows(); ++i) {
      if (d.meta[i].family == family) points.push_back({d.meta[i].n, d.y(i)});
    }
    fid_series[family] = points;
  }
  Eigen::VectorXd yhat = predict(fit, d);
  json pva = json::array();
  for (long i = 0; i < d.rows(); ++i) {
    pva.push_back({std::clamp(yhat(i), 0.0, 1.0), d.y(i)});
  }
  report["series"] = {{"fidelity_vs_qubits", fid_series},
                      {"predicted_vs_actual", pva},
                      {"singular_values",
                       std::vector<double>(sv.data(), sv.data() + sv.size())}};

  write_text_atomic(ctx.out / "report.json", report.dump(2) + "\n");
  std::cout << "report.json written (full-fit R2 " << format_double(fit.train_r2) << ")\n";
  return 0;
}

int cmd_export_qasm(const StageContext& ctx) {
  auto files = sorted_files(ctx.out / "circuits", ".json");
  for (const auto& file : files) {
    auto bench = benchmark_from_json(json::parse(read_text(file)));
    auto path = ctx.out / "qasm" / (file.stem().string() + ".qasm");
    write_text_atomic(path, to_qasm(bench.circuit));
  }
  std::cout << "exported " << files.size() << " circuits to OpenQASM\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"dynamic-circuit benchmarking pipeline"};
  app.require_subcommand(1);

  std::string manifest_path, out_override, noise_override, transfer_dir;
  long shots_override = -1;
  int64_t seed_override = -1;

  auto add_common = [&](CLI::App* sub, bool with_noise) {
    sub->add_option("--manifest", manifest_path, "pipeline manifest (json)")->required();
    sub->add_option("--out", out_override, "output directory (overrides manifest)");
    sub->add_option("--seed", seed_override, "global seed override");
    if (with_noise) {
      sub->add_option("--noise", noise_override, "noise preset override");
      sub->add_option("--shots", shots_override, "shots override");
    }
  };

  auto* generate = app.add_subcommand("generate", "emit benchmark circuit files");
  auto* runcmd = app.add_subcommand("run", "simulate generated circuits");
  auto* featurize = app.add_subcommand("featurize", "compute the 24 circuit features");
  auto* score = app.add_subcommand("score", "compute fidelity scores");
  auto* fit = app.add_subcommand("fit", "fit the ridge regression model");
  auto* report = app.add_subcommand("report", "assemble the analysis report");
  auto* exportq = app.add_subcommand("export-qasm", "export circuits as OpenQASM 3");
  add_common(generate, false);
  add_common(runcmd, true);
  add_common(featurize, true);
  add_common(score, true);
  add_common(fit, false);
  add_common(report, false);
  add_common(exportq, false);
  report->add_option("--transfer", transfer_dir, "second run directory for transfer R2");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    StageContext ctx;
    ctx.manifest = load_manifest(manifest_path);
    if (seed_override >= 0) ctx.manifest.seed = static_cast<uint64_t>(seed_override);
    if (shots_override > 0) ctx.manifest.shots = shots_override;
    ctx.noise_name = noise_override.empty() ? ctx.manifest.noise : noise_override;
    ctx.noise = ctx.manifest.resolve_noise(ctx.noise_name);
    ctx.out = out_override.empty() ? ctx.manifest.out : out_override;

    if (generate->parsed()) return cmd_generate(ctx);
    if (runcmd->parsed()) return cmd_run(ctx);
    if (featurize->parsed()) return cmd_featurize(ctx);
    if (score->parsed()) return cmd_score(ctx);
    if (fit->parsed()) return cmd_fit(ctx);
    if (report->parsed()) return cmd_report(ctx, transfer_dir);
    if (exportq->parsed()) return cmd_export_qasm(ctx);
    return 2;
  } catch (const MissingStage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dynabench
