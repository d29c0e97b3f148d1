// Command-line front end: dataset preparation, single training runs, bound
// tables, perturb-one-sample stability estimates, and the experiment sweeps.
//
// Exit codes: 0 success, 2 usage/parse error, 3 configuration error,
// 4 numeric/training failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rffsvm/bounds.hpp"
#include "rffsvm/dataset.hpp"
#include "rffsvm/errors.hpp"
#include "rffsvm/loss.hpp"
#include "rffsvm/random.hpp"
#include "rffsvm/rff.hpp"
#include "rffsvm/sgm.hpp"
#include "rffsvm/stability.hpp"

namespace {

using namespace rffsvm;

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumeric = 4;

// Resolve a dataset path against RFFSVM_DATA_DIR when the path as given
// does not exist.
std::string resolve_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv("RFFSVM_DATA_DIR")) {
    const auto joined = fs::path(dir) / path;
    if (fs::exists(joined)) return joined.string();
  }
  return path;
}

Dataset load_any(const std::string& raw_path, const std::string& format,
                 int label_column) {
  const std::string path = resolve_path(raw_path);
  std::string fmt = format;
  if (fmt == "auto") {
    fmt = path.ends_with(".csv") ? "csv" : "libsvm";
  }
  if (fmt == "csv") return load_csv(path, label_column);
  return load_libsvm(path);
}

// Grid syntax: "a,b,c" | "start:stop:step" | "start:stop:log10".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  if (text.find(',') != std::string::npos || text.find(':') == std::string::npos) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) values.push_back(std::stod(tok));
    return values;
  }
  std::stringstream ss(text);
  std::string a, b, c;
  std::getline(ss, a, ':');
  std::getline(ss, b, ':');
  std::getline(ss, c, ':');
  const double lo = std::stod(a);
  const double hi = std::stod(b);
  if (c == "log10") {
    for (double v = lo; v <= hi * (1.0 + 1e-12); v *= 10.0) values.push_back(v);
    return values;
  }
  const double step = std::stod(c);
  if (!(step > 0)) throw ConfigError("grid step must be positive");
  for (double v = lo; v <= hi + 1e-12 * step; v += step) values.push_back(v);
  return values;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find('-') != std::string::npos) {  // inclusive range a-b
      const auto dash = tok.find('-');
      const auto lo = std::stoull(tok.substr(0, dash));
      const auto hi = std::stoull(tok.substr(dash + 1));
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(std::stoull(tok));
    }
  }
  if (seeds.empty()) throw ConfigError("empty seed list");
  return seeds;
}

struct CommonOpts {
  std::string data;
  std::string format = "auto";
  int label_column = -1;
  std::string gamma = "median";
  Eigen::Index D = 200;
  int epochs = 1;
  double eta = 0.01;
  std::string schedule = "constant";
  double B = 1.0;
  double epsilon = 0.0;
  double lambda = 0.0;
  double test_fraction = 0.2;
  std::string seeds = "0";
  std::string out = "";
  int jobs = 1;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_data = true) {
  auto* opt = cmd->add_option("--data", o.data, "dataset path (libsvm or csv)");
  if (needs_data) opt->required();
  cmd->add_option("--format", o.format, "libsvm|csv|auto")->default_val("auto");
  cmd->add_option("--label-col", o.label_column,
                  "csv label column (negative counts from the end)");
  cmd->add_option("--gamma", o.gamma, "RBF gamma, or 'median'");
  cmd->add_option("--D", o.D, "Fourier component count");
  cmd->add_option("--epochs", o.epochs, "complete passes over the train set");
  cmd->add_option("--eta", o.eta, "constant learning rate");
  cmd->add_option("--schedule", o.schedule,
                  "constant|lemma2|theorem1 (theory schedules need --B)");
  cmd->add_option("--B", o.B, "||f*||_1 proxy for theory schedules");
  cmd->add_option("--eps", o.epsilon, "kernel approximation tolerance");
  cmd->add_option("--lambda", o.lambda, "L2 regularization weight");
  cmd->add_option("--test-frac", o.test_fraction, "test split fraction");
  cmd->add_option("--seeds", o.seeds, "comma list and/or a-b ranges");
  cmd->add_option("--out", o.out, "output path (CSV)");
  cmd->add_option("--jobs", o.jobs, "parallel sweep cells");
  cmd->add_flag("--timing", o.timing,
                "emit real wall-clock times (off keeps output bit-reproducible)");
}

SgmConfig to_config(const CommonOpts& o) {
  SgmConfig cfg;
  cfg.eta = o.eta;
  cfg.epochs = o.epochs;
  cfg.lambda = o.lambda;
  cfg.B = o.B;
  cfg.epsilon = o.epsilon;
  if (o.schedule == "constant") {
    cfg.schedule = EtaSchedule::kConstant;
  } else if (o.schedule == "lemma2" || o.schedule == "single-pass") {
    cfg.schedule = EtaSchedule::kSinglePass;
  } else if (o.schedule == "theorem1" || o.schedule == "optimal") {
    cfg.schedule = EtaSchedule::kTheoremOptimal;
  } else {
    throw ConfigError("unknown schedule '" + o.schedule + "'");
  }
  return cfg;
}

double resolve_gamma(const CommonOpts& o, const Eigen::MatrixXd& X,
                     std::uint64_t seed) {
  if (o.gamma == "median") return median_heuristic_gamma(X, seed);
  const double g = std::stod(o.gamma);
  if (!(g > 0)) throw ConfigError("gamma must be positive");
  return g;
}

std::string config_comment(const CommonOpts& o, double gamma_used) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "data=%s gamma=%.17g D=%lld epochs=%d eta=%.17g schedule=%s "
                "B=%g eps=%g lambda=%g test_frac=%g seeds=%s",
                o.data.c_str(), gamma_used, static_cast<long long>(o.D),
                o.epochs, o.eta, o.schedule.c_str(), o.B, o.epsilon, o.lambda,
                o.test_fraction, o.seeds.c_str());
  return buf;
}

void strip_timing(std::vector<SweepRecord>& records, bool timing) {
  if (timing) return;
  for (auto& r : records) r.mean_wall_ms = 0.0;
}

int cmd_train(const CommonOpts& o) {
  const Dataset ds = load_any(o.data, o.format, o.label_column);
  const auto seeds = parse_seeds(o.seeds);
  const auto seed = seeds.front();

  auto [train_raw, test_raw] =
      split(ds, SplitSpec{o.test_fraction, seed, true});
  auto [train_std, st] = standardize(train_raw);
  const Dataset test_std = st.apply(test_raw);
  const double gamma = resolve_gamma(o, train_std.features, seed);
  const FourierFeatureMap map =
      sample_map(ds.d(), o.D, gamma,
                 mix_seed(seed, static_cast<std::uint64_t>(o.D)));

  SgmConfig cfg = to_config(o);
  cfg.seed = mix_seed(seed, 0x56ULL);
  const GapReport rep = measure_gap(train_std, test_std, map, cfg);

  const LossConstants lc;
  const double diam = bounding_box_diameter(train_std.features);
  BoundInputs bi;
  bi.n = static_cast<double>(train_std.n());
  bi.T = static_cast<double>(o.epochs) * bi.n;
  bi.eta = rep.eta;
  bi.L = lc.L;
  bi.epsilon = o.epsilon > 0 ? o.epsilon : 0.1;
  bi.d = static_cast<double>(ds.d());
  bi.D = static_cast<double>(o.D);
  bi.sigma_p = derived_sigma_p(KernelParams{gamma}, ds.d());
  bi.diam = diam;
  bi.B = o.B;

  std::printf("# n=%lld d=%lld n_train=%lld n_test=%lld\n",
              static_cast<long long>(ds.n()), static_cast<long long>(ds.d()),
              static_cast<long long>(train_std.n()),
              static_cast<long long>(test_std.n()));
  std::printf("# gamma=%.17g D=%lld eta=%.17g diam=%.17g sigma_p=%.17g\n",
              gamma, static_cast<long long>(o.D), rep.eta, diam, bi.sigma_p);
  const auto prob = rff_probability(bi);
  const auto th1 = theorem1_bound(bi, 0.0);
  std::printf("# rff_probability=%.17g stability_bound=%.17g "
              "opt_error_bound=%.17g theorem1_excess=%.17g optimal_eta=%.17g\n",
              prob.clamped, stability_bound(bi), opt_error_bound(bi),
              th1.bound, th1.optimal_eta);

  char row[512];
  std::snprintf(row, sizeof(row),
                "%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                static_cast<unsigned long long>(seed), rep.eta, rep.train_loss,
                rep.test_loss, rep.gap_loss, rep.train_zero_one,
                rep.test_zero_one, rep.gap_zero_one);
  std::printf("seed,eta,train_loss,test_loss,gap_loss,train_01,test_01,gap_01\n"
              "%s\n", row);
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) throw ParseError("cannot write " + o.out);
    out << "# " << config_comment(o, gamma) << '\n'
        << "seed,eta,train_loss,test_loss,gap_loss,train_01,test_01,gap_01\n"
        << row << '\n';
    const SgmConfig echo = cfg;
    const std::string map_path = o.out + ".map";
    save_map(map, map_path);
    const SgmModel model = train(train_std, map, echo);
    save_model(model, echo, map_path, o.out + ".model");
  }
  return 0;
}

int cmd_bounds(const BoundInputs& bi, double R_star, double c) {
  std::printf("bound,value\n");
  if (bi.epsilon > 0 && bi.sigma_p > 0 && bi.diam > 0 && bi.d > 0) {
    std::printf("rff_probability,%.17g\n", rff_probability(bi).clamped);
    std::printf("rff_probability_raw,%.17g\n", rff_probability(bi).raw);
    std::printf("required_D,%lld\n", required_D(bi, c));
  }
  if (bi.w_star_norm_sq > 0 && bi.eta > 0) {
    std::printf("lemma1_bound,%.17g\n", lemma1_bound(bi, R_star));
  }
  if (bi.eta > 0) {
    std::printf("opt_error_bound,%.17g\n", opt_error_bound(bi));
    std::printf("stability_bound,%.17g\n", stability_bound(bi));
  }
  std::printf("lemma2_bound,%.17g\n", lemma2_bound(bi, R_star));
  const auto th1 = theorem1_bound(bi, R_star);
  std::printf("theorem1_bound,%.17g\n", th1.bound);
  std::printf("optimal_eta,%.17g\n", th1.optimal_eta);
  return 0;
}

int cmd_sweep(const std::string& kind, const CommonOpts& o,
              const std::string& grid_text, const std::string& sizes_text) {
  const Dataset ds = load_any(o.data, o.format, o.label_column);
  const auto seeds = parse_seeds(o.seeds);
  SweepSetup setup;
  setup.gamma = o.gamma == "median" ? 0.0 : std::stod(o.gamma);
  setup.D = o.D;
  setup.test_fraction = o.test_fraction;
  setup.jobs = o.jobs;
  const SgmConfig cfg = to_config(o);

  std::vector<SweepRecord> records;
  if (kind == "fourier") {
    std::vector<Eigen::Index> Ds;
    for (double v : parse_grid(grid_text)) {
      Ds.push_back(static_cast<Eigen::Index>(std::llround(v)));
    }
    records = sweep_fourier(ds, Ds, setup, cfg, seeds);
  } else if (kind == "epochs") {
    std::vector<int> epochs;
    for (double v : parse_grid(grid_text)) {
      epochs.push_back(static_cast<int>(std::llround(v)));
    }
    std::vector<double> sizes = sizes_text.empty()
                                    ? std::vector<double>{1.0}
                                    : parse_grid(sizes_text);
    records = sweep_epochs_and_size(ds, epochs, sizes, setup, cfg, seeds);
  } else if (kind == "lr") {
    auto etas = parse_grid(grid_text);
    std::sort(etas.begin(), etas.end());
    records = sweep_learning_rate(ds, etas, setup, cfg, seeds);
  } else {
    throw ConfigError("unknown sweep kind '" + kind + "'");
  }

  int ok = 0;
  for (const auto& r : records) {
    if (r.diverged < r.seed_count) ++ok;
  }
  strip_timing(records, o.timing);
  const std::string comment = config_comment(o, setup.gamma);
  if (!o.out.empty()) {
    write_sweep_csv(o.out, records, comment);
  } else {
    std::printf("# %s\n%s\n", comment.c_str(), sweep_csv_header().c_str());
    for (const auto& r : records) std::printf("%s\n", sweep_record_csv(r).c_str());
  }
  return ok >= 1 ? 0 : kExitNumeric;
}

int cmd_featurize(const CommonOpts& o) {
  const Dataset ds = load_any(o.data, o.format, o.label_column);
  const auto seed = parse_seeds(o.seeds).front();
  auto [std_ds, st] = standardize(ds);
  const double gamma = resolve_gamma(o, std_ds.features, seed);
  const FourierFeatureMap map =
      sample_map(ds.d(), o.D, gamma,
                 mix_seed(seed, static_cast<std::uint64_t>(o.D)));
  const Eigen::MatrixXd Z = transform_all(map, std_ds.features);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw ParseError("cannot write " + o.out);
    out = &file;
  }
  out->precision(17);
  *out << "# " << config_comment(o, gamma) << '\n';
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    *out << (std_ds.labels[i] > 0 ? 1 : -1);
    for (Eigen::Index j = 0; j < Z.cols(); ++j) *out << ',' << Z(i, j);
    *out << '\n';
  }
  return 0;
}

int cmd_stability(const CommonOpts& o, int n_probe) {
  const Dataset ds = load_any(o.data, o.format, o.label_column);
  const auto seeds = parse_seeds(o.seeds);
  const auto seed = seeds.front();

  auto [train_raw, pool_raw] =
      split(ds, SplitSpec{o.test_fraction, seed, true});
  auto [train_std, st] = standardize(train_raw);
  const Dataset pool_std = st.apply(pool_raw);
  if (pool_std.n() < 2) throw DomainError("stability: held-out pool too small");
  const double gamma = resolve_gamma(o, train_std.features, seed);
  const FourierFeatureMap map =
      sample_map(ds.d(), o.D, gamma,
                 mix_seed(seed, static_cast<std::uint64_t>(o.D)));

  // replacement sample and probe set come from the held-out pool
  const auto pair =
      perturb_one(train_std, 0, pool_std.features.row(0), pool_std.labels[0]);
  Dataset probe;
  probe.name = "probe";
  const Eigen::Index np =
      std::min<Eigen::Index>(n_probe, pool_std.n() - 1);
  probe.features = pool_std.features.bottomRows(np);
  probe.labels = pool_std.labels.tail(np);

  SgmConfig cfg = to_config(o);
  const double measured = empirical_stability(pair, probe, map, cfg, seeds);

  BoundInputs bi;
  bi.n = static_cast<double>(train_std.n());
  bi.T = static_cast<double>(o.epochs) * bi.n;
  bi.eta = resolve_eta(cfg, train_std.n(), LossConstants{}.L, o.epsilon);
  bi.L = LossConstants{}.L;
  std::printf("measured_stability,theory_bound,eta,T,n,seeds\n");
  std::printf("%.17g,%.17g,%.17g,%g,%g,%zu\n", measured, stability_bound(bi),
              bi.eta, bi.T, bi.n, seeds.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random Fourier feature SVM trainer and stability toolkit"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOpts train_o, sweep_o, feat_o, stab_o;
  BoundInputs bi;
  double R_star = 0.0, omega_c = 4.0;
  std::string sweep_kind, sweep_grid, sweep_sizes;
  int n_probe = 100;

  auto* train_cmd = app.add_subcommand("train", "train once and report the gap");
  add_common(train_cmd, train_o);

  auto* bounds_cmd =
      app.add_subcommand("bounds", "print the closed-form bound table");
  bounds_cmd->add_option("--n", bi.n, "sample count")->required();
  bounds_cmd->add_option("--T", bi.T, "total SGM steps")->required();
  bounds_cmd->add_option("--L", bi.L, "Lipschitz constant")->required();
  bounds_cmd->add_option("--B", bi.B, "||f*||_1 proxy")->required();
  bounds_cmd->add_option("--eps", bi.epsilon, "approximation tolerance")
      ->required();
  bounds_cmd->add_option("--eta", bi.eta, "step size");
  bounds_cmd->add_option("--d", bi.d, "input dimension")->default_val(8.0);
  bounds_cmd->add_option("--D", bi.D, "Fourier components")->default_val(200.0);
  bounds_cmd->add_option("--sigma-p", bi.sigma_p, "spectral second-moment root")
      ->default_val(1.0);
  bounds_cmd->add_option("--diam", bi.diam, "data diameter")->default_val(1.0);
  bounds_cmd->add_option("--w-star-sq", bi.w_star_norm_sq, "||w*||^2");
  bounds_cmd->add_option("--R-star", R_star, "risk at the minimizer");
  bounds_cmd->add_option("--c", omega_c, "Omega constant in required_D");

  auto* sweep_cmd = app.add_subcommand("sweep", "run an experiment sweep");
  sweep_cmd->add_option("kind", sweep_kind, "fourier|epochs|lr")->required();
  sweep_cmd->add_option("--grid", sweep_grid, "grid spec")->required();
  sweep_cmd->add_option("--sizes", sweep_sizes,
                        "training-set fractions (epochs sweep)");
  add_common(sweep_cmd, sweep_o);

  auto* feat_cmd =
      app.add_subcommand("featurize", "dump the z-transformed dataset");
  add_common(feat_cmd, feat_o);

  auto* stab_cmd = app.add_subcommand(
      "stability", "perturb-one-sample empirical stability estimate");
  add_common(stab_cmd, stab_o);
  stab_cmd->add_option("--probe", n_probe, "probe point count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (train_cmd->parsed()) return cmd_train(train_o);
    if (bounds_cmd->parsed()) {
      if (bi.D <= 0) throw ConfigError("--D must be positive");
      return cmd_bounds(bi, R_star, omega_c);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_kind, sweep_o, sweep_grid, sweep_sizes);
    }
    if (feat_cmd->parsed()) return cmd_featurize(feat_o);
    if (stab_cmd->parsed()) return cmd_stability(stab_o, n_probe);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const TrainingError& e) {
    std::fprintf(stderr, "training error: %s\n", e.what());
    return kExitNumeric;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitUsage;
}
