#include "rffsvm/stability.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>

#include "rffsvm/errors.hpp"
#include "rffsvm/loss.hpp"
#include "rffsvm/random.hpp"

namespace rffsvm {

namespace {

constexpr std::uint64_t kSubsampleSalt = 0x5ab5a17ULL;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

struct CellOutcome {
  GapReport report;
  double wall_ms = 0;
  bool diverged = false;
};

Dataset prefix_subsample(const Dataset& ds, double fraction,
                         std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(ds.n());
  auto keep = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n)));
  if (keep < 2) keep = 2;
  Rng rng(mix_seed(seed, kSubsampleSalt));
  const auto order = rng.permutation(n);
  Dataset out;
  out.name = ds.name;
  out.features.resize(static_cast<Eigen::Index>(keep), ds.d());
  out.labels.resize(static_cast<Eigen::Index>(keep));
  for (std::size_t i = 0; i < keep; ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) =
        ds.features.row(static_cast<Eigen::Index>(order[i]));
    out.labels[static_cast<Eigen::Index>(i)] =
        ds.labels[static_cast<Eigen::Index>(order[i])];
  }
  return out;
}

// One full train/evaluate cycle: split, standardize on train statistics,
// resolve gamma, sample the map, train, measure the gap.
CellOutcome run_cell(const Dataset& ds, std::uint64_t seed,
                     const SweepSetup& setup, SgmConfig config,
                     Eigen::Index D, double subsample_fraction) {
  const double t0 = now_ms();
  CellOutcome out;
  try {
    auto [train_raw, test_raw] =
        split(ds, SplitSpec{setup.test_fraction, seed, true});
    if (subsample_fraction < 1.0) {
      train_raw = prefix_subsample(train_raw, subsample_fraction, seed);
    }
    auto [train_std, st] = standardize(train_raw);
    const Dataset test_std = st.apply(test_raw);
    const double gamma =
        setup.gamma > 0.0
            ? setup.gamma
            : median_heuristic_gamma(train_std.features, seed);
    const FourierFeatureMap map = sample_map(
        ds.d(), D, gamma, mix_seed(seed, static_cast<std::uint64_t>(D)));
    config.seed = mix_seed(seed, 0x56ULL);
    out.report = measure_gap(train_std, test_std, map, config);
    out.report.seed = seed;
  } catch (const TrainingError&) {
    out.diverged = true;
    out.report.seed = seed;
  }
  out.wall_ms = now_ms() - t0;
  return out;
}

SweepRecord aggregate(std::string param, double value,
                      const std::vector<CellOutcome>& cells) {
  SweepRecord rec;
  rec.param = std::move(param);
  rec.value = value;
  rec.seed_count = static_cast<int>(cells.size());
  std::vector<double> gap_loss, gap_01;
  double wall = 0;
  for (const auto& c : cells) {
    wall += c.wall_ms;
    if (c.diverged) {
      ++rec.diverged;
      continue;
    }
    rec.mean_train_loss += c.report.train_loss;
    rec.mean_test_loss += c.report.test_loss;
    rec.mean_train_01 += c.report.train_zero_one;
    rec.mean_test_01 += c.report.test_zero_one;
    gap_loss.push_back(c.report.gap_loss);
    gap_01.push_back(c.report.gap_zero_one);
  }
  rec.mean_wall_ms = wall / static_cast<double>(cells.size());
  const auto k = gap_loss.size();
  if (k == 0) return rec;
  const double kk = static_cast<double>(k);
  rec.mean_train_loss /= kk;
  rec.mean_test_loss /= kk;
  rec.mean_train_01 /= kk;
  rec.mean_test_01 /= kk;
  auto mean_std = [kk](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m += x;
    m /= kk;
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::pair<double, double>{m, std::sqrt(s / kk)};
  };
  std::tie(rec.mean_gap_loss, rec.std_gap_loss) = mean_std(gap_loss);
  std::tie(rec.mean_gap_01, rec.std_gap_01) = mean_std(gap_01);
  return rec;
}

struct GridPoint {
  std::string param;
  double value = 0;
  Eigen::Index D = 0;
  int epochs = 0;
  double eta = -1;  // < 0 keeps the config's schedule/eta
  double fraction = 1.0;
};

std::vector<SweepRecord> run_grid(const Dataset& ds,
                                  const std::vector<GridPoint>& grid,
                                  const SweepSetup& setup,
                                  const SgmConfig& config,
                                  const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw DomainError("sweep: seed list is empty");
  auto run_point = [&](const GridPoint& pt) {
    SgmConfig cfg = config;
    cfg.epochs = pt.epochs;
    if (pt.eta >= 0) {
      cfg.eta = pt.eta;
      cfg.schedule = EtaSchedule::kConstant;
    }
    std::vector<CellOutcome> cells;
    cells.reserve(seeds.size());
    for (auto seed : seeds) {
      cells.push_back(run_cell(ds, seed, setup, cfg, pt.D, pt.fraction));
    }
    return aggregate(pt.param, pt.value, cells);
  };

  std::vector<SweepRecord> records(grid.size());
  if (setup.jobs <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) records[i] = run_point(grid[i]);
    return records;
  }
  std::vector<std::future<SweepRecord>> inflight;
  std::vector<std::size_t> inflight_idx;
  std::size_t next = 0;
  auto drain_one = [&] {
    records[inflight_idx.front()] = inflight.front().get();
    inflight.erase(inflight.begin());
    inflight_idx.erase(inflight_idx.begin());
  };
  while (next < grid.size() || !inflight.empty()) {
    while (next < grid.size() &&
           inflight.size() < static_cast<std::size_t>(setup.jobs)) {
      inflight.push_back(
          std::async(std::launch::async, run_point, grid[next]));
      inflight_idx.push_back(next);
      ++next;
    }
    drain_one();
  }
  return records;
}

}  // namespace

GapReport measure_gap(const Dataset& train_set, const Dataset& test_set,
                      const FourierFeatureMap& map, const SgmConfig& config) {
  const double eta =
      resolve_eta(config, train_set.n(), LossConstants{}.L, config.epsilon);
  const Eigen::MatrixXd Z_train = transform_all(map, train_set.features);
  const SgmModel model =
      train_on_features(Z_train, train_set.labels, config, eta);
  GapReport rep;
  rep.eta = eta;
  rep.seed = config.seed;
  std::tie(rep.train_loss, rep.train_zero_one) =
      empirical_risk_on_features(model.w_bar, Z_train, train_set.labels);
  std::tie(rep.test_loss, rep.test_zero_one) =
      empirical_risk(model.w_bar, test_set, map);
  rep.gap_loss = std::abs(rep.test_loss - rep.train_loss);
  rep.gap_zero_one = std::abs(rep.test_zero_one - rep.train_zero_one);
  return rep;
}

PerturbationPair perturb_one(const Dataset& base, Eigen::Index index,
                             const Eigen::Ref<const Eigen::VectorXd>& x_new,
                             double y_new) {
  if (index < 0 || index >= base.n()) {
    throw DomainError("perturb_one: index out of range");
  }
  if (x_new.size() != base.d()) {
    throw DomainError("perturb_one: replacement dimension mismatch");
  }
  PerturbationPair pair;
  pair.base = base;
  pair.neighbor = base;
  pair.neighbor.features.row(index) = x_new.transpose();
  pair.neighbor.labels[index] = y_new;
  pair.replaced_index = index;
  return pair;
}

double empirical_stability(const PerturbationPair& pair, const Dataset& probe,
                           const FourierFeatureMap& map,
                           const SgmConfig& config,
                           const std::vector<std::uint64_t>& seeds) {
  if (pair.base.n() != pair.neighbor.n()) {
    throw DomainError("empirical_stability: pair sizes differ");
  }
  if (seeds.empty()) throw DomainError("empirical_stability: no seeds");
  const Eigen::MatrixXd Z_base = transform_all(map, pair.base.features);
  const Eigen::MatrixXd Z_nb = transform_all(map, pair.neighbor.features);
  const Eigen::MatrixXd Z_probe = transform_all(map, probe.features);
  const double eta =
      resolve_eta(config, pair.base.n(), LossConstants{}.L, config.epsilon);

  double total = 0;
  for (auto seed : seeds) {
    SgmConfig cfg = config;
    cfg.seed = seed;  // shared seed couples the two sample-index sequences
    const SgmModel mb = train_on_features(Z_base, pair.base.labels, cfg, eta);
    const SgmModel mn =
        train_on_features(Z_nb, pair.neighbor.labels, cfg, eta);
    const Eigen::VectorXd sb = Z_probe * mb.w_bar;
    const Eigen::VectorXd sn = Z_probe * mn.w_bar;
    double worst = 0;
    for (Eigen::Index i = 0; i < probe.n(); ++i) {
      const double diff = std::abs(huber_hinge(probe.labels[i] * sb[i]) -
                                   huber_hinge(probe.labels[i] * sn[i]));
      worst = std::max(worst, diff);
    }
    total += worst;
  }
  return total / static_cast<double>(seeds.size());
}

std::vector<SweepRecord> sweep_fourier(const Dataset& ds,
                                       const std::vector<Eigen::Index>& D_values,
                                       const SweepSetup& setup,
                                       const SgmConfig& config,
                                       const std::vector<std::uint64_t>& seeds) {
  if (D_values.empty()) throw DomainError("sweep_fourier: empty grid");
  std::vector<GridPoint> grid;
  for (auto D : D_values) {
    if (D < 1) throw DomainError("sweep_fourier: D must be >= 1");
    grid.push_back({"D", static_cast<double>(D), D, config.epochs, -1, 1.0});
  }
  return run_grid(ds, grid, setup, config, seeds);
}

std::vector<SweepRecord> sweep_epochs_and_size(
    const Dataset& ds, const std::vector<int>& epoch_values,
    const std::vector<double>& subsample_fractions, const SweepSetup& setup,
    const SgmConfig& config, const std::vector<std::uint64_t>& seeds) {
  if (epoch_values.empty() || subsample_fractions.empty()) {
    throw DomainError("sweep_epochs_and_size: empty grid");
  }
  std::vector<GridPoint> grid;
  for (double frac : subsample_fractions) {
    if (!(frac > 0.0 && frac <= 1.0)) {
      throw DomainError("sweep_epochs_and_size: fraction must be in (0,1]");
    }
    for (int ep : epoch_values) {
      if (ep < 1) throw DomainError("sweep_epochs_and_size: epochs must be >= 1");
      char buf[48];
      std::snprintf(buf, sizeof(buf), "epochs@size=%g", frac);
      grid.push_back(
          {buf, static_cast<double>(ep), setup.D, ep, -1, frac});
    }
  }
  return run_grid(ds, grid, setup, config, seeds);
}

std::vector<SweepRecord> sweep_learning_rate(
    const Dataset& ds, const std::vector<double>& eta_values,
    const SweepSetup& setup, const SgmConfig& config,
    const std::vector<std::uint64_t>& seeds) {
  if (eta_values.empty()) throw DomainError("sweep_learning_rate: empty grid");
  std::vector<GridPoint> grid;
  for (double eta : eta_values) {
    if (!(eta > 0.0)) throw DomainError("sweep_learning_rate: eta must be > 0");
    grid.push_back({"eta", eta, setup.D, config.epochs, eta, 1.0});
  }
  return run_grid(ds, grid, setup, config, seeds);
}

std::string sweep_csv_header() {
  return "sweep_param,value,seed_count,mean_train_loss,mean_test_loss,"
         "mean_gap_loss,std_gap_loss,mean_train_01,mean_test_01,mean_gap_01,"
         "std_gap_01,mean_wall_ms,diverged";
}

std::string sweep_record_csv(const SweepRecord& rec) {
  char buf[640];
  std::snprintf(buf, sizeof(buf),
                "%s,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                "%.3f,%d",
                rec.param.c_str(), rec.value, rec.seed_count,
                rec.mean_train_loss, rec.mean_test_loss, rec.mean_gap_loss,
                rec.std_gap_loss, rec.mean_train_01, rec.mean_test_01,
                rec.mean_gap_01, rec.std_gap_01, rec.mean_wall_ms,
                rec.diverged);
  return buf;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRecord>& records,
                     const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  if (!comment.empty()) out << "# " << comment << '\n';
  out << sweep_csv_header() << '\n';
  for (const auto& rec : records) out << sweep_record_csv(rec) << '\n';
}

}  // namespace rffsvm
