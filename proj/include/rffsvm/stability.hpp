#ifndef RFFSVM_STABILITY_HPP
#define RFFSVM_STABILITY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "rffsvm/dataset.hpp"
#include "rffsvm/rff.hpp"
#include "rffsvm/sgm.hpp"

namespace rffsvm {

// One train/evaluate cycle. "Error" is reported both as huber-hinge loss
// and as 0/1 misclassification; the gap fields are exact absolute
// differences of their constituents.
struct GapReport {
  double train_loss = 0;
  double test_loss = 0;
  double train_zero_one = 0;
  double test_zero_one = 0;
  double gap_loss = 0;
  double gap_zero_one = 0;
  std::uint64_t seed = 0;
  double eta = 0;  // resolved step size actually used
};

GapReport measure_gap(const Dataset& train_set, const Dataset& test_set,
                      const FourierFeatureMap& map, const SgmConfig& config);

// Two datasets of equal size differing in exactly one row.
struct PerturbationPair {
  Dataset base;
  Dataset neighbor;
  Eigen::Index replaced_index = 0;
};

PerturbationPair perturb_one(const Dataset& base, Eigen::Index index,
                             const Eigen::Ref<const Eigen::VectorXd>& x_new,
                             double y_new);

// Trains on base and neighbor with coupled randomness (identical sample
// order), then returns the mean over seeds of the max over probe points of
// |l(w_bar_base) - l(w_bar_neighbor)|.
double empirical_stability(const PerturbationPair& pair, const Dataset& probe,
                           const FourierFeatureMap& map,
                           const SgmConfig& config,
                           const std::vector<std::uint64_t>& seeds);

// Aggregated row of a sweep: statistics over the seed list at one grid point.
struct SweepRecord {
  std::string param;
  double value = 0;
  int seed_count = 0;
  double mean_train_loss = 0;
  double mean_test_loss = 0;
  double mean_gap_loss = 0;
  double std_gap_loss = 0;
  double mean_train_01 = 0;
  double mean_test_01 = 0;
  double mean_gap_01 = 0;
  double std_gap_01 = 0;
  double mean_wall_ms = 0;
  int diverged = 0;  // divergent runs are flagged, not dropped
};

// Shared knobs for the experiment sweeps. gamma <= 0 selects the median
// heuristic on the (standardized) training features of each cell.
struct SweepSetup {
  double gamma = 0;
  Eigen::Index D = 200;
  double test_fraction = 0.2;
  int jobs = 1;
};

// Fresh feature map per (D, seed); split and SGM seeds are shared across D
// values so the comparison is paired.
std::vector<SweepRecord> sweep_fourier(const Dataset& ds,
                                       const std::vector<Eigen::Index>& D_values,
                                       const SweepSetup& setup,
                                       const SgmConfig& config,
                                       const std::vector<std::uint64_t>& seeds);

// Grid over epochs x training-set fraction. Subsamples are seeded prefixes
// of one shuffled order, so larger fractions nest smaller ones.
std::vector<SweepRecord> sweep_epochs_and_size(
    const Dataset& ds, const std::vector<int>& epoch_values,
    const std::vector<double>& subsample_fractions, const SweepSetup& setup,
    const SgmConfig& config, const std::vector<std::uint64_t>& seeds);

std::vector<SweepRecord> sweep_learning_rate(
    const Dataset& ds, const std::vector<double>& eta_values,
    const SweepSetup& setup, const SgmConfig& config,
    const std::vector<std::uint64_t>& seeds);

std::string sweep_csv_header();
std::string sweep_record_csv(const SweepRecord& rec);

// Writes an optional `# ...` comment line, the header, then one row per
// record.
void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRecord>& records,
                     const std::string& comment = "");

}  // namespace rffsvm

#endif  // RFFSVM_STABILITY_HPP
