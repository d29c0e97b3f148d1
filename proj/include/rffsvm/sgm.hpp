#ifndef RFFSVM_SGM_HPP
#define RFFSVM_SGM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rffsvm/dataset.hpp"
#include "rffsvm/rff.hpp"

namespace rffsvm {

enum class EtaSchedule {
  kConstant,        // use SgmConfig::eta as given
  kSinglePass,      // B / (L * sqrt(n)), the single-pass rate
  kTheoremOptimal,  // B * sqrt((1+eps) n) / (L * sqrt(T (n + 2T)))
};

struct SgmConfig {
  double eta = 0.01;
  int epochs = 1;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  EtaSchedule schedule = EtaSchedule::kConstant;
  double B = 0.0;        // ||f*||_1 proxy, required by theory schedules
  double epsilon = 0.0;  // kernel approximation tolerance for kTheoremOptimal
  bool record_trace = false;
  std::size_t trace_limit = 10000;
};

struct SgmModel {
  Eigen::VectorXd w;      // final iterate
  Eigen::VectorXd w_bar;  // uniform average of iterates w_1..w_T
  std::int64_t t = 0;     // steps taken
  std::vector<Eigen::VectorXd> trace;  // first trace_limit iterates, if recorded
};

double resolve_eta(const SgmConfig& config, Eigen::Index n_train, double L,
                   double epsilon);

// Constant-step SGM on precomputed feature rows Z (n x 2D). Each epoch visits
// a fresh seeded permutation; update w <- w - eta * (grad + lambda w).
SgmModel train_on_features(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                           const Eigen::Ref<const Eigen::VectorXd>& y,
                           const SgmConfig& config, double eta);

// Transforms the training set through the map, resolves eta, and trains.
SgmModel train(const Dataset& train_set, const FourierFeatureMap& map,
               const SgmConfig& config);

// sign(w'z(x)) with sign(0) = +1.
int predict(const SgmModel& model, const FourierFeatureMap& map,
            const Eigen::Ref<const Eigen::VectorXd>& x, bool use_average = true);

// (mean huber-hinge loss, misclassification rate) of w over the set.
std::pair<double, double> empirical_risk_on_features(
    const Eigen::Ref<const Eigen::VectorXd>& w,
    const Eigen::Ref<const Eigen::MatrixXd>& Z,
    const Eigen::Ref<const Eigen::VectorXd>& y);

std::pair<double, double> empirical_risk(
    const Eigen::Ref<const Eigen::VectorXd>& w, const Dataset& data,
    const FourierFeatureMap& map);

void save_model(const SgmModel& model, const SgmConfig& config,
                const std::string& map_path, const std::string& path);

}  // namespace rffsvm

#endif  // RFFSVM_SGM_HPP
