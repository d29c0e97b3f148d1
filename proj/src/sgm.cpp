#include "rffsvm/sgm.hpp"

#include <cmath>
#include <fstream>

#include "rffsvm/errors.hpp"
#include "rffsvm/loss.hpp"
#include "rffsvm/random.hpp"

namespace rffsvm {

double resolve_eta(const SgmConfig& config, Eigen::Index n_train, double L,
                   double epsilon) {
  if (n_train < 1) throw DomainError("resolve_eta: n must be >= 1");
  if (!(L > 0.0)) throw DomainError("resolve_eta: L must be > 0");
  switch (config.schedule) {
    case EtaSchedule::kConstant:
      if (!(config.eta > 0.0) && config.eta != 0.0) {
        throw ConfigError("resolve_eta: eta must be >= 0");
      }
      return config.eta;
    case EtaSchedule::kSinglePass: {
      if (!(config.B > 0.0)) {
        throw ConfigError("resolve_eta: single-pass schedule requires B > 0");
      }
      return config.B / (L * std::sqrt(static_cast<double>(n_train)));
    }
    case EtaSchedule::kTheoremOptimal: {
      if (!(config.B > 0.0)) {
        throw ConfigError("resolve_eta: optimal schedule requires B > 0");
      }
      const double n = static_cast<double>(n_train);
      const double T = static_cast<double>(config.epochs) * n;
      return config.B * std::sqrt((1.0 + epsilon) * n) /
             (L * std::sqrt(T * (n + 2.0 * T)));
    }
  }
  throw ConfigError("resolve_eta: unknown schedule");
}

SgmModel train_on_features(const Eigen::Ref<const Eigen::MatrixXd>& Z,
                           const Eigen::Ref<const Eigen::VectorXd>& y,
                           const SgmConfig& config, double eta) {
  const Eigen::Index n = Z.rows();
  const Eigen::Index dim = Z.cols();
  if (n == 0) throw DomainError("train: empty training set");
  if (config.epochs < 1) throw DomainError("train: epochs must be >= 1");

  SgmModel model;
  model.w = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd w_sum = Eigen::VectorXd::Zero(dim);
  Rng rng(mix_seed(config.seed, 0x59bULL));

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto order = rng.permutation(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto i = static_cast<Eigen::Index>(order[k]);
      const double yi = y[i];
      const double u = yi * Z.row(i).dot(model.w);
      const double g = huber_hinge_deriv(u) * yi;
      if (config.lambda > 0.0) {
        model.w *= (1.0 - eta * config.lambda);
      }
      model.w.noalias() -= (eta * g) * Z.row(i).transpose();
      ++model.t;
      w_sum += model.w;
      if (!std::isfinite(model.w[0]) || !model.w.allFinite()) {
        throw TrainingError("train: non-finite weights at step " +
                            std::to_string(model.t) + " (eta=" +
                            std::to_string(eta) + ")");
      }
      if (config.record_trace && model.trace.size() < config.trace_limit) {
        model.trace.push_back(model.w);
      }
    }
  }
  model.w_bar = w_sum / static_cast<double>(model.t);
  return model;
}

SgmModel train(const Dataset& train_set, const FourierFeatureMap& map,
               const SgmConfig& config) {
  if (train_set.d() != map.input_dim()) {
    throw DomainError("train: dataset dimension does not match feature map");
  }
  const Eigen::MatrixXd Z = transform_all(map, train_set.features);
  const double eta =
      resolve_eta(config, train_set.n(), LossConstants{}.L, config.epsilon);
  return train_on_features(Z, train_set.labels, config, eta);
}

int predict(const SgmModel& model, const FourierFeatureMap& map,
            const Eigen::Ref<const Eigen::VectorXd>& x, bool use_average) {
  const Eigen::VectorXd z = transform(map, x);
  const double score = use_average ? model.w_bar.dot(z) : model.w.dot(z);
  return score < 0.0 ? -1 : +1;
}

std::pair<double, double> empirical_risk_on_features(
    const Eigen::Ref<const Eigen::VectorXd>& w,
    const Eigen::Ref<const Eigen::MatrixXd>& Z,
    const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (Z.rows() == 0) throw DomainError("empirical_risk: empty data");
  const Eigen::VectorXd scores = Z * w;
  double loss = 0.0;
  double wrong = 0.0;
  for (Eigen::Index i = 0; i < Z.rows(); ++i) {
    loss += huber_hinge(y[i] * scores[i]);
    const double pred = scores[i] < 0.0 ? -1.0 : 1.0;
    if (pred != y[i]) wrong += 1.0;
  }
  const double n = static_cast<double>(Z.rows());
  return {loss / n, wrong / n};
}

std::pair<double, double> empirical_risk(
    const Eigen::Ref<const Eigen::VectorXd>& w, const Dataset& data,
    const FourierFeatureMap& map) {
  const Eigen::MatrixXd Z = transform_all(map, data.features);
  return empirical_risk_on_features(w, Z, data.labels);
}

void save_model(const SgmModel& model, const SgmConfig& config,
                const std::string& map_path, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out.precision(17);
  out << "# map=" << map_path << " eta=" << config.eta
      << " epochs=" << config.epochs << " lambda=" << config.lambda
      << " seed=" << config.seed << " t=" << model.t << '\n';
  out << model.w.transpose() << '\n' << model.w_bar.transpose() << '\n';
}

}  // namespace rffsvm
