#include "rffsvm/rff.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include "rffsvm/errors.hpp"
#include "rffsvm/random.hpp"

namespace rffsvm {

FourierFeatureMap sample_map(Eigen::Index d, Eigen::Index D, double gamma,
                             std::uint64_t seed) {
  if (D < 1) throw DomainError("sample_map: D must be >= 1");
  if (d < 1) throw DomainError("sample_map: d must be >= 1");
  if (!(gamma > 0.0)) throw DomainError("sample_map: gamma must be > 0");

  FourierFeatureMap map;
  map.gamma = gamma;
  map.seed = seed;
  map.frequencies.resize(D, d);
  const double scale = std::sqrt(2.0 * gamma);
  Rng rng(mix_seed(seed, 0xf0f0ULL));
  for (Eigen::Index i = 0; i < D; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      map.frequencies(i, j) = scale * rng.normal();
    }
  }
  return map;
}

Eigen::VectorXd transform(const FourierFeatureMap& map,
                          const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != map.input_dim()) {
    throw DomainError("transform: x has dimension " + std::to_string(x.size()) +
                      ", map expects " + std::to_string(map.input_dim()));
  }
  const Eigen::Index D = map.components();
  const Eigen::VectorXd proj = map.frequencies * x;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(D));
  Eigen::VectorXd z(2 * D);
  for (Eigen::Index i = 0; i < D; ++i) {
    z[2 * i] = inv_sqrt_d * std::cos(proj[i]);
    z[2 * i + 1] = inv_sqrt_d * std::sin(proj[i]);
  }
  return z;
}

Eigen::MatrixXd transform_all(const FourierFeatureMap& map,
                              const Eigen::Ref<const Eigen::MatrixXd>& X) {
  if (X.cols() != map.input_dim()) {
    throw DomainError("transform_all: feature dimension mismatch");
  }
  const Eigen::Index D = map.components();
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(D));
  Eigen::MatrixXd proj = X * map.frequencies.transpose();  // n x D
  Eigen::MatrixXd Z(X.rows(), 2 * D);
  for (Eigen::Index i = 0; i < D; ++i) {
    Z.col(2 * i) = proj.col(i).array().cos() * inv_sqrt_d;
    Z.col(2 * i + 1) = proj.col(i).array().sin() * inv_sqrt_d;
  }
  return Z;
}

double exact_kernel(const KernelParams& params,
                    const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) {
    throw DomainError("exact_kernel: dimension mismatch");
  }
  return std::exp(-params.gamma * (x - y).squaredNorm());
}

double derived_sigma_p(const KernelParams& params, Eigen::Index d) {
  if (!(params.gamma > 0.0)) throw DomainError("derived_sigma_p: gamma must be > 0");
  if (d < 1) throw DomainError("derived_sigma_p: d must be >= 1");
  return std::sqrt(2.0 * params.gamma * static_cast<double>(d));
}

double median_heuristic_gamma(const Eigen::Ref<const Eigen::MatrixXd>& X,
                              std::uint64_t seed, std::size_t max_points) {
  const auto n = static_cast<std::size_t>(X.rows());
  std::vector<std::size_t> idx;
  if (n <= max_points) {
    idx.resize(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  } else {
    Rng rng(mix_seed(seed, 0x3edULL));
    auto perm = rng.permutation(n);
    idx.assign(perm.begin(), perm.begin() + static_cast<long>(max_points));
  }
  std::vector<double> dists;
  dists.reserve(idx.size() * (idx.size() - 1) / 2);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const double dist = (X.row(static_cast<Eigen::Index>(idx[a])) -
                           X.row(static_cast<Eigen::Index>(idx[b])))
                              .norm();
      if (dist > 0.0) dists.push_back(dist);
    }
  }
  if (dists.empty()) return 1.0;  // all points identical
  auto mid = dists.begin() + static_cast<long>(dists.size() / 2);
  std::nth_element(dists.begin(), mid, dists.end());
  const double median = *mid;
  return 1.0 / (2.0 * median * median);
}

void save_map(const FourierFeatureMap& map, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out.precision(17);
  out << map.input_dim() << ' ' << map.components() << ' ' << map.gamma << ' '
      << map.seed << '\n';
  for (Eigen::Index i = 0; i < map.components(); ++i) {
    for (Eigen::Index j = 0; j < map.input_dim(); ++j) {
      out << map.frequencies(i, j) << (j + 1 == map.input_dim() ? '\n' : ' ');
    }
  }
}

FourierFeatureMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Eigen::Index d = 0, D = 0;
  FourierFeatureMap map;
  if (!(in >> d >> D >> map.gamma >> map.seed) || d < 1 || D < 1) {
    throw ParseError(path + ": bad feature-map header");
  }
  map.frequencies.resize(D, d);
  for (Eigen::Index i = 0; i < D; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!(in >> map.frequencies(i, j))) {
        throw ParseError(path + ": truncated frequency matrix");
      }
    }
  }
  return map;
}

}  // namespace rffsvm
