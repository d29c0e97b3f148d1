#ifndef RFFSVM_RFF_HPP
#define RFFSVM_RFF_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace rffsvm {

struct KernelParams {
  double gamma;  // k(x,y) = exp(-gamma * ||x-y||^2)
};

// Random Fourier feature map for the Gaussian kernel. The map sends
// x in R^d to the 2D-vector (1/sqrt(D)) * [cos(w_i'x), sin(w_i'x)]_{i=1..D},
// so ||z(x)|| = 1 for every x.
struct FourierFeatureMap {
  Eigen::MatrixXd frequencies;  // D x d, rows sampled from the spectral density
  double gamma = 1.0;
  std::uint64_t seed = 0;

  Eigen::Index input_dim() const { return frequencies.cols(); }
  Eigen::Index components() const { return frequencies.rows(); }
  Eigen::Index output_dim() const { return 2 * frequencies.rows(); }
};

// Frequencies are i.i.d. N(0, 2*gamma) per coordinate; deterministic in seed.
FourierFeatureMap sample_map(Eigen::Index d, Eigen::Index D, double gamma,
                             std::uint64_t seed);

Eigen::VectorXd transform(const FourierFeatureMap& map,
                          const Eigen::Ref<const Eigen::VectorXd>& x);

// Row i of the result is transform(map, X.row(i)).
Eigen::MatrixXd transform_all(const FourierFeatureMap& map,
                              const Eigen::Ref<const Eigen::MatrixXd>& X);

double exact_kernel(const KernelParams& params,
                    const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y);

// sqrt(2*gamma*d): root second moment of the Gaussian spectral density.
double derived_sigma_p(const KernelParams& params, Eigen::Index d);

// gamma = 1/(2 * median^2) of pairwise distances over a seeded subsample.
double median_heuristic_gamma(const Eigen::Ref<const Eigen::MatrixXd>& X,
                              std::uint64_t seed,
                              std::size_t max_points = 1000);

// Text dump: d D gamma seed followed by the row-major frequency matrix.
void save_map(const FourierFeatureMap& map, const std::string& path);
FourierFeatureMap load_map(const std::string& path);

}  // namespace rffsvm

#endif  // RFFSVM_RFF_HPP
