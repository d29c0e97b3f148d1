#ifndef RFFSVM_BOUNDS_HPP
#define RFFSVM_BOUNDS_HPP

#include <Eigen/Dense>
#include <cstdint>

namespace rffsvm {

// Scalar inputs shared by the closed-form calculators. Only the fields a
// given calculator reads need to be set.
struct BoundInputs {
  double n = 0;              // training sample count
  double T = 0;              // total SGM steps
  double eta = 0;            // step size
  double L = 4.0;            // Lipschitz constant of the loss
  double epsilon = 0;        // kernel approximation tolerance
  double d = 0;              // input dimension
  double D = 0;              // Fourier component count
  double sigma_p = 0;        // root second moment of the spectral density
  double diam = 0;           // diameter of the data domain
  double B = 0;              // ||f*||_1 proxy
  double w_star_norm_sq = 0; // ||w*||^2 when known
};

struct RffProbability {
  double raw;      // 1 - 2^8 (sigma_p diam / eps)^2 exp(-D eps^2 / (4(d+2)))
  double clamped;  // raw clamped to [0, 1] for reporting
};

RffProbability rff_probability(const BoundInputs& in);

// ceil(c * d/eps^2 * log(sigma_p * diam / eps)); when the log argument is
// <= 1 the floor value c * d/eps^2 is returned.
long long required_D(const BoundInputs& in, double c = 4.0);

// R_star + ||w*||^2 / (2 T eta) + eta L^2 / 2
double lemma1_bound(const BoundInputs& in, double R_star);

// (1+eps) B^2 / (2 T eta) + eta L^2 / 2. The optional trailing
// eps * L * B term appears once in the source chain and is dropped from the
// bounds that follow; it is off by default.
double opt_error_bound(const BoundInputs& in, bool include_approx_term = false);

// T L^2 eta / n
double stability_bound(const BoundInputs& in);

// R_star + (2+eps) B L / (2 sqrt(n)), single-pass regime T = n
double lemma2_bound(const BoundInputs& in, double R_star);

struct Theorem1Result {
  double bound;
  double optimal_eta;
};

// bound = empirical_min + B L sqrt(1+eps)/sqrt(n) * sqrt((n+2T)/T);
// optimal_eta = B sqrt((1+eps) n) / (L sqrt(T (n+2T)))
Theorem1Result theorem1_bound(const BoundInputs& in, double empirical_min);

// (1+eps) B^2/(2 T eta) + eta L^2/2 + T L^2 eta / n, the quantity the
// optimal eta minimizes.
double excess_risk_rhs(const BoundInputs& in, double eta);

// Diagonal of the axis-aligned bounding box of the rows of X.
double bounding_box_diameter(const Eigen::Ref<const Eigen::MatrixXd>& X);

}  // namespace rffsvm

#endif  // RFFSVM_BOUNDS_HPP
