#ifndef RFFSVM_LOSS_HPP
#define RFFSVM_LOSS_HPP

#include <Eigen/Dense>

namespace rffsvm {

// Constants of the huber-hinge loss as a function of w under unit-norm
// features: the margin derivative is bounded by 4 and the quadratic piece
// has second derivative 2.
struct LossConstants {
  double L = 4.0;
  double beta = 2.0;
};

// Smooth hinge surrogate on the margin u = y * w'z(x):
//   -4u        for u < -1
//   (1 - u)^2  for -1 <= u <= 1
//   0          for u > 1
inline double huber_hinge(double u) {
  if (u < -1.0) return -4.0 * u;
  if (u <= 1.0) return (1.0 - u) * (1.0 - u);
  return 0.0;
}

// dl/du. Breakpoints take the quadratic branch; both sides agree there.
inline double huber_hinge_deriv(double u) {
  if (u < -1.0) return -4.0;
  if (u <= 1.0) return -2.0 * (1.0 - u);
  return 0.0;
}

// Gradient with respect to w: (dl/du) * y * z.
inline Eigen::VectorXd huber_hinge_grad_w(
    const Eigen::Ref<const Eigen::VectorXd>& w,
    const Eigen::Ref<const Eigen::VectorXd>& z, double y) {
  const double u = y * w.dot(z);
  return (huber_hinge_deriv(u) * y) * z;
}

// lambda/2 * ||w||^2 + mean huber-hinge over the batch (rows of Z).
double regularized_objective(const Eigen::Ref<const Eigen::VectorXd>& w,
                             const Eigen::Ref<const Eigen::MatrixXd>& Z,
                             const Eigen::Ref<const Eigen::VectorXd>& y,
                             double lambda);

}  // namespace rffsvm

#endif  // RFFSVM_LOSS_HPP
