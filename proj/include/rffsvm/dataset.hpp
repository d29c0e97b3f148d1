#ifndef RFFSVM_DATASET_HPP
#define RFFSVM_DATASET_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rffsvm {

// Dense binary-classification dataset. Labels are strictly +1 / -1.
struct Dataset {
  Eigen::MatrixXd features;  // n x d
  Eigen::VectorXd labels;    // n, entries in {+1, -1}
  std::string name;

  Eigen::Index n() const { return features.rows(); }
  Eigen::Index d() const { return features.cols(); }
};

struct SplitSpec {
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
  bool shuffle = true;
};

// Per-feature affine transform fitted on training data.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;  // zero-variance columns keep stddev 1 and map to 0

  Dataset apply(const Dataset& ds) const;
};

// LIBSVM text format: `label idx:val ...`, 1-based ascending indices.
Dataset load_libsvm(const std::string& path);
void save_libsvm(const Dataset& ds, const std::string& path);

// Numeric CSV; header row auto-detected by a non-numeric first line.
// label_column < 0 counts from the end (-1 = last column).
Dataset load_csv(const std::string& path, int label_column = -1);

std::pair<Dataset, Standardizer> standardize(const Dataset& ds);

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec);

// Index partition behind split(); exposed so experiments can reuse it.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, const SplitSpec& spec);

}  // namespace rffsvm

#endif  // RFFSVM_DATASET_HPP
