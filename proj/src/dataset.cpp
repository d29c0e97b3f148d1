#include "rffsvm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rffsvm/errors.hpp"
#include "rffsvm/random.hpp"

namespace rffsvm {

namespace {

bool is_numeric_token(const std::string& tok) {
  if (tok.empty()) return false;
  char* end = nullptr;
  std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

// Remap two raw label values onto {-1, +1}: smaller raw value -> -1.
Eigen::VectorXd remap_labels(const std::vector<double>& raw,
                             const std::string& where) {
  std::map<double, int> classes;
  for (double v : raw) classes[v] = 1;
  if (classes.size() != 2) {
    throw DomainError(where + ": expected exactly 2 label classes, found " +
                      std::to_string(classes.size()));
  }
  const double lo = classes.begin()->first;
  Eigen::VectorXd y(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    y[static_cast<Eigen::Index>(i)] = (raw[i] == lo) ? -1.0 : 1.0;
  }
  return y;
}

void check_finite(const Eigen::MatrixXd& m, const std::string& where) {
  if (!m.allFinite()) {
    throw ParseError(where + ": non-finite feature value");
  }
}

}  // namespace

Dataset load_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<double> raw_labels;
  std::vector<std::vector<std::pair<int, double>>> rows;
  int max_index = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double label;
    if (!(ls >> label)) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad label");
    }
    std::vector<std::pair<int, double>> row;
    std::string item;
    int prev_index = 0;
    while (ls >> item) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected idx:val, got '" + item + "'");
      }
      int idx = 0;
      double val = 0.0;
      try {
        idx = std::stoi(item.substr(0, colon));
        val = std::stod(item.substr(colon + 1));
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": malformed pair '" + item + "'");
      }
      if (idx <= prev_index) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": indices must be 1-based ascending");
      }
      prev_index = idx;
      max_index = std::max(max_index, idx);
      row.emplace_back(idx, val);
    }
    raw_labels.push_back(label);
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw DomainError(path + ": need at least 2 samples");

  const auto n = static_cast<Eigen::Index>(rows.size());
  Dataset ds;
  ds.features = Eigen::MatrixXd::Zero(n, max_index);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& [idx, val] : rows[static_cast<std::size_t>(i)]) {
      ds.features(i, idx - 1) = val;
    }
  }
  check_finite(ds.features, path);
  ds.labels = remap_labels(raw_labels, path);
  ds.name = path;
  return ds;
}

void save_libsvm(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    out << (ds.labels[i] > 0 ? 1 : -1);
    for (Eigen::Index j = 0; j < ds.d(); ++j) {
      const double v = ds.features(i, j);
      if (v != 0.0) out << ' ' << (j + 1) << ':' << v;
    }
    out << '\n';
  }
}

Dataset load_csv(const std::string& path, int label_column) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> toks;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) toks.push_back(tok);
    if (first) {
      first = false;
      // header row: first line with any non-numeric cell
      if (!std::all_of(toks.begin(), toks.end(), is_numeric_token)) continue;
    }
    std::vector<double> vals;
    vals.reserve(toks.size());
    for (const auto& t : toks) {
      if (!is_numeric_token(t)) {
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": non-numeric cell '" + t + "'");
      }
      vals.push_back(std::stod(t));
    }
    if (!rows.empty() && vals.size() != rows.front().size()) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": ragged row");
    }
    rows.push_back(std::move(vals));
  }
  if (rows.size() < 2) throw DomainError(path + ": need at least 2 samples");

  const auto ncols = static_cast<int>(rows.front().size());
  int lc = label_column < 0 ? ncols + label_column : label_column;
  if (lc < 0 || lc >= ncols) {
    throw DomainError(path + ": label column " + std::to_string(label_column) +
                      " out of range");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Dataset ds;
  ds.features.resize(n, ncols - 1);
  std::vector<double> raw_labels(rows.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    raw_labels[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(lc)];
    Eigen::Index k = 0;
    for (int j = 0; j < ncols; ++j) {
      if (j == lc) continue;
      ds.features(i, k++) = row[static_cast<std::size_t>(j)];
    }
  }
  check_finite(ds.features, path);
  ds.labels = remap_labels(raw_labels, path);
  ds.name = path;
  return ds;
}

Dataset Standardizer::apply(const Dataset& ds) const {
  Dataset out = ds;
  out.features = (ds.features.rowwise() - mean.transpose()).array().rowwise() /
                 stddev.transpose().array();
  return out;
}

std::pair<Dataset, Standardizer> standardize(const Dataset& ds) {
  if (ds.n() < 2) throw DomainError("standardize: need n >= 2");
  Standardizer st;
  st.mean = ds.features.colwise().mean();
  Eigen::MatrixXd centered = ds.features.rowwise() - st.mean.transpose();
  // population standard deviation
  st.stddev = (centered.array().square().colwise().sum() /
               static_cast<double>(ds.n()))
                  .sqrt();
  for (Eigen::Index j = 0; j < st.stddev.size(); ++j) {
    if (st.stddev[j] == 0.0) st.stddev[j] = 1.0;  // constant column -> zeros
  }
  return {st.apply(ds), st};
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, const SplitSpec& spec) {
  if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
    throw DomainError("split: test_fraction must be in (0,1)");
  }
  const auto n_test =
      static_cast<std::size_t>(std::floor(spec.test_fraction * static_cast<double>(n)));
  if (n_test < 1 || n - n_test < 1) {
    throw DomainError("split: degenerate fraction for n=" + std::to_string(n));
  }
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  if (spec.shuffle) {
    Rng rng(mix_seed(spec.seed, 0x5eedULL));
    idx = rng.permutation(n);
  }
  std::vector<std::size_t> test(idx.begin(), idx.begin() + static_cast<long>(n_test));
  std::vector<std::size_t> train(idx.begin() + static_cast<long>(n_test), idx.end());
  return {train, test};
}

namespace {
Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& idx) {
  Dataset out;
  out.name = ds.name;
  out.features.resize(static_cast<Eigen::Index>(idx.size()), ds.d());
  out.labels.resize(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) =
        ds.features.row(static_cast<Eigen::Index>(idx[i]));
    out.labels[static_cast<Eigen::Index>(i)] =
        ds.labels[static_cast<Eigen::Index>(idx[i])];
  }
  return out;
}
}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec) {
  auto [train_idx, test_idx] = split_indices(static_cast<std::size_t>(ds.n()), spec);
  return {take_rows(ds, train_idx), take_rows(ds, test_idx)};
}

}  // namespace rffsvm
