#include "interpsel/dataset.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "interpsel/errors.hpp"
#include "interpsel/rng.hpp"

namespace interpsel {

void Dataset::validate() const {
  if (X.rows() < 2) throw InputError("dataset needs at least 2 samples");
  if (X.cols() < 1) throw InputError("dataset needs at least 1 feature");
  if (y.size() != X.rows())
    throw InputError("label count does not match sample count");
  if (!X.allFinite() || !y.allFinite())
    throw InputError("dataset contains non-finite values");
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] != 1.0 && y[i] != -1.0)
      throw InputError("label at row " + std::to_string(i) +
                       " is not -1 or +1");
  }
}

ToyConfig ToyConfig::defaults() {
  ToyConfig config;
  config.n_per_class = 500;
  config.class_offsets[0] = Eigen::Vector2d(1.5, 0.0);
  config.class_offsets[1] = Eigen::Vector2d(-1.5, 0.0);
  config.noise_covariance = Eigen::Matrix2d{{1.02, -0.3}, {-0.3, 0.15}};
  config.seed = 2;
  return config;
}

void ToyConfig::validate() const {
  if (n_per_class < 1) throw ConfigError("n_per_class must be positive");
  const Eigen::Index p = class_offsets[0].size();
  if (p < 1) throw ConfigError("class offsets must have at least 1 feature");
  if (class_offsets[1].size() != p)
    throw ConfigError("class offsets differ in length");
  if (noise_covariance.rows() != p || noise_covariance.cols() != p)
    throw ConfigError("noise covariance must be p x p");
  const double asym =
      (noise_covariance - noise_covariance.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw ConfigError("noise covariance is not symmetric (max asymmetry " +
                      std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(noise_covariance);
  if (eig.eigenvalues().minCoeff() < -1e-10)
    throw ConfigError("noise covariance is not positive semi-definite");
}

Dataset generate_toy(const ToyConfig& config) {
  config.validate();
  const Eigen::Index p = config.class_offsets[0].size();
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(config.n_per_class);

  // Factor of the covariance: V * sqrt(max(eigenvalue, 0)). Unlike a
  // Cholesky factor this stays valid for singular covariances.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(config.noise_covariance);
  const Eigen::MatrixXd factor =
      eig.eigenvectors() *
      eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  Dataset data;
  data.X.resize(n, p);
  data.y.resize(n);
  rng::NormalSampler normal(config.seed);
  Eigen::VectorXd z(p);
  for (int i = 0; i < config.n_per_class; ++i) {
    for (int cls = 0; cls < 2; ++cls) {
      for (Eigen::Index j = 0; j < p; ++j) z[j] = normal.next();
      const Eigen::Index row = 2 * static_cast<Eigen::Index>(i) + cls;
      data.X.row(row) = (config.class_offsets[cls] + factor * z).transpose();
      data.y[row] = cls == 0 ? 1.0 : -1.0;
    }
  }
  return data;
}

ReferenceSolution reference_solution(const Dataset& data) {
  // Structural checks only: the least-squares direction is well-defined for
  // real-valued labels, and scaling y by c > 0 must not change the map.
  if (data.X.rows() < 2 || data.X.cols() < 1)
    throw InputError("reference solution needs at least 2 samples");
  if (data.y.size() != data.X.rows())
    throw InputError("label count does not match sample count");
  if (!data.X.allFinite() || !data.y.allFinite())
    throw InputError("dataset contains non-finite values");
  const Eigen::Index n = data.n();

  const Eigen::RowVectorXd mean = data.X.colwise().mean();
  const Eigen::MatrixXd centered = data.X.rowwise() - mean;
  const Eigen::MatrixXd covariance =
      (centered.transpose() * centered) / static_cast<double>(n);
  const Eigen::VectorXd signal = data.X.transpose() * data.y;
  if (signal.isZero(0.0))
    throw DegenerateReferenceError(
        "X^T y is the zero vector: the dataset carries no class signal");

  // Pseudo-inverse through the eigendecomposition; the covariance is
  // symmetric PSD by construction.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance);
  const double cutoff = 1e-10 * eig.eigenvalues().cwiseAbs().maxCoeff();
  Eigen::VectorXd inverted = eig.eigenvalues();
  for (Eigen::Index i = 0; i < inverted.size(); ++i)
    inverted[i] = inverted[i] > cutoff ? 1.0 / inverted[i] : 0.0;

  ReferenceSolution reference;
  reference.theta_star = eig.eigenvectors() * inverted.asDiagonal() *
                         eig.eigenvectors().transpose() * signal;
  const double norm = reference.theta_star.norm();
  if (norm == 0.0)
    throw DegenerateReferenceError(
        "reference solution is the zero vector; its map is undefined");
  reference.mbm_star = reference.theta_star / norm;
  return reference;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& field, const std::filesystem::path& path,
                    std::size_t line_number) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end)
    throw ParseError(path.string() + ":" + std::to_string(line_number) +
                     ": cannot parse '" + field + "' as a number");
  return value;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  std::string line;
  std::size_t line_number = 0;
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  Eigen::Index p = -1;

  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);

    if (p < 0) {  // header
      if (fields.size() < 2 || fields.back() != "y")
        throw ParseError(path.string() + ":1: expected header x1,...,xp,y");
      for (std::size_t j = 0; j + 1 < fields.size(); ++j) {
        if (fields[j] != "x" + std::to_string(j + 1))
          throw ParseError(path.string() + ":1: expected column 'x" +
                           std::to_string(j + 1) + "', found '" + fields[j] +
                           "'");
      }
      p = static_cast<Eigen::Index>(fields.size()) - 1;
      continue;
    }

    if (fields.size() != static_cast<std::size_t>(p) + 1)
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": expected " + std::to_string(p + 1) +
                       " fields, found " + std::to_string(fields.size()));
    std::vector<double> row(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j)
      row[static_cast<std::size_t>(j)] =
          parse_double(fields[static_cast<std::size_t>(j)], path, line_number);
    const double label = parse_double(fields.back(), path, line_number);
    if (label != 1.0 && label != -1.0)
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": label must be -1 or +1, found '" + fields.back() +
                       "'");
    rows.push_back(std::move(row));
    labels.push_back(label);
  }

  if (rows.empty()) throw ParseError(path.string() + ": no samples");

  Dataset data;
  data.X.resize(static_cast<Eigen::Index>(rows.size()), p);
  data.y.resize(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < p; ++j)
      data.X(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    data.y[static_cast<Eigen::Index>(i)] = labels[i];
  }
  data.validate();
  return data;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  data.validate();
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");

  for (Eigen::Index j = 0; j < data.p(); ++j) out << "x" << (j + 1) << ",";
  out << "y\n";

  char buffer[64];
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.p(); ++j) {
      // 17 significant digits: doubles survive the round-trip bit-exactly.
      std::snprintf(buffer, sizeof(buffer), "%.17g", data.X(i, j));
      out << buffer << ",";
    }
    out << (data.y[i] > 0 ? "1" : "-1") << "\n";
  }
  if (!out) throw ParseError("failed writing " + path.string());
}

}  // namespace interpsel
