#include "flq/bath.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace flq {

SpectralDensity SpectralDensity::ohmic_cubed_thermal(double amplitude,
                                                     double beta) {
  if (!(amplitude > 0.0))
    throw ValidationError("SpectralDensity: amplitude A must be positive");
  if (!(beta > 0.0))
    throw ValidationError(
        "SpectralDensity: thermal model requires beta > 0 (the x->0 limit "
        "diverges at beta = 0)");
  SpectralDensity s;
  s.model_ = BathModel::kOhmicCubedThermal;
  s.amplitude_ = amplitude;
  s.beta_ = beta;
  return s;
}

SpectralDensity SpectralDensity::vacuum_cutoff(double amplitude) {
  if (!(amplitude > 0.0))
    throw ValidationError("SpectralDensity: amplitude A must be positive");
  SpectralDensity s;
  s.model_ = BathModel::kVacuumCutoff;
  s.amplitude_ = amplitude;
  return s;
}

SpectralDensity SpectralDensity::flat(double gamma0) {
  if (gamma0 < 0.0)
    throw ValidationError("SpectralDensity: flat rate must be >= 0");
  SpectralDensity s;
  s.model_ = BathModel::kFlat;
  s.gamma0_ = gamma0;
  return s;
}

SpectralDensity SpectralDensity::tabulated(
    std::vector<std::pair<double, double>> points) {
  if (points.size() < 2)
    throw ValidationError("SpectralDensity: tabulated model needs >= 2 points");
  for (size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !(points[i].first > points[i - 1].first))
      throw ValidationError("SpectralDensity: tabulated x must be strictly ascending");
    if (points[i].second < 0.0)
      throw ValidationError("SpectralDensity: tabulated gamma must be >= 0");
  }
  SpectralDensity s;
  s.model_ = BathModel::kTabulated;
  s.table_ = std::move(points);
  return s;
}

double SpectralDensity::gamma(double x) const {
  switch (model_) {
    case BathModel::kOhmicCubedThermal: {
      if (x == 0.0) return 0.0;  // A x^2 / beta -> 0
      const double denom = -std::expm1(-beta_ * x);
      return amplitude_ * x * x * x / denom;
    }
    case BathModel::kVacuumCutoff:
      return x >= 0.0 ? amplitude_ * x * x * x : 0.0;
    case BathModel::kFlat:
      return gamma0_;
    case BathModel::kTabulated: {
      if (x < table_.front().first || x > table_.back().first)
        throw ValidationError(
            "SpectralDensity: tabulated model queried outside support at x=" +
            std::to_string(x));
      auto it = std::lower_bound(
          table_.begin(), table_.end(), x,
          [](const auto& p, double v) { return p.first < v; });
      if (it == table_.begin()) return it->second;
      const auto hi = it;
      const auto lo = it - 1;
      const double w = (x - lo->first) / (hi->first - lo->first);
      return (1.0 - w) * lo->second + w * hi->second;
    }
  }
  return 0.0;
}

double SpectralDensity::kms_residual(double beta,
                                     const std::vector<double>& x_grid) const {
  if (!(beta > 0.0)) throw ValidationError("kms_residual: beta must be > 0");
  double worst = 0.0;
  for (double x : x_grid) {
    const double g = gamma(x);
    const double r =
        std::abs(gamma(-x) - std::exp(-beta * x) * g) / std::max(g, 1e-300);
    worst = std::max(worst, r);
  }
  return worst;
}

void BathSet::bind(const std::string& label, SpectralDensity bath) {
  if (has(label))
    throw ValidationError("BathSet: coupling label already bound: " + label);
  scalar_.emplace(label, std::move(bath));
}

void BathSet::bind_matrix(std::vector<std::string> labels,
                          std::vector<std::pair<double, Matrix>> points) {
  if (labels.empty() || points.size() < 2)
    throw ValidationError("BathSet: matrix block needs labels and >= 2 points");
  const auto n = static_cast<Eigen::Index>(labels.size());
  for (const auto& l : labels)
    if (has(l))
      throw ValidationError("BathSet: coupling label already bound: " + l);
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& [x, m] = points[i];
    if (i > 0 && !(x > points[i - 1].first))
      throw ValidationError("BathSet: matrix block x must be strictly ascending");
    if (m.rows() != n || m.cols() != n)
      throw ValidationError("BathSet: matrix block dimension mismatch");
    if (hermiticity_defect(m) > 1e-10 * std::max(1.0, m.norm()))
      throw ValidationError("BathSet: matrix gamma block not Hermitian at x=" +
                            std::to_string(x));
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (m + m.adjoint())),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw ValidationError("BathSet: matrix gamma block not PSD at x=" +
                            std::to_string(x));
  }
  blocks_.push_back(MatrixBlock{std::move(labels), std::move(points)});
}

bool BathSet::has(const std::string& label) const {
  if (scalar_.count(label)) return true;
  for (const auto& b : blocks_)
    for (const auto& l : b.labels)
      if (l == label) return true;
  return false;
}

const SpectralDensity* BathSet::scalar(const std::string& label) const {
  auto it = scalar_.find(label);
  return it == scalar_.end() ? nullptr : &it->second;
}

Matrix BathSet::interpolate_block(const MatrixBlock& b, double x) const {
  if (x < b.points.front().first || x > b.points.back().first)
    throw ValidationError(
        "BathSet: matrix gamma block queried outside support at x=" +
        std::to_string(x));
  auto it = std::lower_bound(
      b.points.begin(), b.points.end(), x,
      [](const auto& p, double v) { return p.first < v; });
  if (it == b.points.begin()) return it->second;
  const auto hi = it;
  const auto lo = it - 1;
  const double w = (x - lo->first) / (hi->first - lo->first);
  return (1.0 - w) * lo->second + w * hi->second;
}

Matrix BathSet::coefficient_matrix(const std::vector<std::string>& labels,
                                   double x) const {
  const auto n = static_cast<Eigen::Index>(labels.size());
  Matrix g = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto* s = scalar(labels[static_cast<size_t>(i)]);
    if (s) {
      g(i, i) = s->gamma(x);
      continue;
    }
    bool found = false;
    for (const auto& b : blocks_) {
      auto pos_i = std::find(b.labels.begin(), b.labels.end(),
                             labels[static_cast<size_t>(i)]);
      if (pos_i == b.labels.end()) continue;
      found = true;
      const Matrix block = interpolate_block(b, x);
      for (Eigen::Index j = 0; j < n; ++j) {
        auto pos_j = std::find(b.labels.begin(), b.labels.end(),
                               labels[static_cast<size_t>(j)]);
        if (pos_j == b.labels.end()) continue;
        g(i, j) = block(pos_i - b.labels.begin(), pos_j - b.labels.begin());
      }
      break;
    }
    if (!found)
      throw ValidationError("BathSet: no bath bound to coupling label '" +
                            labels[static_cast<size_t>(i)] + "'");
  }
  return g;
}

std::vector<std::pair<std::string, const SpectralDensity*>> BathSet::scalars()
    const {
  std::vector<std::pair<std::string, const SpectralDensity*>> out;
  for (const auto& [l, s] : scalar_) out.emplace_back(l, &s);
  return out;
}

Matrix LambShiftTable::at(double x, double x_tol) const {
  for (const auto& [xi, m] : sigma)
    if (std::abs(xi - x) <= x_tol) return m;
  throw ValidationError("LambShiftTable: no entry near x=" + std::to_string(x));
}

void LambShiftTable::validate() const {
  const auto n = static_cast<Eigen::Index>(labels.size());
  for (const auto& [x, m] : sigma) {
    if (m.rows() != n || m.cols() != n)
      throw ValidationError("LambShiftTable: matrix dimension mismatch");
    if (hermiticity_defect(m) > 1e-10 * std::max(1.0, m.norm()))
      throw ValidationError("LambShiftTable: sigma not Hermitian at x=" +
                            std::to_string(x));
  }
}

namespace {

// Trapezoid PV quadrature with a symmetric window of half-width `excl`
// removed around the pole.
double pv_once(const SpectralDensity& bath, double x, double lo, double hi,
               int points) {
  const double h = (hi - lo) / points;
  const double excl = 2.0 * h;
  double acc = 0.0;
  for (int k = 0; k <= points; ++k) {
    const double y = lo + k * h;
    if (std::abs(y - x) <= excl) continue;
    const double w = (k == 0 || k == points) ? 0.5 : 1.0;
    acc += w * bath.gamma(y) / (x - y);
  }
  return acc * h / (2.0 * kPi);
}

}  // namespace

double principal_value_sigma(const SpectralDensity& bath, double x,
                             const LambShiftConfig& cfg) {
  if (!(cfg.domain_hi > cfg.domain_lo))
    throw ValidationError("principal_value_sigma: empty integration window");
  double prev = pv_once(bath, x, cfg.domain_lo, cfg.domain_hi, cfg.base_points);
  int points = cfg.base_points;
  for (int r = 0; r < cfg.max_refinements; ++r) {
    points *= 2;
    const double cur = pv_once(bath, x, cfg.domain_lo, cfg.domain_hi, points);
    if (std::abs(cur - prev) <= cfg.pv_tol * std::max(1.0, std::abs(cur)))
      return cur;
    prev = cur;
  }
  throw NumericError(
      "principal_value_sigma: refinement did not converge within pv_tol at x=" +
      std::to_string(x));
}

LambShiftTable lamb_shift(const BathSet& baths,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& x_grid,
                          const LambShiftConfig& cfg) {
  LambShiftTable table;
  table.labels = labels;
  const auto n = static_cast<Eigen::Index>(labels.size());
  switch (cfg.method) {
    case LambShiftMethod::kZero:
      for (double x : x_grid) table.sigma[x] = Matrix::Zero(n, n);
      break;
    case LambShiftMethod::kPrincipalValue:
      for (double x : x_grid) {
        Matrix m = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
          const auto* s = baths.scalar(labels[static_cast<size_t>(i)]);
          if (!s)
            throw ValidationError(
                "lamb_shift: principal-value method needs scalar baths");
          m(i, i) = principal_value_sigma(*s, x, cfg);
        }
        table.sigma[x] = m;
      }
      break;
    case LambShiftMethod::kUserTable:
      if (!cfg.user_table)
        throw ValidationError("lamb_shift: user-table method without a table");
      table = *cfg.user_table;
      table.validate();
      break;
  }
  return table;
}

}  // namespace flq
