#pragma once

// Reservoir spectral-density models gamma(x), KMS validation, optional
// Lamb-shift coefficient tables. Baths enter the pipeline only through
// gamma_{alpha beta}(x); no reservoir microphysics here.

#include "flq/types.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flq {

enum class BathModel {
  kOhmicCubedThermal,  // gamma(x) = A x^3 / (1 - e^{-beta x})
  kVacuumCutoff,       // gamma(x) = A x^3 for x >= 0, else 0
  kFlat,               // gamma(x) = gamma0
  kTabulated           // sorted (x, gamma) pairs, linear interpolation
};

class SpectralDensity {
 public:
  static SpectralDensity ohmic_cubed_thermal(double amplitude, double beta);
  static SpectralDensity vacuum_cutoff(double amplitude);
  static SpectralDensity flat(double gamma0);
  // points sorted by x strictly ascending, gamma >= 0; queries outside the
  // support raise an out-of-range error (no extrapolation).
  static SpectralDensity tabulated(std::vector<std::pair<double, double>> points);

  BathModel model() const { return model_; }
  double amplitude() const { return amplitude_; }
  double beta() const { return beta_; }

  double operator()(double x) const { return gamma(x); }
  double gamma(double x) const;

  // max_x |gamma(-x) - e^{-beta x} gamma(x)| / max(gamma(x), 1e-300)
  double kms_residual(double beta, const std::vector<double>& x_grid) const;

 private:
  SpectralDensity() = default;
  BathModel model_ = BathModel::kFlat;
  double amplitude_ = 0.0;
  double beta_ = 0.0;
  double gamma0_ = 0.0;
  std::vector<std::pair<double, double>> table_;
};

// A set of baths keyed by coupling label. Independent scalar baths form a
// block-diagonal [gamma_{alpha beta}]; an explicit Hermitian matrix table may
// couple several labels.
class BathSet {
 public:
  void bind(const std::string& label, SpectralDensity bath);
  // Matrix-valued block over `labels`; each grid point carries a Hermitian
  // PSD matrix (validated at construction).
  void bind_matrix(std::vector<std::string> labels,
                   std::vector<std::pair<double, Matrix>> points);

  bool has(const std::string& label) const;
  const SpectralDensity* scalar(const std::string& label) const;

  // [gamma_{alpha beta}(x)] over the given labels (missing label -> error).
  Matrix coefficient_matrix(const std::vector<std::string>& labels,
                            double x) const;

  // All bound scalar thermal baths, for KMS reporting.
  std::vector<std::pair<std::string, const SpectralDensity*>> scalars() const;

 private:
  struct MatrixBlock {
    std::vector<std::string> labels;
    std::vector<std::pair<double, Matrix>> points;
  };
  Matrix interpolate_block(const MatrixBlock& b, double x) const;
  std::map<std::string, SpectralDensity> scalar_;
  std::vector<MatrixBlock> blocks_;
};

// Hermitian Lamb-shift coefficients sigma_{alpha beta}(x) on a frequency grid.
struct LambShiftTable {
  std::vector<std::string> labels;
  std::map<double, Matrix> sigma;  // x -> Hermitian matrix over labels

  Matrix at(double x, double x_tol) const;
  void validate() const;
};

enum class LambShiftMethod { kZero, kPrincipalValue, kUserTable };

struct LambShiftConfig {
  LambShiftMethod method = LambShiftMethod::kZero;
  // principal-value quadrature window and controls
  double domain_lo = -10.0;
  double domain_hi = 10.0;
  int base_points = 2000;
  double pv_tol = 1e-6;
  int max_refinements = 6;
  std::optional<LambShiftTable> user_table;
};

// sigma(x) = (1/2pi) PV int gamma(y)/(x - y) dy over the configured window,
// symmetric exclusion around y = x, Richardson-style refinement until two
// successive resolutions agree within pv_tol.
double principal_value_sigma(const SpectralDensity& bath, double x,
                             const LambShiftConfig& cfg);

// Builds sigma_{alpha beta}(x) for scalar (diagonal) baths at the grid points.
LambShiftTable lamb_shift(const BathSet& baths,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& x_grid,
                          const LambShiftConfig& cfg);

}  // namespace flq
