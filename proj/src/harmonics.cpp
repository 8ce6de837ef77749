#include "flq/harmonics.hpp"

#include "flq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flq {

void CouplingSet::add(std::string label, Matrix op) {
  require_hermitian(op, "Coupling", 1e-12);
  for (const auto& c : items_)
    if (c.label == label)
      throw ValidationError("CouplingSet: duplicate label '" + label + "'");
  if (!items_.empty() && items_.front().op.rows() != op.rows())
    throw ValidationError("CouplingSet: dimension mismatch");
  items_.push_back(Coupling{std::move(label), std::move(op)});
}

std::vector<std::string> CouplingSet::labels() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const auto& c : items_) out.push_back(c.label);
  return out;
}

Eigen::Index CouplingSet::dim() const {
  return items_.empty() ? 0 : items_.front().op.rows();
}

Matrix interaction_coupling(const FloquetDecomposition& f,
                            const PeriodicHamiltonian& h, const Matrix& s,
                            double t, const PropagatorConfig& cfg) {
  const Matrix u = propagate(h, f.t0, t, cfg);
  return u.adjoint() * s * u;
}

FourierModes fourier_modes(const FloquetDecomposition& f,
                           const PeriodicHamiltonian& h, const Matrix& s,
                           int q_max, int n_samples,
                           const PropagatorConfig& cfg) {
  if (q_max < 0) throw ValidationError("fourier_modes: q_max must be >= 0");
  if (n_samples < 4 * q_max + 4 || (n_samples & (n_samples - 1)) != 0)
    throw ValidationError(
        "fourier_modes: n_samples must be a power of two >= 4*q_max + 4");
  const Eigen::Index d = s.rows();
  const double T = f.period;

  // Sample P^{-1} S P on a uniform grid over [t0, t0 + T).
  std::vector<double> grid(static_cast<size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j)
    grid[static_cast<size_t>(j)] = f.t0 + T * j / n_samples;
  const std::vector<Matrix> us = propagate_grid(h, f.t0, grid, cfg);
  std::vector<Matrix> samples;
  samples.reserve(static_cast<size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j) {
    const Matrix p = periodic_part_from_u(f, us[static_cast<size_t>(j)],
                                          grid[static_cast<size_t>(j)]);
    samples.push_back(p.adjoint() * s * p);
  }

  FourierModes out;
  const double step = 2.0 * kPi / n_samples;
  for (int bin = 0; bin < n_samples; ++bin) {
    const int q = bin <= n_samples / 2 ? bin : bin - n_samples;
    Matrix sq = Matrix::Zero(d, d);
    for (int j = 0; j < n_samples; ++j)
      sq += std::exp(Complex(0.0, -step * bin * j)) *
            samples[static_cast<size_t>(j)];
    sq /= static_cast<double>(n_samples);
    if (std::abs(q) <= q_max)
      out.modes[q] = std::move(sq);
    else
      out.tail += sq.norm();
  }
  return out;
}

namespace {

struct FreqClass {
  double value = 0.0;
  double spread = 0.0;
  std::vector<std::pair<size_t, size_t>> pairs;  // (cluster a, cluster b)
};

std::vector<FreqClass> cluster_differences(const SpectralClusters& sc,
                                           double freq_tol) {
  struct Diff {
    double value;
    size_t a, b;
  };
  std::vector<Diff> diffs;
  for (size_t a = 0; a < sc.values.size(); ++a)
    for (size_t b = 0; b < sc.values.size(); ++b)
      diffs.push_back({sc.values[a] - sc.values[b], a, b});
  std::sort(diffs.begin(), diffs.end(),
            [](const Diff& x, const Diff& y) { return x.value < y.value; });

  std::vector<FreqClass> classes;
  size_t k = 0;
  while (k < diffs.size()) {
    size_t j = k + 1;
    while (j < diffs.size() && diffs[j].value - diffs[j - 1].value <= freq_tol)
      ++j;
    FreqClass fc;
    fc.spread = diffs[j - 1].value - diffs[k].value;
    double mean = 0.0;
    for (size_t i = k; i < j; ++i) {
      mean += diffs[i].value;
      fc.pairs.emplace_back(diffs[i].a, diffs[i].b);
    }
    fc.value = mean / static_cast<double>(j - k);
    if (fc.spread > 10.0 * freq_tol) {
      std::ostringstream msg;
      msg << "frequency_split: degeneracy ambiguity, a single-linkage chain "
             "spans "
          << fc.spread << " (> 10*freq_tol = " << 10.0 * freq_tol
          << "); members:";
      for (size_t i = k; i < j; ++i)
        msg << " (eps[" << diffs[i].a << "]-eps[" << diffs[i].b
            << "]=" << diffs[i].value << ")";
      throw ValidationError(msg.str());
    }
    classes.push_back(std::move(fc));
    k = j;
  }
  return classes;
}

bool identity_like(const Matrix& op, double rel_tol) {
  const Eigen::Index d = op.rows();
  const Complex c = op.trace() / static_cast<double>(d);
  if (std::abs(c) == 0.0) return false;
  return (op - c * Matrix::Identity(d, d)).norm() <= rel_tol * op.norm();
}

}  // namespace

std::vector<JumpHarmonic> frequency_split(const FloquetDecomposition& f,
                                          const std::map<int, Matrix>& modes,
                                          double freq_tol,
                                          const HarmonicOptions& opt,
                                          const std::string& label) {
  if (!(freq_tol > 0.0))
    throw ValidationError("frequency_split: freq_tol must be > 0");
  const SpectralClusters sc = cluster_quasienergies(
      f, opt.eigen_cluster_tol_rel * f.omega_drive);
  const std::vector<FreqClass> classes = cluster_differences(sc, freq_tol);

  double s_norm = 0.0;
  for (const auto& [q, m] : modes) s_norm = std::max(s_norm, m.norm());

  std::vector<JumpHarmonic> out;
  for (const auto& fc : classes) {
    for (const auto& [q, sq] : modes) {
      Matrix op = Matrix::Zero(sq.rows(), sq.cols());
      for (const auto& [a, b] : fc.pairs)
        op += sc.projectors[a] * sq * sc.projectors[b];
      if (op.norm() < opt.drop_tol * std::max(s_norm, 1e-300)) continue;
      JumpHarmonic jh;
      jh.alpha = label;
      jh.omega = fc.value;
      jh.q = q;
      jh.op = std::move(op);
      jh.shifted = fc.value + q * f.omega_drive;
      jh.identity_like = identity_like(jh.op, opt.identity_tol);
      jh.class_spread = fc.spread;
      // construction sanity: [Hbar, S(w,q)] = w S(w,q)
      const Matrix comm = f.hbar * jh.op - jh.op * f.hbar;
      const double resid = (comm - jh.omega * jh.op).norm();
      const double tol =
          std::max(opt.comm_tol_rel, 1.5 * fc.spread) * jh.op.norm();
      if (resid > tol)
        throw NumericError(
            "frequency_split: commutation residual " + std::to_string(resid) +
            " exceeds tolerance for omega=" + std::to_string(jh.omega));
      out.push_back(std::move(jh));
    }
  }
  return out;
}

HarmonicSet decompose_couplings(const FloquetDecomposition& f,
                                const PeriodicHamiltonian& h,
                                const CouplingSet& couplings,
                                const PropagatorConfig& cfg,
                                const HarmonicOptions& opt) {
  HarmonicSet set;
  set.omega_drive = f.omega_drive;
  set.t0 = f.t0;
  set.q_max = opt.q_max;
  const double freq_tol = opt.freq_tol_rel * f.omega_drive;

  for (const auto& c : couplings.items()) {
    int q_max = opt.q_max;
    int n_samples = opt.n_samples;
    while (n_samples < 4 * q_max + 4) n_samples *= 2;
    FourierModes fm;
    for (;;) {
      fm = fourier_modes(f, h, c.op, q_max, n_samples, cfg);
      if (fm.tail <= opt.tail_target * std::max(c.op.norm(), 1e-300) ||
          q_max >= opt.q_max_cap)
        break;
      q_max = std::min(2 * q_max, opt.q_max_cap);
      while (n_samples < 4 * q_max + 4) n_samples *= 2;
    }
    set.q_max = std::max(set.q_max, q_max);
    set.tail_mass[c.label] = fm.tail;
    auto harmonics = frequency_split(f, fm.modes, freq_tol, opt, c.label);
    for (auto& jh : harmonics) set.harmonics.push_back(std::move(jh));
  }

  // collected class representatives
  std::vector<double> freqs;
  for (const auto& jh : set.harmonics) freqs.push_back(jh.omega);
  std::sort(freqs.begin(), freqs.end());
  freqs.erase(std::unique(freqs.begin(), freqs.end(),
                          [&](double a, double b) {
                            return std::abs(a - b) <= freq_tol;
                          }),
              freqs.end());
  set.frequencies = std::move(freqs);
  return set;
}

}  // namespace flq
