#include "covdist/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "covdist/metrics.hpp"

namespace covdist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAtomTol = 1e-9;

bool is_power_of_two(std::size_t m) { return m >= 2 && (m & (m - 1)) == 0; }

// Map theta into [-pi, pi).
double wrap(double theta) {
  double t = std::fmod(theta + kPi, 2.0 * kPi);
  if (t < 0) t += 2.0 * kPi;
  t -= kPi;
  return t >= kPi ? -kPi : t;
}

bool self_mirrored(double theta) {
  return std::abs(theta) <= kAtomTol || std::abs(theta + kPi) <= kAtomTol;
}

// Sorted lines with coincident locations merged.
std::vector<SpectralLine> merge_lines(std::vector<SpectralLine> lines) {
  std::sort(lines.begin(), lines.end(),
            [](const SpectralLine& a, const SpectralLine& b) { return a.theta < b.theta; });
  std::vector<SpectralLine> out;
  for (const auto& l : lines) {
    if (!out.empty() && std::abs(out.back().theta - l.theta) <= kAtomTol) {
      out.back().mass += l.mass;
    } else {
      out.push_back(l);
    }
  }
  return out;
}

// Lines of f and g aligned on the union of their locations.
struct AlignedLine {
  double theta;
  double f;
  double g;
};

std::vector<AlignedLine> align(const std::vector<SpectralLine>& f, const std::vector<SpectralLine>& g) {
  std::vector<AlignedLine> out;
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    if (j == g.size() || (i < f.size() && f[i].theta < g[j].theta - kAtomTol)) {
      out.push_back({f[i].theta, f[i].mass, 0.0});
      ++i;
    } else if (i == f.size() || g[j].theta < f[i].theta - kAtomTol) {
      out.push_back({g[j].theta, 0.0, g[j].mass});
      ++j;
    } else {
      out.push_back({f[i].theta, f[i].mass, g[j].mass});
      ++i;
      ++j;
    }
  }
  return out;
}

void require_same_grid(const SpectralMeasure& f, const SpectralMeasure& g) {
  if (f.grid_size() != g.grid_size()) {
    std::ostringstream os;
    os << "spectral grids differ: " << f.grid_size() << " vs " << g.grid_size();
    throw InputError(os.str());
  }
}

template <typename Fn>
SpectralMeasure combine(const SpectralMeasure& f, const SpectralMeasure& g, Fn&& op) {
  require_same_grid(f, g);
  std::vector<double> v(f.grid_size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = op(f.values()[j], g.values()[j]);
  std::vector<SpectralLine> lines;
  for (const auto& a : align(f.atoms(), g.atoms())) {
    const double m = op(a.f, a.g);
    if (m > 0) lines.push_back({a.theta, m});
  }
  return SpectralMeasure(std::move(v), std::move(lines));
}

}  // namespace

SpectralMeasure::SpectralMeasure(std::size_t grid_size) : values_(grid_size, 0.0) {
  if (!is_power_of_two(grid_size)) throw InputError("grid_size must be a power of two >= 2");
}

SpectralMeasure::SpectralMeasure(std::vector<double> values, std::vector<SpectralLine> atoms)
    : values_(std::move(values)) {
  const std::size_t m = values_.size();
  if (!is_power_of_two(m)) throw InputError("grid_size must be a power of two >= 2");
  double vmax = 0;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0) throw InputError("spectral density values must be finite and >= 0");
    vmax = std::max(vmax, v);
  }
  // theta_j and theta_{m-1-j} are mirror images on the midpoint grid.
  double asym = 0;
  for (std::size_t j = 0; j < m / 2; ++j) {
    const double a = values_[j], b = values_[m - 1 - j];
    asym = std::max(asym, std::abs(a - b));
    values_[j] = values_[m - 1 - j] = 0.5 * (a + b);
  }
  if (asym > 1e-12 * std::max(1.0, vmax)) warn("spectral density not even; symmetrized");

  for (auto& a : atoms) {
    if (!std::isfinite(a.theta) || !std::isfinite(a.mass) || a.mass < 0) {
      throw InputError("spectral lines need finite theta and mass >= 0");
    }
    a.theta = wrap(a.theta);
  }
  auto merged = merge_lines(std::move(atoms));

  std::vector<SpectralLine> even;
  bool unpaired = false;
  for (const auto& a : merged) {
    if (self_mirrored(a.theta)) {
      even.push_back({std::abs(a.theta) <= kAtomTol ? 0.0 : -kPi, a.mass});
      continue;
    }
    if (a.theta < 0) continue;  // handled with its positive partner
    double partner = 0;
    for (const auto& b : merged) {
      if (std::abs(b.theta + a.theta) <= kAtomTol) partner = b.mass;
    }
    if (std::abs(partner - a.mass) > 1e-12 * std::max(1.0, a.mass)) unpaired = true;
    const double avg = 0.5 * (a.mass + partner);
    even.push_back({-a.theta, avg});
    even.push_back({a.theta, avg});
  }
  // Negative-side lines without a positive partner.
  for (const auto& a : merged) {
    if (a.theta >= 0 || self_mirrored(a.theta)) continue;
    bool found = false;
    for (const auto& b : merged) found = found || std::abs(b.theta + a.theta) <= kAtomTol;
    if (!found) {
      unpaired = true;
      even.push_back({a.theta, 0.5 * a.mass});
      even.push_back({-a.theta, 0.5 * a.mass});
    }
  }
  if (unpaired) warn("spectral lines not symmetric in theta; mirrored");
  atoms_.clear();
  for (const auto& a : merge_lines(std::move(even))) {
    if (a.mass > 0) atoms_.push_back(a);
  }
}

SpectralMeasure SpectralMeasure::constant(double level, std::size_t grid_size) {
  return SpectralMeasure(std::vector<double>(grid_size, level), {});
}

SpectralMeasure SpectralMeasure::line(double theta, double mass, std::size_t grid_size) {
  return SpectralMeasure(std::vector<double>(grid_size, 0.0), {{theta, mass}});
}

double SpectralMeasure::grid_point(std::size_t j, std::size_t grid_size) {
  return -kPi + 2.0 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(grid_size);
}

double SpectralMeasure::total_mass() const {
  double acc = 0;
  for (double v : values_) acc += v;
  acc /= static_cast<double>(values_.size());
  for (const auto& a : atoms_) acc += a.mass;
  return acc;
}

SpectralMeasure SpectralMeasure::operator+(const SpectralMeasure& other) const {
  require_same_grid(*this, other);
  std::vector<double> v(values_);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += other.values_[j];
  std::vector<SpectralLine> lines(atoms_);
  lines.insert(lines.end(), other.atoms_.begin(), other.atoms_.end());
  return SpectralMeasure(std::move(v), std::move(lines));
}

Perturbations optimal_perturbations(const SpectralMeasure& f, const SpectralMeasure& g) {
  return {combine(f, g, [](double a, double b) { return std::max(b - a, 0.0); }),
          combine(f, g, [](double a, double b) { return std::max(a - b, 0.0); }),
          combine(f, g, [](double a, double b) { return std::max(a, b); })};
}

double l1_distance(const SpectralMeasure& f, const SpectralMeasure& g) {
  const auto p = optimal_perturbations(f, g);
  return p.psi.total_mass() + p.psi_hat.total_mass();
}

NormalizedRatios normalized_ratios(const SpectralMeasure& f, const SpectralMeasure& g) {
  const auto p = optimal_perturbations(f, g);
  const double env_mass = p.envelope.total_mass();
  if (!(env_mass > 0)) throw DomainError("normalized_ratios: both measures are zero");
  NormalizedRatios out;
  out.total = (p.psi.total_mass() + p.psi_hat.total_mass()) / env_mass;
  // Lines have Lebesgue measure zero and do not enter the pointwise ratio.
  double acc = 0;
  const auto& env = p.envelope.values();
  for (std::size_t j = 0; j < env.size(); ++j) {
    if (env[j] > 0) acc += (p.psi.values()[j] + p.psi_hat.values()[j]) / env[j];
  }
  out.pointwise = acc / static_cast<double>(env.size());
  return out;
}

CovarianceSequence cov_sequence(const SpectralMeasure& f, int n) {
  if (n < 1) throw InputError("cov_sequence: n must be >= 1");
  const std::size_t m = f.grid_size();
  Vectord r = Vectord::Zero(n);
  for (int k = 0; k < n; ++k) {
    double acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc += f.values()[j] * std::cos(k * SpectralMeasure::grid_point(j, m));
    acc /= static_cast<double>(m);
    for (const auto& a : f.atoms()) acc += a.mass * std::cos(k * a.theta);
    r(k) = acc;
  }
  return {r};
}

CovarianceSequence ma_autocovariance(const MaModel& model, int n) {
  if (n < 1) throw InputError("ma_autocovariance: n must be >= 1");
  if (model.coeffs.empty()) throw InputError("ma_autocovariance: empty coefficient list");
  const int q = static_cast<int>(model.coeffs.size()) - 1;
  Vectord r = Vectord::Zero(n);
  for (int k = 0; k < n && k <= q; ++k) {
    for (int j = 0; j + k <= q; ++j) r(k) += model.coeffs[j] * model.coeffs[j + k];
  }
  return {r};
}

double GaussianStream::uniform() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * kPi * uniform();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

TimeSeries simulate_ma(const MaModel& model, int length, std::uint64_t seed) {
  if (length < 1) throw InputError("simulate_ma: length must be >= 1");
  if (model.coeffs.empty()) throw InputError("simulate_ma: empty coefficient list");
  const int q = static_cast<int>(model.coeffs.size()) - 1;
  GaussianStream rng(seed);
  // The first q draws are the pre-sample noise w_{-q} .. w_{-1}.
  std::vector<double> w(static_cast<std::size_t>(length + q));
  for (auto& x : w) x = rng.next();

  TimeSeries out;
  out.seed = seed;
  out.samples.resize(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) {
    double acc = 0;
    for (int j = 0; j <= q; ++j) acc += model.coeffs[j] * w[static_cast<std::size_t>(k + q - j)];
    out.samples[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

SymMatrixd sample_covariance(const TimeSeries& y, int n) {
  if (n < 1) throw InputError("sample_covariance: n must be >= 1");
  const int t = static_cast<int>(y.samples.size());
  if (t < n) throw InputError("sample_covariance: series shorter than window");
  const Eigen::Map<const Vectord> ys(y.samples.data(), t);
  SymMatrixd acc = SymMatrixd::Zero(n, n);
  const int windows = t - n + 1;
  for (int l = 0; l < windows; ++l) {
    const auto x = ys.segment(l, n);
    acc.noalias() += x * x.transpose();
  }
  return acc / static_cast<double>(windows);
}

std::vector<ConvergenceRow> convergence_experiment(const SpectralMeasure& f, const SpectralMeasure& g,
                                                   const std::vector<int>& n_list,
                                                   const SolverOptions& opts) {
  if (!std::is_sorted(n_list.begin(), n_list.end())) {
    throw InputError("convergence_experiment: n_list must be ascending");
  }
  const double l1 = l1_distance(f, g);
  std::vector<ConvergenceRow> rows;
  for (int n : n_list) {
    ConvergenceRow row;
    row.n = n;
    row.l1 = l1;
    try {
      const auto rf = cov_sequence(f, n).toeplitz();
      const auto rg = cov_sequence(g, n).toeplitz();
      const auto rep = delta(rf, rg, StructureTag::toeplitz(), opts);
      row.delta_t = rep.delta;
      row.status = rep.status;
      row.iterations = rep.iterations;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

bool convergence_is_monotone(const std::vector<ConvergenceRow>& rows, double tol) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].error) return false;
    if (rows[i].delta_t > rows[i].l1 + tol) return false;
    if (i > 0 && rows[i].delta_t < rows[i - 1].delta_t - tol) return false;
  }
  return true;
}

}  // namespace covdist
