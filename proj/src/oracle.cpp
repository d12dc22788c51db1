#include "cqt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "cqt/detail/optimize.hpp"
#include "cqt/error.hpp"

namespace cqt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFefAgreement = 1e-6;

const Matrix4c& magic() {
  static const Matrix4c m = [] {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    Matrix4c b = Matrix4c::Zero();
    b(0, 0) = s;  // Phi+
    b(3, 0) = s;
    b(0, 1) = i * s;  // i Phi-
    b(3, 1) = -i * s;
    b(1, 2) = i * s;  // i Psi+
    b(2, 2) = i * s;
    b(1, 3) = s;  // Psi-
    b(2, 3) = -s;
    return b;
  }();
  return m;
}

Vector4c phi_plus() {
  Vector4c v = Vector4c::Zero();
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

// V = Rz(alpha) Ry(beta) Rz(gamma).
Matrix2c su2(double alpha, double beta, double gamma) {
  const Complex i(0.0, 1.0);
  const double c = std::cos(beta / 2.0);
  const double s = std::sin(beta / 2.0);
  Matrix2c v;
  v(0, 0) = std::exp(-i * (alpha + gamma) / 2.0) * c;
  v(0, 1) = -std::exp(-i * (alpha - gamma) / 2.0) * s;
  v(1, 0) = std::exp(i * (alpha - gamma) / 2.0) * s;
  v(1, 1) = std::exp(i * (alpha + gamma) / 2.0) * c;
  return v;
}

Vector4c rotated_phi_plus(std::span<const double> angles) {
  const Matrix2c v = su2(angles[0], angles[1], angles[2]);
  Matrix4c k = Matrix4c::Zero();
  k.block<2, 2>(0, 0) = v;
  k.block<2, 2>(2, 2) = v;
  return k * phi_plus();
}

}  // namespace

Eigen::Vector2cd MeasurementBasis::state(int outcome) const {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  Eigen::Vector2cd v;
  if (outcome == 0) {
    v << c, e * s;
  } else {
    v << -std::conj(e) * s, c;
  }
  return v;
}

Matrix2c MeasurementBasis::projector(int outcome) const {
  const Eigen::Vector2cd v = state(outcome);
  return v * v.adjoint();
}

MeasurementBasis MeasurementBasis::canonical() const {
  double t = std::fmod(theta, 2.0 * kPi);
  double p = phi;
  if (t < 0.0) t += 2.0 * kPi;
  if (t > kPi) {
    t = 2.0 * kPi - t;
    p += kPi;
  }
  p = std::fmod(p, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  return {t, p};
}

MeasurementBasis z_basis() { return {0.0, 0.0}; }
MeasurementBasis x_basis() { return {kPi / 2.0, 0.0}; }

ConditionalState conditional_state(const Matrix8c& rho, const MeasurementBasis& basis, int outcome) {
  const Eigen::Vector2cd v = basis.state(outcome);
  Matrix4c unnorm = Matrix4c::Zero();
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      unnorm += (std::conj(v(s)) * v(t)) * rho.block<4, 4>(4 * s, 4 * t);
    }
  }
  ConditionalState out;
  out.prob = unnorm.trace().real();
  if (out.prob <= kZeroBranchProb) {
    out.prob = std::max(out.prob, 0.0);
    out.zero_probability = true;
    return out;
  }
  out.rho_ab = unnorm / out.prob;
  return out;
}

ConditionalState conditional_state(const DensityMatrix& rho, const MeasurementBasis& basis, int outcome) {
  return conditional_state(rho.as8(), basis, outcome);
}

Matrix4c magic_basis() { return magic(); }

double fef_value(const Matrix4c& rho) {
  const Eigen::Matrix4d real_part = (magic().adjoint() * rho * magic()).real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(real_part, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(3);
}

FefResult fully_entangled_fraction(const Matrix4c& rho) {
  const Eigen::Matrix4d real_part = (magic().adjoint() * rho * magic()).real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(real_part);
  const Eigen::Vector4d top = solver.eigenvectors().col(3);
  const Vector4c phi = magic() * top.cast<Complex>();
  return {solver.eigenvalues()(3), phi * phi.adjoint()};
}

FefResult fef_direct(const Matrix4c& rho) {
  const auto overlap = [&](std::span<const double> angles) {
    const Vector4c phi = rotated_phi_plus(angles);
    return (phi.adjoint() * rho * phi)(0, 0).real();
  };

  // Coarse Euler-angle grid, then polish the few best cells.
  struct Cell {
    double value;
    std::vector<double> x;
  };
  std::vector<Cell> cells;
  constexpr int kA = 12;
  constexpr int kB = 7;
  for (int i = 0; i < kA; ++i) {
    for (int j = 0; j < kB; ++j) {
      for (int k = 0; k < kA; ++k) {
        std::vector<double> x = {2.0 * kPi * i / kA, kPi * j / (kB - 1), 2.0 * kPi * k / kA};
        const double v = overlap(x);
        cells.push_back({v, std::move(x)});
      }
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& l, const Cell& r) { return l.value > r.value; });

  detail::MaximumNd best{cells.front().x, cells.front().value};
  constexpr int kStarts = 3;
  for (int s = 0; s < kStarts && s < static_cast<int>(cells.size()); ++s) {
    auto m = detail::simplex_maximize(overlap, cells[s].x, {0.3, 0.3, 0.3}, 1e-11, 4000);
    m = detail::coordinate_maximize(overlap, m.x, {0.05, 0.05, 0.05}, 1e-15, 50);
    m = detail::simplex_maximize(overlap, m.x, {1e-3, 1e-3, 1e-3}, 1e-12, 4000);
    if (m.value > best.value) best = m;
  }
  const Vector4c phi = rotated_phi_plus(best.x);
  return {overlap(best.x), phi * phi.adjoint()};
}

FefResult fef_checked(const Matrix4c& rho) {
  FefResult magic_result = fully_entangled_fraction(rho);
  const FefResult direct = fef_direct(rho);
  if (std::abs(magic_result.value - direct.value) > kFefAgreement) {
    throw ConsistencyError("fully entangled fraction: magic-basis and direct methods disagree");
  }
  return magic_result;
}

double protocol_objective(const Matrix8c& rho, const MeasurementBasis& basis) {
  double total = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const ConditionalState branch = conditional_state(rho, basis, outcome);
    if (!branch.zero_probability) total += branch.prob * fef_value(branch.rho_ab);
  }
  return total;
}

OracleResult oracle_f_cqt(const Matrix8c& rho, const OracleSettings& settings) {
  const int nt = std::max(settings.theta_points, 2);
  const int np = std::max(settings.phi_points, 1);
  const double dt = kPi / (nt - 1);
  const double dp = 2.0 * kPi / np;

  std::vector<double> grid(static_cast<std::size_t>(nt * np));
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      grid[static_cast<std::size_t>(i * np + j)] = protocol_objective(rho, {i * dt, j * dp});
    }
  }
  const auto at = [&](int i, int j) {
    return grid[static_cast<std::size_t>(i * np + ((j % np) + np) % np)];
  };

  // Local maxima of the grid, best first; ties keep (theta, phi) order.
  std::vector<int> peaks;
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const double v = at(i, j);
      bool peak = true;
      for (int di = -1; di <= 1 && peak; ++di) {
        const int ii = i + di;
        if (ii < 0 || ii >= nt) continue;
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di != 0 || dj != 0) && at(ii, j + dj) > v) {
            peak = false;
            break;
          }
        }
      }
      if (peak) peaks.push_back(i * np + j);
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int l, int r) {
    return grid[static_cast<std::size_t>(l)] > grid[static_cast<std::size_t>(r)];
  });

  const auto objective = [&](std::span<const double> x) { return protocol_objective(rho, {x[0], x[1]}); };
  const int best_cell = peaks.empty() ? 0 : peaks.front();
  detail::MaximumNd best{{(best_cell / np) * dt, (best_cell % np) * dp}, grid[static_cast<std::size_t>(best_cell)]};

  const int starts = std::min<int>(settings.polish_starts, static_cast<int>(peaks.size()));
  for (int s = 0; s < starts; ++s) {
    const int cell = peaks[static_cast<std::size_t>(s)];
    std::vector<double> x0 = {(cell / np) * dt, (cell % np) * dp};
    auto m = detail::coordinate_maximize(objective, x0, {dt, dp}, 0.01 * settings.polish_tol, 100);
    m = detail::simplex_maximize(objective, m.x, {0.25 * dt, 0.25 * dp}, 1e-10, 2000);
    m = detail::coordinate_maximize(objective, m.x, {0.1 * dt, 0.1 * dp}, 0.01 * settings.polish_tol, 100);
    if (m.value > best.value) best = m;
  }

  OracleResult out;
  out.best_basis = MeasurementBasis{best.x[0], best.x[1]}.canonical();
  double total = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const ConditionalState branch = conditional_state(rho, out.best_basis, outcome);
    out.branch_probs[outcome] = branch.prob;
    out.branch_fefs[outcome] = branch.zero_probability ? 0.0 : fef_value(branch.rho_ab);
    total += out.branch_probs[outcome] * out.branch_fefs[outcome];
  }
  out.f_cqt = (2.0 * total + 1.0) / 3.0;
  out.f_nc = oracle_f_nc(rho);
  return out;
}

OracleResult oracle_f_cqt(const DensityMatrix& rho, const OracleSettings& settings) {
  return oracle_f_cqt(rho.as8(), settings);
}

double oracle_f_nc(const Matrix8c& rho) {
  return (2.0 * fef_value(trace_out_controller(rho)) + 1.0) / 3.0;
}

double oracle_f_nc(const DensityMatrix& rho) { return oracle_f_nc(rho.as8()); }

}  // namespace cqt
