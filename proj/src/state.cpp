#include "cqt/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqt/error.hpp"

namespace cqt {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

std::string slot_name(char family, int i) {
  return std::string(1, family) + std::to_string(i + 1);
}

bool is_pattern_entry(int rows, int i, int j) { return i == j || i + j == rows - 1; }

}  // namespace

void validate(const XState& x) {
  for (int i = 0; i < 4; ++i) {
    if (!std::isfinite(x.a[i]) || !std::isfinite(x.b[i]) || !finite(x.z[i])) {
      throw ValidationError("non-finite", "X state entry for block " + std::to_string(i + 1) +
                                              " is not finite");
    }
  }
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (x.a[i] < 0.0) {
      throw ValidationError("negative-weight", "diagonal weight " + slot_name('a', i) + " < 0");
    }
    if (x.b[i] < 0.0) {
      throw ValidationError("negative-weight", "diagonal weight " + slot_name('b', i) + " < 0");
    }
    sum += x.a[i] + x.b[i];
  }
  if (std::abs(sum - 1.0) > kStructuralTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "diagonal weights sum to " << sum << ", expected 1";
    throw ValidationError("trace", msg.str());
  }
  for (int i = 0; i < 4; ++i) {
    const double bound = std::sqrt(x.a[i] * x.b[i]);
    if (std::abs(x.z[i]) > bound + kStructuralTol) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "|z" << i + 1 << "| = " << std::abs(x.z[i]) << " exceeds sqrt(a" << i + 1 << " b"
          << i + 1 << ") = " << bound;
      throw ValidationError("positivity", msg.str());
    }
  }
}

int DensityMatrix::num_qubits() const {
  switch (dim()) {
    case 2: return 1;
    case 4: return 2;
    default: return 3;
  }
}

Matrix8c DensityMatrix::as8() const {
  if (dim() != 8) throw ValidationError("dimension", "expected an 8x8 density matrix");
  return m_;
}

Matrix4c DensityMatrix::as4() const {
  if (dim() != 4) throw ValidationError("dimension", "expected a 4x4 density matrix");
  return m_;
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix DensityMatrix::from_matrix(const Eigen::MatrixXcd& m) {
  const auto n = m.rows();
  if (m.cols() != n || (n != 2 && n != 4 && n != 8)) {
    throw ValidationError("dimension", "density matrix must be 2x2, 4x4 or 8x8");
  }
  if (!m.allFinite()) throw ValidationError("non-finite", "density matrix has non-finite entries");
  if (hermiticity_defect(m) > kStructuralTol) {
    throw ValidationError("hermiticity", "density matrix is not Hermitian");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kStructuralTol) {
    throw ValidationError("trace", "density matrix trace differs from 1");
  }
  if (psd_check(m) < -kPsdTol) {
    throw ValidationError("positivity", "density matrix has a negative eigenvalue");
  }
  return DensityMatrix(m);
}

DensityMatrix make_density_unchecked(Eigen::MatrixXcd m) { return DensityMatrix(std::move(m)); }

Matrix8c embed_unchecked(const XState& x) {
  Matrix8c m = Matrix8c::Zero();
  for (int i = 0; i < 4; ++i) {
    m(a_index(i), a_index(i)) = x.a[i];
    m(b_index(i), b_index(i)) = x.b[i];
    m(a_index(i), b_index(i)) = x.z[i];
    m(b_index(i), a_index(i)) = std::conj(x.z[i]);
  }
  return m;
}

DensityMatrix embed_xstate(const XState& x) {
  validate(x);
  return DensityMatrix(embed_unchecked(x));
}

double max_off_pattern(const Eigen::MatrixXcd& m) {
  double worst = 0.0;
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!is_pattern_entry(n, i, j)) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

XState extract_xstate(const DensityMatrix& m) {
  if (m.dim() != 8) throw ValidationError("dimension", "X states are 8x8");
  const auto& raw = m.matrix();
  double worst = 0.0;
  int wi = 0;
  int wj = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (is_pattern_entry(8, i, j)) continue;
      if (std::abs(raw(i, j)) > worst) {
        worst = std::abs(raw(i, j));
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > kPsdTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entry (" << wi + 1 << "," << wj + 1 << ") = " << worst
        << " lies off the diagonal/antidiagonal pattern";
    throw ValidationError("not-x-form", msg.str());
  }
  XState x;
  for (int i = 0; i < 4; ++i) {
    x.a[i] = raw(a_index(i), a_index(i)).real();
    x.b[i] = raw(b_index(i), b_index(i)).real();
    x.z[i] = raw(a_index(i), b_index(i));
  }
  return x;
}

Vector8c ghz_vector(GhzIndex idx) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector8c v = Vector8c::Zero();
  // GHZ_k pairs |k-1 as a 3-bit label> with its bitwise complement.
  static constexpr std::array<int, 4> kLow = {0b000, 0b001, 0b010, 0b011};
  const int lo = kLow.at(static_cast<std::size_t>(idx.family - 1));
  v(lo) = s;
  v(7 - lo) = idx.sign == GhzSign::plus ? s : -s;
  return v;
}

Matrix8c ghz_projector(GhzIndex idx) {
  const Vector8c v = ghz_vector(idx);
  return v * v.adjoint();
}

std::array<GhzIndex, 8> all_ghz_indices() {
  std::array<GhzIndex, 8> out{};
  for (int k = 0; k < 4; ++k) {
    out[2 * k] = {k + 1, GhzSign::plus};
    out[2 * k + 1] = {k + 1, GhzSign::minus};
  }
  return out;
}

Matrix4c trace_out_controller(const Matrix8c& m) {
  return m.block<4, 4>(0, 0) + m.block<4, 4>(4, 4);
}

DensityMatrix partial_trace(const DensityMatrix& m, Keep keep) {
  if (m.dim() != 8) throw ValidationError("dimension", "partial trace expects an 8x8 matrix");
  const auto& raw = m.matrix();
  if (keep == Keep::ab) {
    Eigen::MatrixXcd out = raw.block(0, 0, 4, 4) + raw.block(4, 4, 4, 4);
    return make_density_unchecked(std::move(out));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
  for (int c = 0; c < 2; ++c) {
    for (int d = 0; d < 2; ++d) {
      for (int r = 0; r < 4; ++r) out(c, d) += raw(4 * c + r, 4 * d + r);
    }
  }
  return make_density_unchecked(std::move(out));
}

std::vector<double> eigenvalues(const Eigen::MatrixXcd& m) {
  std::vector<double> out;
  if (m.rows() == 8 && m.cols() == 8 && max_off_pattern(m) == 0.0) {
    out.reserve(8);
    for (int i = 0; i < 4; ++i) {
      const double a = m(a_index(i), a_index(i)).real();
      const double b = m(b_index(i), b_index(i)).real();
      const double z2 = std::norm(m(a_index(i), b_index(i)));
      const double mean = 0.5 * (a + b);
      const double radius = std::hypot(0.5 * (a - b), std::sqrt(z2));
      const double hi = mean + radius;
      // The small root from the determinant keeps boundary states at exactly 0.
      const double det = a * b - z2;
      const double lo = hi > 0.0 ? det / hi : mean - radius;
      out.push_back(hi);
      out.push_back(lo);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  out.assign(ev.data(), ev.data() + ev.size());
  return out;
}

double psd_check(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw ValidationError("dimension", "matrix is not square");
  if (hermiticity_defect(m) > kStructuralTol) {
    throw ValidationError("hermiticity", "matrix is not Hermitian");
  }
  return eigenvalues(m).front();
}

double psd_check(const DensityMatrix& m) { return psd_check(m.matrix()); }

int matrix_rank(const Eigen::MatrixXcd& m, double threshold) {
  const auto ev = eigenvalues(m);
  return static_cast<int>(std::count_if(ev.begin(), ev.end(), [&](double v) { return v > threshold; }));
}

}  // namespace cqt
