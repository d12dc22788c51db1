#pragma once

// Three-qubit X states and the small dense-matrix algebra around them.
//
// Qubit ordering: a computational label |q1 q2 q3> maps to index
// 4*q1 + 2*q2 + q3. The controller is q1; the sender/receiver pair is (q2, q3).
// Diagonal of an X state in computational order is
//   (a1, a2, a3, a4, b4, b3, b2, b1)
// and z_i sits at (i-1, 8-i), so each {a_i, b_i, z_i} is an independent 2x2
// block and positivity reduces to |z_i| <= sqrt(a_i b_i).

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cqt {

using Complex = std::complex<double>;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Vector8c = Eigen::Matrix<Complex, 8, 1>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;

inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

struct XState {
  std::array<double, 4> a{};
  std::array<double, 4> b{};
  std::array<Complex, 4> z{};
};

/// Throws ValidationError naming the first violated bound.
void validate(const XState& x);

/// Computational-basis index of the diagonal slot holding a_i / b_i (i = 0..3).
constexpr int a_index(int i) { return i; }
constexpr int b_index(int i) { return 7 - i; }

/// Dense Hermitian, unit-trace, positive semidefinite matrix of dimension 2, 4
/// or 8. Immutable once built.
class DensityMatrix {
 public:
  /// Validates hermiticity, trace and positivity.
  static DensityMatrix from_matrix(const Eigen::MatrixXcd& m);

  int dim() const { return static_cast<int>(m_.rows()); }
  int num_qubits() const;
  Complex operator()(int row, int col) const { return m_(row, col); }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  Matrix8c as8() const;
  Matrix4c as4() const;

 private:
  explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}
  friend DensityMatrix embed_xstate(const XState& x);
  friend DensityMatrix make_density_unchecked(Eigen::MatrixXcd m);

  Eigen::MatrixXcd m_;
};

/// For internal callers that have already established the invariants.
DensityMatrix make_density_unchecked(Eigen::MatrixXcd m);

/// Raw 8x8 layout of x; no invariant checks (used to probe invalid inputs).
Matrix8c embed_unchecked(const XState& x);

DensityMatrix embed_xstate(const XState& x);

/// Inverse of embed_xstate. Throws ValidationError("not-x-form") when an
/// off-pattern entry exceeds 1e-10; the message names the worst one.
XState extract_xstate(const DensityMatrix& m);

/// Largest modulus among entries that are neither diagonal nor antidiagonal.
double max_off_pattern(const Eigen::MatrixXcd& m);

enum class GhzSign { plus, minus };

struct GhzIndex {
  int family;  // 1..4
  GhzSign sign;
};

/// |GHZ1±> = (|000> ± |111>)/√2, |GHZ2±> = (|001> ± |110>)/√2,
/// |GHZ3±> = (|010> ± |101>)/√2, |GHZ4±> = (|011> ± |100>)/√2.
Vector8c ghz_vector(GhzIndex idx);
Matrix8c ghz_projector(GhzIndex idx);
std::array<GhzIndex, 8> all_ghz_indices();

enum class Keep {
  ab,  // trace out the controller, 4x4 result
  c,   // trace out the pair, 2x2 result
};

DensityMatrix partial_trace(const DensityMatrix& m, Keep keep);
Matrix4c trace_out_controller(const Matrix8c& m);

/// Ascending eigenvalues. X-shaped 8x8 input is solved block by block; any
/// other Hermitian input goes through a dense solver.
std::vector<double> eigenvalues(const Eigen::MatrixXcd& m);

/// Smallest eigenvalue of a Hermitian matrix. Throws
/// ValidationError("hermiticity") for non-Hermitian input.
double psd_check(const Eigen::MatrixXcd& m);
double psd_check(const DensityMatrix& m);

double hermiticity_defect(const Eigen::MatrixXcd& m);

/// Count of eigenvalues above `threshold`.
int matrix_rank(const Eigen::MatrixXcd& m, double threshold = 1e-12);

}  // namespace cqt
