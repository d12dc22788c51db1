#pragma once

// Protocol-level evaluation of controlled teleportation fidelities, without
// any X-state closed form: the controller (leading qubit) is measured along a
// Bloch direction, each branch's two-qubit state is scored by its fully
// entangled fraction, and the direction is optimised numerically.

#include <array>

#include "cqt/state.hpp"

namespace cqt {

inline constexpr double kZeroBranchProb = 1e-14;

struct MeasurementBasis {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  /// Outcome 0 is the +n eigenvector, outcome 1 the -n one.
  Eigen::Vector2cd state(int outcome) const;
  Matrix2c projector(int outcome) const;

  /// Same measurement with theta folded into [0, pi] and phi into [0, 2 pi).
  MeasurementBasis canonical() const;
};

MeasurementBasis z_basis();
MeasurementBasis x_basis();

struct ConditionalState {
  double prob = 0.0;
  Matrix4c rho_ab = Matrix4c::Zero();  // zero when zero_probability
  bool zero_probability = false;
};

ConditionalState conditional_state(const Matrix8c& rho, const MeasurementBasis& basis, int outcome);
ConditionalState conditional_state(const DensityMatrix& rho, const MeasurementBasis& basis, int outcome);

struct FefResult {
  double value = 0.0;
  Matrix4c witness = Matrix4c::Zero();  // projector onto the optimal maximally entangled state
};

/// Largest eigenvalue of Re(M^dag rho M) in the magic basis
/// {Phi+, i Phi-, i Psi+, Psi-}. Authoritative.
FefResult fully_entangled_fraction(const Matrix4c& rho);
double fef_value(const Matrix4c& rho);

/// Direct maximisation of <Phi|rho|Phi> over Phi = (1 x V) Phi+, V in SU(2).
FefResult fef_direct(const Matrix4c& rho);

/// Runs both methods; throws ConsistencyError when they differ by more than 1e-6.
FefResult fef_checked(const Matrix4c& rho);

/// Magic basis as columns.
Matrix4c magic_basis();

/// Sum over outcomes of prob(outcome) * FEF(branch state).
double protocol_objective(const Matrix8c& rho, const MeasurementBasis& basis);

struct OracleSettings {
  int theta_points = 64;
  int phi_points = 128;
  double polish_tol = 1e-10;
  int polish_starts = 4;
};

struct OracleResult {
  double f_cqt = 0.0;
  double f_nc = 0.0;
  MeasurementBasis best_basis;
  std::array<double, 2> branch_probs{};
  std::array<double, 2> branch_fefs{};
};

OracleResult oracle_f_cqt(const DensityMatrix& rho, const OracleSettings& settings = {});
OracleResult oracle_f_cqt(const Matrix8c& rho, const OracleSettings& settings = {});

/// (2 FEF(Tr_controller rho) + 1) / 3.
double oracle_f_nc(const DensityMatrix& rho);
double oracle_f_nc(const Matrix8c& rho);

}  // namespace cqt
