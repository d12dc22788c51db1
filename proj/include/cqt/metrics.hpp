#pragma once

#include <array>

#include "cqt/families.hpp"
#include "cqt/state.hpp"

namespace cqt {

inline constexpr double kClassicalLimit = 2.0 / 3.0;

/// Closed-form teleportation fidelities of an X state (controller = leading
/// qubit). The optimum over the controller's measurement is the best of three
/// regimes:
///   1. equatorial measurement, both branches use the even Bell sector
///      (3 + D1 + 4(|z1| + |z4|)) / 6
///   2. equatorial measurement, both branches use the odd Bell sector
///      (3 - D1 + 4(|z2| + |z3|)) / 6
///   3. tilted measurement, branches use opposite sectors
///      (3 + sqrt(D3^2 + 4 G^2)) / 6,
///      G = max_psi |z1 e^{i psi} + conj(z4)| + |z2 e^{i psi} + conj(z3)|
/// with D1 = <1 Z Z> and D3 = <Z Z Z>. G equals |z1|+|z2|+|z3|+|z4| whenever
/// arg z1 + arg z4 = arg z2 + arg z3 (mod 2 pi), and in particular for real
/// non-negative antidiagonals.
struct ClosedFormBreakdown {
  double delta1 = 0.0;  // a1-a2-a3+a4+b1-b2-b3+b4
  double delta2 = 0.0;  // a1-a2+a3-a4-b1+b2-b3+b4, enters only the sector-blind candidates
  double delta3 = 0.0;  // a1-a2-a3+a4-b1+b2+b3-b4
  std::array<double, 4> w{};  // w_j = sum_{k != j} sqrt(a_k b_k)
  std::array<double, 3> candidates{};
  int argmax_candidate = 1;  // 1-based, lowest index wins ties
  double f_cqt = 0.0;
  double f_nc = 0.0;  // (3 + |D1|) / 6
  double cp = 0.0;

  /// Four candidates that take |D1| whichever sector holds the coherence and
  /// sqrt(D2^2 + 16(...)^2) for the tilted regime. They can exceed the protocol
  /// optimum and are kept only for comparison.
  std::array<double, 4> sector_blind{};
  double sector_blind_f_cqt = 0.0;
};

struct MetricsRecord {
  double s_l = 0.0;
  double gme = 0.0;
  ClosedFormBreakdown breakdown;
  bool cqt_valid = false;  // f_cqt > 2/3 and f_nc <= 2/3
};

/// 2 max{0, max_j |z_j| - w_j}.
double gme(const XState& x);

/// 2^N/(2^N - 1) (1 - Tr rho^2): 0 for pure states, 1 for the maximally mixed one.
double linear_entropy(const Eigen::MatrixXcd& m);
double linear_entropy(const DensityMatrix& m);

/// Max over psi of |z1 e^{i psi} + conj z4| + |z2 e^{i psi} + conj z3|.
double mixed_sector_coherence(const XState& x);

ClosedFormBreakdown f_cqt_closed(const XState& x);

MetricsRecord evaluate(const XState& x);

bool cqt_valid(double f_cqt, double f_nc);

// Family closed forms, evaluated on the spectrum alone.

/// max{0, p1 - p5 - 2[sqrt(p2 p8) + sqrt(p3 p7) + sqrt(p4 p6)]}
double gme_mems_bound(const Spectrum& s);
/// (3 + 2(p1 - p5) + |p1-p2-p3+p4+p5+p6-p7-p8|) / 6
double f_cqt_mems_closed(const Spectrum& s);
/// (3 + |p1-p2-p3+p4+p5+p6-p7-p8|) / 6
double f_nc_mems_closed(const Spectrum& s);
/// (3 + 3(p1 + p2) - (p3 + ... + p8)) / 6
double f_cqt_nmems_closed(const Spectrum& s);
/// (3 + |p1+p2-p3-p4+p5+p6-p7-p8|) / 6
double f_nc_nmems_closed(const Spectrum& s);
/// (p1 - p5) - (p2 + p3 + p4 + p6 + p7 + p8), unclamped.
double gme_nmems_raw(const Spectrum& s);
double gme_nmems_closed(const Spectrum& s);

}  // namespace cqt
