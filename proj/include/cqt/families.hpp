#pragma once

// State families built from an ordered spectrum: GHZ-diagonal mixtures
// (NMEMS), GHZ1 plus computational-basis weight (MEMS), the purity-indexed
// MEMS curve, the rank-r boundary spectra, and a seeded spectrum sampler.

#include <array>
#include <cstdint>
#include <string>

#include "cqt/state.hpp"

namespace cqt {

inline constexpr double kRankThreshold = 1e-14;

/// Eigenvalues p1 >= ... >= p8 >= 0 summing to 1.
class Spectrum {
 public:
  /// Throws ValidationError("spectrum-order" | "spectrum-sum" | "negative-weight").
  static Spectrum from_values(const std::array<double, 8>& p);

  double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
  const std::array<double, 8>& values() const { return p_; }
  int rank() const { return rank_; }

 private:
  explicit Spectrum(const std::array<double, 8>& p);
  std::array<double, 8> p_;
  int rank_;
};

enum class Family { mems, nmems, mems_gamma };

std::string to_string(Family f);
/// Accepts "mems", "nmems", "mems-gamma".
Family parse_family(const std::string& name);

/// rho = p1 |GHZ1+><GHZ1+| + p2 |001><001| + p3 |010><010| + p4 |011><011|
///     + p5 |GHZ1-><GHZ1-| + p6 |100><100| + p7 |101><101| + p8 |110><110|
XState mems_from_spectrum(const Spectrum& s);

/// GHZ-diagonal mixture with the weight order
/// GHZ1+, GHZ4+, GHZ2+, GHZ3+, GHZ1-, GHZ4-, GHZ2-, GHZ3-.
XState nmems_from_spectrum(const Spectrum& s);

/// Diagonal (f, g, g, g, 0, 0, 0, f) with z1 = gamma, where
/// f = 1/5, g = 1/5 for gamma <= 1/5 and f = gamma, g = (1 - 2 gamma)/3 above.
struct MemsGamma {
  double f;
  double g;
};
MemsGamma mems_gamma_weights(double gamma);
XState mems_from_gamma(double gamma);

struct BoundarySpec {
  Family family;  // mems or nmems; only the spectrum depends on it through the constructor
  int rank;       // 2..8
  double p;       // [0, 1]
};

/// (p1, (1-p)/r x (r-1), 0, ...) with p1 = (1 + (r-1) p)/r.
Spectrum boundary_spectrum(const BoundarySpec& b);
Spectrum boundary_spectrum(int rank, double p);

XState family_state(Family family, const Spectrum& s);

/// Flat Dirichlet on the rank-r simplex, sorted descending and zero padded.
/// Deterministic in (rank, seed, stream): each triple seeds its own
/// std::mt19937_64 through SplitMix64, and the unit-rate exponentials are
/// drawn as -log(1 - u) with u built from the top 53 bits of one engine output.
Spectrum sample_spectrum(int rank, std::uint64_t seed, std::uint64_t stream = 0);

/// Werner-type mixture v |GHZ1+><GHZ1+| + (1 - v) identity/8.
XState ghz_werner(double v);

}  // namespace cqt
