#include "cqt/families.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "cqt/error.hpp"

namespace cqt {

namespace {

// Slack on ordering so that analytically equal entries computed by different
// expressions are not rejected.
constexpr double kOrderSlack = 1e-15;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Spectrum::Spectrum(const std::array<double, 8>& p) : p_(p), rank_(0) {
  rank_ = static_cast<int>(std::count_if(p_.begin(), p_.end(), [](double v) { return v > kRankThreshold; }));
}

Spectrum Spectrum::from_values(const std::array<double, 8>& p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i])) throw ValidationError("non-finite", "spectrum entry is not finite");
    if (p[i] < 0.0) {
      throw ValidationError("negative-weight", "spectrum entry p" + std::to_string(i + 1) + " < 0");
    }
    if (i > 0 && p[i] > p[i - 1] + kOrderSlack) {
      throw ValidationError("spectrum-order", "spectrum is not sorted descending at p" + std::to_string(i + 1));
    }
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > kStructuralTol) {
    throw ValidationError("spectrum-sum", "spectrum does not sum to 1");
  }
  return Spectrum(p);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::mems: return "mems";
    case Family::nmems: return "nmems";
    case Family::mems_gamma: return "mems-gamma";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "mems") return Family::mems;
  if (name == "nmems") return Family::nmems;
  if (name == "mems-gamma") return Family::mems_gamma;
  throw ValidationError("unknown-family", "unknown family '" + name + "'");
}

XState mems_from_spectrum(const Spectrum& s) {
  XState x;
  x.a[0] = x.b[0] = 0.5 * (s[0] + s[4]);
  x.z[0] = 0.5 * (s[0] - s[4]);
  x.a[1] = s[1];  // |001>
  x.a[2] = s[2];  // |010>
  x.a[3] = s[3];  // |011>
  x.b[3] = s[5];  // |100>
  x.b[2] = s[6];  // |101>
  x.b[1] = s[7];  // |110>
  return x;
}

XState nmems_from_spectrum(const Spectrum& s) {
  // Block i of the X state holds GHZ_{i+1}^±; p_plus/p_minus per block.
  const std::array<int, 4> plus = {0, 2, 3, 1};
  const std::array<int, 4> minus = {4, 6, 7, 5};
  XState x;
  for (std::size_t i = 0; i < 4; ++i) {
    const double hi = s[plus[i]];
    const double lo = s[minus[i]];
    x.a[i] = x.b[i] = 0.5 * (hi + lo);
    x.z[i] = 0.5 * (hi - lo);
  }
  return x;
}

MemsGamma mems_gamma_weights(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 0.5)) {
    throw ValidationError("range", "gamma must lie in [0, 1/2]");
  }
  if (gamma <= 0.2) return {0.2, 0.2};
  return {gamma, (1.0 - 2.0 * gamma) / 3.0};
}

XState mems_from_gamma(double gamma) {
  const auto [f, g] = mems_gamma_weights(gamma);
  XState x;
  x.a[0] = x.b[0] = f;
  x.a[1] = x.a[2] = x.a[3] = g;
  x.z[0] = gamma;
  return x;
}

Spectrum boundary_spectrum(int rank, double p) {
  if (rank < 2 || rank > 8) throw ValidationError("range", "boundary rank must be 2..8");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("range", "boundary p must lie in [0, 1]");
  std::array<double, 8> v{};
  const double r = rank;
  v[0] = (1.0 + (r - 1.0) * p) / r;
  for (int i = 1; i < rank; ++i) v[static_cast<std::size_t>(i)] = (1.0 - p) / r;
  return Spectrum::from_values(v);
}

Spectrum boundary_spectrum(const BoundarySpec& b) { return boundary_spectrum(b.rank, b.p); }

XState family_state(Family family, const Spectrum& s) {
  switch (family) {
    case Family::mems: return mems_from_spectrum(s);
    case Family::nmems: return nmems_from_spectrum(s);
    case Family::mems_gamma: break;
  }
  throw ValidationError("unknown-family", "mems-gamma is parametrised by gamma, not a spectrum");
}

Spectrum sample_spectrum(int rank, std::uint64_t seed, std::uint64_t stream) {
  if (rank < 1 || rank > 8) throw ValidationError("range", "rank must be 1..8");
  std::uint64_t mix = seed;
  std::uint64_t key = splitmix64(mix);
  key ^= static_cast<std::uint64_t>(rank) * 0xd1b54a32d192ed03ULL;
  mix = key;
  key = splitmix64(mix) ^ stream * 0x8cb92ba72f3d8dd7ULL;
  mix = key;
  std::mt19937_64 engine(splitmix64(mix));

  std::array<double, 8> w{};
  double total = 0.0;
  for (int i = 0; i < rank; ++i) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const double e = -std::log1p(-u);
    w[static_cast<std::size_t>(i)] = e;
    total += e;
  }
  for (int i = 0; i < rank; ++i) w[static_cast<std::size_t>(i)] /= total;
  std::sort(w.begin(), w.begin() + rank, std::greater<>());
  // Renormalise the largest entry so the sum sits on 1 to rounding.
  double rest = 0.0;
  for (int i = 1; i < rank; ++i) rest += w[static_cast<std::size_t>(i)];
  w[0] = 1.0 - rest;
  return Spectrum::from_values(w);
}

XState ghz_werner(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("range", "Werner weight v must lie in [0, 1]");
  XState x;
  const double noise = (1.0 - v) / 8.0;
  x.a.fill(noise);
  x.b.fill(noise);
  x.a[0] = x.b[0] = 0.5 * v + noise;
  x.z[0] = 0.5 * v;
  return x;
}

}  // namespace cqt
