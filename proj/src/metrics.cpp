#include "cqt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cqt/detail/optimize.hpp"

namespace cqt {

double gme(const XState& x) {
  std::array<double, 4> root{};
  for (int k = 0; k < 4; ++k) root[k] = std::sqrt(x.a[k] * x.b[k]);
  const double total = root[0] + root[1] + root[2] + root[3];
  double best = 0.0;
  for (int j = 0; j < 4; ++j) best = std::max(best, std::abs(x.z[j]) - (total - root[j]));
  return 2.0 * best;
}

double linear_entropy(const Eigen::MatrixXcd& m) {
  const double d = static_cast<double>(m.rows());
  const double purity = m.cwiseAbs2().sum();
  return d / (d - 1.0) * (1.0 - purity);
}

double linear_entropy(const DensityMatrix& m) { return linear_entropy(m.matrix()); }

double mixed_sector_coherence(const XState& x) {
  const std::array<double, 4> r = {std::abs(x.z[0]), std::abs(x.z[1]), std::abs(x.z[2]), std::abs(x.z[3])};
  const double sum = r[0] + r[1] + r[2] + r[3];
  if (r[0] * r[3] == 0.0 || r[1] * r[2] == 0.0) return sum;
  // Each term peaks where its two phasors align.
  const double peak14 = -std::arg(x.z[0]) - std::arg(x.z[3]);
  const double peak23 = -std::arg(x.z[1]) - std::arg(x.z[2]);
  if (std::abs(std::remainder(peak14 - peak23, 2.0 * std::numbers::pi)) < 1e-15) return sum;

  const Complex c4 = std::conj(x.z[3]);
  const Complex c3 = std::conj(x.z[2]);
  const auto coherence = [&](double psi) {
    const Complex e = std::polar(1.0, psi);
    return std::abs(x.z[0] * e + c4) + std::abs(x.z[1] * e + c3);
  };
  return detail::maximize_periodic(coherence, 360);
}

bool cqt_valid(double f_cqt, double f_nc) { return f_cqt > kClassicalLimit && f_nc <= kClassicalLimit; }

ClosedFormBreakdown f_cqt_closed(const XState& x) {
  const auto& a = x.a;
  const auto& b = x.b;
  ClosedFormBreakdown out;
  out.delta1 = a[0] - a[1] - a[2] + a[3] + b[0] - b[1] - b[2] + b[3];
  out.delta2 = a[0] - a[1] + a[2] - a[3] - b[0] + b[1] - b[2] + b[3];
  out.delta3 = a[0] - a[1] - a[2] + a[3] - b[0] + b[1] + b[2] - b[3];

  std::array<double, 4> root{};
  for (int k = 0; k < 4; ++k) root[k] = std::sqrt(a[k] * b[k]);
  const double total = root[0] + root[1] + root[2] + root[3];
  for (int j = 0; j < 4; ++j) out.w[j] = total - root[j];

  const double z14 = std::abs(x.z[0]) + std::abs(x.z[3]);
  const double z23 = std::abs(x.z[1]) + std::abs(x.z[2]);
  const double g = mixed_sector_coherence(x);

  out.candidates[0] = (3.0 + out.delta1 + 4.0 * z14) / 6.0;
  out.candidates[1] = (3.0 - out.delta1 + 4.0 * z23) / 6.0;
  out.candidates[2] = (3.0 + std::sqrt(out.delta3 * out.delta3 + 4.0 * g * g)) / 6.0;

  out.argmax_candidate = 1;
  out.f_cqt = out.candidates[0];
  for (int k = 1; k < 3; ++k) {
    if (out.candidates[k] > out.f_cqt) {
      out.f_cqt = out.candidates[k];
      out.argmax_candidate = k + 1;
    }
  }
  out.f_nc = (3.0 + std::abs(out.delta1)) / 6.0;
  out.cp = out.f_cqt - out.f_nc;

  const double d1 = std::abs(out.delta1);
  const double d2sq = out.delta2 * out.delta2;
  out.sector_blind[0] = (3.0 + d1 + 4.0 * z14) / 6.0;
  out.sector_blind[1] = (3.0 + d1 + 4.0 * z23) / 6.0;
  out.sector_blind[2] = (3.0 + std::sqrt(d2sq + 16.0 * z14 * z14)) / 6.0;
  out.sector_blind[3] = (3.0 + std::sqrt(d2sq + 16.0 * z23 * z23)) / 6.0;
  out.sector_blind_f_cqt = *std::max_element(out.sector_blind.begin(), out.sector_blind.end());
  return out;
}

MetricsRecord evaluate(const XState& x) {
  MetricsRecord rec;
  rec.s_l = linear_entropy(Eigen::MatrixXcd(embed_unchecked(x)));
  rec.gme = gme(x);
  rec.breakdown = f_cqt_closed(x);
  rec.cqt_valid = cqt_valid(rec.breakdown.f_cqt, rec.breakdown.f_nc);
  return rec;
}

double gme_mems_bound(const Spectrum& s) {
  const double mixed = std::sqrt(s[1] * s[7]) + std::sqrt(s[2] * s[6]) + std::sqrt(s[3] * s[5]);
  return std::max(0.0, s[0] - s[4] - 2.0 * mixed);
}

namespace {

double mems_parity(const Spectrum& s) {
  return s[0] - s[1] - s[2] + s[3] + s[4] + s[5] - s[6] - s[7];
}

}  // namespace

double f_cqt_mems_closed(const Spectrum& s) {
  return (3.0 + 2.0 * (s[0] - s[4]) + std::abs(mems_parity(s))) / 6.0;
}

double f_nc_mems_closed(const Spectrum& s) { return (3.0 + std::abs(mems_parity(s))) / 6.0; }

double f_cqt_nmems_closed(const Spectrum& s) {
  const double rest = s[2] + s[3] + s[4] + s[5] + s[6] + s[7];
  return (3.0 + 3.0 * (s[0] + s[1]) - rest) / 6.0;
}

double f_nc_nmems_closed(const Spectrum& s) {
  return (3.0 + std::abs(s[0] + s[1] - s[2] - s[3] + s[4] + s[5] - s[6] - s[7])) / 6.0;
}

double gme_nmems_raw(const Spectrum& s) {
  return (s[0] - s[4]) - (s[1] + s[2] + s[3] + s[5] + s[6] + s[7]);
}

double gme_nmems_closed(const Spectrum& s) { return std::max(0.0, gme_nmems_raw(s)); }

}  // namespace cqt
