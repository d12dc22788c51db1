#pragma once

// Dataset generation: seeded family sweeps, boundary curves, the purity-indexed
// MEMS curve, and closed-form versus protocol verification.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cqt/families.hpp"
#include "cqt/io.hpp"
#include "cqt/oracle.hpp"

namespace cqt {

inline constexpr int kCsvSchema = 1;
inline constexpr int kGammaGridPoints = 101;
inline constexpr int kDefaultSamplesPerRank = 2000;

struct SweepConfig {
  Family family = Family::mems;
  std::vector<int> ranks = {2, 3, 4, 5, 6, 7, 8};
  int samples_per_rank = kDefaultSamplesPerRank;
  std::uint64_t seed = 1;
  bool oracle = false;
  bool parallel = true;
  OracleSettings oracle_settings;
};

void validate(const SweepConfig& cfg);

struct SweepRow {
  std::string family;
  int rank = 0;
  int sample_index = 0;
  std::array<double, 8> p{};
  std::optional<double> param;  // gamma for mems-gamma, boundary p for boundary rows
  double s_l = 0.0;
  double gme = 0.0;
  double f_cqt_closed = 0.0;
  double f_nc_closed = 0.0;
  double cp_closed = 0.0;
  int argmax_candidate = 1;
  std::optional<double> f_cqt_oracle;
  std::optional<double> f_nc_oracle;
  std::optional<double> oracle_gap;  // f_cqt_closed - f_cqt_oracle
  bool cqt_valid = false;
};

SweepRow make_row(const std::string& family, int rank, int sample_index, const std::array<double, 8>& p,
                  std::optional<double> param, const XState& x, bool oracle,
                  const OracleSettings& settings = {});

/// Rows sorted by (rank, sample_index). Sample k of rank r uses
/// sample_spectrum(r, seed, k), so the result does not depend on `parallel`.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// gamma = k / 200 for k = 0..100.
std::vector<SweepRow> gamma_rows(bool oracle, const OracleSettings& settings = {});

/// p = k / (grid - 1) for k = 0..grid-1.
std::vector<SweepRow> boundary_rows(Family family, int rank, int grid, bool oracle,
                                    const OracleSettings& settings = {});

/// Throws ValidationError("row") when a row breaks the MetricsRecord invariants.
void validate_row(const SweepRow& row);

std::string csv_header();
std::string csv_line(const SweepRow& row);
/// Writes the schema comment, the header and every row (re-validated first).
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct VerifyConfig {
  std::vector<std::string> families = {"mems", "nmems", "mems-gamma", "ghz-werner"};
  std::vector<int> ranks = {2, 3, 4, 5, 6, 7, 8};
  int samples = 100;
  std::uint64_t seed = 1;
  double tol = 1e-5;
  double werner_tol = 1e-6;
  OracleSettings oracle_settings;
};

struct VerifyOutcome {
  Json report;
  bool hard_checks_passed = true;
  std::string summary;
};

VerifyOutcome run_verify(const VerifyConfig& cfg);

/// Oracle versus the rank-2 NMEMS family formula at p1 = 0.5, 0.6, ..., 1.0.
Json nmems_rank2_adjudication(const OracleSettings& settings = {});

}  // namespace cqt
