#include "cqt/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "cqt/error.hpp"
#include "cqt/metrics.hpp"

namespace cqt {

namespace {

constexpr double kRangeSlack = 1e-12;

void parallel_for(std::size_t n, bool parallel, const std::function<void(std::size_t)>& body) {
  if (!parallel || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(n, std::max(2u, std::thread::hardware_concurrency()));
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
}

std::array<double, 8> sorted_eigenvalues(const XState& x) {
  auto ev = eigenvalues(Eigen::MatrixXcd(embed_unchecked(x)));
  std::array<double, 8> out{};
  for (std::size_t i = 0; i < 8; ++i) out[i] = std::max(0.0, ev[7 - i]);
  return out;
}

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

bool in_range(double v, double lo, double hi) { return v >= lo - kRangeSlack && v <= hi + kRangeSlack; }

}  // namespace

void validate(const SweepConfig& cfg) {
  if (cfg.family != Family::mems_gamma) {
    if (cfg.ranks.empty()) throw ValidationError("config", "at least one rank is required");
    for (int r : cfg.ranks) {
      if (r < 1 || r > 8) throw ValidationError("config", "ranks must lie in 1..8");
    }
    if (cfg.samples_per_rank < 1) throw ValidationError("config", "samples per rank must be >= 1");
  }
}

SweepRow make_row(const std::string& family, int rank, int sample_index, const std::array<double, 8>& p,
                  std::optional<double> param, const XState& x, bool oracle, const OracleSettings& settings) {
  const MetricsRecord rec = evaluate(x);
  SweepRow row;
  row.family = family;
  row.rank = rank;
  row.sample_index = sample_index;
  row.p = p;
  row.param = param;
  row.s_l = rec.s_l;
  row.gme = rec.gme;
  row.f_cqt_closed = rec.breakdown.f_cqt;
  row.f_nc_closed = rec.breakdown.f_nc;
  row.cp_closed = rec.breakdown.cp;
  row.argmax_candidate = rec.breakdown.argmax_candidate;
  row.cqt_valid = rec.cqt_valid;
  if (oracle) {
    const OracleResult o = oracle_f_cqt(embed_unchecked(x), settings);
    row.f_cqt_oracle = o.f_cqt;
    row.f_nc_oracle = o.f_nc;
    row.oracle_gap = row.f_cqt_closed - o.f_cqt;
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  if (cfg.family == Family::mems_gamma) return gamma_rows(cfg.oracle, cfg.oracle_settings);

  std::vector<int> ranks = cfg.ranks;
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());

  const auto per_rank = static_cast<std::size_t>(cfg.samples_per_rank);
  std::vector<SweepRow> rows(ranks.size() * per_rank);
  const std::string name = to_string(cfg.family);
  parallel_for(rows.size(), cfg.parallel, [&](std::size_t i) {
    const int rank = ranks[i / per_rank];
    const auto k = static_cast<int>(i % per_rank);
    const Spectrum s = sample_spectrum(rank, cfg.seed, static_cast<std::uint64_t>(k));
    rows[i] = make_row(name, rank, k, s.values(), std::nullopt, family_state(cfg.family, s), cfg.oracle,
                       cfg.oracle_settings);
  });
  return rows;
}

std::vector<SweepRow> gamma_rows(bool oracle, const OracleSettings& settings) {
  std::vector<SweepRow> rows;
  rows.reserve(kGammaGridPoints);
  for (int k = 0; k < kGammaGridPoints; ++k) {
    const double gamma = k / 200.0;
    const XState x = mems_from_gamma(gamma);
    const int rank = matrix_rank(Eigen::MatrixXcd(embed_unchecked(x)));
    rows.push_back(make_row("mems-gamma", rank, k, sorted_eigenvalues(x), gamma, x, oracle, settings));
  }
  return rows;
}

std::vector<SweepRow> boundary_rows(Family family, int rank, int grid, bool oracle, const OracleSettings& settings) {
  if (family == Family::mems_gamma) return gamma_rows(oracle, settings);
  if (grid < 2) throw ValidationError("config", "boundary grid needs at least 2 points");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) {
    const double p = static_cast<double>(k) / (grid - 1);
    const Spectrum s = boundary_spectrum(rank, p);
    rows.push_back(make_row(to_string(family), rank, k, s.values(), p, family_state(family, s), oracle, settings));
  }
  return rows;
}

void validate_row(const SweepRow& row) {
  const auto fail = [&](const std::string& what) {
    throw ValidationError("row", "row " + row.family + "/" + std::to_string(row.rank) + "/" +
                                     std::to_string(row.sample_index) + ": " + what);
  };
  if (!in_range(row.s_l, 0.0, 1.0)) fail("s_l outside [0,1]");
  if (!in_range(row.gme, 0.0, 1.0)) fail("gme outside [0,1]");
  if (!in_range(row.f_cqt_closed, 0.5, 1.0)) fail("f_cqt outside [1/2,1]");
  if (row.cp_closed < 0.0) fail("negative control power");
  if (row.cp_closed != row.f_cqt_closed - row.f_nc_closed) fail("cp != f_cqt - f_nc");
  if (row.cqt_valid != cqt_valid(row.f_cqt_closed, row.f_nc_closed)) fail("cqt_valid flag inconsistent");
  if (row.oracle_gap && *row.oracle_gap != row.f_cqt_closed - *row.f_cqt_oracle) fail("oracle_gap inconsistent");
}

std::string csv_header() {
  return "family,rank,sample_index,p1,p2,p3,p4,p5,p6,p7,p8,param,s_l,gme,f_cqt_closed,f_nc_closed,cp_closed,"
         "argmax_candidate,f_cqt_oracle,f_nc_oracle,oracle_gap,cqt_valid";
}

std::string csv_line(const SweepRow& row) {
  std::string line = row.family + "," + std::to_string(row.rank) + "," + std::to_string(row.sample_index);
  for (double v : row.p) line += "," + format_number(v);
  line += "," + opt(row.param);
  for (double v : {row.s_l, row.gme, row.f_cqt_closed, row.f_nc_closed, row.cp_closed}) {
    line += "," + format_number(v);
  }
  line += "," + std::to_string(row.argmax_candidate);
  line += "," + opt(row.f_cqt_oracle) + "," + opt(row.f_nc_oracle) + "," + opt(row.oracle_gap);
  line += row.cqt_valid ? ",true" : ",false";
  return line;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  for (const auto& row : rows) validate_row(row);
  out << "# schema=" << kCsvSchema << "\n" << csv_header() << "\n";
  for (const auto& row : rows) out << csv_line(row) << "\n";
}

namespace {

struct FamilyStats {
  int states = 0;
  double max_abs_gap = 0.0;
  double max_gap = -1.0;
  double min_gap = 1.0;
  double max_family_formula_diff = 0.0;  // |family formula - closed|
  double max_family_formula_overshoot = 0.0;  // family formula - oracle
  double max_sector_blind_overshoot = 0.0;  // sector-blind max - oracle
  int sector_blind_overshoots = 0;
  int cqt_valid = 0;
  int cp_negative = 0;
  int f_nc_above_classical = 0;
  Json worst;
};

void record(FamilyStats& st, const std::string& family, int rank, int index, const XState& x,
            std::optional<double> family_formula, const OracleSettings& settings, double tol) {
  const MetricsRecord rec = evaluate(x);
  const OracleResult o = oracle_f_cqt(embed_unchecked(x), settings);
  const double gap = rec.breakdown.f_cqt - o.f_cqt;
  ++st.states;
  st.max_gap = std::max(st.max_gap, gap);
  st.min_gap = std::min(st.min_gap, gap);
  if (std::abs(gap) > st.max_abs_gap || st.worst.is_null()) {
    st.max_abs_gap = std::max(st.max_abs_gap, std::abs(gap));
    st.worst = {{"family", family}, {"rank", rank}, {"sample_index", index}, {"state", to_json(x)},
                {"f_cqt_closed", rec.breakdown.f_cqt}, {"f_cqt_oracle", o.f_cqt}, {"gap", gap}};
  }
  if (family_formula) {
    st.max_family_formula_diff = std::max(st.max_family_formula_diff, std::abs(*family_formula - rec.breakdown.f_cqt));
    st.max_family_formula_overshoot = std::max(st.max_family_formula_overshoot, *family_formula - o.f_cqt);
  }
  const double sector_blind_over = rec.breakdown.sector_blind_f_cqt - o.f_cqt;
  st.max_sector_blind_overshoot = std::max(st.max_sector_blind_overshoot, sector_blind_over);
  if (sector_blind_over > tol) ++st.sector_blind_overshoots;
  if (rec.cqt_valid) ++st.cqt_valid;
  if (rec.breakdown.cp < 0.0) ++st.cp_negative;
  if (rec.breakdown.f_nc > kClassicalLimit) ++st.f_nc_above_classical;
}

Json stats_json(const FamilyStats& st, bool hard, bool pass) {
  Json j;
  j["hard"] = hard;
  j["pass"] = pass;
  j["states"] = st.states;
  j["max_abs_oracle_gap"] = st.max_abs_gap;
  j["max_oracle_gap"] = st.max_gap;
  j["min_oracle_gap"] = st.min_gap;
  j["cqt_valid"] = st.cqt_valid;
  j["cp_negative"] = st.cp_negative;
  j["f_nc_above_classical"] = st.f_nc_above_classical;
  j["max_family_formula_vs_closed"] = st.max_family_formula_diff;
  j["max_family_formula_overshoot"] = st.max_family_formula_overshoot;
  j["max_sector_blind_overshoot"] = st.max_sector_blind_overshoot;
  j["sector_blind_overshoot_states"] = st.sector_blind_overshoots;
  j["worst"] = st.worst;
  return j;
}

}  // namespace

Json nmems_rank2_adjudication(const OracleSettings& settings) {
  Json rows = Json::array();
  for (int k = 5; k <= 10; ++k) {
    const double p1 = k / 10.0;
    const Spectrum s = Spectrum::from_values({p1, 1.0 - p1, 0, 0, 0, 0, 0, 0});
    const XState x = nmems_from_spectrum(s);
    const OracleResult o = oracle_f_cqt(embed_unchecked(x), settings);
    const double eq = f_cqt_nmems_closed(s);
    rows.push_back({{"p1", p1},
                    {"f_cqt_family_formula", eq},
                    {"f_cqt_closed", f_cqt_closed(x).f_cqt},
                    {"f_cqt_oracle", o.f_cqt},
                    {"gap", eq - o.f_cqt},
                    {"f_nc_oracle", o.f_nc},
                    {"theta", o.best_basis.theta},
                    {"phi", o.best_basis.phi}});
  }
  return rows;
}

VerifyOutcome run_verify(const VerifyConfig& cfg) {
  VerifyOutcome out;
  Json families;
  std::ostringstream summary;
  summary.precision(6);
  for (const auto& name : cfg.families) {
    FamilyStats st;
    bool hard = true;
    if (name == "mems" || name == "nmems") {
      const Family fam = parse_family(name);
      hard = fam == Family::mems;
      for (int rank : cfg.ranks) {
        for (int k = 0; k < cfg.samples; ++k) {
          const Spectrum s = sample_spectrum(rank, cfg.seed, static_cast<std::uint64_t>(k));
          const double formula = fam == Family::mems ? f_cqt_mems_closed(s) : f_cqt_nmems_closed(s);
          record(st, name, rank, k, family_state(fam, s), formula, cfg.oracle_settings, cfg.tol);
        }
      }
    } else if (name == "mems-gamma") {
      for (int k = 0; k < kGammaGridPoints; ++k) {
        record(st, name, 0, k, mems_from_gamma(k / 200.0), std::nullopt, cfg.oracle_settings, cfg.tol);
      }
    } else if (name == "ghz-werner") {
      double dev = 0.0;
      double dev_nc = 0.0;
      for (int k = 0; k <= 20; ++k) {
        const double v = k / 20.0;
        const XState x = ghz_werner(v);
        record(st, name, 0, k, x, std::nullopt, cfg.oracle_settings, cfg.tol);
        const OracleResult o = oracle_f_cqt(embed_unchecked(x), cfg.oracle_settings);
        dev = std::max(dev, std::abs(o.f_cqt - (1.0 + v) / 2.0));
        dev_nc = std::max(dev_nc, std::abs(o.f_nc - (3.0 + v) / 6.0));
      }
      const bool pass = dev <= cfg.werner_tol && dev_nc <= cfg.werner_tol && st.cp_negative == 0;
      Json j = stats_json(st, true, pass);
      j["max_abs_dev_f_cqt"] = dev;
      j["max_abs_dev_f_nc"] = dev_nc;
      families[name] = j;
      out.hard_checks_passed = out.hard_checks_passed && pass;
      summary << name << ": max |oracle - (1+v)/2| = " << dev << ", max |F_NC oracle - (3+v)/6| = " << dev_nc
              << (pass ? "  [ok]\n" : "  [FAIL]\n");
      continue;
    } else {
      throw ValidationError("config", "unknown verify family '" + name + "'");
    }
    const bool pass = !hard || (st.max_abs_gap <= cfg.tol && st.cp_negative == 0);
    families[name] = stats_json(st, hard, pass);
    out.hard_checks_passed = out.hard_checks_passed && pass;
    summary << name << (hard ? " (hard)" : " (soft)") << ": " << st.states
            << " states, max |closed - oracle| = " << st.max_abs_gap << ", cqt_valid = " << st.cqt_valid
            << ", CP<0 = " << st.cp_negative << ", F_NC>2/3 = " << st.f_nc_above_classical
            << ", family formula overshoot = " << st.max_family_formula_overshoot
            << ", sector-blind overshoot = " << st.max_sector_blind_overshoot << (pass ? "  [ok]\n" : "  [FAIL]\n");
  }

  Json report;
  report["schema"] = kCsvSchema;
  report["seed"] = cfg.seed;
  report["samples_per_rank"] = cfg.samples;
  report["ranks"] = cfg.ranks;
  report["tol"] = cfg.tol;
  report["families"] = families;
  const bool wants_nmems =
      std::find(cfg.families.begin(), cfg.families.end(), "nmems") != cfg.families.end();
  if (wants_nmems) {
    report["findings"]["nmems_rank2_adjudication"] = nmems_rank2_adjudication(cfg.oracle_settings);
    summary << "nmems rank-2 adjudication (family formula - oracle):";
    for (const auto& r : report["findings"]["nmems_rank2_adjudication"]) {
      summary << " p1=" << r["p1"].get<double>() << ":" << r["gap"].get<double>();
    }
    summary << "\n";
  }
  report["hard_checks_passed"] = out.hard_checks_passed;
  out.report = std::move(report);
  out.summary = summary.str();
  return out;
}

}  // namespace cqt
