#include "cqt/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cqt/error.hpp"

namespace cqt {

namespace {

std::array<double, 4> read_quad(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 4) {
    throw ValidationError("parse", std::string("field '") + key + "' must be an array of 4 numbers");
  }
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& v = j.at(key).at(i);
    if (!v.is_number()) throw ValidationError("parse", std::string("field '") + key + "' must hold numbers");
    out[i] = v.get<double>();
  }
  return out;
}

double read_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ValidationError("parse", std::string("field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

}  // namespace

Json to_json(const XState& x) {
  Json j;
  j["a"] = x.a;
  j["b"] = x.b;
  Json z = Json::array();
  for (const auto& c : x.z) z.push_back({c.real(), c.imag()});
  j["z"] = z;
  return j;
}

XState xstate_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("parse", "X state must be a JSON object");
  XState x;
  x.a = read_quad(j, "a");
  x.b = read_quad(j, "b");
  if (!j.contains("z") || !j.at("z").is_array() || j.at("z").size() != 4) {
    throw ValidationError("parse", "field 'z' must be an array of 4 [re, im] pairs");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& c = j.at("z").at(i);
    if (c.is_number()) {
      x.z[i] = c.get<double>();
    } else if (c.is_array() && c.size() == 2 && c.at(0).is_number() && c.at(1).is_number()) {
      x.z[i] = Complex(c.at(0).get<double>(), c.at(1).get<double>());
    } else {
      throw ValidationError("parse", "field 'z' entries must be [re, im] pairs");
    }
  }
  validate(x);
  return x;
}

FamilySpec family_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw ValidationError("parse", "family spec needs a string field 'family'");
  }
  FamilySpec spec;
  spec.family = parse_family(j.at("family").get<std::string>());
  if (spec.family == Family::mems_gamma) {
    spec.gamma = read_number(j, "gamma");
    mems_gamma_weights(spec.gamma);
    return spec;
  }
  if (j.contains("spectrum")) {
    const auto& arr = j.at("spectrum");
    if (!arr.is_array() || arr.size() > 8 || arr.empty()) {
      throw ValidationError("parse", "field 'spectrum' must be an array of at most 8 numbers");
    }
    std::array<double, 8> p{};
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr.at(i).is_number()) throw ValidationError("parse", "spectrum entries must be numbers");
      p[i] = arr.at(i).get<double>();
    }
    spec.spectrum = Spectrum::from_values(p);
    spec.rank = spec.spectrum->rank();
    return spec;
  }
  if (!j.contains("rank") || !j.at("rank").is_number_integer()) {
    throw ValidationError("parse", "family spec needs an integer 'rank' (or a 'spectrum')");
  }
  spec.rank = j.at("rank").get<int>();
  spec.p = read_number(j, "p");
  spec.spectrum = boundary_spectrum(spec.rank, spec.p);
  return spec;
}

XState family_spec_state(const FamilySpec& spec) {
  if (spec.family == Family::mems_gamma) return mems_from_gamma(spec.gamma);
  return family_state(spec.family, spec.spectrum.value_or(boundary_spectrum(spec.rank, spec.p)));
}

XState builtin_state(const std::string& name) {
  if (name == "ghz") return mems_from_spectrum(Spectrum::from_values({1, 0, 0, 0, 0, 0, 0, 0}));
  if (name == "max-mixed") return ghz_werner(0.0);
  const std::string prefix = "ghz-werner:v=";
  if (name.rfind(prefix, 0) == 0) {
    const std::string tail = name.substr(prefix.size());
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), v);
    if (ec != std::errc() || ptr != tail.data() + tail.size()) {
      throw ValidationError("parse", "cannot parse Werner weight in '" + name + "'");
    }
    return ghz_werner(v);
  }
  throw ValidationError("unknown-builtin", "unknown builtin state '" + name + "'");
}

XState state_from_json(const Json& j) {
  if (j.is_object() && j.contains("family")) return family_spec_state(family_spec_from_json(j));
  return xstate_from_json(j);
}

XState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("io", "cannot open state file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("parse", std::string("invalid JSON: ") + e.what());
  }
  return state_from_json(j);
}

Json to_json(const ClosedFormBreakdown& b) {
  Json j;
  j["f_cqt"] = b.f_cqt;
  j["f_nc"] = b.f_nc;
  j["cp"] = b.cp;
  j["argmax_candidate"] = b.argmax_candidate;
  j["candidates"] = b.candidates;
  j["delta1"] = b.delta1;
  j["delta2"] = b.delta2;
  j["delta3"] = b.delta3;
  j["w"] = b.w;
  j["sector_blind_candidates"] = b.sector_blind;
  j["sector_blind_f_cqt"] = b.sector_blind_f_cqt;
  return j;
}

Json to_json(const MetricsRecord& m) {
  Json j;
  j["s_l"] = m.s_l;
  j["gme"] = m.gme;
  j["cqt_valid"] = m.cqt_valid;
  j["closed_form"] = to_json(m.breakdown);
  return j;
}

Json to_json(const OracleResult& r) {
  Json j;
  j["f_cqt"] = r.f_cqt;
  j["f_nc"] = r.f_nc;
  j["best_basis"] = {{"theta", r.best_basis.theta}, {"phi", r.best_basis.phi}};
  j["branch_probs"] = r.branch_probs;
  j["branch_fefs"] = r.branch_fefs;
  return j;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace cqt
