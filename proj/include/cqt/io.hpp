#pragma once

// JSON and text encodings of states and family specifications.

#include <string>
#include <optional>

#include <json.hpp>

#include "cqt/families.hpp"
#include "cqt/metrics.hpp"
#include "cqt/oracle.hpp"
#include "cqt/state.hpp"

namespace cqt {

using Json = nlohmann::ordered_json;

/// {"a":[4], "b":[4], "z":[[re,im] x 4]}
Json to_json(const XState& x);
/// Enforces the XState invariants; ValidationError("parse") on malformed input.
XState xstate_from_json(const Json& j);

/// {"family":"nmems","rank":3,"p":0.25}, {"family":"mems-gamma","gamma":0.3}
/// or {"family":"mems","spectrum":[p1..p8]}.
struct FamilySpec {
  Family family = Family::nmems;
  int rank = 0;
  double p = 0.0;
  double gamma = 0.0;
  std::optional<Spectrum> spectrum;
};
FamilySpec family_spec_from_json(const Json& j);
XState family_spec_state(const FamilySpec& spec);

/// "ghz", "max-mixed" or "ghz-werner:v=<x>".
XState builtin_state(const std::string& name);

/// A JSON document is either an X state or a family spec.
XState state_from_json(const Json& j);
XState read_state_file(const std::string& path);

Json to_json(const ClosedFormBreakdown& b);
Json to_json(const MetricsRecord& m);
Json to_json(const OracleResult& r);

/// Shortest decimal that round-trips to the same double.
std::string format_number(double v);

}  // namespace cqt
