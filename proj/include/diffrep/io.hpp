#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "diffrep/constructions.hpp"
#include "diffrep/continuous.hpp"
#include "diffrep/group.hpp"
#include "diffrep/repfn.hpp"
#include "diffrep/report.hpp"

namespace diffrep {

using Json = nlohmann::ordered_json;

Json to_json(const GroupSpec& group);
GroupSpec group_from_json(const Json& j);

/// Cyclic: residue; window: signed integer; product: coordinate array.
Json element_to_json(const GroupSpec& group, Element e);
/// Cyclic groups accept integers in (−n, n); everything else must lie in the carrier.
Element element_from_json(const GroupSpec& group, const Json& j);

/// {"group": {...}, "elements": [...]}
Json to_json(const GSet& set);
/// Validates the group and every element; duplicates are rejected.
GSet set_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
GSet read_set_file(const std::filesystem::path& path);

Json to_json(const RepTable& table);
/// Columns: element,count (only nonzero counts).
std::string to_csv(const RepTable& table);

Json to_json(const CheckReport& report);

Json to_json(const Measure0Witness& witness);

/// {"cells": N, "values": [...]} with values as numbers or "p/q" strings.
Json to_json(const StepFunction& f);
StepFunction step_function_from_json(const Json& j);

/// Columns: x,value at every knot, exact rationals.
std::string to_csv(const PiecewiseLinear& g);

Json to_json(const FanReport& report);

/// Accepts JSON numbers (integers) or strings parsed with parse_rational.
Rational rational_from_json(const Json& j);

}  // namespace diffrep
