#include "diffrep/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "diffrep/error.hpp"

namespace diffrep {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

std::int64_t as_integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

Json quantity_json(const Quantity& q) {
  if (q.is_exact) return to_string(q.exact);
  return q.approx;
}

}  // namespace

Json to_json(const GroupSpec& group) {
  Json j;
  switch (group.kind()) {
    case GroupSpec::Kind::cyclic:
      j["kind"] = "cyclic";
      j["order"] = group.order();
      break;
    case GroupSpec::Kind::integer_window:
      j["kind"] = "integer_window";
      j["halfwidth"] = group.halfwidth();
      break;
    case GroupSpec::Kind::product:
      j["kind"] = "product";
      j["orders"] = group.factors();
      break;
  }
  return j;
}

GroupSpec group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad("group needs a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "cyclic") {
    if (!j.contains("order")) bad("cyclic group needs 'order'");
    return GroupSpec::cyclic(as_integer(j["order"], "order"));
  }
  if (kind == "integer_window") {
    if (!j.contains("halfwidth")) bad("integer_window needs 'halfwidth'");
    return GroupSpec::integer_window(as_integer(j["halfwidth"], "halfwidth"));
  }
  if (kind == "product") {
    if (!j.contains("orders") || !j["orders"].is_array()) bad("product group needs an 'orders' array");
    std::vector<std::int64_t> orders;
    for (const auto& o : j["orders"]) orders.push_back(as_integer(o, "product order"));
    return GroupSpec::product(std::move(orders));
  }
  bad("unknown group kind '" + kind + "'");
}

Json element_to_json(const GroupSpec& group, Element e) {
  if (group.kind() == GroupSpec::Kind::product) return group.coordinates(e);
  return e.code;
}

Element element_from_json(const GroupSpec& group, const Json& j) {
  switch (group.kind()) {
    case GroupSpec::Kind::cyclic: {
      const std::int64_t v = as_integer(j, "element");
      if (v <= -group.order() || v >= group.order())
        bad("element " + std::to_string(v) + " out of range for " + group.describe());
      return group.from_integer(v);
    }
    case GroupSpec::Kind::integer_window: {
      const std::int64_t v = as_integer(j, "element");
      if (v < -group.halfwidth() || v > group.halfwidth())
        bad("element " + std::to_string(v) + " outside " + group.describe());
      return Element{v};
    }
    case GroupSpec::Kind::product: {
      if (!j.is_array() || j.size() != group.factors().size())
        bad("product element must be an array of " + std::to_string(group.factors().size()) + " coordinates");
      std::vector<std::int64_t> coords;
      for (std::size_t i = 0; i < j.size(); ++i) {
        const std::int64_t c = as_integer(j[i], "coordinate");
        if (c < 0 || c >= group.factors()[i]) bad("coordinate " + std::to_string(c) + " out of range");
        coords.push_back(c);
      }
      return group.from_coordinates(coords);
    }
  }
  bad("unreachable");
}

Json to_json(const GSet& set) {
  Json j;
  j["group"] = to_json(set.group());
  Json elems = Json::array();
  for (Element e : set.elements()) elems.push_back(element_to_json(set.group(), e));
  j["elements"] = std::move(elems);
  return j;
}

GSet set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("elements")) bad("set needs 'group' and 'elements'");
  const GroupSpec group = group_from_json(j["group"]);
  if (!j["elements"].is_array()) bad("'elements' must be an array");
  std::vector<Element> elems;
  std::set<Element> seen;
  for (const auto& item : j["elements"]) {
    const Element e = element_from_json(group, item);
    if (!seen.insert(e).second) bad("duplicate element " + item.dump());
    elems.push_back(e);
  }
  return GSet::from_elements(group, elems);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

GSet read_set_file(const std::filesystem::path& path) { return set_from_json(read_json_file(path)); }

Json to_json(const RepTable& table) {
  Json j;
  j["group"] = to_json(table.group());
  Json rows = Json::array();
  table.for_each_nonzero([&](Element d, std::uint64_t c) {
    rows.push_back(Json{{"element", element_to_json(table.group(), d)}, {"count", c}});
  });
  j["counts"] = std::move(rows);
  j["total"] = to_string(table.total());
  return j;
}

std::string to_csv(const RepTable& table) {
  std::ostringstream os;
  os << "element,count\n";
  table.for_each_nonzero([&](Element d, std::uint64_t c) {
    const Json e = element_to_json(table.group(), d);
    // product coordinates are joined with ':' to keep one column
    if (e.is_array()) {
      for (std::size_t i = 0; i < e.size(); ++i) os << (i ? ":" : "") << e[i].get<std::int64_t>();
    } else {
      os << e.get<std::int64_t>();
    }
    os << ',' << c << '\n';
  });
  return os.str();
}

Json to_json(const CheckReport& report) {
  Json j;
  j["name"] = report.name;
  j["verdict"] = std::string(to_string(report.verdict));
  j["hypotheses_met"] = report.hypotheses_met;
  j["lhs"] = quantity_json(report.lhs);
  j["rhs"] = quantity_json(report.rhs);
  if (report.witness) {
    Json w = Json::array();
    for (Element e : *report.witness) w.push_back(e.code);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  Json details = Json::object();
  for (const auto& [k, v] : report.details) details[k] = v;
  j["details"] = std::move(details);
  if (!report.instance.is_null()) j["instance"] = report.instance;
  return j;
}

Json to_json(const Measure0Witness& w) {
  Json j;
  j["epsilon"] = to_string(w.epsilon);
  j["n"] = w.n;
  j["base_lambda"] = w.base_lambda;
  j["multiplier"] = w.multiplier;
  Json lam = Json::array();
  for (Element e : w.lambda.elements()) lam.push_back(e.code);
  j["lambda"] = std::move(lam);
  j["lambda_size"] = w.lambda.size();
  j["a_size"] = w.a.size();
  j["diff_size"] = w.diff_size;
  j["threshold_count"] = w.threshold_count;
  j["bound"] = to_string(w.bound);
  j["set"] = to_json(w.a);
  return j;
}

Json to_json(const StepFunction& f) {
  Json values = Json::array();
  for (const auto& v : f.values()) {
    if (denominator(v) == 1 && abs(numerator(v)) < BigInt(1) << 62)
      values.push_back(static_cast<std::int64_t>(numerator(v)));
    else
      values.push_back(to_string(v));
  }
  return Json{{"cells", f.cells()}, {"values", std::move(values)}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) {
    // shortest round-trip text, then exact decimal parse
    return parse_rational(j.dump());
  }
  bad("expected a rational, got " + j.dump());
}

StepFunction step_function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array()) bad("step function needs a 'values' array");
  std::vector<Rational> values;
  for (const auto& v : j["values"]) values.push_back(rational_from_json(v));
  if (j.contains("cells") && as_integer(j["cells"], "cells") != static_cast<std::int64_t>(values.size()))
    bad("'cells' does not match the number of values");
  return StepFunction(std::move(values));
}

std::string to_csv(const PiecewiseLinear& g) {
  std::ostringstream os;
  os << "x,value\n";
  const auto n = static_cast<std::int64_t>(g.cells());
  for (std::int64_t j = -n; j <= n; ++j) os << to_string(Rational(j, n)) << ',' << to_string(g.knot(j)) << '\n';
  return os.str();
}

Json to_json(const FanReport& r) {
  Json j = to_json(r.as_report());
  j["rho"] = r.rho;
  j["delta"] = to_string(r.delta);
  j["omega"] = to_string(r.omega);
  j["L1"] = r.l1;
  j["L"] = r.l;
  j["cs_lower"] = r.cs_lower;
  return j;
}

}  // namespace diffrep
