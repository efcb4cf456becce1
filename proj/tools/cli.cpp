#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "diffrep/constructions.hpp"
#include "diffrep/continuous.hpp"
#include "diffrep/energy.hpp"
#include "diffrep/error.hpp"
#include "diffrep/io.hpp"
#include "diffrep/repfn.hpp"
#include "diffrep/verify.hpp"

namespace diffrep::cli {

namespace {

enum class Format { json, csv, text };

struct Params {
  std::string format = "text";
  unsigned jobs = 1;
  std::string dump;
  std::string instance;
  bool quiet = false;

  std::string set, against, diff, function;
  std::string method = "auto";
  std::string delta, epsilon;
  std::string ds;
  std::string product;
  int k = 0, l = 0, kmax = 0;
  std::int64_t p = 0, order = 0, halfwidth = 0, size = 0, a = 0, b = 0, interval = 0;
  std::uint64_t count = 0, seed = 0, samples = 0, max_size = 12;
  bool omega_k = false;
};

struct Output {
  Format format;
  std::ostream& out;
  std::ostream& err;
  std::string dump_path;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  return Format::text;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

int emit_report(const CheckReport& r, const Output& o) {
  switch (o.format) {
    case Format::json: o.out << to_json(r).dump(2) << '\n'; break;
    case Format::csv: {
      o.out << "key,value\n";
      o.out << "check," << r.name << '\n' << "verdict," << to_string(r.verdict) << '\n';
      o.out << "hypotheses_met," << (r.hypotheses_met ? "true" : "false") << '\n';
      o.out << "lhs," << r.lhs.str() << '\n' << "rhs," << r.rhs.str() << '\n';
      for (const auto& [k, v] : r.details) o.out << csv_escape(k) << ',' << csv_escape(v) << '\n';
      break;
    }
    case Format::text: {
      o.out << "check: " << r.name << '\n' << "verdict: " << to_string(r.verdict) << '\n';
      o.out << "hypotheses_met: " << (r.hypotheses_met ? "true" : "false") << '\n';
      o.out << "lhs: " << r.lhs.str() << '\n' << "rhs: " << r.rhs.str() << '\n';
      if (r.witness) {
        o.out << "witness:";
        for (Element e : *r.witness) o.out << ' ' << e.code;
        o.out << '\n';
      }
      for (const auto& [k, v] : r.details) o.out << k << ": " << v << '\n';
      break;
    }
  }
  if (r.verdict != Verdict::violated) return 0;
  const std::string inst = r.instance.dump(2);
  o.err << "violation; replay instance:\n" << inst << '\n';
  if (!o.dump_path.empty()) {
    std::ofstream f(o.dump_path);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + o.dump_path);
    f << inst << '\n';
  }
  return 2;
}

// Emits a flat record of named values.
int emit_record(const Json& record, const Output& o) {
  switch (o.format) {
    case Format::json: o.out << record.dump(2) << '\n'; break;
    case Format::csv:
      o.out << "key,value\n";
      for (const auto& [k, v] : record.items()) o.out << k << ',' << csv_escape(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      break;
    case Format::text:
      for (const auto& [k, v] : record.items()) o.out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      break;
  }
  return 0;
}

// A scalar in text mode prints bare, so shell pipelines can consume it.
int emit_scalar(const std::string& key, const std::string& value, Json extra, const Output& o) {
  if (o.format == Format::text) {
    o.out << value << '\n';
    return 0;
  }
  Json record = std::move(extra);
  record[key] = value;
  return emit_record(record, o);
}

GSet load_set(const std::string& path, const char* flag) {
  if (path.empty()) throw Error(ErrorKind::InvalidInput, std::string("missing --") + flag);
  return read_set_file(path);
}

Rational need_rational(const std::string& text, const char* flag) {
  if (text.empty()) throw Error(ErrorKind::InvalidInput, std::string("missing --") + flag);
  return parse_rational(text);
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "bad integer list '" + text + "'");
    }
  }
  return out;
}

GroupSpec group_from_flags(const Params& q) {
  if (!q.product.empty()) return GroupSpec::product(parse_list(q.product));
  if (q.halfwidth > 0) return GroupSpec::integer_window(q.halfwidth);
  if (q.order > 0) return GroupSpec::cyclic(q.order);
  if (q.p > 0) return GroupSpec::cyclic(q.p);
  throw Error(ErrorKind::InvalidInput, "specify a group with --order, --p, --halfwidth or --product");
}

SweepOptions sweep_options(const Params& q, std::ostream& err) {
  SweepOptions o;
  o.jobs = std::max(1u, q.jobs);
  if (!q.quiet) o.progress = [&err](std::string_view line) { err << line << '\n'; };
  return o;
}

// ---------------------------------------------------------------------------

int compute(const std::string& what, const Params& q, const Output& o) {
  const GSet s = load_set(q.set, "set");
  if (what == "reptable") {
    RepMethod m = RepMethod::automatic;
    if (q.method == "direct") m = RepMethod::direct;
    else if (q.method == "fft") m = RepMethod::fft;
    const RepTable t = rep_table(s, m);
    if (o.format == Format::json) o.out << to_json(t).dump(2) << '\n';
    else o.out << to_csv(t);
    return 0;
  }
  if (what == "energy") {
    const int k = q.k ? q.k : 2;
    if (q.l) {
      const auto a = energy_kl(s, k, q.l, EnergySide::via_k);
      const auto b = energy_kl(s, k, q.l, EnergySide::via_l);
      Json rec{{"k", k}, {"l", q.l}, {"via_k", to_string(a.value)}, {"via_l", to_string(b.value)},
               {"equal", a.value == b.value}};
      emit_record(rec, o);
      return a.value == b.value ? 0 : 2;
    }
    return emit_scalar("energy", to_string(energy_k(s, k)), Json{{"k", k}}, o);
  }
  if (what == "tcount") {
    const GSet a = q.against.empty() ? s : load_set(q.against, "against");
    if (q.k < 1) throw Error(ErrorKind::InvalidInput, "--k must be >= 1");
    return emit_scalar("value", to_string(t_count(s, a, q.k, std::max(1u, q.jobs)).value), Json{{"k", q.k}}, o);
  }
  if (what == "mu") {
    if (q.k > 2) {
      const MuKResult m = mu_k(s, q.k);
      Json rec{{"k", q.k}, {"found", m.found}};
      Json w = Json::array();
      for (Element e : m.witness) w.push_back(element_to_json(s.group(), e));
      rec["witness"] = std::move(w);
      return emit_scalar("mu", std::to_string(m.value), std::move(rec), o);
    }
    const MuResult m = mu_with_witness(s);
    return emit_scalar("mu", std::to_string(m.value), Json{{"witness", element_to_json(s.group(), m.witness)}}, o);
  }
  throw Error(ErrorKind::InvalidInput, "unknown compute target " + what);
}

int verify(const std::string& what, const Params& q, const Output& o) {
  const SweepOptions opt = sweep_options(q, o.err);
  if (what == "intopt") {
    if (!q.set.empty()) return emit_report(verify_intopt(load_set(q.set, "set"), load_set(q.diff, "diff"), q.k), o);
    return emit_report(exhaustive_intopt(q.p, q.kmax ? q.kmax : 3, opt), o);
  }
  if (what == "id-ax") return emit_report(verify_id_ax(load_set(q.set, "set"), load_set(q.diff, "diff"), q.k ? q.k : 1), o);
  if (what == "convexity") {
    if (q.ds.empty()) return emit_report(convexity_sweep(q.p, q.k, opt), o);
    std::vector<Element> ds;
    const GroupSpec g = GroupSpec::cyclic(q.p);
    for (auto v : parse_list(q.ds)) ds.push_back(g.from_integer(v));
    return emit_report(convexity_check(q.p, q.k, ds), o);
  }
  if (what == "majorization") {
    if (!q.set.empty()) return emit_report(majorization_check(load_set(q.set, "set"), load_set(q.diff, "diff")), o);
    return emit_report(exhaustive_majorization(q.p, opt), o);
  }
  if (what == "chain") {
    if (!q.set.empty()) return emit_report(check_basic_chain(load_set(q.set, "set"), q.k ? q.k : 1), o);
    return emit_report(random_chain_sweep(q.p, q.count ? q.count : 1000, q.seed, q.max_size, q.kmax ? q.kmax : 3, opt), o);
  }
  if (what == "modp") {
    const Rational delta = need_rational(q.delta, "delta");
    if (!q.set.empty()) return emit_report(theorem_modp_check(load_set(q.set, "set"), delta), o);
    return emit_report(exhaustive_modp(q.p, delta, opt), o);
  }
  if (what == "extd") {
    const Rational delta = need_rational(q.delta, "delta");
    if (!q.set.empty()) return emit_report(theorem_extD_check(load_set(q.set, "set"), q.k, delta), o);
    return emit_report(extd_sweep(q.p, q.k, delta, q.count, q.seed, opt), o);
  }
  if (what == "arbg") {
    if (!q.set.empty()) return emit_report(theorem_arbG_check(load_set(q.set, "set")), o);
    if (q.interval > 0) return emit_report(theorem_arbG_check(interval_set(group_from_flags(q), 0, q.interval - 1)), o);
    return emit_report(theorem_arbG_check(random_set(group_from_flags(q), static_cast<std::size_t>(q.size), q.seed)), o);
  }
  if (what == "fan") {
    if (q.function.empty()) return emit_report(fan_sweep(q.count ? q.count : 1000, q.seed, opt), o);
    const StepFunction f = step_function_from_json(read_json_file(q.function));
    const Rational delta = need_rational(q.delta, "delta");
    if (q.omega_k) return emit_report(omega_k_report(f, delta, q.k ? std::optional<int>(q.k) : std::nullopt), o);
    return emit_report(theorem_fan_check(f, delta).as_report(), o);
  }
  if (what == "corollary") {
    if (!q.set.empty()) return emit_report(corollary_check(load_set(q.set, "set"), q.k), o);
    return emit_report(corollary_sweep(q.p, q.k, opt), o);
  }
  if (what == "dense-bound") {
    if (!q.set.empty()) return emit_report(dense_bound_check(load_set(q.set, "set"), q.k ? q.k : 2), o);
    return emit_report(dense_bound_sweep(group_from_flags(q), q.kmax ? q.kmax : 4, opt), o);
  }
  throw Error(ErrorKind::InvalidInput, "unknown verify target " + what);
}

int construct(const std::string& what, const Params& q, const Output& o) {
  auto emit_set = [&](const GSet& s) {
    if (o.format == Format::text) {
      for (Element e : s.elements()) o.out << element_to_json(s.group(), e).dump() << '\n';
    } else {
      o.out << to_json(s).dump(o.format == Format::json ? 2 : -1) << '\n';
    }
    return 0;
  };
  if (what == "sidon") return emit_set(sidon(static_cast<std::size_t>(q.size)));
  if (what == "measure0") {
    const Measure0Witness w = measure0_witness(need_rational(q.epsilon, "epsilon"));
    const auto failures = measure0_invariant_failures(w);
    Json j = to_json(w);
    j["invariant_failures"] = failures;
    if (o.format == Format::json) o.out << j.dump(2) << '\n';
    else {
      j.erase("set");
      emit_record(j, o);
    }
    return failures.empty() ? 0 : 2;
  }
  if (what == "interval") return emit_set(interval_set(group_from_flags(q), q.a, q.b));
  if (what == "random") return emit_set(random_set(group_from_flags(q), static_cast<std::size_t>(q.size), q.seed));
  throw Error(ErrorKind::InvalidInput, "unknown construct target " + what);
}

int continuous(const std::string& what, const Params& q, const Output& o) {
  if (what == "t") {
    const int k = q.k ? q.k : 1;
    const Rational exact = continuous_t(k);
    Json rec{{"k", k}, {"slicing", to_string(exact)}, {"formula", to_string(continuous_t_formula(k))}};
    if (q.samples) rec["monte_carlo"] = continuous_t_monte_carlo(k, q.samples, q.seed);
    if (o.format == Format::text && !q.samples) {
      o.out << to_string(exact) << '\n';
      return 0;
    }
    return emit_record(rec, o);
  }
  if (q.function.empty()) throw Error(ErrorKind::InvalidInput, "missing --function");
  const StepFunction f = step_function_from_json(read_json_file(q.function));
  if (what == "autocorr") {
    const PiecewiseLinear g = autocorrelate(f);
    if (o.format == Format::json) {
      Json knots = Json::array();
      for (const auto& v : g.knots()) knots.push_back(to_string(v));
      const Norms nm = norms(f);
      o.out << Json{{"cells", g.cells()}, {"knots", std::move(knots)}, {"l1", to_string(nm.l1)},
                    {"l2_squared", to_string(nm.l2_squared)}, {"rho_squared", to_string(nm.rho_squared)}}
                   .dump(2)
            << '\n';
    } else {
      o.out << to_csv(g);
    }
    return 0;
  }
  if (what == "omega") {
    const Rational w = omega(f, need_rational(q.delta, "delta"));
    return emit_scalar("omega", to_string(w), Json{{"delta", q.delta}}, o);
  }
  throw Error(ErrorKind::InvalidInput, "unknown continuous target " + what);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Difference-representation statistics and verifiers for finite abelian groups"};
  app.name("diffrep");
  app.require_subcommand(1);
  Params q;

  app.add_option("--format", q.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--jobs", q.jobs, "Worker threads for sweeps")->check(CLI::Range(1u, 1024u));
  app.add_option("--dump", q.dump, "Write the replay instance of a violated check to this file");
  app.add_flag("--quiet", q.quiet, "Suppress progress lines");
  app.add_option("--instance", q.instance, "Replay a dumped instance JSON")->check(CLI::ExistingFile);
  app.fallthrough();

  auto file_opt = [](CLI::App* sub, const char* name, std::string& dst, const char* help) {
    sub->add_option(name, dst, help)->check(CLI::ExistingFile);
  };

  std::string target;
  auto* compute_cmd = app.add_subcommand("compute", "Compute r_A, energies, clique counts and mu");
  compute_cmd->add_option("target", target, "reptable | energy | tcount | mu")
      ->required()
      ->check(CLI::IsMember({"reptable", "energy", "tcount", "mu"}));
  file_opt(compute_cmd, "--set", q.set, "Set JSON (the D of tcount)");
  file_opt(compute_cmd, "--against", q.against, "Set A the tcount tuples are drawn from (default: --set)");
  compute_cmd->add_option("--k", q.k, "Order k");
  compute_cmd->add_option("--l", q.l, "Second order l for E_{k,l}");
  compute_cmd->add_option("--method", q.method, "reptable method")->check(CLI::IsMember({"auto", "direct", "fft"}));

  auto* verify_cmd = app.add_subcommand("verify", "Run a checker or an exhaustive sweep");
  verify_cmd->add_option("target", target, "check name")
      ->check(CLI::IsMember({"intopt", "id-ax", "convexity", "majorization", "chain", "modp", "extd", "arbg", "fan",
                             "corollary", "dense-bound"}));
  file_opt(verify_cmd, "--set", q.set, "Set A (or D for corollary and dense-bound)");
  file_opt(verify_cmd, "--diff", q.diff, "Set D");
  file_opt(verify_cmd, "--function", q.function, "Step function JSON");
  verify_cmd->add_option("--p", q.p, "Prime order of the cyclic group");
  verify_cmd->add_option("--order", q.order, "Cyclic group order");
  verify_cmd->add_option("--product", q.product, "Comma-separated cyclic orders");
  verify_cmd->add_option("--k", q.k, "Order k");
  verify_cmd->add_option("--kmax", q.kmax, "Largest k");
  verify_cmd->add_option("--delta", q.delta, "delta as p/q or exact decimal");
  verify_cmd->add_option("--ds", q.ds, "Comma-separated shifts for convexity");
  verify_cmd->add_option("--count", q.count, "Number of random instances");
  verify_cmd->add_option("--seed", q.seed, "Seed");
  verify_cmd->add_option("--max-size", q.max_size, "Largest random set size (chain)");
  verify_cmd->add_option("--size", q.size, "Random set size (arbg)");
  verify_cmd->add_option("--interval", q.interval, "Use the interval [0, m) (arbg)");
  verify_cmd->add_flag("--omega-k", q.omega_k, "Check the omega^k inequality instead of the theorem bound");

  auto* construct_cmd = app.add_subcommand("construct", "Generate example sets");
  construct_cmd->add_option("target", target, "sidon | measure0 | interval | random")
      ->required()
      ->check(CLI::IsMember({"sidon", "measure0", "interval", "random"}));
  construct_cmd->add_option("--size", q.size, "Number of elements");
  construct_cmd->add_option("--epsilon", q.epsilon, "epsilon as p/q");
  construct_cmd->add_option("--order", q.order, "Cyclic group order");
  construct_cmd->add_option("--halfwidth", q.halfwidth, "Integer window half-width");
  construct_cmd->add_option("--product", q.product, "Comma-separated cyclic orders");
  construct_cmd->add_option("--a", q.a, "Interval start");
  construct_cmd->add_option("--b", q.b, "Interval end (inclusive)");
  construct_cmd->add_option("--seed", q.seed, "Seed");

  auto* cont_cmd = app.add_subcommand("continuous", "Step-function autocorrelation and the continuous T count");
  cont_cmd->add_option("target", target, "autocorr | omega | t")
      ->required()
      ->check(CLI::IsMember({"autocorr", "omega", "t"}));
  file_opt(cont_cmd, "--function", q.function, "Step function JSON");
  cont_cmd->add_option("--delta", q.delta, "delta as p/q");
  cont_cmd->add_option("--k", q.k, "Dimension k");
  cont_cmd->add_option("--samples", q.samples, "Monte-Carlo samples");
  cont_cmd->add_option("--seed", q.seed, "Seed");

  for (auto* sub : {compute_cmd, verify_cmd, construct_cmd, cont_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  const Output o{parse_format(q.format), out, err, q.dump};
  try {
    if (!q.instance.empty()) {
      if (!verify_cmd->parsed()) throw Error(ErrorKind::InvalidInput, "--instance is only valid with verify");
      return emit_report(replay_check(read_json_file(q.instance), sweep_options(q, err)), o);
    }
    if (compute_cmd->parsed()) return compute(target, q, o);
    if (verify_cmd->parsed()) {
      if (target.empty()) throw Error(ErrorKind::InvalidInput, "verify needs a target or --instance");
      return verify(target, q, o);
    }
    if (construct_cmd->parsed()) return construct(target, q, o);
    if (cont_cmd->parsed()) return continuous(target, q, o);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 1;
}

}  // namespace diffrep::cli
