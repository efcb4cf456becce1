#include "diffrep/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>

#include "diffrep/constructions.hpp"
#include "diffrep/continuous.hpp"
#include "diffrep/energy.hpp"
#include "diffrep/error.hpp"
#include "diffrep/io.hpp"
#include "diffrep/parallel.hpp"
#include "diffrep/repfn.hpp"

namespace diffrep {

namespace {

[[noreturn]] void hypothesis(const std::string& what) { throw Error(ErrorKind::HypothesisViolated, what); }

void require_prime_cyclic(const GroupSpec& g, std::int64_t min_p, const char* check) {
  if (!g.is_prime_cyclic() || g.order() < min_p)
    hypothesis(std::string(check) + " needs a cyclic group of prime order >= " + std::to_string(min_p) + ", got " +
               g.describe());
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent per-instance seed, so sweeps do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return splitmix(seed ^ splitmix(index + 1)); }

GSet set_from_mask(const GroupSpec& g, std::uint64_t mask) {
  Bitset bits(g.carrier_size());
  bits.words()[0] = mask;
  return GSet::from_bits(g, std::move(bits));
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  return os.str();
}

// Emits a progress line each time another tenth of the units completes.
class Progress {
 public:
  Progress(const SweepOptions& options, std::string label, std::size_t total)
      : options_(options), label_(std::move(label)), total_(total) {}

  void tick() {
    if (!options_.progress || total_ == 0) return;
    const std::size_t done = ++done_;
    const std::size_t tenth = done * 10 / total_;
    std::lock_guard lock(mutex_);
    if (tenth > last_tenth_) {
      last_tenth_ = tenth;
      options_.progress(label_ + ": " + std::to_string(done) + "/" + std::to_string(total_));
    }
  }

 private:
  const SweepOptions& options_;
  std::string label_;
  std::size_t total_;
  std::atomic<std::size_t> done_{0};
  std::mutex mutex_;
  std::size_t last_tenth_ = 0;
};

// Aggregate of many single checks; merged in unit order.
struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t holds = 0;
  std::uint64_t violated = 0;
  std::uint64_t vacuous = 0;
  std::uint64_t borderline = 0;
  std::uint64_t not_applicable = 0;
  std::uint64_t tight = 0;
  std::optional<CheckReport> first_violation;

  void add(const CheckReport& r) {
    ++checks;
    switch (r.verdict) {
      case Verdict::holds: ++holds; break;
      case Verdict::violated:
        ++violated;
        if (!first_violation) first_violation = r;
        break;
      case Verdict::vacuous: ++vacuous; break;
      case Verdict::borderline: ++borderline; break;
      case Verdict::not_applicable: ++not_applicable; break;
    }
  }

  void merge(const Tally& o) {
    checks += o.checks;
    holds += o.holds;
    violated += o.violated;
    vacuous += o.vacuous;
    borderline += o.borderline;
    not_applicable += o.not_applicable;
    tight += o.tight;
    if (!first_violation && o.first_violation) first_violation = o.first_violation;
  }

  CheckReport finish(std::string name, Json instance) const {
    CheckReport r;
    r.name = std::move(name);
    r.hypotheses_met = true;
    r.lhs = Quantity::of(BigInt(violated));
    r.rhs = Quantity::of(BigInt(0));
    r.verdict = violated ? Verdict::violated : Verdict::holds;
    r.note("checks", std::to_string(checks));
    r.note("holds", std::to_string(holds));
    r.note("violated", std::to_string(violated));
    r.note("vacuous", std::to_string(vacuous));
    r.note("borderline", std::to_string(borderline));
    r.note("not_applicable", std::to_string(not_applicable));
    if (tight) r.note("tight", std::to_string(tight));
    if (first_violation) {
      r.witness = first_violation->witness;
      r.note("counterexample", first_violation->instance.dump());
    }
    r.instance = std::move(instance);
    return r;
  }
};

Json instance_of(const char* check) { return Json{{"check", check}}; }

// K < |A|^δ, decided exactly as |D|^q < |A|^(p+q) for δ = p/q.
bool doubling_below_power(std::uint64_t diff_size, std::uint64_t size, const Rational& delta) {
  const BigInt p = numerator(delta), q = denominator(delta);
  if (q <= 4096 && p <= 4096) {
    const auto qu = static_cast<unsigned>(q), pu = static_cast<unsigned>(p);
    return ipow(BigInt(diff_size), qu) < ipow(BigInt(size), pu + qu);
  }
  const double lhs = std::log(static_cast<double>(diff_size)) - std::log(static_cast<double>(size));
  return lhs < to_double(delta) * std::log(static_cast<double>(size));
}

}  // namespace

// ---------------------------------------------------------------------------
// Proposition on centered intervals

CheckReport verify_intopt(const GSet& a, const GSet& d, int k) {
  require_same_group(a, d);
  require_prime_cyclic(a.group(), 5, "intopt");
  if (a.empty()) hypothesis("intopt needs a nonempty A");
  if (!is_symmetric_with_zero(d)) hypothesis("intopt needs 0 in D = -D");
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");

  const GroupSpec& g = a.group();
  const GSet a_bar = centered_interval(g, static_cast<std::int64_t>(a.size()));
  const GSet d_bar = centered_interval(g, static_cast<std::int64_t>(d.size()));
  const BigInt lhs = t_count(d, a, k).value;
  const BigInt rhs = t_count(d_bar, a_bar, k).value;

  CheckReport r;
  r.name = "intopt";
  r.hypotheses_met = true;
  r.lhs = Quantity::of(lhs);
  r.rhs = Quantity::of(rhs);
  r.verdict = lhs <= rhs ? Verdict::holds : Verdict::violated;
  r.witness = a.elements();
  r.note("k", std::to_string(k));
  r.note("size_a", std::to_string(a.size()));
  r.note("size_d", std::to_string(d.size()));
  r.instance = instance_of("intopt");
  r.instance["a"] = to_json(a);
  r.instance["d"] = to_json(d);
  r.instance["k"] = k;
  return r;
}

CheckReport exhaustive_intopt(std::int64_t p, int k_max, const SweepOptions& options) {
  if (!is_prime(p) || p < 5) hypothesis("exhaustive intopt needs a prime p >= 5, got " + std::to_string(p));
  if (p > options.limits.exhaustive_prime_cap)
    throw Error(ErrorKind::CapExceeded, "p = " + std::to_string(p) + " exceeds the exhaustive prime cap " +
                                            std::to_string(options.limits.exhaustive_prime_cap));
  if (k_max < 1) throw Error(ErrorKind::InvalidInput, "k_max must be >= 1");

  const GroupSpec g = GroupSpec::cyclic(p);
  const auto ds = enumerate_symmetric_sets(g, options.limits);
  const auto pu = static_cast<std::size_t>(p);

  // rhs[|A|][|D|][k-1] for the centered intervals
  std::vector<std::vector<std::vector<BigInt>>> rhs(pu + 1, std::vector<std::vector<BigInt>>(pu + 1));
  for (std::size_t sa = 1; sa <= pu; ++sa)
    for (const GSet& d : ds)
      if (rhs[sa][d.size()].empty())
        rhs[sa][d.size()] = t_counts(centered_interval(g, static_cast<std::int64_t>(d.size())),
                                     centered_interval(g, static_cast<std::int64_t>(sa)), k_max);

  constexpr std::uint64_t kBlock = 256;
  const std::uint64_t masks = (std::uint64_t{1} << p) - 1;
  const std::uint64_t blocks_per_d = (masks + kBlock - 1) / kBlock;
  const std::size_t units = ds.size() * blocks_per_d;
  std::vector<Tally> tallies(units);
  Progress progress(options, "intopt p=" + std::to_string(p), units);

  parallel_for(units, options.jobs, [&](std::size_t unit) {
    const GSet& d = ds[unit / blocks_per_d];
    const std::uint64_t lo = 1 + (unit % blocks_per_d) * kBlock;
    const std::uint64_t hi = std::min(masks + 1, lo + kBlock);
    Tally& t = tallies[unit];
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      const GSet a = set_from_mask(g, mask);
      const auto lhs = t_counts(d, a, k_max);
      const auto& bar = rhs[a.size()][d.size()];
      for (int k = 1; k <= k_max; ++k) {
        const auto& l = lhs[static_cast<std::size_t>(k - 1)];
        const auto& r = bar[static_cast<std::size_t>(k - 1)];
        ++t.checks;
        if (l == r) ++t.tight;
        if (l <= r) {
          ++t.holds;
        } else {
          ++t.violated;
          if (!t.first_violation) t.first_violation = verify_intopt(a, d, k);
        }
      }
    }
    progress.tick();
  });

  Tally total;
  for (const auto& t : tallies) total.merge(t);
  Json inst = instance_of("exhaustive_intopt");
  inst["p"] = p;
  inst["k_max"] = k_max;
  CheckReport r = total.finish("exhaustive_intopt", std::move(inst));
  r.note("symmetric_sets", std::to_string(ds.size()));
  return r;
}

// ---------------------------------------------------------------------------
// Convexity of n -> R_{[1,n]}^(k)(d)

CheckReport convexity_check(std::int64_t p, int k, std::span<const Element> ds) {
  if (p < 3) throw Error(ErrorKind::InvalidInput, "convexity needs p >= 3");
  if (k < 2) throw Error(ErrorKind::InvalidInput, "convexity needs k >= 2");
  if (ds.size() != static_cast<std::size_t>(k - 1))
    throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(k - 1) + " shifts");
  const GroupSpec g = GroupSpec::cyclic(p);
  for (Element d : ds)
    if (!g.contains(d)) throw Error(ErrorKind::InvalidInput, "shift outside C_" + std::to_string(p));

  std::vector<std::int64_t> seq;
  for (std::int64_t n = 1; n <= p - 1; ++n) {
    const GSet j = interval_set(g, 1, n);
    GSet cut = j;
    for (Element d : ds) cut = cut.intersect(j.translate(d));
    seq.push_back(static_cast<std::int64_t>(cut.size()));
  }

  std::int64_t worst = 0;
  std::int64_t worst_n = 0;
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    const std::int64_t second = seq[i + 1] - 2 * seq[i] + seq[i - 1];
    if (second < worst) {
      worst = second;
      worst_n = static_cast<std::int64_t>(i + 1);
    }
  }

  CheckReport r;
  r.name = "convexity";
  r.hypotheses_met = true;
  r.lhs = Quantity::of(BigInt(worst));
  r.rhs = Quantity::of(BigInt(0));
  r.verdict = worst >= 0 ? Verdict::holds : Verdict::violated;
  r.witness = std::vector<Element>(ds.begin(), ds.end());
  r.note("sequence", join(seq));
  if (worst < 0) r.note("first_concave_n", std::to_string(worst_n));
  r.instance = instance_of("convexity");
  r.instance["p"] = p;
  r.instance["k"] = k;
  Json shifts = Json::array();
  for (Element d : ds) shifts.push_back(d.code);
  r.instance["ds"] = std::move(shifts);
  return r;
}

CheckReport convexity_sweep(std::int64_t p, int k, const SweepOptions& options) {
  if (p < 3 || k < 2) throw Error(ErrorKind::InvalidInput, "convexity sweep needs p >= 3 and k >= 2");
  const auto arity = static_cast<std::size_t>(k - 1);
  BigInt tuples_big = ipow(BigInt(p), static_cast<unsigned>(arity));
  if (tuples_big > BigInt(options.limits.tuple_cap)) throw Error(ErrorKind::CapExceeded, "too many shift tuples");
  const auto tuples = static_cast<std::size_t>(tuples_big);

  constexpr std::size_t kBlock = 64;
  const std::size_t units = (tuples + kBlock - 1) / kBlock;
  std::vector<Tally> tallies(units);
  Progress progress(options, "convexity p=" + std::to_string(p) + " k=" + std::to_string(k), units);
  parallel_for(units, options.jobs, [&](std::size_t unit) {
    std::vector<Element> ds(arity);
    for (std::size_t t = unit * kBlock; t < std::min(tuples, (unit + 1) * kBlock); ++t) {
      std::size_t rest = t;
      for (std::size_t i = arity; i-- > 0;) {
        ds[i] = Element{static_cast<std::int64_t>(rest % static_cast<std::size_t>(p))};
        rest /= static_cast<std::size_t>(p);
      }
      tallies[unit].add(convexity_check(p, k, ds));
    }
    progress.tick();
  });
  Tally total;
  for (const auto& t : tallies) total.merge(t);
  Json inst = instance_of("convexity_sweep");
  inst["p"] = p;
  inst["k"] = k;
  return total.finish("convexity_sweep", std::move(inst));
}

// ---------------------------------------------------------------------------
// Majorization of |A ∩ (D + a)|

namespace {

std::vector<std::int64_t> slice_profile(const GSet& a, const GSet& d) {
  std::vector<std::int64_t> seq;
  for (Element x : a.elements()) seq.push_back(static_cast<std::int64_t>(a.intersect(d.translate(x)).size()));
  std::sort(seq.begin(), seq.end(), std::greater<>());
  return seq;
}

}  // namespace

CheckReport majorization_check(const GSet& a, const GSet& d) {
  require_same_group(a, d);
  require_prime_cyclic(a.group(), 2, "majorization");
  if (a.empty()) hypothesis("majorization needs a nonempty A");
  if (!is_symmetric_with_zero(d)) hypothesis("majorization needs 0 in D = -D");

  const GroupSpec& g = a.group();
  const auto x = slice_profile(a, d);
  const auto y = slice_profile(centered_interval(g, static_cast<std::int64_t>(a.size())),
                               centered_interval(g, static_cast<std::int64_t>(d.size())));

  std::int64_t sx = 0, sy = 0, worst = std::numeric_limits<std::int64_t>::min();
  std::size_t worst_at = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    if (sx - sy > worst) {
      worst = sx - sy;
      worst_at = i + 1;
    }
  }

  CheckReport r;
  r.name = "majorization";
  r.hypotheses_met = true;
  r.lhs = Quantity::of(BigInt(worst));
  r.rhs = Quantity::of(BigInt(0));
  r.verdict = worst <= 0 ? Verdict::holds : Verdict::violated;
  r.witness = a.elements();
  r.note("sequence", join(x));
  r.note("centered_sequence", join(y));
  r.note("worst_prefix", std::to_string(worst_at));
  r.instance = instance_of("majorization");
  r.instance["a"] = to_json(a);
  r.instance["d"] = to_json(d);
  return r;
}

CheckReport exhaustive_majorization(std::int64_t p, const SweepOptions& options) {
  if (!is_prime(p)) hypothesis("exhaustive majorization needs a prime p, got " + std::to_string(p));
  if (p > options.limits.exhaustive_prime_cap)
    throw Error(ErrorKind::CapExceeded, "p exceeds the exhaustive prime cap");
  const GroupSpec g = GroupSpec::cyclic(p);
  const auto ds = enumerate_symmetric_sets(g, options.limits);
  const std::uint64_t masks = (std::uint64_t{1} << p) - 1;
  std::vector<Tally> tallies(ds.size());
  Progress progress(options, "majorization p=" + std::to_string(p), ds.size());
  parallel_for(ds.size(), options.jobs, [&](std::size_t i) {
    for (std::uint64_t mask = 1; mask <= masks; ++mask) tallies[i].add(majorization_check(set_from_mask(g, mask), ds[i]));
    progress.tick();
  });
  Tally total;
  for (const auto& t : tallies) total.merge(t);
  Json inst = instance_of("exhaustive_majorization");
  inst["p"] = p;
  return total.finish("exhaustive_majorization", std::move(inst));
}

// ---------------------------------------------------------------------------
// The basic chain

CheckReport check_basic_chain(const GSet& a, int k, const Limits& limits) {
  if (a.size() < 2) throw Error(ErrorKind::Degenerate, "chain needs |A| >= 2");
  if (k < 1) throw Error(ErrorKind::InvalidInput, "chain needs k >= 1");
  const auto ku = static_cast<unsigned>(k);
  const BigInt size(a.size());
  const GSet d = diff_set(a);

  const BigInt left = ipow(size, 2 * ku + 2);
  const RepProfile profile = higher_rep_profile(a, k + 1, limits);
  const BigInt support(profile.support_size());
  const BigInt second_moment = profile.moment(2);
  const BigInt energy = energy_k(a, k + 1);
  const std::uint64_t m = mu(a);
  const BigInt tdd = t_count(d, d, k).value;
  const BigInt emu = ipow(size, ku + 1) + ipow(BigInt(m), ku) * size * size;

  const BigInt middle = support * energy;
  const BigInt right = tdd * emu;

  const bool mass_ok = profile.mass() == ipow(size, ku + 1);
  const bool cs_ok = left <= middle;
  const bool moment_ok = second_moment == energy;
  const bool nfc_ok = support <= tdd;
  const bool emu_ok = energy <= emu;
  const bool closing_ok = middle <= right;

  CheckReport r;
  r.name = "chain";
  r.hypotheses_met = true;
  r.lhs = Quantity::of(left);
  r.rhs = Quantity::of(right);
  const bool all = mass_ok && cs_ok && moment_ok && nfc_ok && emu_ok && closing_ok;
  r.verdict = all ? Verdict::holds : Verdict::violated;
  r.witness = a.elements();
  r.note("k", std::to_string(k));
  r.note("size_pow", left);
  r.note("support", support);
  r.note("energy", energy);
  r.note("support_times_energy", middle);
  r.note("t_dd", tdd);
  r.note("mu", std::to_string(m));
  r.note("energy_bound", emu);
  r.note("t_dd_times_energy_bound", right);
  r.note("links",
         std::string(mass_ok ? "" : "mass ") + (cs_ok ? "" : "cauchy_schwarz ") + (moment_ok ? "" : "moment ") +
             (nfc_ok ? "" : "support ") + (emu_ok ? "" : "energy ") + (closing_ok ? "" : "closing ") +
             (all ? "all hold" : "failed"));
  r.instance = instance_of("chain");
  r.instance["a"] = to_json(a);
  r.instance["k"] = k;
  return r;
}

CheckReport random_chain_sweep(std::int64_t p, std::size_t count, std::uint64_t seed, std::size_t max_size, int k_max,
                               const SweepOptions& options) {
  if (max_size < 2 || static_cast<std::int64_t>(max_size) > p || k_max < 1)
    throw Error(ErrorKind::InvalidInput, "chain sweep needs 2 <= max_size <= p and k_max >= 1");
  const GroupSpec g = GroupSpec::cyclic(p);
  std::vector<Tally> tallies(count);
  Progress progress(options, "chain p=" + std::to_string(p), count);
  parallel_for(count, options.jobs, [&](std::size_t i) {
    std::mt19937_64 engine(derive_seed(seed, i));
    const std::size_t size = 2 + static_cast<std::size_t>(uniform_below(engine, max_size - 1));
    const int k = 1 + static_cast<int>(uniform_below(engine, static_cast<std::uint64_t>(k_max)));
    const GSet a = random_set(g, size, engine());
    tallies[i].add(check_basic_chain(a, k, options.limits));
    progress.tick();
  });
  Tally total;
  for (const auto& t : tallies) total.merge(t);
  Json inst = instance_of("random_chain");
  inst["p"] = p;
  inst["count"] = count;
  inst["seed"] = seed;
  inst["max_size"] = max_size;
  inst["k_max"] = k_max;
  return total.finish("random_chain", std::move(inst));
}

// ---------------------------------------------------------------------------
// Theorem checkers

CheckReport theorem_modp_check(const GSet& a, const Rational& delta) {
  require_prime_cyclic(a.group(), 2, "modp");
  if (a.empty()) hypothesis("modp needs a nonempty A");
  if (delta <= 0 || delta >= Rational(1, 3)) hypothesis("modp needs 0 < delta < 1/3");

  const std::int64_t p = a.group().order();
  const GSet d = diff_set(a);
  const auto sa = a.size(), sd = d.size();
  const Rational big_k(static_cast<std::int64_t>(sd), static_cast<std::int64_t>(sa));
  const bool size_ok = 3 * static_cast<std::int64_t>(sd) <= 2 * (p + 1);
  const bool k_ok = doubling_below_power(sd, sa, delta);
  const double dd = to_double(delta);
  const double factor = 1.0 - 2.0 * dd * std::log(2.0 / dd);
  const double base = 2.0 * static_cast<double>(sa) * static_cast<double>(sa) / static_cast<double>(sd);
  const double bound = base * factor;

  CheckReport r;
  r.name = "modp";
  r.hypotheses_met = size_ok && k_ok;
  r.rhs = Quantity::approximate(bound);
  r.note("K", big_k);
  r.note("size_a", std::to_string(sa));
  r.note("size_diff", std::to_string(sd));
  r.note("diff_size_gate", size_ok ? "met" : "failed");
  r.note("doubling_gate", k_ok ? "met" : "failed");
  r.note("factor", Quantity::approximate(factor).str());
  if (sa >= 2) {
    const MuResult m = mu_with_witness(a);
    r.lhs = Quantity::of(BigInt(m.value));
    r.witness = std::vector<Element>{m.witness};
    r.note("mu", std::to_string(m.value));
  }
  if (!r.hypotheses_met) r.verdict = Verdict::not_applicable;
  else if (factor <= 0.0) r.verdict = Verdict::vacuous;
  else r.verdict = compare_guarded(to_double(r.lhs.exact), bound);
  r.instance = instance_of("modp");
  r.instance["a"] = to_json(a);
  r.instance["delta"] = to_string(delta);
  return r;
}

CheckReport exhaustive_modp(std::int64_t p, const Rational& delta, const SweepOptions& options) {
  if (!is_prime(p)) hypothesis("exhaustive modp needs a prime p");
  if (p >= 63 || (std::uint64_t{1} << p) > options.limits.tuple_cap)
    throw Error(ErrorKind::CapExceeded, "2^" + std::to_string(p) + " subsets exceed the enumeration cap");
  const GroupSpec g = GroupSpec::cyclic(p);
  const std::uint64_t masks = (std::uint64_t{1} << p) - 1;
  constexpr std::uint64_t kBlock = 1024;
  const std::size_t units = static_cast<std::size_t>((masks + kBlock - 1) / kBlock);
  std::vector<Tally> tallies(units);
  Progress progress(options, "modp p=" + std::to_string(p) + " delta=" + to_string(delta), units);
  parallel_for(units, options.jobs, [&](std::size_t unit) {
    const std::uint64_t lo = 1 + unit * kBlock;
    const std::uint64_t hi = std::min(masks + 1, lo + kBlock);
    for (std::uint64_t mask = lo; mask < hi; ++mask) tallies[unit].add(theorem_modp_check(set_from_mask(g, mask), delta));
    progress.tick();
  });
  Tally total;
  for (const auto& t : tallies) total.merge(t);
  Json inst = instance_of("exhaustive_modp");
  inst["p"] = p;
  inst["delta"] = to_string(delta);
  return total.finish("exhaustive_modp", std::move(inst));
}

CheckReport theorem_extD_check(const GSet& a, int k, const Rational& delta, const Limits& limits) {
  require_prime_cyclic(a.group(), 2, "extD");
  if (a.empty()) hypothesis("extD needs a nonempty A");
  if (k < 3) hypothesis("extD needs k >= 3");
  if (delta <= 0 || delta >= Rational(1, 3 * k)) hypothesis("extD needs 0 < delta < 1/(3k)");

  const std::int64_t p = a.group().order();
  const GSet d = diff_set(a);
  const auto sa = a.size(), sd = d.size();
  const bool size_ok = 3 * static_cast<std::int64_t>(sd) <= 2 * (p + 1);
  const bool k_ok = doubling_below_power(sd, sa, delta);
  const double dd = to_double(delta);
  const double kd = static_cast<double>(k);
  const double factor = 1.0 - 3.0 * dd * kd * kd * std::log(1.0 / (kd * dd));
  const double big_k = static_cast<double>(sd) / static_cast<double>(sa);
  const double bound = std::pow(2.0 / big_k, kd - 1.0) * static_cast<double>(sa) * factor;

  CheckReport r;
  r.name = "extD";
  r.hypotheses_met = size_ok && k_ok;
  r.rhs = Quantity::approximate(bound);
  r.note("k", std::to_string(k));
  r.note("K", Rational(static_cast<std::int64_t>(sd), static_cast<std::int64_t>(sa)));
  r.note("size_a", std::to_string(sa));
  r.note("size_diff", std::to_string(sd));
  r.note("diff_size_gate", size_ok ? "met" : "failed");
  r.note("doubling_gate", k_ok ? "met" : "failed");
  r.note("factor", Quantity::approximate(factor).str());

  bool have_mu = false;
  if (sa >= static_cast<std::size_t>(k)) {
    try {
      const MuKResult m = mu_k(a, k, limits);
      r.lhs = Quantity::of(BigInt(m.value));
      if (m.found) r.witness = m.witness;
      r.note("mu_k", std::to_string(m.value));
      have_mu = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded || r.hypotheses_met) throw;
      r.note("mu_k", "cap exceeded");
    }
  }
  if (!r.hypotheses_met) r.verdict = Verdict::not_applicable;
  else if (factor <= 0.0) r.verdict = Verdict::vacuous;
  else r.verdict = have_mu ? compare_guarded(to_double(r.lhs.exact), bound) : Verdict::violated;
  r.instance = instance_of("extD");
  r.instance["a"] = to_json(a);
  r.instance["k"] = k;
  r.instance["delta"] = to_string(delta);
  return r;
}

CheckReport extd_sweep(std::int64_t p, int k, const Rational& delta, std::size_t random_count, std::uint64_t seed,
                       const SweepOptions& options) {
  const GroupSpec g = GroupSpec::cyclic(p);
  require_prime_cyclic(g, 2, "extD sweep");
  // intervals [1, n] for n = k .. p − 1, then seeded random sets
  const std::size_t intervals = p - 1 >= k ? static_cast<std::size_t>(p - k) : 0;
  const std::size_t units = intervals + random_count;
  std::vector<Tally> tallies(units);
  Progress progress(options, "extD p=" + std::to_string(p) + " k=" + std::to_string(k), units);
  parallel_for(units, options.jobs, [&](std::size_t i) {
    if (i < intervals) {
      tallies[i].add(theorem_extD_check(interval_set(g, 1, k + static_cast<std::int64_t>(i)), k, delta, options.limits));
    } else {
      std::mt19937_64 engine(derive_seed(seed, i - intervals));
      const std::size_t size =
          static_cast<std::size_t>(k) + static_cast<std::size_t>(uniform_below(engine, static_cast<std::uint64_t>(p - k)));
      tallies[i].add(theorem_extD_check(random_set(g, size, engine()), k, delta, options.limits));
    }
    progress.tick();
  });
  Tally total;
  for (const auto& t : tallies) total.merge(t);
  Json inst = instance_of("extd_sweep");
  inst["p"] = p;
  inst["k"] = k;
  inst["delta"] = to_string(delta);
  inst["random_count"] = random_count;
  inst["seed"] = seed;
  return total.finish("extd_sweep", std::move(inst));
}

CheckReport theorem_arbG_check(const GSet& a) {
  const GroupSpec& g = a.group();
  if (g.kind() == GroupSpec::Kind::integer_window) hypothesis("arbG needs a finite group, not an integer window");
  if (a.empty()) hypothesis("arbG needs a nonempty A");

  const GSet d = diff_set(a);
  const auto sa = a.size(), sd = d.size();
  const Rational eps = 1 - Rational(static_cast<std::int64_t>(sd), g.order());
  const double root = std::sqrt(to_double(eps));
  const bool size_ok = sa >= 1024;
  const bool eps_ok = eps > 0 && eps <= Rational(1, 32);
  // inside the guard band the gate is treated as unmet, so a borderline gate never produces a violation
  const bool growth_ok = compare_guarded((1.0 + root / 2.0) * std::log(static_cast<double>(sa)),
                                         std::log(static_cast<double>(sd))) == Verdict::holds;
  const double bound = static_cast<double>(sa) * static_cast<double>(sa) / static_cast<double>(sd) * (1.0 + root / 8.0);

  CheckReport r;
  r.name = "arbG";
  r.hypotheses_met = size_ok && eps_ok && growth_ok;
  r.rhs = Quantity::approximate(bound);
  r.note("epsilon", eps);
  r.note("size_a", std::to_string(sa));
  r.note("size_diff", std::to_string(sd));
  r.note("size_gate", size_ok ? "met" : "failed");
  r.note("epsilon_gate", eps_ok ? "met" : "failed");
  r.note("growth_gate", growth_ok ? "met" : "failed");
  if (sa >= 2) {
    const MuResult m = mu_with_witness(a);
    r.lhs = Quantity::of(BigInt(m.value));
    r.witness = std::vector<Element>{m.witness};
    r.note("mu", std::to_string(m.value));
  }
  if (!r.hypotheses_met) {
    r.verdict = Verdict::not_applicable;
  } else {
    // r ≥ bound: an exact tie with the floating bound is borderline, not a failure
    r.verdict = compare_guarded(to_double(r.lhs.exact), bound);
  }
  r.instance = instance_of("arbG");
  r.instance["a"] = to_json(a);
  return r;
}

// ---------------------------------------------------------------------------
// Upper bounds for T_D^(k)(D)

CheckReport corollary_check(const GSet& d, int k) {
  const GroupSpec& g = d.group();
  const std::int64_t sd = static_cast<std::int64_t>(d.size());
  CheckReport r;
  r.name = "corollary";
  r.hypotheses_met = g.is_prime_cyclic() && g.order() >= 5 && k >= 3 && is_symmetric_with_zero(d) && k <= sd &&
                     3 * sd <= 2 * (g.order() + 1);
  const BigInt tdd = t_count(d, d, k).value;
  r.lhs = Quantity::of(tdd);
  r.note("k", std::to_string(k));
  r.note("size_d", std::to_string(sd));
  if (r.hypotheses_met) {
    const Rational bound = corollary_bound(sd, k);
    r.rhs = Quantity::of(bound);
    r.verdict = Rational(tdd) <= bound ? Verdict::holds : Verdict::violated;
  } else {
    r.verdict = Verdict::not_applicable;
  }
  r.witness = d.elements();
  r.instance = instance_of("corollary");
  r.instance["d"] = to_json(d);
  r.instance["k"] = k;
  return r;
}

CheckReport corollary_sweep(std::int64_t p, int k, const SweepOptions& options) {
  const GroupSpec g = GroupSpec::cyclic(p);
  require_prime_cyclic(g, 5, "corollary sweep");
  const auto ds = enumerate_symmetric_sets(g, options.limits);
  std::vector<Tally> tallies(ds.size());
  Progress progress(options, "corollary p=" + std::to_string(p), ds.size());
  parallel_for(ds.size(), options.jobs, [&](std::size_t i) {
    tallies[i].add(corollary_check(ds[i], k));
    progress.tick();
  });
  Tally total;
  for (const auto& t : tallies) total.merge(t);
  Json inst = instance_of("corollary_sweep");
  inst["p"] = p;
  inst["k"] = k;
  return total.finish("corollary_sweep", std::move(inst));
}

CheckReport dense_bound_check(const GSet& d, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  const GroupSpec& g = d.group();
  if (g.kind() == GroupSpec::Kind::integer_window) hypothesis("dense bound needs a finite group");
  CheckReport r;
  r.name = "dense_bound";
  r.note("k", std::to_string(k));
  r.witness = d.elements();
  r.instance = instance_of("dense_bound");
  r.instance["d"] = to_json(d);
  r.instance["k"] = k;
  if (d.empty()) {
    r.verdict = Verdict::not_applicable;
    return r;
  }
  const std::int64_t sd = static_cast<std::int64_t>(d.size());
  const Rational tau(g.order() - sd, sd);
  r.note("tau", tau);
  r.note("tau_limit", dense_tau_limit(k));
  r.hypotheses_met = is_symmetric_with_zero(d) && tau > 0 && tau <= dense_tau_limit(k);
  const BigInt tdd = t_count(d, d, k).value;
  r.lhs = Quantity::of(tdd);
  if (r.hypotheses_met) {
    const Rational bound = dense_bound(sd, tau, k);
    r.rhs = Quantity::of(bound);
    r.verdict = Rational(tdd) <= bound ? Verdict::holds : Verdict::violated;
  } else {
    r.verdict = Verdict::not_applicable;
  }
  return r;
}

CheckReport dense_bound_sweep(const GroupSpec& group, int k_max, const SweepOptions& options) {
  if (k_max < 1) throw Error(ErrorKind::InvalidInput, "k_max must be >= 1");
  const auto ds = enumerate_symmetric_sets(group, options.limits);
  std::vector<Tally> tallies(ds.size());
  Progress progress(options, "dense bound " + group.describe(), ds.size());
  parallel_for(ds.size(), options.jobs, [&](std::size_t i) {
    for (int k = 1; k <= k_max; ++k) tallies[i].add(dense_bound_check(ds[i], k));
    progress.tick();
  });
  Tally total;
  for (const auto& t : tallies) total.merge(t);
  Json inst = instance_of("dense_bound_sweep");
  inst["group"] = to_json(group);
  inst["k_max"] = k_max;
  return total.finish("dense_bound_sweep", std::move(inst));
}

// ---------------------------------------------------------------------------
// Step functions

CheckReport fan_sweep(std::size_t count, std::uint64_t seed, const SweepOptions& options) {
  // δ grid relative to the admissible maximum of each function
  static const std::vector<Rational> scale = {Rational(1), Rational(1, 256), Rational(1, 1 << 20),
                                              Rational(1, BigInt(1) << 40)};
  std::vector<Tally> fan_tallies(count), omega_tallies(count);
  std::vector<std::uint64_t> below_cs(count, 0);
  Progress progress(options, "fan", count);
  parallel_for(count, options.jobs, [&](std::size_t i) {
    std::mt19937_64 engine(derive_seed(seed, i));
    const std::size_t cells = 2 + static_cast<std::size_t>(uniform_below(engine, 63));
    const StepFunction f = random_step_function(cells, engine());
    const Rational limit = fan_delta_limit(f);
    for (const auto& s : scale) {
      const Rational delta = limit * s;
      const FanReport fan = theorem_fan_check(f, delta);
      fan_tallies[i].add(fan.as_report());
      if (to_double(fan.omega) < fan.cs_lower) ++below_cs[i];
      omega_tallies[i].add(omega_k_report(f, delta));
    }
    progress.tick();
  });
  Tally fan, om;
  std::uint64_t below = 0;
  for (std::size_t i = 0; i < count; ++i) {
    fan.merge(fan_tallies[i]);
    om.merge(omega_tallies[i]);
    below += below_cs[i];
  }
  Json inst = instance_of("fan_sweep");
  inst["count"] = count;
  inst["seed"] = seed;
  Tally both = fan;
  both.merge(om);
  CheckReport r = both.finish("fan_sweep", std::move(inst));
  r.note("fan_holds", std::to_string(fan.holds));
  r.note("fan_vacuous", std::to_string(fan.vacuous));
  r.note("fan_violated", std::to_string(fan.violated));
  r.note("omega_k_holds", std::to_string(om.holds));
  r.note("omega_k_vacuous", std::to_string(om.vacuous));
  r.note("omega_k_violated", std::to_string(om.violated));
  r.note("omega_below_cs_lower", std::to_string(below));
  return r;
}

// ---------------------------------------------------------------------------

CheckReport replay_check(const Json& instance, const SweepOptions& options) {
  if (!instance.is_object() || !instance.contains("check") || !instance["check"].is_string())
    throw Error(ErrorKind::InvalidInput, "instance needs a string 'check'");
  const std::string check = instance["check"].get<std::string>();
  auto need = [&](const char* key) -> const Json& {
    if (!instance.contains(key)) throw Error(ErrorKind::InvalidInput, check + " instance lacks '" + key + "'");
    return instance[key];
  };
  auto integer = [&](const char* key) { return need(key).get<std::int64_t>(); };
  auto set = [&](const char* key) { return set_from_json(need(key)); };
  auto rational = [&](const char* key) { return rational_from_json(need(key)); };
  auto k = [&] { return static_cast<int>(integer("k")); };

  if (check == "intopt") return verify_intopt(set("a"), set("d"), k());
  if (check == "exhaustive_intopt") return exhaustive_intopt(integer("p"), static_cast<int>(integer("k_max")), options);
  if (check == "id_ax") return verify_id_ax(set("a"), set("d"), k(), options.limits);
  if (check == "convexity") {
    std::vector<Element> ds;
    for (const auto& x : need("ds")) ds.push_back(Element{x.get<std::int64_t>()});
    return convexity_check(integer("p"), k(), ds);
  }
  if (check == "convexity_sweep") return convexity_sweep(integer("p"), k(), options);
  if (check == "majorization") return majorization_check(set("a"), set("d"));
  if (check == "exhaustive_majorization") return exhaustive_majorization(integer("p"), options);
  if (check == "chain") return check_basic_chain(set("a"), k(), options.limits);
  if (check == "random_chain")
    return random_chain_sweep(integer("p"), static_cast<std::size_t>(integer("count")),
                              need("seed").get<std::uint64_t>(), static_cast<std::size_t>(integer("max_size")),
                              static_cast<int>(integer("k_max")), options);
  if (check == "modp") return theorem_modp_check(set("a"), rational("delta"));
  if (check == "exhaustive_modp") return exhaustive_modp(integer("p"), rational("delta"), options);
  if (check == "extD") return theorem_extD_check(set("a"), k(), rational("delta"), options.limits);
  if (check == "extd_sweep")
    return extd_sweep(integer("p"), k(), rational("delta"), static_cast<std::size_t>(integer("random_count")),
                      need("seed").get<std::uint64_t>(), options);
  if (check == "arbG") return theorem_arbG_check(set("a"));
  if (check == "corollary") return corollary_check(set("d"), k());
  if (check == "corollary_sweep") return corollary_sweep(integer("p"), k(), options);
  if (check == "dense_bound") return dense_bound_check(set("d"), k());
  if (check == "dense_bound_sweep")
    return dense_bound_sweep(group_from_json(need("group")), static_cast<int>(integer("k_max")), options);
  if (check == "fan") return theorem_fan_check(step_function_from_json(need("function")), rational("delta")).as_report();
  if (check == "omega_k")
    return omega_k_report(step_function_from_json(need("function")), rational("delta"), k());
  if (check == "fan_sweep")
    return fan_sweep(static_cast<std::size_t>(integer("count")), need("seed").get<std::uint64_t>(), options);
  throw Error(ErrorKind::InvalidInput, "unknown check '" + check + "'");
}

}  // namespace diffrep
