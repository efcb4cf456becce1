#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include <json.hpp>

#include "diffrep/group.hpp"
#include "diffrep/limits.hpp"
#include "diffrep/numeric.hpp"
#include "diffrep/report.hpp"

namespace diffrep {

/// Options shared by the exhaustive and random drivers. Reports never
/// depend on `jobs`.
struct SweepOptions {
  unsigned jobs = 1;
  std::function<void(std::string_view)> progress;  // called from one thread at a time
  Limits limits = default_limits();
};

// T_D^(k)(A) against the same count for the centered intervals of equal size.
CheckReport verify_intopt(const GSet& a, const GSet& d, int k);
/// Every symmetric D ∋ 0, every nonempty A ⊆ C_p, every k ≤ k_max.
CheckReport exhaustive_intopt(std::int64_t p, int k_max, const SweepOptions& options = {});

/// Second differences of n ↦ R_{[1,n]}^(k)(ds) over 1 ≤ n ≤ p − 1.
CheckReport convexity_check(std::int64_t p, int k, std::span<const Element> ds);
/// convexity_check for every (k−1)-tuple over C_p.
CheckReport convexity_sweep(std::int64_t p, int k, const SweepOptions& options = {});

/// Descending prefix sums of |A ∩ (D + a)| against those of the centered intervals.
CheckReport majorization_check(const GSet& a, const GSet& d);
CheckReport exhaustive_majorization(std::int64_t p, const SweepOptions& options = {});

/// Every link of |A|^{2k+2} ≤ |supp R^(k+1)|·E_{k+1} ≤ T_D^(k)(D)·(|A|^{k+1} + μ^k|A|²), D = A − A.
CheckReport check_basic_chain(const GSet& a, int k, const Limits& limits = default_limits());
/// check_basic_chain on `count` seeded random sets of size 2..max_size in C_p, k = 1..k_max.
CheckReport random_chain_sweep(std::int64_t p, std::size_t count, std::uint64_t seed, std::size_t max_size = 12,
                               int k_max = 3, const SweepOptions& options = {});

CheckReport theorem_modp_check(const GSet& a, const Rational& delta);
CheckReport exhaustive_modp(std::int64_t p, const Rational& delta, const SweepOptions& options = {});

CheckReport theorem_extD_check(const GSet& a, int k, const Rational& delta, const Limits& limits = default_limits());
/// Intervals [1, n] and `random_count` seeded random sets in C_p.
CheckReport extd_sweep(std::int64_t p, int k, const Rational& delta, std::size_t random_count, std::uint64_t seed,
                       const SweepOptions& options = {});

CheckReport theorem_arbG_check(const GSet& a);

/// T_D^(k)(D) ≤ 3k·2^{−k−1}|D|^k; not_applicable outside the corollary's hypotheses.
CheckReport corollary_check(const GSet& d, int k);
CheckReport corollary_sweep(std::int64_t p, int k, const SweepOptions& options = {});

/// T_D^(k)(D) ≤ (1 − k(k−1)τ/4)|D|^k with τ = |G \ D|/|D|.
CheckReport dense_bound_check(const GSet& d, int k);
CheckReport dense_bound_sweep(const GroupSpec& group, int k_max, const SweepOptions& options = {});

/// 10^3-style sweep of theorem_fan_check and omega_k_report over random step functions.
CheckReport fan_sweep(std::size_t count, std::uint64_t seed, const SweepOptions& options = {});

/// Reruns the check described by a report's `instance`.
CheckReport replay_check(const nlohmann::ordered_json& instance, const SweepOptions& options = {});

}  // namespace diffrep
