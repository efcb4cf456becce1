#pragma once

#include <cstdint>
#include <vector>

#include "diffrep/group.hpp"
#include "diffrep/limits.hpp"
#include "diffrep/numeric.hpp"
#include "diffrep/report.hpp"

namespace diffrep {

enum class EnergySide { via_k, via_l };

/// E_{k,l}(A) evaluated on one side of the commutation identity.
struct EnergyValue {
  int k = 2;
  int l = 2;
  BigInt value = 0;
  EnergySide side = EnergySide::via_k;
};

/// via_k: Σ over supp R^(k) of (R^(k))^l; via_l: Σ over supp R^(l) of (R^(l))^k.
EnergyValue energy_kl(const GSet& set, int k, int l, EnergySide side, const Limits& limits = default_limits());

/// E_k(A) = Σ_x |A ∩ (A + x)|^k.
BigInt energy_k(const GSet& set, int k);

struct TCount {
  int k = 1;
  BigInt value = 0;
};

/// Number of ordered k-tuples of A whose pairwise differences (including
/// a_i − a_i) all lie in D.
TCount t_count(const GSet& d, const GSet& a, int k, unsigned jobs = 1);

/// T^(1) .. T^(k_max) from one clique enumeration; element i is T^(i+1).
std::vector<BigInt> t_counts(const GSet& d, const GSet& a, int k_max, unsigned jobs = 1);

/// Number of j-element subsets of A (j = 1..j_max) whose pairwise differences
/// lie in D ∩ (−D); element j−1 is the count for j. Requires nothing of D.
std::vector<BigInt> clique_counts(const GSet& d, const GSet& a, int j_max, unsigned jobs = 1);

/// (m+1)^(k+1) − m^(k+1).
BigInt t_interval_closed_form(std::int64_t m, int k);

/// 3k·2^(−k−1)·|D|^k. HypothesisViolated unless 3 <= k <= size_d.
Rational corollary_bound(std::int64_t size_d, int k);

/// (1 − k(k−1)τ/4)·|D|^k. HypothesisViolated unless 0 < τ <= min{1/2, 2/(k²−k+2)}.
Rational dense_bound(std::int64_t size_d, const Rational& tau, int k);

/// Largest τ admissible in dense_bound for this k.
Rational dense_tau_limit(int k);

/// T_D^(k+1)(A) directly, through Σ R_A^(k+1) over admissible difference
/// tuples, and through Σ_a T_D^(k)(A ∩ (D + a)). NotSymmetric unless 0 ∈ D = −D.
CheckReport verify_id_ax(const GSet& a, const GSet& d, int k, const Limits& limits = default_limits());

}  // namespace diffrep
