#pragma once

#include "jtdet/finite_field.hpp"
#include "jtdet/jacobi_trudi.hpp"
#include "jtdet/multislant.hpp"
#include "jtdet/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace jtdet {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;
// Counts are 64-bit; budgets above this are rejected.
inline constexpr std::uint64_t kMaxBudget = std::uint64_t{1} << 62;

/// Value distribution of a determinant over all q^vars assignments of the
/// variables that actually occur. counts[a.index] sums to q^vars.
struct Distribution {
  std::uint32_t q = 2;
  unsigned vars = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  friend bool operator==(const Distribution&, const Distribution&) = default;
};

/// q^vars, saturating at kMaxBudget + 1.
std::uint64_t assignment_count(std::uint32_t q, unsigned vars);

/// Enumerates every assignment of variables(m) in odometer order (lowest
/// variable index is the slowest digit). Throws BudgetExceeded when
/// q^vars > budget. `jobs` > 1 splits the work on the first variable's value.
Distribution exact_distribution(const SymbolicMatrix& m, const Field& f,
                                std::uint64_t budget = kDefaultBudget, unsigned jobs = 1);

/// The part of exact_distribution() where the first variable equals
/// `first_value`. A constant matrix has a single shard (first_value ignored).
Distribution exact_distribution_shard(const DetEvaluator& eval, FieldElement first_value);

/// Adds `part` into `into` (same q and vars).
void merge_into(Distribution& into, const Distribution& part);

/// counts[a] / q^vars.
Rational prob_of(const Distribution& d, FieldElement a);

/// P(det M = 0) for a square multislant, by exact enumeration.
Rational sipr_exact(const MultislantSpec& spec, const Field& f, std::uint64_t budget = kDefaultBudget,
                    unsigned jobs = 1);

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for `hits` successes in `n` trials.
Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z);

inline constexpr double kZ95 = 1.959963984540054;

struct McEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  Rational estimate;
  double ci_low = 0.0;  // Wilson 95%
  double ci_high = 1.0;
  std::uint64_t seed = 0;

  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

/// Counter-based generator: the value drawn for variable t of sample i
/// depends only on (seed, i, t), so any split of the sample range
/// reproduces the same draws.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  /// Uniform values in [0, q) for the given sample, written into `out`.
  void draw(std::uint64_t sample, std::uint32_t q, std::span<FieldElement> out) const;

 private:
  std::uint64_t seed_;
};

/// Estimates P(det M = a) from `samples` uniform assignments.
McEstimate monte_carlo(const SymbolicMatrix& m, const Field& f, FieldElement a, std::uint64_t samples,
                       std::uint64_t seed, unsigned jobs = 1);

/// {"q", "V", "counts": [...]} with counts indexed by element.
nlohmann::json to_json(const Distribution& d);
Distribution distribution_from_json(const nlohmann::json& j);
nlohmann::json to_json(const McEstimate& e);
McEstimate mc_estimate_from_json(const nlohmann::json& j);

}  // namespace jtdet
