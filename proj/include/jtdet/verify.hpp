#pragma once

#include "jtdet/finite_field.hpp"
#include "jtdet/partitions.hpp"
#include "jtdet/probability.hpp"
#include "jtdet/rational.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace jtdet {

enum class CheckStatus { Match, Mismatch, Estimated };

const char* to_string(CheckStatus s);

/// One comparison of a closed-form value against an observed one.
///
/// Exact checks compare rationals; `status` is Match iff expected ==
/// observed. Conjectural checks carry the conjectured value as `expected`
/// and never count as failures. Estimated checks come from Monte-Carlo and
/// record the 95% interval plus whether `expected` lies in the 3-sigma band.
struct CheckResult {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  Rational expected;
  Rational observed;
  bool conjectural = false;
  CheckStatus status = CheckStatus::Mismatch;
  std::uint64_t evals = 0;
  double elapsed_seconds = 0.0;
  std::optional<McEstimate> estimate;
  bool expected_in_band = false;
  std::string note;

  bool match() const { return status == CheckStatus::Match; }
  /// Failures are non-conjectural mismatches.
  bool failed() const { return !conjectural && status != CheckStatus::Match; }
  nlohmann::json to_json() const;
};

enum class StaircaseRegime { SmallK, Inward, OutwardConjecture };

const char* to_string(StaircaseRegime r);

struct StaircaseCase {
  int p = 1;
  int n = 1;
  int k = 0;

  /// k < n+1 -> SmallK; otherwise Inward iff p <= n.
  StaircaseRegime regime() const;
};

/// Closed form for P(s_lambda -> 0), lambda the p-shifted n-staircase of
/// length k (or its conjugate block staircase).
Rational staircase_formula(const StaircaseCase& c, std::uint64_t q);

/// Upper bound 1 - prod_{i=1}^{k} (1 - q^-i) for a k-row Jacobi-Trudi matrix.
Rational singular_upper_bound(int k, std::uint64_t q);

CheckResult verify_staircase(const StaircaseCase& c, const Field& f, std::uint64_t budget = kDefaultBudget);
CheckResult verify_block_staircase(const StaircaseCase& c, const Field& f,
                                   std::uint64_t budget = kDefaultBudget);

/// One result per a in F_q: expected = P(s_{shape} -> a), observed =
/// P(s_{shape^t} -> a).
std::vector<CheckResult> verify_transpose(const SkewShape& shape, const Field& f,
                                          std::uint64_t budget = kDefaultBudget);

/// expected = 1/q; observed = the P(s -> a) farthest from 1/q (P(s -> 0)
/// when uniform). Throws InvalidArgument if the shape is not a ribbon.
CheckResult verify_ribbon(const SkewShape& shape, const Field& f, std::uint64_t budget = kDefaultBudget);

struct MultislantSweep {
  int per_class = 50;
  int max_blocks = 4;
  GeneratorOptions generator;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultBudget;
};

/// Random square multislants stratified over every signature class:
/// exact SiPr against theoretical_sipr.
std::vector<CheckResult> verify_multislant_random(const MultislantSweep& sweep, const Field& f);

/// `sweep.per_class` instances of one signature; the stream is seeded from
/// (seed, signature, q), so classes can run in any order.
std::vector<CheckResult> verify_multislant_class(const Signature& sig, const MultislantSweep& sweep, const Field& f);

/// SiPr of a single multislant against the formula.
CheckResult verify_multislant(const MultislantSpec& spec, const Field& f, std::uint64_t budget = kDefaultBudget);

inline const GeneratorOptions kReductionGenerator{.dim_max = 6, .max_vars = 10};

/// The 3x3 two-block multislant [[b,3,y],[a,b,x],[0,a,1]], SiPr = 1/q.
MultislantSpec three_by_three_example();

/// The three reduction steps as exact equalities on `count` random instances
/// each: averaging over the bottom value of a type-X block, reducing a pair
/// of type-1 blocks, and stripping the strange block of a (0,k-1,1) spec.
/// `options.strict` is forced on for the type-1 pair reduction.
std::vector<CheckResult> verify_reductions(int count, const Field& f, std::uint64_t seed,
                                           const GeneratorOptions& options = kReductionGenerator,
                                           std::uint64_t budget = kDefaultBudget);

/// Rectangles (2,2), (3,3,3); staircases (2,1), (3,2,1); hooks (4,1), (3,1,1):
/// each has P(s -> 0) = 1/q.
std::vector<CheckResult> sanity_fixtures(const Field& f, std::uint64_t budget = kDefaultBudget);

struct ConjectureCell {
  int p = 2;
  int n = 1;
  int k = 2;
  std::uint64_t q = 2;
};

struct ConjectureOptions {
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

/// For each outward cell (p > n, k >= n+1), checks both the shifted staircase
/// and the block staircase against 1 - prod_{i=1}^{n+1} (1 - q^-i). Cells over
/// budget fall back to Monte-Carlo. Results are conjectural, never failures.
std::vector<CheckResult> conjecture_sweep(const std::vector<ConjectureCell>& cells,
                                          const ConjectureOptions& options = {});

/// Runs jobs on `threads` workers and returns all results sorted by
/// (name, params).
std::vector<CheckResult> run_checks(const std::vector<std::function<std::vector<CheckResult>()>>& jobs,
                                    unsigned threads = 1);

void sort_results(std::vector<CheckResult>& results);

/// One record per line: {tool_version, q, shape | spec, result}.
void write_json_lines(std::ostream& os, const std::vector<CheckResult>& results);
void write_summary(std::ostream& os, const std::vector<CheckResult>& results);

/// 0 iff every non-conjectural check matches, else 1.
int report_exit_code(const std::vector<CheckResult>& results);

}  // namespace jtdet
