#pragma once

#include "jtdet/finite_field.hpp"
#include "jtdet/jacobi_trudi.hpp"
#include "jtdet/rational.hpp"

#include <json.hpp>

#include <map>
#include <random>
#include <string>
#include <vector>

namespace jtdet {

/// A tall Toeplitz block (rows >= cols >= 1).
///
/// `full` lists the full paradiagonals top to bottom (paradiagonal 0 first),
/// so `full.back()` is the bottom element u_0 and the rest are u_m, ..., u_1.
/// `attic` lists paradiagonals -1, -2, ..., -(cols-1). Entries below the
/// bottommost full paradiagonal are zero.
struct SlantBlock {
  int rows = 1;
  int cols = 1;
  std::vector<SymEntry> full;
  std::vector<SymEntry> attic;

  /// Entry at 0-based (row, col).
  SymEntry entry(int row, int col) const;
  /// Entry at `level` steps above the bottom paradiagonal: level 0 is u_0,
  /// levels past the full paradiagonals walk into the attic, negative levels
  /// are basement zeros.
  SymEntry level(int level) const;
  const SymEntry& bottom() const { return full.back(); }
  int full_count() const { return rows - cols + 1; }
  bool is_strict() const;
  std::vector<int> variables() const;

  /// Throws InvalidArgument naming the first violated slant invariant.
  void validate() const;

  friend bool operator==(const SlantBlock&, const SlantBlock&) = default;
};

enum class SlantType { X, Zero, One };

const char* to_string(SlantType t);

/// Block counts by type: X, 0 and 1.
struct Signature {
  int x = 0;
  int zero = 0;
  int one = 0;

  int blocks() const { return x + zero + one; }
  std::string to_string() const;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

/// Horizontal concatenation of pairwise variable-disjoint slant blocks.
class MultislantSpec {
 public:
  /// The empty 0 x 0 multislant.
  MultislantSpec() = default;
  /// Validates every block, equal heights and disjointness.
  explicit MultislantSpec(std::vector<SlantBlock> blocks, std::map<int, std::string> names = {});

  const std::vector<SlantBlock>& blocks() const { return blocks_; }
  const std::map<int, std::string>& names() const { return names_; }
  int rows() const { return blocks_.empty() ? 0 : blocks_.front().rows; }
  int cols() const;
  bool is_square() const { return rows() == cols(); }
  bool is_strict() const;
  std::vector<int> variables() const;

  friend bool operator==(const MultislantSpec& a, const MultislantSpec& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<SlantBlock> blocks_;
  std::map<int, std::string> names_;
};

/// Type of a block over `f`; integer constants are reduced into the field first.
SlantType classify_block(const SlantBlock& block, const Field& f);
Signature signature(const MultislantSpec& spec, const Field& f);

/// prod_{i=1}^{k-1} (1 - q^-i); gamma(0) = gamma(1) = 1.
Rational gamma(int k, std::uint64_t q);

/// Singular probability predicted for a square multislant of this signature:
/// 1 - gamma_k if it has a type-1 block, else 1 - gamma_k (1 - q^-i).
/// Throws InvalidArgument for the empty signature.
Rational theoretical_sipr(const Signature& sig, std::uint64_t q);

/// The concatenated matrix. Throws InvalidArgument unless square.
SymbolicMatrix to_symbolic(const MultislantSpec& spec);

struct StaircaseGrouping {
  /// column_order[t] is the 0-based column of J(lambda) placed at position t.
  std::vector<int> column_order;
  MultislantSpec spec;
};

/// Regroups the columns of J(shifted_staircase(p, n, k)) by residue mod n+1.
/// Requires 0 < p <= n <= k-1.
StaircaseGrouping staircase_grouping(int p, int n, int k);

/// Subtracts multiples of the columns of block i from block j (counted from
/// the right) to zero the bottom paradiagonal of j, then renames the
/// resulting shifted indeterminates. Needs a strict square spec, blocks i and
/// j of type 1 and cols(i) >= cols(j).
MultislantSpec reduce_type1_pair(const MultislantSpec& spec, int i, int j, const Field& f);

/// Replaces the bottom element of type-X block j by the constant v.
MultislantSpec specialize_bottom(const MultislantSpec& spec, int j, FieldElement v, const Field& f);

/// For a square spec of signature (0, k-1, 1): drops the bottom row and the
/// last column of the single type-1 block.
MultislantSpec strip_strange_block(const MultislantSpec& spec, const Field& f);

/// {"blocks": [{"rows", "cols", "full": [...], "attic": [...]}]}; entries are
/// variable names (strings), integers, or {"elem": index}.
nlohmann::json to_json(const MultislantSpec& spec);
/// Throws ParseError for malformed JSON and InvalidArgument for invariant
/// violations.
MultislantSpec multislant_from_json(const nlohmann::json& j);

struct GeneratorOptions {
  int dim_max = 8;
  int max_vars = 16;
  bool strict = false;
  double attic_var_prob = 0.5;
  /// Let attic variables repeat across paradiagonals of the same block.
  bool reuse_attic_vars = false;
};

/// A random square multislant with exactly the given signature over `f`.
/// Block widths are a uniform composition of the height; variables are
/// globally fresh. Throws InvalidArgument if no instance fits the options.
MultislantSpec random_multislant(const Signature& sig, const Field& f, std::mt19937_64& rng,
                                 const GeneratorOptions& options = {});

/// Every signature with 1..max_blocks blocks.
std::vector<Signature> signature_classes(int max_blocks);

}  // namespace jtdet
