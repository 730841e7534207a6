#pragma once

#include "jtdet/finite_field.hpp"
#include "jtdet/partitions.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace jtdet {

/// A matrix entry: an indeterminate, an integer constant (reduced into the
/// field on evaluation), or a literal field element.
///
/// Jacobi-Trudi matrices only use Var and IntConst: h_m with m > 0 is
/// Var(m), h_0 is IntConst(1) and h_{m<0} is IntConst(0). FieldConst appears
/// when a multislant block is specialized at an element outside the prime
/// subfield; it is only meaningful together with the field it came from.
class SymEntry {
 public:
  enum class Kind : std::uint8_t { Var, IntConst, FieldConst };

  constexpr SymEntry() = default;

  /// Throws InvalidArgument for m < 1.
  static SymEntry var(int m);
  static constexpr SymEntry constant(std::int64_t c) { return SymEntry(Kind::IntConst, c); }
  static constexpr SymEntry field_const(FieldElement a) { return SymEntry(Kind::FieldConst, a.index); }
  /// h_m under the conventions h_0 = 1, h_{m<0} = 0.
  static SymEntry h(int m) { return m > 0 ? var(m) : constant(m == 0 ? 1 : 0); }

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  bool is_const() const { return kind_ != Kind::Var; }
  int var_index() const { return static_cast<int>(value_); }
  std::int64_t int_value() const { return value_; }

  /// Value of a constant entry in `f`. Must not be called on a Var.
  FieldElement const_value(const Field& f) const {
    return kind_ == Kind::IntConst ? f.from_int(value_) : FieldElement{static_cast<std::uint32_t>(value_)};
  }

  friend constexpr bool operator==(const SymEntry&, const SymEntry&) = default;

 private:
  constexpr SymEntry(Kind k, std::int64_t v) : kind_(k), value_(v) {}

  Kind kind_ = Kind::IntConst;
  std::int64_t value_ = 0;
};

/// Variable index -> value.
using Assignment = std::map<int, FieldElement>;

/// A k x k grid of SymEntry, row-major. Variables are identified by positive
/// integers; `names` optionally gives them display names (default "h<m>").
class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;
  explicit SymbolicMatrix(int k) : k_(k), entries_(static_cast<std::size_t>(k) * k) {}

  int dim() const { return k_; }
  const SymEntry& at(int row, int col) const { return entries_[static_cast<std::size_t>(row) * k_ + col]; }
  SymEntry& at(int row, int col) { return entries_[static_cast<std::size_t>(row) * k_ + col]; }
  const std::vector<SymEntry>& entries() const { return entries_; }

  void set_name(int var, std::string name) { names_[var] = std::move(name); }
  const std::map<int, std::string>& names() const { return names_; }
  std::string name_of(int var) const;

  /// Entry as printed in text grids and JSON: "h7", "1", "0", "@5" (field literal).
  std::string entry_text(const SymEntry& e) const;
  /// Rows separated by " / ", entries by spaces: "h7 h8 h9 / h3 h4 h5 / 0 1 h1".
  std::string to_text() const;
  /// Array of rows of entry tags: Var -> name string, IntConst -> integer,
  /// FieldConst -> {"elem": index}.
  nlohmann::json to_json() const;

  friend bool operator==(const SymbolicMatrix& a, const SymbolicMatrix& b) {
    return a.k_ == b.k_ && a.entries_ == b.entries_;
  }

 private:
  int k_ = 0;
  std::vector<SymEntry> entries_;
  std::map<int, std::string> names_;
};

/// J(outer/inner): entry (i, j) is h_{outer_i - inner_j - i + j}, k = length of outer.
SymbolicMatrix build_jacobi_trudi(const SkewShape& shape);

/// Sorted distinct variable indices.
std::vector<int> variables(const SymbolicMatrix& m);

/// Determinant of a k x k matrix of field elements, destroying `a`.
/// Gaussian elimination with pivot search; closed forms for k <= 3.
FieldElement determinant_in_place(std::span<FieldElement> a, int k, const Field& f);

/// det(M) under `assignment`. Throws InvalidArgument if a variable of M is
/// unassigned.
FieldElement eval_det(const SymbolicMatrix& m, const Assignment& assignment, const Field& f);

/// A symbolic matrix prepared for repeated evaluation: constants are
/// reduced once and variables are mapped to dense slots.
class DetEvaluator {
 public:
  DetEvaluator(const SymbolicMatrix& m, const Field& f);

  /// Ascending variable indices; values passed to evaluate() follow this order.
  const std::vector<int>& variables() const { return vars_; }
  int dim() const { return k_; }
  const Field& field() const { return field_; }

  /// `scratch` is resized as needed; reuse it across calls.
  FieldElement evaluate(std::span<const FieldElement> values, std::vector<FieldElement>& scratch) const;

 private:
  struct Slot {
    std::uint32_t cell;
    std::uint32_t var;
  };
  Field field_;
  int k_ = 0;
  std::vector<int> vars_;
  std::vector<FieldElement> base_;
  std::vector<Slot> slots_;
};

struct HessenbergProfile {
  bool subdiag_ones = false;  // every (j+1, j) entry is the constant 1
  bool lower_zeros = false;   // every (i, j) with i > j + 1 is the constant 0
  int top_right_index = 0;    // Var index at (1, k); 0 if that entry is constant
  bool top_right_max = false; // every other Var index is strictly smaller
};

/// Throws InvalidArgument for an empty matrix.
HessenbergProfile hessenberg_profile(const SymbolicMatrix& m);

/// outer_1 - inner_l - 1 + l, the index at the top-right corner of
/// J(outer/inner) for a shape with l rows.
int top_right_index(const SkewShape& shape);

}  // namespace jtdet
