#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jtdet {

// Malformed textual input (partitions, skew shapes, ranges, JSON specs).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value violates a structural invariant (non-prime p, reducible modulus,
// overlapping slant blocks, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in finite field") {}
};

// Exhaustive enumeration would need more determinant evaluations than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(unsigned q, unsigned vars, std::uint64_t budget)
      : std::runtime_error("enumeration needs " + std::to_string(q) + "^" +
                           std::to_string(vars) +
                           " evaluations, budget is " + std::to_string(budget)),
        q_(q),
        vars_(vars),
        budget_(budget) {}

  unsigned q() const { return q_; }
  unsigned vars() const { return vars_; }
  std::uint64_t budget() const { return budget_; }

 private:
  unsigned q_;
  unsigned vars_;
  std::uint64_t budget_;
};

}  // namespace jtdet
