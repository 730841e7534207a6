#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace jtdet {

/// An element of F_q in canonical encoding.
///
/// For a prime field the index is the residue mod p. For an extension field
/// it is the base-p digit string of the polynomial coefficients, constant
/// coefficient least significant. Index 0 is zero and index 1 is one in
/// every field.
struct FieldElement {
  std::uint32_t index = 0;

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// The finite field F_q with q = p^e.
///
/// Immutable after construction; copies share the precomputed tables, so a
/// Field can be passed by value and used from many threads at once.
class Field {
 public:
  static constexpr std::uint32_t kTableLimit = 1u << 16;
  static constexpr std::uint64_t kMaxOrder = (1ull << 31) - 1;

  /// Builds F_{p^e}. When `modulus` is omitted for e > 1 the lexicographically
  /// smallest monic irreducible of degree e is used. `modulus` lists the
  /// coefficients low-to-high, leading 1 included (e + 1 entries).
  static Field make(std::uint64_t p, unsigned e = 1,
                    std::optional<std::vector<std::uint32_t>> modulus = {});

  /// Factors q = p^e and calls make().
  static Field from_order(std::uint64_t q,
                          std::optional<std::vector<std::uint32_t>> modulus = {});

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint32_t order() const { return q_; }
  bool is_prime_field() const { return e_ == 1; }
  /// Coefficients low-to-high of the defining polynomial; {0, 1} (i.e. x)
  /// for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool has_tables() const { return tables_ != nullptr; }

  static constexpr FieldElement zero() { return {0}; }
  static constexpr FieldElement one() { return {1}; }

  bool contains(FieldElement a) const { return a.index < q_; }

  FieldElement add(FieldElement a, FieldElement b) const {
    if (e_ == 1) {
      std::uint32_t s = a.index + b.index;
      return {s >= p_ ? s - p_ : s};
    }
    if (p_ == 2) return {a.index ^ b.index};
    if (tables_ && !tables_->add.empty()) return {tables_->add[a.index * q_ + b.index]};
    return {digitwise(a.index, b.index, false)};
  }

  FieldElement neg(FieldElement a) const {
    if (e_ == 1) return {a.index == 0 ? 0 : p_ - a.index};
    if (p_ == 2) return a;
    return {digitwise(0, a.index, true)};
  }

  FieldElement sub(FieldElement a, FieldElement b) const {
    if (e_ == 1) return {a.index >= b.index ? a.index - b.index : a.index + p_ - b.index};
    if (p_ == 2) return {a.index ^ b.index};
    return {digitwise(a.index, b.index, true)};
  }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.index == 0 || b.index == 0) return zero();
    if (tables_) {
      const auto& t = *tables_;
      return {t.exp[t.log[a.index] + t.log[b.index]]};
    }
    return {barrett(static_cast<std::uint64_t>(a.index) * b.index)};
  }

  /// Throws DivisionByZero for a = 0.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t exponent) const;

  /// Image of n under the canonical ring map Z -> F_q.
  FieldElement from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
  }

  /// True iff a lies in the prime subfield F_p.
  bool in_prime_subfield(FieldElement a) const { return a.index < p_; }

  /// All q elements in index order, starting with zero.
  std::vector<FieldElement> elements() const;

  /// A generator of the multiplicative group.
  FieldElement primitive_element() const { return {primitive_}; }

  /// "GF(9) = F_3[x]/(x^2+1)" style description.
  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.modulus_ == b.modulus_;
  }

 private:
  struct Tables {
    std::vector<std::uint32_t> exp;  // length 2(q-1), exp[i] = g^i
    std::vector<std::uint32_t> log;  // log[0] unused
    std::vector<std::uint16_t> add;  // q*q, odd-characteristic extensions with q <= 1024
  };

  Field() = default;

  std::uint32_t digitwise(std::uint32_t a, std::uint32_t b, bool subtract) const;
  std::uint32_t barrett(std::uint64_t x) const {
    auto quot = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_m_) >> 64);
    std::uint64_t r = x - quot * p_;
    while (r >= p_) r -= p_;
    return static_cast<std::uint32_t>(r);
  }
  // Reference multiplication by polynomial arithmetic, used to build tables.
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t slow_pow(std::uint32_t a, std::uint64_t exponent) const;
  void build_tables();

  std::uint32_t p_ = 2;
  unsigned e_ = 1;
  std::uint32_t q_ = 2;
  std::vector<std::uint32_t> modulus_;
  std::uint64_t barrett_m_ = 0;
  std::uint32_t primitive_ = 1;
  std::shared_ptr<const Tables> tables_;
};

bool is_prime(std::uint64_t n);

/// Trial division by every monic polynomial of degree 1..deg/2 over F_p.
/// `poly` is low-to-high and must be monic of degree >= 1.
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);

/// Lexicographically smallest monic irreducible of degree e over F_p, ordering
/// candidates by (c_{e-1}, ..., c_1, c_0).
std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned e);

}  // namespace jtdet
