#include "jtdet/finite_field.hpp"

#include "jtdet/error.hpp"

#include <algorithm>
#include <sstream>

namespace jtdet {

namespace {

using Poly = std::vector<std::uint32_t>;  // low-to-high coefficients over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, a != 0: Fermat.
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b (b nonzero, trimmed).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint64_t factor = a.back() * lead_inv % p;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint64_t sub = factor * b[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  // Enumerate monic divisors of degree d = 1..deg/2 by their low coefficients.
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    Poly g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned e) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  Poly f(e + 1, 0);
  f[e] = 1;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < e; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw InvalidArgument("no irreducible polynomial found");  // unreachable for e >= 1
}

Field Field::make(std::uint64_t p, unsigned e,
                  std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw InvalidArgument("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw InvalidArgument("field order exceeds 2^31");
  }
  if (e > 1 && q > kTableLimit)
    throw InvalidArgument("extension fields are limited to q <= 2^16");

  Field f;
  f.p_ = static_cast<std::uint32_t>(p);
  f.e_ = e;
  f.q_ = static_cast<std::uint32_t>(q);

  if (e == 1) {
    if (modulus && !(modulus->size() == 2 && (*modulus)[1] == 1 && (*modulus)[0] % p == 0))
      throw InvalidArgument("a prime field takes no modulus other than x");
    f.modulus_ = {0, 1};
  } else if (modulus) {
    Poly m = *modulus;
    if (m.size() != e + 1 || m.back() != 1)
      throw InvalidArgument("modulus must be monic of degree " + std::to_string(e) +
                            " (" + std::to_string(e + 1) + " coefficients, low-to-high)");
    for (auto c : m)
      if (c >= p) throw InvalidArgument("modulus coefficient out of range [0, p)");
    if (!is_irreducible(m, f.p_)) throw InvalidArgument("modulus is reducible over F_p");
    f.modulus_ = std::move(m);
  } else {
    f.modulus_ = default_modulus(f.p_, e);
  }

  f.barrett_m_ = ~std::uint64_t{0} / p;

  // Primitive element: g with g^((q-1)/r) != 1 for every prime r | q-1.
  if (q == 2) {
    f.primitive_ = 1;
  } else {
    const auto factors = prime_factors(q - 1);
    for (std::uint32_t g = 2; g < q; ++g) {
      bool ok = true;
      for (auto r : factors) {
        if (f.slow_pow(g, (q - 1) / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        f.primitive_ = g;
        break;
      }
    }
  }
  if (q <= kTableLimit) f.build_tables();
  return f;
}

Field Field::from_order(std::uint64_t q, std::optional<std::vector<std::uint32_t>> modulus) {
  if (q < 2) throw InvalidArgument("field order must be at least 2");
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  unsigned e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  return make(p, e, std::move(modulus));
}

std::uint32_t Field::digitwise(std::uint32_t a, std::uint32_t b, bool subtract) const {
  std::uint32_t result = 0, place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint32_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    std::uint32_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
    result += d * place;
    place *= p_;
  }
  return result;
}

std::uint32_t Field::slow_mul(std::uint32_t a, std::uint32_t b) const {
  if (e_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  Poly pa(e_), pb(e_);
  for (unsigned i = 0; i < e_; ++i) {
    pa[i] = a % p_;
    a /= p_;
    pb[i] = b % p_;
    b /= p_;
  }
  Poly prod(2 * e_ - 1, 0);
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < e_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % p_);
  Poly r = poly_mod(prod, modulus_, p_);
  std::uint32_t out = 0;
  for (std::size_t i = r.size(); i-- > 0;) out = out * p_ + r[i];
  return out;
}

std::uint32_t Field::slow_pow(std::uint32_t a, std::uint64_t exponent) const {
  std::uint32_t result = 1, base = a;
  while (exponent) {
    if (exponent & 1) result = slow_mul(result, base);
    base = slow_mul(base, base);
    exponent >>= 1;
  }
  return result;
}

void Field::build_tables() {
  auto t = std::make_shared<Tables>();
  const std::uint32_t n = q_ - 1;
  t->exp.resize(2 * static_cast<std::size_t>(n));
  t->log.assign(q_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    t->exp[i] = x;
    t->log[x] = i;
    x = slow_mul(x, primitive_);
  }
  for (std::uint32_t i = n; i < 2 * n; ++i) t->exp[i] = t->exp[i - n];
  if (e_ > 1 && p_ != 2 && q_ <= 1024) {
    t->add.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b)
        t->add[a * q_ + b] = static_cast<std::uint16_t>(digitwise(a, b, false));
  }
  tables_ = std::move(t);
}

FieldElement Field::inv(FieldElement a) const {
  if (a.index == 0) throw DivisionByZero();
  if (tables_) {
    const auto& t = *tables_;
    const std::uint32_t n = q_ - 1;
    return {t.exp[(n - t.log[a.index]) % n]};
  }
  return {inv_mod(a.index, p_)};
}

FieldElement Field::pow(FieldElement a, std::uint64_t exponent) const {
  FieldElement result = one(), base = a;
  while (exponent) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
  return out;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << q_ << ")";
  if (e_ > 1) {
    os << " = F_" << p_ << "[x]/(";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (modulus_[i] != 1 || i == 0) os << modulus_[i];
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

}  // namespace jtdet
