#pragma once

// Arithmetic in GF(p^k) with an explicit irreducible modulus.
//
// Elements are addressed by an integer code in [0, q): the base-p digits of
// the code are the polynomial coefficients, x^0 first. Addition and
// multiplication are table driven, so a Field is cheap to copy (the tables
// are shared) and every operation is O(1).

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucycle {

using Code = std::uint32_t;

inline constexpr std::uint64_t kDefaultMaxOrder = 512;

class FieldError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class FieldMismatch : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("inverse of zero in a finite field") {}
};

/// Upper bound on q. Overridable through UCYCLE_MAX_Q.
inline std::uint64_t max_field_order() {
  if (const char* env = std::getenv("UCYCLE_MAX_Q")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2) return v;
  }
  return kDefaultMaxOrder;
}

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over GF(p), coefficient of x^0 first, no trailing zeros
// (the zero polynomial is empty).
using Poly = std::vector<Code>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Code inv_mod_prime(Code a, Code p) {
  // Fermat; p is small.
  std::uint64_t result = 1, base = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<Code>(result);
}

// Remainder of a modulo m over GF(p); m nonzero.
inline Poly poly_rem(Poly a, Poly const& m, Code p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Code lead_inv = inv_mod_prime(m.back(), p);
  while (a.size() >= m.size()) {
    const std::size_t shift = a.size() - m.size();
    const Code factor = static_cast<Code>(std::uint64_t(a.back()) * lead_inv % p);
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = std::uint64_t(factor) * m[i] % p;
      a[shift + i] = static_cast<Code>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mul(Poly const& a, Poly const& b, Code p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<Code>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  trim(r);
  return r;
}

// Monic polynomial of the given degree whose lower coefficients are the
// base-p digits of idx, with x^0 as the most significant digit. Iterating
// idx upward therefore walks candidates in lexicographic order, low degree
// first.
inline Poly monic_candidate(std::uint64_t idx, unsigned degree, Code p) {
  Poly f(degree + 1, 0);
  for (unsigned i = degree; i-- > 0;) {
    f[i] = static_cast<Code>(idx % p);
    idx /= p;
  }
  f[degree] = 1;
  return f;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..deg/2.
inline bool is_irreducible(Poly const& f, Code p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  if (deg == 0) return false;
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (poly_rem(f, monic_candidate(idx, d, p), p).empty()) return false;
    }
  }
  return true;
}

inline Poly smallest_irreducible(Code p, unsigned k) {
  const std::uint64_t count = ipow(p, k);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f = monic_candidate(idx, k, p);
    if (is_irreducible(f, p)) return f;
  }
  throw FieldError("no irreducible polynomial found");  // unreachable
}

}  // namespace detail

class FieldElement;

class Field {
 public:
  /// GF(p^k) with the lexicographically smallest monic irreducible modulus.
  static Field make(std::uint64_t p, unsigned k = 1) { return make(p, k, max_field_order()); }

  static Field make(std::uint64_t p, unsigned k, std::uint64_t bound) {
    if (!detail::is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw FieldError("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
      q *= p;
      if (q > bound) {
        throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(k) +
                         " exceeds bound " + std::to_string(bound));
      }
    }
    return Field(static_cast<Code>(p), k, detail::smallest_irreducible(static_cast<Code>(p), k));
  }

  Code p() const { return tables_->p; }
  unsigned k() const { return tables_->k; }
  Code order() const { return tables_->q; }
  Code q() const { return tables_->q; }
  /// Monic modulus, x^0 first (length k+1).
  std::vector<Code> const& modulus() const { return tables_->modulus; }

  static constexpr Code zero() { return 0; }
  static constexpr Code one() { return 1; }

  Code add(Code a, Code b) const { return tables_->add[a * q() + b]; }
  Code mul(Code a, Code b) const { return tables_->mul[a * q() + b]; }
  Code neg(Code a) const { return tables_->neg[a]; }
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  Code inv(Code a) const {
    if (a == 0) throw DivisionByZero();
    return tables_->inv[a];
  }
  Code div(Code a, Code b) const { return mul(a, inv(b)); }

  Code pow(Code a, std::uint64_t e) const {
    Code r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Multiplicative order; 0 for the zero element.
  std::uint64_t multiplicative_order(Code a) const {
    if (a == 0) return 0;
    std::uint64_t ord = 1;
    for (Code x = a; x != 1; x = mul(x, a)) ++ord;
    return ord;
  }

  /// First element, in code order, generating the multiplicative group.
  Code primitive_element() const {
    for (Code a = 1; a < q(); ++a)
      if (multiplicative_order(a) == q() - 1) return a;
    throw FieldError("no primitive element");  // unreachable for a field
  }

  std::vector<Code> coefficients(Code a) const {
    std::vector<Code> c(k());
    for (unsigned i = 0; i < k(); ++i) {
      c[i] = a % p();
      a /= p();
    }
    return c;
  }

  Code from_coefficients(std::vector<Code> const& c) const {
    if (c.size() != k()) throw FieldError("coefficient vector has wrong length");
    Code code = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= p()) throw FieldError("coefficient out of range");
      code = code * p() + c[i];
    }
    return code;
  }

  /// Embedding of the prime subfield: n * 1.
  Code from_integer(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p());
    if (r < 0) r += p();
    return static_cast<Code>(r);
  }

  bool operator==(Field const& other) const {
    return tables_ == other.tables_ || (p() == other.p() && k() == other.k() && modulus() == other.modulus());
  }

 private:
  struct Tables {
    Code p;
    unsigned k;
    Code q;
    std::vector<Code> modulus;
    std::vector<Code> add, mul, neg, inv;
  };

  Field(Code p, unsigned k, detail::Poly modulus) {
    auto t = std::make_shared<Tables>();
    t->p = p;
    t->k = k;
    t->q = static_cast<Code>(detail::ipow(p, k));
    t->modulus = modulus;
    const Code q = t->q;
    t->add.resize(std::size_t(q) * q);
    t->mul.resize(std::size_t(q) * q);
    t->neg.resize(q);
    t->inv.resize(q, 0);

    std::vector<detail::Poly> polys(q);
    for (Code a = 0; a < q; ++a) {
      detail::Poly c(k);
      Code x = a;
      for (unsigned i = 0; i < k; ++i) {
        c[i] = x % p;
        x /= p;
      }
      detail::trim(c);
      polys[a] = std::move(c);
    }
    auto encode = [&](detail::Poly const& c) {
      Code code = 0;
      for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
      return code;
    };
    for (Code a = 0; a < q; ++a) {
      for (Code b = 0; b < q; ++b) {
        // Digitwise addition mod p.
        Code sum = 0, scale = 1, x = a, y = b;
        for (unsigned i = 0; i < k; ++i) {
          sum += ((x % p + y % p) % p) * scale;
          x /= p;
          y /= p;
          scale *= p;
        }
        t->add[std::size_t(a) * q + b] = sum;
        t->mul[std::size_t(a) * q + b] =
            encode(detail::poly_rem(detail::poly_mul(polys[a], polys[b], p), modulus, p));
      }
    }
    for (Code a = 0; a < q; ++a) {
      for (Code b = 0; b < q; ++b) {
        if (t->add[std::size_t(a) * q + b] == 0) t->neg[a] = b;
        if (t->mul[std::size_t(a) * q + b] == 1) t->inv[a] = b;
      }
    }
    tables_ = std::move(t);
  }

  std::shared_ptr<const Tables> tables_;
};

/// A field element bound to its field. The Field must outlive the element.
class FieldElement {
 public:
  FieldElement(Field const& field, Code code) : field_(&field), code_(code) {
    if (code >= field.q()) throw FieldError("element code " + std::to_string(code) + " out of range");
  }

  Code code() const { return code_; }
  Field const& field() const { return *field_; }
  std::vector<Code> coefficients() const { return field_->coefficients(code_); }

  FieldElement inv() const { return {*field_, field_->inv(code_)}; }
  FieldElement operator-() const { return {*field_, field_->neg(code_)}; }

  friend FieldElement operator+(FieldElement const& a, FieldElement const& b) {
    a.check(b);
    return {*a.field_, a.field_->add(a.code_, b.code_)};
  }
  friend FieldElement operator-(FieldElement const& a, FieldElement const& b) {
    a.check(b);
    return {*a.field_, a.field_->sub(a.code_, b.code_)};
  }
  friend FieldElement operator*(FieldElement const& a, FieldElement const& b) {
    a.check(b);
    return {*a.field_, a.field_->mul(a.code_, b.code_)};
  }
  friend FieldElement operator/(FieldElement const& a, FieldElement const& b) {
    a.check(b);
    return {*a.field_, a.field_->div(a.code_, b.code_)};
  }
  friend bool operator==(FieldElement const& a, FieldElement const& b) {
    return a.code_ == b.code_ && *a.field_ == *b.field_;
  }

 private:
  void check(FieldElement const& other) const {
    if (!(*field_ == *other.field_)) throw FieldMismatch("operands belong to different fields");
  }

  Field const* field_;
  Code code_;
};

/// All q elements, ordered by code (0 first).
inline std::vector<FieldElement> elements(Field const& f) {
  std::vector<FieldElement> out;
  out.reserve(f.q());
  for (Code c = 0; c < f.q(); ++c) out.emplace_back(f, c);
  return out;
}

inline FieldElement primitive_element(Field const& f) { return {f, f.primitive_element()}; }

}  // namespace ucycle
