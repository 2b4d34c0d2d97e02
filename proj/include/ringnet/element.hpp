#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "ringnet/error.hpp"
#include "ringnet/rational.hpp"
#include "ringnet/rings.hpp"

namespace ringnet {

struct JacobsonTerm;

/// A value of exactly one ring, always held in canonical form so that
/// structural equality of payloads is ring equality.
///
/// Payload by ring kind:
///   Z<m>, GF<p>  residue in [0, m)
///   Q            reduced Rational
///   M<k>(R)      k*k base elements, row-major
///   J(F)         terms c * y^i x^j sorted by (i, j), no zero coefficients
class Element {
 public:
  using Residue = std::int64_t;
  using Entries = std::vector<Element>;
  using Terms = std::vector<JacobsonTerm>;
  using Payload = std::variant<Residue, Rational, Entries, Terms>;

  Element(Ring ring, Payload payload);

  const Ring& ring() const noexcept { return ring_; }
  const Payload& payload() const noexcept { return payload_; }

  Residue residue() const { return std::get<Residue>(payload_); }
  const Rational& rational() const { return std::get<Rational>(payload_); }
  const Entries& entries() const { return std::get<Entries>(payload_); }
  const Terms& terms() const { return std::get<Terms>(payload_); }

  /// Entry (i, j) of a matrix-ring element.
  const Element& at(std::size_t i, std::size_t j) const { return entries()[i * ring_.dim() + j]; }

  friend bool operator==(const Element& a, const Element& b);

 private:
  void normalize();

  Ring ring_;
  Payload payload_;
};

struct JacobsonTerm {
  std::uint64_t y_degree = 0;
  std::uint64_t x_degree = 0;
  Element coeff;

  friend bool operator==(const JacobsonTerm&, const JacobsonTerm&) = default;
};

inline bool operator==(const Element& a, const Element& b) { return a.ring_ == b.ring_ && a.payload_ == b.payload_; }

// ---------------------------------------------------------------------------
// Construction

/// n * 1 in any ring of the tower.
inline Element from_int(const Ring& r, std::int64_t n);

inline Element zero(const Ring& r) { return from_int(r, 0); }
inline Element one(const Ring& r) { return from_int(r, 1); }

inline Element rational(std::int64_t num, std::int64_t den = 1) {
  return Element(Ring::rationals(), Rational(num, den));
}

/// Builds a matrix-ring element from row-major entries.
inline Element matrix_element(const Ring& r, std::vector<Element> entries) {
  return Element(r, std::move(entries));
}

/// coeff * y^i x^j in J(F).
inline Element jacobson_monomial(const Ring& r, std::uint64_t y_degree, std::uint64_t x_degree,
                                 std::int64_t coeff = 1) {
  if (r.kind() != RingKind::Jacobson) throw RingMismatch("jacobson_monomial needs J(F), got " + r.to_string());
  return Element(r, Element::Terms{JacobsonTerm{y_degree, x_degree, from_int(r.base(), coeff)}});
}

inline Element jacobson_x(const Ring& r) { return jacobson_monomial(r, 0, 1); }
inline Element jacobson_y(const Ring& r) { return jacobson_monomial(r, 1, 0); }

// ---------------------------------------------------------------------------
// Arithmetic

namespace detail {

inline void require_same_ring(const Element& a, const Element& b, const char* op) {
  if (!(a.ring() == b.ring())) {
    throw RingMismatch(std::string(op) + ": " + a.ring().to_string() + " vs " + b.ring().to_string());
  }
}

inline std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

}  // namespace detail

inline Element add(const Element& a, const Element& b);
inline Element neg(const Element& a);
inline Element mul(const Element& a, const Element& b);

inline Element sub(const Element& a, const Element& b) { return add(a, neg(b)); }

inline bool is_zero(const Element& a);

inline bool is_one(const Element& a) { return a == one(a.ring()); }

inline Element operator+(const Element& a, const Element& b) { return add(a, b); }
inline Element operator-(const Element& a, const Element& b) { return sub(a, b); }
inline Element operator-(const Element& a) { return neg(a); }
inline Element operator*(const Element& a, const Element& b) { return mul(a, b); }

/// Multiplicative inverse of a nonzero element of GF<p> or Q.
inline Element field_inverse(const Element& a);

/// Literal text of an element: decimal residues, `a/b` rationals,
/// nested arrays for matrix rings and `[i, j, c]` triples for J(F).
/// With `json` set, non-integral rationals are quoted.
inline std::string format_element(const Element& a, bool json = false);

// ---------------------------------------------------------------------------
// Implementation

inline Element::Element(Ring ring, Payload payload) : ring_(std::move(ring)), payload_(std::move(payload)) {
  normalize();
}

inline void Element::normalize() {
  switch (ring_.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField: {
      auto* v = std::get_if<Residue>(&payload_);
      if (!v) throw RingMismatch("payload is not a residue for " + ring_.to_string());
      *v = detail::mod_reduce(*v, ring_.modulus());
      return;
    }
    case RingKind::Rationals:
      if (!std::holds_alternative<Rational>(payload_)) {
        throw RingMismatch("payload is not a rational for " + ring_.to_string());
      }
      return;
    case RingKind::MatrixRing: {
      auto* e = std::get_if<Entries>(&payload_);
      if (!e) throw RingMismatch("payload is not a matrix for " + ring_.to_string());
      if (e->size() != ring_.dim() * ring_.dim()) {
        throw ShapeError("matrix-ring element needs " + std::to_string(ring_.dim() * ring_.dim()) + " entries, got " +
                         std::to_string(e->size()));
      }
      const Ring base = ring_.base();
      for (const auto& x : *e) {
        if (!(x.ring() == base)) throw RingMismatch("matrix entry over " + x.ring().to_string());
      }
      return;
    }
    case RingKind::Jacobson: {
      auto* t = std::get_if<Terms>(&payload_);
      if (!t) throw RingMismatch("payload is not a term list for " + ring_.to_string());
      const Ring base = ring_.base();
      std::map<std::pair<std::uint64_t, std::uint64_t>, Element> acc;
      for (auto& term : *t) {
        if (!(term.coeff.ring() == base)) throw RingMismatch("Jacobson coefficient over " + term.coeff.ring().to_string());
        const auto key = std::make_pair(term.y_degree, term.x_degree);
        auto it = acc.find(key);
        if (it == acc.end()) {
          acc.emplace(key, term.coeff);
        } else {
          it->second = add(it->second, term.coeff);
        }
      }
      Terms out;
      out.reserve(acc.size());
      for (auto& [key, c] : acc) {
        if (!is_zero(c)) out.push_back(JacobsonTerm{key.first, key.second, std::move(c)});
      }
      *t = std::move(out);
      return;
    }
  }
}

inline Element from_int(const Ring& r, std::int64_t n) {
  switch (r.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
      return Element(r, detail::mod_reduce(n, r.modulus()));
    case RingKind::Rationals:
      return Element(r, Rational(n));
    case RingKind::MatrixRing: {
      const Ring base = r.base();
      const std::size_t k = r.dim();
      Element::Entries e(k * k, from_int(base, 0));
      if (n != 0) {
        const Element d = from_int(base, n);
        for (std::size_t i = 0; i < k; ++i) e[i * k + i] = d;
      }
      return Element(r, std::move(e));
    }
    case RingKind::Jacobson: {
      Element::Terms t;
      if (n != 0) t.push_back(JacobsonTerm{0, 0, from_int(r.base(), n)});
      return Element(r, std::move(t));
    }
  }
  throw Error("unreachable ring kind");
}

inline bool is_zero(const Element& a) {
  return std::visit(
      [](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Element::Residue>) {
          return p == 0;
        } else if constexpr (std::is_same_v<T, Rational>) {
          return p.is_zero();
        } else if constexpr (std::is_same_v<T, Element::Entries>) {
          return std::all_of(p.begin(), p.end(), [](const Element& x) { return is_zero(x); });
        } else {
          return p.empty();
        }
      },
      a.payload());
}

inline Element add(const Element& a, const Element& b) {
  detail::require_same_ring(a, b, "add");
  const Ring& r = a.ring();
  switch (r.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
      // Residues are < m <= INT64_MAX, so a sum of two fits after widening.
      return Element(r, static_cast<std::int64_t>((static_cast<__int128>(a.residue()) + b.residue()) % r.modulus()));
    case RingKind::Rationals:
      return Element(r, a.rational() + b.rational());
    case RingKind::MatrixRing: {
      Element::Entries e;
      e.reserve(a.entries().size());
      for (std::size_t i = 0; i < a.entries().size(); ++i) e.push_back(add(a.entries()[i], b.entries()[i]));
      return Element(r, std::move(e));
    }
    case RingKind::Jacobson: {
      Element::Terms t = a.terms();
      t.insert(t.end(), b.terms().begin(), b.terms().end());
      return Element(r, std::move(t));
    }
  }
  throw Error("unreachable ring kind");
}

inline Element neg(const Element& a) {
  const Ring& r = a.ring();
  switch (r.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
      return Element(r, a.residue() == 0 ? 0 : r.modulus() - a.residue());
    case RingKind::Rationals:
      return Element(r, -a.rational());
    case RingKind::MatrixRing: {
      Element::Entries e;
      e.reserve(a.entries().size());
      for (const auto& x : a.entries()) e.push_back(neg(x));
      return Element(r, std::move(e));
    }
    case RingKind::Jacobson: {
      Element::Terms t;
      t.reserve(a.terms().size());
      for (const auto& term : a.terms()) t.push_back(JacobsonTerm{term.y_degree, term.x_degree, neg(term.coeff)});
      return Element(r, std::move(t));
    }
  }
  throw Error("unreachable ring kind");
}

inline Element mul(const Element& a, const Element& b) {
  detail::require_same_ring(a, b, "mul");
  const Ring& r = a.ring();
  switch (r.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
      return Element(r, detail::mod_mul(a.residue(), b.residue(), r.modulus()));
    case RingKind::Rationals:
      return Element(r, a.rational() * b.rational());
    case RingKind::MatrixRing: {
      const std::size_t k = r.dim();
      const Ring base = r.base();
      Element::Entries e;
      e.reserve(k * k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          Element s = zero(base);
          for (std::size_t t = 0; t < k; ++t) s = add(s, mul(a.at(i, t), b.at(t, j)));
          e.push_back(std::move(s));
        }
      }
      return Element(r, std::move(e));
    }
    case RingKind::Jacobson: {
      // (y^a x^b)(y^c x^d) = y^a x^(b-c+d)  if b >= c
      //                    = y^(a+c-b) x^d  otherwise
      Element::Terms t;
      t.reserve(a.terms().size() * b.terms().size());
      for (const auto& p : a.terms()) {
        for (const auto& q : b.terms()) {
          const bool cancel = p.x_degree >= q.y_degree;
          const std::uint64_t i = cancel ? p.y_degree : p.y_degree + q.y_degree - p.x_degree;
          const std::uint64_t j = cancel ? p.x_degree - q.y_degree + q.x_degree : q.x_degree;
          t.push_back(JacobsonTerm{i, j, mul(p.coeff, q.coeff)});
        }
      }
      return Element(r, std::move(t));
    }
  }
  throw Error("unreachable ring kind");
}

inline Element field_inverse(const Element& a) {
  const Ring& r = a.ring();
  if (!r.is_field()) throw NotAField("inverse requires a field, got " + r.to_string());
  if (is_zero(a)) throw Error("inverse of zero");
  if (r.kind() == RingKind::Rationals) return Element(r, a.rational().inverse());
  // Extended Euclid on (a, p).
  std::int64_t t0 = 0, t1 = 1, r0 = r.modulus(), r1 = a.residue();
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
  }
  return Element(r, t0);
}

inline std::string format_element(const Element& a, bool json) {
  const Ring& r = a.ring();
  switch (r.kind()) {
    case RingKind::IntegersMod:
    case RingKind::PrimeField:
      return std::to_string(a.residue());
    case RingKind::Rationals: {
      const std::string s = a.rational().to_string();
      return (json && a.rational().den() != 1) ? "\"" + s + "\"" : s;
    }
    case RingKind::MatrixRing: {
      const std::size_t k = r.dim();
      std::string out = "[";
      for (std::size_t i = 0; i < k; ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < k; ++j) {
          if (j) out += ", ";
          out += format_element(a.at(i, j), json);
        }
        out += "]";
      }
      return out + "]";
    }
    case RingKind::Jacobson: {
      std::string out = "[";
      bool first = true;
      for (const auto& t : a.terms()) {
        if (!first) out += ", ";
        first = false;
        out += "[" + std::to_string(t.y_degree) + ", " + std::to_string(t.x_degree) + ", " + format_element(t.coeff, json) + "]";
      }
      return out + "]";
    }
  }
  return {};
}

}  // namespace ringnet
