#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include "ringnet/error.hpp"

namespace ringnet {

enum class RingKind { IntegersMod, PrimeField, Rationals, MatrixRing, Jacobson };

/// Deterministic trial division; ring specs only ever carry small moduli.
constexpr bool is_prime(std::int64_t p) noexcept {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::int64_t d = 3; d <= p / d; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Descriptor of one ring in the closed tower
///   Z<m> | GF<p> | Q | M<k>(R) | J(F)
/// where J(F) = F<x,y>/(xy - 1) over a field F.
///
/// Rings are cheap immutable handles; copies share the descriptor tree.
/// Equality is structural.
class Ring {
 public:
  static Ring integers_mod(std::int64_t m) {
    if (m < 2) throw ParseError("Z<m> requires m >= 2, got " + std::to_string(m));
    return Ring(Node{RingKind::IntegersMod, m, 0, nullptr});
  }

  static Ring prime_field(std::int64_t p) {
    if (!is_prime(p)) throw ParseError("GF<p> requires a prime, got " + std::to_string(p));
    return Ring(Node{RingKind::PrimeField, p, 0, nullptr});
  }

  static Ring rationals() { return Ring(Node{RingKind::Rationals, 0, 0, nullptr}); }

  static Ring matrix_ring(std::size_t k, const Ring& base) {
    if (k < 1) throw ParseError("M<k>(R) requires k >= 1");
    return Ring(Node{RingKind::MatrixRing, 0, k, base.node_});
  }

  static Ring jacobson(const Ring& base) {
    if (!base.is_field()) throw ParseError("J(F) requires a field base (GF<p> or Q), got " + base.to_string());
    return Ring(Node{RingKind::Jacobson, 0, 0, base.node_});
  }

  RingKind kind() const noexcept { return node_->kind; }

  /// Modulus of Z<m> or characteristic of GF<p>.
  std::int64_t modulus() const noexcept { return node_->modulus; }

  /// Matrix size k of M<k>(R).
  std::size_t dim() const noexcept { return node_->dim; }

  /// Base ring of M<k>(R) or J(F).
  Ring base() const { return Ring(node_->base); }

  bool is_residue() const noexcept {
    return kind() == RingKind::IntegersMod || kind() == RingKind::PrimeField;
  }

  bool is_field() const noexcept { return kind() == RingKind::PrimeField || kind() == RingKind::Rationals; }

  bool is_finite() const noexcept {
    switch (kind()) {
      case RingKind::IntegersMod:
      case RingKind::PrimeField:
        return true;
      case RingKind::MatrixRing:
        return base().is_finite();
      default:
        return false;
    }
  }

  /// Number of elements. Saturates at UINT64_MAX for towers too large to count.
  std::uint64_t cardinality() const {
    switch (kind()) {
      case RingKind::IntegersMod:
      case RingKind::PrimeField:
        return static_cast<std::uint64_t>(modulus());
      case RingKind::MatrixRing: {
        const std::uint64_t b = base().cardinality();
        return saturating_pow(b, dim() * dim());
      }
      default:
        throw InfiniteRing("ring " + to_string() + " is infinite");
    }
  }

  std::string to_string() const {
    switch (kind()) {
      case RingKind::IntegersMod:
        return "Z" + std::to_string(modulus());
      case RingKind::PrimeField:
        return "GF" + std::to_string(modulus());
      case RingKind::Rationals:
        return "Q";
      case RingKind::MatrixRing:
        return "M" + std::to_string(dim()) + "(" + base().to_string() + ")";
      case RingKind::Jacobson:
        return "J(" + base().to_string() + ")";
    }
    return {};
  }

  friend bool operator==(const Ring& a, const Ring& b) noexcept {
    return a.node_ == b.node_ || same(*a.node_, *b.node_);
  }

  static std::uint64_t saturating_pow(std::uint64_t b, std::size_t e) noexcept {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
      if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      r *= b;
    }
    return r;
  }

 private:
  struct Node {
    RingKind kind;
    std::int64_t modulus;
    std::size_t dim;
    std::shared_ptr<const Node> base;
  };

  explicit Ring(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  explicit Ring(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool same(const Node& a, const Node& b) noexcept {
    if (a.kind != b.kind || a.modulus != b.modulus || a.dim != b.dim) return false;
    if (!a.base || !b.base) return a.base == b.base;
    return a.base == b.base || same(*a.base, *b.base);
  }

  std::shared_ptr<const Node> node_;
};

inline std::string format_ring(const Ring& r) { return r.to_string(); }

namespace detail {

class RingSpecParser {
 public:
  explicit RingSpecParser(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }
  }

  Ring parse() {
    Ring r = ring();
    if (pos_ != text_.size()) fail("trailing characters");
    return r;
  }

 private:
  Ring ring() {
    if (eat("GF")) return Ring::prime_field(number());
    if (eat("Z")) return Ring::integers_mod(number());
    if (eat("Q")) return Ring::rationals();
    if (eat("M")) {
      const std::int64_t k = number();
      if (k < 1) throw ParseError("M<k>(R) requires k >= 1, got " + std::to_string(k));
      expect('(');
      Ring base = ring();
      expect(')');
      return Ring::matrix_ring(static_cast<std::size_t>(k), base);
    }
    if (eat("J")) {
      expect('(');
      Ring base = ring();
      expect(')');
      return Ring::jacobson(base);
    }
    fail("expected one of Z, GF, Q, M, J");
  }

  std::int64_t number() {
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const int d = text_[pos_] - '0';
      if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail("expected digits");
    return v;
  }

  bool eat(std::string_view tok) {
    if (text_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("bad ring spec '" + text_ + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `Z<m>`, `GF<p>`, `Q`, `M<k>(<spec>)` or `J(<field spec>)`.
/// Whitespace is ignored; keywords are case-sensitive.
inline Ring parse_ring(std::string_view spec) { return detail::RingSpecParser(spec).parse(); }

}  // namespace ringnet
