#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringnet/element.hpp"
#include "ringnet/error.hpp"
#include "ringnet/rings.hpp"

namespace ringnet {

namespace detail {

inline void require_finite(const Ring& r, std::uint64_t cap) {
  if (!r.is_finite()) throw InfiniteRing("infinite ring " + r.to_string() + " cannot be enumerated");
  const std::uint64_t n = r.cardinality();
  if (n > cap) throw BudgetExceeded("ring " + r.to_string() + " is too large to enumerate", n, cap);
}

}  // namespace detail

/// Element with the given position in enumeration order of a finite ring.
/// Residues ascend; matrices are ordered lexicographically by their
/// row-major entries, first entry most significant.
inline Element element_at(const Ring& r, std::uint64_t index) {
  if (r.is_residue()) return Element(r, static_cast<std::int64_t>(index));
  if (r.kind() != RingKind::MatrixRing || !r.is_finite()) throw InfiniteRing("no enumeration for " + r.to_string());
  const Ring base = r.base();
  const std::uint64_t radix = base.cardinality();
  const std::size_t cells = r.dim() * r.dim();
  Element::Entries e(cells, zero(base));
  for (std::size_t c = cells; c-- > 0;) {
    e[c] = element_at(base, index % radix);
    index /= radix;
  }
  return Element(r, std::move(e));
}

/// Inverse of element_at.
inline std::uint64_t index_of(const Element& a) {
  const Ring& r = a.ring();
  if (r.is_residue()) return static_cast<std::uint64_t>(a.residue());
  if (r.kind() != RingKind::MatrixRing || !r.is_finite()) throw InfiniteRing("no enumeration for " + r.to_string());
  const std::uint64_t radix = r.base().cardinality();
  std::uint64_t index = 0;
  for (const auto& x : a.entries()) index = index * radix + index_of(x);
  return index;
}

/// Every element of a finite ring exactly once, in deterministic order.
inline std::vector<Element> enumerate(const Ring& r, std::uint64_t cap) {
  detail::require_finite(r, cap);
  const std::uint64_t n = r.cardinality();
  std::vector<Element> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(r, i));
  return out;
}

/// Dense addition and multiplication tables of a finite ring, indexed by
/// enumeration position. Search and the nine-condition battery run on
/// these instead of on boxed Elements.
class FiniteRingTable {
 public:
  using Index = std::uint32_t;

  static constexpr std::uint64_t kDefaultCap = 2048;

  explicit FiniteRingTable(const Ring& r, std::uint64_t cap = kDefaultCap) : ring_(r), elements_(enumerate(r, cap)) {
    const std::size_t n = elements_.size();
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      neg_[a] = static_cast<Index>(index_of(ringnet::neg(elements_[a])));
      for (std::size_t b = 0; b < n; ++b) {
        add_[a * n + b] = static_cast<Index>(index_of(ringnet::add(elements_[a], elements_[b])));
        mul_[a * n + b] = static_cast<Index>(index_of(ringnet::mul(elements_[a], elements_[b])));
      }
    }
    zero_ = static_cast<Index>(index_of(ringnet::zero(r)));
    one_ = static_cast<Index>(index_of(ringnet::one(r)));
  }

  const Ring& ring() const noexcept { return ring_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Element& element(Index i) const { return elements_[i]; }
  const std::vector<Element>& elements() const noexcept { return elements_; }

  Index add(Index a, Index b) const noexcept { return add_[a * elements_.size() + b]; }
  Index mul(Index a, Index b) const noexcept { return mul_[a * elements_.size() + b]; }
  Index neg(Index a) const noexcept { return neg_[a]; }
  Index zero() const noexcept { return zero_; }
  Index one() const noexcept { return one_; }

 private:
  Ring ring_;
  std::vector<Element> elements_;
  std::vector<Index> add_;
  std::vector<Index> mul_;
  std::vector<Index> neg_;
  Index zero_ = 0;
  Index one_ = 0;
};

// ---------------------------------------------------------------------------
// One-sided inverses

/// {z : z * a = 1}
inline std::vector<Element> left_inverses(const Element& a, std::uint64_t cap) {
  std::vector<Element> out;
  const Element u = one(a.ring());
  for (auto& z : enumerate(a.ring(), cap)) {
    if (mul(z, a) == u) out.push_back(std::move(z));
  }
  return out;
}

/// {y : a * y = 1}
inline std::vector<Element> right_inverses(const Element& a, std::uint64_t cap) {
  std::vector<Element> out;
  const Element u = one(a.ring());
  for (auto& y : enumerate(a.ring(), cap)) {
    if (mul(a, y) == u) out.push_back(std::move(y));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nine-condition battery

struct ConditionVerdict {
  int number = 0;
  std::string statement;
  bool holds = true;
  /// Bound variables of the first counterexample, in the order they appear
  /// in the statement (x, y, z), when the condition fails.
  std::vector<Element> counterexample;
};

struct BatteryReport {
  Ring ring;
  std::array<ConditionVerdict, 9> conditions;

  bool all_hold() const {
    for (const auto& c : conditions) {
      if (!c.holds) return false;
    }
    return true;
  }
  bool all_agree() const {
    for (const auto& c : conditions) {
      if (c.holds != conditions[0].holds) return false;
    }
    return true;
  }
};

inline const std::array<const char*, 9>& battery_statements() {
  static const std::array<const char*, 9> s = {
      "forall x,y: xy=1 -> yx=1",
      "forall x: (exists y: xy=1) -> (exists z: zx=1)",
      "forall x,y,z: (xy=1 and xz=0) -> z=0",
      "forall x,y,z: (xy=1 and xz=1) -> y=z",
      "forall x,y: yx=1 -> exists z: xz=zx=1",
      "forall x: (exists y: yx=1) -> (exists z: xz=1)",
      "forall x,y,z: (yx=1 and zx=0) -> z=0",
      "forall x,y,z: (yx=1 and zx=1) -> y=z",
      "forall x,y: xy=1 -> exists z: xz=zx=1",
  };
  return s;
}

/// Evaluates all nine equivalent forms of Dedekind finiteness by exhaustive
/// quantification over a finite ring. Each condition keeps its first
/// counterexample in enumeration order.
inline BatteryReport theorem1_battery(const Ring& r, std::uint64_t cap = FiniteRingTable::kDefaultCap) {
  const FiniteRingTable t(r, cap);
  using I = FiniteRingTable::Index;
  const std::size_t n = t.size();

  BatteryReport rep{r, {}};
  for (int c = 0; c < 9; ++c) {
    rep.conditions[c].number = c + 1;
    rep.conditions[c].statement = battery_statements()[c];
  }
  auto fail = [&](int c, std::initializer_list<I> witness) {
    auto& v = rep.conditions[c - 1];
    if (!v.holds) return;
    v.holds = false;
    for (I w : witness) v.counterexample.push_back(t.element(w));
  };

  std::vector<I> right, left, right_ann, left_ann;
  for (I x = 0; x < n; ++x) {
    right.clear();
    left.clear();
    right_ann.clear();
    left_ann.clear();
    for (I y = 0; y < n; ++y) {
      if (t.mul(x, y) == t.one()) right.push_back(y);
      if (t.mul(y, x) == t.one()) left.push_back(y);
      if (y != t.zero() && t.mul(x, y) == t.zero()) right_ann.push_back(y);
      if (y != t.zero() && t.mul(y, x) == t.zero()) left_ann.push_back(y);
    }
    std::optional<I> two_sided;
    for (I y : right) {
      if (t.mul(y, x) == t.one()) {
        two_sided = y;
        break;
      }
    }

    for (I y : right) {
      if (t.mul(y, x) != t.one()) {
        fail(1, {x, y});
        break;
      }
    }
    if (!right.empty() && left.empty()) fail(2, {x, right.front()});
    if (!right.empty() && !right_ann.empty()) fail(3, {x, right.front(), right_ann.front()});
    if (right.size() >= 2) fail(4, {x, right[0], right[1]});
    if (!left.empty() && !two_sided) fail(5, {x, left.front()});
    if (!left.empty() && right.empty()) fail(6, {x, left.front()});
    if (!left.empty() && !left_ann.empty()) fail(7, {x, left.front(), left_ann.front()});
    if (left.size() >= 2) fail(8, {x, left[0], left[1]});
    if (!right.empty() && !two_sided) fail(9, {x, right.front()});
  }
  return rep;
}

/// forall x,y: xy = 1 -> yx = 1, by exhaustive check.
inline bool is_dedekind_finite(const Ring& r, std::uint64_t cap = FiniteRingTable::kDefaultCap) {
  const auto elems = enumerate(r, cap);
  const Element u = one(r);
  for (const auto& x : elems) {
    for (const auto& y : elems) {
      if (mul(x, y) == u && !(mul(y, x) == u)) return false;
    }
  }
  return true;
}

/// R is k-stable when M_k(R) is Dedekind finite. `cap` bounds the number of
/// ordered pairs (x, y) of M_k(R) the check quantifies over.
inline bool is_k_stable(const Ring& r, std::size_t k, std::uint64_t cap) {
  const Ring mk = Ring::matrix_ring(k, r);
  if (!mk.is_finite()) throw InfiniteRing("M" + std::to_string(k) + "(" + r.to_string() + ") is infinite");
  const std::uint64_t n = mk.cardinality();
  const std::uint64_t pairs = Ring::saturating_pow(n, 2);
  if (pairs > cap) throw BudgetExceeded("k-stability check over " + mk.to_string(), pairs, cap);
  return is_dedekind_finite(mk, n);
}

// ---------------------------------------------------------------------------
// Witnesses for infinite rings

/// True iff xy = 1, xz = 0 and z != 0: a certificate that the capacity
/// condition fails, so the ring is not Dedekind finite.
inline bool check_capacity_violation_witness(const Element& x, const Element& y, const Element& z) {
  detail::require_same_ring(x, y, "capacity witness");
  detail::require_same_ring(x, z, "capacity witness");
  return is_one(mul(x, y)) && is_zero(mul(x, z)) && !is_zero(z);
}

/// True iff d1 r1 = d2 r2 = 1 and d1 r2 = d2 r1 = 0: two messages packed
/// losslessly through one channel.
inline bool check_star_star_witness(const Element& r1, const Element& r2, const Element& d1, const Element& d2) {
  detail::require_same_ring(r1, r2, "packing witness");
  detail::require_same_ring(r1, d1, "packing witness");
  detail::require_same_ring(r1, d2, "packing witness");
  return is_one(mul(d1, r1)) && is_one(mul(d2, r2)) && is_zero(mul(d1, r2)) && is_zero(mul(d2, r1));
}

}  // namespace ringnet
