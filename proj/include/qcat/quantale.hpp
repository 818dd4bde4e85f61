#pragma once

/**
 * @file quantale.hpp
 * @brief Finite lattices and finite commutative quantales.
 *
 * A Quantale is validated once, after which every derived table (join, meet,
 * residuation) is fixed; the rest of the library only reads tables.
 *
 * On a finite lattice complete distributivity coincides with binary
 * distributivity, so `Lattice::distributivity_violation` is the whole test.
 * Likewise preservation of non-empty joins by [v,-] reduces to binary joins.
 */

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcat/core.hpp"

namespace qcat {

class Lattice {
 public:
  using Index = std::size_t;

  /// Validates `leq` (row-major, n×n) as a lattice order on `tokens`.
  static Lattice validate(std::string name, std::vector<std::string> tokens, Square<char> leq) {
    Lattice l;
    l.name_ = std::move(name);
    l.tokens_ = std::move(tokens);
    l.leq_ = std::move(leq);
    const std::size_t n = l.tokens_.size();
    if (n == 0) throw Error(ErrorKind::InvalidInput, "carrier must be non-empty");
    if (l.leq_.size() != n) throw Error(ErrorKind::DimensionMismatch, "order table does not match carrier size");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (l.tokens_[i] == l.tokens_[j])
          throw Error(ErrorKind::InvalidInput, "duplicate token '" + l.tokens_[i] + "'", {l.tokens_[i]});

    const auto& t = l.tokens_;
    for (std::size_t a = 0; a < n; ++a)
      if (!l.leq_(a, a)) throw Error(ErrorKind::NotAPoset, "not reflexive at " + t[a], {t[a]});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && l.leq_(a, b) && l.leq_(b, a))
          throw Error(ErrorKind::NotAPoset, "not antisymmetric at (" + t[a] + ", " + t[b] + ")", {t[a], t[b]});
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (l.leq_(a, b) && l.leq_(b, c) && !l.leq_(a, c))
            throw Error(ErrorKind::NotAPoset,
                        "not transitive at (" + t[a] + ", " + t[b] + ", " + t[c] + ")", {t[a], t[b], t[c]});

    l.join_ = Square<Index>(n, 0);
    l.meet_ = Square<Index>(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto lub = l.extremal_bound(a, b, true);
        auto glb = l.extremal_bound(a, b, false);
        if (!lub || !glb)
          throw Error(ErrorKind::NotALattice,
                      std::string("no ") + (lub ? "greatest lower" : "least upper") + " bound for (" + t[a] +
                          ", " + t[b] + ")",
                      {t[a], t[b]});
        l.join_(a, b) = *lub;
        l.meet_(a, b) = *glb;
      }
    }
    l.bot_ = 0;
    l.top_ = 0;
    for (std::size_t a = 1; a < n; ++a) {
      l.bot_ = l.meet_(l.bot_, a);
      l.top_ = l.join_(l.top_, a);
    }
    for (std::size_t a = 0; a < n; ++a) l.index_.emplace(l.tokens_[a], a);
    return l;
  }

  /// The lattice of a chain 0 < 1 < ... < n-1 with the given tokens.
  static Lattice chain(std::string name, std::vector<std::string> tokens) {
    const std::size_t n = tokens.size();
    Square<char> leq(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) leq(i, j) = 1;
    return validate(std::move(name), std::move(tokens), std::move(leq));
  }

  std::size_t size() const noexcept { return tokens_.size(); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::string& token(Index i) const { return tokens_.at(i); }
  std::optional<Index> find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool leq(Index a, Index b) const { return leq_(a, b) != 0; }
  Index join(Index a, Index b) const { return join_(a, b); }
  Index meet(Index a, Index b) const { return meet_(a, b); }
  Index bot() const noexcept { return bot_; }
  Index top() const noexcept { return top_; }
  const Square<char>& order() const noexcept { return leq_; }

  Lattice with_name(std::string name) const {
    Lattice l = *this;
    l.name_ = std::move(name);
    return l;
  }

  /// First triple (x, y, z) in index order with x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z).
  std::optional<std::array<Index, 3>> distributivity_violation() const {
    const std::size_t n = size();
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index z = 0; z < n; ++z)
          if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return std::array<Index, 3>{x, y, z};
    return std::nullopt;
  }

  /// Cover pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<Index, Index>> covers() const {
    std::vector<std::pair<Index, Index>> out;
    const std::size_t n = size();
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        if (a == b || !leq(a, b)) continue;
        bool cover = true;
        for (Index c = 0; c < n && cover; ++c)
          if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
        if (cover) out.emplace_back(a, b);
      }
    return out;
  }

  friend bool operator==(const Lattice& x, const Lattice& y) {
    return x.tokens_ == y.tokens_ && x.leq_ == y.leq_;
  }

 private:
  std::optional<Index> extremal_bound(Index a, Index b, bool upper) const {
    const std::size_t n = size();
    std::optional<Index> best;
    for (Index c = 0; c < n; ++c) {
      bool bound = upper ? (leq(a, c) && leq(b, c)) : (leq(c, a) && leq(c, b));
      if (!bound) continue;
      if (!best || (upper ? leq(c, *best) : leq(*best, c))) best = c;
    }
    if (!best) return std::nullopt;
    for (Index c = 0; c < n; ++c) {
      bool bound = upper ? (leq(a, c) && leq(b, c)) : (leq(c, a) && leq(c, b));
      if (bound && !(upper ? leq(*best, c) : leq(c, *best))) return std::nullopt;
    }
    return best;
  }

  std::string name_;
  std::vector<std::string> tokens_;
  Square<char> leq_;
  Square<Index> join_;
  Square<Index> meet_;
  Index bot_ = 0;
  Index top_ = 0;
  std::map<std::string, Index, std::less<>> index_;
};

/// Reflexive-transitive closure of a cover relation given as index pairs.
inline Square<char> order_from_covers(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> covers) {
  Square<char> leq(n, 0);
  for (std::size_t i = 0; i < n; ++i) leq(i, i) = 1;
  for (auto [a, b] : covers) leq(a, b) = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq(i, k))
        for (std::size_t j = 0; j < n; ++j)
          if (leq(k, j)) leq(i, j) = 1;
  return leq;
}

namespace detail {

/// First violated quantale axiom of (lattice, tensor, unit), if any.
inline std::optional<Error> tensor_violation(const Lattice& l, const Square<std::size_t>& t, std::size_t unit) {
  const std::size_t n = l.size();
  const auto& k = l.tokens();
  auto tok = [&](std::size_t i) { return k[i]; };
  if (t.size() != n) return Error(ErrorKind::DimensionMismatch, "tensor table does not match carrier size");
  if (unit >= n) return Error(ErrorKind::InvalidInput, "unit out of range");
  for (std::size_t c : t.cells())
    if (c >= n) return Error(ErrorKind::InvalidInput, "tensor entry out of range");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t(t(a, b), c) != t(a, t(b, c)))
          return Error(ErrorKind::TensorNotAssociative,
                       "(" + tok(a) + "*" + tok(b) + ")*" + tok(c) + " = " + tok(t(t(a, b), c)) + " but " + tok(a) +
                           "*(" + tok(b) + "*" + tok(c) + ") = " + tok(t(a, t(b, c))),
                       {tok(a), tok(b), tok(c)});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (t(a, b) != t(b, a))
        return Error(ErrorKind::TensorNotCommutative,
                     tok(a) + "*" + tok(b) + " = " + tok(t(a, b)) + " but " + tok(b) + "*" + tok(a) + " = " +
                         tok(t(b, a)),
                     {tok(a), tok(b)});
  for (std::size_t a = 0; a < n; ++a)
    if (t(unit, a) != a)
      return Error(ErrorKind::UnitLaw, tok(unit) + "*" + tok(a) + " = " + tok(t(unit, a)) + " != " + tok(a),
                   {tok(unit), tok(a)});
  for (std::size_t v = 0; v < n; ++v) {
    if (t(v, l.bot()) != l.bot())
      return Error(ErrorKind::TensorNotJoinPreserving,
                   tok(v) + "*" + tok(l.bot()) + " = " + tok(t(v, l.bot())) + " is not bottom", {tok(v), tok(l.bot())});
    for (std::size_t w1 = 0; w1 < n; ++w1)
      for (std::size_t w2 = 0; w2 < n; ++w2)
        if (t(v, l.join(w1, w2)) != l.join(t(v, w1), t(v, w2)))
          return Error(ErrorKind::TensorNotJoinPreserving,
                       tok(v) + "*(" + tok(w1) + " v " + tok(w2) + ") != (" + tok(v) + "*" + tok(w1) + ") v (" +
                           tok(v) + "*" + tok(w2) + ")",
                       {tok(v), tok(w1), tok(w2)});
  }
  return std::nullopt;
}

}  // namespace detail

/// Raw, unvalidated quantale description as read from text or built by hand.
struct QuantaleSpec {
  std::string name;
  std::vector<std::string> elements;
  Square<char> leq;
  Square<std::size_t> tensor;
  std::size_t unit = 0;
};

class Quantale {
 public:
  static Quantale validate(QuantaleSpec spec) {
    Lattice lattice = Lattice::validate(spec.name, spec.elements, spec.leq);
    return validate(std::move(lattice), std::move(spec.tensor), spec.unit);
  }

  static Quantale validate(Lattice lattice, Square<std::size_t> tensor, std::size_t unit) {
    if (auto err = detail::tensor_violation(lattice, tensor, unit)) throw *err;
    Quantale q;
    q.lattice_ = std::move(lattice);
    q.tensor_ = std::move(tensor);
    q.unit_ = unit;
    const std::size_t n = q.lattice_.size();
    q.resid_ = Square<std::size_t>(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t u = 0; u < n; ++u) {
        std::size_t best = q.lattice_.bot();
        for (std::size_t w = 0; w < n; ++w)
          if (q.lattice_.leq(q.tensor_(v, w), u)) best = q.lattice_.join(best, w);
        q.resid_(v, u) = best;
      }
    return q;
  }

  const Lattice& lattice() const noexcept { return lattice_; }
  const std::string& name() const noexcept { return lattice_.name(); }
  std::size_t size() const noexcept { return lattice_.size(); }
  const std::string& token(QElem v) const { return lattice_.token(v.index); }
  std::optional<QElem> find(std::string_view token) const {
    if (auto i = lattice_.find(token)) return qe(*i);
    return std::nullopt;
  }
  std::vector<QElem> elements() const {
    std::vector<QElem> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = qe(i);
    return out;
  }

  bool leq(QElem v, QElem w) const { return lattice_.leq(v.index, w.index); }
  QElem join(QElem v, QElem w) const { return qe(lattice_.join(v.index, w.index)); }
  QElem meet(QElem v, QElem w) const { return qe(lattice_.meet(v.index, w.index)); }
  QElem bot() const { return qe(lattice_.bot()); }
  QElem top() const { return qe(lattice_.top()); }
  QElem unit() const { return qe(unit_); }
  QElem tensor(QElem v, QElem w) const { return qe(tensor_(v.index, w.index)); }
  /// [v, u] = ⋁{w : v ⊗ w ≤ u}.
  QElem resid(QElem v, QElem u) const { return qe(resid_(v.index, u.index)); }

  QElem join_all(std::span<const QElem> xs) const {
    QElem acc = bot();
    for (QElem x : xs) acc = join(acc, x);
    return acc;
  }
  QElem meet_all(std::span<const QElem> xs) const {
    QElem acc = top();
    for (QElem x : xs) acc = meet(acc, x);
    return acc;
  }

  const Square<std::size_t>& tensor_table() const noexcept { return tensor_; }
  const Square<std::size_t>& resid_table() const noexcept { return resid_; }

  Quantale with_name(std::string name) const {
    Quantale q = *this;
    q.lattice_ = lattice_.with_name(std::move(name));
    return q;
  }

  QuantaleSpec spec() const { return {name(), lattice_.tokens(), lattice_.order(), tensor_, unit_}; }

  /// Same carrier tokens, order, tensor and unit (the name is not compared).
  friend bool operator==(const Quantale& a, const Quantale& b) {
    return a.lattice_ == b.lattice_ && a.tensor_ == b.tensor_ && a.unit_ == b.unit_;
  }

 private:
  Lattice lattice_;
  Square<std::size_t> tensor_;
  Square<std::size_t> resid_;
  std::size_t unit_ = 0;
};

using QuantalePtr = std::shared_ptr<const Quantale>;

inline QElem residuate(const Quantale& q, QElem v, QElem w) {
  if (v.index >= q.size() || w.index >= q.size())
    throw Error(ErrorKind::UnknownQuantaleElement, "element index out of range");
  return q.resid(v, w);
}

struct AssumptionReport {
  bool lattice_cd = true;
  std::optional<std::array<QElem, 3>> lattice_witness;  // (x, y, z) breaking distributivity
  bool powers_ok = true;
  std::optional<std::array<QElem, 3>> powers_witness;  // (v, w1, w2) with [v, w1 ∨ w2] ≠ [v,w1] ∨ [v,w2]

  bool holds() const { return lattice_cd && powers_ok; }
};

inline AssumptionReport check_assumptions(const Quantale& q) {
  AssumptionReport r;
  if (auto bad = q.lattice().distributivity_violation()) {
    r.lattice_cd = false;
    r.lattice_witness = {qe((*bad)[0]), qe((*bad)[1]), qe((*bad)[2])};
  }
  const auto xs = q.elements();
  for (QElem v : xs)
    for (QElem w1 : xs)
      for (QElem w2 : xs)
        if (r.powers_ok && q.resid(v, q.join(w1, w2)) != q.join(q.resid(v, w1), q.resid(v, w2))) {
          r.powers_ok = false;
          r.powers_witness = {v, w1, w2};
        }
  return r;
}

// ---------------------------------------------------------------------------
// Builtin structures
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"two", "heyting3", "sugihara3", "lukasiewicz3", "m3", "n5"};
  return names;
}

namespace detail {

template <class F>
Square<std::size_t> table(std::size_t n, F&& f) {
  Square<std::size_t> t(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = f(i, j);
  return t;
}

// m3 and n5 share the carrier order bot, e, a, b, top.
inline Quantale idempotent_five(const std::string& name, bool pentagon) {
  enum : std::size_t { B = 0, E = 1, A = 2, Bb = 3, T = 4 };
  std::vector<std::pair<std::size_t, std::size_t>> cov;
  if (pentagon)
    cov = {{B, E}, {B, A}, {A, Bb}, {E, T}, {Bb, T}};
  else
    cov = {{B, E}, {B, A}, {B, Bb}, {E, T}, {A, T}, {Bb, T}};
  Lattice l = Lattice::validate(name, {"bot", "e", "a", "b", "top"}, order_from_covers(5, cov));
  auto t = table(5, [&](std::size_t x, std::size_t y) -> std::size_t {
    if (x == B || y == B) return B;
    if (x == E) return y;
    if (y == E) return x;
    if (x == y) return x;
    if (x == T) return y;
    if (y == T) return x;
    // {a, b}
    return pentagon ? std::size_t{A} : std::size_t{B};
  });
  return Quantale::validate(std::move(l), std::move(t), E);
}

}  // namespace detail

inline Quantale builtin(std::string_view name) {
  using detail::table;
  if (name == "two") {
    auto l = Lattice::chain("two", {"0", "1"});
    return Quantale::validate(l, table(2, [&](auto a, auto b) { return l.meet(a, b); }), 1);
  }
  if (name == "heyting3") {
    auto l = Lattice::chain("heyting3", {"0", "1/2", "1"});
    return Quantale::validate(l, table(3, [&](auto a, auto b) { return l.meet(a, b); }), 2);
  }
  if (name == "sugihara3") {
    // unit 1/2; 1 ⊗ 1/2 = 1, idempotent
    auto l = Lattice::chain("sugihara3", {"0", "1/2", "1"});
    return Quantale::validate(l, table(3, [](std::size_t a, std::size_t b) -> std::size_t {
                                if (a == 0 || b == 0) return 0;
                                return std::max(a, b);
                              }),
                              1);
  }
  if (name == "lukasiewicz3") {
    // max(0, v + w - 1) with carrier 0, 1/2, 1 indexed as 0, 1, 2 halves
    auto l = Lattice::chain("lukasiewicz3", {"0", "1/2", "1"});
    return Quantale::validate(l, table(3, [](std::size_t a, std::size_t b) -> std::size_t {
                                return a + b >= 2 ? a + b - 2 : 0;
                              }),
                              2);
  }
  if (name == "m3") return detail::idempotent_five("m3", false);
  if (name == "n5") return detail::idempotent_five("n5", true);
  throw Error(ErrorKind::UnknownBuiltin, "unknown builtin '" + std::string(name) + "'", {std::string(name)});
}

inline QuantalePtr builtin_ptr(std::string_view name) { return std::make_shared<const Quantale>(builtin(name)); }

// ---------------------------------------------------------------------------
// Enumeration of quantale structures on a lattice
// ---------------------------------------------------------------------------

/**
 * All commutative, associative, unital, join-preserving tensors on `lattice`,
 * sorted lexicographically by (tensor table, unit).
 *
 * The search fixes the unit row and the bottom row, then backtracks over the
 * remaining unordered pairs with monotonicity pruning. `cap` bounds the raw
 * search space Σ_unit n^(free pairs); larger lattices raise SizeLimitExceeded.
 */
inline std::vector<Quantale> enumerate_quantales(const Lattice& lattice, std::uint64_t cap = 10'000'000) {
  const std::size_t n = lattice.size();
  const std::size_t bot = lattice.bot();

  // estimate
  std::uint64_t space = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (u == bot && n > 1) continue;
    std::size_t free = n - (u == bot ? 1 : 2);
    std::size_t pairs = free * (free + 1) / 2;
    std::uint64_t s = 1;
    for (std::size_t p = 0; p < pairs && s <= cap; ++p) s *= n;
    space += s;
    if (space > cap) break;
  }
  if (space > cap)
    throw Error(ErrorKind::SizeLimitExceeded,
                "tensor search space exceeds cap " + std::to_string(cap) + " on a " + std::to_string(n) +
                    "-element lattice");

  std::vector<Quantale> found;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  for (std::size_t u = 0; u < n; ++u) {
    if (u == bot && n > 1) continue;
    Square<std::size_t> t(n, kUnset);
    bool clash = false;
    auto fix = [&](std::size_t a, std::size_t b, std::size_t v) {
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        if (t(x, y) != kUnset && t(x, y) != v) clash = true;
        t(x, y) = v;
      }
    };
    for (std::size_t a = 0; a < n; ++a) fix(bot, a, bot);
    for (std::size_t a = 0; a < n; ++a) fix(u, a, a);
    if (clash) continue;

    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b)
        if (t(a, b) == kUnset) slots.emplace_back(a, b);

    auto monotone_ok = [&](std::size_t a, std::size_t b, std::size_t v) {
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
          std::size_t w = t(p, q);
          if (w == kUnset) continue;
          if (lattice.leq(p, a) && lattice.leq(q, b) && !lattice.leq(w, v)) return false;
          if (lattice.leq(a, p) && lattice.leq(b, q) && !lattice.leq(v, w)) return false;
        }
      return true;
    };

    auto recurse = [&](auto&& self, std::size_t k) -> void {
      if (k == slots.size()) {
        if (!detail::tensor_violation(lattice, t, u)) found.push_back(Quantale::validate(lattice, t, u));
        return;
      }
      auto [a, b] = slots[k];
      for (std::size_t v = 0; v < n; ++v) {
        if (!monotone_ok(a, b, v)) continue;
        t(a, b) = v;
        t(b, a) = v;
        self(self, k + 1);
        t(a, b) = kUnset;
        t(b, a) = kUnset;
      }
    };
    recurse(recurse, 0);
  }

  std::sort(found.begin(), found.end(), [](const Quantale& x, const Quantale& y) {
    if (x.tensor_table().cells() != y.tensor_table().cells())
      return x.tensor_table().cells() < y.tensor_table().cells();
    return x.unit() < y.unit();
  });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (std::size_t i = 0; i < found.size(); ++i)
    found[i] = found[i].with_name(lattice.name() + "#" + std::to_string(i));
  return found;
}

}  // namespace qcat
