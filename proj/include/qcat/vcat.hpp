#pragma once

/**
 * @file vcat.hpp
 * @brief Finite Ω-categories: validation, induced order, standard constructions.
 */

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcat/core.hpp"
#include "qcat/quantale.hpp"

namespace qcat {

class VCat {
 public:
  /// Checks e ≤ hom(a,a) and hom(a,b) ⊗ hom(b,c) ≤ hom(a,c); reports the first failure.
  static VCat validate(QuantalePtr q, std::string name, std::vector<std::string> names, Square<QElem> hom) {
    if (!q) throw Error(ErrorKind::InvalidInput, "category has no quantale");
    const std::size_t m = names.size();
    if (hom.size() != m) throw Error(ErrorKind::DimensionMismatch, "hom table does not match object count");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (names[i] == names[j]) throw Error(ErrorKind::InvalidInput, "duplicate object '" + names[i] + "'", {names[i]});
    for (QElem v : hom.cells())
      if (v.index >= q->size())
        throw Error(ErrorKind::UnknownQuantaleElement, "hom entry outside quantale " + q->name());
    for (std::size_t a = 0; a < m; ++a)
      if (!q->leq(q->unit(), hom(a, a)))
        throw Error(ErrorKind::ReflexivityViolation, "e not below hom(" + names[a] + ", " + names[a] + ")", {names[a]});
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c)
          if (!q->leq(q->tensor(hom(a, b), hom(b, c)), hom(a, c)))
            throw Error(ErrorKind::TransitivityViolation,
                        "hom(" + names[a] + "," + names[b] + ") * hom(" + names[b] + "," + names[c] +
                            ") not below hom(" + names[a] + "," + names[c] + ")",
                        {names[a], names[b], names[c]});
    VCat cat;
    cat.q_ = std::move(q);
    cat.name_ = std::move(name);
    cat.names_ = std::move(names);
    cat.hom_ = std::move(hom);
    for (std::size_t a = 0; a < m; ++a) cat.index_.emplace(cat.names_[a], a);
    return cat;
  }

  const Quantale& quantale() const noexcept { return *q_; }
  const QuantalePtr& quantale_ptr() const noexcept { return q_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& object_name(ObjId a) const { return names_.at(a.index); }
  std::optional<ObjId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return obj(it->second);
  }
  std::vector<ObjId> objects() const {
    std::vector<ObjId> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = obj(i);
    return out;
  }

  QElem hom(ObjId a, ObjId b) const { return hom_(a.index, b.index); }
  const Square<QElem>& hom_table() const noexcept { return hom_; }

  VCat with_name(std::string name) const {
    VCat c = *this;
    c.name_ = std::move(name);
    return c;
  }

  /// Equal quantale tables, object names and homs (category names are ignored).
  friend bool operator==(const VCat& x, const VCat& y) {
    return *x.q_ == *y.q_ && x.names_ == y.names_ && x.hom_ == y.hom_;
  }

 private:
  QuantalePtr q_;
  std::string name_;
  std::vector<std::string> names_;
  Square<QElem> hom_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

using VCatPtr = std::shared_ptr<const VCat>;

inline std::vector<std::string> numbered_names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = prefix + std::to_string(i);
  return out;
}

/// Ω as a category over itself: hom(v, w) = [v, w]; objects named by element tokens.
inline VCat omega_self(QuantalePtr q) {
  const std::size_t n = q->size();
  Square<QElem> hom(n, QElem{});
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) hom(v, w) = q->resid(qe(v), qe(w));
  auto names = q->lattice().tokens();
  auto name = q->name();
  return VCat::validate(std::move(q), std::move(name), std::move(names), std::move(hom));
}

/// hom(a,a) = e and ⊥ elsewhere.
inline VCat discrete(QuantalePtr q, std::size_t n) {
  Square<QElem> hom(n, q->bot());
  for (std::size_t a = 0; a < n; ++a) hom(a, a) = q->unit();
  return VCat::validate(q, "d" + std::to_string(n), numbered_names("x", n), std::move(hom));
}

/// hom(a,b) = e when a ≤ b in `leq`, ⊥ otherwise. `leq` must be a preorder.
inline VCat from_order(QuantalePtr q, std::string name, std::vector<std::string> names, const Square<char>& leq) {
  const std::size_t n = names.size();
  Square<QElem> hom(n, q->bot());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (leq(a, b)) hom(a, b) = q->unit();
  return VCat::validate(std::move(q), std::move(name), std::move(names), std::move(hom));
}

/// The chain 0 < 1 < ... < n-1 with homs e (forwards) and ⊥ (backwards).
inline VCat chain(QuantalePtr q, std::size_t n) {
  Square<char> leq(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) leq(a, b) = 1;
  return from_order(std::move(q), "chain" + std::to_string(n), numbered_names("c", n), leq);
}

inline VCat opposite(const VCat& a) {
  const std::size_t m = a.size();
  Square<QElem> hom(m, QElem{});
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) hom(x, y) = a.hom_table()(y, x);
  return VCat::validate(a.quantale_ptr(), a.name() + "^op", a.names(), std::move(hom));
}

struct OrderAnalysis {
  Square<char> leq;  // leq(a,b) = (e ≤ hom(a,b))
  bool skeletal = true;
  std::optional<std::pair<ObjId, ObjId>> witness;  // distinct a ≤ b ≤ a

  bool le(ObjId a, ObjId b) const { return leq(a.index, b.index) != 0; }
};

inline OrderAnalysis analyze_order(const VCat& a) {
  const auto& q = a.quantale();
  const std::size_t m = a.size();
  OrderAnalysis out{Square<char>(m, 0), true, std::nullopt};
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) out.leq(x, y) = q.leq(q.unit(), a.hom(obj(x), obj(y))) ? 1 : 0;
  for (std::size_t x = 0; x < m && out.skeletal; ++x)
    for (std::size_t y = x + 1; y < m; ++y)
      if (out.leq(x, y) && out.leq(y, x)) {
        out.skeletal = false;
        out.witness = {obj(x), obj(y)};
        break;
      }
  return out;
}

inline bool is_skeletal(const VCat& a) { return analyze_order(a).skeletal; }

struct Skeleton {
  VCat cat;
  std::vector<ObjId> representative;  // original object -> object of `cat`
};

/// Quotient by the induced equivalence, keeping the first object of each class.
inline Skeleton skeletalize(const VCat& a) {
  auto order = analyze_order(a);
  const std::size_t m = a.size();
  std::vector<std::size_t> keep;
  std::vector<ObjId> rep(m);
  for (std::size_t x = 0; x < m; ++x) {
    bool merged = false;
    for (std::size_t k = 0; k < keep.size(); ++k)
      if (order.leq(x, keep[k]) && order.leq(keep[k], x)) {
        rep[x] = obj(k);
        merged = true;
        break;
      }
    if (!merged) {
      rep[x] = obj(keep.size());
      keep.push_back(x);
    }
  }
  Square<QElem> hom(keep.size(), QElem{});
  std::vector<std::string> names;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    names.push_back(a.names()[keep[i]]);
    for (std::size_t j = 0; j < keep.size(); ++j) hom(i, j) = a.hom(obj(keep[i]), obj(keep[j]));
  }
  return {VCat::validate(a.quantale_ptr(), a.name(), std::move(names), std::move(hom)), std::move(rep)};
}

/// First pair (a, b) with A(a,b) ≰ B(fa,fb), if any.
inline std::optional<std::pair<ObjId, ObjId>> functor_violation(const VCat& a, const VCat& b,
                                                                std::span<const ObjId> map) {
  if (!(a.quantale() == b.quantale())) throw Error(ErrorKind::QuantaleMismatch, "categories over different quantales");
  if (map.size() != a.size()) throw Error(ErrorKind::DimensionMismatch, "map length differs from source object count");
  for (ObjId y : map)
    if (y.index >= b.size()) throw Error(ErrorKind::InvalidInput, "map target out of range");
  const auto& q = a.quantale();
  for (ObjId x : a.objects())
    for (ObjId y : a.objects())
      if (!q.leq(a.hom(x, y), b.hom(map[x.index], map[y.index]))) return std::pair{x, y};
  return std::nullopt;
}

inline bool is_functor(const VCat& a, const VCat& b, std::span<const ObjId> map) {
  return !functor_violation(a, b, map);
}

struct FunctorCategory {
  VCat cat;
  std::vector<std::vector<ObjId>> functors;  // object i of `cat` is functors[i]
};

/// [A, B]: all Ω-functors A → B with hom(f, g) = ⋀_a B(fa, ga). Maps enumerated lexicographically.
inline FunctorCategory functor_category(const VCat& a, const VCat& b, std::uint64_t cap = kDefaultCap) {
  if (!(a.quantale() == b.quantale())) throw Error(ErrorKind::QuantaleMismatch, "categories over different quantales");
  const std::size_t m = a.size(), n = b.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (n == 0) {
      total = 0;
      break;
    }
    if (total > cap / n + 1) throw Error(ErrorKind::SizeLimitExceeded, "more than " + std::to_string(cap) + " maps");
    total *= n;
  }
  if (total > cap) throw Error(ErrorKind::SizeLimitExceeded, std::to_string(total) + " maps exceed cap");

  FunctorCategory out;
  std::vector<ObjId> map(m);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = m; i-- > 0;) {
      map[i] = obj(c % n);
      c /= n;
    }
    if (is_functor(a, b, map)) out.functors.push_back(map);
  }
  const auto& q = a.quantale();
  const std::size_t k = out.functors.size();
  Square<QElem> hom(k, QElem{});
  for (std::size_t f = 0; f < k; ++f)
    for (std::size_t g = 0; g < k; ++g) {
      QElem acc = q.top();
      for (std::size_t x = 0; x < m; ++x) acc = q.meet(acc, b.hom(out.functors[f][x], out.functors[g][x]));
      hom(f, g) = acc;
    }
  out.cat = VCat::validate(a.quantale_ptr(), "[" + a.name() + "," + b.name() + "]", numbered_names("f", k),
                           std::move(hom));
  return out;
}

}  // namespace qcat
