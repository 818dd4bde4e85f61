#pragma once

/**
 * @file completion.hpp
 * @brief Weighted (co)limits in finite skeletal Ω-categories and the
 * action-based presentation of cocomplete ones.
 *
 * Every (co)limit is located by its defining hom vector: in a skeletal
 * category an object is determined by its row A(s, -), and also by its
 * column A(-, s). Cocompleteness is decided by the finite reduction
 * (bottom, binary joins, tensors); completeness dually.
 */

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcat/core.hpp"
#include "qcat/presheaf.hpp"
#include "qcat/quantale.hpp"
#include "qcat/vcat.hpp"

namespace qcat {

/// Row/column lookup for a skeletal category.
class ObjectIndex {
 public:
  explicit ObjectIndex(const VCat& a) : a_(&a) {
    if (auto order = analyze_order(a); !order.skeletal)
      throw Error(ErrorKind::NotSkeletal,
                  a.name() + " is not skeletal: " + a.object_name(order.witness->first) + " and " +
                      a.object_name(order.witness->second) + " are isomorphic",
                  {a.object_name(order.witness->first), a.object_name(order.witness->second)});
    for (ObjId s : a.objects()) {
      std::vector<QElem> row(a.size()), col(a.size());
      for (ObjId x : a.objects()) {
        row[x.index] = a.hom(s, x);
        col[x.index] = a.hom(x, s);
      }
      rows_.emplace(std::move(row), s);
      cols_.emplace(std::move(col), s);
    }
  }

  const VCat& cat() const noexcept { return *a_; }

  /// The object s with A(s, x) = row[x] for all x.
  std::optional<ObjId> by_row(const std::vector<QElem>& row) const {
    auto it = rows_.find(row);
    return it == rows_.end() ? std::nullopt : std::optional<ObjId>(it->second);
  }
  /// The object s with A(x, s) = col[x] for all x.
  std::optional<ObjId> by_column(const std::vector<QElem>& col) const {
    auto it = cols_.find(col);
    return it == cols_.end() ? std::nullopt : std::optional<ObjId>(it->second);
  }

  std::optional<ObjId> sup(std::span<const QElem> phi) const {
    const auto& q = a_->quantale();
    std::vector<QElem> row(a_->size(), q.top());
    for (ObjId x : a_->objects())
      for (ObjId b : a_->objects()) row[x.index] = q.meet(row[x.index], q.resid(phi[b.index], a_->hom(b, x)));
    return by_row(row);
  }
  std::optional<ObjId> inf(std::span<const QElem> psi) const {
    const auto& q = a_->quantale();
    std::vector<QElem> col(a_->size(), q.top());
    for (ObjId x : a_->objects())
      for (ObjId b : a_->objects()) col[x.index] = q.meet(col[x.index], q.resid(psi[b.index], a_->hom(x, b)));
    return by_column(col);
  }
  std::optional<ObjId> tensor(QElem v, ObjId a) const {
    const auto& q = a_->quantale();
    std::vector<QElem> row(a_->size());
    for (ObjId x : a_->objects()) row[x.index] = q.resid(v, a_->hom(a, x));
    return by_row(row);
  }
  std::optional<ObjId> cotensor(QElem v, ObjId a) const {
    const auto& q = a_->quantale();
    std::vector<QElem> col(a_->size());
    for (ObjId x : a_->objects()) col[x.index] = q.resid(v, a_->hom(x, a));
    return by_column(col);
  }
  std::optional<ObjId> join(ObjId a, ObjId b) const {
    const auto& q = a_->quantale();
    std::vector<QElem> row(a_->size());
    for (ObjId x : a_->objects()) row[x.index] = q.meet(a_->hom(a, x), a_->hom(b, x));
    return by_row(row);
  }
  std::optional<ObjId> meet(ObjId a, ObjId b) const {
    const auto& q = a_->quantale();
    std::vector<QElem> col(a_->size());
    for (ObjId x : a_->objects()) col[x.index] = q.meet(a_->hom(x, a), a_->hom(x, b));
    return by_column(col);
  }
  std::optional<ObjId> bot() const { return by_row(std::vector<QElem>(a_->size(), a_->quantale().top())); }
  std::optional<ObjId> top() const { return by_column(std::vector<QElem>(a_->size(), a_->quantale().top())); }

 private:
  const VCat* a_;
  std::map<std::vector<QElem>, ObjId> rows_;
  std::map<std::vector<QElem>, ObjId> cols_;
};

/// A(sup φ, a) = ⋀_b [φ(b), A(b, a)]; nullopt when no object satisfies it.
inline std::optional<ObjId> find_sup(const VCat& a, const Presheaf& phi) {
  if (phi.size() != a.size()) throw Error(ErrorKind::DimensionMismatch, "presheaf length differs from object count");
  return ObjectIndex(a).sup(phi.values);
}

/// A(a, inf ψ) = ⋀_b [ψ(b), A(a, b)].
inline std::optional<ObjId> find_inf(const VCat& a, const Copresheaf& psi) {
  if (psi.size() != a.size()) throw Error(ErrorKind::DimensionMismatch, "copresheaf length differs from object count");
  return ObjectIndex(a).inf(psi.values);
}

/// A(v * a, b) = [v, A(a, b)].
inline std::optional<ObjId> find_tensor(const VCat& a, QElem v, ObjId x) { return ObjectIndex(a).tensor(v, x); }

/// A(b, v ▷ a) = [v, A(b, a)].
inline std::optional<ObjId> find_cotensor(const VCat& a, QElem v, ObjId x) { return ObjectIndex(a).cotensor(v, x); }

/**
 * A complete lattice of objects with the Ω-action v * - and its right
 * adjoint v ▷ -, all as precomputed tables.
 */
class CocompleteStructure {
 public:
  const VCat& base() const noexcept { return *base_; }
  const VCatPtr& base_ptr() const noexcept { return base_; }
  const Quantale& quantale() const noexcept { return base_->quantale(); }
  std::size_t size() const noexcept { return base_->size(); }
  std::vector<ObjId> objects() const { return base_->objects(); }

  ObjId join(ObjId a, ObjId b) const { return join_(a.index, b.index); }
  ObjId meet(ObjId a, ObjId b) const { return meet_(a.index, b.index); }
  ObjId bot() const noexcept { return bot_; }
  ObjId top() const noexcept { return top_; }
  ObjId star(QElem v, ObjId a) const { return star_.at(v.index * size() + a.index); }
  ObjId rhd(QElem v, ObjId a) const { return rhd_.at(v.index * size() + a.index); }
  bool leq(ObjId a, ObjId b) const { return quantale().leq(quantale().unit(), base_->hom(a, b)); }

  ObjId join_all(std::span<const ObjId> xs) const {
    ObjId acc = bot_;
    for (ObjId x : xs) acc = join(acc, x);
    return acc;
  }
  ObjId meet_all(std::span<const ObjId> xs) const {
    ObjId acc = top_;
    for (ObjId x : xs) acc = meet(acc, x);
    return acc;
  }

  /// The underlying lattice, tokens = object names.
  Lattice lattice() const {
    const std::size_t m = size();
    Square<char> leq_table(m, 0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) leq_table(a, b) = leq(obj(a), obj(b)) ? 1 : 0;
    return Lattice::validate(base_->name(), base_->names(), std::move(leq_table));
  }

  /**
   * First failure among the action laws, the cotensor laws, the adjunction
   * v * a ≤ b ⇔ a ≤ v ▷ b and hom recovery A(a,b) = ⋁{v : v * a ≤ b}.
   * The cotensor laws use (v1 ∨ v2) ▷ a = (v1 ▷ a) ∧ (v2 ▷ a).
   */
  std::optional<std::string> law_violation() const {
    const auto& q = quantale();
    const auto xs = objects();
    const auto vs = q.elements();
    auto nm = [&](ObjId a) { return base_->object_name(a); };
    auto tk = [&](QElem v) { return q.token(v); };
    for (ObjId a : xs) {
      if (star(q.unit(), a) != a) return "e * " + nm(a) + " != " + nm(a);
      if (rhd(q.unit(), a) != a) return "e |> " + nm(a) + " != " + nm(a);
      if (star(q.bot(), a) != bot_) return "bot * " + nm(a) + " is not bottom";
      if (rhd(q.bot(), a) != top_) return "bot |> " + nm(a) + " is not top";
    }
    for (QElem v : vs) {
      if (star(v, bot_) != bot_) return tk(v) + " * bottom is not bottom";
      if (rhd(v, top_) != top_) return tk(v) + " |> top is not top";
      for (QElem w : vs)
        for (ObjId a : xs) {
          if (star(v, star(w, a)) != star(q.tensor(v, w), a))
            return tk(v) + " * (" + tk(w) + " * " + nm(a) + ") != (" + tk(v) + "(x)" + tk(w) + ") * " + nm(a);
          if (rhd(v, rhd(w, a)) != rhd(q.tensor(v, w), a))
            return tk(v) + " |> (" + tk(w) + " |> " + nm(a) + ") != (" + tk(v) + "(x)" + tk(w) + ") |> " + nm(a);
          if (star(q.join(v, w), a) != join(star(v, a), star(w, a)))
            return "(" + tk(v) + " v " + tk(w) + ") * " + nm(a) + " != join of tensors";
          if (rhd(q.join(v, w), a) != meet(rhd(v, a), rhd(w, a)))
            return "(" + tk(v) + " v " + tk(w) + ") |> " + nm(a) + " != meet of cotensors";
        }
      for (ObjId a : xs)
        for (ObjId b : xs) {
          if (star(v, join(a, b)) != join(star(v, a), star(v, b)))
            return tk(v) + " * (" + nm(a) + " v " + nm(b) + ") != join of tensors";
          if (rhd(v, meet(a, b)) != meet(rhd(v, a), rhd(v, b)))
            return tk(v) + " |> (" + nm(a) + " ^ " + nm(b) + ") != meet of cotensors";
          if (leq(star(v, a), b) != leq(a, rhd(v, b)))
            return "adjunction fails at (" + tk(v) + ", " + nm(a) + ", " + nm(b) + ")";
        }
    }
    for (ObjId a : xs)
      for (ObjId b : xs) {
        QElem acc = q.bot();
        for (QElem v : vs)
          if (leq(star(v, a), b)) acc = q.join(acc, v);
        if (acc != base_->hom(a, b)) return "hom(" + nm(a) + ", " + nm(b) + ") not recovered from the action";
      }
    return std::nullopt;
  }

 private:
  friend struct CocompletenessReport check_cocomplete(VCatPtr a);
  CocompleteStructure() = default;

  VCatPtr base_;
  Square<ObjId> join_;
  Square<ObjId> meet_;
  ObjId bot_{};
  ObjId top_{};
  std::vector<ObjId> star_;
  std::vector<ObjId> rhd_;
};

struct CocompletenessReport {
  bool cocomplete = false;
  bool complete = false;
  std::string missing_colimit;  // first missing bottom / join / tensor
  std::string missing_limit;    // first missing top / meet / cotensor
  std::optional<CocompleteStructure> structure;
};

/// Decides cocompleteness (bottom, binary joins, tensors) and completeness (top, binary meets, cotensors).
inline CocompletenessReport check_cocomplete(VCatPtr a) {
  ObjectIndex idx(*a);
  const auto& q = a->quantale();
  const std::size_t m = a->size();
  const auto xs = a->objects();
  CocompletenessReport r;
  auto nm = [&](ObjId x) { return a->object_name(x); };

  CocompleteStructure s;
  s.base_ = a;
  s.join_ = Square<ObjId>(m, ObjId{});
  s.meet_ = Square<ObjId>(m, ObjId{});
  s.star_.assign(q.size() * m, ObjId{});
  s.rhd_.assign(q.size() * m, ObjId{});

  auto colimits = [&]() -> std::string {
    auto b = idx.bot();
    if (!b) return "no bottom element";
    s.bot_ = *b;
    for (ObjId x : xs)
      for (ObjId y : xs) {
        auto j = idx.join(x, y);
        if (!j) return "no join of (" + nm(x) + ", " + nm(y) + ")";
        s.join_(x.index, y.index) = *j;
      }
    for (QElem v : q.elements())
      for (ObjId x : xs) {
        auto t = idx.tensor(v, x);
        if (!t) return "no tensor " + q.token(v) + " * " + nm(x);
        s.star_[v.index * m + x.index] = *t;
      }
    return {};
  };
  auto limits = [&]() -> std::string {
    auto t = idx.top();
    if (!t) return "no top element";
    s.top_ = *t;
    for (ObjId x : xs)
      for (ObjId y : xs) {
        auto mt = idx.meet(x, y);
        if (!mt) return "no meet of (" + nm(x) + ", " + nm(y) + ")";
        s.meet_(x.index, y.index) = *mt;
      }
    for (QElem v : q.elements())
      for (ObjId x : xs) {
        auto c = idx.cotensor(v, x);
        if (!c) return "no cotensor " + q.token(v) + " |> " + nm(x);
        s.rhd_[v.index * m + x.index] = *c;
      }
    return {};
  };
  r.missing_colimit = colimits();
  r.missing_limit = limits();
  r.cocomplete = r.missing_colimit.empty();
  r.complete = r.missing_limit.empty();
  if (r.cocomplete && r.complete) r.structure = std::move(s);
  return r;
}

inline CocompletenessReport check_cocomplete(const VCat& a) { return check_cocomplete(std::make_shared<const VCat>(a)); }

/// Builds the structure or throws NotCocomplete.
inline CocompleteStructure cocomplete_structure(VCatPtr a) {
  auto r = check_cocomplete(a);
  if (!r.structure)
    throw Error(ErrorKind::NotCocomplete, a->name() + " is not cocomplete: " +
                                              (r.cocomplete ? r.missing_limit : r.missing_colimit));
  return std::move(*r.structure);
}

inline CocompleteStructure cocomplete_structure(const VCat& a) {
  return cocomplete_structure(std::make_shared<const VCat>(a));
}

/// A discrete weight: K = psi.size(), diagram[k] the object weighted by psi[k].
struct Weight {
  std::vector<QElem> psi;
  std::vector<ObjId> diagram;
};

/// ⋁_k ψ(k) * diagram(k).
inline ObjId weighted_colimit(const CocompleteStructure& s, const Weight& w) {
  if (w.psi.size() != w.diagram.size()) throw Error(ErrorKind::DimensionMismatch, "weight and diagram differ in length");
  ObjId acc = s.bot();
  for (std::size_t k = 0; k < w.psi.size(); ++k) acc = s.join(acc, s.star(w.psi[k], w.diagram[k]));
  return acc;
}

/// ⋀_k ψ(k) ▷ diagram(k).
inline ObjId weighted_limit(const CocompleteStructure& s, const Weight& w) {
  if (w.psi.size() != w.diagram.size()) throw Error(ErrorKind::DimensionMismatch, "weight and diagram differ in length");
  ObjId acc = s.top();
  for (std::size_t k = 0; k < w.psi.size(); ++k) acc = s.meet(acc, s.rhd(w.psi[k], w.diagram[k]));
  return acc;
}

/// sup φ = ⋁_a φ(a) * a.
inline ObjId sup_via_tensors(const CocompleteStructure& s, const Presheaf& phi) {
  return weighted_colimit(s, Weight{phi.values, s.objects()});
}

struct RecoveredHom {
  Square<QElem> via_tensor;    // ⋁{v : v * a ≤ b}
  Square<QElem> via_cotensor;  // ⋁{v : a ≤ v ▷ b}
};

inline RecoveredHom hom_from_action(const CocompleteStructure& s) {
  const auto& q = s.quantale();
  const std::size_t m = s.size();
  RecoveredHom r{Square<QElem>(m, q.bot()), Square<QElem>(m, q.bot())};
  for (ObjId a : s.objects())
    for (ObjId b : s.objects())
      for (QElem v : q.elements()) {
        if (s.leq(s.star(v, a), b)) r.via_tensor(a.index, b.index) = q.join(r.via_tensor(a.index, b.index), v);
        if (s.leq(a, s.rhd(v, b))) r.via_cotensor(a.index, b.index) = q.join(r.via_cotensor(a.index, b.index), v);
      }
  return r;
}

}  // namespace qcat
