#pragma once

/**
 * @file presheaf.hpp
 * @brief Ω-valued downsets and upsets: enumeration of D(A) and U(A), Yoneda,
 * down-closure, the downset monad, the Isbell completion and free completely
 * distributive objects DU(dA).
 */

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcat/core.hpp"
#include "qcat/quantale.hpp"
#include "qcat/vcat.hpp"

namespace qcat {

/// Object-indexed vector of quantale elements; the tag records how it is meant to be read.
template <class Tag>
struct ValueVector {
  std::vector<QElem> values;

  std::size_t size() const noexcept { return values.size(); }
  QElem operator[](ObjId a) const { return values.at(a.index); }
  QElem& operator[](ObjId a) { return values.at(a.index); }
  friend auto operator<=>(const ValueVector&, const ValueVector&) = default;
};

/// A(a,b) ⊗ φ(b) ≤ φ(a).
using Presheaf = ValueVector<struct PresheafTag>;
/// ψ(a) ⊗ A(a,b) ≤ ψ(b).
using Copresheaf = ValueVector<struct CopresheafTag>;
/// Arbitrary map from objects to Ω.
using OmegaSubset = ValueVector<struct OmegaSubsetTag>;

enum class Direction { down, up };

inline bool is_presheaf(const VCat& a, std::span<const QElem> phi) {
  const auto& q = a.quantale();
  if (phi.size() != a.size()) return false;
  for (ObjId x : a.objects())
    for (ObjId y : a.objects())
      if (!q.leq(q.tensor(a.hom(x, y), phi[y.index]), phi[x.index])) return false;
  return true;
}

inline bool is_copresheaf(const VCat& a, std::span<const QElem> psi) {
  const auto& q = a.quantale();
  if (psi.size() != a.size()) return false;
  for (ObjId x : a.objects())
    for (ObjId y : a.objects())
      if (!q.leq(q.tensor(psi[x.index], a.hom(x, y)), psi[y.index])) return false;
  return true;
}

/// D(A) or U(A) materialized: object i of `cat` is the vector `objects[i]` over `base`.
struct PresheafCategory {
  VCatPtr base;
  Direction direction = Direction::down;
  std::vector<std::vector<QElem>> objects;
  VCat cat;

  std::optional<ObjId> find(const std::vector<QElem>& values) const {
    auto it = index.find(values);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  ObjId at(const std::vector<QElem>& values) const {
    auto id = find(values);
    if (!id) throw Error(ErrorKind::InvalidInput, "vector is not an object of " + cat.name());
    return *id;
  }
  Presheaf presheaf(ObjId i) const { return Presheaf{objects.at(i.index)}; }

  std::map<std::vector<QElem>, ObjId> index;
};

namespace detail {

/// All presheaves of `a` (contravariant), sorted lexicographically.
inline std::vector<std::vector<QElem>> presheaf_vectors(const VCat& a, std::uint64_t cap) {
  const auto& q = a.quantale();
  const std::size_t m = a.size();
  auto order = analyze_order(a);
  std::vector<std::size_t> seq(m), below(m, 0);
  for (std::size_t x = 0; x < m; ++x) {
    seq[x] = x;
    for (std::size_t y = 0; y < m; ++y) below[x] += order.leq(y, x);
  }
  std::stable_sort(seq.begin(), seq.end(), [&](std::size_t x, std::size_t y) { return below[x] < below[y]; });

  std::vector<std::vector<QElem>> out;
  std::vector<QElem> phi(m, q.bot());
  std::uint64_t nodes = 0;
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == m) {
      out.push_back(phi);
      return;
    }
    const ObjId x = obj(seq[depth]);
    QElem lower = q.bot();
    for (std::size_t d = 0; d < depth; ++d) {
      ObjId y = obj(seq[d]);
      lower = q.join(lower, q.tensor(a.hom(x, y), phi[y.index]));
    }
    for (QElem v : q.elements()) {
      if (!q.leq(lower, v) || !q.leq(q.tensor(a.hom(x, x), v), v)) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        ObjId y = obj(seq[d]);
        ok = q.leq(q.tensor(a.hom(y, x), v), phi[y.index]);
      }
      if (!ok) continue;
      if (++nodes > cap)
        throw Error(ErrorKind::SizeLimitExceeded,
                    "presheaf enumeration over " + a.name() + " visited more than " + std::to_string(cap) +
                        " candidates");
      phi[x.index] = v;
      self(self, depth + 1);
    }
    phi[x.index] = q.bot();
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/**
 * D(A) (direction down) or U(A) = [A, Ω]^op (direction up).
 *
 * D(A)(φ, ψ) = ⋀_a [φ(a), ψ(a)];  U(A)(ψ1, ψ2) = ⋀_a [ψ2(a), ψ1(a)].
 * Objects are numbered in lexicographic order of their value vectors. `cap`
 * bounds both the candidates visited and the cells of the hom table.
 */
inline PresheafCategory enumerate_presheaves(VCatPtr a, Direction dir, std::uint64_t cap = kDefaultCap) {
  const auto& q = a->quantale();
  PresheafCategory out;
  out.direction = dir;
  out.objects = detail::presheaf_vectors(dir == Direction::down ? *a : opposite(*a), cap);
  const std::size_t k = out.objects.size();
  if (static_cast<std::uint64_t>(k) * k > cap)
    throw Error(ErrorKind::SizeLimitExceeded,
                std::to_string(k) + " presheaves over " + a->name() + " need a hom table larger than cap " +
                    std::to_string(cap));
  Square<QElem> hom(k, QElem{});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto& src = out.objects[dir == Direction::down ? i : j];
      const auto& dst = out.objects[dir == Direction::down ? j : i];
      QElem acc = q.top();
      for (std::size_t x = 0; x < a->size(); ++x) acc = q.meet(acc, q.resid(src[x], dst[x]));
      hom(i, j) = acc;
    }
  const std::string prefix = dir == Direction::down ? "p" : "u";
  out.cat = VCat::validate(a->quantale_ptr(), (dir == Direction::down ? "D(" : "U(") + a->name() + ")",
                           numbered_names(prefix, k), std::move(hom));
  for (std::size_t i = 0; i < k; ++i) out.index.emplace(out.objects[i], obj(i));
  out.base = std::move(a);
  return out;
}

/// The presheaf vectors alone, without the hom table; `cap` bounds the search.
inline std::vector<std::vector<QElem>> list_presheaves(const VCat& a, Direction dir, std::uint64_t cap = kDefaultCap) {
  return detail::presheaf_vectors(dir == Direction::down ? a : opposite(a), cap);
}

inline PresheafCategory enumerate_presheaves(const VCat& a, Direction dir, std::uint64_t cap = kDefaultCap) {
  return enumerate_presheaves(std::make_shared<const VCat>(a), dir, cap);
}

/// down: A(-, a); up: A(a, -).
inline std::vector<QElem> yoneda(const VCat& a, ObjId x, Direction dir = Direction::down) {
  std::vector<QElem> out(a.size());
  for (ObjId y : a.objects()) out[y.index] = dir == Direction::down ? a.hom(y, x) : a.hom(x, y);
  return out;
}

/// f↓(x) = ⋁_a f(a) ⊗ A(x, a): the least presheaf above f.
inline Presheaf down_closure(const VCat& a, const OmegaSubset& f) {
  const auto& q = a.quantale();
  if (f.size() != a.size()) throw Error(ErrorKind::DimensionMismatch, "subset length differs from object count");
  Presheaf out{std::vector<QElem>(a.size(), q.bot())};
  for (ObjId x : a.objects())
    for (ObjId y : a.objects()) out[x] = q.join(out[x], q.tensor(f[y], a.hom(x, y)));
  return out;
}

/// ⋁_i B(-, images[i]) ⊗ weights[i]: the lift of the weighted family (images, weights).
inline Presheaf lift_family(const VCat& b, std::span<const ObjId> images, std::span<const QElem> weights) {
  const auto& q = b.quantale();
  if (images.size() != weights.size()) throw Error(ErrorKind::DimensionMismatch, "images and weights differ in length");
  Presheaf out{std::vector<QElem>(b.size(), q.bot())};
  for (ObjId x : b.objects())
    for (std::size_t i = 0; i < images.size(); ++i) out[x] = q.join(out[x], q.tensor(b.hom(x, images[i]), weights[i]));
  return out;
}

/// Df(φ) = ⋁_a B(-, f a) ⊗ φ(a).
inline Presheaf lift_functor(const VCat& a, const VCat& b, std::span<const ObjId> map, const Presheaf& phi) {
  if (auto bad = functor_violation(a, b, map))
    throw Error(ErrorKind::NotAFunctor, "map does not satisfy A(x,y) <= B(fx,fy) at (" + a.object_name(bad->first) +
                                            ", " + a.object_name(bad->second) + ")",
                {a.object_name(bad->first), a.object_name(bad->second)});
  if (phi.size() != a.size()) throw Error(ErrorKind::DimensionMismatch, "presheaf length differs from object count");
  return lift_family(b, map, phi.values);
}

/// μ_A(Φ) = ⋁_φ φ ⊗ Φ(φ) for Φ a presheaf on D(A).
inline Presheaf multiply(const PresheafCategory& da, const Presheaf& big_phi) {
  const auto& q = da.cat.quantale();
  if (big_phi.size() != da.objects.size())
    throw Error(ErrorKind::DimensionMismatch, "presheaf on D(A) has wrong length");
  const std::size_t m = da.base->size();
  Presheaf out{std::vector<QElem>(m, q.bot())};
  for (std::size_t i = 0; i < da.objects.size(); ++i)
    for (std::size_t x = 0; x < m; ++x)
      out.values[x] = q.join(out.values[x], q.tensor(da.objects[i][x], big_phi.values[i]));
  return out;
}

/// The map a ↦ y(a) as object ids of an enumerated D(A) (or y'(a) into U(A)).
inline std::vector<ObjId> yoneda_map(const PresheafCategory& pa) {
  std::vector<ObjId> out;
  for (ObjId x : pa.base->objects()) out.push_back(pa.at(yoneda(*pa.base, x, pa.direction)));
  return out;
}

// ---------------------------------------------------------------------------
// Isbell completion
// ---------------------------------------------------------------------------

/// ↑φ(x) = ⋀_a [φ(a), A(a, x)].
inline Copresheaf isbell_up(const VCat& a, const Presheaf& phi) {
  const auto& q = a.quantale();
  Copresheaf out{std::vector<QElem>(a.size(), q.top())};
  for (ObjId x : a.objects())
    for (ObjId y : a.objects()) out[x] = q.meet(out[x], q.resid(phi[y], a.hom(y, x)));
  return out;
}

/// ↓ψ(x) = ⋀_a [ψ(a), A(x, a)].
inline Presheaf isbell_down(const VCat& a, const Copresheaf& psi) {
  const auto& q = a.quantale();
  Presheaf out{std::vector<QElem>(a.size(), q.top())};
  for (ObjId x : a.objects())
    for (ObjId y : a.objects()) out[x] = q.meet(out[x], q.resid(psi[y], a.hom(x, y)));
  return out;
}

/// Full subcategory on `ids`, in the given order, keeping object names.
inline VCat full_subcategory(const VCat& a, std::span<const ObjId> ids, std::string name) {
  Square<QElem> hom(ids.size(), QElem{});
  std::vector<std::string> names;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    names.push_back(a.object_name(ids[i]));
    for (std::size_t j = 0; j < ids.size(); ++j) hom(i, j) = a.hom(ids[i], ids[j]);
  }
  return VCat::validate(a.quantale_ptr(), std::move(name), std::move(names), std::move(hom));
}

struct IsbellCompletion {
  PresheafCategory presheaves;   // D(A)
  std::vector<ObjId> fixed;      // fixed points of ↓↑, as objects of D(A)
  VCat cat;                      // full subcategory of D(A) on `fixed`
  std::vector<ObjId> embedding;  // a ↦ y(a) as an object of `cat`
};

inline IsbellCompletion isbell(VCatPtr a, std::uint64_t cap = kDefaultCap) {
  IsbellCompletion out;
  out.presheaves = enumerate_presheaves(a, Direction::down, cap);
  for (std::size_t i = 0; i < out.presheaves.objects.size(); ++i) {
    Presheaf phi{out.presheaves.objects[i]};
    if (isbell_down(*a, isbell_up(*a, phi)) == phi) out.fixed.push_back(obj(i));
  }
  out.cat = full_subcategory(out.presheaves.cat, out.fixed, "Isbell(" + a->name() + ")");
  for (ObjId x : a->objects()) {
    ObjId p = out.presheaves.at(yoneda(*a, x));
    auto it = std::find(out.fixed.begin(), out.fixed.end(), p);
    if (it == out.fixed.end()) throw Error(ErrorKind::InvalidInput, "representable presheaf is not Isbell-closed");
    out.embedding.push_back(obj(static_cast<std::size_t>(it - out.fixed.begin())));
  }
  return out;
}

inline IsbellCompletion isbell(const VCat& a, std::uint64_t cap = kDefaultCap) {
  return isbell(std::make_shared<const VCat>(a), cap);
}

// ---------------------------------------------------------------------------
// Free completely distributive object
// ---------------------------------------------------------------------------

struct FreeCD {
  PresheafCategory upsets;  // U(dA)
  PresheafCategory result;  // D(U(dA)), based on upsets.cat
};

/// DU(dA) for a set A of `n` generators.
inline FreeCD free_cd(QuantalePtr q, std::size_t n, std::uint64_t cap = kDefaultCap) {
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < n; ++i) {
    space *= q->size();
    if (space > cap)
      throw Error(ErrorKind::SizeLimitExceeded, "|Omega|^" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  FreeCD out;
  out.upsets = enumerate_presheaves(discrete(q, n), Direction::up, cap);
  out.result = enumerate_presheaves(std::make_shared<const VCat>(out.upsets.cat), Direction::down, cap);
  return out;
}

}  // namespace qcat
