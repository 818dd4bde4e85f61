#pragma once

/**
 * @file functor.hpp
 * @brief Functoriality and (co)continuity of maps between finite Ω-categories.
 */

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcat/completion.hpp"
#include "qcat/vcat.hpp"

namespace qcat {

struct VFunctorCheck {
  bool is_functor = false;
  std::optional<std::pair<ObjId, ObjId>> functor_witness;  // A(a,b) ≰ B(fa,fb)
  bool continuity_checked = false;
  bool is_cocontinuous = false;
  std::string cocontinuity_witness;
  bool is_continuous = false;
  std::string continuity_witness;
};

namespace detail {

/// First object s of `a` with A(s, x) = row[x] (rows: true) or A(x, s) = row[x] (rows: false).
inline std::optional<ObjId> scan_for(const VCat& a, const std::vector<QElem>& vec, bool rows) {
  for (ObjId s : a.objects()) {
    bool match = true;
    for (ObjId x : a.objects())
      if ((rows ? a.hom(s, x) : a.hom(x, s)) != vec[x.index]) {
        match = false;
        break;
      }
    if (match) return s;
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * Checks A(a,b) ≤ B(fa,fb) and, when `continuity` is set, that f preserves
 * every bottom, binary join and tensor (cocontinuity) and every top, binary
 * meet and cotensor (continuity) that exists in A. B must be cocomplete.
 */
inline VFunctorCheck check_functor(const VCat& a, const VCat& b, std::span<const ObjId> map, bool continuity = true) {
  VFunctorCheck r;
  r.functor_witness = functor_violation(a, b, map);
  r.is_functor = !r.functor_witness;
  if (!continuity) return r;

  auto target = check_cocomplete(b);
  if (!target.structure)
    throw Error(ErrorKind::TargetNotCocomplete, b.name() + " is not cocomplete: " + target.missing_colimit);
  const auto& s = *target.structure;
  const auto& q = a.quantale();
  const auto xs = a.objects();
  auto nm = [&](ObjId x) { return a.object_name(x); };
  auto f = [&](ObjId x) { return map[x.index]; };
  r.continuity_checked = true;

  auto cocont = [&]() -> std::string {
    if (auto bot = detail::scan_for(a, std::vector<QElem>(a.size(), q.top()), true); bot && f(*bot) != s.bot())
      return "bottom " + nm(*bot) + " not preserved";
    std::vector<QElem> row(a.size());
    for (ObjId x : xs)
      for (ObjId y : xs) {
        for (ObjId z : xs) row[z.index] = q.meet(a.hom(x, z), a.hom(y, z));
        if (auto j = detail::scan_for(a, row, true); j && f(*j) != s.join(f(x), f(y)))
          return "join of (" + nm(x) + ", " + nm(y) + ") not preserved";
      }
    for (QElem v : q.elements())
      for (ObjId x : xs) {
        for (ObjId z : xs) row[z.index] = q.resid(v, a.hom(x, z));
        if (auto t = detail::scan_for(a, row, true); t && f(*t) != s.star(v, f(x)))
          return "tensor " + q.token(v) + " * " + nm(x) + " not preserved";
      }
    return {};
  };
  auto cont = [&]() -> std::string {
    if (auto top = detail::scan_for(a, std::vector<QElem>(a.size(), q.top()), false); top && f(*top) != s.top())
      return "top " + nm(*top) + " not preserved";
    std::vector<QElem> col(a.size());
    for (ObjId x : xs)
      for (ObjId y : xs) {
        for (ObjId z : xs) col[z.index] = q.meet(a.hom(z, x), a.hom(z, y));
        if (auto m = detail::scan_for(a, col, false); m && f(*m) != s.meet(f(x), f(y)))
          return "meet of (" + nm(x) + ", " + nm(y) + ") not preserved";
      }
    for (QElem v : q.elements())
      for (ObjId x : xs) {
        for (ObjId z : xs) col[z.index] = q.resid(v, a.hom(z, x));
        if (auto c = detail::scan_for(a, col, false); c && f(*c) != s.rhd(v, f(x)))
          return "cotensor " + q.token(v) + " |> " + nm(x) + " not preserved";
      }
    return {};
  };
  r.cocontinuity_witness = cocont();
  r.is_cocontinuous = r.cocontinuity_witness.empty();
  r.continuity_witness = cont();
  r.is_continuous = r.continuity_witness.empty();
  return r;
}

}  // namespace qcat
