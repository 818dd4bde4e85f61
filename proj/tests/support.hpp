#pragma once

// Seeded generators and brute-force oracles shared by the test binaries.
// Oracles work on raw index tables and never call the library code they check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "qcat/qcat.hpp"

namespace qcat::oracle {

using Rng = std::mt19937_64;

/// Random Ω-category on m objects: random homs biased to ⊥, reflexive, then
/// closed under hom(a,c) ∨= hom(a,b) ⊗ hom(b,c).
inline VCat random_category(const QuantalePtr& q, std::size_t m, Rng& rng, const std::string& name = "R") {
  std::uniform_int_distribution<std::size_t> pick(0, q->size() - 1);
  std::bernoulli_distribution sparse(0.6);
  Square<QElem> hom(m, q->bot());
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      hom(a, b) = sparse(rng) ? q->bot() : qe(pick(rng));
      if (a == b) hom(a, b) = q->join(hom(a, b), q->unit());
    }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c) {
          QElem v = q->join(hom(a, c), q->tensor(hom(a, b), hom(b, c)));
          if (v != hom(a, c)) {
            hom(a, c) = v;
            changed = true;
          }
        }
  }
  return VCat::validate(q, name, numbered_names("a", m), std::move(hom));
}

/// The first `count` random categories with 1..max_objects objects from `seed`.
inline std::vector<VCat> random_categories(const QuantalePtr& q, std::size_t count, std::size_t max_objects,
                                           std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, max_objects);
  std::vector<VCat> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_category(q, size(rng), rng, "R" + std::to_string(i)));
  return out;
}

/// Every valid hom matrix on m objects, in lexicographic order.
inline std::vector<VCat> all_categories(const QuantalePtr& q, std::size_t m) {
  const std::size_t n = q->size(), cells = m * m;
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= n;
  std::vector<VCat> out;
  for (std::size_t code = 0; code < total; ++code) {
    Square<QElem> hom(m, q->bot());
    std::size_t c = code;
    for (std::size_t i = 0; i < cells; ++i, c /= n) hom(i / m, i % m) = qe(c % n);
    bool ok = true;
    for (std::size_t a = 0; a < m && ok; ++a) ok = q->leq(q->unit(), hom(a, a));
    for (std::size_t a = 0; a < m && ok; ++a)
      for (std::size_t b = 0; b < m && ok; ++b)
        for (std::size_t d = 0; d < m && ok; ++d) ok = q->leq(q->tensor(hom(a, b), hom(b, d)), hom(a, d));
    if (ok) out.push_back(VCat::validate(q, "A" + std::to_string(code), numbered_names("a", m), std::move(hom)));
  }
  return out;
}

/// Random partial order on n points: random edges i -> j (i < j), transitively closed.
inline Square<char> random_poset(std::size_t n, Rng& rng, double density = 0.4) {
  std::bernoulli_distribution edge(density);
  Square<char> leq(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    leq(i, i) = 1;
    for (std::size_t j = i + 1; j < n; ++j) leq(i, j) = edge(rng) ? 1 : 0;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq(i, k) && leq(k, j)) leq(i, j) = 1;
  return leq;
}

// ---------------------------------------------------------------------------
// Classical poset oracles (sets are bitmasks over at most 32 points)
// ---------------------------------------------------------------------------

using Mask = std::uint32_t;

inline Mask down_set(const Square<char>& leq, Mask s) {
  Mask out = 0;
  for (std::size_t a = 0; a < leq.size(); ++a)
    for (std::size_t b = 0; b < leq.size(); ++b)
      if ((s >> b & 1U) && leq(a, b)) out |= Mask{1} << a;
  return out;
}

inline Mask upper_bounds(const Square<char>& leq, Mask s) {
  Mask out = 0;
  for (std::size_t x = 0; x < leq.size(); ++x) {
    bool ub = true;
    for (std::size_t a = 0; a < leq.size(); ++a)
      if ((s >> a & 1U) && !leq(a, x)) ub = false;
    if (ub) out |= Mask{1} << x;
  }
  return out;
}

inline Mask lower_bounds(const Square<char>& leq, Mask s) {
  Mask out = 0;
  for (std::size_t x = 0; x < leq.size(); ++x) {
    bool lb = true;
    for (std::size_t a = 0; a < leq.size(); ++a)
      if ((s >> a & 1U) && !leq(x, a)) lb = false;
    if (lb) out |= Mask{1} << x;
  }
  return out;
}

/// Least element of `s`, if any.
inline std::optional<std::size_t> least(const Square<char>& leq, Mask s) {
  for (std::size_t x = 0; x < leq.size(); ++x) {
    if (!(s >> x & 1U)) continue;
    bool ok = true;
    for (std::size_t y = 0; y < leq.size(); ++y)
      if ((s >> y & 1U) && !leq(x, y)) ok = false;
    if (ok) return x;
  }
  return std::nullopt;
}

/// Greatest element of `s`, if any.
inline std::optional<std::size_t> greatest(const Square<char>& leq, Mask s) {
  for (std::size_t x = 0; x < leq.size(); ++x) {
    if (!(s >> x & 1U)) continue;
    bool ok = true;
    for (std::size_t y = 0; y < leq.size(); ++y)
      if ((s >> y & 1U) && !leq(y, x)) ok = false;
    if (ok) return x;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> classical_meet(const Square<char>& leq, Mask s) { return greatest(leq, lower_bounds(leq, s)); }

inline std::optional<std::size_t> classical_join(const Square<char>& leq, Mask s) { return least(leq, upper_bounds(leq, s)); }

/// Dedekind-MacNeille cuts: the distinct sets L(U(S)).
inline std::set<Mask> macneille_cuts(const Square<char>& leq) {
  std::set<Mask> cuts;
  const Mask full = leq.size() == 32 ? ~Mask{0} : (Mask{1} << leq.size()) - 1;
  for (Mask s = 0; s <= full; ++s) {
    cuts.insert(lower_bounds(leq, upper_bounds(leq, s)));
    if (s == full) break;
  }
  return cuts;
}

inline bool is_lattice_order(const Square<char>& leq) {
  const std::size_t n = leq.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Mask s = (Mask{1} << a) | (Mask{1} << b);
      if (!classical_join(leq, s) || !classical_meet(leq, s)) return false;
    }
  return n > 0 && classical_join(leq, 0).has_value();
}

/// x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) for every triple; `leq` must be a lattice order.
inline bool classical_distributive(const Square<char>& leq) {
  const std::size_t n = leq.size();
  auto bit = [](std::size_t i) { return Mask{1} << i; };
  auto join = [&](std::size_t a, std::size_t b) { return *classical_join(leq, bit(a) | bit(b)); };
  auto meet = [&](std::size_t a, std::size_t b) { return *classical_meet(leq, bit(a) | bit(b)); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return false;
  return true;
}

/// Residuation straight from a tensor table: ⋁{u : v ⊗ u ≤ w}, with ≤ read from the lattice order table.
inline std::size_t brute_resid(const Quantale& q, std::size_t v, std::size_t w) {
  const auto& leq = q.lattice().order();
  const std::size_t n = q.size();
  Mask ok = 0;
  for (std::size_t u = 0; u < n; ++u)
    if (leq(q.tensor(qe(v), qe(u)).index, w)) ok |= Mask{1} << u;
  auto top = least(leq, upper_bounds(leq, ok));
  return *top;
}

/// Presheaf test straight from the definition.
inline bool brute_is_presheaf(const VCat& a, const std::vector<QElem>& phi) {
  const auto& q = a.quantale();
  for (ObjId x : a.objects())
    for (ObjId y : a.objects())
      if (!q.leq(q.tensor(a.hom(x, y), phi[y.index]), phi[x.index])) return false;
  return true;
}

/// Every Ω-valued vector on A that is a presheaf, in lexicographic order.
inline std::vector<std::vector<QElem>> brute_presheaves(const VCat& a) {
  const std::size_t m = a.size(), n = a.quantale().size();
  std::vector<std::vector<QElem>> out;
  std::vector<QElem> v(m, qe(0));
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= n;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = m; i-- > 0;) {
      v[i] = qe(c % n);
      c /= n;
    }
    if (brute_is_presheaf(a, v)) out.push_back(v);
  }
  return out;
}

/// All of DD(A) when the search stays within `cap`, otherwise down-closures of `samples` random Ω-subsets of D(A).
inline std::vector<std::vector<QElem>> second_level(const PresheafCategory& da, Rng& rng, std::size_t samples = 60,
                                                    std::uint64_t cap = kDefaultCap) {
  try {
    return list_presheaves(da.cat, Direction::down, cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeLimitExceeded) throw;
  }
  const auto& q = da.cat.quantale();
  std::uniform_int_distribution<std::size_t> pick(0, q.size() - 1);
  std::bernoulli_distribution sparse(0.8);
  std::vector<std::vector<QElem>> out;
  for (std::size_t i = 0; i < samples; ++i) {
    OmegaSubset f{std::vector<QElem>(da.objects.size(), q.bot())};
    for (auto& v : f.values)
      if (!sparse(rng)) v = qe(pick(rng));
    out.push_back(down_closure(da.cat, f).values);
  }
  return out;
}

inline bool pointwise_leq(const Quantale& q, const std::vector<QElem>& a, const std::vector<QElem>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!q.leq(a[i], b[i])) return false;
  return true;
}

}  // namespace qcat::oracle
