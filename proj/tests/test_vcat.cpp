#include <gtest/gtest.h>

#include "qcat/functor.hpp"
#include "qcat/vcat.hpp"
#include "support.hpp"

using namespace qcat;
using qcat::oracle::Rng;

namespace {

// Direct double/triple loop oracle for the two category axioms.
bool oracle_is_category(const Quantale& q, const Square<QElem>& hom) {
  const std::size_t m = hom.size();
  for (std::size_t a = 0; a < m; ++a)
    if (!q.leq(q.unit(), hom(a, a))) return false;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (!q.leq(q.tensor(hom(a, b), hom(b, c)), hom(a, c))) return false;
  return true;
}

}  // namespace

TEST(VCat, StandardExamplesValidate) {
  for (const auto& n : builtin_names()) EXPECT_NO_THROW(omega_self(builtin_ptr(n))) << n;
  EXPECT_NO_THROW(discrete(builtin_ptr("two"), 3));
  auto empty = discrete(builtin_ptr("lukasiewicz3"), 0);
  EXPECT_EQ(empty.size(), 0u);
  auto m = builtin_ptr("m3");
  auto one = discrete(m, 1);
  EXPECT_EQ(one.hom(obj(0), obj(0)), m->unit());
  EXPECT_NE(one.hom(obj(0), obj(0)), m->top());
}

TEST(VCat, ReflexivityViolation) {
  auto q = builtin_ptr("two");
  Square<QElem> hom(2, q->top());
  hom(1, 1) = q->bot();
  try {
    VCat::validate(q, "bad", {"a", "b"}, hom);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ReflexivityViolation);
    EXPECT_EQ(e.witness(), std::vector<std::string>{"b"});
  }
}

TEST(VCat, ValidationMatchesOracleOnRandomMatrices) {
  Rng rng(7);
  for (const char* name : {"two", "sugihara3", "lukasiewicz3", "m3"}) {
    auto q = builtin_ptr(name);
    std::uniform_int_distribution<std::size_t> pick(0, q->size() - 1), size(0, 3);
    std::size_t accepted = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t m = size(rng);
      Square<QElem> hom(m, QElem{});
      for (std::size_t i = 0; i < m * m; ++i) hom(i / m, i % m) = qe(pick(rng));
      bool ok = true;
      try {
        VCat::validate(q, "r", numbered_names("a", m), hom);
      } catch (const Error&) {
        ok = false;
      }
      EXPECT_EQ(ok, oracle_is_category(*q, hom)) << name;
      accepted += ok;
    }
    EXPECT_GT(accepted, 0u) << name;
  }
}

TEST(VCat, OrderOfOmegaIsItsLatticeOrder) {
  for (const auto& n : builtin_names()) {
    auto q = builtin_ptr(n);
    auto o = analyze_order(omega_self(q));
    EXPECT_EQ(o.leq, q->lattice().order()) << n;
    EXPECT_TRUE(o.skeletal);
  }
}

TEST(VCat, DiscreteAndIndiscrete) {
  auto q = builtin_ptr("two");
  auto d = analyze_order(discrete(q, 2));
  EXPECT_TRUE(d.skeletal);
  EXPECT_TRUE(d.le(obj(0), obj(0)));
  EXPECT_FALSE(d.le(obj(0), obj(1)));

  auto all = VCat::validate(q, "i", {"a", "b"}, Square<QElem>(2, q->top()));
  auto o = analyze_order(all);
  EXPECT_FALSE(o.skeletal);
  ASSERT_TRUE(o.witness);
  EXPECT_EQ(o.witness->first, obj(0));
  EXPECT_EQ(o.witness->second, obj(1));
  auto s = skeletalize(all);
  EXPECT_EQ(s.cat.size(), 1u);
  EXPECT_EQ(s.representative, (std::vector<ObjId>{obj(0), obj(0)}));
}

TEST(VCat, TwoCategoriesArePreorders) {
  auto q = builtin_ptr("two");
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto a = oracle::random_category(q, 1 + i % 4, rng);
    auto o = analyze_order(a);
    bool antisymmetric = true;
    for (ObjId x : a.objects())
      for (ObjId y : a.objects()) {
        EXPECT_EQ(o.le(x, y), a.hom(x, y) == q->top());
        if (x != y && o.le(x, y) && o.le(y, x)) antisymmetric = false;
      }
    EXPECT_EQ(o.skeletal, antisymmetric);
    // from_order round-trips the induced preorder
    EXPECT_EQ(from_order(q, a.name(), a.names(), o.leq), a);
    EXPECT_TRUE(is_skeletal(skeletalize(a).cat));
  }
}

TEST(VCat, Opposite) {
  auto q = builtin_ptr("two");
  auto d = discrete(q, 3);
  EXPECT_EQ(opposite(d).hom_table(), d.hom_table());
  auto c = chain(q, 2);
  auto o = analyze_order(opposite(c));
  EXPECT_TRUE(o.le(obj(1), obj(0)));
  EXPECT_FALSE(o.le(obj(0), obj(1)));
  for (const auto& a : oracle::random_categories(builtin_ptr("sugihara3"), 50, 4, 3))
    EXPECT_EQ(opposite(opposite(a)).hom_table(), a.hom_table());
}

TEST(VFunctor, IdentityIsContinuousAndCocontinuous) {
  for (const auto& n : builtin_names()) {
    auto a = omega_self(builtin_ptr(n));
    auto id = a.objects();
    auto r = check_functor(a, a, id);
    EXPECT_TRUE(r.is_functor && r.is_continuous && r.is_cocontinuous) << n;
  }
}

TEST(VFunctor, ConstantBelowTopIsNotContinuous) {
  auto q = builtin_ptr("heyting3");
  auto a = omega_self(q);
  std::vector<ObjId> constant(a.size(), obj(1));
  auto r = check_functor(a, a, constant);
  EXPECT_TRUE(r.is_functor);
  EXPECT_FALSE(r.is_continuous);
  EXPECT_NE(r.continuity_witness.find("top"), std::string::npos);
}

TEST(VFunctor, NonCocompleteTargetIsRejected) {
  auto q = builtin_ptr("two");
  auto d = discrete(q, 2);
  auto id = d.objects();
  EXPECT_THROW(check_functor(d, d, id), Error);
  EXPECT_TRUE(check_functor(d, d, id, false).is_functor);
}

TEST(VFunctor, FunctorsCompose) {
  auto q = builtin_ptr("sugihara3");
  Rng rng(5);
  auto cats = oracle::random_categories(q, 30, 3, 9);
  std::size_t composed = 0;
  for (std::size_t i = 0; i + 2 < cats.size(); ++i) {
    const VCat& a = cats[i];
    const VCat& b = cats[i + 1];
    const VCat& c = cats[i + 2];
    std::uniform_int_distribution<std::size_t> pb(0, b.size() - 1), pc(0, c.size() - 1);
    for (int t = 0; t < 30; ++t) {
      std::vector<ObjId> f(a.size()), g(b.size()), gf(a.size());
      for (auto& x : f) x = obj(pb(rng));
      for (auto& x : g) x = obj(pc(rng));
      for (std::size_t x = 0; x < a.size(); ++x) gf[x] = g[f[x].index];
      if (is_functor(a, b, f) && is_functor(b, c, g)) {
        EXPECT_TRUE(is_functor(a, c, gf));
        ++composed;
      }
    }
  }
  EXPECT_GT(composed, 0u);
}

TEST(FunctorCategory, MapsFromTwoPointsIntoTwo) {
  auto q = builtin_ptr("two");
  auto fc = functor_category(discrete(q, 2), omega_self(q));
  ASSERT_EQ(fc.cat.size(), 4u);
  auto o = analyze_order(fc.cat);
  // Boolean square: f ≤ g iff pointwise
  for (std::size_t f = 0; f < 4; ++f)
    for (std::size_t g = 0; g < 4; ++g) {
      bool pointwise = true;
      for (std::size_t x = 0; x < 2; ++x)
        if (fc.functors[f][x].index > fc.functors[g][x].index) pointwise = false;
      EXPECT_EQ(o.le(obj(f), obj(g)), pointwise);
    }
}

TEST(FunctorCategory, FromUnitIsTarget) {
  for (const auto& b : oracle::random_categories(builtin_ptr("lukasiewicz3"), 20, 3, 17)) {
    auto fc = functor_category(discrete(b.quantale_ptr(), 1), b);
    ASSERT_EQ(fc.cat.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(fc.functors[i][0], obj(i));
    EXPECT_EQ(fc.cat.hom_table(), b.hom_table());
  }
}

TEST(FunctorCategory, OrderIsNaturalTransformationOrder) {
  auto q = builtin_ptr("sugihara3");
  for (const auto& a : oracle::random_categories(q, 10, 2, 21)) {
    auto b = omega_self(q);
    auto fc = functor_category(a, b);
    auto o = analyze_order(fc.cat);
    for (std::size_t f = 0; f < fc.cat.size(); ++f)
      for (std::size_t g = 0; g < fc.cat.size(); ++g) {
        bool nat = true;
        for (ObjId x : a.objects())
          if (!q->leq(q->unit(), b.hom(fc.functors[f][x.index], fc.functors[g][x.index]))) nat = false;
        EXPECT_EQ(o.le(obj(f), obj(g)), nat);
      }
  }
}
