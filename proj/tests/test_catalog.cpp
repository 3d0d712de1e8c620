#include <gtest/gtest.h>

#include <map>

#include "helpers.hpp"
#include "schur/catalog.hpp"
#include "schur/multiplier.hpp"

using namespace schur;
using namespace schur::testing;

TEST(Catalog, RecognizesNamedGroups) {
  EXPECT_EQ(recognize(catalog::q8()), IsoType(ES2{1, 1, 0}));
  EXPECT_EQ(recognize(catalog::d8()), IsoType(ES2{0, 1, 0}));
  for (int m = 1; m <= 3; ++m)
    for (int arf = 0; arf <= 1; ++arf)
      EXPECT_EQ(recognize(catalog::es2(m, arf)), IsoType(ES2{arf, m, 0}));
  for (int p : {3, 5, 7})
    for (int m = 1; m <= 2; ++m)
      for (int e = 1; e <= 2; ++e)
        EXPECT_EQ(recognize(catalog::es_odd(p, m, e)), IsoType(ESodd{e, m, 0}));
  EXPECT_EQ(recognize(catalog::elem_abelian(5, 3)), IsoType(ElementaryAbelian{3}));
  EXPECT_EQ(recognize(direct_product(catalog::es_odd(3, 1, 2), catalog::elem_abelian(3, 2))),
            IsoType(ESodd{2, 1, 2}));
  EXPECT_EQ(recognize(direct_product(catalog::q8(), catalog::elem_abelian(2, 1))), IsoType(ES2{1, 1, 1}));
  EXPECT_THROW(recognize(catalog::phi4_1_5(3)), Unsupported);
}

TEST(Catalog, ArfInvariantMatchesNormalForm) {
  // Q8 x Q8 and D8 x D8 are both of Arf 0; D8 x Q8 has Arf 1
  const Presentation dd = catalog::es2(2, 0), dq = catalog::es2(2, 1);
  EXPECT_EQ(recognize(dd), IsoType(ES2{0, 2, 0}));
  EXPECT_EQ(recognize(dq), IsoType(ES2{1, 2, 0}));
  // the central product of two Q8 is D8 o D8
  Presentation qq(Modulus(2), 4, 1);
  const Vector one = Vector::from_ints(Modulus(2), {1});
  qq.set_comm(0, 1, one);
  qq.set_comm(2, 3, one);
  for (int i = 0; i < 4; ++i)
    qq.set_power(i, one);
  EXPECT_EQ(recognize(qq), IsoType(ES2{0, 2, 0}));
  // counting definition on the forms xy and x^2 + xy + y^2
  EXPECT_EQ(arf_by_count(2, [](unsigned long long m) { return (m & 1) & (m >> 1); }), 0);
  EXPECT_EQ(arf_by_count(2, [](unsigned long long m) { return ((m & 1) | (m >> 1)) & 1; }), 1);
}

TEST(Catalog, RecognitionIsBasisInvariant) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const Modulus mod(trial % 3 == 0 ? 2 : (trial % 3 == 1 ? 3 : 5));
    const int d = 2 + trial % 4;
    const Presentation P = random_presentation(rng, mod, d, 1);
    const Presentation Q = transform(P, random_invertible(rng, mod, d), random_invertible(rng, mod, 1));
    EXPECT_EQ(describe(recognize(P)), describe(recognize(Q)));
  }
}

TEST(Catalog, RecognitionAgreesWithMultiplierOrder) {
  // |M(ES_p(p^3))| = p^2, |M(ES_{p^2}(p^3))| = 1, |M(D8)| = 2, |M(Q8)| = 1
  for (int p : {3, 5}) {
    EXPECT_EQ(multiplier_invariants(catalog::es_odd(p, 1, 1)).order_exponent, 2);
    EXPECT_EQ(multiplier_invariants(catalog::es_odd(p, 1, 2)).order_exponent, 0);
  }
  EXPECT_EQ(multiplier_invariants(catalog::d8()).order_exponent, 1);
  EXPECT_EQ(multiplier_invariants(catalog::q8()).order_exponent, 0);
}

TEST(Catalog, PencilTypes) {
  for (int p : {3, 5, 7, 11}) {
    EXPECT_EQ(pencil_type(catalog::phi12_1_6(p)), PencilType::split) << p;
    EXPECT_EQ(pencil_type(catalog::phi13_1_6(p)), PencilType::square) << p;
    EXPECT_EQ(pencil_type(catalog::phi15_1_6(p)), PencilType::irreducible) << p;
  }
  EXPECT_THROW(pencil_type(catalog::phi4_1_5(3)), Unsupported);
}

TEST(Catalog, PencilTypeIsBasisInvariant) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 1000; ++trial) {
    const Modulus mod(trial % 2 ? 3 : 5);
    const Presentation P = random_presentation(rng, mod, 4, 2);
    const Presentation Q = transform(P, random_invertible(rng, mod, 4), random_invertible(rng, mod, 2));
    EXPECT_EQ(pencil_type(P), pencil_type(Q));
  }
}

TEST(Catalog, NamedConstructorsValidateArguments) {
  EXPECT_THROW(make_named("phi4_1_5", {}), ValidationError);
  EXPECT_THROW(make_named("phi4_1_5", {2}), ValidationError);
  EXPECT_THROW(make_named("q8", {3}), ValidationError);
  EXPECT_THROW(make_named("es_odd", {3, 0, 1}), ValidationError);
  EXPECT_EQ(make_named("q8", {2}), catalog::q8());
  EXPECT_EQ(make_named("es2", {2, 1, 1}), catalog::q8());
  EXPECT_EQ(make_named("t_group", {5}), catalog::t_group(5));
  const std::map<std::string, std::vector<int>> args = {
      {"q8", {}},         {"d8", {}},          {"es_odd", {3, 1, 1}}, {"es2", {1, 0}},
      {"elem_abelian", {3, 2}}, {"phi4_1_5", {3}}, {"phi12_1_6", {3}}, {"phi13_1_6", {3}},
      {"phi15_1_6", {3}}, {"t_group", {3}}};
  for (const std::string& name : catalog_names())
    EXPECT_NO_THROW(make_named(name, args.at(name))) << name;
}
