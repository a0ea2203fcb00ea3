#include <doctest.h>

#include "chanmatch/subset_patterns.hpp"
#include "helpers.hpp"

using namespace chanmatch;
using namespace testutil;

namespace {

// Ground-truth set operations counted straight off the family.
long long direct_intersection(const SetFamily& f, uint32_t j) {
  long long c = 0;
  for (uint32_t m : f.members)
    if ((m & j) == j) ++c;
  return c;
}

long long direct_symdiff(const SetFamily& f, uint32_t j) {
  long long c = 0;
  for (uint32_t m : f.members)
    if (popcount_mask(m & j) & 1) ++c;
  return c;
}

SetFamily random_family(Rng& rng, int n, int max_ground) {
  SetFamily f;
  f.n = n;
  int ground = static_cast<int>(rng.upto(max_ground + 1));
  for (int g = 0; g < ground; ++g)
    f.members.push_back(1 + static_cast<uint32_t>(rng.upto((1 << n) - 1)));
  return f;
}

SubsetVector random_vector(Rng& rng, int n) {
  SubsetVector v(n);
  for (uint32_t m = 1; m <= v.mask_count(); ++m)
    v.at(m) = Rat(rng.upto(9) - 4, 1 + rng.upto(4));
  return v;
}

Rat sum_values(const SubsetVector& v) {
  Rat s(0);
  for (uint32_t m = 1; m <= v.mask_count(); ++m) s += v.at(m);
  return s;
}

}  // namespace

TEST_SUITE("subset_patterns") {

TEST_CASE("minterm counting") {
  SetFamily f{2, {0b01, 0b11, 0b10}};  // A = {e0, e1}, B = {e1, e2}
  CHECK(minterm_vector(f) == SubsetVector(2, {Rat(1), Rat(1), Rat(1)}));

  SubsetVector x = graded(3, {"4", "2", "1", "2", "1", "1", "1"});
  CHECK(minterm_vector(realize(x)) == x);

  CHECK(minterm_vector(SetFamily{3, {}}) == SubsetVector(3));
  CHECK_THROWS_AS(minterm_vector(SetFamily{2, {0}}), std::invalid_argument);
}

TEST_CASE("intersection transform") {
  SubsetVector ones(3, std::vector<Rat>(7, Rat(1)));
  CHECK(cap_transform(ones) == graded(3, {"4", "4", "4", "2", "2", "2", "1"}));

  SubsetVector x = graded(3, {"-1", "0", "0", "2", "1", "3", "4"});
  CHECK(cap_transform(x) == graded(3, {"6", "9", "8", "6", "5", "7", "4"}));

  SubsetVector top(3);
  top.at(7) = Rat(1);
  CHECK(cap_transform(top) == SubsetVector(3, std::vector<Rat>(7, Rat(1))));
}

TEST_CASE("symmetric-difference transform") {
  for (int n = 1; n <= 10; ++n) {
    SubsetVector ones(n, std::vector<Rat>((size_t{1} << n) - 1, Rat(1)));
    SubsetVector expected(n, std::vector<Rat>((size_t{1} << n) - 1, Rat(BigInt(1) << (n - 1), 1)));
    CHECK(sym_transform(ones) == expected);
  }

  SubsetVector x = graded(3, {"7/4", "3/4", "1/4", "3/4", "1/4", "1/4", "1/4"});
  CHECK(sym_transform(x) == graded(3, {"3", "2", "1", "3", "3", "2", "3"}));

  SubsetVector single(1, {R("5/3")});
  CHECK(sym_transform(single) == single);
}

TEST_CASE("transforms match direct counting on random families") {
  Rng rng(424242);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.upto(4));
    SetFamily f = random_family(rng, n, 12);
    SubsetVector x = minterm_vector(f);
    SubsetVector caps = cap_transform(x);
    SubsetVector syms = sym_transform(x);
    for (uint32_t j = 1; j < (uint32_t{1} << n); ++j) {
      CHECK(caps.at(j) == Rat(direct_intersection(f, j)));
      CHECK(syms.at(j) == Rat(direct_symdiff(f, j)));
    }
  }
}

TEST_CASE("transforms are linear") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng.upto(5));
    SubsetVector x = random_vector(rng, n), y = random_vector(rng, n);
    Rat a(rng.upto(7) - 3, 1 + rng.upto(3)), b(rng.upto(7) - 3, 1 + rng.upto(3));
    SubsetVector combo(n);
    for (uint32_t m = 1; m <= combo.mask_count(); ++m)
      combo.at(m) = a * x.at(m) + b * y.at(m);
    for (auto transform : {cap_transform, sym_transform}) {
      SubsetVector lhs = transform(combo);
      SubsetVector tx = transform(x), ty = transform(y);
      for (uint32_t m = 1; m <= combo.mask_count(); ++m)
        CHECK(lhs.at(m) == a * tx.at(m) + b * ty.at(m));
    }
  }
}

TEST_CASE("intersection inversion") {
  CHECK(solve_cap(graded(3, {"6", "9", "8", "6", "5", "7", "4"})) ==
        graded(3, {"-1", "0", "0", "2", "1", "3", "4"}));
  CHECK(solve_cap(graded(3, {"4", "4", "4", "2", "2", "2", "1"})) ==
        SubsetVector(3, std::vector<Rat>(7, Rat(1))));
}

TEST_CASE("symmetric-difference inversion goes through intersections") {
  SubsetVector delta = graded(3, {"3", "2", "1", "3", "3", "2", "3"});
  CHECK(sym_to_cap(delta) == graded(3, {"3", "2", "1", "1", "1/2", "1/2", "1/4"}));
  CHECK(solve_sym(delta) == graded(3, {"7/4", "3/4", "1/4", "3/4", "1/4", "1/4", "1/4"}));

  for (int n = 1; n <= 6; ++n) {
    SubsetVector halved(n, std::vector<Rat>((size_t{1} << n) - 1, Rat(BigInt(1) << (n - 1), 1)));
    CHECK(solve_sym(halved) == SubsetVector(n, std::vector<Rat>((size_t{1} << n) - 1, Rat(1))));
  }
}

TEST_CASE("both inversions are exact on random vectors") {
  Rng rng(90210);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng.upto(6));
    SubsetVector x = random_vector(rng, n);
    CHECK(solve_cap(cap_transform(x)) == x);
    CHECK(solve_sym(sym_transform(x)) == x);
  }
}

TEST_CASE("realizability is integrality plus nonnegativity") {
  CHECK_FALSE(check_realizable(graded(3, {"-1", "0", "0", "2", "1", "3", "4"})));
  CHECK_FALSE(check_realizable(graded(3, {"7/4", "3/4", "1/4", "3/4", "1/4", "1/4", "1/4"})));
  CHECK(check_realizable(graded(3, {"2", "0", "1", "2", "0", "1", "1"})));
}

TEST_CASE("realize lays out ground elements by ascending minterm") {
  SubsetVector x = graded(3, {"4", "2", "1", "2", "1", "1", "1"});
  SetFamily f = realize(x);
  CHECK(f.ground_size() == 12);
  CHECK(direct_intersection(f, 0b001) == 8);
  CHECK(direct_intersection(f, 0b010) == 6);
  CHECK(direct_intersection(f, 0b100) == 4);
  CHECK(std::is_sorted(f.members.begin(), f.members.end()));

  CHECK(realize(SubsetVector(2)) == SetFamily{2, {}});

  SubsetVector top(3);
  top.at(7) = Rat(1);
  CHECK(realize(top) == SetFamily{3, {7}});

  CHECK_THROWS_AS(realize(graded(3, {"-1", "0", "0", "2", "1", "3", "4"})), std::invalid_argument);

  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng.upto(4));
    SubsetVector v(n);
    for (uint32_t m = 1; m <= v.mask_count(); ++m) v.at(m) = Rat(rng.upto(4));
    CHECK(minterm_vector(realize(v)) == v);
  }
}

TEST_CASE("scale and shift repair fractional or negative solutions") {
  ScalingWitness w = scale_shift(graded(3, {"7/4", "3/4", "1/4", "3/4", "1/4", "1/4", "1/4"}));
  CHECK(w.m == Rat(4));
  CHECK(w.r == Rat(0));
  CHECK(w.k == Rat(0));
  CHECK(w.x_prime == graded(3, {"7", "3", "1", "3", "1", "1", "1"}));

  SubsetVector already = graded(3, {"2", "0", "1", "2", "0", "1", "1"});
  ScalingWitness w2 = scale_shift(already);
  CHECK(w2.m == Rat(1));
  CHECK(w2.r == Rat(0));
  CHECK(w2.x_prime == already);

  ScalingWitness w3 = scale_shift(graded(3, {"-1", "0", "0", "2", "1", "3", "4"}));
  CHECK(w3.m == Rat(1));
  CHECK(w3.r == Rat(1));
  CHECK(w3.k == Rat(4));
  CHECK(w3.x_prime == graded(3, {"0", "1", "1", "3", "2", "4", "5"}));
  SubsetVector shifted = sym_transform(w3.x_prime);
  SubsetVector base = sym_transform(graded(3, {"-1", "0", "0", "2", "1", "3", "4"}));
  for (uint32_t m = 1; m <= shifted.mask_count(); ++m)
    CHECK(shifted.at(m) == base.at(m) + Rat(4));
}

TEST_CASE("scale and shift always yields an equivalent realizable pattern") {
  Rng rng(60601);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 1 + static_cast<int>(rng.upto(5));
    SubsetVector x = random_vector(rng, n);
    ScalingWitness w = scale_shift(x);
    CHECK(w.m.is_integer());
    CHECK(w.m.sign() > 0);
    CHECK(check_realizable(w.x_prime));
    SubsetVector lhs = sym_transform(w.x_prime);
    SubsetVector rhs = sym_transform(x);
    std::vector<Rat> lcol, rcol;
    for (uint32_t m = 1; m <= lhs.mask_count(); ++m) {
      CHECK(lhs.at(m) == w.m * rhs.at(m) + w.k);
      lcol.push_back(lhs.at(m));
      rcol.push_back(rhs.at(m));
    }
    for (size_t i = 0; i < lcol.size(); ++i)
      CHECK(oracle_rank(lcol, lcol[i], false) == oracle_rank(rcol, rcol[i], false));
  }
}

TEST_CASE("bounded pattern search with a black-box condition") {
  // |A1 sym A2| = 3 as a linear row; the power conditions as a predicate.
  std::vector<PatternConstraint> constraints{{0b011, PatternConstraint::Kind::Sym, Rat(3)}};
  auto predicate = [](const SubsetVector& x) {
    Rat a1 = x.at(1) + x.at(3) + x.at(5) + x.at(7);
    Rat a3 = x.at(4) + x.at(5) + x.at(6) + x.at(7);
    Rat a12 = x.at(3) + x.at(7);
    if (!a1.is_integer() || a1.sign() < 0) return false;
    BigInt power = 1;
    for (BigInt t = 0; t < a1.numerator(); ++t) {
      power *= a3.numerator();
      if (power > 27) return false;
    }
    return power == 27 && a12 * a12 == Rat(9);
  };
  auto family = search_realization(3, constraints, predicate, 3);
  REQUIRE(family.has_value());
  SubsetVector found = minterm_vector(*family);
  CHECK(predicate(found));
  CHECK(found == SubsetVector(3, {Rat(0), Rat(0), Rat(3), Rat(0), Rat(0), Rat(3), Rat(0)}));
}

TEST_CASE("pattern search rejects fractional targets") {
  std::vector<PatternConstraint> constraints{
      {0b01, PatternConstraint::Kind::Cap, Rat(1)},
      {0b10, PatternConstraint::Kind::Cap, Rat(1)},
      {0b11, PatternConstraint::Kind::Cap, R("1/2")},
  };
  CHECK_FALSE(search_realization(2, constraints).has_value());
}

TEST_CASE("pattern search edge cases") {
  auto empty = search_realization(3, {});
  REQUIRE(empty.has_value());
  CHECK(empty->ground_size() == 0);

  CHECK_THROWS_AS(search_realization(6, {}), std::invalid_argument);
  // No bound and no singleton values: rejected as unbounded.
  std::vector<PatternConstraint> only_pair{{0b11, PatternConstraint::Kind::Cap, Rat(1)}};
  CHECK_THROWS_AS(search_realization(2, only_pair), std::invalid_argument);

  // Fully constrained intersections find the unique solution.
  std::vector<PatternConstraint> full{
      {0b01, PatternConstraint::Kind::Cap, Rat(2)},
      {0b10, PatternConstraint::Kind::Cap, Rat(1)},
      {0b11, PatternConstraint::Kind::Cap, Rat(1)},
  };
  auto family = search_realization(2, full);
  REQUIRE(family.has_value());
  CHECK(minterm_vector(*family) == SubsetVector(2, {Rat(1), Rat(0), Rat(1)}));
}

TEST_CASE("full symmetric-difference patterns steer the search to the unique solution") {
  Rng rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(rng.upto(3));
    SetFamily f = random_family(rng, n, 8);
    SubsetVector x = minterm_vector(f);
    SubsetVector target = sym_transform(x);
    std::vector<PatternConstraint> constraints;
    for (uint32_t j = 1; j < (uint32_t{1} << n); ++j)
      constraints.push_back({j, PatternConstraint::Kind::Sym, target.at(j)});
    auto found = search_realization(n, constraints);
    REQUIRE(found.has_value());
    CHECK(minterm_vector(*found) == x);
  }
}

TEST_CASE("sum of a realized pattern is the ground size") {
  SubsetVector x = graded(3, {"4", "2", "1", "2", "1", "1", "1"});
  CHECK(Rat(realize(x).ground_size()) == sum_values(x));
}

}  // TEST_SUITE
