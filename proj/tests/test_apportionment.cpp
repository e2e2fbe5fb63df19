#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "seatlab/apportionment.hpp"

using namespace seatlab;

namespace {

using Set = OutcomeSet<SeatDistribution>;

void small_grid(const std::function<void(const ApportionmentInstance&)>& visit) {
  for (int p = 1; p <= 3; ++p) {
    std::vector<std::int64_t> v(p, 1);
    std::function<void(int)> rec = [&](int i) {
      if (i == p) {
        for (int h = 1; h <= 6; ++h) visit(ApportionmentInstance(v, h));
        return;
      }
      for (std::int64_t x = 1; x <= 8; ++x) {
        v[i] = x;
        rec(i + 1);
      }
    };
    rec(0);
  }
}

}  // namespace

TEST_CASE("move_seat") {
  CHECK(move_seat({0, 0, 4, 6}, 3, 2) == SeatDistribution{0, 0, 5, 5});
  CHECK(move_seat({1, 0}, 0, 1) == SeatDistribution{0, 1});
  CHECK_THROWS_AS(move_seat({2, 2, 2}, 1, 1), PreconditionError);
  CHECK_THROWS_AS(move_seat({0, 2}, 0, 1), PreconditionError);
  CHECK_THROWS_AS(move_seat({1, 2}, 0, 2), PreconditionError);
}

TEST_CASE("divisor methods on the four-party example") {
  const ApportionmentInstance inst({6, 7, 39, 48}, 10);
  CHECK(divisor_apportion(inst, DivisorSequence::dhondt()) == Set{{0, 0, 4, 6}});
  CHECK(divisor_apportion(inst, DivisorSequence::sainte_lague()) == Set{{1, 1, 4, 4}});
  CHECK(divisor_apportion(ApportionmentInstance({1, 1}, 1), DivisorSequence::dhondt()) == Set{{0, 1}, {1, 0}});
}

TEST_CASE("largest remainder examples") {
  CHECK(largest_remainder(ApportionmentInstance({6, 7, 39, 48}, 10)) == Set{{0, 1, 4, 5}});
  CHECK(largest_remainder(ApportionmentInstance({50, 50}, 2)) == Set{{1, 1}});
  CHECK(largest_remainder(ApportionmentInstance({1, 1, 1}, 2)) == Set{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
}

TEST_CASE("divisor engine matches the max-min characterisation") {
  std::mt19937_64 rng(11);
  std::vector<DivisorSequence> methods = {DivisorSequence::dhondt(), DivisorSequence::sainte_lague()};
  for (int n = 0; n < 3; ++n) {
    std::vector<Rational> w{Rational(1)};
    for (int j = 1; j < 6; ++j) w.push_back(w.back() * Rational(1 + rng() % 3, 3));
    methods.push_back(DivisorSequence::from_weights(WeightSequence::explicit_sequence(w, w.back() / 2)));
  }
  methods.push_back(DivisorSequence::explicit_sequence({Rational(1, 3), Rational(2)}, Rational(3), Rational(1, 2)));
  small_grid([&](const ApportionmentInstance& inst) {
    for (const auto& ds : methods) {
      const auto expected = oracle::divisor(inst, [&](int s) { return ds.at(s); });
      CHECK_MESSAGE(divisor_apportion(inst, ds) == expected, ds.name() << " " << to_string(inst));
    }
  });
}

TEST_CASE("largest remainder matches the brute-force definition") {
  small_grid([](const ApportionmentInstance& inst) {
    CHECK_MESSAGE(largest_remainder(inst) == oracle::largest_remainder(inst), to_string(inst));
  });
}

TEST_CASE("impervious D'Hondt gives the first seats to the largest parties") {
  // Every party gets an infinite first claim, ordered by votes.
  const ApportionmentInstance inst({5, 9, 2, 9}, 2);
  CHECK(divisor_apportion(inst, DivisorSequence::dhondt().impervious()) == Set{{0, 1, 0, 1}});
  const ApportionmentInstance tie({5, 9, 5, 1}, 2);
  CHECK(divisor_apportion(tie, DivisorSequence::dhondt().impervious()) == Set{{1, 1, 0, 0}, {0, 1, 1, 0}});
  // With more seats than parties every party is seated.
  for (const auto& x : divisor_apportion(ApportionmentInstance({1, 100, 3}, 5), DivisorSequence::dhondt().impervious())) {
    for (int s : x) CHECK(s >= 1);
  }
}

TEST_CASE("divisor methods are scale invariant and permutation equivariant") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 2 + static_cast<int>(rng() % 3);
    std::vector<std::int64_t> v(p);
    for (auto& x : v) x = 1 + static_cast<std::int64_t>(rng() % 30);
    const int h = 1 + static_cast<int>(rng() % 8);
    const ApportionmentInstance inst(v, h);
    for (const auto& ds : {DivisorSequence::dhondt(), DivisorSequence::sainte_lague()}) {
      const auto base = divisor_apportion(inst, ds);
      std::vector<std::int64_t> scaled = v;
      for (auto& x : scaled) x *= 7;
      CHECK(divisor_apportion(ApportionmentInstance(scaled, h), ds) == base);

      std::vector<std::int64_t> reversed(v.rbegin(), v.rend());
      Set mirrored;
      for (auto x : base) {
        std::reverse(x.begin(), x.end());
        mirrored.insert(x);
      }
      CHECK(divisor_apportion(ApportionmentInstance(reversed, h), ds) == mirrored);
    }
    const auto lr = largest_remainder(inst);
    std::vector<std::int64_t> scaled = v;
    for (auto& x : scaled) x *= 3;
    CHECK(largest_remainder(ApportionmentInstance(scaled, h)) == lr);
  }
}

TEST_CASE("D'Hondt is house monotone") {
  small_grid([](const ApportionmentInstance& inst) {
    const ApportionmentInstance bigger(std::vector<std::int64_t>(inst.votes().begin(), inst.votes().end()),
                                       inst.seats() + 1);
    const auto small = divisor_apportion(inst, DivisorSequence::dhondt());
    for (const auto& y : divisor_apportion(bigger, DivisorSequence::dhondt())) {
      const bool dominates = std::any_of(small.begin(), small.end(), [&](const SeatDistribution& x) {
        for (std::size_t i = 0; i < x.size(); ++i)
          if (y[i] < x[i]) return false;
        return true;
      });
      CHECK(dominates);
    }
  });
}

TEST_CASE("tie enumeration is capped") {
  const ApportionmentInstance flat(std::vector<std::int64_t>(20, 1), 10);
  CHECK_THROWS_AS(divisor_apportion(flat, DivisorSequence::dhondt()), TieExplosionError);
  CHECK_THROWS_AS(largest_remainder(flat), TieExplosionError);
  ApportionOptions wide;
  wide.max_outcomes = 200'000;
  CHECK(divisor_apportion(flat, DivisorSequence::dhondt(), wide).size() == 184756);
}

TEST_CASE("complete_ties") {
  CHECK(complete_ties({1, 0, 0}, {0, 1, 1}, 1, 10) == Set{{1, 1, 0}, {1, 0, 1}});
  CHECK(complete_ties({0, 0}, {2, 2}, 2, 10) == Set{{2, 0}, {1, 1}, {0, 2}});
  CHECK_THROWS_AS(complete_ties({0, 0, 0}, {1, 1, 1}, 2, 2), TieExplosionError);
}
