#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "seatlab/multiwinner.hpp"

using namespace seatlab;

namespace {

using Committees = OutcomeSet<Committee>;

// The 12-voter profile from data/owa_demo.json, 0-based.
ApprovalProfile owa_demo() {
  return ApprovalProfile(6, {{0},
                             {0, 2, 4},
                             {0, 4, 5},
                             {0, 4, 5},
                             {0, 3, 4, 5},
                             {0, 3, 4, 5},
                             {0, 3},
                             {1, 3, 5},
                             {1},
                             {2, 4},
                             {2},
                             {2}});
}

// The 5-voter profile from data/phragmen_demo.json, 0-based.
ApprovalProfile phragmen_demo() { return ApprovalProfile(4, {{0}, {1}, {1, 2}, {0, 1, 2}, {3}}); }

ApprovalProfile random_profile(std::mt19937_64& rng, int m, int n) {
  std::vector<std::vector<int>> ballots(n);
  for (auto& b : ballots) {
    for (int c = 0; c < m; ++c) {
      if (rng() % 3 == 0) b.push_back(c);
    }
  }
  return ApprovalProfile(m, ballots);
}

// Sequential OWA straight from its definition: all greedy paths.
Committees seq_oracle(const ApprovalProfile& profile, int k, const WeightSequence& ws) {
  std::set<std::uint64_t> frontier{0};
  for (int round = 0; round < k; ++round) {
    std::set<std::uint64_t> next;
    for (auto mask : frontier) {
      const Rational here = oracle::owa_value(profile, mask, ws);
      Rational best_gain = -1;
      std::vector<std::uint64_t> picks;
      for (int c = 0; c < profile.num_candidates(); ++c) {
        if ((mask >> c) & 1) continue;
        const std::uint64_t grown = mask | (std::uint64_t{1} << c);
        const Rational gain = oracle::owa_value(profile, grown, ws) - here;
        if (gain > best_gain) {
          best_gain = gain;
          picks.clear();
        }
        if (gain == best_gain) picks.push_back(grown);
      }
      next.insert(picks.begin(), picks.end());
    }
    frontier = std::move(next);
  }
  Committees out;
  for (auto mask : frontier) out.insert(from_mask(mask));
  return out;
}

}  // namespace

TEST_CASE("binomial_capped") {
  CHECK(binomial_capped(6, 3, 100) == 20);
  CHECK(binomial_capped(40, 10, 1000) == 1001);
  CHECK(binomial_capped(5, 0, 10) == 1);
  CHECK(binomial_capped(3, 4, 10) == 0);
}

TEST_CASE("OWA rules on the 12-voter profile") {
  const auto profile = owa_demo();
  CHECK(owa_satisfaction(profile, {0, 2, 5}, WeightSequence::pav()) == Rational(27, 2));
  CHECK(owa_satisfaction(profile, {0, 1, 2}, WeightSequence::chamberlin_courant()) == 12);
  CHECK(owa_satisfaction(profile, {}, WeightSequence::pav()) == 0);

  const auto pav = owa_winners(profile, 3, WeightSequence::pav());
  CHECK(pav.committees == Committees{{0, 2, 5}});
  CHECK(pav.score == Rational(27, 2));
  CHECK(owa_winners(profile, 3, WeightSequence::chamberlin_courant()).committees == Committees{{0, 1, 2}});
  CHECK(owa_winners(profile, 3, WeightSequence::top_k()).committees == Committees{{0, 4, 5}});
  CHECK(seq_owa_winners(profile, 3, WeightSequence::pav()).committees == Committees{{0, 2, 4}, {0, 2, 5}});
  CHECK(seq_owa_winners(profile, 6, WeightSequence::pav()).committees == Committees{{0, 1, 2, 3, 4, 5}});
}

TEST_CASE("Monroe on the 12-voter profile") {
  const auto profile = owa_demo();
  CHECK(monroe_satisfaction(profile, {0, 1, 2}) == 10);
  CHECK(monroe_satisfaction(profile, {0, 2, 3}) == 11);
  CHECK(monroe_satisfaction(profile, {0, 2, 5}) == 11);
  const auto w = monroe_winners(profile, 3);
  // {c1,c3,c6} ties with {c1,c3,c4}; the value was confirmed by an external max-flow brute force.
  CHECK(w.committees == Committees{{0, 2, 3}, {0, 2, 5}});
  CHECK(w.score == 11);
  CHECK_THROWS_AS(monroe_satisfaction(profile, {0, 1, 2, 3, 4}), DivisibilityError);

  const ApprovalProfile all(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  CHECK(monroe_satisfaction(all, {0, 1, 2}) == 3);
  const ApprovalProfile singles(4, {{0}, {1}, {2}});
  CHECK(monroe_winners(singles, 3).committees == Committees{{0, 1, 2}});
}

TEST_CASE("Phragmen rules on the 5-voter profile") {
  const auto profile = phragmen_demo();
  CHECK(min_max_load(profile, {0, 1, 2}) == Rational(3, 4));
  CHECK(min_max_load(profile, {0, 1, 3}) == 1);
  const auto maxp = max_phragmen_winners(profile, 3);
  CHECK(maxp.committees == Committees{{0, 1, 2}});
  CHECK(maxp.score == Rational(3, 4));

  const auto r = Rational(1, 2);
  CHECK(balanced_loads(profile, {0, 1, 3}) == VoterLoadVector{r, r, r, r, Rational(1)});
  const auto q = Rational(3, 4);
  CHECK(balanced_loads(profile, {0, 1, 2}) == VoterLoadVector{q, q, q, q, Rational(0)});
  CHECK(sum_of_squares(balanced_loads(profile, {0, 1, 2})) == Rational(9, 4));
  const auto varp = var_phragmen_winners(profile, 3);
  CHECK(varp.committees == Committees{{0, 1, 3}});
  CHECK(varp.score == 2);

  const ApprovalProfile solo(3, {{0, 1, 2}});
  CHECK(min_max_load(solo, {0, 1, 2}) == 3);
  CHECK(balanced_loads(solo, {0, 1, 2}) == VoterLoadVector{Rational(3)});
  CHECK(max_phragmen_winners(solo, 3).committees == Committees{{0, 1, 2}});
  CHECK(var_phragmen_winners(ApprovalProfile(1, {{0}, {0}}), 1).committees == Committees{{0}});
  const ApprovalProfile unsupported(3, {{0}, {0, 1}});
  CHECK_THROWS_AS(min_max_load(unsupported, {0, 2}), InfeasibleError);
  CHECK_THROWS_AS(balanced_loads(unsupported, {1, 2}), InfeasibleError);
  CHECK(max_phragmen_winners(unsupported, 2).committees == Committees{{0, 1}});
  CHECK_THROWS_AS(var_phragmen_winners(unsupported, 3), InfeasibleError);
}

TEST_CASE("load distributions") {
  const auto profile = phragmen_demo();
  const auto h = Rational(1, 2);
  // Half loads on c1 and c2, voter 5 carries c4 alone.
  LoadDistribution fig{{{h, 0, 0, 0}, {0, h, 0, 0}, {0, h, 0, 0}, {h, 0, 0, 0}, {0, 0, 0, Rational(1)}}};
  CHECK(validate_load(profile, 3, fig));
  LoadDistribution zero{std::vector<std::vector<Rational>>(5, std::vector<Rational>(4, Rational(0)))};
  CHECK_FALSE(validate_load(profile, 3, zero));
  auto misplaced = fig;
  misplaced.loads[0][0] = 0;
  misplaced.loads[1][0] = h;  // voter 2 does not approve c1
  CHECK_FALSE(validate_load(profile, 3, misplaced));
  auto wrong_k = fig;
  CHECK_FALSE(validate_load(profile, 2, wrong_k));

  for (const Committee& s : {Committee{0, 1, 2}, Committee{0, 1, 3}, Committee{1, 2, 3}}) {
    const auto dist = balanced_load_distribution(profile, s);
    CHECK(validate_load(profile, 3, dist));
    const auto y = balanced_loads(profile, s);
    for (int i = 0; i < profile.num_voters(); ++i) {
      Rational row = 0;
      for (const auto& cell : dist.loads[i]) row += cell;
      CHECK(row == y[i]);
    }
  }
}

TEST_CASE("SAV and MAV on the 12-voter profile") {
  const auto profile = owa_demo();
  // Exhaustive scoring of all 20 committees done outside the library.
  const auto sav = sav_winners(profile, 3);
  CHECK(sav.committees == Committees{{0, 2, 4}});
  CHECK(sav.score == Rational(47, 6));
  const auto mav = mav_winners(profile, 3);
  CHECK(mav.score == 4);
  CHECK(mav.committees == Committees{{0, 1, 4}, {0, 2, 3}, {0, 2, 5}, {0, 3, 4}, {0, 4, 5},
                                     {1, 3, 4}, {2, 3, 4}, {2, 3, 5}, {3, 4, 5}});
  CHECK(sav_score(ApprovalProfile(2, {{}, {0, 1}}), {0}) == Rational(1, 2));
  CHECK(mav_winners(ApprovalProfile(4, {{1, 3}}), 2).committees == Committees{{1, 3}});
  CHECK(sav_winners(ApprovalProfile(4, {{0}, {1}, {1}, {2}, {2}, {3}}), 2).committees == Committees{{1, 2}});
  CHECK(sav_winners(ApprovalProfile(3, {{0}, {1}, {2}}), 2).committees == Committees{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("rules agree with brute force on random small profiles") {
  std::mt19937_64 rng(29);
  const std::vector<WeightSequence> weights = {WeightSequence::pav(), WeightSequence::chamberlin_courant(),
                                               WeightSequence::top_k(), WeightSequence::penrose(),
                                               WeightSequence::truncated(WeightSequence::pav(), 1),
                                               WeightSequence::affine(Rational(3))};
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % m);
    const int n = k * (1 + static_cast<int>(rng() % 2));
    const auto profile = random_profile(rng, m, n);
    for (const auto& w : weights) {
      const auto expected = oracle::best<Rational>(
          profile, k, [&](std::uint64_t mask) { return oracle::owa_value(profile, mask, w); },
          [](const Rational& a, const Rational& b) { return a > b; });
      CHECK(owa_winners(profile, k, w).committees == expected);
      CHECK(seq_owa_winners(profile, k, w).committees == seq_oracle(profile, k, w));
    }
    if (n <= 6) {
      const auto expected = oracle::best<int>(
          profile, k, [&](std::uint64_t mask) { return oracle::monroe_value(profile, from_mask(mask)); },
          [](int a, int b) { return a > b; });
      CHECK(monroe_winners(profile, k).committees == expected);
    }
    const auto sav_expected = oracle::best<Rational>(
        profile, k,
        [&](std::uint64_t mask) {
          Rational total = 0;
          for (int i = 0; i < n; ++i) {
            const auto b = profile.ballot_mask(i);
            if (b) total += Rational(std::popcount(b & mask), std::popcount(b));
          }
          return total;
        },
        [](const Rational& a, const Rational& b) { return a > b; });
    CHECK(sav_winners(profile, k).committees == sav_expected);
    const auto mav_expected = oracle::best<int>(
        profile, k,
        [&](std::uint64_t mask) {
          int worst = 0;
          for (int i = 0; i < n; ++i) worst = std::max(worst, std::popcount(profile.ballot_mask(i) ^ mask));
          return worst;
        },
        [](int a, int b) { return a < b; });
    CHECK(mav_winners(profile, k).committees == mav_expected);
  }
}

TEST_CASE("min-max load equals the worst candidate-set ratio") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const auto profile = random_profile(rng, m, 1 + static_cast<int>(rng() % 6));
    const int k = 1 + static_cast<int>(rng() % m);
    oracle::committees(m, k, [&](std::uint64_t mask) {
      const Committee s = from_mask(mask);
      Rational worst = 0;
      bool feasible = true;
      for (std::uint64_t b = mask; b; b = (b - 1) & mask) {
        int supporters = 0;
        for (int i = 0; i < profile.num_voters(); ++i) supporters += (profile.ballot_mask(i) & b) ? 1 : 0;
        if (supporters == 0) {
          feasible = false;
          break;
        }
        worst = std::max(worst, Rational(std::popcount(b), supporters));
      }
      if (!feasible) {
        CHECK_THROWS_AS(min_max_load(profile, s), InfeasibleError);
        return;
      }
      CHECK(min_max_load(profile, s) == worst);
      const auto y = balanced_loads(profile, s);
      CHECK(*std::max_element(y.begin(), y.end()) == worst);
      CHECK(validate_load(profile, k, balanced_load_distribution(profile, s)));
    });
  }
}

TEST_CASE("enumeration cap") {
  EnumerationOptions tight;
  tight.max_committees = 10;
  CHECK_THROWS_AS(owa_winners(owa_demo(), 3, WeightSequence::pav(), tight), SizeError);
  CHECK_THROWS_AS(owa_winners(owa_demo(), 7, WeightSequence::pav()), PreconditionError);
}
