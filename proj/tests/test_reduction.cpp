#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "seatlab/reduction.hpp"

using namespace seatlab;

namespace {

using Set = OutcomeSet<SeatDistribution>;

const ApportionmentInstance kExample({6, 7, 39, 48}, 10);

std::vector<Rule> all_rules() {
  return {Rule::owa(WeightSequence::pav()),
          Rule::owa(WeightSequence::chamberlin_courant()),
          Rule::owa(WeightSequence::top_k()),
          Rule::owa(WeightSequence::penrose()),
          Rule::owa(WeightSequence::truncated(WeightSequence::pav(), 1)),
          Rule::owa(WeightSequence::affine(Rational(4))),
          Rule::seq_owa(WeightSequence::pav()),
          Rule::seq_owa(WeightSequence::chamberlin_courant()),
          Rule::monroe(),
          Rule::max_phragmen(),
          Rule::var_phragmen(),
          Rule::sav(),
          Rule::mav()};
}

}  // namespace

TEST_CASE("embedding shape") {
  const auto e = embed(ApportionmentInstance({2, 1}, 2));
  CHECK(e.profile.num_candidates() == 4);
  CHECK(e.profile.num_voters() == 3);
  CHECK(e.k == 2);
  CHECK(e.profile.ballot(0) == std::vector<int>{0, 1});
  CHECK(e.profile.ballot(1) == std::vector<int>{0, 1});
  CHECK(e.profile.ballot(2) == std::vector<int>{2, 3});
  CHECK(e.embedding.voter_blocks[1] == std::vector<int>{2});

  for (const auto& inst : {ApportionmentInstance({20, 40, 30, 10}, 10), kExample}) {
    const auto big = embed(inst);
    CHECK(big.profile.num_candidates() == 40);
    CHECK(big.profile.num_voters() == 100);
    CHECK(big.k == 10);
  }
  CHECK_THROWS_AS(embed(ApportionmentInstance({1, 1, 1, 1, 1}, 13)), SizeError);
}

TEST_CASE("seat extraction") {
  const auto e = embed(ApportionmentInstance({20, 40, 30, 10}, 10));
  // Two members of party 1, four of party 2, three of party 3, one of party 4.
  const Committee s{3, 7, 10, 11, 15, 19, 22, 24, 29, 35};
  CHECK(extract_seats(e.embedding, s) == SeatDistribution{2, 4, 3, 1});
  CHECK(extract_seats(e.embedding, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}) == SeatDistribution{10, 0, 0, 0});
  CHECK(extract_seats(e.embedding, representative_committee(e.embedding, {2, 4, 3, 1})) ==
        SeatDistribution{2, 4, 3, 1});
  CHECK_THROWS_AS(extract_seats(e.embedding, {0, 1}), PreconditionError);
}

TEST_CASE("induced apportionment examples") {
  CHECK(induced_apportionment(Rule::owa(WeightSequence::pav()), kExample) == Set{{0, 0, 4, 6}});
  CHECK(induced_apportionment(Rule::var_phragmen(), kExample) == Set{{1, 1, 4, 4}});
  CHECK(induced_apportionment(Rule::max_phragmen(), kExample) == Set{{0, 0, 4, 6}});
  CHECK(induced_apportionment(Rule::monroe(), kExample) == Set{{0, 1, 4, 5}});
  CHECK(induced_apportionment(Rule::sav(), kExample) == Set{{0, 0, 0, 10}});
  CHECK(induced_apportionment(Rule::owa(WeightSequence::top_k()), kExample) == Set{{0, 0, 0, 10}});
  CHECK(induced_apportionment(Rule::seq_owa(WeightSequence::pav()), ApportionmentInstance({20, 40, 30, 10}, 10)) ==
        Set{{2, 4, 3, 1}});

  // Minimax approval maximises the smallest party's seats: every split with all x_i >= 2.
  const auto mav = induced_apportionment(Rule::mav(), kExample);
  CHECK(mav.size() == 10);
  for (const auto& x : mav) CHECK(*std::min_element(x.begin(), x.end()) == 2);
  // More parties than seats: every distribution ties.
  const ApportionmentInstance crowded({1, 2, 3}, 2);
  CHECK(induced_apportionment(Rule::mav(), crowded).size() == count_seat_distributions(crowded, 100));

  CHECK_THROWS_AS(induced_apportionment(Rule::monroe(), ApportionmentInstance({1, 2}, 2)), DivisibilityError);
}

TEST_CASE("closed-form party-list objectives") {
  // sum v_i (w_1 + ... + w_5) with w = (0, 1/2, 1/3, ...) over parties 3 and 4: 87 * 77/60.
  const auto t1 = WeightSequence::truncated(WeightSequence::pav(), 1);
  CHECK(partylist_owa_value(kExample, t1, {0, 0, 5, 5}) == Rational(2233, 20));
  CHECK(induced_apportionment(Rule::owa(t1), kExample) == Set{{0, 0, 4, 6}});
  CHECK(partylist_owa_value(kExample, t1, {0, 0, 4, 6}) == Rational(2237, 20));
  CHECK(partylist_owa_value(kExample, WeightSequence::chamberlin_courant(), {1, 1, 4, 4}) == 100);
  CHECK(partylist_owa_value(kExample, WeightSequence::pav(), {10, 0, 0, 0}) ==
        6 * WeightSequence::pav().prefix_sum(10));

  CHECK(partylist_maxload(kExample, {0, 0, 4, 6}) == Rational(1, 8));
  CHECK(partylist_maxload(kExample, {10, 0, 0, 0}) == Rational(10, 6));
  CHECK(partylist_maxload(ApportionmentInstance({5, 5, 5}, 6), {2, 2, 2}) == Rational(2, 5));

  CHECK(partylist_sumsquares(kExample, {1, 1, 4, 4}) == Rational(575, 546));
  CHECK(partylist_sumsquares(kExample, {0, 0, 0, 10}) == Rational(100, 48));
  CHECK(partylist_sumsquares(ApportionmentInstance({4, 4}, 6), {3, 3}) == Rational(18, 4));

  CHECK(partylist_monroe_value(kExample, {0, 1, 4, 5}) == 94);
  CHECK(partylist_monroe_value(kExample, {10, 0, 0, 0}) == 6);
  CHECK(partylist_monroe_value(ApportionmentInstance({30, 20}, 5), {3, 2}) == 50);
  CHECK_THROWS_AS(partylist_monroe_value(ApportionmentInstance({1, 2}, 2), {1, 1}), DivisibilityError);

  // Monroe value on the embedded 100-voter profile agrees.
  const auto e = embed(kExample);
  CHECK(monroe_satisfaction(e.profile, representative_committee(e.embedding, {0, 1, 4, 5})) == 94);

  CHECK(partylist_sav_value(kExample, {0, 0, 0, 10}) == 48);
  CHECK(partylist_mav_value(kExample, {1, 1, 4, 4}) == 18);
}

TEST_CASE("closed forms equal the rule objectives on the embedded committee") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 3);
    const int h = 1 + static_cast<int>(rng() % 4);
    std::vector<std::int64_t> v(p);
    for (auto& x : v) x = 1 + static_cast<std::int64_t>(rng() % 5);
    const ApportionmentInstance inst(v, h);
    const auto e = embed(inst);
    for_each_seat_distribution(inst.parties(), h, [&](const SeatDistribution& x) {
      const Committee s = representative_committee(e.embedding, x);
      for (const auto& w : {WeightSequence::pav(), WeightSequence::penrose(), WeightSequence::affine(Rational(3))}) {
        CHECK(partylist_owa_value(inst, w, x) == owa_satisfaction(e.profile, s, w));
      }
      CHECK(partylist_sav_value(inst, x) == sav_score(e.profile, s));
      CHECK(partylist_mav_value(inst, x) == mav_score(e.profile, s));
      CHECK(partylist_maxload(inst, x) == min_max_load(e.profile, s));
      CHECK(partylist_sumsquares(inst, x) == sum_of_squares(balanced_loads(e.profile, s)));
      if (inst.total_votes() % h == 0) CHECK(partylist_monroe_value(inst, x) == monroe_satisfaction(e.profile, s));
    });
  }
}

TEST_CASE("optimised closed forms match exhaustive maximisation") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 4);
    const int h = 1 + static_cast<int>(rng() % 7);
    std::vector<std::int64_t> v(p);
    for (auto& x : v) x = 1 + static_cast<std::int64_t>(rng() % 12);
    const ApportionmentInstance inst(v, h);
    for (const auto& rule : all_rules()) {
      if (rule.kind() == Rule::Kind::SeqOwa) continue;
      if (rule.kind() == Rule::Kind::Monroe && inst.total_votes() % h != 0) continue;
      Set expected;
      bool have = false;
      Rational top;
      oracle::compositions(inst.parties(), h, [&](const SeatDistribution& x) {
        Rational value;
        bool maximise = true;
        switch (rule.kind()) {
          case Rule::Kind::Owa:
            value = partylist_owa_value(inst, rule.weights(), x);
            break;
          case Rule::Kind::Monroe:
            value = partylist_monroe_value(inst, x);
            break;
          case Rule::Kind::MaxPhragmen:
            value = partylist_maxload(inst, x);
            maximise = false;
            break;
          case Rule::Kind::VarPhragmen:
            value = partylist_sumsquares(inst, x);
            maximise = false;
            break;
          case Rule::Kind::Sav:
            value = partylist_sav_value(inst, x);
            break;
          case Rule::Kind::Mav:
            value = partylist_mav_value(inst, x);
            maximise = false;
            break;
          default:
            break;
        }
        const bool better = !have || (maximise ? value > top : value < top);
        if (better) {
          top = value;
          expected.clear();
          have = true;
        }
        if (value == top) expected.insert(x);
      });
      CHECK_MESSAGE(induced_apportionment(rule, inst) == expected, rule.name() << " " << to_string(inst));
    }
  }
}

TEST_CASE("closed-form path matches full embedding on tiny instances") {
  for (int p = 1; p <= 2; ++p) {
    std::vector<std::int64_t> v(p, 1);
    std::function<void(int)> rec = [&](int i) {
      if (i == p) {
        for (int h = 1; h <= 3; ++h) {
          const ApportionmentInstance inst(v, h);
          InduceOptions full;
          full.path = InducePath::FullEmbedding;
          for (const auto& rule : all_rules()) {
            if (rule.kind() == Rule::Kind::Monroe && inst.total_votes() % h != 0) {
              CHECK_THROWS_AS(induced_apportionment(rule, inst, full), DivisibilityError);
              continue;
            }
            CHECK_MESSAGE(induced_apportionment(rule, inst) == induced_apportionment(rule, inst, full),
                          rule.name() << " " << to_string(inst));
          }
        }
        return;
      }
      for (std::int64_t x = 1; x <= 4; ++x) {
        v[i] = x;
        rec(i + 1);
      }
    };
    rec(0);
  }
}

TEST_CASE("seat distribution enumeration") {
  std::vector<SeatDistribution> seen;
  for_each_seat_distribution(3, 2, [&](const SeatDistribution& x) { seen.push_back(x); });
  CHECK(seen == std::vector<SeatDistribution>{{0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}});
  CHECK(count_seat_distributions(ApportionmentInstance({1, 1, 1}, 2), 100) == 6);
  CHECK(count_seat_distributions(ApportionmentInstance(std::vector<std::int64_t>(30, 1), 30), 1000) == 1001);
  InduceOptions tiny;
  tiny.max_compositions = 3;
  CHECK_THROWS_AS(induced_apportionment(Rule::mav(), ApportionmentInstance({1, 2, 3}, 2), tiny), TieExplosionError);
}

TEST_CASE("rule names") {
  CHECK(Rule::owa(WeightSequence::pav()).name() == "owa:pav");
  CHECK(Rule::monroe().name() == "monroe");
  CHECK_THROWS_AS(Rule::sav().weights(), PreconditionError);
}
