#include "seatlab/reduction.hpp"

#include <algorithm>

namespace seatlab {

EmbeddedElection embed(const ApportionmentInstance& inst) {
  const int h = inst.seats();
  const std::size_t p = inst.parties();
  if (static_cast<std::int64_t>(p) * h > ApprovalProfile::kMaxCandidates) {
    throw SizeError("party-list embedding needs p*h <= 64 candidates");
  }
  PartyListEmbedding emb{inst, {}, {}, h};
  std::vector<std::vector<int>> ballots;
  ballots.reserve(inst.total_votes());
  int next_candidate = 0;
  int next_voter = 0;
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<int> block(h);
    for (int j = 0; j < h; ++j) block[j] = next_candidate++;
    std::vector<int> voters(inst.votes(i));
    for (auto& v : voters) {
      v = next_voter++;
      ballots.push_back(block);
    }
    emb.candidate_blocks.push_back(std::move(block));
    emb.voter_blocks.push_back(std::move(voters));
  }
  ApprovalProfile profile(next_candidate, std::move(ballots));
  return {std::move(profile), h, std::move(emb)};
}

SeatDistribution extract_seats(const PartyListEmbedding& emb, const Committee& s) {
  if (static_cast<int>(s.size()) != emb.committee_size) throw PreconditionError("committee size must equal the house size");
  const int h = emb.instance.seats();
  const int m = static_cast<int>(emb.instance.parties()) * h;
  SeatDistribution x(emb.instance.parties(), 0);
  for (int c : s) {
    if (c < 0 || c >= m) throw PreconditionError("committee references an unknown candidate");
    ++x[c / h];
  }
  return x;
}

Committee representative_committee(const PartyListEmbedding& emb, const SeatDistribution& x) {
  emb.instance.validate(x);
  Committee s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int j = 0; j < x[i]; ++j) s.push_back(emb.candidate_blocks[i][j]);
  }
  return s;
}

// ---------------------------------------------------------------------------

const WeightSequence& Rule::weights() const {
  if (!weights_) throw PreconditionError("rule " + name() + " has no weight sequence");
  return *weights_;
}

std::string Rule::name() const {
  switch (kind_) {
    case Kind::Owa:
      return "owa:" + weights_->name();
    case Kind::SeqOwa:
      return "seq-owa:" + weights_->name();
    case Kind::Monroe:
      return "monroe";
    case Kind::MaxPhragmen:
      return "max-phragmen";
    case Kind::VarPhragmen:
      return "var-phragmen";
    case Kind::Sav:
      return "sav";
    case Kind::Mav:
      return "mav";
  }
  return "?";
}

Winners Rule::elect(const ApprovalProfile& profile, int k, const EnumerationOptions& options) const {
  switch (kind_) {
    case Kind::Owa:
      return owa_winners(profile, k, *weights_, options);
    case Kind::SeqOwa:
      return seq_owa_winners(profile, k, *weights_, options);
    case Kind::Monroe:
      return monroe_winners(profile, k, options);
    case Kind::MaxPhragmen:
      return max_phragmen_winners(profile, k, options);
    case Kind::VarPhragmen:
      return var_phragmen_winners(profile, k, options);
    case Kind::Sav:
      return sav_winners(profile, k, options);
    case Kind::Mav:
      return mav_winners(profile, k, options);
  }
  throw Error("unknown rule");
}

// ---------------------------------------------------------------------------

std::uint64_t count_seat_distributions(const ApportionmentInstance& inst, std::uint64_t limit) {
  return binomial_capped(inst.seats() + static_cast<int>(inst.parties()) - 1, static_cast<int>(inst.parties()) - 1,
                         limit);
}

namespace {

void compositions(SeatDistribution& x, std::size_t party, int left,
                  const std::function<void(const SeatDistribution&)>& visit) {
  if (party + 1 == x.size()) {
    x[party] = left;
    visit(x);
    return;
  }
  for (int take = 0; take <= left; ++take) {
    x[party] = take;
    compositions(x, party + 1, left - take, visit);
  }
}

}  // namespace

void for_each_seat_distribution(std::size_t parties, int seats,
                                const std::function<void(const SeatDistribution&)>& visit) {
  if (parties == 0) return;
  SeatDistribution x(parties, 0);
  compositions(x, 0, seats, visit);
}

Rational partylist_owa_value(const ApportionmentInstance& inst, const WeightSequence& ws, const SeatDistribution& x) {
  inst.validate(x);
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) total += inst.votes(i) * ws.prefix_sum(x[i]);
  return total;
}

Rational partylist_maxload(const ApportionmentInstance& inst, const SeatDistribution& x) {
  inst.validate(x);
  Rational best = 0;
  for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, Rational(x[i], inst.votes(i)));
  return best;
}

Rational partylist_sumsquares(const ApportionmentInstance& inst, const SeatDistribution& x) {
  inst.validate(x);
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) total += Rational(Integer(x[i]) * x[i], inst.votes(i));
  return total;
}

Rational partylist_monroe_value(const ApportionmentInstance& inst, const SeatDistribution& x) {
  inst.validate(x);
  if (inst.total_votes() % inst.seats() != 0) {
    throw DivisibilityError("Monroe needs the house size to divide the total vote count");
  }
  const std::int64_t per_seat = inst.total_votes() / inst.seats();
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) total += std::min<std::int64_t>(inst.votes(i), x[i] * per_seat);
  return total;
}

Rational partylist_sav_value(const ApportionmentInstance& inst, const SeatDistribution& x) {
  inst.validate(x);
  Integer total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) total += Integer(inst.votes(i)) * x[i];
  return Rational(total, inst.seats());
}

Rational partylist_mav_value(const ApportionmentInstance& inst, const SeatDistribution& x) {
  inst.validate(x);
  return Rational(2 * (inst.seats() - *std::min_element(x.begin(), x.end())));
}

// ---------------------------------------------------------------------------

namespace {

enum class Sense { Maximize, Minimize };
enum class Combine { Sum, Max };

// Objective of the form combine_i term(i, x_i) over seat distributions x.
struct SeparableObjective {
  Sense sense;
  Combine combine;
  std::function<Rational(std::size_t, int)> term;
};

bool improves(Sense sense, const Rational& candidate, const Rational& incumbent) {
  return sense == Sense::Maximize ? candidate > incumbent : candidate < incumbent;
}

// All optimal seat distributions, found by dynamic programming over parties.
OutcomeSet<SeatDistribution> optimise(const ApportionmentInstance& inst, const InduceOptions& options,
                                      const SeparableObjective& objective) {
  const std::size_t p = inst.parties();
  const int h = inst.seats();
  std::vector<std::vector<Rational>> term(p, std::vector<Rational>(h + 1));
  for (std::size_t i = 0; i < p; ++i) {
    for (int x = 0; x <= h; ++x) term[i][x] = objective.term(i, x);
  }
  auto combine = [&](const Rational& a, const Rational& b) -> Rational {
    if (objective.combine == Combine::Sum) return a + b;
    return improves(objective.sense, a, b) ? b : a;  // the worse of the two
  };

  // best[i][s]: optimum over the first i parties holding exactly s seats.
  std::vector<std::vector<std::optional<Rational>>> best(p + 1, std::vector<std::optional<Rational>>(h + 1));
  for (int s = 0; s <= h; ++s) best[1][s] = term[0][s];
  for (std::size_t i = 2; i <= p; ++i) {
    for (int s = 0; s <= h; ++s) {
      for (int x = 0; x <= s; ++x) {
        if (!best[i - 1][s - x]) continue;
        Rational value = combine(*best[i - 1][s - x], term[i - 1][x]);
        if (!best[i][s] || improves(objective.sense, value, *best[i][s])) best[i][s] = std::move(value);
      }
    }
  }
  const Rational optimum = *best[p][h];

  OutcomeSet<SeatDistribution> out;
  SeatDistribution x(p, 0);
  if (objective.combine == Combine::Sum) {
    // With a sum, every prefix of an optimal distribution is optimal for its seat budget.
    std::function<void(std::size_t, int, const Rational&)> walk = [&](std::size_t i, int s, const Rational& target) {
      if (i == 1) {
        if (term[0][s] == target) {
          x[0] = s;
          out.insert(x);
        }
        return;
      }
      for (int take = 0; take <= s; ++take) {
        const auto& rest = best[i - 1][s - take];
        if (!rest || *rest + term[i - 1][take] != target) continue;
        x[i - 1] = take;
        walk(i - 1, s - take, *rest);
        if (out.size() > options.max_compositions) throw TieExplosionError("too many tied seat distributions");
      }
    };
    walk(p, h, optimum);
  } else {
    // Bottleneck objective: optimal iff every term is no worse than the optimum.
    std::vector<std::vector<bool>> allowed(p, std::vector<bool>(h + 1));
    for (std::size_t i = 0; i < p; ++i) {
      for (int v = 0; v <= h; ++v) allowed[i][v] = !improves(objective.sense, optimum, term[i][v]);
    }
    // reach[i][s]: parties i..p-1 can absorb exactly s seats.
    std::vector<std::vector<bool>> reach(p + 1, std::vector<bool>(h + 1, false));
    reach[p][0] = true;
    for (std::size_t i = p; i-- > 0;) {
      for (int s = 0; s <= h; ++s) {
        for (int take = 0; take <= s && !reach[i][s]; ++take) reach[i][s] = allowed[i][take] && reach[i + 1][s - take];
      }
    }
    std::function<void(std::size_t, int)> walk = [&](std::size_t i, int s) {
      if (i == p) {
        out.insert(x);
        return;
      }
      for (int take = 0; take <= s; ++take) {
        if (!allowed[i][take] || !reach[i + 1][s - take]) continue;
        x[i] = take;
        walk(i + 1, s - take);
        if (out.size() > options.max_compositions) throw TieExplosionError("too many tied seat distributions");
      }
    };
    walk(0, h);
  }
  return out;
}

OutcomeSet<SeatDistribution> sequential_closed_form(const ApportionmentInstance& inst, const WeightSequence& ws,
                                                    const InduceOptions& options) {
  const int h = inst.seats();
  const std::size_t p = inst.parties();
  std::vector<Rational> weight(h + 1);
  for (int j = 1; j <= h; ++j) weight[j] = ws.at(j);
  std::set<SeatDistribution> frontier{SeatDistribution(p, 0)};
  for (int step = 0; step < h; ++step) {
    std::set<SeatDistribution> next;
    for (const auto& x : frontier) {
      // Marginal gain of the next seat of party i: v_i * w_{x_i + 1}.
      std::optional<Rational> best;
      std::vector<std::size_t> arg;
      for (std::size_t i = 0; i < p; ++i) {
        Rational gain = inst.votes(i) * weight[x[i] + 1];
        if (!best || gain > *best) {
          best = std::move(gain);
          arg.assign(1, i);
        } else if (gain == *best) {
          arg.push_back(i);
        }
      }
      for (std::size_t i : arg) {
        SeatDistribution y = x;
        ++y[i];
        next.insert(std::move(y));
      }
    }
    if (next.size() > options.max_compositions) throw SizeError("sequential frontier exceeds the composition cap");
    frontier = std::move(next);
  }
  return frontier;
}

OutcomeSet<SeatDistribution> closed_form(const Rule& rule, const ApportionmentInstance& inst,
                                         const InduceOptions& options) {
  const int h = inst.seats();
  switch (rule.kind()) {
    case Rule::Kind::Owa: {
      std::vector<Rational> sums(h + 1);
      for (int j = 1; j <= h; ++j) sums[j] = sums[j - 1] + rule.weights().at(j);
      return optimise(inst, options, {Sense::Maximize, Combine::Sum, [&](std::size_t i, int x) {
                                        return Rational(inst.votes(i) * sums[x]);
                                      }});
    }
    case Rule::Kind::SeqOwa:
      return sequential_closed_form(inst, rule.weights(), options);
    case Rule::Kind::Monroe: {
      if (inst.total_votes() % h != 0) {
        throw DivisibilityError("Monroe needs the house size to divide the total vote count");
      }
      const std::int64_t per_seat = inst.total_votes() / h;
      return optimise(inst, options, {Sense::Maximize, Combine::Sum, [&](std::size_t i, int x) {
                                        return Rational(std::min<std::int64_t>(inst.votes(i), x * per_seat));
                                      }});
    }
    case Rule::Kind::MaxPhragmen:
      return optimise(inst, options, {Sense::Minimize, Combine::Max, [&](std::size_t i, int x) {
                                        return Rational(x, inst.votes(i));
                                      }});
    case Rule::Kind::VarPhragmen:
      return optimise(inst, options, {Sense::Minimize, Combine::Sum, [&](std::size_t i, int x) {
                                        return Rational(x * x, inst.votes(i));
                                      }});
    case Rule::Kind::Sav:
      return optimise(inst, options, {Sense::Maximize, Combine::Sum, [&](std::size_t i, int x) {
                                        return Rational(Integer(inst.votes(i)) * x, h);
                                      }});
    case Rule::Kind::Mav:
      return optimise(inst, options, {Sense::Minimize, Combine::Max, [&](std::size_t, int x) {
                                        return Rational(2 * (h - x));
                                      }});
  }
  throw Error("unknown rule");
}

}  // namespace

OutcomeSet<SeatDistribution> induced_apportionment(const Rule& rule, const ApportionmentInstance& inst,
                                                   const InduceOptions& options) {
  if (options.path == InducePath::ClosedForm) return closed_form(rule, inst, options);
  const EmbeddedElection election = embed(inst);
  if (rule.kind() == Rule::Kind::Monroe && inst.total_votes() % inst.seats() != 0) {
    throw DivisibilityError("Monroe needs the house size to divide the total vote count");
  }
  const Winners winners = rule.elect(election.profile, election.k, options.enumeration);
  OutcomeSet<SeatDistribution> out;
  for (const auto& s : winners.committees) out.insert(extract_seats(election.embedding, s));
  return out;
}

}  // namespace seatlab
