#pragma once

// Party-list embedding of apportionment instances into approval elections,
// seat extraction from committees, and the induced apportionment methods.

#include <functional>
#include <optional>

#include "seatlab/apportionment.hpp"
#include "seatlab/multiwinner.hpp"

namespace seatlab {

struct PartyListEmbedding {
  ApportionmentInstance instance;
  /// Party i owns candidates candidate_blocks[i] (h of them).
  std::vector<std::vector<int>> candidate_blocks;
  /// Party i's v_i voters.
  std::vector<std::vector<int>> voter_blocks;
  int committee_size = 0;
};

struct EmbeddedElection {
  ApprovalProfile profile;
  int k;
  PartyListEmbedding embedding;
};

/// Party i gets h candidates and v_i voters who approve exactly those
/// candidates; k = h. Needs p*h <= 64.
EmbeddedElection embed(const ApportionmentInstance& inst);

/// x_i = |C_i ∩ S|. Throws PreconditionError unless |S| = h.
SeatDistribution extract_seats(const PartyListEmbedding& emb, const Committee& s);

/// A committee whose extraction is x: the first x_i candidates of each block.
Committee representative_committee(const PartyListEmbedding& emb, const SeatDistribution& x);

class Rule {
 public:
  enum class Kind { Owa, SeqOwa, Monroe, MaxPhragmen, VarPhragmen, Sav, Mav };

  static Rule owa(WeightSequence ws) { return Rule(Kind::Owa, std::move(ws)); }
  static Rule seq_owa(WeightSequence ws) { return Rule(Kind::SeqOwa, std::move(ws)); }
  static Rule monroe() { return Rule(Kind::Monroe); }
  static Rule max_phragmen() { return Rule(Kind::MaxPhragmen); }
  static Rule var_phragmen() { return Rule(Kind::VarPhragmen); }
  static Rule sav() { return Rule(Kind::Sav); }
  static Rule mav() { return Rule(Kind::Mav); }

  Kind kind() const { return kind_; }
  /// Only for the two OWA kinds.
  const WeightSequence& weights() const;
  std::string name() const;

  /// Runs the multiwinner rule on an approval profile.
  Winners elect(const ApprovalProfile& profile, int k, const EnumerationOptions& options = {}) const;

 private:
  explicit Rule(Kind kind, std::optional<WeightSequence> ws = std::nullopt) : kind_(kind), weights_(std::move(ws)) {}

  Kind kind_;
  std::optional<WeightSequence> weights_;
};

enum class InducePath {
  /// Optimise the rule's party-list objective over all seat distributions.
  ClosedForm,
  /// Embed, enumerate committees, extract. Tiny instances only.
  FullEmbedding,
};

struct InduceOptions {
  InducePath path = InducePath::ClosedForm;
  EnumerationOptions enumeration;
  /// Cap on the number of seat distributions (compositions of h into p parts).
  std::uint64_t max_compositions = 5'000'000;
};

OutcomeSet<SeatDistribution> induced_apportionment(const Rule& rule, const ApportionmentInstance& inst,
                                                   const InduceOptions& options = {});

/// Number of seat distributions for the instance, saturating at limit + 1.
std::uint64_t count_seat_distributions(const ApportionmentInstance& inst, std::uint64_t limit);

/// Calls visit(x) for every seat distribution x, in lexicographic order.
void for_each_seat_distribution(std::size_t parties, int seats, const std::function<void(const SeatDistribution&)>& visit);

// Closed forms of the party-list objectives.

/// sum_i v_i * (w_1 + ... + w_{x_i})
Rational partylist_owa_value(const ApportionmentInstance& inst, const WeightSequence& ws, const SeatDistribution& x);
/// max_i x_i / v_i
Rational partylist_maxload(const ApportionmentInstance& inst, const SeatDistribution& x);
/// sum_i x_i^2 / v_i
Rational partylist_sumsquares(const ApportionmentInstance& inst, const SeatDistribution& x);
/// sum_i min(v_i, x_i v_+ / h); requires h | v_+.
Rational partylist_monroe_value(const ApportionmentInstance& inst, const SeatDistribution& x);
/// sum_i v_i x_i / h
Rational partylist_sav_value(const ApportionmentInstance& inst, const SeatDistribution& x);
/// max_i 2 (h - x_i)
Rational partylist_mav_value(const ApportionmentInstance& inst, const SeatDistribution& x);

}  // namespace seatlab
