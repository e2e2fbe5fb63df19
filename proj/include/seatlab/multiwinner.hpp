#pragma once

// Approval-based multiwinner rules. Winner determination is exhaustive over
// all size-k committees with exact rational scores, so every tied winner is
// returned.

#include <cstdint>

#include "seatlab/model.hpp"

namespace seatlab {

struct EnumerationOptions {
  /// Upper bound on C(m, k) (and on the sequential rule's frontier size).
  std::uint64_t max_committees = 2'000'000;
};

/// Winning committees together with the optimal objective value.
struct Winners {
  OutcomeSet<Committee> committees;
  Rational score;
};

/// ℓ_{i,c}, one row per voter and one column per candidate.
struct LoadDistribution {
  std::vector<std::vector<Rational>> loads;
};

/// Total load y_i carried by each voter.
using VoterLoadVector = std::vector<Rational>;

/// C(n, k), saturating at `limit + 1`.
std::uint64_t binomial_capped(int n, int k, std::uint64_t limit);

// --- OWA-based rules -------------------------------------------------------

Rational owa_satisfaction(const ApprovalProfile& profile, const Committee& s, const WeightSequence& ws);

Winners owa_winners(const ApprovalProfile& profile, int k, const WeightSequence& ws,
                    const EnumerationOptions& options = {});

/// Every committee reachable by greedily adding a candidate of maximal
/// marginal satisfaction, following all tied branches.
Winners seq_owa_winners(const ApprovalProfile& profile, int k, const WeightSequence& ws,
                        const EnumerationOptions& options = {});

// --- Monroe ------------------------------------------------------------------

/// Best balanced allocation (n/k voters per member). Throws DivisibilityError
/// when |S| does not divide n.
int monroe_satisfaction(const ApprovalProfile& profile, const Committee& s);

Winners monroe_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options = {});

// --- Phragmén load balancing ----------------------------------------------

/// Checks conditions (i)-(iii) exactly.
bool validate_load(const ApprovalProfile& profile, int k, const LoadDistribution& load);

/// Smallest achievable maximal voter load for committee s; equals the largest
/// |B| / |supporters(B)| over non-empty B ⊆ s. Throws InfeasibleError if a
/// member of s has no supporter.
Rational min_max_load(const ApprovalProfile& profile, const Committee& s);

/// The unique voter-load vector minimising the sum of squared loads.
VoterLoadVector balanced_loads(const ApprovalProfile& profile, const Committee& s);

/// A load matrix realising balanced_loads(profile, s).
LoadDistribution balanced_load_distribution(const ApprovalProfile& profile, const Committee& s);

Rational sum_of_squares(const VoterLoadVector& y);

Winners max_phragmen_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options = {});
Winners var_phragmen_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options = {});

// --- Satisfaction / minimax approval voting --------------------------------

/// Sum over voters of |A_i ∩ S| / |A_i|; empty ballots contribute zero.
Rational sav_score(const ApprovalProfile& profile, const Committee& s);
Winners sav_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options = {});

/// Largest Hamming distance |A_i Δ S| over voters (zero without voters).
int mav_score(const ApprovalProfile& profile, const Committee& s);
Winners mav_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options = {});

}  // namespace seatlab
