#pragma once

// Classical apportionment methods. Every method returns the complete set of
// tied seat distributions rather than a single tie-broken result.

#include <cstddef>

#include "seatlab/model.hpp"

namespace seatlab {

struct ApportionOptions {
  /// Tie enumeration beyond this many outcomes raises TieExplosionError.
  std::size_t max_outcomes = 10'000;
};

/// x with one seat moved from party `from` to party `to` (0-based).
SeatDistribution move_seat(const SeatDistribution& x, std::size_t from, std::size_t to);

/// All seat distributions the iterative divisor procedure can produce under
/// some resolution of its ties.
OutcomeSet<SeatDistribution> divisor_apportion(const ApportionmentInstance& inst, const DivisorSequence& ds,
                                               const ApportionOptions& options = {});

OutcomeSet<SeatDistribution> largest_remainder(const ApportionmentInstance& inst,
                                               const ApportionOptions& options = {});

/// Every vector base + c with 0 <= c_i <= extra_cap_i and sum(c) = extra.
/// Throws TieExplosionError if that set would exceed max_outcomes.
OutcomeSet<SeatDistribution> complete_ties(const SeatDistribution& base, const std::vector<int>& extra_cap, int extra,
                                           std::size_t max_outcomes);

}  // namespace seatlab
