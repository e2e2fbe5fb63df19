#pragma once

// Representation properties of seat distributions and committees, the
// uniqueness witnesses for OWA weights, and a sweep harness that checks the
// equivalence claims over generated apportionment instances.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seatlab/reduction.hpp"

namespace seatlab {

/// Per-party outcome of a property check, with the bound that decided it.
struct PartyVerdict {
  bool pass = true;
  std::string bound;
};

struct PropertyReport {
  bool pass = true;
  std::vector<PartyVerdict> parties;
};

// --- quota family ----------------------------------------------------------

bool check_lower_quota(const ApportionmentInstance& inst, const SeatDistribution& x);
bool check_quota(const ApportionmentInstance& inst, const SeatDistribution& x);

PropertyReport explain_lower_quota(const ApportionmentInstance& inst, const SeatDistribution& x);
PropertyReport explain_quota(const ApportionmentInstance& inst, const SeatDistribution& x);

// --- degressive proportionality and thresholds ------------------------------

/// Exact floor(h * sqrt(v_i) / sum_l sqrt(v_l)) for every party.
std::vector<Integer> penrose_bounds(const ApportionmentInstance& inst);

bool check_penrose(const ApportionmentInstance& inst, const SeatDistribution& x);
PropertyReport explain_penrose(const ApportionmentInstance& inst, const SeatDistribution& x);

/// x_i >= base and x_i - base >= floor(v_i (h - base p) / v_+). Requires h >= base * p.
bool check_cambridge(const ApportionmentInstance& inst, const SeatDistribution& x, int base = 5);
PropertyReport explain_cambridge(const ApportionmentInstance& inst, const SeatDistribution& x, int base = 5);

/// Every seated party holds more than t/h of the votes cast for seated parties.
/// Requires 1 <= t < h.
bool check_threshold(const ApportionmentInstance& inst, const SeatDistribution& x, int t);
PropertyReport explain_threshold(const ApportionmentInstance& inst, const SeatDistribution& x, int t);

// --- proportional justified representation ---------------------------------

struct PjrOptions {
  /// Cap on distinct non-empty ballots for the exhaustive search.
  int max_ballot_types = 16;
};

/// True when distinct non-empty ballots are pairwise disjoint (party-list shape).
bool is_party_list(const ApprovalProfile& profile);

/// Uses the party-list closed form when applicable, else the exhaustive search.
bool check_pjr(const ApprovalProfile& profile, int k, const Committee& s, const PjrOptions& options = {});

/// Searches every group of ballot types. Throws SizeError above the cap.
bool check_pjr_exhaustive(const ApprovalProfile& profile, int k, const Committee& s, const PjrOptions& options = {});

// --- OWA uniqueness witnesses ----------------------------------------------

struct QuotaViolation {
  ApportionmentInstance instance;
  SeatDistribution outcome;
  std::size_t party;
};

/// The two instance families (Z, jZ-1, ..., jZ-1) with h = jZ and
/// (jZ, Z-1, ..., Z-1) with h = Z + j - 1. Returns the first induced outcome
/// of owa(ws) that violates lower quota, if any.
std::optional<QuotaViolation> lower_quota_witness(const WeightSequence& ws, int j, int z);

// --- claim sweeps ------------------------------------------------------------

struct SweepConfig {
  enum class Mode { Exhaustive, Random };

  Mode mode = Mode::Exhaustive;
  int min_parties = 2;
  int max_parties = 3;
  std::int64_t max_votes = 10;
  int max_seats = 5;
  int trials = 500;
  std::optional<std::uint64_t> seed;
  /// Keep only instances with h | v_+ (always on for monroe-lr).
  bool divisibility_filter = false;
  /// Replaces the weight sequence of OWA-based claims.
  std::optional<WeightSequence> weights;

  /// Throws PreconditionError on non-positive bounds or a random sweep without seed.
  void validate() const;
};

struct ClaimFailure {
  std::string instance;
  std::string detail;
};

struct VerificationReport {
  std::string claim;
  std::uint64_t instances_tested = 0;
  std::vector<ClaimFailure> failures;
  double elapsed_seconds = 0;

  bool holds() const { return failures.empty(); }
};

const std::vector<std::string>& claim_catalog();

/// Instances the sweep visits, in canonical order.
std::vector<ApportionmentInstance> sweep_instances(const SweepConfig& cfg);

/// Throws PreconditionError for an unknown claim id.
VerificationReport verify_claim(std::string_view claim, const SweepConfig& cfg);

/// Non-increasing positive weight prefixes drawn deterministically from seed.
std::vector<WeightSequence> random_nonincreasing_weights(std::uint64_t seed, int count, int length);

}  // namespace seatlab
