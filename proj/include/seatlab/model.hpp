#pragma once

// Exact arithmetic, weight/divisor sequence families and the core value types
// shared by every other part of the library.

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace seatlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// No feasible committee / load distribution exists.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Monroe-style rules need the committee size to divide the electorate.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

/// Tie enumeration produced more outcomes than allowed.
class TieExplosionError : public SizeError {
 public:
  using SizeError::SizeError;
};

// ---------------------------------------------------------------------------
// Rationals

/// "num/den", or just "num" when the denominator is one.
std::string to_string(const Rational& q);

/// Accepts "a", "-a", "a/b". Throws PreconditionError on malformed text or b = 0.
Rational parse_rational(std::string_view text);

Integer floor_div(const Integer& num, const Integer& den);
Integer ceil_div(const Integer& num, const Integer& den);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

// ---------------------------------------------------------------------------
// Apportionment data

using SeatDistribution = std::vector<int>;

template <class T>
using OutcomeSet = std::set<T>;

class ApportionmentInstance {
 public:
  /// Throws PreconditionError unless p >= 1, every vote count > 0 and seats > 0.
  ApportionmentInstance(std::vector<std::int64_t> votes, int seats);

  std::span<const std::int64_t> votes() const { return votes_; }
  std::int64_t votes(std::size_t party) const { return votes_.at(party); }
  int seats() const { return seats_; }
  std::size_t parties() const { return votes_.size(); }
  std::int64_t total_votes() const { return total_; }

  /// Exact quota v_i h / v_+.
  Rational quota(std::size_t party) const;

  /// Throws PreconditionError if x has the wrong length, a negative entry, or
  /// does not sum to h.
  void validate(const SeatDistribution& x) const;

  bool operator==(const ApportionmentInstance&) const = default;

 private:
  std::vector<std::int64_t> votes_;
  int seats_;
  std::int64_t total_;
};

std::string to_string(const ApportionmentInstance& inst);
std::string to_string(const SeatDistribution& x);

// ---------------------------------------------------------------------------
// Approval data

/// Candidate ids are 0-based internally; at most 64 candidates.
using Committee = std::vector<int>;

class ApprovalProfile {
 public:
  static constexpr int kMaxCandidates = 64;

  /// Ballots may be empty. Throws PreconditionError on out-of-range or
  /// duplicate candidate ids.
  ApprovalProfile(int num_candidates, std::vector<std::vector<int>> ballots);

  int num_candidates() const { return num_candidates_; }
  int num_voters() const { return static_cast<int>(ballots_.size()); }
  const std::vector<int>& ballot(int voter) const { return ballots_.at(voter); }
  const std::vector<std::vector<int>>& ballots() const { return ballots_; }
  std::uint64_t ballot_mask(int voter) const { return masks_[voter]; }
  std::span<const std::uint64_t> ballot_masks() const { return masks_; }

  /// Number of voters approving candidate c.
  int approval_count(int c) const;

 private:
  int num_candidates_;
  std::vector<std::vector<int>> ballots_;
  std::vector<std::uint64_t> masks_;
};

std::uint64_t to_mask(const Committee& s);
Committee from_mask(std::uint64_t mask);

/// Throws PreconditionError unless s is a set of valid, distinct candidates.
void validate_committee(const ApprovalProfile& profile, const Committee& s);

// ---------------------------------------------------------------------------
// Weight sequences (w_1, w_2, ...)

class WeightSequence {
 public:
  enum class Family { Pav, ChamberlinCourant, TopK, Penrose, HarmonicOdd, Affine, Truncated, Explicit };

  static WeightSequence pav();
  static WeightSequence chamberlin_courant();
  static WeightSequence top_k();
  /// 1/j^2
  static WeightSequence penrose();
  /// 1, 1/3, 1/5, ...
  static WeightSequence harmonic_odd();
  /// (0, 0, 0, 0, z, 1, 1/2, 1/3, ...); z >= 0.
  static WeightSequence affine(Rational z);
  /// base with its first t entries replaced by zero.
  static WeightSequence truncated(const WeightSequence& base, int t);
  /// prefix, then tail forever. All entries must be >= 0.
  static WeightSequence explicit_sequence(std::vector<Rational> prefix, Rational tail);

  Family family() const { return family_; }

  /// w_j for j >= 1.
  Rational at(int j) const;

  /// Sum of w_1..w_s.
  Rational prefix_sum(int s) const;

  /// w_j >= w_{j+1} for every j, decided from the closed form.
  bool non_increasing() const;
  /// w_j > 0 for every j.
  bool positive() const;

  std::string name() const;

 private:
  WeightSequence() = default;

  Family family_ = Family::Pav;
  Rational parameter_;
  int cut_ = 0;
  std::shared_ptr<const WeightSequence> base_;
  std::vector<Rational> prefix_;
  Rational tail_;
};

Rational weight_at(const WeightSequence& ws, int j);

// ---------------------------------------------------------------------------
// Divisor sequences (d(0), d(1), ...)

class DivisorSequence {
 public:
  enum class Family { DHondt, SainteLague, FromWeights, Explicit };

  static DivisorSequence dhondt();
  static DivisorSequence sainte_lague();
  /// d(s) = 1 / w_{s+1}
  static DivisorSequence from_weights(const WeightSequence& ws);
  /// prefix, then slope * s + intercept for s >= |prefix|.
  static DivisorSequence explicit_sequence(std::vector<Rational> prefix, Rational slope, Rational intercept);

  /// Same sequence with d(0) forced to zero.
  DivisorSequence impervious() const;

  Family family() const { return family_; }
  bool is_impervious() const { return impervious_; }

  /// d(s). Throws PreconditionError when a weight-derived divisor is undefined
  /// (w_{s+1} = 0).
  Rational at(int s) const;

  /// Checks 0 < d(j) <= d(j+1) (from j = 1 when impervious) for j < upto.
  void validate(int upto) const;

  std::string name() const;

 private:
  DivisorSequence() = default;

  Family family_ = Family::DHondt;
  bool impervious_ = false;
  std::shared_ptr<const WeightSequence> weights_;
  std::vector<Rational> prefix_;
  Rational slope_;
  Rational intercept_;
};

Rational divisor_at(const DivisorSequence& ds, int s);

/// Orders v_a / d_a against v_b / d_b exactly. A zero divisor means +infinity;
/// two infinite claims compare by their vote counts.
std::strong_ordering compare_claims(std::int64_t v_a, const Rational& d_a, std::int64_t v_b, const Rational& d_b);

}  // namespace seatlab
