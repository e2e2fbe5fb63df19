#include "seatlab/model.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

namespace seatlab {

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw PreconditionError("malformed rational '" + std::string(whole) + "'");
  }
  Integer value{std::string(digits)};
  return text.front() == '-' ? Integer(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty()) throw PreconditionError("empty rational");
  const auto slash = body.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(body, text));
  const Integer num = parse_integer(trim(body.substr(0, slash)), text);
  const Integer den = parse_integer(trim(body.substr(slash + 1)), text);
  if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Integer floor_div(const Integer& num, const Integer& den) {
  Integer q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

Integer ceil_div(const Integer& num, const Integer& den) { return -floor_div(-num, den); }

Integer floor(const Rational& q) {
  return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

Integer ceil(const Rational& q) {
  return ceil_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

// ---------------------------------------------------------------------------

ApportionmentInstance::ApportionmentInstance(std::vector<std::int64_t> votes, int seats)
    : votes_(std::move(votes)), seats_(seats), total_(0) {
  if (votes_.empty()) throw PreconditionError("an apportionment instance needs at least one party");
  if (seats_ <= 0) throw PreconditionError("house size must be positive");
  for (auto v : votes_) {
    if (v <= 0) throw PreconditionError("every party needs a positive vote count");
    total_ += v;
  }
}

Rational ApportionmentInstance::quota(std::size_t party) const {
  return Rational(Integer(votes_.at(party)) * seats_, Integer(total_));
}

void ApportionmentInstance::validate(const SeatDistribution& x) const {
  if (x.size() != votes_.size()) throw PreconditionError("seat distribution has the wrong number of parties");
  std::int64_t sum = 0;
  for (int xi : x) {
    if (xi < 0) throw PreconditionError("negative seat count");
    sum += xi;
  }
  if (sum != seats_) throw PreconditionError("seat distribution does not sum to the house size");
}

namespace {

template <class Range>
std::string join(const Range& r) {
  std::ostringstream out;
  out << '(';
  bool first = true;
  for (const auto& e : r) {
    if (!first) out << ',';
    out << e;
    first = false;
  }
  out << ')';
  return out.str();
}

}  // namespace

std::string to_string(const ApportionmentInstance& inst) {
  return "(" + join(inst.votes()) + "," + std::to_string(inst.seats()) + ")";
}

std::string to_string(const SeatDistribution& x) { return join(x); }

// ---------------------------------------------------------------------------

ApprovalProfile::ApprovalProfile(int num_candidates, std::vector<std::vector<int>> ballots)
    : num_candidates_(num_candidates), ballots_(std::move(ballots)) {
  if (num_candidates_ < 0 || num_candidates_ > kMaxCandidates) {
    throw PreconditionError("candidate count must lie in [0, 64]");
  }
  masks_.reserve(ballots_.size());
  for (auto& ballot : ballots_) {
    std::uint64_t mask = 0;
    for (int c : ballot) {
      if (c < 0 || c >= num_candidates_) throw PreconditionError("ballot references an unknown candidate");
      const std::uint64_t bit = std::uint64_t{1} << c;
      if (mask & bit) throw PreconditionError("ballot lists a candidate twice");
      mask |= bit;
    }
    std::sort(ballot.begin(), ballot.end());
    masks_.push_back(mask);
  }
}

int ApprovalProfile::approval_count(int c) const {
  const std::uint64_t bit = std::uint64_t{1} << c;
  return static_cast<int>(std::count_if(masks_.begin(), masks_.end(), [bit](std::uint64_t m) { return (m & bit) != 0; }));
}

std::uint64_t to_mask(const Committee& s) {
  std::uint64_t mask = 0;
  for (int c : s) mask |= std::uint64_t{1} << c;
  return mask;
}

Committee from_mask(std::uint64_t mask) {
  Committee s;
  s.reserve(std::popcount(mask));
  while (mask) {
    s.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return s;
}

void validate_committee(const ApprovalProfile& profile, const Committee& s) {
  std::uint64_t seen = 0;
  for (int c : s) {
    if (c < 0 || c >= profile.num_candidates()) throw PreconditionError("committee references an unknown candidate");
    const std::uint64_t bit = std::uint64_t{1} << c;
    if (seen & bit) throw PreconditionError("committee lists a candidate twice");
    seen |= bit;
  }
}

// ---------------------------------------------------------------------------

WeightSequence WeightSequence::pav() {
  WeightSequence w;
  w.family_ = Family::Pav;
  return w;
}

WeightSequence WeightSequence::chamberlin_courant() {
  WeightSequence w;
  w.family_ = Family::ChamberlinCourant;
  return w;
}

WeightSequence WeightSequence::top_k() {
  WeightSequence w;
  w.family_ = Family::TopK;
  return w;
}

WeightSequence WeightSequence::penrose() {
  WeightSequence w;
  w.family_ = Family::Penrose;
  return w;
}

WeightSequence WeightSequence::harmonic_odd() {
  WeightSequence w;
  w.family_ = Family::HarmonicOdd;
  return w;
}

WeightSequence WeightSequence::affine(Rational z) {
  if (z < 0) throw PreconditionError("affine weight parameter must be non-negative");
  WeightSequence w;
  w.family_ = Family::Affine;
  w.parameter_ = std::move(z);
  return w;
}

WeightSequence WeightSequence::truncated(const WeightSequence& base, int t) {
  if (t < 0) throw PreconditionError("truncation length must be non-negative");
  WeightSequence w;
  w.family_ = Family::Truncated;
  w.cut_ = t;
  w.base_ = std::make_shared<const WeightSequence>(base);
  return w;
}

WeightSequence WeightSequence::explicit_sequence(std::vector<Rational> prefix, Rational tail) {
  if (tail < 0 || std::any_of(prefix.begin(), prefix.end(), [](const Rational& q) { return q < 0; })) {
    throw PreconditionError("weights must be non-negative");
  }
  WeightSequence w;
  w.family_ = Family::Explicit;
  w.prefix_ = std::move(prefix);
  w.tail_ = std::move(tail);
  return w;
}

Rational WeightSequence::at(int j) const {
  if (j < 1) throw PreconditionError("weight index starts at 1");
  switch (family_) {
    case Family::Pav:
      return Rational(1, j);
    case Family::ChamberlinCourant:
      return j == 1 ? Rational(1) : Rational(0);
    case Family::TopK:
      return Rational(1);
    case Family::Penrose:
      return Rational(1, Integer(j) * j);
    case Family::HarmonicOdd:
      return Rational(1, 2 * j - 1);
    case Family::Affine:
      if (j <= 4) return Rational(0);
      if (j == 5) return parameter_;
      return Rational(1, j - 5);
    case Family::Truncated:
      return j <= cut_ ? Rational(0) : base_->at(j);
    case Family::Explicit:
      return j <= static_cast<int>(prefix_.size()) ? prefix_[j - 1] : tail_;
  }
  return Rational(0);
}

Rational WeightSequence::prefix_sum(int s) const {
  Rational sum = 0;
  for (int j = 1; j <= s; ++j) sum += at(j);
  return sum;
}

bool WeightSequence::non_increasing() const {
  switch (family_) {
    case Family::Pav:
    case Family::ChamberlinCourant:
    case Family::TopK:
    case Family::Penrose:
    case Family::HarmonicOdd:
      return true;
    case Family::Affine:
      return false;
    case Family::Truncated:
      if (cut_ == 0) return base_->non_increasing();
      // Zeros followed by a non-increasing base tail: only fine if that tail is all zero.
      return base_->non_increasing() && base_->at(cut_ + 1) == 0;
    case Family::Explicit:
      for (std::size_t i = 1; i < prefix_.size(); ++i) {
        if (prefix_[i] > prefix_[i - 1]) return false;
      }
      return prefix_.empty() || tail_ <= prefix_.back();
  }
  return false;
}

bool WeightSequence::positive() const {
  switch (family_) {
    case Family::Pav:
    case Family::TopK:
    case Family::Penrose:
    case Family::HarmonicOdd:
      return true;
    case Family::ChamberlinCourant:
    case Family::Affine:
      return false;
    case Family::Truncated:
      return cut_ == 0 && base_->positive();
    case Family::Explicit:
      return tail_ > 0 && std::all_of(prefix_.begin(), prefix_.end(), [](const Rational& q) { return q > 0; });
  }
  return false;
}

std::string WeightSequence::name() const {
  switch (family_) {
    case Family::Pav:
      return "pav";
    case Family::ChamberlinCourant:
      return "cc";
    case Family::TopK:
      return "topk";
    case Family::Penrose:
      return "penrose";
    case Family::HarmonicOdd:
      return "harmonic-odd";
    case Family::Affine:
      return "affine(" + to_string(parameter_) + ")";
    case Family::Truncated:
      return base_->name() + "[" + std::to_string(cut_) + "]";
    case Family::Explicit: {
      std::string out = "explicit(";
      for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) out += ',';
        out += to_string(prefix_[i]);
      }
      return out + ";tail=" + to_string(tail_) + ")";
    }
  }
  return "?";
}

Rational weight_at(const WeightSequence& ws, int j) { return ws.at(j); }

// ---------------------------------------------------------------------------

DivisorSequence DivisorSequence::dhondt() {
  DivisorSequence d;
  d.family_ = Family::DHondt;
  return d;
}

DivisorSequence DivisorSequence::sainte_lague() {
  DivisorSequence d;
  d.family_ = Family::SainteLague;
  return d;
}

DivisorSequence DivisorSequence::from_weights(const WeightSequence& ws) {
  DivisorSequence d;
  d.family_ = Family::FromWeights;
  d.weights_ = std::make_shared<const WeightSequence>(ws);
  return d;
}

DivisorSequence DivisorSequence::explicit_sequence(std::vector<Rational> prefix, Rational slope, Rational intercept) {
  DivisorSequence d;
  d.family_ = Family::Explicit;
  d.prefix_ = std::move(prefix);
  d.slope_ = std::move(slope);
  d.intercept_ = std::move(intercept);
  return d;
}

DivisorSequence DivisorSequence::impervious() const {
  DivisorSequence d = *this;
  d.impervious_ = true;
  return d;
}

Rational DivisorSequence::at(int s) const {
  if (s < 0) throw PreconditionError("divisor index starts at 0");
  if (impervious_ && s == 0) return Rational(0);
  switch (family_) {
    case Family::DHondt:
      return Rational(s + 1);
    case Family::SainteLague:
      return Rational(2 * s + 1);
    case Family::FromWeights: {
      const Rational w = weights_->at(s + 1);
      if (w == 0) {
        throw PreconditionError("divisor undefined: weight " + std::to_string(s + 1) + " of " + weights_->name() +
                                " is zero");
      }
      return 1 / w;
    }
    case Family::Explicit:
      if (s < static_cast<int>(prefix_.size())) return prefix_[s];
      return slope_ * s + intercept_;
  }
  return Rational(0);
}

void DivisorSequence::validate(int upto) const {
  Rational prev = at(impervious_ ? 1 : 0);
  if (prev <= 0) throw PreconditionError("divisors must be positive");
  for (int s = impervious_ ? 2 : 1; s <= upto; ++s) {
    Rational cur = at(s);
    if (cur < prev) throw PreconditionError("divisor sequence " + name() + " decreases at " + std::to_string(s));
    prev = std::move(cur);
  }
}

std::string DivisorSequence::name() const {
  std::string out;
  switch (family_) {
    case Family::DHondt:
      out = "dhondt";
      break;
    case Family::SainteLague:
      out = "sainte-lague";
      break;
    case Family::FromWeights:
      out = "from-weights(" + weights_->name() + ")";
      break;
    case Family::Explicit: {
      out = "divisor(";
      for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) out += ',';
        out += to_string(prefix_[i]);
      }
      out += ";tail=" + to_string(slope_) + "*s+" + to_string(intercept_) + ")";
      break;
    }
  }
  return impervious_ ? out + "/impervious" : out;
}

Rational divisor_at(const DivisorSequence& ds, int s) { return ds.at(s); }

std::strong_ordering compare_claims(std::int64_t v_a, const Rational& d_a, std::int64_t v_b, const Rational& d_b) {
  const bool inf_a = d_a == 0;
  const bool inf_b = d_b == 0;
  if (inf_a && inf_b) return v_a <=> v_b;
  if (inf_a) return std::strong_ordering::greater;
  if (inf_b) return std::strong_ordering::less;
  // v_a / d_a vs v_b / d_b with positive divisors: cross-multiply.
  const Rational lhs = v_a * d_b;
  const Rational rhs = v_b * d_a;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace seatlab
