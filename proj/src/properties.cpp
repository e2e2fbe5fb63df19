#include "seatlab/properties.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace seatlab {

namespace {

std::string fmt(const Integer& q) { return q.str(); }

Integer lower_quota_of(const ApportionmentInstance& inst, std::size_t i) {
  return floor_div(Integer(inst.votes(i)) * inst.seats(), Integer(inst.total_votes()));
}

Integer upper_quota_of(const ApportionmentInstance& inst, std::size_t i) {
  return ceil_div(Integer(inst.votes(i)) * inst.seats(), Integer(inst.total_votes()));
}

PropertyReport finish(std::vector<PartyVerdict> parties) {
  PropertyReport r;
  r.parties = std::move(parties);
  r.pass = std::all_of(r.parties.begin(), r.parties.end(), [](const PartyVerdict& v) { return v.pass; });
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

PropertyReport explain_lower_quota(const ApportionmentInstance& inst, const SeatDistribution& x) {
  inst.validate(x);
  std::vector<PartyVerdict> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Integer lo = lower_quota_of(inst, i);
    out.push_back({x[i] >= lo, "x >= " + fmt(lo)});
  }
  return finish(std::move(out));
}

PropertyReport explain_quota(const ApportionmentInstance& inst, const SeatDistribution& x) {
  inst.validate(x);
  std::vector<PartyVerdict> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Integer lo = lower_quota_of(inst, i);
    const Integer hi = upper_quota_of(inst, i);
    out.push_back({lo <= x[i] && x[i] <= hi, fmt(lo) + " <= x <= " + fmt(hi)});
  }
  return finish(std::move(out));
}

bool check_lower_quota(const ApportionmentInstance& inst, const SeatDistribution& x) {
  return explain_lower_quota(inst, x).pass;
}

bool check_quota(const ApportionmentInstance& inst, const SeatDistribution& x) { return explain_quota(inst, x).pass; }

// ---------------------------------------------------------------------------
// Penrose bounds.

namespace {

// sqrt(v) = coefficient * sqrt(radicand) with a square-free radicand.
struct Surd {
  std::int64_t coefficient = 1;
  std::int64_t radicand = 1;
};

Surd split_square_free(std::int64_t v) {
  Surd s;
  std::int64_t rest = v;
  for (std::int64_t f = 2; f * f <= rest; ++f) {
    while (rest % (f * f) == 0) {
      rest /= f * f;
      s.coefficient *= f;
    }
  }
  s.radicand = rest;
  return s;
}

// h sqrt(v_i) == q * sum_l sqrt(v_l)? Square roots of distinct square-free
// integers are linearly independent over the rationals, so the identity holds
// iff the coefficients collected per radicand all vanish.
bool surd_identity(const std::vector<Surd>& surds, std::size_t i, std::int64_t h, const Integer& q) {
  std::map<std::int64_t, Integer> coefficient;
  coefficient[surds[i].radicand] += Integer(h) * surds[i].coefficient;
  for (const Surd& s : surds) coefficient[s.radicand] -= q * s.coefficient;
  return std::all_of(coefficient.begin(), coefficient.end(), [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

std::vector<Integer> penrose_bounds(const ApportionmentInstance& inst) {
  const std::size_t p = inst.parties();
  const std::int64_t h = inst.seats();
  std::vector<Surd> surds;
  for (auto v : inst.votes()) surds.push_back(split_square_free(v));
  std::vector<std::optional<Integer>> bound(p);

  for (unsigned bits = 32;; bits *= 2) {
    // sqrt(v) * 2^bits enclosed in [lo, hi].
    const Integer scale = Integer(1) << bits;
    std::vector<Integer> lo(p), hi(p);
    Integer sum_lo = 0, sum_hi = 0;
    for (std::size_t i = 0; i < p; ++i) {
      const Integer scaled = Integer(inst.votes(i)) * scale * scale;
      lo[i] = boost::multiprecision::sqrt(scaled);
      hi[i] = lo[i] * lo[i] == scaled ? lo[i] : Integer(lo[i] + 1);
      sum_lo += lo[i];
      sum_hi += hi[i];
    }
    bool done = true;
    for (std::size_t i = 0; i < p; ++i) {
      if (bound[i]) continue;
      const Integer floor_lo = floor_div(h * lo[i], sum_hi);
      const Integer floor_hi = floor_div(h * hi[i], sum_lo);
      if (floor_lo == floor_hi) {
        bound[i] = floor_lo;
      } else if (floor_hi == floor_lo + 1 && surd_identity(surds, i, h, floor_hi)) {
        bound[i] = floor_hi;
      } else {
        done = false;
      }
    }
    if (done) break;
  }
  std::vector<Integer> out;
  out.reserve(p);
  for (auto& b : bound) out.push_back(std::move(*b));
  return out;
}

PropertyReport explain_penrose(const ApportionmentInstance& inst, const SeatDistribution& x) {
  inst.validate(x);
  const auto bounds = penrose_bounds(inst);
  std::vector<PartyVerdict> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back({x[i] >= bounds[i], "x >= " + fmt(bounds[i])});
  return finish(std::move(out));
}

bool check_penrose(const ApportionmentInstance& inst, const SeatDistribution& x) {
  return explain_penrose(inst, x).pass;
}

// ---------------------------------------------------------------------------

PropertyReport explain_cambridge(const ApportionmentInstance& inst, const SeatDistribution& x, int base) {
  inst.validate(x);
  const std::int64_t p = static_cast<std::int64_t>(inst.parties());
  if (base < 0 || inst.seats() < base * p) {
    throw PreconditionError("Cambridge check needs h >= base * p");
  }
  const Integer surplus = inst.seats() - base * p;
  std::vector<PartyVerdict> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Integer shifted = floor_div(Integer(inst.votes(i)) * surplus, Integer(inst.total_votes()));
    out.push_back({x[i] >= base && x[i] - base >= shifted,
                   "x >= " + std::to_string(base) + " and x - " + std::to_string(base) + " >= " + fmt(shifted)});
  }
  return finish(std::move(out));
}

bool check_cambridge(const ApportionmentInstance& inst, const SeatDistribution& x, int base) {
  return explain_cambridge(inst, x, base).pass;
}

PropertyReport explain_threshold(const ApportionmentInstance& inst, const SeatDistribution& x, int t) {
  inst.validate(x);
  if (t < 1 || t >= inst.seats()) throw PreconditionError("threshold check needs 1 <= t < h");
  std::int64_t seated_votes = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0) seated_votes += inst.votes(i);
  }
  const Rational hurdle(t, inst.seats());
  std::vector<PartyVerdict> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) {
      out.push_back({true, "unseated"});
      continue;
    }
    const Rational share(inst.votes(i), seated_votes);
    out.push_back({share > hurdle, to_string(share) + " > " + to_string(hurdle)});
  }
  return finish(std::move(out));
}

bool check_threshold(const ApportionmentInstance& inst, const SeatDistribution& x, int t) {
  return explain_threshold(inst, x, t).pass;
}

// ---------------------------------------------------------------------------
// PJR

namespace {

struct Group {
  std::uint64_t mask;
  std::int64_t count;
};

std::vector<Group> nonempty_ballot_types(const ApprovalProfile& profile) {
  std::map<std::uint64_t, std::int64_t> counts;
  for (auto mask : profile.ballot_masks()) {
    if (mask) ++counts[mask];
  }
  std::vector<Group> out;
  for (const auto& [mask, count] : counts) out.push_back({mask, count});
  return out;
}

void check_pjr_args(const ApprovalProfile& profile, int k, const Committee& s) {
  validate_committee(profile, s);
  if (k < 1 || static_cast<int>(s.size()) != k) throw PreconditionError("PJR check needs a size-k committee");
}

}  // namespace

bool is_party_list(const ApprovalProfile& profile) {
  std::uint64_t seen = 0;
  for (const auto& g : nonempty_ballot_types(profile)) {
    if (seen & g.mask) return false;
    seen |= g.mask;
  }
  return true;
}

bool check_pjr_exhaustive(const ApprovalProfile& profile, int k, const Committee& s, const PjrOptions& options) {
  check_pjr_args(profile, k, s);
  const auto groups = nonempty_ballot_types(profile);
  const int types = static_cast<int>(groups.size());
  if (types > options.max_ballot_types) {
    throw SizeError("PJR search over " + std::to_string(types) + " distinct ballots exceeds the cap of " +
                    std::to_string(options.max_ballot_types));
  }
  const std::int64_t n = profile.num_voters();
  const std::uint64_t committee = to_mask(s);
  // A violating group can be widened to every voter sharing its ballots without
  // changing the common or the united approvals, so ballot-type subsets suffice.
  const std::size_t subsets = std::size_t{1} << types;
  std::vector<std::uint64_t> common(subsets, ~std::uint64_t{0});
  std::vector<std::uint64_t> united(subsets, 0);
  std::vector<std::int64_t> size(subsets, 0);
  for (std::size_t b = 1; b < subsets; ++b) {
    const int low = std::countr_zero(b);
    const std::size_t rest = b & (b - 1);
    common[b] = common[rest] & groups[low].mask;
    united[b] = united[rest] | groups[low].mask;
    size[b] = size[rest] + groups[low].count;
    // Largest admissible ell: |N*| >= ell n / k and |common| >= ell.
    const std::int64_t ell = std::min<std::int64_t>(size[b] * k / n, std::popcount(common[b]));
    if (ell > std::popcount(committee & united[b])) return false;
  }
  return true;
}

bool check_pjr(const ApprovalProfile& profile, int k, const Committee& s, const PjrOptions& options) {
  if (!is_party_list(profile)) return check_pjr_exhaustive(profile, k, s, options);
  check_pjr_args(profile, k, s);
  const std::int64_t n = profile.num_voters();
  const std::uint64_t committee = to_mask(s);
  for (const auto& g : nonempty_ballot_types(profile)) {
    const std::int64_t ell = std::min<std::int64_t>(g.count * k / n, std::popcount(g.mask));
    if (std::popcount(g.mask & committee) < ell) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::optional<QuotaViolation> lower_quota_witness(const WeightSequence& ws, int j, int z) {
  if (j < 1 || z < 2) throw PreconditionError("witness instances need j >= 1 and Z >= 2");
  std::vector<ApportionmentInstance> instances;
  {
    std::vector<std::int64_t> votes(z + 1, static_cast<std::int64_t>(j) * z - 1);
    votes[0] = z;
    instances.emplace_back(std::move(votes), j * z);
  }
  {
    std::vector<std::int64_t> votes(z + 1, z - 1);
    votes[0] = static_cast<std::int64_t>(j) * z;
    instances.emplace_back(std::move(votes), z + j - 1);
  }
  for (const auto& inst : instances) {
    for (const auto& x : induced_apportionment(Rule::owa(ws), inst)) {
      const PropertyReport r = explain_lower_quota(inst, x);
      for (std::size_t i = 0; i < r.parties.size(); ++i) {
        if (!r.parties[i].pass) return QuotaViolation{inst, x, i};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sweeps

void SweepConfig::validate() const {
  if (min_parties < 1 || max_parties < min_parties) throw PreconditionError("party range must satisfy 1 <= min <= max");
  if (max_votes < 1 || max_seats < 1) throw PreconditionError("vote and seat bounds must be positive");
  if (mode == Mode::Random) {
    if (!seed) throw PreconditionError("a random sweep needs a seed");
    if (trials < 1) throw PreconditionError("a random sweep needs a positive trial count");
  }
}

const std::vector<std::string>& claim_catalog() {
  static const std::vector<std::string> catalog = {
      "seq-equiv",     "owa-divisor",    "pav-dhondt", "maxphrag-dhondt",   "monroe-lr", "varphrag-sl",
      "harmonicodd-sl", "cc-largest",    "topk-plurality", "sav-topk",      "dhondt-lowerquota",
      "lr-quota",      "penrose",        "cambridge",  "threshold",         "pjr-implies-lowerquota"};
  return catalog;
}

namespace {

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

void grid(std::vector<std::int64_t>& votes, std::size_t party, const SweepConfig& cfg,
          std::vector<ApportionmentInstance>& out) {
  if (party == votes.size()) {
    for (int h = 1; h <= cfg.max_seats; ++h) out.emplace_back(votes, h);
    return;
  }
  for (std::int64_t v = 1; v <= cfg.max_votes; ++v) {
    votes[party] = v;
    grid(votes, party + 1, cfg, out);
  }
}

std::string describe(const OutcomeSet<SeatDistribution>& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : set) {
    if (!first) out += ",";
    out += to_string(x);
    first = false;
  }
  return out + "}";
}

using Check = std::function<std::optional<std::string>(const ApportionmentInstance&)>;

std::optional<std::string> compare_sets(const OutcomeSet<SeatDistribution>& got,
                                        const OutcomeSet<SeatDistribution>& expected, const std::string& what) {
  if (got == expected) return std::nullopt;
  return what + ": " + describe(got) + " != " + describe(expected);
}

std::optional<std::string> all_outcomes(const OutcomeSet<SeatDistribution>& outcomes,
                                        const std::function<bool(const SeatDistribution&)>& property,
                                        const std::string& what) {
  for (const auto& x : outcomes) {
    if (!property(x)) return what + " violated by " + to_string(x);
  }
  return std::nullopt;
}

OutcomeSet<SeatDistribution> one_seat_each_to_largest(const ApportionmentInstance& inst) {
  std::vector<std::int64_t> sorted(inst.votes().begin(), inst.votes().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::int64_t cutoff = sorted[inst.seats() - 1];
  SeatDistribution base(inst.parties(), 0);
  std::vector<int> cap(inst.parties(), 0);
  int above = 0;
  for (std::size_t i = 0; i < inst.parties(); ++i) {
    if (inst.votes(i) > cutoff) {
      base[i] = 1;
      ++above;
    } else if (inst.votes(i) == cutoff) {
      cap[i] = 1;
    }
  }
  return complete_ties(base, cap, inst.seats() - above, std::numeric_limits<std::size_t>::max());
}

// Every distribution of the seats among the parties with the most votes.
OutcomeSet<SeatDistribution> all_to_plurality(const ApportionmentInstance& inst) {
  const std::int64_t top = *std::max_element(inst.votes().begin(), inst.votes().end());
  std::vector<int> cap(inst.parties(), 0);
  for (std::size_t i = 0; i < inst.parties(); ++i) {
    if (inst.votes(i) == top) cap[i] = inst.seats();
  }
  return complete_ties(SeatDistribution(inst.parties(), 0), cap, inst.seats(),
                       std::numeric_limits<std::size_t>::max());
}

struct ClaimPlan {
  // Maps a sweep instance to the instance actually checked; nullopt skips it.
  std::function<std::optional<ApportionmentInstance>(const ApportionmentInstance&)> select;
  Check check;
};

ClaimPlan plan_for(std::string_view claim, const SweepConfig& cfg) {
  const auto weights_or = [&](const WeightSequence& fallback) { return cfg.weights ? *cfg.weights : fallback; };
  const bool divisible_only = cfg.divisibility_filter;
  auto select = [divisible_only](const ApportionmentInstance& inst) -> std::optional<ApportionmentInstance> {
    if (divisible_only && inst.total_votes() % inst.seats() != 0) return std::nullopt;
    return inst;
  };

  if (claim == "seq-equiv") {
    std::vector<WeightSequence> family;
    if (cfg.weights) {
      family.push_back(*cfg.weights);
    } else {
      family = {WeightSequence::pav(), WeightSequence::harmonic_odd(), WeightSequence::chamberlin_courant(),
                WeightSequence::top_k()};
    }
    return {select, [family](const ApportionmentInstance& inst) -> std::optional<std::string> {
              for (const auto& w : family) {
                if (auto f = compare_sets(induced_apportionment(Rule::seq_owa(w), inst),
                                          induced_apportionment(Rule::owa(w), inst), "seq-owa vs owa " + w.name())) {
                  return f;
                }
              }
              return std::nullopt;
            }};
  }
  if (claim == "owa-divisor") {
    std::vector<WeightSequence> family;
    if (cfg.weights) {
      family.push_back(*cfg.weights);
    } else {
      family = random_nonincreasing_weights(cfg.seed.value_or(0), 3, cfg.max_seats);
    }
    return {select, [family](const ApportionmentInstance& inst) -> std::optional<std::string> {
              for (const auto& w : family) {
                if (auto f = compare_sets(induced_apportionment(Rule::owa(w), inst),
                                          divisor_apportion(inst, DivisorSequence::from_weights(w)),
                                          "owa vs divisor for " + w.name())) {
                  return f;
                }
              }
              return std::nullopt;
            }};
  }
  if (claim == "pav-dhondt") {
    const WeightSequence w = weights_or(WeightSequence::pav());
    return {select, [w](const ApportionmentInstance& inst) {
              return compare_sets(induced_apportionment(Rule::owa(w), inst),
                                  divisor_apportion(inst, DivisorSequence::dhondt()), "owa " + w.name() + " vs dhondt");
            }};
  }
  if (claim == "maxphrag-dhondt") {
    // Min-max load ignores parties below the maximum, so under ties it admits
    // more outcomes than D'Hondt. Checked: D'Hondt is contained, with equality
    // whenever D'Hondt is decisive.
    return {select, [](const ApportionmentInstance& inst) -> std::optional<std::string> {
              const auto induced = induced_apportionment(Rule::max_phragmen(), inst);
              const auto dhondt = divisor_apportion(inst, DivisorSequence::dhondt());
              if (dhondt.size() == 1) return compare_sets(induced, dhondt, "max-phragmen vs decisive dhondt");
              if (!std::includes(induced.begin(), induced.end(), dhondt.begin(), dhondt.end())) {
                return "dhondt " + describe(dhondt) + " not within max-phragmen " + describe(induced);
              }
              return std::nullopt;
            }};
  }
  if (claim == "monroe-lr") {
    return {[](const ApportionmentInstance& inst) -> std::optional<ApportionmentInstance> {
              if (inst.total_votes() % inst.seats() != 0) return std::nullopt;
              return inst;
            },
            [](const ApportionmentInstance& inst) {
              return compare_sets(induced_apportionment(Rule::monroe(), inst), largest_remainder(inst),
                                  "monroe vs largest remainder");
            }};
  }
  if (claim == "varphrag-sl") {
    return {select, [](const ApportionmentInstance& inst) {
              return compare_sets(induced_apportionment(Rule::var_phragmen(), inst),
                                  divisor_apportion(inst, DivisorSequence::sainte_lague()), "var-phragmen vs sainte-lague");
            }};
  }
  if (claim == "harmonicodd-sl") {
    const WeightSequence w = weights_or(WeightSequence::harmonic_odd());
    return {select, [w](const ApportionmentInstance& inst) {
              return compare_sets(induced_apportionment(Rule::owa(w), inst),
                                  divisor_apportion(inst, DivisorSequence::sainte_lague()),
                                  "owa " + w.name() + " vs sainte-lague");
            }};
  }
  if (claim == "cc-largest") {
    const WeightSequence w = weights_or(WeightSequence::chamberlin_courant());
    return {[select](const ApportionmentInstance& inst) -> std::optional<ApportionmentInstance> {
              if (static_cast<int>(inst.parties()) <= inst.seats()) return std::nullopt;
              return select(inst);
            },
            [w](const ApportionmentInstance& inst) {
              return compare_sets(induced_apportionment(Rule::owa(w), inst), one_seat_each_to_largest(inst),
                                  "owa " + w.name() + " vs one seat per largest party");
            }};
  }
  if (claim == "topk-plurality") {
    const WeightSequence w = weights_or(WeightSequence::top_k());
    return {select, [w](const ApportionmentInstance& inst) {
              return compare_sets(induced_apportionment(Rule::owa(w), inst), all_to_plurality(inst),
                                  "owa " + w.name() + " vs all seats to the plurality party");
            }};
  }
  if (claim == "sav-topk") {
    return {select, [](const ApportionmentInstance& inst) {
              return compare_sets(induced_apportionment(Rule::sav(), inst),
                                  induced_apportionment(Rule::owa(WeightSequence::top_k()), inst), "sav vs topk");
            }};
  }
  if (claim == "dhondt-lowerquota") {
    return {select, [](const ApportionmentInstance& inst) {
              return all_outcomes(
                  divisor_apportion(inst, DivisorSequence::dhondt()),
                  [&](const SeatDistribution& x) { return check_lower_quota(inst, x); }, "lower quota");
            }};
  }
  if (claim == "lr-quota") {
    return {select, [](const ApportionmentInstance& inst) {
              return all_outcomes(
                  largest_remainder(inst), [&](const SeatDistribution& x) { return check_quota(inst, x); }, "quota");
            }};
  }
  if (claim == "penrose") {
    const WeightSequence w = weights_or(WeightSequence::penrose());
    return {select, [w](const ApportionmentInstance& inst) {
              return all_outcomes(
                  induced_apportionment(Rule::owa(w), inst),
                  [&](const SeatDistribution& x) { return check_penrose(inst, x); }, "penrose condition");
            }};
  }
  if (claim == "cambridge") {
    // Seats are shifted to h' = 5p + h - 1 so that every instance satisfies h' >= 5p.
    const auto weights = cfg.weights;
    return {[select](const ApportionmentInstance& inst) -> std::optional<ApportionmentInstance> {
              const int shifted = 5 * static_cast<int>(inst.parties()) + inst.seats() - 1;
              return select(ApportionmentInstance(std::vector<std::int64_t>(inst.votes().begin(), inst.votes().end()),
                                                  shifted));
            },
            [weights](const ApportionmentInstance& inst) {
              const WeightSequence w = weights ? *weights : WeightSequence::affine(Rational(5 * inst.total_votes() + 1));
              return all_outcomes(
                  induced_apportionment(Rule::owa(w), inst),
                  [&](const SeatDistribution& x) { return check_cambridge(inst, x, 5); },
                  "cambridge bounds under " + w.name());
            }};
  }
  if (claim == "threshold") {
    const auto weights = cfg.weights;
    return {select, [weights](const ApportionmentInstance& inst) -> std::optional<std::string> {
              for (int t = 1; t <= 2 && t < inst.seats(); ++t) {
                const WeightSequence w = weights ? *weights : WeightSequence::truncated(WeightSequence::pav(), t);
                if (auto f = all_outcomes(
                        induced_apportionment(Rule::owa(w), inst),
                        [&](const SeatDistribution& x) { return check_threshold(inst, x, t); },
                        "threshold t=" + std::to_string(t) + " under " + w.name())) {
                  return f;
                }
              }
              return std::nullopt;
            }};
  }
  if (claim == "pjr-implies-lowerquota") {
    return {[select](const ApportionmentInstance& inst) -> std::optional<ApportionmentInstance> {
              if (static_cast<std::int64_t>(inst.parties()) * inst.seats() > ApprovalProfile::kMaxCandidates) {
                return std::nullopt;
              }
              return select(inst);
            },
            [](const ApportionmentInstance& inst) -> std::optional<std::string> {
              const EmbeddedElection e = embed(inst);
              std::optional<std::string> failure;
              for_each_seat_distribution(inst.parties(), inst.seats(), [&](const SeatDistribution& x) {
                if (failure) return;
                const Committee s = representative_committee(e.embedding, x);
                const bool pjr = check_pjr_exhaustive(e.profile, e.k, s);
                const bool fast = check_pjr(e.profile, e.k, s);
                const bool lq = check_lower_quota(inst, x);
                if (pjr != lq || fast != pjr) {
                  failure = "committee for " + to_string(x) + ": pjr=" + std::to_string(pjr) +
                            " fast=" + std::to_string(fast) + " lower-quota=" + std::to_string(lq);
                }
              });
              return failure;
            }};
  }
  throw PreconditionError("unknown claim '" + std::string(claim) + "'");
}

}  // namespace

std::vector<ApportionmentInstance> sweep_instances(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<ApportionmentInstance> out;
  if (cfg.mode == SweepConfig::Mode::Exhaustive) {
    for (int p = cfg.min_parties; p <= cfg.max_parties; ++p) {
      std::vector<std::int64_t> votes(p, 1);
      grid(votes, 0, cfg, out);
    }
    return out;
  }
  std::mt19937_64 rng(*cfg.seed);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const auto p = static_cast<std::size_t>(draw(rng, cfg.min_parties, cfg.max_parties));
    std::vector<std::int64_t> votes(p);
    for (auto& v : votes) v = draw(rng, 1, cfg.max_votes);
    const int h = static_cast<int>(draw(rng, 1, cfg.max_seats));
    out.emplace_back(std::move(votes), h);
  }
  return out;
}

VerificationReport verify_claim(std::string_view claim, const SweepConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const ClaimPlan plan = plan_for(claim, cfg);
  VerificationReport report;
  report.claim = std::string(claim);
  for (const auto& candidate : sweep_instances(cfg)) {
    const auto inst = plan.select(candidate);
    if (!inst) continue;
    ++report.instances_tested;
    std::optional<std::string> failure;
    try {
      failure = plan.check(*inst);
    } catch (const Error& e) {
      failure = std::string("error: ") + e.what();
    }
    if (failure) report.failures.push_back({to_string(*inst), *failure});
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<WeightSequence> random_nonincreasing_weights(std::uint64_t seed, int count, int length) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<WeightSequence> out;
  for (int n = 0; n < count; ++n) {
    std::vector<Rational> prefix;
    Rational current = 1;
    for (int j = 0; j < std::max(length, 1); ++j) {
      prefix.push_back(current);
      const std::int64_t den = draw(rng, 1, 4);
      current *= Rational(draw(rng, 1, den), den);
    }
    out.push_back(WeightSequence::explicit_sequence(std::move(prefix), current));
  }
  return out;
}

}  // namespace seatlab
