#include "seatlab/multiwinner.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <optional>

#include "flow.hpp"

namespace seatlab {

namespace {

// Voters with identical ballots, restricted to a committee where needed.
struct BallotType {
  std::uint64_t mask;
  int count;
};

std::vector<BallotType> group_ballots(const ApprovalProfile& profile) {
  std::map<std::uint64_t, int> counts;
  for (std::uint64_t mask : profile.ballot_masks()) ++counts[mask];
  std::vector<BallotType> types;
  types.reserve(counts.size());
  for (const auto& [mask, count] : counts) types.push_back({mask, count});
  return types;
}

void require_committee_size(const ApprovalProfile& profile, int k) {
  if (k < 1 || k > profile.num_candidates()) {
    throw PreconditionError("committee size must lie in [1, number of candidates]");
  }
}

template <class Visit>
void for_each_committee(int m, int k, Visit&& visit) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::uint64_t mask = 0;
    for (int c : idx) mask |= std::uint64_t{1} << c;
    visit(mask);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

enum class Sense { Maximize, Minimize };

// Exhaustive search; `score` returns nullopt for infeasible committees.
template <class Score>
Winners best_committees(const ApprovalProfile& profile, int k, const EnumerationOptions& options, Sense sense,
                        Score&& score) {
  require_committee_size(profile, k);
  const int m = profile.num_candidates();
  if (binomial_capped(m, k, options.max_committees) > options.max_committees) {
    throw SizeError("C(" + std::to_string(m) + "," + std::to_string(k) + ") committees exceed the enumeration cap of " +
                    std::to_string(options.max_committees));
  }
  std::optional<Rational> best;
  std::vector<std::uint64_t> arg;
  for_each_committee(m, k, [&](std::uint64_t mask) {
    std::optional<Rational> value = score(mask);
    if (!value) return;
    if (!best || (sense == Sense::Maximize ? *value > *best : *value < *best)) {
      best = std::move(value);
      arg.clear();
      arg.push_back(mask);
    } else if (*value == *best) {
      arg.push_back(mask);
    }
  });
  if (!best) throw InfeasibleError("no feasible size-" + std::to_string(k) + " committee");
  Winners out;
  out.score = std::move(*best);
  for (std::uint64_t mask : arg) out.committees.insert(from_mask(mask));
  return out;
}

std::vector<Rational> prefix_sums(const WeightSequence& ws, int upto) {
  std::vector<Rational> sums(upto + 1);
  for (int j = 1; j <= upto; ++j) sums[j] = sums[j - 1] + ws.at(j);
  return sums;
}

Rational owa_value(const std::vector<BallotType>& types, const std::vector<Rational>& sums, std::uint64_t s) {
  Rational total = 0;
  for (const auto& t : types) {
    const int hits = std::popcount(t.mask & s);
    if (hits) total += t.count * sums[hits];
  }
  return total;
}

// Ballot types projected onto the members of a committee (bit j = j-th member).
struct Projection {
  std::vector<int> members;
  std::vector<std::uint64_t> type_members;
  std::vector<int> counts;
  std::vector<int> voter_type;  // -1 when the voter approves no member
};

Projection project(const ApprovalProfile& profile, std::uint64_t s) {
  Projection proj;
  proj.members = from_mask(s);
  std::map<std::uint64_t, int> index;
  proj.voter_type.assign(profile.num_voters(), -1);
  for (int i = 0; i < profile.num_voters(); ++i) {
    const std::uint64_t hit = profile.ballot_mask(i) & s;
    if (!hit) continue;
    std::uint64_t local = 0;
    for (std::size_t j = 0; j < proj.members.size(); ++j) {
      if (hit & (std::uint64_t{1} << proj.members[j])) local |= std::uint64_t{1} << j;
    }
    auto [it, inserted] = index.try_emplace(local, static_cast<int>(proj.type_members.size()));
    if (inserted) {
      proj.type_members.push_back(local);
      proj.counts.push_back(0);
    }
    ++proj.counts[it->second];
    proj.voter_type[i] = it->second;
  }
  return proj;
}

bool every_member_supported(const Projection& proj) {
  std::uint64_t covered = 0;
  for (std::uint64_t tm : proj.type_members) covered |= tm;
  const std::size_t k = proj.members.size();
  const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  return covered == all;
}

// One level of the density decomposition: members B, their supporting ballot
// types, and the common load |B| / supporters.
struct Block {
  std::uint64_t members = 0;
  std::vector<int> types;
  std::int64_t size = 0;
  std::int64_t supporters = 0;
};

std::vector<Block> principal_partition(const Projection& proj) {
  if (!every_member_supported(proj)) throw InfeasibleError("a committee member has no supporter");
  const std::size_t k = proj.members.size();
  std::uint64_t remaining = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  std::vector<bool> alive(proj.type_members.size(), true);
  std::vector<Block> blocks;
  while (remaining) {
    Block best;
    for (std::uint64_t b = remaining; b; b = (b - 1) & remaining) {
      std::int64_t supp = 0;
      for (std::size_t t = 0; t < proj.type_members.size(); ++t) {
        if (alive[t] && (proj.type_members[t] & b)) supp += proj.counts[t];
      }
      const std::int64_t size = std::popcount(b);
      // Ratio size/supp against best.size/best.supporters; larger sets win ties.
      const std::int64_t lhs = size * best.supporters;
      const std::int64_t rhs = best.size * supp;
      if (best.size == 0 || lhs > rhs || (lhs == rhs && size > best.size)) {
        best.members = b;
        best.size = size;
        best.supporters = supp;
      }
    }
    for (std::size_t t = 0; t < proj.type_members.size(); ++t) {
      if (alive[t] && (proj.type_members[t] & best.members)) {
        best.types.push_back(static_cast<int>(t));
        alive[t] = false;
      }
    }
    remaining &= ~best.members;
    blocks.push_back(std::move(best));
  }
  return blocks;
}

Rational partition_sum_of_squares(const std::vector<Block>& blocks) {
  Rational total = 0;
  for (const auto& b : blocks) total += Rational(b.size * b.size, b.supporters);
  return total;
}

Rational partition_max_load(const Projection& proj) {
  // Largest |B| / supporters(B) over non-empty B.
  const std::size_t k = proj.members.size();
  const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  std::int64_t best_num = 0;
  std::int64_t best_den = 1;
  for (std::uint64_t b = all; b; b = (b - 1) & all) {
    std::int64_t supp = 0;
    for (std::size_t t = 0; t < proj.type_members.size(); ++t) {
      if (proj.type_members[t] & b) supp += proj.counts[t];
    }
    if (supp == 0) throw InfeasibleError("a committee member has no supporter");
    const std::int64_t size = std::popcount(b);
    if (size * best_den > best_num * supp) {
      best_num = size;
      best_den = supp;
    }
  }
  return Rational(best_num, best_den);
}

void check_members(const ApprovalProfile& profile, const Committee& s) { validate_committee(profile, s); }

}  // namespace

std::uint64_t binomial_capped(int n, int k, std::uint64_t limit) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Exact running product C(n-k+i, i) stays integral at each step.
  unsigned __int128 value = 1;
  for (int i = 1; i <= k; ++i) {
    value = value * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (value > limit) return limit + 1;
  }
  return static_cast<std::uint64_t>(value);
}

// ---------------------------------------------------------------------------

Rational owa_satisfaction(const ApprovalProfile& profile, const Committee& s, const WeightSequence& ws) {
  check_members(profile, s);
  return owa_value(group_ballots(profile), prefix_sums(ws, static_cast<int>(s.size())), to_mask(s));
}

Winners owa_winners(const ApprovalProfile& profile, int k, const WeightSequence& ws,
                    const EnumerationOptions& options) {
  const auto types = group_ballots(profile);
  const auto sums = prefix_sums(ws, std::max(k, 0));
  return best_committees(profile, k, options, Sense::Maximize,
                         [&](std::uint64_t s) -> std::optional<Rational> { return owa_value(types, sums, s); });
}

Winners seq_owa_winners(const ApprovalProfile& profile, int k, const WeightSequence& ws,
                        const EnumerationOptions& options) {
  require_committee_size(profile, k);
  const auto types = group_ballots(profile);
  std::vector<Rational> weight(k + 2);
  for (int j = 1; j <= k + 1; ++j) weight[j] = ws.at(j);
  const int m = profile.num_candidates();

  std::set<std::uint64_t> frontier{0};
  for (int step = 0; step < k; ++step) {
    std::set<std::uint64_t> next;
    for (std::uint64_t s : frontier) {
      std::optional<Rational> best;
      std::vector<int> arg;
      for (int c = 0; c < m; ++c) {
        const std::uint64_t bit = std::uint64_t{1} << c;
        if (s & bit) continue;
        Rational gain = 0;
        for (const auto& t : types) {
          if (t.mask & bit) gain += t.count * weight[std::popcount(t.mask & s) + 1];
        }
        if (!best || gain > *best) {
          best = std::move(gain);
          arg.assign(1, c);
        } else if (gain == *best) {
          arg.push_back(c);
        }
      }
      for (int c : arg) next.insert(s | (std::uint64_t{1} << c));
    }
    if (next.size() > options.max_committees) {
      throw SizeError("sequential rule frontier exceeds the enumeration cap of " +
                      std::to_string(options.max_committees));
    }
    frontier = std::move(next);
  }

  const auto sums = prefix_sums(ws, k);
  Winners out;
  bool first = true;
  for (std::uint64_t s : frontier) {
    Rational value = owa_value(types, sums, s);
    if (first || value > out.score) out.score = std::move(value);
    first = false;
    out.committees.insert(from_mask(s));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

int monroe_value(const std::vector<BallotType>& types, std::uint64_t s, int n, int k) {
  const Committee members = from_mask(s);
  const int type_count = static_cast<int>(types.size());
  const int source = 0;
  const int sink = 1 + type_count + k;
  detail::FlowNetwork net(sink + 1);
  for (int t = 0; t < type_count; ++t) {
    if (!(types[t].mask & s)) continue;
    net.add_edge(source, 1 + t, types[t].count);
    for (int j = 0; j < k; ++j) {
      if (types[t].mask & (std::uint64_t{1} << members[j])) {
        net.add_edge(1 + t, 1 + type_count + j, detail::FlowNetwork::kInfinite);
      }
    }
  }
  for (int j = 0; j < k; ++j) net.add_edge(1 + type_count + j, sink, n / k);
  // Unmatched voters fill the leftover capacity arbitrarily without changing the score.
  return static_cast<int>(net.max_flow(source, sink));
}

}  // namespace

int monroe_satisfaction(const ApprovalProfile& profile, const Committee& s) {
  check_members(profile, s);
  const int k = static_cast<int>(s.size());
  const int n = profile.num_voters();
  if (k == 0 || n % k != 0) {
    throw DivisibilityError("Monroe needs the committee size (" + std::to_string(k) + ") to divide the number of voters (" +
                            std::to_string(n) + ")");
  }
  return monroe_value(group_ballots(profile), to_mask(s), n, k);
}

Winners monroe_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options) {
  require_committee_size(profile, k);
  const int n = profile.num_voters();
  if (n % k != 0) {
    throw DivisibilityError("Monroe needs the committee size (" + std::to_string(k) + ") to divide the number of voters (" +
                            std::to_string(n) + ")");
  }
  const auto types = group_ballots(profile);
  return best_committees(profile, k, options, Sense::Maximize, [&](std::uint64_t s) -> std::optional<Rational> {
    return Rational(monroe_value(types, s, n, k));
  });
}

// ---------------------------------------------------------------------------

bool validate_load(const ApprovalProfile& profile, int k, const LoadDistribution& load) {
  const int n = profile.num_voters();
  const int m = profile.num_candidates();
  if (static_cast<int>(load.loads.size()) != n) return false;
  Rational total = 0;
  std::vector<Rational> column(m);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(load.loads[i].size()) != m) return false;
    for (int c = 0; c < m; ++c) {
      const Rational& l = load.loads[i][c];
      if (l < 0) return false;
      if (l != 0 && !(profile.ballot_mask(i) & (std::uint64_t{1} << c))) return false;
      column[c] += l;
      total += l;
    }
  }
  if (total != k) return false;
  return std::all_of(column.begin(), column.end(), [](const Rational& q) { return q == 0 || q == 1; });
}

Rational min_max_load(const ApprovalProfile& profile, const Committee& s) {
  check_members(profile, s);
  if (s.empty()) return Rational(0);
  return partition_max_load(project(profile, to_mask(s)));
}

VoterLoadVector balanced_loads(const ApprovalProfile& profile, const Committee& s) {
  check_members(profile, s);
  VoterLoadVector y(profile.num_voters(), Rational(0));
  if (s.empty()) return y;
  const Projection proj = project(profile, to_mask(s));
  std::vector<Rational> type_load(proj.type_members.size());
  for (const Block& b : principal_partition(proj)) {
    const Rational rho(b.size, b.supporters);
    for (int t : b.types) type_load[t] = rho;
  }
  for (int i = 0; i < profile.num_voters(); ++i) {
    if (proj.voter_type[i] >= 0) y[i] = type_load[proj.voter_type[i]];
  }
  return y;
}

LoadDistribution balanced_load_distribution(const ApprovalProfile& profile, const Committee& s) {
  check_members(profile, s);
  const int n = profile.num_voters();
  const int m = profile.num_candidates();
  LoadDistribution out{std::vector<std::vector<Rational>>(n, std::vector<Rational>(m, Rational(0)))};
  if (s.empty()) return out;
  const Projection proj = project(profile, to_mask(s));
  for (const Block& b : principal_partition(proj)) {
    const Rational rho(b.size, b.supporters);
    const std::int64_t a = static_cast<std::int64_t>(boost::multiprecision::numerator(rho));
    const std::int64_t d = static_cast<std::int64_t>(boost::multiprecision::denominator(rho));
    std::vector<bool> in_block(proj.type_members.size(), false);
    for (int t : b.types) in_block[t] = true;
    std::vector<int> voters;
    for (int i = 0; i < n; ++i) {
      if (proj.voter_type[i] >= 0 && in_block[proj.voter_type[i]]) voters.push_back(i);
    }
    const Committee local = from_mask(b.members);
    // Scaled by d: each member ships d units, each supporter absorbs a units.
    const int mcount = static_cast<int>(local.size());
    const int vcount = static_cast<int>(voters.size());
    const int source = 0;
    const int sink = 1 + mcount + vcount;
    detail::FlowNetwork net(sink + 1);
    std::vector<std::tuple<int, int, int>> arcs;  // edge, voter, candidate
    for (int j = 0; j < mcount; ++j) {
      net.add_edge(source, 1 + j, d);
      const int candidate = proj.members[local[j]];
      for (int v = 0; v < vcount; ++v) {
        if (profile.ballot_mask(voters[v]) & (std::uint64_t{1} << candidate)) {
          arcs.emplace_back(net.add_edge(1 + j, 1 + mcount + v, detail::FlowNetwork::kInfinite), voters[v], candidate);
        }
      }
    }
    for (int v = 0; v < vcount; ++v) net.add_edge(1 + mcount + v, sink, a);
    if (net.max_flow(source, sink) != b.size * d) throw Error("load witness flow is short; partition is inconsistent");
    for (const auto& [edge, voter, candidate] : arcs) out.loads[voter][candidate] = Rational(net.flow(edge), d);
  }
  return out;
}

Rational sum_of_squares(const VoterLoadVector& y) {
  Rational total = 0;
  for (const auto& q : y) total += q * q;
  return total;
}

Winners max_phragmen_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options) {
  return best_committees(profile, k, options, Sense::Minimize, [&](std::uint64_t s) -> std::optional<Rational> {
    const Projection proj = project(profile, s);
    if (!every_member_supported(proj)) return std::nullopt;
    return partition_max_load(proj);
  });
}

Winners var_phragmen_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options) {
  return best_committees(profile, k, options, Sense::Minimize, [&](std::uint64_t s) -> std::optional<Rational> {
    const Projection proj = project(profile, s);
    if (!every_member_supported(proj)) return std::nullopt;
    return partition_sum_of_squares(principal_partition(proj));
  });
}

// ---------------------------------------------------------------------------

namespace {

Rational sav_value(const std::vector<BallotType>& types, std::uint64_t s) {
  Rational total = 0;
  for (const auto& t : types) {
    const int size = std::popcount(t.mask);
    if (size) total += Rational(t.count * std::popcount(t.mask & s), size);
  }
  return total;
}

int mav_value(const std::vector<BallotType>& types, std::uint64_t s) {
  int worst = 0;
  for (const auto& t : types) worst = std::max(worst, std::popcount(t.mask ^ s));
  return worst;
}

}  // namespace

Rational sav_score(const ApprovalProfile& profile, const Committee& s) {
  check_members(profile, s);
  return sav_value(group_ballots(profile), to_mask(s));
}

Winners sav_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options) {
  const auto types = group_ballots(profile);
  return best_committees(profile, k, options, Sense::Maximize,
                         [&](std::uint64_t s) -> std::optional<Rational> { return sav_value(types, s); });
}

int mav_score(const ApprovalProfile& profile, const Committee& s) {
  check_members(profile, s);
  return mav_value(group_ballots(profile), to_mask(s));
}

Winners mav_winners(const ApprovalProfile& profile, int k, const EnumerationOptions& options) {
  const auto types = group_ballots(profile);
  return best_committees(profile, k, options, Sense::Minimize,
                         [&](std::uint64_t s) -> std::optional<Rational> { return Rational(mav_value(types, s)); });
}

}  // namespace seatlab
