#include "seatlab/apportionment.hpp"

#include <algorithm>
#include <numeric>

namespace seatlab {

SeatDistribution move_seat(const SeatDistribution& x, std::size_t from, std::size_t to) {
  if (from >= x.size() || to >= x.size()) throw PreconditionError("party index out of range");
  if (from == to) throw PreconditionError("a seat must move between two different parties");
  if (x[from] <= 0) throw PreconditionError("the donor party holds no seat");
  SeatDistribution y = x;
  --y[from];
  ++y[to];
  return y;
}

namespace {

// Number of bounded compositions, saturating at limit + 1.
std::size_t count_completions(const std::vector<int>& cap, int extra, std::size_t limit) {
  std::vector<std::size_t> ways(extra + 1, 0);
  ways[0] = 1;
  for (int c : cap) {
    std::vector<std::size_t> next(extra + 1, 0);
    for (int total = 0; total <= extra; ++total) {
      if (!ways[total]) continue;
      for (int take = 0; take <= c && total + take <= extra; ++take) {
        next[total + take] = std::min(limit + 1, next[total + take] + ways[total]);
      }
    }
    ways = std::move(next);
  }
  return ways[extra];
}

void fill(SeatDistribution& current, const std::vector<int>& cap, std::size_t party, int left,
          OutcomeSet<SeatDistribution>& out) {
  if (party == current.size()) {
    if (left == 0) out.insert(current);
    return;
  }
  const int suffix_cap = std::accumulate(cap.begin() + party + 1, cap.end(), 0);
  for (int take = 0; take <= std::min(cap[party], left); ++take) {
    if (left - take > suffix_cap) continue;
    current[party] += take;
    fill(current, cap, party + 1, left - take, out);
    current[party] -= take;
  }
}

}  // namespace

OutcomeSet<SeatDistribution> complete_ties(const SeatDistribution& base, const std::vector<int>& extra_cap, int extra,
                                           std::size_t max_outcomes) {
  const std::size_t count = count_completions(extra_cap, extra, max_outcomes);
  if (count > max_outcomes) {
    throw TieExplosionError("tie enumeration exceeds " + std::to_string(max_outcomes) + " outcomes");
  }
  OutcomeSet<SeatDistribution> out;
  SeatDistribution current = base;
  fill(current, extra_cap, 0, extra, out);
  return out;
}

OutcomeSet<SeatDistribution> divisor_apportion(const ApportionmentInstance& inst, const DivisorSequence& ds,
                                               const ApportionOptions& options) {
  const int h = inst.seats();
  const std::size_t p = inst.parties();
  ds.validate(h);

  struct Claim {
    std::size_t party;
    std::int64_t votes;
    Rational divisor;
  };
  // Claims of one party are non-increasing in s, so the h largest claims overall
  // are exactly the seats handed out by the iterative procedure.
  std::vector<Claim> claims;
  claims.reserve(p * h);
  for (std::size_t i = 0; i < p; ++i) {
    for (int s = 0; s < h; ++s) claims.push_back({i, inst.votes(i), ds.at(s)});
  }
  auto greater = [](const Claim& a, const Claim& b) {
    return compare_claims(a.votes, a.divisor, b.votes, b.divisor) == std::strong_ordering::greater;
  };
  std::stable_sort(claims.begin(), claims.end(), greater);

  const Claim& cutoff = claims[h - 1];
  SeatDistribution base(p, 0);
  std::vector<int> tied(p, 0);
  int assigned = 0;
  for (const Claim& c : claims) {
    const auto order = compare_claims(c.votes, c.divisor, cutoff.votes, cutoff.divisor);
    if (order == std::strong_ordering::greater) {
      ++base[c.party];
      ++assigned;
    } else if (order == std::strong_ordering::equal) {
      ++tied[c.party];
    }
  }
  return complete_ties(base, tied, h - assigned, options.max_outcomes);
}

OutcomeSet<SeatDistribution> largest_remainder(const ApportionmentInstance& inst, const ApportionOptions& options) {
  const std::size_t p = inst.parties();
  const Integer total(inst.total_votes());
  SeatDistribution base(p, 0);
  std::vector<Rational> remainder(p);
  int assigned = 0;
  for (std::size_t i = 0; i < p; ++i) {
    const Integer scaled = Integer(inst.votes(i)) * inst.seats();
    const Integer lower = scaled / total;
    base[i] = static_cast<int>(lower);
    assigned += base[i];
    remainder[i] = Rational(scaled - lower * total, total);
  }
  const int left = inst.seats() - assigned;
  std::vector<int> cap(p, 0);
  if (left > 0) {
    std::vector<Rational> sorted = remainder;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const Rational& cut = sorted[left - 1];
    int above = 0;
    for (std::size_t i = 0; i < p; ++i) {
      if (remainder[i] > cut) {
        ++base[i];
        ++above;
      } else if (remainder[i] == cut) {
        cap[i] = 1;
      }
    }
    return complete_ties(base, cap, left - above, options.max_outcomes);
  }
  return complete_ties(base, cap, 0, options.max_outcomes);
}

}  // namespace seatlab
