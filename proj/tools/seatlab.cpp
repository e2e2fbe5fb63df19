// seatlab command-line front end.
//
// Exit codes: 0 success or pass, 1 property or claim failure, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "seatlab/apportionment.hpp"
#include "seatlab/multiwinner.hpp"
#include "seatlab/properties.hpp"
#include "seatlab/reduction.hpp"

using json = nlohmann::ordered_json;
using namespace seatlab;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- spec parsing -----------------------------------------------------------

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(item));
  return out;
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw UsageError("malformed " + what + " '" + text + "'");
}

// Family name, affine:<Z>, truncated:<t>, or "w1,w2,...[;tail=<r>]".
WeightSequence parse_weights(const std::string& spec) {
  if (spec == "pav") return WeightSequence::pav();
  if (spec == "cc") return WeightSequence::chamberlin_courant();
  if (spec == "topk") return WeightSequence::top_k();
  if (spec == "penrose") return WeightSequence::penrose();
  if (spec == "harmonic-odd") return WeightSequence::harmonic_odd();
  if (spec.rfind("affine:", 0) == 0) return WeightSequence::affine(parse_rational(spec.substr(7)));
  if (spec.rfind("truncated:", 0) == 0) {
    return WeightSequence::truncated(WeightSequence::pav(), parse_int(spec.substr(10), "truncation"));
  }
  const auto parts = split(spec, ';');
  if (parts.empty() || parts.size() > 2) throw UsageError("malformed weight spec '" + spec + "'");
  Rational tail = 0;
  if (parts.size() == 2) {
    if (parts[1].rfind("tail=", 0) != 0) throw UsageError("malformed weight spec '" + spec + "'");
    tail = parse_rational(parts[1].substr(5));
  }
  return WeightSequence::explicit_sequence(parse_rational_list(parts[0]), tail);
}

// dhondt, sainte-lague, or divisor:<d0,d1,...>[;slope=<r>][;intercept=<r>][;impervious]
// or divisor:weights=<weight spec>.
DivisorSequence parse_divisors(const std::string& spec) {
  if (spec == "dhondt") return DivisorSequence::dhondt();
  if (spec == "sainte-lague") return DivisorSequence::sainte_lague();
  if (spec.rfind("divisor:", 0) != 0) throw UsageError("unknown method '" + spec + "'");
  const std::string body = spec.substr(8);
  if (body.rfind("weights=", 0) == 0) return DivisorSequence::from_weights(parse_weights(body.substr(8)));
  const auto parts = split(body, ';');
  if (parts.empty()) throw UsageError("malformed divisor spec '" + spec + "'");
  Rational slope = 1, intercept = 1;
  bool impervious = false;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].rfind("slope=", 0) == 0) {
      slope = parse_rational(parts[i].substr(6));
    } else if (parts[i].rfind("intercept=", 0) == 0) {
      intercept = parse_rational(parts[i].substr(10));
    } else if (parts[i] == "impervious") {
      impervious = true;
    } else {
      throw UsageError("malformed divisor spec '" + spec + "'");
    }
  }
  auto ds = DivisorSequence::explicit_sequence(parse_rational_list(parts[0]), slope, intercept);
  return impervious ? ds.impervious() : ds;
}

Rule parse_rule(const std::string& spec) {
  if (spec == "pav") return Rule::owa(WeightSequence::pav());
  if (spec == "cc") return Rule::owa(WeightSequence::chamberlin_courant());
  if (spec == "topk") return Rule::owa(WeightSequence::top_k());
  if (spec == "seq-pav") return Rule::seq_owa(WeightSequence::pav());
  if (spec == "monroe") return Rule::monroe();
  if (spec == "max-phragmen") return Rule::max_phragmen();
  if (spec == "var-phragmen") return Rule::var_phragmen();
  if (spec == "sav") return Rule::sav();
  if (spec == "mav") return Rule::mav();
  if (spec.rfind("owa:", 0) == 0) return Rule::owa(parse_weights(spec.substr(4)));
  if (spec.rfind("seq-owa:", 0) == 0) return Rule::seq_owa(parse_weights(spec.substr(8)));
  throw UsageError("unknown rule '" + spec + "'");
}

// --- instance files -----------------------------------------------------------

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("invalid JSON in '" + path + "': " + e.what());
  }
}

std::int64_t positive_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<std::int64_t>() < 1) {
    throw UsageError(std::string("field '") + key + "' must be a positive integer");
  }
  return doc[key].get<std::int64_t>();
}

void only_keys(const json& doc, std::initializer_list<const char*> keys) {
  if (!doc.is_object()) throw UsageError("instance file must hold a JSON object");
  for (const auto& item : doc.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; })) {
      throw UsageError("unexpected field '" + item.key() + "'");
    }
  }
}

ApportionmentInstance instance_from_json(const json& doc) {
  only_keys(doc, {"votes", "seats"});
  if (!doc.contains("votes") || !doc["votes"].is_array() || doc["votes"].empty()) {
    throw UsageError("field 'votes' must be a non-empty array");
  }
  std::vector<std::int64_t> votes;
  for (const auto& v : doc["votes"]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw UsageError("votes must be positive integers");
    votes.push_back(v.get<std::int64_t>());
  }
  return ApportionmentInstance(std::move(votes), static_cast<int>(positive_int(doc, "seats")));
}

struct ProfileFile {
  ApprovalProfile profile;
  int k;
};

ProfileFile profile_from_json(const json& doc) {
  only_keys(doc, {"candidates", "ballots", "k"});
  const auto m = static_cast<int>(positive_int(doc, "candidates"));
  const auto k = static_cast<int>(positive_int(doc, "k"));
  if (!doc.contains("ballots") || !doc["ballots"].is_array()) throw UsageError("field 'ballots' must be an array");
  std::vector<std::vector<int>> ballots;
  for (const auto& b : doc["ballots"]) {
    if (!b.is_array()) throw UsageError("each ballot must be an array of candidate ids");
    std::vector<int> ballot;
    for (const auto& c : b) {
      if (!c.is_number_integer() || c.get<int>() < 1 || c.get<int>() > m) {
        throw UsageError("ballots must reference candidates 1.." + std::to_string(m));
      }
      ballot.push_back(c.get<int>() - 1);
    }
    ballots.push_back(std::move(ballot));
  }
  return {ApprovalProfile(m, std::move(ballots)), k};
}

struct InstanceArgs {
  std::string input;
  std::vector<std::int64_t> votes;
  int seats = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--input", input, "apportionment instance file");
    cmd->add_option("--votes", votes, "comma-separated vote counts")->delimiter(',');
    cmd->add_option("--seats", seats, "house size");
  }

  ApportionmentInstance get() const {
    if (!input.empty()) {
      if (!votes.empty() || seats != 0) throw UsageError("give either --input or --votes/--seats");
      return instance_from_json(read_json(input));
    }
    if (votes.empty() || seats < 1) throw UsageError("--votes and a positive --seats are required");
    return ApportionmentInstance(votes, seats);
  }
};

std::vector<int> one_based(const Committee& s) {
  std::vector<int> out;
  for (int c : s) out.push_back(c + 1);
  return out;
}

// --- output ---------------------------------------------------------------------

std::string join(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

void print_outcomes(const std::string& format, const std::string& rule, const std::vector<std::vector<int>>& outcomes,
                    const std::vector<std::pair<std::string, std::string>>& scores, const std::string& label) {
  if (format == "json") {
    json doc;
    doc["outcomes"] = outcomes;
    json s = json::object();
    for (const auto& [k, v] : scores) s[k] = v;
    doc["scores"] = s;
    doc["rule"] = rule;
    doc["exact"] = true;
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << "rule: " << rule << "\n";
  for (const auto& [k, v] : scores) std::cout << k << ": " << v << "\n";
  std::cout << outcomes.size() << " " << label << (outcomes.size() == 1 ? "" : "s") << "\n";
  for (const auto& o : outcomes) std::cout << "  " << join(o) << "\n";
}

int print_report(const std::string& format, const std::string& property, const PropertyReport& report) {
  if (format == "json") {
    json doc;
    doc["property"] = property;
    doc["pass"] = report.pass;
    json parties = json::array();
    for (std::size_t i = 0; i < report.parties.size(); ++i) {
      parties.push_back({{"party", i + 1}, {"pass", report.parties[i].pass}, {"bound", report.parties[i].bound}});
    }
    doc["parties"] = parties;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << property << ": " << (report.pass ? "pass" : "fail") << "\n";
    for (std::size_t i = 0; i < report.parties.size(); ++i) {
      std::cout << "  party " << i + 1 << ": " << (report.parties[i].pass ? "pass" : "fail") << "  "
                << report.parties[i].bound << "\n";
    }
  }
  return report.pass ? 0 : kExitFailure;
}

Rational objective(const Rule& rule, const ApportionmentInstance& inst, const SeatDistribution& x) {
  switch (rule.kind()) {
    case Rule::Kind::Owa:
    case Rule::Kind::SeqOwa:
      return partylist_owa_value(inst, rule.weights(), x);
    case Rule::Kind::Monroe:
      return partylist_monroe_value(inst, x);
    case Rule::Kind::MaxPhragmen:
      return partylist_maxload(inst, x);
    case Rule::Kind::VarPhragmen:
      return partylist_sumsquares(inst, x);
    case Rule::Kind::Sav:
      return partylist_sav_value(inst, x);
    case Rule::Kind::Mav:
      return partylist_mav_value(inst, x);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact apportionment and approval-based committee elections"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--output", format, "output format")->check(CLI::IsMember({"json", "table"}));

  // apportion
  auto* apportion = app.add_subcommand("apportion", "apportion seats with a divisor or largest-remainder method");
  std::string method;
  InstanceArgs apportion_args;
  apportion->add_option("--method", method, "dhondt | sainte-lague | largest-remainder | divisor:<spec>")->required();
  apportion_args.add(apportion);

  // elect
  auto* elect = app.add_subcommand("elect", "run a multiwinner rule on an approval profile");
  std::string elect_rule, profile_path;
  int elect_k = 0;
  elect->add_option("--rule", elect_rule, "rule spec")->required();
  elect->add_option("--input", profile_path, "approval profile file")->required();
  elect->add_option("-k", elect_k, "committee size (defaults to the file's k)");

  // induce
  auto* induce = app.add_subcommand("induce", "apportionment induced by a multiwinner rule");
  std::string induce_rule, induce_path = "closed-form";
  InstanceArgs induce_args;
  induce->add_option("--rule", induce_rule, "rule spec")->required();
  induce->add_option("--path", induce_path, "closed-form | embedding")
      ->check(CLI::IsMember({"closed-form", "embedding"}));
  induce_args.add(induce);

  // check
  auto* check = app.add_subcommand("check", "check a representation property");
  std::string property, committee_profile;
  std::vector<int> alloc, committee;
  int threshold_t = 0, base = 5;
  InstanceArgs check_args;
  check->add_option("--property", property, "lower-quota | quota | penrose | cambridge | threshold | pjr")
      ->required()
      ->check(CLI::IsMember({"lower-quota", "quota", "penrose", "cambridge", "threshold", "pjr"}));
  check->add_option("--alloc", alloc, "seat distribution")->delimiter(',');
  check->add_option("--t", threshold_t, "threshold parameter");
  check->add_option("--base", base, "Cambridge base seats");
  check->add_option("--profile", committee_profile, "approval profile file (pjr on a committee)");
  check->add_option("--committee", committee, "1-based committee (pjr on a committee)")->delimiter(',');
  check_args.add(check);

  // verify
  auto* verify = app.add_subcommand("verify", "sweep instances and check a claim");
  std::string claim, verify_weights;
  SweepConfig sweep;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  verify->add_option("--claim", claim, "claim id, or 'all'")->required();
  verify->add_flag("--exhaustive", exhaustive, "exhaustive grid instead of random instances");
  verify->add_option("--trials", sweep.trials, "random instances");
  auto* seed_opt = verify->add_option("--seed", seed, "random seed");
  verify->add_option("--min-parties", sweep.min_parties, "fewest parties");
  verify->add_option("--max-parties", sweep.max_parties, "most parties");
  verify->add_option("--max-votes", sweep.max_votes, "largest vote count");
  verify->add_option("--max-seats", sweep.max_seats, "largest house size");
  verify->add_flag("--divisible", sweep.divisibility_filter, "only instances with h | v_+");
  verify->add_option("--weights", verify_weights, "replace the weights of OWA-based claims");

  // gen
  auto* gen = app.add_subcommand("gen", "emit a random instance file");
  std::string gen_kind = "apportionment";
  std::uint64_t gen_seed = 0;
  int gen_min_parties = 2, gen_max_parties = 5, gen_max_seats = 8, gen_candidates = 6, gen_voters = 10, gen_k = 3;
  std::int64_t gen_max_votes = 60;
  gen->add_option("--kind", gen_kind, "apportionment | approval")->check(CLI::IsMember({"apportionment", "approval"}));
  gen->add_option("--seed", gen_seed, "random seed")->required();
  gen->add_option("--min-parties", gen_min_parties, "fewest parties")->check(CLI::PositiveNumber);
  gen->add_option("--max-parties", gen_max_parties, "most parties")->check(CLI::PositiveNumber);
  gen->add_option("--max-votes", gen_max_votes, "largest vote count")->check(CLI::PositiveNumber);
  gen->add_option("--max-seats", gen_max_seats, "largest house size")->check(CLI::PositiveNumber);
  gen->add_option("--candidates", gen_candidates, "candidates")->check(CLI::Range(1, ApprovalProfile::kMaxCandidates));
  gen->add_option("--voters", gen_voters, "voters")->check(CLI::PositiveNumber);
  gen->add_option("-k", gen_k, "committee size")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*apportion) {
      const auto inst = apportion_args.get();
      OutcomeSet<SeatDistribution> outcomes;
      std::string rule = method;
      if (method == "largest-remainder") {
        outcomes = largest_remainder(inst);
      } else {
        const DivisorSequence ds = parse_divisors(method);
        rule = ds.name();
        outcomes = divisor_apportion(inst, ds);
      }
      print_outcomes(format, rule, {outcomes.begin(), outcomes.end()}, {}, "outcome");
      return 0;
    }

    if (*elect) {
      const Rule rule = parse_rule(elect_rule);
      const auto file = profile_from_json(read_json(profile_path));
      const Winners w = rule.elect(file.profile, elect_k ? elect_k : file.k);
      std::vector<std::vector<int>> outcomes;
      for (const auto& s : w.committees) outcomes.push_back(one_based(s));
      print_outcomes(format, rule.name(), outcomes, {{"optimal", to_string(w.score)}}, "committee");
      return 0;
    }

    if (*induce) {
      const Rule rule = parse_rule(induce_rule);
      const auto inst = induce_args.get();
      InduceOptions options;
      options.path = induce_path == "embedding" ? InducePath::FullEmbedding : InducePath::ClosedForm;
      const auto outcomes = induced_apportionment(rule, inst, options);
      std::vector<std::pair<std::string, std::string>> scores;
      if (rule.kind() != Rule::Kind::SeqOwa) scores.emplace_back("optimal", to_string(objective(rule, inst, *outcomes.begin())));
      print_outcomes(format, rule.name(), {outcomes.begin(), outcomes.end()}, scores, "outcome");
      return 0;
    }

    if (*check) {
      if (property == "pjr" && !committee_profile.empty()) {
        const auto file = profile_from_json(read_json(committee_profile));
        Committee s;
        for (int c : committee) s.push_back(c - 1);
        std::sort(s.begin(), s.end());
        const bool pass = check_pjr(file.profile, static_cast<int>(s.size()), s);
        return print_report(format, property, {pass, {}});
      }
      const auto inst = check_args.get();
      if (alloc.empty()) throw UsageError("--alloc is required");
      const SeatDistribution x(alloc.begin(), alloc.end());
      PropertyReport report;
      if (property == "lower-quota") {
        report = explain_lower_quota(inst, x);
      } else if (property == "quota") {
        report = explain_quota(inst, x);
      } else if (property == "penrose") {
        report = explain_penrose(inst, x);
      } else if (property == "cambridge") {
        report = explain_cambridge(inst, x, base);
      } else if (property == "threshold") {
        report = explain_threshold(inst, x, threshold_t);
      } else {
        inst.validate(x);
        const EmbeddedElection e = embed(inst);
        report.pass = check_pjr(e.profile, e.k, representative_committee(e.embedding, x));
      }
      return print_report(format, property, report);
    }

    if (*verify) {
      sweep.mode = exhaustive ? SweepConfig::Mode::Exhaustive : SweepConfig::Mode::Random;
      if (*seed_opt) sweep.seed = seed;
      if (!verify_weights.empty()) sweep.weights = parse_weights(verify_weights);
      sweep.validate();
      std::vector<std::string> claims;
      if (claim == "all") {
        claims = claim_catalog();
      } else {
        claims.push_back(claim);
      }
      std::vector<VerificationReport> reports;
      for (const auto& c : claims) reports.push_back(verify_claim(c, sweep));
      bool all_hold = true;
      json docs = json::array();
      for (const auto& r : reports) {
        all_hold = all_hold && r.holds();
        if (format == "json") {
          json failures = json::array();
          for (const auto& f : r.failures) failures.push_back({{"instance", f.instance}, {"detail", f.detail}});
          docs.push_back({{"claim", r.claim},
                          {"instances_tested", r.instances_tested},
                          {"holds", r.holds()},
                          {"failures", failures}});
        } else {
          std::cout << r.claim << ": " << (r.holds() ? "holds" : "FAILS") << " on " << r.instances_tested
                    << " instances, " << r.failures.size() << " failures\n";
          for (const auto& f : r.failures) std::cout << "  " << f.instance << "  " << f.detail << "\n";
        }
      }
      if (format == "json") std::cout << (claims.size() == 1 ? docs[0] : docs).dump(2) << "\n";
      return all_hold ? 0 : kExitFailure;
    }

    if (*gen) {
      if (gen_min_parties > gen_max_parties) throw UsageError("--min-parties exceeds --max-parties");
      std::mt19937_64 rng(gen_seed);
      const auto draw = [&](std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
      };
      json doc;
      if (gen_kind == "apportionment") {
        const auto p = draw(gen_min_parties, gen_max_parties);
        std::vector<std::int64_t> votes;
        for (std::int64_t i = 0; i < p; ++i) votes.push_back(draw(1, gen_max_votes));
        doc["votes"] = votes;
        doc["seats"] = draw(1, gen_max_seats);
      } else {
        if (gen_k > gen_candidates) throw UsageError("-k exceeds --candidates");
        json ballots = json::array();
        for (int i = 0; i < gen_voters; ++i) {
          std::vector<int> ballot;
          for (int c = 1; c <= gen_candidates; ++c) {
            if (rng() % 2) ballot.push_back(c);
          }
          ballots.push_back(ballot);
        }
        doc["candidates"] = gen_candidates;
        doc["k"] = gen_k;
        doc["ballots"] = ballots;
      }
      std::cout << doc.dump(2) << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
