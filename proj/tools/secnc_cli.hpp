// Copyright 2026 The secnc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// secnc command line: region, build, verify and lift.
//
// Exit codes: 0 success, 1 verification or lift failure, 2 input error.
// JSON reports are deterministic for a given (spec, flags, seed); wall time
// is printed on stdout only.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "secnc/secnc.hpp"

namespace secnc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;

struct GlobalFlags {
  std::uint64_t q = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string json_out;
  std::uint64_t budget = kDefaultEnumerationBudget;
  bool has_q = false;
  bool has_k = false;
  bool has_seed = false;
};

struct Settings {
  Scalar q = 0;
  std::size_t k = 1;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("", "cannot write " + path);
  out << dump(j);
}

inline std::string tuple(const std::vector<std::size_t>& v, std::size_t shift = 0) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i] + shift);
  }
  return s + ")";
}

inline Json one_based(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

inline void print_matrix(std::ostream& out, const std::string& name, const FieldMatrix& a) {
  out << name << " (" << a.rows() << "x" << a.cols() << "):\n";
  for (std::size_t r = 0; r < a.rows(); ++r) {
    out << "  ";
    for (std::size_t c = 0; c < a.cols(); ++c) out << std::setw(4) << a(r, c);
    out << "\n";
  }
}

inline Json header(const std::string& command, const std::string& input, const Settings& s) {
  Json h;
  h["command"] = command;
  h["input_digest"] = digest(input);
  h["q"] = s.q;
  h["k"] = s.k;
  h["seed"] = s.seed;
  return h;
}

inline void print_header(std::ostream& out, const std::string& command, const std::string& input,
                         const Settings& s) {
  out << "secnc " << command << "  q=" << s.q << " k=" << s.k << " seed=" << s.seed
      << "  input=" << digest(input) << "\n";
}

inline Settings resolve(const GlobalFlags& f, const NetworkSpec& spec) {
  Settings s;
  s.k = f.has_k ? f.k : spec.k.value_or(1);
  s.seed = f.has_seed ? f.seed : spec.seed.value_or(0);
  if (f.has_q) {
    if (f.q > kMaxModulus || !is_prime(f.q)) throw ParseError("--q", "must be a prime below 2^31");
    s.q = static_cast<Scalar>(f.q);
  } else if (spec.q) {
    s.q = *spec.q;
  }
  return s;
}

// Two-layer view of a spec: the network itself, or the child of a separable one.
inline TwoLayerNetwork two_layer_view(const NetworkSpec& spec) {
  if (spec.two_layer()) return spec.two_layer_network();
  return build_child(spec.separable_network()).network;
}

inline void print_elapsed(std::ostream& out, std::chrono::steady_clock::time_point start) {
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  out << "wall time: " << std::fixed << std::setprecision(1) << ms.count() << " ms\n";
  out.unsetf(std::ios::floatfield);
}

}  // namespace detail

// --- region ----------------------------------------------------------------

inline int cmd_region(const std::string& path, const GlobalFlags& flags, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = detail::read_file(path);
  const NetworkSpec spec = parse_spec(text);
  Settings s = detail::resolve(flags, spec);
  const TwoLayerNetwork net = detail::two_layer_view(spec);
  const std::size_t t = net.relay_count();
  const std::size_t m = net.destination_count();
  if (s.q == 0) s.q = default_field_size(t, s.k);

  const FieldMatrix v = build_vandermonde(t, s.k, s.q);
  const auto spaces = null_spaces(net, v);
  const RateRegion achievable = achievable_region(spaces);
  const CutProfile cuts = cut_profile(net);
  const RateRegion outer = outer_bound(cuts, s.k);
  const RateRegion outer_canon = canonicalize(outer);
  std::optional<RateRegion> single_key;
  std::optional<RateRegion> three_dest;
  if (s.k == 1) single_key = single_key_capacity_region(net);
  if (m == 3) three_dest = three_destination_capacity_region(net, s.k);
  const bool pairwise = pairwise_overlap_condition(net, s.k);
  const auto vs_outer = regions_equal(achievable, outer);
  // Capacity is known in these cases; elsewhere the achievable region is only
  // certified optimal on instances where it meets the outer bound.
  const bool optimal = s.k == 1 || m == 3 || pairwise;

  detail::print_header(out, "region", text, s);
  out << "network: t=" << t << " m=" << m << "\n\n";
  out << std::left << std::setw(12) << "subset" << std::right << std::setw(5) << "M_A"
      << std::setw(6) << "C_A" << std::setw(12) << "achievable" << std::setw(8) << "outer"
      << std::setw(10) << "outer*" << std::setw(12) << "single-key" << std::setw(12)
      << "three-dest" << std::setw(10) << "dim-cap" << "\n";
  Json intersections = Json::object();
  for (Subset a = 1; a <= full_set(m); ++a) {
    const std::size_t inter = constraint_intersection_dim(net, v, a);
    intersections[std::to_string(a)] = inter;
    out << std::left << std::setw(12) << subset_name(a) << std::right << std::setw(5)
        << cuts.at(a) << std::setw(6) << connected_components(net, a) << std::setw(12)
        << achievable.bound(a) << std::setw(8) << outer.bound(a) << std::setw(10)
        << outer_canon.bound(a) << std::setw(12)
        << (single_key ? std::to_string(single_key->bound(a)) : "-") << std::setw(12)
        << (three_dest ? std::to_string(three_dest->bound(a)) : "-") << std::setw(10) << inter
        << "\n";
  }
  out << "\n(outer* = canonical outer bound; dim-cap = dim of the intersection of the\n"
         " constraint row spaces [V^T; C_i] over the subset)\n\n";

  Json verdicts;
  auto verdict = [&](const std::string& key, const std::string& label, bool value) {
    verdicts[key] = value;
    out << "  " << label << ": " << (value ? "yes" : "no") << "\n";
  };
  out << "verdicts:\n";
  verdict("achievable_equals_outer_bound", "achievable == canonical outer bound", vs_outer.equal);
  if (single_key) {
    verdict("achievable_equals_single_key_capacity", "achievable == single-key capacity",
            regions_equal(achievable, *single_key).equal);
  }
  if (three_dest) {
    verdict("achievable_equals_three_destination_capacity",
            "achievable == three-destination capacity", regions_equal(achievable, *three_dest).equal);
  }
  verdict("pairwise_overlap_condition", "every pair shares >= k relays", pairwise);
  verdicts["optimality_guaranteed"] = optimal;
  if (!optimal) {
    out << "  optimality not guaranteed (k > 1, m != 3, some pair shares < k relays)";
    if (vs_outer.equal) out << "; this instance meets the outer bound";
    out << "\n";
  }

  Json corners = Json::array();
  if (m <= 5) {
    out << "\ncorner points (permutation -> rates):\n";
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      const auto rates = corner_point(achievable, perm);
      out << "  " << detail::tuple(perm, 1) << " -> " << detail::tuple(rates) << "\n";
      Json c;
      c["permutation"] = detail::one_based(perm);
      c["rates"] = rates;
      corners.push_back(std::move(c));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  Json report;
  report["header"] = detail::header("region", text, s);
  report["network"] = spec_to_json(spec);
  Json regions;
  regions["achievable"] = region_to_json(achievable);
  regions["achievable_canonical"] = region_to_json(canonicalize(achievable));
  regions["outer_bound"] = region_to_json(outer);
  regions["outer_bound_canonical"] = region_to_json(outer_canon);
  if (single_key) regions["single_key_capacity"] = region_to_json(*single_key);
  if (three_dest) regions["three_destination_capacity"] = region_to_json(*three_dest);
  report["regions"] = std::move(regions);
  report["constraint_intersection_dims"] = std::move(intersections);
  report["verdicts"] = std::move(verdicts);
  report["corner_points"] = std::move(corners);
  detail::write_json(flags.json_out, report);
  detail::print_elapsed(out, start);
  return kExitOk;
}

// --- build -----------------------------------------------------------------

struct BuildFlags {
  std::vector<std::size_t> perm;
  std::vector<std::size_t> rates;
};

inline int cmd_build(const std::string& path, const BuildFlags& bf, const GlobalFlags& flags,
                     std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = detail::read_file(path);
  const NetworkSpec spec = parse_spec(text);
  Settings s = detail::resolve(flags, spec);
  const TwoLayerNetwork net = detail::two_layer_view(spec);
  const std::size_t t = net.relay_count();
  const std::size_t m = net.destination_count();
  if (s.q == 0) s.q = default_field_size(t, s.k);
  if (!bf.perm.empty() && !bf.rates.empty()) throw ParseError("--perm", "give either --perm or --rates");

  const FieldMatrix v = build_vandermonde(t, s.k, s.q);
  WiretapScheme scheme = [&] {
    if (!bf.rates.empty()) {
      if (bf.rates.size() != m) throw ParseError("--rates", "expected " + std::to_string(m) + " rates");
      return build_scheme_for_rates(net, v, bf.rates, s.seed);
    }
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (!bf.perm.empty()) {
      try {
        perm = permutation_from_one_based(bf.perm, m);
      } catch (const DomainError& e) {
        throw ParseError("--perm", e.what());
      }
    }
    return build_scheme_with_key(net, v, perm);
  }();

  // Round trip with seeded messages and keys.
  std::mt19937_64 rng(s.seed);
  std::vector<std::vector<Scalar>> messages(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < scheme.rates[i]; ++r) messages[i].push_back(static_cast<Scalar>(rng() % s.q));
  }
  std::vector<Scalar> keys(s.k);
  for (auto& key : keys) key = static_cast<Scalar>(rng() % s.q);
  const Transmission tx = transmit(scheme, messages, keys);
  bool round_trip = true;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Scalar> seen;
    for (std::size_t r : net.relays_of(i)) seen.push_back(tx.relay_symbols[r]);
    round_trip = round_trip && decode_destination(scheme, i, seen) == messages[i];
  }
  const FieldMatrix tm = scheme.decoder * scheme.message_matrix;
  const bool identity = tm == FieldMatrix::identity(scheme.total_rate(), s.q);
  const bool kills_key = (scheme.decoder * scheme.key_matrix).is_zero();
  SecurityReport security = verify_rank(scheme, s.k);
  security.scheme_id = digest(dump(scheme_to_json(scheme)));

  detail::print_header(out, "build", text, s);
  out << "rates: " << detail::tuple(scheme.rates) << "  total " << scheme.total_rate() << "\n";
  if (!scheme.permutation.empty()) out << "permutation: " << detail::tuple(scheme.permutation, 1) << "\n";
  detail::print_matrix(out, "V", scheme.key_matrix);
  detail::print_matrix(out, "M", scheme.message_matrix);
  detail::print_matrix(out, "T", scheme.decoder);
  out << "T M = I: " << (identity ? "yes" : "no") << "\n";
  out << "T V = 0: " << (kills_key ? "yes" : "no") << "\n";
  out << "round-trip decode: " << (round_trip ? "ok" : "FAILED") << "\n";
  out << "rank condition (k=" << s.k << "): " << (security.pass ? "pass" : "FAIL") << "\n";

  Json report;
  report["header"] = detail::header("build", text, s);
  report["network"] = spec_to_json(spec);
  report["scheme"] = scheme_to_json(scheme);
  Json rt;
  rt["messages"] = messages;
  rt["keys"] = keys;
  rt["relay_symbols"] = tx.relay_symbols;
  rt["decoded"] = round_trip;
  rt["decoder_times_message_is_identity"] = identity;
  rt["decoder_times_key_is_zero"] = kills_key;
  report["round_trip"] = std::move(rt);
  report["security"] = report_to_json(security);
  detail::write_json(flags.json_out, report);
  detail::print_elapsed(out, start);
  return round_trip && identity && kills_key && security.pass ? kExitOk : kExitFailure;
}

// --- verify ----------------------------------------------------------------

inline int cmd_verify(const std::string& path, const std::string& mode, const GlobalFlags& flags,
                      std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = detail::read_file(path);
  Json doc = parse_json_text(text);
  // Accept a bare scheme or a build report that embeds one.
  if (doc.is_object() && doc.contains("scheme")) doc = doc["scheme"];
  const WiretapScheme scheme = scheme_from_json(doc);
  if (mode != "rank" && mode != "entropy" && mode != "both") {
    throw ParseError("--mode", "expected rank, entropy or both");
  }
  Settings s{scheme.q, flags.has_k ? flags.k : scheme.k, flags.has_seed ? flags.seed : 0};
  const std::string id = digest(dump(scheme_to_json(scheme)));
  const EdgeModel model = wiretap_edge_model(scheme);

  std::vector<SecurityReport> reports;
  if (mode == "rank" || mode == "both") reports.push_back(verify_rank(scheme, s.k));
  if (mode == "entropy" || mode == "both") reports.push_back(verify_entropy(scheme, s.k, flags.budget));

  detail::print_header(out, "verify", text, s);
  out << "scheme " << id << ": t=" << scheme.network.relay_count() << " rates "
      << detail::tuple(scheme.rates) << "\n";
  bool pass = true;
  Json list = Json::array();
  for (auto& r : reports) {
    r.scheme_id = id;
    pass = pass && r.pass;
    out << std::left << std::setw(8) << to_string(r.condition) << std::right
        << (r.pass ? "pass" : "FAIL") << "  (" << r.subsets_checked << " subsets)\n";
    if (r.counterexample) {
      out << "  leaking wiretap set:";
      for (std::size_t row : *r.counterexample) {
        out << " R" << row + 1 << " [";
        bool first = true;
        for (const auto& e : model.edges) {
          if (e.row != row) continue;
          out << (first ? "" : " ") << e.name;
          first = false;
        }
        out << "]";
      }
      out << "\n";
    }
    list.push_back(report_to_json(r));
  }

  Json report;
  report["header"] = detail::header("verify", text, s);
  report["reports"] = std::move(list);
  report["pass"] = pass;
  detail::write_json(flags.json_out, report);
  detail::print_elapsed(out, start);
  return pass ? kExitOk : kExitFailure;
}

// --- lift ------------------------------------------------------------------

inline int cmd_lift(const std::string& path, const std::vector<std::size_t>& perm_flag,
                    const GlobalFlags& flags, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = detail::read_file(path);
  const NetworkSpec spec = parse_spec(text);
  Settings s = detail::resolve(flags, spec);
  const SeparableNetwork parent =
      spec.two_layer() ? to_separable(spec.two_layer_network()) : spec.separable_network();
  const ChildNetwork child = build_child(parent);
  const std::size_t t = child.network.relay_count();
  const std::size_t m = parent.destination_count();
  const std::size_t edge_count = parent.edges().size();
  if (s.q == 0) s.q = lift_field_size(t, s.k, edge_count);

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  if (!perm_flag.empty()) {
    try {
      perm = permutation_from_one_based(perm_flag, m);
    } catch (const DomainError& e) {
      throw ParseError("--perm", e.what());
    }
  }
  const WiretapScheme child_scheme = build_scheme(child.network, s.k, s.q, perm);
  const LiftedScheme lifted = lift_scheme(parent, child_scheme, s.seed);
  const bool cuts_agree = cut_profile(parent) == cut_profile(child.network);

  detail::print_header(out, "lift", text, s);
  out << "parent: " << parent.node_count() << " nodes, " << edge_count << " edges, m=" << m << "\n";
  out << "child relays per label:";
  for (const auto& [label, relays] : child.relays_by_label) {
    out << " " << subset_name(label) << "x" << relays.size();
  }
  out << "\n";
  out << "rates: " << detail::tuple(lifted.child_scheme.rates) << " (permutation "
      << detail::tuple(perm, 1) << ")\n";
  out << "attempts: " << lifted.attempts
      << (lifted.key_matrix_redrawn ? " (key matrix re-drawn)" : "") << "\n";
  out << "every destination decodes: " << (lifted.verification.decodes ? "yes" : "no") << "\n";
  out << "rank condition over " << lifted.verification.security.subsets_checked
      << " edge sets: " << (lifted.verification.security.pass ? "pass" : "FAIL") << "\n";
  out << "key matrix MDS: " << (lifted.verification.mds.pass ? "yes" : "no") << "\n";
  out << "parent and child cut profiles agree: " << (cuts_agree ? "yes" : "no") << "\n";

  Json report;
  report["header"] = detail::header("lift", text, s);
  report["network"] = spec_to_json(spec);
  report["permutation"] = detail::one_based(perm);
  report["cut_profiles_agree"] = cuts_agree;
  if (s.k >= 1 && t >= s.k) {
    const auto bound = success_probability_bound(edge_count, s.k, t, s.q);
    out << "success probability lower bound at q=" << s.q << ": " << bound.value << " ("
        << bound.value.convert_to<double>() << ")\n";
    Json pb;
    pb["edges"] = edge_count;
    pb["message_space"] = t;
    pb["value"] = bound.value.str();
    pb["positive"] = bound.positive;
    if (bound.minimal_prime) pb["minimal_prime"] = *bound.minimal_prime; else pb["minimal_prime"] = nullptr;
    report["probability_bound"] = std::move(pb);
  } else {
    report["probability_bound"] = nullptr;
  }
  report["lifted_scheme"] = lifted_to_json(lifted);
  detail::write_json(flags.json_out, report);
  detail::print_elapsed(out, start);
  return cuts_agree ? kExitOk : kExitFailure;
}

// --- entry point -----------------------------------------------------------

// Runs the tool on `args` (without the program name).
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"secure network coding for two-layer and separable networks", "secnc"};
  app.require_subcommand(1);
  GlobalFlags flags;
  auto* q_opt = app.add_option("--q", flags.q, "prime field size");
  auto* k_opt = app.add_option("--k", flags.k, "wiretap budget (default 1)");
  auto* seed_opt = app.add_option("--seed", flags.seed, "random seed (default 0)");
  app.add_option("--json", flags.json_out, "write the JSON report to this file");
  app.add_option("--budget", flags.budget, "enumeration budget for the entropy oracle");

  std::string spec_path;
  std::string mode = "rank";
  BuildFlags bf;
  std::vector<std::size_t> lift_perm;

  auto* region = app.add_subcommand("region", "rate regions and capacity verdicts");
  region->add_option("spec", spec_path, "network spec (JSON)")->required();
  auto* build = app.add_subcommand("build", "build a scheme at a corner point or rate tuple");
  build->add_option("spec", spec_path, "network spec (JSON)")->required();
  build->add_option("--perm", bf.perm, "1-based destination order, e.g. 3,1,2")->delimiter(',');
  build->add_option("--rates", bf.rates, "rate tuple, e.g. 1,1,1")->delimiter(',');
  auto* verify = app.add_subcommand("verify", "check a scheme file for perfect secrecy");
  verify->add_option("scheme", spec_path, "scheme or build report (JSON)")->required();
  verify->add_option("--mode", mode, "rank, entropy or both");
  auto* lift = app.add_subcommand("lift", "lift a child scheme onto a separable network");
  lift->add_option("spec", spec_path, "network spec (JSON)")->required();
  lift->add_option("--perm", lift_perm, "1-based destination order")->delimiter(',');
  for (auto* sub : {region, build, verify, lift}) sub->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  flags.has_q = q_opt->count() > 0;
  flags.has_k = k_opt->count() > 0;
  flags.has_seed = seed_opt->count() > 0;

  try {
    if (*region) return cmd_region(spec_path, flags, out);
    if (*build) return cmd_build(spec_path, bf, flags, out);
    if (*verify) return cmd_verify(spec_path, mode, flags, out);
    return cmd_lift(spec_path, lift_perm, flags, out);
  } catch (const SecureCommunicationImpossible& e) {
    err << "error: " << e.what() << "; secure communication is not possible\n";
    return kExitInput;
  } catch (const InfeasibleRates& e) {
    err << "error: infeasible rate tuple: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExceeded& e) {
    err << "error: refusing exhaustive enumeration: " << e.what() << "\n";
    return kExitInput;
  } catch (const LiftFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const MulticastFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace secnc::cli
