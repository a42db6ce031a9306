// vflab: command-line driver for the verification suites plus a walkthrough
// of one finite-depth tilting instance. Exit codes: 0 when every case of the
// requested suite passes, 1 when any case fails, 2 on usage errors, unknown
// suites, or malformed descriptors.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vfl/report.hpp"
#include "vfl/suites.hpp"
#include "vfl/tilt.hpp"

namespace {

int emit_report(const vfl::VerificationReport& rep, bool json, bool timings,
                const std::string& out_path) {
  std::string text = json ? vfl::emit_json(rep, timings) : vfl::emit_text(rep);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open '" << out_path << "' for writing\n";
      return 2;
    }
    out << text;
    out.flush();
    if (!out.good()) {
      std::cerr << "short write to '" << out_path << "'\n";
      return 2;
    }
  }
  return rep.all_pass() ? 0 : 1;
}

nlohmann::ordered_json tilt_demo_doc(long long p, int N, int depth, int target,
                                     unsigned long long seed) {
  auto Q = vfl::truncated_quotient_ring(N, p);
  const auto& R = Q.ring;
  long long e = R->e();
  long long cap = vfl::sharp_precision_cap(Q, depth);
  if (target < 0) target = static_cast<int>(cap);

  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["kind"] = "tilt-demo";
  j["p"] = p;
  j["N"] = N;
  j["depth"] = depth;
  j["ring"] = R->name();
  j["field"] = Q.field->name();
  j["ramification"] = e;
  j["elements"] = R->size();

  auto iso = vfl::verify_truncated_quotient(Q);
  j["quotient_iso"] = {{"elements", iso.elements},
                       {"pairs_checked", iso.pairs_checked},
                       {"round_trip", iso.round_trip_ok},
                       {"additive", iso.additive_ok},
                       {"multiplicative", iso.multiplicative_ok},
                       {"uniformizer_to_s", iso.uniformizer_to_s},
                       {"p_to_zero", iso.p_to_zero}};

  auto mt = vfl::tilt_mod_t_iso_check(Q, depth);
  j["mod_t"] = {{"tilt_elements", mt.tilt_elements},
                {"t_classes", mt.t_classes},
                {"reachable", mt.reachable},
                {"bijective_at_truncation", mt.bijective_at_truncation()}};

  // the pseudo-uniformizer identity v(sharp t) = v(p) is a depth-N statement;
  // at deeper chains the valuation scales by p^(depth - N)
  auto t = vfl::canonical_t(R, depth);
  vfl::LFElt st = vfl::sharp_map(Q, t, target);
  auto vt = st.valuation_pi();
  auto tN = vfl::canonical_t(R, N);
  vfl::LFElt stN = vfl::sharp_map(Q, tN);
  auto vtN = stN.valuation_pi();
  j["canonical_t"] = {
      {"at_depth", t.str()},
      {"sharp", st.str()},
      {"sharp_valuation_pi", vt ? nlohmann::ordered_json(*vt) : nlohmann::ordered_json()},
      {"at_depth_N", tN.str()},
      {"sharp_at_depth_N_valuation_pi", vtN ? nlohmann::ordered_json(*vtN) : nlohmann::ordered_json()},
      {"valuation_pi_of_p", e},
      {"depth_N_sharp_matches_v_p", vtN && *vtN == e}};

  std::mt19937_64 rng(seed);
  long long total = R->size();
  j["sharp_samples"] = nlohmann::ordered_json::array();
  for (int i = 0; i < 6; ++i) {
    long long idx = static_cast<long long>(rng() % static_cast<unsigned long long>(total));
    auto x = vfl::TiltElement::from_top(vfl::TruncElt::from_index(R, idx), depth);
    vfl::LFElt sx = vfl::sharp_map(Q, x, target);
    auto v = sx.valuation_pi();
    nlohmann::ordered_json row;
    row["top"] = x.top().str();
    row["bottom"] = x.bottom().str();
    row["sharp"] = sx.str();
    row["valuation_pi"] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
    j["sharp_samples"].push_back(std::move(row));
  }

  long long good = 0, pairs = 10;
  for (long long i = 0; i < pairs; ++i) {
    long long a = 1 + static_cast<long long>(rng() % static_cast<unsigned long long>(total - 1));
    long long b = 1 + static_cast<long long>(rng() % static_cast<unsigned long long>(total - 1));
    auto x = vfl::TiltElement::from_top(vfl::TruncElt::from_index(R, a), depth);
    auto y = vfl::TiltElement::from_top(vfl::TruncElt::from_index(R, b), depth);
    if (congruent_pi(vfl::sharp_map(Q, x) * vfl::sharp_map(Q, y), vfl::sharp_map(Q, x * y), cap))
      ++good;
  }
  j["multiplicative_spot_checks"] = {{"pairs", pairs}, {"congruent", good}};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vflab: finite-precision laboratory for valued fields"};
  app.set_config("--config", "", "read option defaults from a key=value file");
  bool list_flag = false;
  app.add_flag("--list", list_flag, "list the registered suites and exit");

  auto* run = app.add_subcommand("run", "run a named verification suite");
  std::string suite;
  run->add_option("suite", suite, "suite id, see --list")->required();
  long long p_v = 0, q_v = 0, n_v = 0;
  std::string field_v;
  int prec_v = -1, depth_v = 0;
  unsigned long long seed_v = 2026;
  auto* op = run->add_option("--p", p_v, "prime parameter");
  auto* oq = run->add_option("--q", q_v, "exponent prime, where a suite distinguishes it from p");
  auto* on = run->add_option("--n", n_v, "sample count or sweep bound");
  auto* ofield = run->add_option("--field", field_v, "series-field descriptor, e.g. Qp(3)((t))");
  auto* oprec = run->add_option("--precision", prec_v, "pi-digit precision for coefficient fields");
  auto* odepth = run->add_option("--depth", depth_v, "depth parameter, where a suite uses one");
  run->add_option("--seed", seed_v, "seed for sampled sweeps");
  bool json_flag = false, timings = false;
  run->add_flag("--json", json_flag, "emit the report as JSON");
  run->add_flag("--timings", timings, "include per-case wall-clock in the JSON report");
  std::string out_path;
  run->add_option("--out", out_path, "write the report to this file instead of stdout");

  auto* list_cmd = app.add_subcommand("list", "list the registered suites");

  auto* tilt_cmd = app.add_subcommand("tilt", "finite-depth tilting utilities");
  auto* demo = tilt_cmd->add_subcommand("demo", "walk one truncated tilting instance");
  long long dp = 2;
  int dN = 2, ddepth = 3, dprec = -1;
  unsigned long long dseed = 2026;
  demo->add_option("--p", dp, "residue characteristic");
  demo->add_option("--N", dN, "tower height: the ring is O/p for p^(1/p^N)");
  demo->add_option("--depth", ddepth, "chain depth; needs p^depth >= p^N");
  demo->add_option("--precision", dprec, "pi-digit target for the sharp lifts");
  demo->add_option("--seed", dseed, "seed for the sampled rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list_flag || list_cmd->parsed()) {
    for (const std::string& name : vfl::suite_names()) std::cout << name << "\n";
    return 0;
  }

  if (demo->parsed()) {
    try {
      std::cout << tilt_demo_doc(dp, dN, ddepth, dprec, dseed).dump(2) << "\n";
      return 0;
    } catch (const vfl::Error& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }

  if (run->parsed()) {
    vfl::SuiteParams P;
    if (op->count()) P.p = p_v;
    if (oq->count()) P.q = q_v;
    if (on->count()) P.n = n_v;
    if (ofield->count()) P.field = field_v;
    if (oprec->count()) P.precision = prec_v;
    if (odepth->count()) P.depth = depth_v;
    P.seed = seed_v;
    try {
      vfl::VerificationReport rep = vfl::run_suite(suite, P);
      return emit_report(rep, json_flag, timings, out_path);
    } catch (const vfl::UnknownSuite& e) {
      std::cerr << e.what() << "\n";
      return 2;
    } catch (const vfl::ParseError& e) {
      std::cerr << e.what() << "\n";
      return 2;
    } catch (const vfl::Error& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }

  std::cout << app.help();
  return 2;
}
