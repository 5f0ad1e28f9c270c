// ftest-cli: batch front end for the ftest library.

#include <CLI11.hpp>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "ftest/ftest.hpp"

using nlohmann::json;
using namespace ftest;

namespace {

struct Caps {
  unsigned e_max = 10;
  unsigned e_max_general = 5;
  unsigned window = 2;
  std::uint64_t m_cap = 64;
  unsigned degree_cap = 512;

  TestIdealCaps test_ideal() const {
    TestIdealCaps c;
    c.e_max_monomial = e_max;
    c.e_max_general = e_max_general;
    c.window = window;
    c.power.degree_cap = degree_cap;
    return c;
  }
  AsymptoticCaps asymptotic() const {
    AsymptoticCaps c;
    c.inner = test_ideal();
    c.m_cap = m_cap;
    c.window = window;
    return c;
  }
};

// "-" reads the payload from stdin.
std::string payload(const std::string& arg) {
  if (arg != "-") return arg;
  static std::optional<std::string> cached;
  if (!cached) cached = std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::string s = *cached;
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

json ord_json(const OrdValue& v) { return v ? json(*v) : json("inf"); }

json opt_rational(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

json test_ideal_json(const TestIdealResult& r) {
  return {{"ideal", print_ideal(r.ideal)},
          {"evidence", to_string(r.evidence)},
          {"stabilization_e", r.stabilization_e},
          {"flagged", r.flagged()}};
}

// Z = V(x_i : i ∈ names) in the ring of `ring`; empty means the origin.
CoordinateSubvariety subvariety_of(const Ring& ring, const std::string& names) {
  if (names.empty()) return CoordinateSubvariety::origin(ring.nvars());
  std::vector<std::size_t> idx;
  for (const auto& n : split_list(names)) {
    const auto& vars = ring.variables();
    const auto it = std::find(vars.begin(), vars.end(), n);
    if (it == vars.end()) throw DomainError("unknown variable '" + n + "'");
    idx.push_back(static_cast<std::size_t>(it - vars.begin()));
  }
  return {ring.nvars(), idx};
}

toric::InvariantSubvariety cone_of(const toric::Fan& X, const std::string& text) {
  toric::InvariantSubvariety z;
  for (const auto& s : split_list(text)) {
    std::size_t pos = 0;
    unsigned long long i = 0;
    try {
      i = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) throw ParseError("cone index '" + s + "' is not a natural number", 0);
    if (i >= X.rays().size()) throw DomainError("cone index " + s + " out of range");
    z.cone.push_back(static_cast<std::size_t>(i));
  }
  std::sort(z.cone.begin(), z.cone.end());
  z.cone.erase(std::unique(z.cone.begin(), z.cone.end()), z.cone.end());
  if (z.cone.empty()) throw DomainError("empty cone");
  if (!X.is_face(z)) throw DomainError("rays " + text + " do not span a cone of the fan");
  return z;
}

json locus_json(const toric::Locus& l) {
  json j;
  j["whole"] = l.whole;
  j["members"] = json::array();
  for (const auto& z : l.members) j["members"].push_back(toric::to_string(z));
  return j;
}

// One key per line; nested values compact.
void print_text(const json& result) {
  for (const auto& [k, v] : result.items()) {
    std::cout << k << ": ";
    if (v.is_string())
      std::cout << v.get<std::string>();
    else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); })) {
      bool first = true;
      for (const auto& x : v) {
        std::cout << (first ? "" : ", ") << (x.is_string() ? x.get<std::string>() : x.dump());
        first = false;
      }
    } else
      std::cout << v.dump();
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius roots, test ideals, asymptotic orders and toric non-nef loci over F_p"};
  app.require_subcommand(1);
  bool as_json = false;
  Caps caps;
  app.add_flag("--json", as_json, "Machine-readable output");
  app.add_option("--e-max", caps.e_max, "Deepest Frobenius iterate e for monomial chains")
      ->envname("FTEST_E_MAX")
      ->capture_default_str();
  app.add_option("--e-max-general", caps.e_max_general, "Deepest iterate e for non-monomial chains")
      ->envname("FTEST_E_MAX_GENERAL")
      ->capture_default_str();
  app.add_option("--window", caps.window, "Consecutive equal chain members required to stop")
      ->envname("FTEST_WINDOW")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--m-cap", caps.m_cap, "Largest index m sampled in graded sequences")
      ->envname("FTEST_M_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--degree-cap", caps.degree_cap, "Total degree cap for powers of non-monomial ideals")
      ->envname("FTEST_DEGREE_CAP")
      ->capture_default_str();

  std::string ideal, ideal2, lambda, mu, max, vars, seq, fan, div, cone, ample, suite;
  unsigned e = 1;
  std::uint64_t denom_bound = 8, m = 0, p = 2, seed = 1, level_cap = 4096, levels = 4;
  std::size_t chart = 0, budget = 0;
  unsigned k_max_sigma = 24, k_max_plus = 10;

  json args = json::object();
  std::function<json()> run;

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto need_ideal = [](CLI::App* s, std::string& v, const char* flag = "--ideal") {
    s->add_option(flag, v, "Ideal 'p=<prime>; vars=<list>; gens=[...]' or - for stdin")->required();
  };
  auto need_fan = [&](CLI::App* s) {
    s->add_option("--fan", fan, "builtin:<name>, JSON fan, fan file, or - for stdin")->required();
    s->add_option("--divisor", div, "Coefficients aligned to the rays, e.g. 0,0,2,1")->required();
  };

  auto* root = sub("root", "Frobenius root a^[1/p^e]");
  need_ideal(root, ideal);
  root->add_option("--e", e, "Frobenius iterate")->capture_default_str();
  root->callback([&] {
    run = [&] {
      const Ideal a = parse_ideal(payload(ideal));
      const FrobeniusContext ctx(a.ring()->characteristic(), e);
      args = {{"ideal", print_ideal(a)}, {"e", e}};
      return json{{"ideal", print_ideal(frobenius_root(a, ctx))}, {"q", ctx.q().str()}};
    };
  });

  auto* tau = sub("tau", "Test ideal tau(a^lambda)");
  need_ideal(tau, ideal);
  tau->add_option("--lambda", lambda, "Exponent, integer or a/b")->required();
  tau->callback([&] {
    run = [&] {
      const Ideal a = parse_ideal(payload(ideal));
      const Rational l = parse_rational(lambda);
      args = {{"ideal", print_ideal(a)}, {"lambda", to_string(l)}};
      return test_ideal_json(test_ideal(a, ExponentLambda(l), caps.test_ideal()));
    };
  });

  auto* mixed = sub("mixed-tau", "Mixed test ideal tau(a^lambda b^mu)");
  need_ideal(mixed, ideal);
  need_ideal(mixed, ideal2, "--ideal2");
  mixed->add_option("--lambda", lambda, "Exponent of a")->required();
  mixed->add_option("--mu", mu, "Exponent of b")->required();
  mixed->callback([&] {
    run = [&] {
      const Ideal a = parse_ideal(payload(ideal));
      const Ideal b = parse_ideal(payload(ideal2));
      const Rational l = parse_rational(lambda), u = parse_rational(mu);
      args = {{"ideal", print_ideal(a)}, {"ideal2", print_ideal(b)}, {"lambda", to_string(l)}, {"mu", to_string(u)}};
      return test_ideal_json(mixed_test_ideal(a, ExponentLambda(l), b, ExponentLambda(u), caps.test_ideal()));
    };
  });

  auto* jumps = sub("jumps", "F-jumping numbers in (0, max]");
  need_ideal(jumps, ideal);
  jumps->add_option("--max", max, "Right end of the interval")->required();
  jumps->add_option("--denom-bound", denom_bound, "Largest candidate denominator")->capture_default_str();
  jumps->callback([&] {
    run = [&] {
      const Ideal a = parse_ideal(payload(ideal));
      const Rational top = parse_rational(max);
      args = {{"ideal", print_ideal(a)}, {"max", to_string(top)}, {"denom_bound", denom_bound}};
      const JumpReport r = f_jumping_numbers(a, ExponentLambda(top), denom_bound, caps.test_ideal());
      json j;
      j["jumps"] = json::array();
      for (const auto& x : r.jumps) j["jumps"].push_back(to_string(x));
      j["plateaus"] = json::array();
      for (const auto& pl : r.plateaus)
        j["plateaus"].push_back({{"from", to_string(pl.from)},
                                 {"to", to_string(pl.to)},
                                 {"closed_right", pl.closed_right},
                                 {"ideal", print_ideal(pl.ideal)}});
      j["certified"] = r.certified;
      j["evaluations"] = r.evaluations;
      return j;
    };
  });

  auto* ord = sub("ord", "Order of vanishing ord_Z(a) along Z = V(vars)");
  need_ideal(ord, ideal);
  ord->add_option("--vars", vars, "Comma list of variables cutting out Z (default: the origin)");
  ord->callback([&] {
    run = [&] {
      const Ideal a = parse_ideal(payload(ideal));
      const CoordinateSubvariety z = subvariety_of(*a.ring(), vars);
      args = {{"ideal", print_ideal(a)}, {"vars", vars.empty() ? "origin" : vars}};
      return json{{"ord", ord_json(ord_along(a, z))}, {"codim", z.codim()}};
    };
  });

  auto add_seq = [&](CLI::App* s) {
    s->add_option("--seq", seq, "'seq power <ideal>' | 'seq table m:<ideal> ...' | 'seq toric <fan> <divisor>'")
        ->required();
    s->add_option("--chart", chart, "Maximal cone used as chart for toric sequences")->capture_default_str();
    s->add_option("--p", p, "Characteristic of toric charts")->capture_default_str();
  };

  auto* aord = sub("aord", "Asymptotic order ord_Z(a_.) of a graded sequence");
  add_seq(aord);
  aord->add_option("--vars", vars, "Comma list of variables cutting out Z (default: the origin)");
  aord->callback([&] {
    run = [&] {
      const SequenceSpec s = parse_sequence(payload(seq), chart, p);
      const CoordinateSubvariety z = subvariety_of(*s.seq.ring(), vars);
      args = {{"seq", payload(seq)}, {"vars", vars.empty() ? "origin" : vars}, {"m_cap", caps.m_cap}};
      if (s.fan) args["chart"] = chart;
      const AsymptoticOrdEstimate est = asymptotic_ord(s.seq, z, caps.m_cap);
      return json{{"upper_bound", opt_rational(est.upper_bound)},
                  {"value_at_cap", opt_rational(est.value_at_cap)},
                  {"m_star", est.m_star},
                  {"exact", est.exact},
                  {"exact_value", opt_rational(est.exact_value)},
                  {"indeterminate", est.indeterminate}};
    };
  });

  auto* atau = sub("atau", "Asymptotic test ideal tau(lambda . a_.)");
  add_seq(atau);
  atau->add_option("--lambda", lambda, "Exponent")->required();
  atau->callback([&] {
    run = [&] {
      const SequenceSpec s = parse_sequence(payload(seq), chart, p);
      const Rational l = parse_rational(lambda);
      args = {{"seq", payload(seq)}, {"lambda", to_string(l)}, {"m_cap", caps.m_cap}};
      if (s.fan) args["chart"] = chart;
      const TestIdealResult r = s.fan ? toric::tau_toric(*s.fan, *s.divisor, ExponentLambda(l), chart, p, caps.asymptotic())
                                      : asymptotic_test_ideal(s.seq, ExponentLambda(l), caps.asymptotic());
      json j = test_ideal_json(r);
      j["stabilization_m"] = r.stabilization_m;
      return j;
    };
  });

  auto load = [&] {
    toric::Fan X = load_fan(payload(fan));
    toric::Divisor d = toric::parse_divisor(div);
    X.check_divisor(d);
    args = {{"fan", toric::fan_to_json(X)}, {"divisor", toric::print_divisor(d)}};
    return std::pair{std::move(X), std::move(d)};
  };
  auto ample_of = [&](const toric::Fan& X) {
    if (ample.empty()) return toric::default_ample(X);
    toric::Divisor a = toric::parse_divisor(ample);
    X.check_divisor(a);
    if (!toric::is_ample(X, a)) throw DomainError("--ample divisor is not ample");
    return a;
  };

  auto* classify = sub("toric-classify", "Positivity of a torus-invariant Q-divisor");
  need_fan(classify);
  classify->callback([&] {
    run = [&] {
      const auto [X, d] = load();
      const toric::Classification c = toric::classify_divisor(X, d);
      return json{{"ample", c.ample},
                  {"nef", c.nef},
                  {"big", c.big},
                  {"pseudo_effective", c.pseudo_effective},
                  {"effective", c.effective},
                  {"q_effective", c.q_effective},
                  {"picard_number", X.picard_number()}};
    };
  });

  auto* tord = sub("toric-ord", "Order of |mD| along V(cone), or the asymptotic order without --m");
  need_fan(tord);
  tord->add_option("--cone", cone, "Comma list of ray indices")->required();
  tord->add_option("--m", m, "Level of the linear system |mD|");
  tord->callback([&] {
    run = [&] {
      const auto [X, d] = load();
      const toric::InvariantSubvariety z = cone_of(X, cone);
      args["cone"] = toric::to_string(z);
      if (m > 0) {
        args["m"] = m;
        return json{{"ord", ord_json(toric::base_locus_ord(X, d, m, z))}};
      }
      return json{{"asymptotic_ord", to_string(toric::asymptotic_ord_toric(X, d, z))}};
    };
  });

  auto* sig = sub("sigma", "sigma_Z(D) as the limit of ord_Z(||D + eps A||)");
  need_fan(sig);
  sig->add_option("--cone", cone, "Comma list of ray indices")->required();
  sig->add_option("--ample", ample, "Ample divisor A (default: the smallest found)");
  sig->add_option("--k-max", k_max_sigma, "Deepest eps = 1/2^k")->capture_default_str();
  sig->callback([&] {
    run = [&] {
      const auto [X, d] = load();
      const toric::InvariantSubvariety z = cone_of(X, cone);
      const toric::Divisor a = ample_of(X);
      args["cone"] = toric::to_string(z);
      args["ample"] = toric::print_divisor(a);
      const toric::SigmaResult r = toric::sigma(X, d, z, a, {k_max_sigma});
      json samples = json::array();
      for (const auto& [eps, v] : r.samples) samples.push_back({to_string(eps), to_string(v)});
      return json{{"sigma", to_string(r.value)}, {"evidence", to_string(r.evidence)}, {"samples", samples}};
    };
  });

  auto* nonnef = sub("nonnef", "Non-nef locus B_-(D) by three independent methods");
  need_fan(nonnef);
  nonnef->add_option("--ample", ample, "Ample divisor A (default: the smallest found)");
  nonnef->add_option("--p", p, "Characteristic of the test-ideal method")->capture_default_str();
  nonnef->add_option("--levels", levels, "Levels m <= this in the test-ideal method")->capture_default_str();
  nonnef->callback([&] {
    run = [&] {
      const auto [X, d] = load();
      toric::NonNefOptions o;
      o.p = p;
      o.m_cap = levels;
      o.ample = ample_of(X);
      o.tau = caps.asymptotic();
      args["ample"] = toric::print_divisor(*o.ample);
      args["p"] = p;
      const toric::NonNefReport r = toric::non_nef_locus(X, d, o);
      json j;
      j["status"] = toric::to_string(r.status);
      j["positive_sigma"] = json::array();
      for (const auto& [z, s] : r.positive_sigma)
        j["positive_sigma"].push_back({{"subvariety", toric::to_string(z)}, {"sigma", to_string(s)}});
      j["non_nef_locus"] = locus_json(r.non_nef_locus());
      j["cross_checks"] = json::array();
      for (const auto& v : r.cross_checks)
        j["cross_checks"].push_back({{"method", v.method}, {"locus", locus_json(v.locus)}, {"flagged", v.flagged}});
      j["methods_agree"] = r.methods_agree;
      j["codim1_count"] = r.codim1_count;
      j["picard_number"] = r.picard_number;
      return j;
    };
  });

  auto* plus = sub("tau-plus", "tau_+(lambda ||D||) on a chart");
  need_fan(plus);
  plus->add_option("--lambda", lambda, "Exponent")->required();
  plus->add_option("--chart", chart, "Maximal cone used as chart")->capture_default_str();
  plus->add_option("--p", p, "Characteristic")->capture_default_str();
  plus->add_option("--ample", ample, "Ample divisor A (default: the smallest found)");
  plus->add_option("--k-max", k_max_plus, "Deepest eps = 1/2^k")->capture_default_str();
  plus->callback([&] {
    run = [&] {
      const auto [X, d] = load();
      const Rational l = parse_rational(lambda);
      const toric::Divisor a = ample_of(X);
      args["lambda"] = to_string(l);
      args["chart"] = chart;
      args["p"] = p;
      args["ample"] = toric::print_divisor(a);
      toric::TauPlusOptions o;
      o.k_max = k_max_plus;
      const toric::TauPlusResult r = toric::tau_plus_toric(X, d, ExponentLambda(l), chart, a, p, caps.asymptotic(), o);
      json j = test_ideal_json(r.result);
      j["k_stable"] = r.k_stable;
      return j;
    };
  });

  auto* sbl = sub("sbl", "Stable base locus B(D) among invariant subvarieties");
  need_fan(sbl);
  sbl->add_option("--level-cap", level_cap, "Largest level m sampled")->capture_default_str();
  sbl->callback([&] {
    run = [&] {
      const auto [X, d] = load();
      toric::BaseLocusOptions o;
      o.m_cap = level_cap;
      o.window = caps.window;
      const toric::BaseLocus b = toric::stable_base_locus(X, d, o);
      json j = locus_json(b.locus);
      j["m_stable"] = b.m_stable;
      j["evidence"] = to_string(b.evidence);
      return j;
    };
  });

  auto* ver = sub("verify", "Run a property suite");
  ver->add_option("suite", suite, "Suite name or 'all'")->required();
  ver->add_option("--seed", seed, "Random seed")->capture_default_str();
  ver->add_option("--budget", budget, "Cases per suite (default: per-suite)");
  ver->callback([&] {
    run = [&] {
      std::vector<std::string> names;
      if (suite == "all")
        names = verify::suite_names();
      else {
        const auto known = verify::suite_names();
        if (std::find(known.begin(), known.end(), suite) == known.end())
          throw DomainError("unknown suite '" + suite + "'");
        names = {suite};
      }
      args = {{"suite", suite}, {"seed", seed}};
      if (budget) args["budget"] = budget;
      json suites = json::array();
      bool passed = true;
      for (const auto& n : names) {
        const verify::SuiteResult r =
            verify::run_suite(n, seed, budget ? std::optional<std::size_t>(budget) : std::nullopt);
        passed &= r.passed();
        suites.push_back(verify::to_json(r));
      }
      json j{{"passed", passed}, {"suites", suites}};
      if (!passed) j["exit_code"] = 1;
      return j;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }

  std::string verb;
  for (const auto* s : app.get_subcommands()) verb = s->get_name();
  auto fail = [&](const char* kind, const std::exception& ex, int code) {
    if (as_json)
      std::cout << json{{"command", verb}, {"error", {{"kind", kind}, {"message", ex.what()}}}, {"exit_code", code}}.dump(2)
                << '\n';
    std::cerr << "error (" << kind << "): " << ex.what() << '\n';
    return code;
  };
  try {
    json result = run();
    int code = 0;
    if (result.contains("exit_code")) {
      code = result["exit_code"].get<int>();
      result.erase("exit_code");
    }
    if (as_json)
      std::cout << json{{"command", verb}, {"args", args}, {"result", result}}.dump(2) << '\n';
    else
      print_text(result);
    return code;
  } catch (const ResourceError& ex) {
    return fail("resource", ex, 2);
  } catch (const ParseError& ex) {
    return fail("parse", ex, 1);
  } catch (const DomainError& ex) {
    return fail("domain", ex, 1);
  } catch (const StructuralError& ex) {
    return fail("structural", ex, 1);
  } catch (const ContractError& ex) {
    return fail("contract", ex, 1);
  } catch (const TheoremViolation& ex) {
    return fail("theorem-violation", ex, 1);
  } catch (const std::exception& ex) {
    return fail("internal", ex, 1);
  }
}
