// Copyright 2026 The Tauforge Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"
#include "tauforge/error.hpp"
#include "tauforge/machine.hpp"
#include "tauforge/slp.hpp"
#include "tauforge/symbolic.hpp"
#include "tauforge/tau_search.hpp"
#include "tauforge/ultimate.hpp"

namespace tauforge::cli {

using io::Json;

namespace {

/// A bad flag value discovered after CLI11 accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string_view format_name(Format f) { return f == Format::Csv ? "csv" : "json"; }

Json envelope(std::string_view command, const RunConfig &config, Json result) {
  return Json{{"tool", "tauforge"},
              {"version", TAUFORGE_VERSION},
              {"command", command},
              {"config", config_to_json(config)},
              {"result", std::move(result)}};
}

std::string csv_preamble(std::string_view command, const RunConfig &config) {
  return "# tauforge " TAUFORGE_VERSION " " + std::string(command) + " " +
         config_to_json(config).dump() + "\n";
}

std::string csv_quote(std::string_view field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::uint64_t parse_seed(const std::string &text) {
  std::uint64_t v = 0;
  int base = 10;
  std::string_view s = text;
  if (s.starts_with("0x") || s.starts_with("0X")) {
    base = 16;
    s.remove_prefix(2);
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("TAUFORGE_SEED is not a 64-bit natural: '" + text + "'");
  return v;
}

std::vector<mpq_class> parse_point(const std::vector<std::string> &items, const char *flag) {
  std::vector<mpq_class> out;
  for (const std::string &s : items) {
    try {
      out.push_back(io::parse_rational(s));
    } catch (const Error &) {
      throw UsageError(std::string(flag) + ": not a rational: '" + s + "'");
    }
  }
  return out;
}

Json point_to_json(std::span<const mpq_class> pt) {
  Json out = Json::array();
  for (const mpq_class &v : pt)
    out.push_back(io::format_rational(v));
  return out;
}

/// A machine file, or "builtin:NAME:PARAM".
Machine load_machine(const std::string &spec) {
  if (spec.starts_with("builtin:")) {
    auto colon = spec.rfind(':');
    std::string name = spec.substr(8, colon - 8);
    unsigned long param = 0;
    auto [ptr, ec] = std::from_chars(spec.data() + colon + 1, spec.data() + spec.size(), param);
    if (colon < 8 || ec != std::errc() || ptr != spec.data() + spec.size())
      throw UsageError("expected builtin:NAME:PARAM, got '" + spec + "'");
    return builtin_machine(name, static_cast<unsigned>(param));
  }
  return validate_machine(io::machine_from_json(io::read_json_file(spec)));
}

/// The whole data space, with an integer probe grid of at most 1024 points
/// labeled by running the machine. Points that hit the step cap stay
/// unlabeled.
ComponentSpec probed_full_space(const Machine &machine, std::size_t step_cap) {
  std::size_t s = machine.data_arity();
  ComponentSpec c = full_space_component("full", s);
  std::size_t width = 1;
  auto fits = [&](std::size_t w) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < s; ++i)
      if ((total *= w) > 1024)
        return false;
    return true;
  };
  while (s > 0 && width < 1024 && fits(width + 1))
    ++width;
  std::vector<std::size_t> digits(s, 0);
  std::size_t input = machine.input_arity();
  while (true) {
    std::vector<mpq_class> pt;
    for (std::size_t d : digits)
      pt.emplace_back(static_cast<long>(d) - 2);
    std::span<const mpq_class> all(pt);
    Trace t = run_concrete(machine, all.first(input), all.subspan(input), step_cap);
    if (t.status == RunStatus::Halted)
      (t.accepted() ? c.yes_samples : c.no_samples).push_back(std::move(pt));
    std::size_t k = s;
    while (k > 0 && ++digits[k - 1] == width)
      digits[--k] = 0;
    if (k == 0)
      break;
  }
  return c;
}

/// A component file, or "full" for the whole data space of `machine`.
ComponentSpec load_component(const std::string &spec, const Machine &machine,
                             std::size_t step_cap) {
  if (spec == "full")
    return probed_full_space(machine, step_cap);
  return io::component_from_json(io::read_json_file(spec));
}

SearchConfig search_config(const RunConfig &c) {
  SearchConfig s;
  s.seed = c.seed;
  s.workers = c.workers;
  s.term_cap = c.caps.term_cap;
  return s;
}

SymbolicOptions symbolic_options(const RunConfig &c, bool strict) {
  SymbolicOptions s;
  s.seed = c.seed;
  s.term_cap = c.caps.term_cap;
  s.strict = strict;
  return s;
}

void require_json(const RunConfig &c, std::string_view command) {
  if (c.format != Format::Json)
    throw UsageError(std::string(command) + " reports only in json");
}

// --- Commands -----------------------------------------------------------------

std::string cmd_tau(const RunConfig &c, const std::string &file) {
  SparsePoly target = io::poly_from_json(io::read_json_file(file));
  auto found = tau_exact(target, c.caps.max_len, search_config(c));
  if (c.format == Format::Csv) {
    std::string s = csv_preamble("tau", c) + "tau,witness,verified_exactly\n";
    if (found)
      s += std::to_string(found->tau) + "," + csv_quote(format_slp(found->witness)) + "," +
           (found->verified_exactly ? "true" : "false") + "\n";
    return s;
  }
  Json r{{"target", io::poly_to_json(target)}, {"found", found.has_value()}};
  if (found) {
    r["tau"] = found->tau;
    r["witness"] = format_slp(found->witness);
    r["verified_exactly"] = found->verified_exactly;
  }
  return envelope("tau", c, std::move(r)).dump(2) + "\n";
}

std::string cmd_scan(const RunConfig &c) {
  auto rows = conjecture_scan(c.caps.max_len, c.caps.factor_budget, search_config(c));
  if (c.format == Format::Csv) {
    std::string s = csv_preamble("scan", c) +
                    "length,programs_visited,max_integer_roots,witness,skipped_expansion,"
                    "skipped_factorization\n";
    for (const ScanRow &r : rows)
      s += std::to_string(r.length) + "," + std::to_string(r.programs_visited) + "," +
           std::to_string(r.max_integer_roots) + "," +
           csv_quote(r.witness ? format_slp(*r.witness) : "") + "," +
           std::to_string(r.skipped_expansion) + "," + std::to_string(r.skipped_factorization) +
           "\n";
    return s;
  }
  Json out = Json::array();
  for (const ScanRow &r : rows)
    out.push_back(Json{{"length", r.length},
                       {"programs_visited", r.programs_visited},
                       {"max_integer_roots", r.max_integer_roots},
                       {"witness", r.witness ? Json(format_slp(*r.witness)) : Json(nullptr)},
                       {"skipped_expansion", r.skipped_expansion},
                       {"skipped_factorization", r.skipped_factorization},
                       {"zero_polynomials", r.zero_polynomials}});
  return envelope("scan", c, Json{{"rows", std::move(out)}}).dump(2) + "\n";
}

std::string cmd_pd_probe(const RunConfig &c, unsigned d) {
  auto found = pd_multiple_search(d, c.caps.max_len, search_config(c));
  if (c.format == Format::Csv) {
    std::string s = csv_preamble("pd-probe", c) + "d,length,witness\n";
    if (found)
      s += std::to_string(d) + "," + std::to_string(found->length) + "," +
           csv_quote(format_slp(found->witness)) + "\n";
    return s;
  }
  Json r{{"d", d}, {"found", found.has_value()}};
  if (found) {
    r["length"] = found->length;
    r["witness"] = format_slp(found->witness);
    r["expansion"] = io::poly_to_json(found->expansion);
    r["cofactor"] = io::poly_to_json(found->cofactor);
  }
  return envelope("pd-probe", c, std::move(r)).dump(2) + "\n";
}

std::string cmd_simulate(const RunConfig &c, const std::string &file,
                         const std::vector<mpq_class> &input,
                         const std::vector<mpq_class> &guess) {
  require_json(c, "simulate");
  Machine m = load_machine(file);
  Trace t = run_concrete(m, input, guess, c.caps.step_cap);
  Json events = Json::array();
  for (const BranchEvent &e : t.branch_events)
    events.push_back(Json{{"node", e.node},
                          {"value", io::format_rational(e.value)},
                          {"taken", e.taken_yes ? "yes" : "no"}});
  Json r{{"machine", m.name()},
         {"input", point_to_json(input)},
         {"guess", point_to_json(guess)},
         {"status", t.status == RunStatus::Halted ? "HALTED" : "STEP_CAP_EXCEEDED"},
         {"steps", t.steps},
         {"accepted", t.accepted()},
         {"output", t.output ? Json(io::format_rational(*t.output)) : Json(nullptr)},
         {"path", t.path},
         {"branch_events", std::move(events)},
         {"warnings", m.warnings()}};
  return envelope("simulate", c, std::move(r)).dump(2) + "\n";
}

std::string cmd_canonical(const RunConfig &c, const std::string &machine_file,
                          const std::string &component_file, bool strict) {
  require_json(c, "canonical");
  Machine m = load_machine(machine_file);
  ComponentSpec comp = load_component(component_file, m, c.caps.step_cap);
  CanonicalTrace t = branch_polynomial(m, comp, c.caps.step_cap, symbolic_options(c, strict));
  Json branches = Json::array();
  for (const BranchRecord &b : t.branch_records)
    branches.push_back(
        Json{{"node", b.node}, {"test", format_slp(b.test)}, {"trivial", b.trivial}});
  Json expansion = nullptr;
  if (t.is_one()) {
    expansion = io::poly_to_json(SparsePoly::constant(m.data_arity(), 1));
  } else {
    try {
      expansion = io::poly_to_json(expand_to_polynomial(*t.f, c.caps.term_cap));
    } catch (const Error &e) {
      if (e.code() != Errc::TermCapExceeded)
        throw;
    }
  }
  Json samples = Json::array();
  auto add_samples = [&](const auto &points, const char *label) {
    for (const auto &pt : points)
      samples.push_back(Json{{"label", label},
                             {"point", point_to_json(pt)},
                             {"f", io::format_rational(t.evaluate_f(pt))}});
  };
  add_samples(comp.yes_samples, "yes");
  add_samples(comp.no_samples, "no");
  DichotomyReport d = dichotomy_check(t, comp);
  auto witness = [](const std::optional<std::vector<mpq_class>> &w) {
    return w ? point_to_json(*w) : Json(nullptr);
  };
  Json r{{"machine", m.name()},
         {"component", comp.name},
         {"path", t.path},
         {"branches", std::move(branches)},
         {"f", t.f ? Json(format_slp(*t.f)) : Json(nullptr)},
         {"f_is_one", t.is_one()},
         {"f_length", t.f_length()},
         {"symbolic_steps", t.symbolic_steps},
         {"f_expansion", std::move(expansion)},
         {"samples", std::move(samples)},
         {"dichotomy",
          {{"side", side_name(d.side)},
           {"yes_witness", witness(d.yes_witness)},
           {"no_witness", witness(d.no_witness)}}}};
  return envelope("canonical", c, std::move(r)).dump(2) + "\n";
}

std::string cmd_ultimate(const RunConfig &c, const std::string &file, bool strict,
                         std::size_t exact_limit) {
  require_json(c, "ultimate");
  std::vector<MachineSetEntry> entries = io::machine_set_from_json(io::read_json_file(file));
  UltimateOptions o;
  o.step_cap = c.caps.step_cap;
  o.symbolic = symbolic_options(c, strict);
  o.exact_limit = exact_limit;
  o.search = search_config(c);
  o.workers = c.workers;
  UltimateReport report = ultimate_over_set(entries, o);
  return envelope("ultimate", c, io::ultimate_report_to_json(report)).dump(2) + "\n";
}

struct ReduceRequest {
  std::string machine;
  std::vector<mpq_class> input;
  std::size_t time = 0;
  std::optional<std::vector<mpq_class>> guess;
  std::optional<std::vector<mpq_class>> solve_domain;
  bool emit_system = false;
};

std::string cmd_reduce(const RunConfig &c, const ReduceRequest &q) {
  require_json(c, "reduce");
  Machine m = load_machine(q.machine);
  ReductionOptions ro;
  ro.term_cap = c.caps.term_cap;
  RegisterEquations eq(m, q.time, ro);
  HnSystem sys = eq.system(q.input);
  const RegisterLayout &layout = eq.layout();
  auto named = [&](const std::vector<mpq_class> &point) {
    Json out = Json::object();
    for (std::size_t v = 0; v < point.size(); ++v)
      out[layout.variable_name(v)] = io::format_rational(point[v]);
    return out;
  };
  Json r{{"machine", m.name()},
         {"input", point_to_json(q.input)},
         {"time", q.time},
         {"variables", layout.variable_count()},
         {"equations", sys.m()},
         {"size", io::size_report_to_json(encode_size(sys))}};
  if (q.guess) {
    Json trace{{"guess", point_to_json(*q.guess)}};
    try {
      std::vector<mpq_class> w = trace_to_solution(eq, q.input, *q.guess);
      trace["accepts"] = true;
      trace["verified"] = verify_solution(sys, w);
      trace["witness"] = named(w);
    } catch (const Error &e) {
      if (e.code() != Errc::TraceRejects)
        throw;
      trace["accepts"] = false;
      trace["verified"] = false;
      trace["witness"] = nullptr;
    }
    r["trace"] = std::move(trace);
  }
  if (q.solve_domain) {
    Domains guesses(m.guess_arity(), *q.solve_domain);
    auto sol = solve_with_guess_domains(sys, layout, guesses, c.caps.domain_cap);
    Json solve{{"guess_domain", point_to_json(*q.solve_domain)},
               {"satisfiable", sol.has_value()}};
    solve["solution"] = sol ? named(*sol) : Json(nullptr);
    r["solve"] = std::move(solve);
  }
  if (q.emit_system)
    r["system"] = io::system_to_json(sys);
  return envelope("reduce", c, std::move(r)).dump(2) + "\n";
}

std::string cmd_slp(const RunConfig &c, const std::string &action, const std::string &file) {
  Slp p = parse_slp(io::read_text_file(file));
  if (action == "fmt")
    return format_slp(p) + "\n";
  require_json(c, "slp check");
  Json r{{"valid", true}, {"arity", p.arity()}, {"length", p.length()}};
  try {
    r["expansion"] = io::poly_to_json(expand_to_polynomial(p, c.caps.term_cap));
  } catch (const Error &e) {
    if (e.code() != Errc::TermCapExceeded)
      throw;
    r["expansion"] = nullptr;
  }
  return envelope("slp check", c, std::move(r)).dump(2) + "\n";
}

void emit(const RunConfig &c, const std::string &text, std::ostream &out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f || !(f << text))
    throw Error(Errc::BadFormat, "cannot write '" + c.output + "'");
}

}  // namespace

Json config_to_json(const RunConfig &config) {
  return Json{{"seed", config.seed},
              {"caps",
               {{"max_len", config.caps.max_len},
                {"term_cap", config.caps.term_cap},
                {"step_cap", config.caps.step_cap},
                {"factor_budget", config.caps.factor_budget},
                {"domain_cap", config.caps.domain_cap}}},
              {"format", format_name(config.format)}};
}

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  RunConfig c;
  CLI::App app{"Straight-line program and BSS machine workbench", "tauforge"};
  app.set_version_flag("--version", TAUFORGE_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  CLI::Validator positive(
      [](std::string &v) -> std::string {
        return v.find_first_not_of("0123456789") == std::string::npos &&
                       v.find_first_not_of('0') != std::string::npos
                   ? ""
                   : "must be a positive integer, got '" + v + "'";
      },
      "POSITIVE");
  app.add_option("--seed", c.seed, "Fingerprint seed (TAUFORGE_SEED overrides)");
  app.add_option("--term-cap", c.caps.term_cap, "Monomial cap for expansions")->check(positive);
  app.add_option("--step-cap", c.caps.step_cap, "Machine step cap")->check(positive);
  app.add_option("--factor-budget", c.caps.factor_budget, "Trial division budget")
      ->check(positive);
  app.add_option("--domain-cap", c.caps.domain_cap, "Brute-force domain cap")->check(positive);
  app.add_option("--workers", c.workers, "Worker threads")->check(positive);
  app.add_option("-o,--output", c.output, "Write the report to this file");
  std::string format = "json";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  std::function<std::string()> action;

  std::string tau_file;
  auto *tau = app.add_subcommand("tau", "Exact tau of a polynomial by exhaustive search");
  tau->add_option("poly", tau_file, "Polynomial JSON")->required()->check(CLI::ExistingFile);
  tau->add_option("--max-len", c.caps.max_len, "Longest program tried")->check(positive);
  tau->callback([&] { action = [&] { return cmd_tau(c, tau_file); }; });

  auto *scan = app.add_subcommand("scan", "Maximum integer root counts per program length");
  scan->add_option("--max-len", c.caps.max_len, "Longest program enumerated")
      ->required()
      ->check(positive);
  scan->callback([&] { action = [&] { return cmd_scan(c); }; });

  unsigned d = 0;
  auto *pd = app.add_subcommand("pd-probe", "Shortest program for a nonzero multiple of p_d");
  pd->add_option("--d", d, "Degree d of p_d")->required()->check(CLI::Range(1u, 30u));
  pd->add_option("--max-len", c.caps.max_len, "Longest program tried")
      ->required()
      ->check(positive);
  pd->callback([&] { action = [&] { return cmd_pd_probe(c, d); }; });

  std::string sim_file;
  std::vector<std::string> sim_input, sim_guess;
  auto *sim = app.add_subcommand("simulate", "Run a machine on a rational input");
  sim->add_option("machine", sim_file, "Machine JSON or builtin:NAME:PARAM")->required();
  sim->add_option("--input", sim_input, "Comma separated rationals")->delimiter(',');
  sim->add_option("--guess", sim_guess, "Comma separated rationals")->delimiter(',');
  sim->callback([&] {
    action = [&] {
      return cmd_simulate(c, sim_file, parse_point(sim_input, "--input"),
                          parse_point(sim_guess, "--guess"));
    };
  });

  std::string can_machine, can_component;
  bool can_strict = false;
  auto *can = app.add_subcommand("canonical", "Canonical path and branch polynomial");
  can->add_option("machine", can_machine, "Machine JSON or builtin:NAME:PARAM")->required();
  can->add_option("component", can_component, "Component JSON or 'full'")->required();
  can->add_flag("--strict", can_strict, "Fail instead of trusting a fingerprint");
  can->callback([&] {
    action = [&] { return cmd_canonical(c, can_machine, can_component, can_strict); };
  });

  std::string ult_file;
  bool ult_strict = false;
  std::size_t exact_limit = UltimateOptions{}.exact_limit;
  auto *ult = app.add_subcommand("ultimate", "Ultimate running time bounds of a machine set");
  ult->add_option("set", ult_file, "Machine set JSON")->required()->check(CLI::ExistingFile);
  ult->add_flag("--strict", ult_strict, "Fail instead of trusting a fingerprint");
  ult->add_option("--exact-limit", exact_limit, "Longest f given an exact tau");
  ult->callback([&] {
    action = [&] { return cmd_ultimate(c, ult_file, ult_strict, exact_limit); };
  });

  ReduceRequest rq;
  std::vector<std::string> red_input, red_guess, red_domain;
  auto *red = app.add_subcommand("reduce", "Register equations of a machine run");
  red->add_option("machine", rq.machine, "Machine JSON or builtin:NAME:PARAM")->required();
  red->add_option("--input", red_input, "Comma separated rationals")->delimiter(',');
  red->add_option("--time", rq.time, "Time bound T")->required()->check(positive);
  auto *guess_opt =
      red->add_option("--guess", red_guess, "Check the witness read off this run")
          ->delimiter(',');
  auto *solve_opt = red->add_option("--solve", red_domain,
                                    "Brute force with each guess ranging over these values")
                        ->delimiter(',');
  red->add_flag("--emit-system", rq.emit_system, "Include the polynomial system");
  red->callback([&] {
    action = [&] {
      rq.input = parse_point(red_input, "--input");
      if (guess_opt->count() > 0)
        rq.guess = parse_point(red_guess, "--guess");
      if (solve_opt->count() > 0)
        rq.solve_domain = parse_point(red_domain, "--solve");
      return cmd_reduce(c, rq);
    };
  });

  std::string slp_action, slp_file;
  auto *slp = app.add_subcommand("slp", "Format or check an SLP text file");
  slp->add_option("action", slp_action, "fmt or check")
      ->required()
      ->check(CLI::IsMember({"fmt", "check"}));
  slp->add_option("file", slp_file, "SLP text file")->required()->check(CLI::ExistingFile);
  slp->callback([&] { action = [&] { return cmd_slp(c, slp_action, slp_file); }; });

  std::string bi_name;
  unsigned bi_param = 0;
  auto *bi = app.add_subcommand("builtin", "Print a builtin machine as JSON");
  bi->add_option("name", bi_name, "membership or example2")->required();
  bi->add_option("--param", bi_param, "m for membership, k for example2")->required();
  bi->callback([&] {
    action = [&] {
      return io::machine_to_json(builtin_machine(bi_name, bi_param).description()).dump(2) +
             "\n";
    };
  });

  auto usage = [&](const std::string &message) {
    err << "error: " << message << "\n\n" << app.help();
    return kExitUsage;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    return usage(e.what());
  }
  c.format = format == "csv" ? Format::Csv : Format::Json;

  try {
    if (const char *env = std::getenv("TAUFORGE_SEED"))
      c.seed = parse_seed(env);
    emit(c, action(), out);
    return kExitOk;
  } catch (const UsageError &e) {
    return usage(e.what());
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace tauforge::cli
