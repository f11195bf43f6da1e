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

#include "tauforge/io.hpp"

#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

#include "tauforge/error.hpp"
#include "tauforge/slp.hpp"

namespace tauforge::io {

namespace {

[[noreturn]] void bad(const std::string &what) { throw Error(Errc::BadFormat, what); }

const Json &field(const Json &j, const char *key) {
  if (!j.is_object())
    bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end())
    bad(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t as_natural(const Json &v, const char *what) {
  if (v.is_number_unsigned())
    return v.get<std::uint64_t>();
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    bad(std::string("'") + what + "' must be a non-negative integer");
  return static_cast<std::uint64_t>(v.get<std::int64_t>());
}

std::int64_t as_integer(const Json &v, const char *what) {
  if (!v.is_number_integer())
    bad(std::string("'") + what + "' must be an integer");
  return v.get<std::int64_t>();
}

const std::string &as_string(const Json &v, const char *what) {
  if (!v.is_string())
    bad(std::string("'") + what + "' must be a string");
  return v.get_ref<const std::string &>();
}

const Json &as_array(const Json &v, const char *what) {
  if (!v.is_array())
    bad(std::string("'") + what + "' must be an array");
  return v;
}

std::size_t natural(const Json &j, const char *key) {
  return static_cast<std::size_t>(as_natural(field(j, key), key));
}

Slp program(const Json &v, const char *what) { return parse_slp(as_string(v, what)); }

mpz_class parse_integer(const std::string &text, const char *what) {
  std::string_view digits = text;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+'))
    digits.remove_prefix(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
    bad(std::string("'") + what + "' is not a decimal integer: \"" + text + "\"");
  mpz_class z;
  z.set_str(text[0] == '+' ? text.substr(1) : text, 10);
  return z;
}

Json points_to_json(const std::vector<std::vector<mpq_class>> &points) {
  Json out = Json::array();
  for (const auto &pt : points) {
    Json row = Json::array();
    for (const mpq_class &v : pt)
      row.push_back(format_rational(v));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<mpq_class>> points_from_json(const Json &v, const char *what) {
  std::vector<std::vector<mpq_class>> out;
  for (const Json &row : as_array(v, what)) {
    std::vector<mpq_class> pt;
    for (const Json &x : as_array(row, what))
      pt.push_back(parse_rational(as_string(x, what)));
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace

std::string format_rational(const mpq_class &value) {
  mpq_class v = value;
  v.canonicalize();
  return v.get_str(10);
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  mpz_class num = parse_integer(s.substr(0, slash), "rational");
  mpz_class den = 1;
  if (slash != std::string::npos) {
    std::string d = s.substr(slash + 1);
    if (!d.empty() && (d[0] == '-' || d[0] == '+'))
      bad("denominator must be unsigned: \"" + s + "\"");
    den = parse_integer(d, "rational");
    if (den == 0)
      bad("zero denominator: \"" + s + "\"");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// --- Polynomials --------------------------------------------------------------

Json poly_to_json(const SparsePoly &poly) {
  Json terms = Json::array();
  for (const auto &[exp, coef] : poly.terms())
    terms.push_back(Json{{"exp", exp}, {"coef", coef.get_str(10)}});
  return Json{{"arity", poly.arity()}, {"terms", std::move(terms)}};
}

SparsePoly poly_from_json(const Json &j) {
  std::size_t arity = natural(j, "arity");
  std::vector<std::pair<Exponent, mpz_class>> terms;
  for (const Json &t : as_array(field(j, "terms"), "terms")) {
    const Json &e = as_array(field(t, "exp"), "exp");
    if (e.size() != arity)
      bad("exponent length " + std::to_string(e.size()) + " differs from arity " +
          std::to_string(arity));
    Exponent exp;
    for (const Json &x : e) {
      std::uint64_t v = as_natural(x, "exp");
      if (v > std::numeric_limits<std::uint32_t>::max())
        bad("exponent too large");
      exp.push_back(static_cast<std::uint32_t>(v));
    }
    terms.emplace_back(std::move(exp), parse_integer(as_string(field(t, "coef"), "coef"), "coef"));
  }
  return SparsePoly::from_terms(arity, terms);
}

// --- Machines -----------------------------------------------------------------

Json machine_to_json(const MachineDescription &machine) {
  Json nodes = Json::array();
  for (const Node &n : machine.nodes) {
    Json node{{"id", n.id}};
    if (const auto *c = std::get_if<ComputeNode>(&n.kind)) {
      Json assign = Json::array();
      for (const Assignment &a : c->assignments)
        assign.push_back(Json{{"reg", a.reg}, {"value", format_slp(a.value)}});
      node["kind"] = "compute";
      node["assign"] = std::move(assign);
      node["next"] = c->next;
    } else if (const auto *b = std::get_if<BranchNode>(&n.kind)) {
      node["kind"] = "branch";
      node["test"] = format_slp(b->test);
      node["yes"] = b->yes;
      node["no"] = b->no;
    } else {
      node["kind"] = "output";
      node["reg"] = std::get<OutputNode>(n.kind).reg;
    }
    nodes.push_back(std::move(node));
  }
  return Json{{"name", machine.name},
              {"input_arity", machine.input_arity},
              {"guess_arity", machine.guess_arity},
              {"registers", machine.registers},
              {"start", machine.start},
              {"nodes", std::move(nodes)}};
}

MachineDescription machine_from_json(const Json &j) {
  MachineDescription d;
  d.name = as_string(field(j, "name"), "name");
  d.input_arity = natural(j, "input_arity");
  d.guess_arity = natural(j, "guess_arity");
  d.registers = natural(j, "registers");
  d.start = as_integer(field(j, "start"), "start");
  for (const Json &n : as_array(field(j, "nodes"), "nodes")) {
    NodeId id = as_integer(field(n, "id"), "id");
    const std::string &kind = as_string(field(n, "kind"), "kind");
    if (kind == "compute") {
      ComputeNode c;
      for (const Json &a : as_array(field(n, "assign"), "assign"))
        c.assignments.push_back({natural(a, "reg"), program(field(a, "value"), "value")});
      c.next = as_integer(field(n, "next"), "next");
      d.nodes.push_back({id, std::move(c)});
    } else if (kind == "branch") {
      d.nodes.push_back({id, BranchNode{program(field(n, "test"), "test"),
                                        as_integer(field(n, "yes"), "yes"),
                                        as_integer(field(n, "no"), "no")}});
    } else if (kind == "output") {
      d.nodes.push_back({id, OutputNode{natural(n, "reg")}});
    } else {
      bad("unknown node kind '" + kind + "'");
    }
  }
  return d;
}

// --- Components ---------------------------------------------------------------

Json component_to_json(const ComponentSpec &component) {
  Json psi = Json::array();
  for (const Slp &p : component.psi)
    psi.push_back(format_slp(p));
  return Json{{"name", component.name},
              {"ambient_size", component.ambient_size},
              {"parameter_arity", component.parameter_arity},
              {"psi", std::move(psi)},
              {"yes_samples", points_to_json(component.yes_samples)},
              {"no_samples", points_to_json(component.no_samples)}};
}

ComponentSpec component_from_json(const Json &j) {
  ComponentSpec c;
  c.name = as_string(field(j, "name"), "name");
  c.ambient_size = natural(j, "ambient_size");
  c.parameter_arity = natural(j, "parameter_arity");
  for (const Json &p : as_array(field(j, "psi"), "psi"))
    c.psi.push_back(program(p, "psi"));
  c.yes_samples = points_from_json(field(j, "yes_samples"), "yes_samples");
  c.no_samples = points_from_json(field(j, "no_samples"), "no_samples");
  check_component(c);
  return c;
}

// --- Systems ------------------------------------------------------------------

Json system_to_json(const HnSystem &system) {
  Json polys = Json::array();
  for (const SparsePoly &p : system.polys)
    polys.push_back(poly_to_json(p));
  return Json{{"m", system.m()}, {"n", system.n}, {"polys", std::move(polys)}};
}

HnSystem system_from_json(const Json &j) {
  HnSystem s;
  s.n = natural(j, "n");
  std::size_t m = natural(j, "m");
  for (const Json &p : as_array(field(j, "polys"), "polys"))
    s.polys.push_back(poly_from_json(p));
  if (s.m() != m)
    bad("m = " + std::to_string(m) + " but " + std::to_string(s.m()) + " polynomials given");
  check_system(s);
  return s;
}

Json size_report_to_json(const SizeReport &report) {
  return Json{{"header_bits", report.header_bits},
              {"count_bits", report.count_bits},
              {"exponent_bits", report.exponent_bits},
              {"coefficient_units", report.coefficient_units},
              {"total", report.total}};
}

// --- Machine sets and reports -------------------------------------------------

std::vector<MachineSetEntry> machine_set_from_json(const Json &j) {
  std::vector<MachineSetEntry> out;
  for (const Json &e : as_array(field(j, "entries"), "entries")) {
    std::optional<std::size_t> size;
    if (e.contains("size"))
      size = natural(e, "size");
    std::optional<Machine> machine;
    if (e.contains("machine")) {
      machine = validate_machine(machine_from_json(e["machine"]));
    } else if (e.contains("builtin")) {
      const Json &b = e["builtin"];
      std::uint64_t param = as_natural(field(b, "param"), "param");
      if (param > std::numeric_limits<unsigned>::max())
        throw Error(Errc::ParamOutOfRange, "builtin parameter too large");
      machine = builtin_machine(as_string(field(b, "name"), "name"),
                                static_cast<unsigned>(param));
    } else {
      bad("entry needs 'machine' or 'builtin'");
    }
    std::vector<ComponentSpec> components;
    if (e.contains("components")) {
      for (const Json &c : as_array(e["components"], "components"))
        components.push_back(component_from_json(c));
    } else {
      components.push_back(full_space_component("full", machine->data_arity()));
    }
    out.push_back({size, std::move(*machine), std::move(components)});
  }
  return out;
}

Json ultimate_report_to_json(const UltimateReport &report) {
  Json entries = Json::array();
  for (const ComponentBound &b : report.entries)
    entries.push_back(Json{{"component", b.component},
                           {"size", b.size},
                           {"f_length", b.f_length},
                           {"bound", b.bound},
                           {"exact", b.exact}});
  Json u = Json::array();
  for (const auto &[size, bound] : report.u_bound)
    u.push_back(Json{{"size", size}, {"u_bound", bound}});
  return Json{{"entries", std::move(entries)}, {"u_bound", std::move(u)}};
}

// --- Files --------------------------------------------------------------------

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    bad("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json_file(const std::string &path) { return parse_json(read_text_file(path)); }

}  // namespace tauforge::io
