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

#include "tauforge/hn.hpp"

#include <atomic>
#include <bit>
#include <deque>
#include <limits>
#include <map>

#include "tauforge/parallel.hpp"

namespace tauforge {

void check_system(const HnSystem &system) {
  for (std::size_t i = 0; i < system.polys.size(); ++i)
    if (system.polys[i].arity() != system.n)
      throw Error(Errc::ArityMismatch, "polynomial " + std::to_string(i + 1) +
                                           " has arity " +
                                           std::to_string(system.polys[i].arity()) +
                                           ", system has n = " + std::to_string(system.n));
}

std::uint64_t bit_size(std::uint64_t value) {
  return value == 0 ? 1 : static_cast<std::uint64_t>(std::bit_width(value));
}

SizeReport encode_size(const HnSystem &system) {
  SizeReport r;
  r.header_bits = bit_size(system.m()) + bit_size(system.n);
  for (const SparsePoly &p : system.polys) {
    r.count_bits += bit_size(p.term_count());
    for (const auto &[exp, coeff] : p.terms()) {
      r.coefficient_units += 1;
      for (std::size_t j = 0; j < system.n; ++j)
        r.exponent_bits += bit_size(j < exp.size() ? exp[j] : 0);
    }
  }
  r.total = r.header_bits + r.count_bits + r.exponent_bits + r.coefficient_units;
  return r;
}

bool verify_solution(const HnSystem &system, std::span<const mpq_class> point) {
  if (point.size() != system.n)
    throw Error(Errc::LengthMismatch, "assignment has " + std::to_string(point.size()) +
                                          " values, system has " +
                                          std::to_string(system.n) + " variables");
  for (const SparsePoly &p : system.polys)
    if (p.evaluate(point) != 0)
      return false;
  return true;
}

// --- Layout -------------------------------------------------------------------

RegisterLayout::RegisterLayout(std::size_t guesses, std::size_t registers,
                               std::size_t nodes, std::size_t time)
    : guesses_(guesses), registers_(registers), nodes_(nodes), time_(time) {
  reg_base_ = guesses_;
  sel_base_ = reg_base_ + time_ * registers_;
  nu_base_ = sel_base_ + time_ * nodes_;
  w_base_ = nu_base_ + time_;
  total_ = w_base_ + (time_ > 0 ? time_ - 1 : 0);
}

std::size_t RegisterLayout::reg(std::size_t t, std::size_t j) const {
  return reg_base_ + t * registers_ + j;
}
std::size_t RegisterLayout::selector(std::size_t t, std::size_t q) const {
  return sel_base_ + t * nodes_ + q;
}
std::size_t RegisterLayout::node_index(std::size_t t) const { return nu_base_ + t; }
std::size_t RegisterLayout::inverse(std::size_t t) const { return w_base_ + t; }

std::string RegisterLayout::variable_name(std::size_t v) const {
  auto idx = [](std::size_t a, std::size_t b) {
    return "_" + std::to_string(a) + "_" + std::to_string(b);
  };
  if (v < reg_base_)
    return "g_" + std::to_string(v);
  if (v < sel_base_)
    return "r" + idx((v - reg_base_) / registers_, (v - reg_base_) % registers_);
  if (v < nu_base_)
    return "s" + idx((v - sel_base_) / nodes_, (v - sel_base_) % nodes_);
  if (v < w_base_)
    return "nu_" + std::to_string(v - nu_base_);
  return "w_" + std::to_string(v - w_base_);
}

// --- Register equations -------------------------------------------------------

namespace {

struct Builder {
  std::size_t vars;
  std::vector<SparsePoly> out;
  std::size_t terms = 0;
  std::size_t max_terms;

  SparsePoly var(std::size_t v) const { return SparsePoly::variable(vars, v); }
  SparsePoly constant(const mpz_class &c) const { return SparsePoly::constant(vars, c); }

  void add(SparsePoly p) {
    if (p.is_zero())
      return;
    terms += p.term_count();
    if (terms > max_terms)
      throw Error(Errc::BuildOverflow, "register equations exceed " +
                                           std::to_string(max_terms) + " monomials");
    out.push_back(std::move(p));
  }
};

// `program` expanded over the registers, then moved onto the register
// variables of time t.
SparsePoly at_time(const SparsePoly &over_registers, const RegisterLayout &layout,
                   std::size_t t, std::size_t vars) {
  std::vector<std::size_t> mapping(over_registers.arity());
  for (std::size_t j = 0; j < mapping.size(); ++j)
    mapping[j] = layout.reg(t, j);
  return over_registers.rename(vars, mapping);
}

}  // namespace

RegisterEquations::RegisterEquations(const Machine &machine, std::size_t time,
                                     ReductionOptions options)
    : machine_(&machine),
      layout_(machine.guess_arity(), machine.registers(), machine.nodes().size(), time),
      options_(options) {
  if (time == 0)
    throw Error(Errc::ParamOutOfRange, "time bound must be at least 1");
  const auto &nodes = machine.nodes();
  const std::size_t Q = nodes.size();
  const std::size_t R = machine.registers();
  const std::size_t V = layout_.variable_count();
  const RegisterLayout &L = layout_;
  Builder b{V, {}, 0, options.max_terms};
  const SparsePoly one = b.constant(1);

  // Node programs expanded once over the register file.
  std::vector<std::map<std::size_t, SparsePoly>> updates(Q);
  std::vector<std::optional<SparsePoly>> tests(Q);
  std::vector<std::vector<std::size_t>> successors(Q);
  for (std::size_t q = 0; q < Q; ++q) {
    const Node &node = nodes[q];
    if (const auto *c = std::get_if<ComputeNode>(&node.kind)) {
      for (const Assignment &a : c->assignments)
        updates[q].emplace(a.reg, expand_to_polynomial(a.value, options.term_cap));
      successors[q] = {machine.index_of(c->next)};
    } else if (const auto *br = std::get_if<BranchNode>(&node.kind)) {
      tests[q] = expand_to_polynomial(br->test, options.term_cap);
      successors[q] = {machine.index_of(br->yes), machine.index_of(br->no)};
    } else {
      successors[q] = {q};
    }
  }
  std::vector<std::vector<std::size_t>> predecessors(Q);
  for (std::size_t q = 0; q < Q; ++q)
    for (std::size_t s : successors[q])
      if (predecessors[s].empty() || predecessors[s].back() != q)
        predecessors[s].push_back(q);

  // Initial state apart from the input registers.
  const std::size_t in = machine.input_arity();
  for (std::size_t i = 0; i < machine.guess_arity(); ++i)
    b.add(b.var(L.reg(0, in + i)) - b.var(L.guess(i)));
  for (std::size_t j = machine.data_arity(); j < R; ++j)
    b.add(b.var(L.reg(0, j)));
  const std::size_t start = machine.index_of(machine.start());
  for (std::size_t q = 0; q < Q; ++q)
    b.add(q == start ? b.var(L.selector(0, q)) - one : b.var(L.selector(0, q)));

  for (std::size_t t = 0; t < time; ++t) {
    // One-hot selectors and the node index they encode.
    SparsePoly sum(V), weighted(V);
    for (std::size_t q = 0; q < Q; ++q) {
      SparsePoly s = b.var(L.selector(t, q));
      b.add(s * (s - one));
      sum += s;
      weighted += b.constant(q) * s;
    }
    b.add(sum - one);
    SparsePoly nu = b.var(L.node_index(t));
    b.add(nu - weighted);
    for (std::size_t q = 0; q < Q; ++q)
      b.add(b.var(L.selector(t, q)) * (nu - b.constant(q)));

    if (t + 1 == time)
      break;

    // Control flow into t + 1.
    for (std::size_t q = 0; q < Q; ++q) {
      SparsePoly s = b.var(L.selector(t, q));
      const auto &succ = successors[q];
      if (tests[q] && succ[0] != succ[1]) {
        SparsePoly yes = b.var(L.selector(t + 1, succ[0]));
        SparsePoly no = b.var(L.selector(t + 1, succ[1]));
        SparsePoly h = at_time(*tests[q], L, t, V);
        b.add(s * (one - yes - no));
        b.add(s * yes * h);
        b.add(s * no * (b.var(L.inverse(t)) * h - one));
      } else {
        b.add(s * (one - b.var(L.selector(t + 1, succ[0]))));
      }
    }
    for (std::size_t q = 0; q < Q; ++q) {
      SparsePoly incoming(V);
      for (std::size_t p : predecessors[q])
        incoming += b.var(L.selector(t, p));
      b.add(b.var(L.selector(t + 1, q)) * (one - incoming));
    }

    // Register transitions.
    for (std::size_t j = 0; j < R; ++j) {
      SparsePoly next = b.var(L.reg(t + 1, j));
      SparsePoly keep(V);
      for (std::size_t q = 0; q < Q; ++q) {
        SparsePoly s = b.var(L.selector(t, q));
        auto it = updates[q].find(j);
        if (it == updates[q].end())
          keep += s;
        else
          next -= s * at_time(it->second, L, t, V);
      }
      next -= keep * b.var(L.reg(t, j));
      b.add(std::move(next));
    }
  }

  // Acceptance: an OUTPUT node is selected at T - 1 and its register is 0.
  SparsePoly selected(V), value(V);
  for (std::size_t q = 0; q < Q; ++q)
    if (const auto *o = std::get_if<OutputNode>(&nodes[q].kind)) {
      SparsePoly s = b.var(L.selector(time - 1, q));
      selected += s;
      value += s * b.var(L.reg(time - 1, o->reg));
    }
  b.add(selected - one);
  b.add(std::move(value));
  fixed_ = std::move(b.out);
}

HnSystem RegisterEquations::system(std::span<const mpq_class> input) const {
  if (input.size() != machine_->input_arity())
    throw Error(Errc::LengthMismatch, "input has " + std::to_string(input.size()) +
                                          " values, machine expects " +
                                          std::to_string(machine_->input_arity()));
  const std::size_t V = layout_.variable_count();
  HnSystem sys;
  sys.n = V;
  // q r_{0,j} - p = 0 clears the denominator of x_j = p / q.
  for (std::size_t j = 0; j < input.size(); ++j) {
    SparsePoly eq = SparsePoly::constant(V, input[j].get_den()) *
                    SparsePoly::variable(V, layout_.reg(0, j));
    eq -= SparsePoly::constant(V, input[j].get_num());
    sys.polys.push_back(std::move(eq));
  }
  sys.polys.insert(sys.polys.end(), fixed_.begin(), fixed_.end());
  return sys;
}

std::vector<mpq_class> trace_to_solution(const RegisterEquations &equations,
                                         std::span<const mpq_class> input,
                                         std::span<const mpq_class> guess) {
  const Machine &machine = equations.machine();
  const RegisterLayout &L = equations.layout();
  const std::size_t T = L.time();
  Trace trace = run_concrete(machine, input, guess, T);
  if (!trace.accepted())
    throw Error(Errc::TraceRejects, trace.status == RunStatus::Halted
                                        ? "the machine rejects this input and guess"
                                        : "the machine does not halt within the time bound");
  std::vector<mpq_class> a(L.variable_count());
  for (std::size_t i = 0; i < guess.size(); ++i)
    a[L.guess(i)] = guess[i];
  std::size_t event = 0;
  for (std::size_t t = 0; t < T; ++t) {
    // An accepting run ends on OUTPUT, which loops to itself until T - 1.
    std::size_t k = std::min(t, trace.path.size() - 1);
    NodeId id = trace.path[k];
    std::size_t q = machine.index_of(id);
    for (std::size_t j = 0; j < machine.registers(); ++j)
      a[L.reg(t, j)] = trace.states[k][j];
    a[L.selector(t, q)] = 1;
    a[L.node_index(t)] = static_cast<unsigned long>(q);
    if (t < trace.path.size() && std::holds_alternative<BranchNode>(machine.node(id).kind)) {
      const BranchEvent &e = trace.branch_events[event++];
      if (!e.taken_yes)
        a[L.inverse(t)] = 1 / e.value;
    }
  }
  return a;
}

HnSystem combined_register_equations(const RegisterEquations &m,
                                     const RegisterEquations &n,
                                     std::span<const mpq_class> input) {
  HnSystem a = m.system(input);
  HnSystem b = n.system(input);
  HnSystem out;
  out.n = a.n + b.n;
  std::vector<std::size_t> first(a.n), second(b.n);
  for (std::size_t i = 0; i < a.n; ++i)
    first[i] = i;
  for (std::size_t i = 0; i < b.n; ++i)
    second[i] = a.n + i;
  for (const SparsePoly &p : a.polys)
    out.polys.push_back(p.rename(out.n, first));
  for (const SparsePoly &p : b.polys)
    out.polys.push_back(p.rename(out.n, second));
  return out;
}

// --- Finite domains -----------------------------------------------------------

namespace {

std::uint64_t domain_product(const Domains &domains, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (const auto &d : domains) {
    if (d.empty())
      return 0;
    if (total > cap / d.size())
      throw Error(Errc::DomainTooLarge,
                  "domain product exceeds " + std::to_string(cap));
    total *= d.size();
  }
  if (total > cap)
    throw Error(Errc::DomainTooLarge, "domain product exceeds " + std::to_string(cap));
  return total;
}

void decode(std::uint64_t index, const Domains &domains, std::vector<mpq_class> &point) {
  for (std::size_t v = domains.size(); v-- > 0;) {
    point[v] = domains[v][index % domains[v].size()];
    index /= domains[v].size();
  }
}

}  // namespace

std::optional<std::vector<mpq_class>> brute_force_solvable(const HnSystem &system,
                                                           const Domains &domains,
                                                           std::size_t workers,
                                                           std::uint64_t domain_cap) {
  if (domains.size() != system.n)
    throw Error(Errc::LengthMismatch, std::to_string(domains.size()) +
                                          " domains for " + std::to_string(system.n) +
                                          " variables");
  const std::uint64_t total = domain_product(domains, domain_cap);
  if (total == 0)
    return std::nullopt;
  constexpr std::uint64_t kBlock = 4096;
  const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<std::optional<std::uint64_t>> hit(blocks);
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  parallel_for(blocks, workers, [&](std::size_t blk) {
    if (blk > best.load())
      return;
    std::vector<mpq_class> point(system.n);
    for (std::uint64_t i = blk * kBlock; i < std::min(total, (blk + 1) * kBlock); ++i) {
      decode(i, domains, point);
      if (verify_solution(system, point)) {
        hit[blk] = i;
        std::uint64_t cur = best.load();
        while (blk < cur && !best.compare_exchange_weak(cur, blk)) {
        }
        return;
      }
    }
  });
  for (const auto &h : hit)
    if (h) {
      std::vector<mpq_class> point(system.n);
      decode(*h, domains, point);
      return point;
    }
  return std::nullopt;
}

Domains propagate_domains(const HnSystem &system,
                          std::span<const std::optional<mpq_class>> seed) {
  if (seed.size() != system.n)
    throw Error(Errc::LengthMismatch, "seed length differs from variable count");
  const std::size_t V = system.n;
  const std::size_t E = system.polys.size();
  std::vector<std::optional<mpq_class>> value(seed.begin(), seed.end());
  std::vector<std::vector<std::size_t>> eqs_of(V);
  for (std::size_t e = 0; e < E; ++e) {
    std::vector<bool> used(V);
    for (const auto &[exp, c] : system.polys[e].terms())
      for (std::size_t v = 0; v < exp.size(); ++v)
        if (exp[v] && !used[v]) {
          used[v] = true;
          eqs_of[v].push_back(e);
        }
  }

  // Substitutes the known values; an equation whose surviving monomials
  // mention a single unknown x, at most linearly, pins x. Unknowns can
  // vanish through zero cofactors, so counting them syntactically is not
  // enough.
  using Residual = std::map<std::vector<std::pair<std::size_t, std::uint32_t>>, mpq_class>;
  auto try_solve = [&](std::size_t e) -> std::optional<std::size_t> {
    Residual r;
    for (const auto &[exp, c] : system.polys[e].terms()) {
      mpq_class term = c;
      std::vector<std::pair<std::size_t, std::uint32_t>> key;
      for (std::size_t v = 0; v < exp.size() && term != 0; ++v) {
        if (!exp[v])
          continue;
        if (!value[v]) {
          key.emplace_back(v, exp[v]);
          continue;
        }
        mpq_class p;
        mpz_pow_ui(p.get_num_mpz_t(), value[v]->get_num_mpz_t(), exp[v]);
        mpz_pow_ui(p.get_den_mpz_t(), value[v]->get_den_mpz_t(), exp[v]);
        term *= p;
      }
      if (term != 0)
        r[key] += term;
    }
    std::optional<std::size_t> x;
    mpq_class c0 = 0, c1 = 0;
    for (const auto &[key, c] : r) {
      if (c == 0)
        continue;
      if (key.empty()) {
        c0 = c;
        continue;
      }
      if (key.size() != 1 || key[0].second != 1 || (x && *x != key[0].first))
        return std::nullopt;
      x = key[0].first;
      c1 = c;
    }
    if (!x || c1 == 0)
      return std::nullopt;
    value[*x] = -c0 / c1;
    return x;
  };

  std::deque<std::size_t> queue;
  std::vector<bool> queued(E, true);
  for (std::size_t e = 0; e < E; ++e)
    queue.push_back(e);
  while (!queue.empty()) {
    std::size_t e = queue.front();
    queue.pop_front();
    queued[e] = false;
    if (auto x = try_solve(e))
      for (std::size_t f : eqs_of[*x])
        if (!queued[f]) {
          queued[f] = true;
          queue.push_back(f);
        }
  }

  Domains out(V);
  for (std::size_t v = 0; v < V; ++v)
    out[v] = {value[v] ? *value[v] : mpq_class(0)};
  return out;
}

std::optional<std::vector<mpq_class>> solve_with_guess_domains(
    const HnSystem &system, const RegisterLayout &layout, const Domains &guess_domains,
    std::uint64_t domain_cap) {
  const std::uint64_t combos = domain_product(guess_domains, domain_cap);
  std::vector<mpq_class> g(guess_domains.size());
  for (std::uint64_t i = 0; i < combos; ++i) {
    decode(i, guess_domains, g);
    std::vector<std::optional<mpq_class>> seed(system.n);
    for (std::size_t k = 0; k < g.size(); ++k)
      seed[layout.guess(k)] = g[k];
    Domains domains = propagate_domains(system, seed);
    if (auto w = brute_force_solvable(system, domains, 1, domain_cap))
      return w;
  }
  return std::nullopt;
}

}  // namespace tauforge
