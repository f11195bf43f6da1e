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

#include "tauforge/machine.hpp"

#include <deque>
#include <unordered_set>

#include "tauforge/hn.hpp"
#include "tauforge/polynomial.hpp"

namespace tauforge {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string node_label(NodeId id) { return "node " + std::to_string(id); }

void check_program(const Slp &program, std::size_t registers, NodeId id) {
  if (program.arity() != registers)
    throw Error(Errc::BadRegister, node_label(id) + " has a program of arity " +
                                       std::to_string(program.arity()) + ", expected " +
                                       std::to_string(registers));
}

void check_register(std::size_t reg, std::size_t registers, NodeId id) {
  if (reg >= registers)
    throw Error(Errc::BadRegister, node_label(id) + " references register " +
                                       std::to_string(reg) + " of " +
                                       std::to_string(registers));
}

// True when every value ever stored in `reg` is provably 0 or 1: the
// register is not loaded from the data vector, and each assignment to it
// expands to one of those constants.
bool provably_binary(const MachineDescription &d, std::size_t reg) {
  if (reg < d.input_arity + d.guess_arity)
    return false;
  constexpr std::size_t kTermCap = 64;
  const SparsePoly zero(d.registers);
  const SparsePoly one = SparsePoly::constant(d.registers, 1);
  for (const Node &n : d.nodes) {
    const auto *c = std::get_if<ComputeNode>(&n.kind);
    if (!c)
      continue;
    for (const Assignment &a : c->assignments) {
      if (a.reg != reg)
        continue;
      try {
        SparsePoly p = expand_to_polynomial(a.value, kTermCap);
        if (p != zero && p != one)
          return false;
      } catch (const Error &) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

Machine validate_machine(MachineDescription d) {
  if (d.registers < d.input_arity + d.guess_arity)
    throw Error(Errc::BadRegister, "machine declares " + std::to_string(d.registers) +
                                       " registers but loads " +
                                       std::to_string(d.input_arity + d.guess_arity));
  Machine m;
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    if (!m.index_.emplace(d.nodes[i].id, i).second)
      throw Error(Errc::DuplicateNode, node_label(d.nodes[i].id) + " is defined twice");

  auto require = [&](NodeId from, NodeId to) {
    if (!m.index_.contains(to))
      throw Error(Errc::DanglingNode,
                  node_label(from) + " jumps to missing " + node_label(to));
  };
  if (!m.index_.contains(d.start))
    throw Error(Errc::DanglingNode, "start " + node_label(d.start) + " does not exist");

  for (const Node &n : d.nodes) {
    std::visit(Overloaded{
                   [&](const ComputeNode &c) {
                     std::unordered_set<std::size_t> seen;
                     for (const Assignment &a : c.assignments) {
                       check_register(a.reg, d.registers, n.id);
                       check_program(a.value, d.registers, n.id);
                       if (!seen.insert(a.reg).second)
                         throw Error(Errc::BadRegister,
                                     node_label(n.id) + " assigns register " +
                                         std::to_string(a.reg) + " twice");
                     }
                     require(n.id, c.next);
                   },
                   [&](const BranchNode &b) {
                     check_program(b.test, d.registers, n.id);
                     require(n.id, b.yes);
                     require(n.id, b.no);
                   },
                   [&](const OutputNode &o) { check_register(o.reg, d.registers, n.id); },
               },
               n.kind);
  }

  // Reachability from start; at least one OUTPUT must be reachable.
  std::vector<bool> seen(d.nodes.size());
  std::deque<std::size_t> queue{m.index_.at(d.start)};
  seen[queue.front()] = true;
  bool output_reachable = false;
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    auto push = [&](NodeId id) {
      std::size_t j = m.index_.at(id);
      if (!seen[j]) {
        seen[j] = true;
        queue.push_back(j);
      }
    };
    std::visit(Overloaded{
                   [&](const ComputeNode &c) { push(c.next); },
                   [&](const BranchNode &b) {
                     push(b.yes);
                     push(b.no);
                   },
                   [&](const OutputNode &o) {
                     output_reachable = true;
                     if (!provably_binary(d, o.reg))
                       m.warnings_.push_back("NONBINARY_OUTPUT_WARNING: " +
                                             node_label(d.nodes[i].id) +
                                             " outputs register " +
                                             std::to_string(o.reg));
                   },
               },
               d.nodes[i].kind);
  }
  if (!output_reachable)
    throw Error(Errc::NoOutput, "no OUTPUT node is reachable from the start");

  m.desc_ = std::move(d);
  return m;
}

Trace run_concrete(const Machine &machine, std::span<const mpq_class> input,
                   std::span<const mpq_class> guess, std::size_t step_cap) {
  if (input.size() != machine.input_arity())
    throw Error(Errc::LengthMismatch, "input has " + std::to_string(input.size()) +
                                          " values, machine expects " +
                                          std::to_string(machine.input_arity()));
  if (guess.size() != machine.guess_arity())
    throw Error(Errc::LengthMismatch, "guess has " + std::to_string(guess.size()) +
                                          " values, machine expects " +
                                          std::to_string(machine.guess_arity()));
  std::vector<mpq_class> regs(machine.registers());
  std::copy(input.begin(), input.end(), regs.begin());
  std::copy(guess.begin(), guess.end(), regs.begin() + input.size());
  for (mpq_class &r : regs)
    r.canonicalize();  // callers may hand over unreduced fractions

  Trace trace;
  NodeId at = machine.start();
  while (trace.path.size() < step_cap) {
    trace.path.push_back(at);
    trace.states.push_back(regs);
    const Node &node = machine.node(at);
    if (const auto *o = std::get_if<OutputNode>(&node.kind)) {
      trace.output = regs[o->reg];
      trace.status = RunStatus::Halted;
      break;
    }
    if (const auto *c = std::get_if<ComputeNode>(&node.kind)) {
      std::vector<mpq_class> next = regs;
      for (const Assignment &a : c->assignments)
        next[a.reg] = evaluate(a.value, std::span<const mpq_class>(regs));
      regs = std::move(next);
      at = c->next;
    } else {
      const auto &b = std::get<BranchNode>(node.kind);
      mpq_class v = evaluate(b.test, std::span<const mpq_class>(regs));
      bool yes = v == 0;
      trace.branch_events.push_back({at, v, yes});
      at = yes ? b.yes : b.no;
    }
  }
  trace.steps = trace.path.size();
  return trace;
}

Slp polynomial_to_slp(const SparsePoly &poly) {
  SlpBuilder b(poly.arity());
  if (poly.is_zero())
    return b.finish(b.zero());
  std::optional<std::uint32_t> acc;
  for (const auto &[exp, coeff] : poly.terms()) {
    std::optional<std::uint32_t> mono;
    for (std::size_t v = 0; v < exp.size(); ++v) {
      if (exp[v] == 0)
        continue;
      std::uint32_t pw = b.power(v + 1, exp[v]);
      mono = mono ? b.emit(Op::Mul, *mono, pw) : pw;
    }
    mpz_class mag = abs(coeff);
    std::uint32_t term;
    if (!mono)
      term = b.constant(mag);
    else if (mag == 1)
      term = *mono;
    else
      term = b.emit(Op::Mul, b.constant(mag), *mono);
    if (!acc)
      acc = coeff < 0 ? b.emit(Op::Sub, b.zero(), term) : term;
    else
      acc = b.emit(coeff < 0 ? Op::Sub : Op::Add, *acc, term);
  }
  return b.finish(*acc);
}

// --- Builtins -----------------------------------------------------------------

namespace {

Slp one_program(std::size_t arity) {
  return make_slp_unchecked(arity, {{Op::Mul, 0, 0}});
}

Node compute(NodeId id, std::vector<Assignment> assignments, NodeId next) {
  return {id, ComputeNode{std::move(assignments), next}};
}

Node branch(NodeId id, Slp test, NodeId yes, NodeId no) {
  return {id, BranchNode{std::move(test), yes, no}};
}

}  // namespace

Machine membership_machine(unsigned m) {
  if (m < 1 || m > (1u << 16))
    throw Error(Errc::ParamOutOfRange, "membership needs 1 <= m <= 65536");
  // r0 = x, r1 = counter, r2 = 0 (accept value), r3 = reject flag.
  constexpr std::size_t R = 4;
  MachineDescription d;
  d.name = "membership(" + std::to_string(m) + ")";
  d.input_arity = 1;
  d.registers = R;
  d.start = 1;
  const NodeId accept = 2 * NodeId{m} + 1;
  const NodeId reject = accept + 1;
  Slp increment = make_slp_unchecked(R, {{Op::Add, 2, 0}});
  Slp test = make_slp_unchecked(R, {{Op::Sub, 1, 2}});
  for (unsigned i = 0; i < m; ++i) {
    NodeId c = 2 * NodeId{i} + 1;
    d.nodes.push_back(compute(c, {{1, increment}}, c + 1));
    d.nodes.push_back(branch(c + 1, test, accept, i + 1 < m ? c + 2 : reject));
  }
  d.nodes.push_back({accept, OutputNode{2}});
  d.nodes.push_back(compute(reject, {{3, one_program(R)}}, reject + 1));
  d.nodes.push_back({reject + 1, OutputNode{3}});
  return validate_machine(std::move(d));
}

Machine example2_verifier(unsigned bits) {
  if (bits < 1 || bits > 16)
    throw Error(Errc::ParamOutOfRange, "example2 needs 1 <= k <= 16");
  // r0 = x, r1..rk = g_0..g_{k-1}, r_{k+1} = 0, r_{k+2} = reject flag.
  const std::size_t R = bits + 3;
  MachineDescription d;
  d.name = "example2(" + std::to_string(bits) + ")";
  d.input_arity = 1;
  d.guess_arity = bits;
  d.registers = R;
  d.start = 0;

  SlpBuilder sum(R);
  std::uint32_t two = sum.emit(Op::Add, 0, 0);
  std::uint32_t acc = bits + 1;  // g_{k-1} lives at position k + 1
  for (unsigned i = bits - 1; i-- > 0;)
    acc = sum.emit(Op::Add, sum.emit(Op::Mul, acc, two), i + 2);
  sum.emit(Op::Sub, 1, acc);

  const NodeId accept = NodeId{bits} + 2;
  const NodeId reject = accept + 1;
  // x = 0 has the empty decomposition but is not a yes-instance.
  SlpBuilder x(R);
  d.nodes.push_back(branch(0, x.finish(1), reject, 1));
  d.nodes.push_back(branch(1, sum.finish(sum.top()), 2, reject));
  for (unsigned i = 0; i < bits; ++i) {
    SlpBuilder t(R);
    t.emit(Op::Mul, i + 2, t.emit(Op::Sub, i + 2, 0));
    d.nodes.push_back(branch(NodeId{i} + 2, t.finish(t.top()), NodeId{i} + 3, reject));
  }
  d.nodes.push_back({accept, OutputNode{bits + 1}});
  d.nodes.push_back(compute(reject, {{bits + 2, one_program(R)}}, reject + 1));
  d.nodes.push_back({reject + 1, OutputNode{bits + 2}});
  return validate_machine(std::move(d));
}

Machine hn_verifier(const HnSystem &system) {
  check_system(system);
  // r0..r_{n-1} = guess point, r_n = 0, r_{n+1} = reject flag.
  const std::size_t n = system.n;
  const std::size_t R = n + 2;
  MachineDescription d;
  d.name = "hn_verifier";
  d.guess_arity = n;
  d.registers = R;
  d.start = 1;
  const NodeId m = static_cast<NodeId>(system.m());
  const NodeId accept = m + 1;
  const NodeId reject = accept + 1;
  std::vector<std::size_t> mapping(n);
  for (std::size_t i = 0; i < n; ++i)
    mapping[i] = i;
  for (NodeId i = 0; i < m; ++i) {
    Slp test = polynomial_to_slp(system.polys[i].rename(R, mapping));
    d.nodes.push_back(branch(i + 1, std::move(test), i + 2, reject));
  }
  d.nodes.push_back({accept, OutputNode{n}});
  d.nodes.push_back(compute(reject, {{n + 1, one_program(R)}}, reject + 1));
  d.nodes.push_back({reject + 1, OutputNode{n + 1}});
  return validate_machine(std::move(d));
}

Machine builtin_machine(const std::string &name, unsigned param) {
  if (name == "membership")
    return membership_machine(param);
  if (name == "example2")
    return example2_verifier(param);
  throw Error(Errc::ParamOutOfRange, "unknown builtin machine '" + name + "'");
}

}  // namespace tauforge
