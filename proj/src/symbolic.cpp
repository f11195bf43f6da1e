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

#include "tauforge/symbolic.hpp"

#include <algorithm>
#include <set>

#include "tauforge/polynomial.hpp"

namespace tauforge {

void check_component(const ComponentSpec &c) {
  auto bad = [&](const std::string &what) {
    throw Error(Errc::BadComponent, "component '" + c.name + "': " + what);
  };
  if (c.psi.size() != c.ambient_size)
    bad("psi has " + std::to_string(c.psi.size()) + " coordinates, ambient size is " +
        std::to_string(c.ambient_size));
  for (const Slp &p : c.psi)
    if (p.arity() != c.parameter_arity)
      bad("psi coordinate of arity " + std::to_string(p.arity()) +
          ", parameter arity is " + std::to_string(c.parameter_arity));
  for (const auto *list : {&c.yes_samples, &c.no_samples})
    for (const auto &pt : *list)
      if (pt.size() != c.ambient_size)
        bad("sample of length " + std::to_string(pt.size()));
  std::set<std::vector<mpq_class>> yes(c.yes_samples.begin(), c.yes_samples.end());
  for (const auto &pt : c.no_samples)
    if (yes.contains(pt))
      bad("a sample is labeled both yes and no");
}

ComponentSpec full_space_component(std::string name, std::size_t s) {
  ComponentSpec c;
  c.name = std::move(name);
  c.ambient_size = s;
  c.parameter_arity = s;
  for (std::size_t i = 0; i < s; ++i)
    c.psi.push_back(variable(s, i));
  return c;
}

mpq_class CanonicalTrace::evaluate_f(std::span<const mpq_class> point) const {
  return f ? evaluate(*f, point) : mpq_class(1);
}

namespace {

// A program under construction whose every line also carries its residues
// under a fixed basis, so zero tests cost nothing extra.
class ResidueArena {
 public:
  explicit ResidueArena(const EvalBasis &basis) : basis_(basis), builder_(basis.arity) {
    const std::size_t k = basis.size();
    res_.resize((basis.arity + 1) * k);
    for (std::size_t j = 0; j < k; ++j) {
      res_[j] = 1;
      for (std::size_t v = 0; v < basis.arity; ++v)
        res_[(v + 1) * k + j] = basis.points[j][v];
    }
  }

  std::uint32_t emit(Op op, std::size_t a, std::size_t b) {
    const std::size_t k = basis_.size();
    std::uint32_t pos = builder_.emit(op, a, b);
    res_.resize(res_.size() + k);
    for (std::size_t j = 0; j < k; ++j) {
      std::uint64_t p = basis_.primes[j], x = res_[a * k + j], y = res_[b * k + j];
      res_[pos * k + j] = op == Op::Add   ? add_mod(x, y, p)
                          : op == Op::Sub ? sub_mod(x, y, p)
                                          : mul_mod(x, y, p);
    }
    return pos;
  }

  bool fingerprint_zero(std::size_t pos) const {
    const std::size_t k = basis_.size();
    return std::all_of(res_.begin() + pos * k, res_.begin() + (pos + 1) * k,
                       [](std::uint64_t r) { return r == 0; });
  }

  const SlpBuilder &builder() const { return builder_; }

 private:
  const EvalBasis &basis_;
  SlpBuilder builder_;
  std::vector<std::uint64_t> res_;
};

// Register values live twice: over the data variables (for f) and over the
// component parameters (for zero tests). Every operation is mirrored.
struct Value {
  std::uint32_t data;
  std::uint32_t param;
};

class DualArena {
 public:
  DualArena(std::size_t data_arity, const EvalBasis &basis)
      : data_(data_arity), param_(basis) {}

  Value emit(Op op, Value a, Value b) {
    ++ops_;
    return {data_.emit(op, a.data, b.data), param_.emit(op, a.param, b.param)};
  }

  Value zero() {
    if (!zero_)
      zero_ = emit(Op::Sub, {0, 0}, {0, 0});
    return *zero_;
  }

  // The param side must also be able to host psi before any register
  // exists; psi lines are not machine work and are not counted.
  std::uint32_t emit_param(Op op, std::size_t a, std::size_t b) {
    return param_.emit(op, a, b);
  }

  Value inline_program(const Slp &program, std::span<const Value> vars) {
    std::vector<Value> at;
    at.reserve(program.length() + 1);
    at.push_back({0, 0});
    at.insert(at.end(), vars.begin(), vars.end());
    for (const Instruction &ins : program.body())
      at.push_back(emit(ins.op, at[ins.left], at[ins.right]));
    return at.back();
  }

  SlpBuilder &data() { return data_; }
  ResidueArena &param() { return param_; }
  std::size_t ops() const { return ops_; }

 private:
  SlpBuilder data_;
  ResidueArena param_;
  std::optional<Value> zero_;
  std::size_t ops_ = 0;
};

}  // namespace

CanonicalTrace run_symbolic(const Machine &machine, const ComponentSpec &component,
                            std::size_t step_cap, const SymbolicOptions &options) {
  check_component(component);
  const std::size_t s = machine.data_arity();
  if (component.ambient_size != s)
    throw Error(Errc::ArityMismatch, "component lives in C^" +
                                         std::to_string(component.ambient_size) +
                                         " but the machine reads " + std::to_string(s) +
                                         " values");
  const std::size_t t = component.parameter_arity;
  EvalBasis basis = EvalBasis::random(options.seed, t, options.fingerprint_pairs);
  DualArena arena(s, basis);

  // psi coordinates on the parameter side.
  std::vector<Value> regs(machine.registers());
  for (std::size_t i = 0; i < s; ++i) {
    const Slp &p = component.psi[i];
    std::vector<std::uint32_t> at(p.length() + 1);
    for (std::size_t v = 0; v <= t; ++v)
      at[v] = static_cast<std::uint32_t>(v);
    for (std::size_t k = 0; k < p.body().size(); ++k) {
      const Instruction &ins = p.body()[k];
      at[t + 1 + k] = arena.emit_param(ins.op, at[ins.left], at[ins.right]);
    }
    regs[i] = {static_cast<std::uint32_t>(i + 1), at.back()};
  }
  for (std::size_t j = s; j < regs.size(); ++j)
    regs[j] = arena.zero();

  CanonicalTrace trace;
  struct PendingTest {
    NodeId node;
    std::size_t pos;
    bool trivial;
  };
  std::vector<PendingTest> tests;
  std::vector<std::size_t> nontrivial;
  std::size_t branches = 0;
  NodeId at = machine.start();
  for (;;) {
    if (trace.path.size() == step_cap)
      throw Error(Errc::StepCapExceeded, "symbolic run exceeds " +
                                             std::to_string(step_cap) + " steps");
    trace.path.push_back(at);
    const Node &node = machine.node(at);
    if (std::holds_alternative<OutputNode>(node.kind))
      break;
    if (const auto *c = std::get_if<ComputeNode>(&node.kind)) {
      std::vector<Value> next = regs;
      for (const Assignment &a : c->assignments)
        next[a.reg] = arena.inline_program(a.value, regs);
      regs = std::move(next);
      at = c->next;
      continue;
    }
    const auto &b = std::get<BranchNode>(node.kind);
    ++branches;
    Value test = arena.inline_program(b.test, regs);
    bool trivial = arena.param().fingerprint_zero(test.param);
    if (trivial) {
      Slp composed = slice(arena.param().builder().finish(arena.param().builder().top()),
                           test.param);
      try {
        trivial = expand_to_polynomial(composed, options.term_cap).is_zero();
      } catch (const Error &e) {
        if (e.code() != Errc::TermCapExceeded)
          throw;
        if (options.strict)
          throw Error(Errc::ZeroTestInconclusive,
                      "test at node " + std::to_string(at) +
                          " passes the fingerprint but does not expand within " +
                          std::to_string(options.term_cap) + " terms");
      }
    }
    tests.push_back({at, test.data, trivial});
    if (!trivial)
      nontrivial.push_back(test.data);
    at = trivial ? b.yes : b.no;
  }

  const Slp all = arena.data().finish(arena.data().top());
  for (const auto &[node, pos, trivial] : tests)
    trace.branch_records.push_back({node, slice(all, pos), trivial});
  if (!nontrivial.empty())
    trace.f = product_of_positions(all, nontrivial);
  trace.symbolic_steps = arena.ops() + branches;
  return trace;
}

}  // namespace tauforge
