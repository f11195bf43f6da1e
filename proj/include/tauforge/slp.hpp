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

#ifndef TAUFORGE_SLP_HPP
#define TAUFORGE_SLP_HPP

#include <compare>
#include <optional>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "tauforge/error.hpp"
#include "tauforge/modular.hpp"

namespace tauforge {

class SparsePoly;

/// Declaration order is the lexicographic order used for tie-breaking
/// between programs of equal length.
enum class Op : std::uint8_t { Add, Sub, Mul };

std::string_view op_name(Op op);

struct Instruction {
  Op op;
  std::uint32_t left;
  std::uint32_t right;

  friend auto operator<=>(const Instruction &, const Instruction &) = default;
};

/// A straight-line program over variables x_1..x_n with the single constant 1.
///
/// Positions are implicit: 0 is the constant 1, 1..n are the variables, and
/// instruction i of the body lives at position n + 1 + i. The program
/// computes the value of its last position, `length()`. A bare program
/// (empty body) therefore computes x_n, or 1 when n = 0.
///
/// Instances are immutable and always well-formed; the only ways to obtain
/// one are `validate_slp`, `parse_slp` and the combinators below.
class Slp {
 public:
  /// The bare program of arity 0, computing 1.
  Slp() = default;

  std::size_t arity() const noexcept { return arity_; }
  const std::vector<Instruction> &body() const noexcept { return body_; }

  /// n + number of instructions: the index of the last line, an upper bound
  /// on the complexity of the computed polynomial.
  std::size_t length() const noexcept { return arity_ + body_.size(); }
  std::size_t output() const noexcept { return length(); }

  friend auto operator<=>(const Slp &, const Slp &) = default;
  friend bool operator==(const Slp &, const Slp &) = default;

 private:
  Slp(std::size_t arity, std::vector<Instruction> body)
      : arity_(arity), body_(std::move(body)) {}

  friend Slp validate_slp(std::size_t, std::vector<Instruction>);
  friend Slp make_slp_unchecked(std::size_t, std::vector<Instruction>);

  std::size_t arity_ = 0;
  std::vector<Instruction> body_;
};

/// Checks every Slp invariant; throws ForwardReference on the first operand
/// that does not strictly precede its instruction.
Slp validate_slp(std::size_t arity, std::vector<Instruction> body);

/// For hot loops that build programs known to be valid (enumeration).
Slp make_slp_unchecked(std::size_t arity, std::vector<Instruction> body);

// --- Evaluation ----------------------------------------------------------

/// Values of every position 0..length(), given the variable values.
template <class T>
std::vector<T> evaluate_lines(const Slp &program, std::span<const T> vars,
                              const T &one) {
  if (vars.size() != program.arity())
    throw Error(Errc::ArityMismatch, "point has " +
                                         std::to_string(vars.size()) +
                                         " coordinates, program arity is " +
                                         std::to_string(program.arity()));
  std::vector<T> v;
  v.reserve(program.length() + 1);
  v.push_back(one);
  v.insert(v.end(), vars.begin(), vars.end());
  for (const Instruction &ins : program.body()) {
    const T &a = v[ins.left];
    const T &b = v[ins.right];
    switch (ins.op) {
    case Op::Add:
      v.push_back(a + b);
      break;
    case Op::Sub:
      v.push_back(a - b);
      break;
    case Op::Mul:
      v.push_back(a * b);
      break;
    }
  }
  return v;
}

template <class T>
T evaluate(const Slp &program, std::span<const T> vars, const T &one) {
  return evaluate_lines(program, vars, one).back();
}

mpz_class evaluate(const Slp &program, std::span<const mpz_class> vars);
mpq_class evaluate(const Slp &program, std::span<const mpq_class> vars);
std::uint64_t evaluate_mod(const Slp &program,
                           std::span<const std::uint64_t> vars,
                           std::uint64_t prime);

/// An evaluation context: the ring and the coordinates in it.
class RingPoint {
 public:
  struct ModP {
    std::uint64_t prime;
    std::vector<std::uint64_t> coords;
  };

  static RingPoint integers(std::vector<mpz_class> coords);
  static RingPoint rationals(std::vector<mpq_class> coords);
  /// Throws BadFormat unless `prime` is an odd prime; reduces coordinates.
  static RingPoint mod_p(std::uint64_t prime, std::vector<std::uint64_t> coords);

  std::size_t size() const;
  const auto &storage() const { return data_; }

 private:
  std::variant<std::vector<mpz_class>, std::vector<mpq_class>, ModP> data_;
};

struct ModValue {
  std::uint64_t value;
  std::uint64_t prime;
  friend bool operator==(const ModValue &, const ModValue &) = default;
};

using RingElement = std::variant<mpz_class, mpq_class, ModValue>;

RingElement eval(const Slp &program, const RingPoint &point);

// --- Algebra --------------------------------------------------------------

/// Exact expansion; throws TermCapExceeded naming the first line whose
/// expansion has more than `term_cap` monomials.
SparsePoly expand_to_polynomial(const Slp &program, std::size_t term_cap);

/// outer(inner_1, ..., inner_k) over the inners' shared arity. Bodies are
/// concatenated with index relocation; no sharing between inners.
Slp compose(const Slp &outer, std::span<const Slp> inners);

/// Product of factors sharing one arity: concatenated bodies followed by
/// count - 1 MUL lines.
Slp product(std::span<const Slp> factors);

/// Product of selected positions of `base`, with lines not needed by the
/// result removed. An empty selection yields the constant 1.
Slp product_of_positions(const Slp &base, std::span<const std::size_t> positions);

/// The program computing position `pos` of `program`, dead lines removed.
Slp slice(const Slp &program, std::size_t pos);

/// Drops instructions that do not contribute to the output.
Slp prune_dead_lines(const Slp &program);

/// 1 + 1 + ... built by doubling; negative values as 0 - |c|.
Slp integer_constant(std::size_t arity, const mpz_class &value);

/// The bare program of the given arity with output x_{var + 1}.
Slp variable(std::size_t arity, std::size_t var);

/// Incremental construction of a program over a fixed arity. Positions
/// returned by the emit helpers can be used as operands right away.
class SlpBuilder {
 public:
  explicit SlpBuilder(std::size_t arity) : arity_(arity) {}

  std::size_t arity() const noexcept { return arity_; }
  std::size_t top() const noexcept { return arity_ + body_.size(); }
  const std::vector<Instruction> &body() const noexcept { return body_; }

  std::uint32_t emit(Op op, std::size_t left, std::size_t right);
  /// Appends `program` (same arity) with its variables read from `vars`
  /// (x_{i+1} -> vars[i]); returns the position of its output.
  std::uint32_t inline_program(const Slp &program, std::span<const std::size_t> vars);
  std::uint32_t constant(const mpz_class &value);
  std::uint32_t power(std::size_t pos, std::uint64_t exponent);
  /// Lazily emitted 1 - 1.
  std::uint32_t zero();

  /// The program whose output is `pos` (copied to the end when needed).
  Slp finish(std::size_t pos) const;

 private:
  std::size_t arity_;
  std::vector<Instruction> body_;
  std::optional<std::uint32_t> zero_;
};

// --- Text format ----------------------------------------------------------

/// "arity <n>" then one "%<pos> = <op> %<i> %<j>" line per instruction.
std::string format_slp(const Slp &program);

/// Inverse of format_slp. Errors carry the 1-based line number.
Slp parse_slp(std::string_view text);

}  // namespace tauforge

#endif  // TAUFORGE_SLP_HPP
