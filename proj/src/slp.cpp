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

#include "tauforge/slp.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "tauforge/polynomial.hpp"

namespace tauforge {
namespace {

// Appends `src`'s body to `dst`, mapping src positions through `reloc`
// (which must already cover 0..src.arity()). Returns the relocated output.
std::uint32_t append_relocated(std::vector<Instruction> &dst,
                               std::size_t dst_arity, const Slp &src,
                               std::vector<std::uint32_t> reloc) {
  reloc.resize(src.length() + 1);
  for (std::size_t i = 0; i < src.body().size(); ++i) {
    const Instruction &ins = src.body()[i];
    dst.push_back({ins.op, reloc[ins.left], reloc[ins.right]});
    reloc[src.arity() + 1 + i] =
        static_cast<std::uint32_t>(dst_arity + dst.size());
  }
  return reloc[src.output()];
}

// Makes `out` the last position, copying it with x * 1 when needed.
Slp finish(std::size_t arity, std::vector<Instruction> body, std::uint32_t out) {
  if (out != arity + body.size())
    body.push_back({Op::Mul, out, 0});
  return make_slp_unchecked(arity, std::move(body));
}

}  // namespace

std::string_view op_name(Op op) {
  switch (op) {
  case Op::Add:
    return "add";
  case Op::Sub:
    return "sub";
  case Op::Mul:
    return "mul";
  }
  return "?";
}

Slp validate_slp(std::size_t arity, std::vector<Instruction> body) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    std::size_t pos = arity + 1 + i;
    const Instruction &ins = body[i];
    if (ins.op != Op::Add && ins.op != Op::Sub && ins.op != Op::Mul)
      throw Error(Errc::BadFormat, "unknown opcode at position " +
                                       std::to_string(pos));
    if (ins.left >= pos || ins.right >= pos)
      throw Error(Errc::ForwardReference,
                  "instruction at position " + std::to_string(pos) +
                      " references " +
                      std::to_string(std::max(ins.left, ins.right)));
  }
  return Slp(arity, std::move(body));
}

Slp make_slp_unchecked(std::size_t arity, std::vector<Instruction> body) {
  return Slp(arity, std::move(body));
}

mpz_class evaluate(const Slp &program, std::span<const mpz_class> vars) {
  return evaluate<mpz_class>(program, vars, mpz_class(1));
}

mpq_class evaluate(const Slp &program, std::span<const mpq_class> vars) {
  return evaluate<mpq_class>(program, vars, mpq_class(1));
}

std::uint64_t evaluate_mod(const Slp &program,
                           std::span<const std::uint64_t> vars,
                           std::uint64_t prime) {
  if (vars.size() != program.arity())
    throw Error(Errc::ArityMismatch, "point length differs from arity");
  std::vector<std::uint64_t> v;
  v.reserve(program.length() + 1);
  v.push_back(1 % prime);
  for (auto x : vars)
    v.push_back(x % prime);
  for (const Instruction &ins : program.body()) {
    std::uint64_t a = v[ins.left], b = v[ins.right];
    switch (ins.op) {
    case Op::Add:
      v.push_back(add_mod(a, b, prime));
      break;
    case Op::Sub:
      v.push_back(sub_mod(a, b, prime));
      break;
    case Op::Mul:
      v.push_back(mul_mod(a, b, prime));
      break;
    }
  }
  return v.back();
}

RingPoint RingPoint::integers(std::vector<mpz_class> coords) {
  RingPoint p;
  p.data_ = std::move(coords);
  return p;
}

RingPoint RingPoint::rationals(std::vector<mpq_class> coords) {
  RingPoint p;
  p.data_ = std::move(coords);
  return p;
}

RingPoint RingPoint::mod_p(std::uint64_t prime, std::vector<std::uint64_t> coords) {
  if (prime == 2 || !is_prime_u64(prime))
    throw Error(Errc::BadFormat, std::to_string(prime) + " is not an odd prime");
  for (auto &c : coords)
    c %= prime;
  RingPoint p;
  p.data_ = ModP{prime, std::move(coords)};
  return p;
}

std::size_t RingPoint::size() const {
  return std::visit(
      [](const auto &d) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, ModP>)
          return d.coords.size();
        else
          return d.size();
      },
      data_);
}

RingElement eval(const Slp &program, const RingPoint &point) {
  return std::visit(
      [&](const auto &d) -> RingElement {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, RingPoint::ModP>)
          return ModValue{evaluate_mod(program, d.coords, d.prime), d.prime};
        else
          return evaluate(program, std::span(d));
      },
      point.storage());
}

SparsePoly expand_to_polynomial(const Slp &program, std::size_t term_cap) {
  if (term_cap == 0)
    throw Error(Errc::TermCapExceeded, "term cap must be positive");
  std::size_t n = program.arity();
  std::vector<SparsePoly> lines;
  lines.reserve(program.length() + 1);
  lines.push_back(SparsePoly::constant(n, 1));
  for (std::size_t i = 0; i < n; ++i)
    lines.push_back(SparsePoly::variable(n, i));
  for (std::size_t i = 0; i < program.body().size(); ++i) {
    const Instruction &ins = program.body()[i];
    const SparsePoly &a = lines[ins.left];
    const SparsePoly &b = lines[ins.right];
    switch (ins.op) {
    case Op::Add:
      lines.push_back(a + b);
      break;
    case Op::Sub:
      lines.push_back(a - b);
      break;
    case Op::Mul:
      lines.push_back(a * b);
      break;
    }
    if (lines.back().term_count() > term_cap)
      throw Error(Errc::TermCapExceeded,
                  "line " + std::to_string(n + 1 + i) + " has " +
                      std::to_string(lines.back().term_count()) +
                      " terms, cap is " + std::to_string(term_cap));
  }
  return std::move(lines.back());
}

Slp compose(const Slp &outer, std::span<const Slp> inners) {
  if (inners.size() != outer.arity())
    throw Error(Errc::ArityMismatch,
                "outer arity " + std::to_string(outer.arity()) + " but " +
                    std::to_string(inners.size()) + " inner programs");
  std::size_t arity = inners.empty() ? 0 : inners.front().arity();
  for (const Slp &inner : inners)
    if (inner.arity() != arity)
      throw Error(Errc::ArityMismatch, "inner programs differ in arity");

  std::vector<std::uint32_t> identity(arity + 1);
  for (std::size_t i = 0; i <= arity; ++i)
    identity[i] = static_cast<std::uint32_t>(i);

  std::vector<Instruction> body;
  std::vector<std::uint32_t> outer_reloc{0};
  for (const Slp &inner : inners)
    outer_reloc.push_back(append_relocated(body, arity, inner, identity));
  std::uint32_t out = append_relocated(body, arity, outer, outer_reloc);
  return finish(arity, std::move(body), out);
}

Slp product(std::span<const Slp> factors) {
  if (factors.empty())
    throw Error(Errc::EmptyList, "product of no factors");
  std::size_t arity = factors.front().arity();
  for (const Slp &f : factors)
    if (f.arity() != arity)
      throw Error(Errc::ArityMismatch, "factors differ in arity");
  if (factors.size() == 1)
    return factors.front();

  std::vector<std::uint32_t> identity(arity + 1);
  for (std::size_t i = 0; i <= arity; ++i)
    identity[i] = static_cast<std::uint32_t>(i);
  std::vector<Instruction> body;
  std::vector<std::uint32_t> outs;
  for (const Slp &f : factors)
    outs.push_back(append_relocated(body, arity, f, identity));
  std::uint32_t acc = outs[0];
  for (std::size_t i = 1; i < outs.size(); ++i) {
    body.push_back({Op::Mul, acc, outs[i]});
    acc = static_cast<std::uint32_t>(arity + body.size());
  }
  return make_slp_unchecked(arity, std::move(body));
}

Slp prune_dead_lines(const Slp &program) {
  std::size_t n = program.arity();
  const auto &body = program.body();
  std::vector<char> live(program.length() + 1, 0);
  live[program.output()] = 1;
  for (std::size_t i = body.size(); i-- > 0;) {
    if (!live[n + 1 + i])
      continue;
    live[body[i].left] = 1;
    live[body[i].right] = 1;
  }
  std::vector<std::uint32_t> reloc(program.length() + 1);
  for (std::size_t i = 0; i <= n; ++i)
    reloc[i] = static_cast<std::uint32_t>(i);
  std::vector<Instruction> out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (!live[n + 1 + i])
      continue;
    out.push_back({body[i].op, reloc[body[i].left], reloc[body[i].right]});
    reloc[n + 1 + i] = static_cast<std::uint32_t>(n + out.size());
  }
  return make_slp_unchecked(n, std::move(out));
}

Slp slice(const Slp &program, std::size_t pos) {
  if (pos > program.length())
    throw Error(Errc::ForwardReference, "slice position past the end");
  std::vector<Instruction> body(program.body().begin(),
                                program.body().begin() +
                                    (pos > program.arity() ? pos - program.arity() : 0));
  return prune_dead_lines(
      finish(program.arity(), std::move(body), static_cast<std::uint32_t>(pos)));
}

Slp product_of_positions(const Slp &base, std::span<const std::size_t> positions) {
  std::size_t n = base.arity();
  std::vector<Instruction> body = base.body();
  if (positions.empty()) {
    body.push_back({Op::Mul, 0, 0});
    return prune_dead_lines(make_slp_unchecked(n, std::move(body)));
  }
  for (std::size_t p : positions)
    if (p > base.length())
      throw Error(Errc::ForwardReference, "product position past the end");
  if (positions.size() == 1)
    return slice(base, positions[0]);
  auto acc = static_cast<std::uint32_t>(positions[0]);
  for (std::size_t i = 1; i < positions.size(); ++i) {
    body.push_back({Op::Mul, acc, static_cast<std::uint32_t>(positions[i])});
    acc = static_cast<std::uint32_t>(n + body.size());
  }
  return prune_dead_lines(finish(n, std::move(body), acc));
}

Slp integer_constant(std::size_t arity, const mpz_class &value) {
  std::vector<Instruction> body;
  auto top = [&] { return static_cast<std::uint32_t>(arity + body.size()); };
  mpz_class mag = abs(value);
  if (mag == 0) {
    body.push_back({Op::Sub, 0, 0});
    return make_slp_unchecked(arity, std::move(body));
  }
  // Binary expansion, most significant bit first: acc = 2 * acc (+ 1).
  std::string bits = mag.get_str(2);
  std::uint32_t acc = 0;
  for (std::size_t i = 1; i < bits.size(); ++i) {
    body.push_back({Op::Add, acc, acc});
    acc = top();
    if (bits[i] == '1') {
      body.push_back({Op::Add, acc, 0});
      acc = top();
    }
  }
  if (value < 0) {
    body.push_back({Op::Sub, 0, 0});
    std::uint32_t zero = top();
    body.push_back({Op::Sub, zero, acc});
    acc = top();
  }
  return finish(arity, std::move(body), acc);
}

Slp variable(std::size_t arity, std::size_t var) {
  if (var >= arity)
    throw Error(Errc::ArityMismatch, "variable index out of range");
  return finish(arity, {}, static_cast<std::uint32_t>(var + 1));
}

std::string format_slp(const Slp &program) {
  std::ostringstream os;
  os << "arity " << program.arity() << "\n";
  std::size_t pos = program.arity() + 1;
  for (const Instruction &ins : program.body())
    os << "%" << pos++ << " = " << op_name(ins.op) << " %" << ins.left << " %"
       << ins.right << "\n";
  return os.str();
}

namespace {

[[noreturn]] void syntax(std::size_t line, const std::string &what) {
  throw Error(Errc::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

bool parse_number(std::string_view tok, std::size_t &out) {
  if (tok.empty())
    return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

bool parse_ref(std::string_view tok, std::size_t &out) {
  return tok.size() > 1 && tok[0] == '%' && parse_number(tok.substr(1), out);
}

}  // namespace

Slp parse_slp(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty())
      lines.push_back(cur);
  }
  auto tokens = [](const std::string &line) {
    std::istringstream is(line);
    std::vector<std::string> t;
    for (std::string w; is >> w;)
      t.push_back(w);
    return t;
  };

  std::size_t lineno = 0;
  std::size_t arity = 0;
  bool have_header = false;
  std::vector<Instruction> body;
  for (const std::string &line : lines) {
    ++lineno;
    auto t = tokens(line);
    if (t.empty())
      continue;
    if (!have_header) {
      if (t.size() != 2 || t[0] != "arity" || !parse_number(t[1], arity))
        syntax(lineno, "expected 'arity <n>'");
      have_header = true;
      continue;
    }
    std::size_t pos, a, b;
    if (t.size() != 5 || !parse_ref(t[0], pos) || t[1] != "=" ||
        !parse_ref(t[3], a) || !parse_ref(t[4], b))
      syntax(lineno, "expected '%<pos> = <op> %<i> %<j>'");
    if (pos != arity + 1 + body.size())
      syntax(lineno, "expected position %" +
                         std::to_string(arity + 1 + body.size()));
    Op op;
    if (t[2] == "add")
      op = Op::Add;
    else if (t[2] == "sub")
      op = Op::Sub;
    else if (t[2] == "mul")
      op = Op::Mul;
    else
      syntax(lineno, "unknown operation '" + t[2] + "'");
    if (a >= pos || b >= pos)
      throw Error(Errc::ForwardReference,
                  "line " + std::to_string(lineno) + ": %" + std::to_string(pos) +
                      " references a later position");
    body.push_back({op, static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
  }
  if (!have_header)
    syntax(lineno == 0 ? 1 : lineno, "missing 'arity' header");
  return validate_slp(arity, std::move(body));
}

}  // namespace tauforge

namespace tauforge {

std::uint32_t SlpBuilder::emit(Op op, std::size_t left, std::size_t right) {
  if (left > top() || right > top())
    throw Error(Errc::ForwardReference, "builder operand past the end");
  body_.push_back({op, static_cast<std::uint32_t>(left), static_cast<std::uint32_t>(right)});
  return static_cast<std::uint32_t>(top());
}

std::uint32_t SlpBuilder::inline_program(const Slp &program,
                                         std::span<const std::size_t> vars) {
  if (vars.size() != program.arity())
    throw Error(Errc::ArityMismatch, "inline_program variable map");
  std::vector<std::uint32_t> reloc(program.length() + 1);
  reloc[0] = 0;
  for (std::size_t i = 0; i < vars.size(); ++i)
    reloc[i + 1] = static_cast<std::uint32_t>(vars[i]);
  for (std::size_t i = 0; i < program.body().size(); ++i) {
    const Instruction &ins = program.body()[i];
    reloc[program.arity() + 1 + i] = emit(ins.op, reloc[ins.left], reloc[ins.right]);
  }
  return reloc[program.output()];
}

std::uint32_t SlpBuilder::constant(const mpz_class &value) {
  if (value == 0)
    return zero();
  mpz_class mag = abs(value);
  std::string bits = mag.get_str(2);
  std::uint32_t acc = 0;
  for (std::size_t i = 1; i < bits.size(); ++i) {
    acc = emit(Op::Add, acc, acc);
    if (bits[i] == '1')
      acc = emit(Op::Add, acc, 0);
  }
  if (value < 0)
    acc = emit(Op::Sub, zero(), acc);
  return acc;
}

std::uint32_t SlpBuilder::power(std::size_t pos, std::uint64_t exponent) {
  if (exponent == 0)
    return 0;
  std::optional<std::uint32_t> acc;
  auto base = static_cast<std::uint32_t>(pos);
  for (int bit = 63; bit >= 0; --bit) {
    if (acc)
      acc = emit(Op::Mul, *acc, *acc);
    if ((exponent >> bit) & 1)
      acc = acc ? emit(Op::Mul, *acc, base) : base;
  }
  return *acc;
}

std::uint32_t SlpBuilder::zero() {
  if (!zero_)
    zero_ = emit(Op::Sub, 0, 0);
  return *zero_;
}

Slp SlpBuilder::finish(std::size_t pos) const {
  if (pos > top())
    throw Error(Errc::ForwardReference, "finish position past the end");
  std::vector<Instruction> body = body_;
  if (pos != top())
    body.push_back({Op::Mul, static_cast<std::uint32_t>(pos), 0});
  return make_slp_unchecked(arity_, std::move(body));
}

}  // namespace tauforge
