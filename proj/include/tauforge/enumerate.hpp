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

#ifndef TAUFORGE_ENUMERATE_HPP
#define TAUFORGE_ENUMERATE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tauforge/error.hpp"
#include "tauforge/fingerprint.hpp"
#include "tauforge/modular.hpp"
#include "tauforge/slp.hpp"

namespace tauforge {

inline constexpr std::size_t kDefaultLengthCap = 8;

/// A program produced by the enumerator. The spans point into enumerator
/// state and are valid only during the visitor call.
struct ProgramView {
  std::size_t arity;
  std::span<const Instruction> body;
  /// Output residues, one per pair of the enumerator's EvalBasis.
  std::span<const std::uint64_t> residues;

  Slp to_slp() const {
    return make_slp_unchecked(arity, {body.begin(), body.end()});
  }
};

/// Enumerates canonical straight-line programs of one exact length.
///
/// Canonical means: ADD and MUL operands are ordered left <= right, SUB keeps
/// both orders, and every instruction except the last is used by a later
/// one (a dead line means a shorter program computes the same thing).
/// Programs are visited in lexicographic order of their encoding
/// (op, left, right) per instruction.
///
/// The space is split into chunks by the first instruction so that workers
/// can take disjoint chunks; chunk order is lexicographic too.
class CanonicalEnumerator {
 public:
  CanonicalEnumerator(std::size_t arity, std::size_t length, EvalBasis basis,
                      std::size_t hard_cap = kDefaultLengthCap)
      : arity_(arity), length_(length), basis_(std::move(basis)) {
    if (length > hard_cap)
      throw Error(Errc::CapExceeded, "length " + std::to_string(length) +
                                         " exceeds the cap of " +
                                         std::to_string(hard_cap));
    if (basis_.arity != arity)
      throw Error(Errc::ArityMismatch, "evaluation basis arity");
    if (length < arity)
      return;  // no program is shorter than its variable prefix
    if (length == arity) {
      chunks_.push_back({});
      return;
    }
    std::uint32_t p = static_cast<std::uint32_t>(arity + 1);
    for (Op op : {Op::Add, Op::Sub, Op::Mul})
      for (std::uint32_t l = 0; l < p; ++l)
        for (std::uint32_t r = (op == Op::Sub ? 0 : l); r < p; ++r)
          chunks_.push_back({op, l, r});
  }

  std::size_t arity() const noexcept { return arity_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t chunk_count() const noexcept { return chunks_.size(); }
  const EvalBasis &basis() const noexcept { return basis_; }

  /// Visits every program of one chunk. `visit(const ProgramView&)` returns
  /// true to stop early. Returns the number of programs visited.
  template <class Visit>
  std::uint64_t run_chunk(std::size_t chunk, Visit &&visit) const {
    State st(*this);
    if (length_ == arity_) {
      visit(st.view());
      return 1;
    }
    st.place(arity_ + 1, chunks_.at(chunk));
    std::uint64_t count = 0;
    bool stop = false;
    descend(st, arity_ + 2, visit, count, stop);
    return count;
  }

  template <class Visit> std::uint64_t run_all(Visit &&visit) const {
    std::uint64_t total = 0;
    bool stop = false;
    for (std::size_t c = 0; c < chunks_.size() && !stop; ++c) {
      total += run_chunk(c, [&](const ProgramView &v) {
        stop = visit(v);
        return stop;
      });
    }
    return total;
  }

 private:
  struct State {
    const CanonicalEnumerator &e;
    std::size_t k;
    std::vector<Instruction> body;
    std::vector<std::uint64_t> vals;  // (position, pair) -> residue
    std::vector<std::uint32_t> uses;
    std::size_t unused = 0;  // instruction lines not yet referenced

    explicit State(const CanonicalEnumerator &en)
        : e(en), k(en.basis_.size()),
          body(en.length_ > en.arity_ ? en.length_ - en.arity_ : 0),
          vals((en.length_ + 1) * k), uses(en.length_ + 1, 0) {
      for (std::size_t j = 0; j < k; ++j) {
        std::uint64_t p = e.basis_.primes[j];
        vals[j] = 1 % p;
        for (std::size_t v = 0; v < e.arity_; ++v)
          vals[(v + 1) * k + j] = e.basis_.points[j][v] % p;
      }
    }

    bool is_line(std::uint32_t pos) const { return pos > e.arity_; }

    void place(std::size_t pos, Instruction ins) {
      body[pos - e.arity_ - 1] = ins;
      const std::uint64_t *a = &vals[ins.left * k];
      const std::uint64_t *b = &vals[ins.right * k];
      std::uint64_t *out = &vals[pos * k];
      const std::uint64_t *primes = e.basis_.primes.data();
      switch (ins.op) {
      case Op::Add:
        for (std::size_t j = 0; j < k; ++j)
          out[j] = add_mod(a[j], b[j], primes[j]);
        break;
      case Op::Sub:
        for (std::size_t j = 0; j < k; ++j)
          out[j] = sub_mod(a[j], b[j], primes[j]);
        break;
      case Op::Mul:
        for (std::size_t j = 0; j < k; ++j)
          out[j] = mul_mod(a[j], b[j], primes[j]);
        break;
      }
      use(ins.left);
      if (ins.right != ins.left)
        use(ins.right);
      ++unused;
    }

    void unplace(std::size_t, Instruction ins) {
      --unused;
      unuse(ins.left);
      if (ins.right != ins.left)
        unuse(ins.right);
    }

    void use(std::uint32_t pos) {
      if (uses[pos]++ == 0 && is_line(pos))
        --unused;
    }
    void unuse(std::uint32_t pos) {
      if (--uses[pos] == 0 && is_line(pos))
        ++unused;
    }

    ProgramView view() const {
      return {e.arity_, body, {&vals[e.length_ * k], k}};
    }
  };

  template <class Visit>
  void descend(State &st, std::size_t pos, Visit &visit, std::uint64_t &count,
               bool &stop) const {
    if (pos > length_) {
      if (st.unused == 1) {
        ++count;
        stop = visit(st.view());
      }
      return;
    }
    std::size_t remaining = length_ - pos;
    auto p = static_cast<std::uint32_t>(pos);
    for (Op op : {Op::Add, Op::Sub, Op::Mul}) {
      for (std::uint32_t l = 0; l < p; ++l) {
        for (std::uint32_t r = (op == Op::Sub ? 0 : l); r < p; ++r) {
          Instruction ins{op, l, r};
          st.place(pos, ins);
          if (st.unused <= remaining + 1)
            descend(st, pos + 1, visit, count, stop);
          st.unplace(pos, ins);
          if (stop)
            return;
        }
      }
    }
  }

  std::size_t arity_;
  std::size_t length_;
  EvalBasis basis_;
  std::vector<Instruction> chunks_;
};

/// Visits every canonical program of `length` with its fingerprint under
/// the seed's default basis; returns the number visited.
std::uint64_t enumerate_canonical_slps(
    std::size_t arity, std::size_t length, std::uint64_t seed,
    const std::function<void(const Slp &, const Fingerprint &)> &visitor,
    std::size_t hard_cap = kDefaultLengthCap);

}  // namespace tauforge

#endif  // TAUFORGE_ENUMERATE_HPP
