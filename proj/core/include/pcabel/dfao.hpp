#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pcabel/automaton.hpp"

namespace pcabel {

// Deterministic finite automaton with output over single base-k digits,
// msd-first. The value at n is the output of the state reached on the digits
// of n; leading zeros do not change it.
class Dfao {
 public:
  Dfao() = default;
  Dfao(int base, int num_states, int initial, std::vector<int> delta,
       std::vector<std::int64_t> outputs);

  int base() const noexcept { return base_; }
  int num_states() const noexcept { return num_states_; }
  int initial() const noexcept { return initial_; }
  int next(int state, int digit) const {
    return delta_[static_cast<std::size_t>(state) * static_cast<std::size_t>(base_) +
                  static_cast<std::size_t>(digit)];
  }
  std::int64_t output(int state) const { return outputs_[static_cast<std::size_t>(state)]; }
  const std::vector<int>& transitions() const noexcept { return delta_; }
  const std::vector<std::int64_t>& outputs() const noexcept { return outputs_; }

  // Distinct output values, sorted.
  std::vector<std::int64_t> output_alphabet() const;

  friend bool operator==(const Dfao&, const Dfao&) = default;

 private:
  int base_ = 2;
  int num_states_ = 0;
  int initial_ = 0;
  std::vector<int> delta_;
  std::vector<std::int64_t> outputs_;
};

std::int64_t dfao_output(const Dfao& d, Value n);
// Same as dfao_output but reads `extra_zeros` leading zeros first.
std::int64_t dfao_output_padded(const Dfao& d, Value n, int extra_zeros);

// Moore refinement seeded by outputs, canonical BFS numbering.
Dfao minimize_dfao(const Dfao& d);

// One-track automaton accepting n iff d(n) == value.
Automaton dfao_equals(const Dfao& d, std::int64_t value, const std::string& track);

// Product of one-track predicates; the output at n is label(membership bits).
Dfao dfao_from_predicates(const std::vector<Automaton>& predicates,
                          const std::function<std::int64_t(const std::vector<bool>&)>& label);

// Relabels outputs through `map` (missing values keep their output).
Dfao map_outputs(const Dfao& d, const std::function<std::int64_t(std::int64_t)>& map);

}  // namespace pcabel
