#include "pcabel/dfao.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "pcabel/error.hpp"

namespace pcabel {

Dfao::Dfao(int base, int num_states, int initial, std::vector<int> delta,
           std::vector<std::int64_t> outputs)
    : base_(base),
      num_states_(num_states),
      initial_(initial),
      delta_(std::move(delta)),
      outputs_(std::move(outputs)) {
  if (base_ < 2) throw InputError("DFAO base must be at least 2");
  if (num_states_ <= 0 || initial_ < 0 || initial_ >= num_states_)
    throw InputError("DFAO needs a valid initial state");
  if (delta_.size() != static_cast<std::size_t>(num_states_) * static_cast<std::size_t>(base_) ||
      outputs_.size() != static_cast<std::size_t>(num_states_))
    throw InputError("DFAO transition table has the wrong shape");
  for (int t : delta_)
    if (t < 0 || t >= num_states_) throw InputError("DFAO transition target out of range");
}

std::vector<std::int64_t> Dfao::output_alphabet() const {
  std::vector<std::int64_t> out(outputs_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::int64_t dfao_output(const Dfao& d, Value n) { return dfao_output_padded(d, n, 0); }

std::int64_t dfao_output_padded(const Dfao& d, Value n, int extra_zeros) {
  int s = d.initial();
  for (int i = 0; i < extra_zeros; ++i) s = d.next(s, 0);
  for (int digit : digits_msd(n, d.base(), digit_length(n, d.base()))) s = d.next(s, digit);
  return d.output(s);
}

Dfao minimize_dfao(const Dfao& d) {
  const int k = d.base();
  // Reachable states only.
  std::vector<int> order{d.initial()};
  std::vector<int> seen(static_cast<std::size_t>(d.num_states()), -1);
  seen[static_cast<std::size_t>(d.initial())] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int digit = 0; digit < k; ++digit) {
      int t = d.next(order[i], digit);
      if (seen[static_cast<std::size_t>(t)] < 0) {
        seen[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  const auto n = order.size();
  std::vector<int> block(n);
  {
    std::map<std::int64_t, int> ids;
    for (std::size_t i = 0; i < n; ++i)
      block[i] = ids.try_emplace(d.output(order[i]), static_cast<int>(ids.size())).first->second;
  }
  for (;;) {
    std::map<std::vector<int>, int> sigs;
    std::vector<int> next_block(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> sig{block[i]};
      for (int digit = 0; digit < k; ++digit)
        sig.push_back(block[static_cast<std::size_t>(seen[static_cast<std::size_t>(d.next(order[i], digit))])]);
      next_block[i] = sigs.try_emplace(std::move(sig), static_cast<int>(sigs.size())).first->second;
    }
    bool stable = sigs.size() == static_cast<std::size_t>(*std::max_element(block.begin(), block.end()) + 1);
    block = std::move(next_block);
    if (stable) break;
  }
  // Canonical BFS numbering.
  int blocks = *std::max_element(block.begin(), block.end()) + 1;
  std::vector<int> rep(static_cast<std::size_t>(blocks), -1);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[static_cast<std::size_t>(block[i])] < 0) rep[static_cast<std::size_t>(block[i])] = static_cast<int>(i);
  std::vector<int> canon(static_cast<std::size_t>(blocks), -1);
  std::vector<int> bfs{block[0]};
  canon[static_cast<std::size_t>(block[0])] = 0;
  std::vector<int> delta;
  std::vector<std::int64_t> outputs;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    int r = rep[static_cast<std::size_t>(bfs[i])];
    outputs.push_back(d.output(order[static_cast<std::size_t>(r)]));
    for (int digit = 0; digit < k; ++digit) {
      int tb = block[static_cast<std::size_t>(seen[static_cast<std::size_t>(d.next(order[static_cast<std::size_t>(r)], digit))])];
      if (canon[static_cast<std::size_t>(tb)] < 0) {
        canon[static_cast<std::size_t>(tb)] = static_cast<int>(bfs.size());
        bfs.push_back(tb);
      }
      delta.push_back(canon[static_cast<std::size_t>(tb)]);
    }
  }
  return Dfao(k, static_cast<int>(bfs.size()), 0, std::move(delta), std::move(outputs));
}

Automaton dfao_equals(const Dfao& d, std::int64_t value, const std::string& track) {
  std::vector<char> acc;
  for (auto o : d.outputs()) acc.push_back(o == value);
  return minimize(Automaton(d.base(), {track}, d.num_states(), d.initial(), d.transitions(), std::move(acc)));
}

Dfao dfao_from_predicates(const std::vector<Automaton>& predicates,
                          const std::function<std::int64_t(const std::vector<bool>&)>& label) {
  if (predicates.empty()) throw InputError("dfao_from_predicates needs at least one predicate");
  const int k = predicates.front().base();
  for (const auto& p : predicates) {
    if (p.base() != k) throw InputError("base mismatch among predicates");
    if (p.track_count() != 1) throw InputError("predicates must have exactly one track");
  }
  struct Hash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
      std::size_t h = 0;
      for (int x : v) h = h * 1000003u + static_cast<std::size_t>(x);
      return h;
    }
  };
  std::unordered_map<std::vector<int>, int, Hash> ids;
  std::vector<std::vector<int>> states;
  std::vector<int> delta;
  auto intern = [&](std::vector<int> s) {
    auto [it, fresh] = ids.try_emplace(s, static_cast<int>(states.size()));
    if (fresh) {
      states.push_back(std::move(s));
      if (states.size() > engine_limits().max_states)
        throw ResourceLimitError("resource limit: DFAO product exceeded the state cap");
    }
    return it->second;
  };
  std::vector<int> start;
  for (const auto& p : predicates) start.push_back(p.initial());
  intern(start);
  for (std::size_t i = 0; i < states.size(); ++i)
    for (int digit = 0; digit < k; ++digit) {
      std::vector<int> t(predicates.size());
      for (std::size_t j = 0; j < predicates.size(); ++j) t[j] = predicates[j].next(states[i][j], digit);
      delta.push_back(intern(std::move(t)));
    }
  std::vector<std::int64_t> outputs;
  for (const auto& s : states) {
    std::vector<bool> bits(predicates.size());
    for (std::size_t j = 0; j < predicates.size(); ++j) bits[j] = predicates[j].is_accepting(s[j]);
    outputs.push_back(label(bits));
  }
  return minimize_dfao(Dfao(k, static_cast<int>(states.size()), 0, std::move(delta), std::move(outputs)));
}

Dfao map_outputs(const Dfao& d, const std::function<std::int64_t(std::int64_t)>& map) {
  std::vector<std::int64_t> outputs;
  for (auto o : d.outputs()) outputs.push_back(map(o));
  return Dfao(d.base(), d.num_states(), d.initial(), d.transitions(), std::move(outputs));
}

}  // namespace pcabel
