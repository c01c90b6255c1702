#include "pcabel/automaton.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "pcabel/error.hpp"

namespace pcabel {

EngineLimits& engine_limits() {
  thread_local EngineLimits limits;
  return limits;
}

namespace {

void check_state_budget(std::size_t states, const char* operation) {
  if (states > engine_limits().max_states) {
    std::ostringstream os;
    os << "resource limit: " << operation << " exceeded " << engine_limits().max_states
       << " states";
    throw ResourceLimitError(os.str());
  }
}

void check_base(int base) {
  if (base < 2) throw InputError("automaton base must be at least 2");
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::vector<char> reachable_states(const Automaton& a) {
  std::vector<char> seen(static_cast<std::size_t>(a.num_states()), 0);
  std::vector<int> stack{a.initial()};
  seen[static_cast<std::size_t>(a.initial())] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int sym = 0; sym < a.alphabet_size(); ++sym) {
      int t = a.next(s, sym);
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

// States from which an accepting state is reachable.
std::vector<char> live_states(const Automaton& a) {
  auto n = static_cast<std::size_t>(a.num_states());
  std::vector<std::vector<int>> preds(n);
  for (int s = 0; s < a.num_states(); ++s)
    for (int sym = 0; sym < a.alphabet_size(); ++sym) preds[static_cast<std::size_t>(a.next(s, sym))].push_back(s);
  std::vector<char> live(n, 0);
  std::vector<int> stack;
  for (int s = 0; s < a.num_states(); ++s)
    if (a.is_accepting(s)) {
      live[static_cast<std::size_t>(s)] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int s : preds[static_cast<std::size_t>(t)])
      if (!live[static_cast<std::size_t>(s)]) {
        live[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
      }
  }
  return live;
}

}  // namespace

int symbol_count(int base, int tracks) {
  std::size_t sigma = 1;
  for (int i = 0; i < tracks; ++i) {
    sigma *= static_cast<std::size_t>(base);
    if (sigma > engine_limits().max_alphabet)
      throw ResourceLimitError("resource limit: alphabet of " + std::to_string(tracks) +
                               " base-" + std::to_string(base) + " tracks is too large");
  }
  return static_cast<int>(sigma);
}

int encode_symbol(std::span<const int> digits, int base) {
  int sym = 0;
  for (std::size_t j = digits.size(); j-- > 0;) sym = sym * base + digits[j];
  return sym;
}

std::vector<int> decode_symbol(int symbol, int base, int tracks) {
  std::vector<int> d(static_cast<std::size_t>(tracks));
  for (auto& x : d) {
    x = symbol % base;
    symbol /= base;
  }
  return d;
}

int digit_length(Value v, int base) {
  int len = 0;
  while (v) {
    v /= static_cast<Value>(base);
    ++len;
  }
  return len;
}

std::vector<int> digits_msd(Value v, int base, int length) {
  std::vector<int> d(static_cast<std::size_t>(length), 0);
  for (int i = length - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<Value>(base));
    v /= static_cast<Value>(base);
  }
  if (v) throw InputError("value does not fit in the requested number of digits");
  return d;
}

Automaton::Automaton(int base, std::vector<std::string> tracks, int num_states, int initial,
                     std::vector<int> delta, std::vector<char> accepting)
    : base_(base),
      tracks_(std::move(tracks)),
      num_states_(num_states),
      initial_(initial),
      delta_(std::move(delta)),
      accepting_(std::move(accepting)) {
  check_base(base_);
  sigma_ = symbol_count(base_, static_cast<int>(tracks_.size()));
  std::set<std::string> names(tracks_.begin(), tracks_.end());
  if (names.size() != tracks_.size()) throw InputError("duplicate track name");
  if (num_states_ <= 0 || initial_ < 0 || initial_ >= num_states_)
    throw InputError("automaton needs a valid initial state");
  if (delta_.size() != static_cast<std::size_t>(num_states_) * static_cast<std::size_t>(sigma_) ||
      accepting_.size() != static_cast<std::size_t>(num_states_))
    throw InputError("automaton transition table has the wrong shape");
  for (int t : delta_)
    if (t < 0 || t >= num_states_) throw InputError("transition target out of range");
}

Automaton Automaton::universal(int base, std::vector<std::string> tracks) {
  int sigma = symbol_count(base, static_cast<int>(tracks.size()));
  return Automaton(base, std::move(tracks), 1, 0, std::vector<int>(static_cast<std::size_t>(sigma), 0), {1});
}

Automaton Automaton::empty(int base, std::vector<std::string> tracks) {
  int sigma = symbol_count(base, static_cast<int>(tracks.size()));
  return Automaton(base, std::move(tracks), 1, 0, std::vector<int>(static_cast<std::size_t>(sigma), 0), {0});
}

std::optional<int> Automaton::track_index(std::string_view name) const {
  for (std::size_t i = 0; i < tracks_.size(); ++i)
    if (tracks_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

bool Automaton::accepts(std::span<const Value> tuple) const {
  if (tuple.size() != tracks_.size()) throw InputError("tuple arity does not match track count");
  int len = 0;
  for (Value v : tuple) len = std::max(len, digit_length(v, base_));
  std::vector<std::vector<int>> digits;
  for (Value v : tuple) digits.push_back(digits_msd(v, base_, len));
  int s = initial_;
  std::vector<int> column(tuple.size());
  for (int i = 0; i < len; ++i) {
    for (std::size_t j = 0; j < tuple.size(); ++j) column[j] = digits[j][static_cast<std::size_t>(i)];
    s = next(s, encode_symbol(column, base_));
  }
  return is_accepting(s);
}

bool Automaton::accepts_symbols(std::span<const int> symbols) const {
  int s = initial_;
  for (int sym : symbols) {
    if (sym < 0 || sym >= sigma_) throw InputError("symbol out of range");
    s = next(s, sym);
  }
  return is_accepting(s);
}

Automaton linear_relation(int base, std::vector<std::string> tracks, std::vector<std::int64_t> coeffs,
                          std::int64_t constant, LinearCmp cmp) {
  check_base(base);
  if (coeffs.size() != tracks.size()) throw InputError("one coefficient per track is required");
  const int t = static_cast<int>(tracks.size());
  const int sigma = symbol_count(base, t);
  std::int64_t pos = 0, neg = 0;
  for (auto c : coeffs) (c > 0 ? pos : neg) += c > 0 ? c : -c;
  const std::int64_t hi = std::max(constant, neg);
  const std::int64_t lo = std::min(constant, -pos);
  if (hi - lo > static_cast<std::int64_t>(engine_limits().max_states))
    throw ResourceLimitError("resource limit: linear relation has too many carry states");

  std::vector<std::int64_t> step(static_cast<std::size_t>(sigma), 0);
  for (int sym = 0; sym < sigma; ++sym) {
    auto d = decode_symbol(sym, base, t);
    for (int j = 0; j < t; ++j) step[static_cast<std::size_t>(sym)] += coeffs[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(j)];
  }
  // State ids: 0 = below-range sink, 1 = above-range sink, then r in [lo, hi].
  const int below = 0, above = 1;
  auto id_of = [&](std::int64_t r) {
    if (r < lo) return below;
    if (r > hi) return above;
    return static_cast<int>(r - lo) + 2;
  };
  const int n = static_cast<int>(hi - lo) + 3;
  std::vector<int> delta(static_cast<std::size_t>(n) * static_cast<std::size_t>(sigma));
  std::vector<char> acc(static_cast<std::size_t>(n), 0);
  for (int sym = 0; sym < sigma; ++sym) {
    delta[static_cast<std::size_t>(below) * sigma + sym] = below;
    delta[static_cast<std::size_t>(above) * sigma + sym] = above;
  }
  acc[below] = cmp == LinearCmp::kLt;
  for (std::int64_t r = lo; r <= hi; ++r) {
    int id = id_of(r);
    acc[static_cast<std::size_t>(id)] = cmp == LinearCmp::kEq ? r == constant : r < constant;
    for (int sym = 0; sym < sigma; ++sym)
      delta[static_cast<std::size_t>(id) * sigma + sym] = id_of(base * r + step[static_cast<std::size_t>(sym)]);
  }
  return minimize(Automaton(base, std::move(tracks), n, id_of(0), std::move(delta), std::move(acc)));
}

Automaton builtin_relation(std::string_view name, int base, std::vector<std::string> tracks,
                           std::uint64_t param) {
  auto need = [&](std::size_t arity) {
    if (tracks.size() != arity)
      throw InputError("builtin relation '" + std::string(name) + "' takes " + std::to_string(arity) + " tracks");
  };
  if (name == "eq") {
    need(2);
    return linear_relation(base, tracks, {1, -1}, 0, LinearCmp::kEq);
  }
  if (name == "lt") {
    need(2);
    return linear_relation(base, tracks, {1, -1}, 0, LinearCmp::kLt);
  }
  if (name == "add") {
    need(3);
    return linear_relation(base, tracks, {1, 1, -1}, 0, LinearCmp::kEq);
  }
  if (name == "mul_const") {
    need(2);
    return linear_relation(base, tracks, {static_cast<std::int64_t>(param), -1}, 0, LinearCmp::kEq);
  }
  if (name == "const") {
    need(1);
    return linear_relation(base, tracks, {1}, static_cast<std::int64_t>(param), LinearCmp::kEq);
  }
  throw InputError("unsupported builtin relation '" + std::string(name) + "'");
}

Automaton complement(const Automaton& a) {
  auto acc = a.accepting();
  for (auto& x : acc) x = !x;
  return Automaton(a.base(), a.tracks(), a.num_states(), a.initial(), a.transitions(), std::move(acc));
}

Automaton combine(BoolOp op, const Automaton& a, const Automaton& b) {
  if (a.base() != b.base()) throw InputError("base mismatch in boolean combination");
  const int k = a.base();
  std::vector<std::string> tracks = a.tracks();
  for (const auto& t : b.tracks())
    if (!a.has_track(t)) tracks.push_back(t);
  const int sigma = symbol_count(k, static_cast<int>(tracks.size()));
  const int sigma_a = a.alphabet_size();
  // b's symbol for each combined symbol.
  std::vector<int> b_pos;
  for (const auto& t : b.tracks())
    b_pos.push_back(static_cast<int>(std::find(tracks.begin(), tracks.end(), t) - tracks.begin()));
  std::vector<int> map_b(static_cast<std::size_t>(sigma));
  {
    std::vector<int> digits_b(b_pos.size());
    for (int sym = 0; sym < sigma; ++sym) {
      auto d = decode_symbol(sym, k, static_cast<int>(tracks.size()));
      for (std::size_t j = 0; j < b_pos.size(); ++j) digits_b[j] = d[static_cast<std::size_t>(b_pos[j])];
      map_b[static_cast<std::size_t>(sym)] = encode_symbol(digits_b, k);
    }
  }
  auto eval = [op](bool x, bool y) {
    switch (op) {
      case BoolOp::kAnd: return x && y;
      case BoolOp::kOr: return x || y;
      case BoolOp::kImplies: return !x || y;
      case BoolOp::kIff: return x == y;
      case BoolOp::kXor: return x != y;
    }
    return false;
  };
  const auto nb = static_cast<std::uint64_t>(b.num_states());
  std::unordered_map<std::uint64_t, int> ids;
  std::vector<std::pair<int, int>> states;
  std::vector<int> delta;
  auto intern = [&](int p, int q) {
    auto key = static_cast<std::uint64_t>(p) * nb + static_cast<std::uint64_t>(q);
    auto [it, fresh] = ids.try_emplace(key, static_cast<int>(states.size()));
    if (fresh) {
      states.emplace_back(p, q);
      check_state_budget(states.size(), "boolean combination");
    }
    return it->second;
  };
  intern(a.initial(), b.initial());
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [p, q] = states[i];
    for (int sym = 0; sym < sigma; ++sym)
      delta.push_back(intern(a.next(p, sym % sigma_a), b.next(q, map_b[static_cast<std::size_t>(sym)])));
  }
  std::vector<char> acc;
  for (auto [p, q] : states) acc.push_back(eval(a.is_accepting(p), b.is_accepting(q)));
  return minimize(Automaton(k, std::move(tracks), static_cast<int>(states.size()), 0, std::move(delta), std::move(acc)));
}

Automaton project_exists(const Automaton& a, const std::vector<std::string>& vars) {
  std::vector<int> erased;
  for (const auto& v : vars) {
    auto idx = a.track_index(v);
    if (!idx) throw InputError("cannot project unknown track '" + v + "'");
    if (std::find(erased.begin(), erased.end(), *idx) == erased.end()) erased.push_back(*idx);
  }
  if (erased.empty()) return a;
  const int k = a.base();
  const int t = a.track_count();
  std::vector<std::string> kept_names;
  std::vector<int> kept;
  for (int j = 0; j < t; ++j)
    if (std::find(erased.begin(), erased.end(), j) == erased.end()) {
      kept.push_back(j);
      kept_names.push_back(a.tracks()[static_cast<std::size_t>(j)]);
    }
  const int sigma_new = symbol_count(k, static_cast<int>(kept.size()));
  // Old symbols compatible with each new symbol.
  std::vector<std::vector<int>> lift(static_cast<std::size_t>(sigma_new));
  for (int sym = 0; sym < a.alphabet_size(); ++sym) {
    auto d = decode_symbol(sym, k, t);
    std::vector<int> dk;
    for (int j : kept) dk.push_back(d[static_cast<std::size_t>(j)]);
    lift[static_cast<std::size_t>(encode_symbol(dk, k))].push_back(sym);
  }
  std::vector<int> stamp(static_cast<std::size_t>(a.num_states()), -1);
  int stamp_id = 0;
  auto step = [&](const std::vector<int>& from, int new_sym) {
    std::vector<int> to;
    ++stamp_id;
    for (int q : from)
      for (int old : lift[static_cast<std::size_t>(new_sym)]) {
        int r = a.next(q, old);
        if (stamp[static_cast<std::size_t>(r)] != stamp_id) {
          stamp[static_cast<std::size_t>(r)] = stamp_id;
          to.push_back(r);
        }
      }
    std::sort(to.begin(), to.end());
    return to;
  };
  // Leading-zero closure of the initial state: the erased tracks may need
  // more digits than the remaining ones.
  std::vector<int> start{a.initial()};
  for (;;) {
    auto more = step(start, 0);
    std::vector<int> merged;
    std::set_union(start.begin(), start.end(), more.begin(), more.end(), std::back_inserter(merged));
    if (merged == start) break;
    start = std::move(merged);
  }
  std::unordered_map<std::vector<int>, int, VectorHash> ids;
  std::vector<std::vector<int>> subsets;
  std::vector<int> delta;
  auto intern = [&](std::vector<int> s) {
    auto [it, fresh] = ids.try_emplace(s, static_cast<int>(subsets.size()));
    if (fresh) {
      subsets.push_back(std::move(s));
      check_state_budget(subsets.size(), "projection");
    }
    return it->second;
  };
  intern(start);
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (int sym = 0; sym < sigma_new; ++sym) {
      auto target = step(subsets[i], sym);
      delta.push_back(intern(std::move(target)));
    }
  std::vector<char> acc;
  for (const auto& s : subsets)
    acc.push_back(std::any_of(s.begin(), s.end(), [&](int q) { return a.is_accepting(q); }));
  return minimize(Automaton(k, std::move(kept_names), static_cast<int>(subsets.size()), 0, std::move(delta), std::move(acc)));
}

Automaton rename_tracks(const Automaton& a, const std::map<std::string, std::string>& renaming) {
  auto tracks = a.tracks();
  for (auto& t : tracks)
    if (auto it = renaming.find(t); it != renaming.end()) t = it->second;
  return Automaton(a.base(), std::move(tracks), a.num_states(), a.initial(), a.transitions(), a.accepting());
}

Automaton reorder_tracks(const Automaton& a, const std::vector<std::string>& order) {
  for (const auto& t : a.tracks())
    if (std::find(order.begin(), order.end(), t) == order.end())
      throw InputError("reordering would drop track '" + t + "'");
  if (order == a.tracks()) return a;
  const int k = a.base();
  const int t_new = static_cast<int>(order.size());
  const int sigma = symbol_count(k, t_new);
  std::vector<int> src;  // new track index of each old track
  for (const auto& t : a.tracks())
    src.push_back(static_cast<int>(std::find(order.begin(), order.end(), t) - order.begin()));
  std::vector<int> map_old(static_cast<std::size_t>(sigma));
  std::vector<int> old_digits(src.size());
  for (int sym = 0; sym < sigma; ++sym) {
    auto d = decode_symbol(sym, k, t_new);
    for (std::size_t j = 0; j < src.size(); ++j) old_digits[j] = d[static_cast<std::size_t>(src[j])];
    map_old[static_cast<std::size_t>(sym)] = encode_symbol(old_digits, k);
  }
  std::vector<int> delta;
  delta.reserve(static_cast<std::size_t>(a.num_states()) * static_cast<std::size_t>(sigma));
  for (int s = 0; s < a.num_states(); ++s)
    for (int sym = 0; sym < sigma; ++sym) delta.push_back(a.next(s, map_old[static_cast<std::size_t>(sym)]));
  return minimize(Automaton(k, order, a.num_states(), a.initial(), std::move(delta), a.accepting()));
}

namespace {

// Partition refinement over a fixed element set; blocks keep their marked
// elements in a prefix.
class Partition {
 public:
  explicit Partition(int n) : elems_(static_cast<std::size_t>(n)), pos_(static_cast<std::size_t>(n)), block_(static_cast<std::size_t>(n), 0) {
    std::iota(elems_.begin(), elems_.end(), 0);
    std::iota(pos_.begin(), pos_.end(), 0);
    if (n > 0) blocks_.push_back({0, n, 0});
  }

  int block_of(int e) const { return block_[static_cast<std::size_t>(e)]; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int size(int b) const { return blocks_[static_cast<std::size_t>(b)].end - blocks_[static_cast<std::size_t>(b)].start; }
  std::span<const int> members(int b) const {
    const auto& bl = blocks_[static_cast<std::size_t>(b)];
    return {elems_.data() + bl.start, static_cast<std::size_t>(bl.end - bl.start)};
  }

  // Returns true when this is the first mark in the block.
  bool mark(int e) {
    auto& bl = blocks_[static_cast<std::size_t>(block_[static_cast<std::size_t>(e)])];
    int p = pos_[static_cast<std::size_t>(e)];
    int boundary = bl.start + bl.marked;
    if (p < boundary) return false;
    int other = elems_[static_cast<std::size_t>(boundary)];
    std::swap(elems_[static_cast<std::size_t>(p)], elems_[static_cast<std::size_t>(boundary)]);
    pos_[static_cast<std::size_t>(other)] = p;
    pos_[static_cast<std::size_t>(e)] = boundary;
    return ++bl.marked == 1;
  }

  // Splits off the marked prefix; returns the new block id or -1.
  int split(int b) {
    auto& bl = blocks_[static_cast<std::size_t>(b)];
    int marked = bl.marked;
    bl.marked = 0;
    if (marked == 0 || marked == bl.end - bl.start) return -1;
    int nb = static_cast<int>(blocks_.size());
    Block fresh{bl.start, bl.start + marked, 0};
    bl.start += marked;
    blocks_.push_back(fresh);
    for (int i = fresh.start; i < fresh.end; ++i) block_[static_cast<std::size_t>(elems_[static_cast<std::size_t>(i)])] = nb;
    return nb;
  }

 private:
  struct Block {
    int start, end, marked;
  };
  std::vector<int> elems_, pos_, block_;
  std::vector<Block> blocks_;
};

}  // namespace

Automaton minimize(const Automaton& a) {
  const int sigma = a.alphabet_size();
  // Restrict to reachable states.
  auto reach = reachable_states(a);
  std::vector<int> old_to_new(static_cast<std::size_t>(a.num_states()), -1);
  std::vector<int> new_to_old;
  for (int s = 0; s < a.num_states(); ++s)
    if (reach[static_cast<std::size_t>(s)]) {
      old_to_new[static_cast<std::size_t>(s)] = static_cast<int>(new_to_old.size());
      new_to_old.push_back(s);
    }
  const int n = static_cast<int>(new_to_old.size());
  auto succ = [&](int s, int sym) { return old_to_new[static_cast<std::size_t>(a.next(new_to_old[static_cast<std::size_t>(s)], sym))]; };

  // Inverse transitions in CSR form, per symbol.
  const auto nn = static_cast<std::size_t>(n);
  std::vector<int> inv_start(static_cast<std::size_t>(sigma) * (nn + 1), 0);
  std::vector<int> inv(static_cast<std::size_t>(sigma) * nn);
  for (int sym = 0; sym < sigma; ++sym) {
    int* start = inv_start.data() + static_cast<std::size_t>(sym) * (nn + 1);
    for (int s = 0; s < n; ++s) ++start[succ(s, sym) + 1];
    for (int t = 0; t < n; ++t) start[t + 1] += start[t];
    std::vector<int> fill(start, start + n);
    int* base = inv.data() + static_cast<std::size_t>(sym) * nn;
    for (int s = 0; s < n; ++s) base[fill[static_cast<std::size_t>(succ(s, sym))]++] = s;
  }

  Partition part(n);
  std::vector<int> worklist;
  std::vector<char> in_work;
  auto push = [&](int b) {
    if (static_cast<std::size_t>(b) >= in_work.size()) in_work.resize(static_cast<std::size_t>(b) + 1, 0);
    if (!in_work[static_cast<std::size_t>(b)]) {
      in_work[static_cast<std::size_t>(b)] = 1;
      worklist.push_back(b);
    }
  };
  for (int s = 0; s < n; ++s)
    if (a.is_accepting(new_to_old[static_cast<std::size_t>(s)])) part.mark(s);
  int acc_block = part.split(0);
  push(0);
  if (acc_block >= 0) push(acc_block);

  std::vector<int> splitter, touched;
  while (!worklist.empty()) {
    int b = worklist.back();
    worklist.pop_back();
    in_work[static_cast<std::size_t>(b)] = 0;
    auto m = part.members(b);
    splitter.assign(m.begin(), m.end());
    for (int sym = 0; sym < sigma; ++sym) {
      const int* start = inv_start.data() + static_cast<std::size_t>(sym) * (nn + 1);
      const int* base = inv.data() + static_cast<std::size_t>(sym) * nn;
      touched.clear();
      for (int t : splitter)
        for (int i = start[t]; i < start[t + 1]; ++i) {
          int s = base[i];
          if (part.mark(s)) touched.push_back(part.block_of(s));
        }
      for (int blk : touched) {
        int fresh = part.split(blk);
        if (fresh < 0) continue;
        if (static_cast<std::size_t>(blk) < in_work.size() && in_work[static_cast<std::size_t>(blk)])
          push(fresh);
        else
          push(part.size(fresh) <= part.size(blk) ? fresh : blk);
      }
    }
  }

  // Canonical BFS numbering of blocks.
  std::vector<int> canon(static_cast<std::size_t>(part.block_count()), -1);
  std::vector<int> order;
  int init_block = part.block_of(old_to_new[static_cast<std::size_t>(a.initial())]);
  canon[static_cast<std::size_t>(init_block)] = 0;
  order.push_back(init_block);
  std::vector<int> delta;
  delta.reserve(static_cast<std::size_t>(part.block_count()) * static_cast<std::size_t>(sigma));
  for (std::size_t i = 0; i < order.size(); ++i) {
    int rep = part.members(order[i])[0];
    for (int sym = 0; sym < sigma; ++sym) {
      int tb = part.block_of(succ(rep, sym));
      if (canon[static_cast<std::size_t>(tb)] < 0) {
        canon[static_cast<std::size_t>(tb)] = static_cast<int>(order.size());
        order.push_back(tb);
      }
      delta.push_back(canon[static_cast<std::size_t>(tb)]);
    }
  }
  std::vector<char> acc;
  for (int blk : order) acc.push_back(a.is_accepting(new_to_old[static_cast<std::size_t>(part.members(blk)[0])]));
  return Automaton(a.base(), a.tracks(), static_cast<int>(order.size()), 0, std::move(delta), std::move(acc));
}

bool is_empty(const Automaton& a) {
  auto reach = reachable_states(a);
  for (int s = 0; s < a.num_states(); ++s)
    if (reach[static_cast<std::size_t>(s)] && a.is_accepting(s)) return false;
  return true;
}

bool is_universal(const Automaton& a) { return is_empty(complement(a)); }

bool is_finite(const Automaton& a) {
  // Layer 1 holds states reached after at least one non-zero symbol. A tuple
  // set is infinite iff layer 1 contains a cycle through live states.
  auto live = live_states(a);
  const int n = a.num_states();
  std::vector<char> seen(2 * static_cast<std::size_t>(n), 0);
  std::vector<int> stack{a.initial()};
  seen[static_cast<std::size_t>(a.initial())] = 1;
  while (!stack.empty()) {
    int node = stack.back();
    stack.pop_back();
    int s = node % n, layer = node / n;
    for (int sym = 0; sym < a.alphabet_size(); ++sym) {
      int t = a.next(s, sym);
      int nl = (layer == 1 || sym != 0) ? 1 : 0;
      int id = nl * n + t;
      if (!seen[static_cast<std::size_t>(id)]) {
        seen[static_cast<std::size_t>(id)] = 1;
        stack.push_back(id);
      }
    }
  }
  // Cycle detection restricted to live layer-1 states (iterative DFS colors).
  std::vector<char> color(static_cast<std::size_t>(n), 0);
  auto in_scope = [&](int s) { return seen[static_cast<std::size_t>(n + s)] && live[static_cast<std::size_t>(s)]; };
  for (int root = 0; root < n; ++root) {
    if (!in_scope(root) || color[static_cast<std::size_t>(root)]) continue;
    std::vector<std::pair<int, int>> dfs{{root, 0}};
    color[static_cast<std::size_t>(root)] = 1;
    while (!dfs.empty()) {
      auto& [s, sym] = dfs.back();
      if (sym == a.alphabet_size()) {
        color[static_cast<std::size_t>(s)] = 2;
        dfs.pop_back();
        continue;
      }
      int t = a.next(s, sym++);
      if (!in_scope(t)) continue;
      if (color[static_cast<std::size_t>(t)] == 1) return false;
      if (color[static_cast<std::size_t>(t)] == 0) {
        color[static_cast<std::size_t>(t)] = 1;
        dfs.emplace_back(t, 0);
      }
    }
  }
  return true;
}

std::vector<std::vector<Value>> enumerate(const Automaton& a, Value bound) {
  const int t = a.track_count();
  const int k = a.base();
  std::vector<std::vector<Value>> out;
  if (t == 0) {
    if (a.is_accepting(a.initial())) out.emplace_back();
    return out;
  }
  const int len = std::max(1, digit_length(bound, k));
  auto bd = digits_msd(bound, k, len);
  auto live = live_states(a);
  std::vector<std::vector<int>> sym_digits;
  for (int sym = 0; sym < a.alphabet_size(); ++sym) sym_digits.push_back(decode_symbol(sym, k, t));
  // Depth-first over positions; tight[j] means track j still equals the
  // bound's prefix.
  struct Frame {
    int state;
    std::vector<Value> values;
    std::vector<char> tight;
  };
  std::vector<std::pair<int, Frame>> stack;
  stack.push_back({0, Frame{a.initial(), std::vector<Value>(static_cast<std::size_t>(t), 0),
                            std::vector<char>(static_cast<std::size_t>(t), 1)}});
  while (!stack.empty()) {
    auto [depth, f] = std::move(stack.back());
    stack.pop_back();
    if (!live[static_cast<std::size_t>(f.state)]) continue;
    if (depth == len) {
      if (a.is_accepting(f.state)) out.push_back(f.values);
      continue;
    }
    int limit = bd[static_cast<std::size_t>(depth)];
    for (int sym = 0; sym < a.alphabet_size(); ++sym) {
      const auto& d = sym_digits[static_cast<std::size_t>(sym)];
      bool ok = true;
      for (int j = 0; j < t && ok; ++j)
        if (f.tight[static_cast<std::size_t>(j)] && d[static_cast<std::size_t>(j)] > limit) ok = false;
      if (!ok) continue;
      Frame g{a.next(f.state, sym), f.values, f.tight};
      for (int j = 0; j < t; ++j) {
        auto ju = static_cast<std::size_t>(j);
        g.values[ju] = g.values[ju] * static_cast<Value>(k) + static_cast<Value>(d[ju]);
        g.tight[ju] = f.tight[ju] && d[ju] == limit;
      }
      stack.push_back({depth + 1, std::move(g)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Value> min_accepted(const Automaton& a) {
  if (a.track_count() != 1) throw InputError("min_accepted needs a one-track automaton");
  if (is_empty(a)) return std::nullopt;
  const int n = a.num_states();
  const int k = a.base();
  // can[l][s]: some word of length exactly l leads from s to acceptance.
  std::vector<std::vector<char>> can;
  can.emplace_back(static_cast<std::size_t>(n), 0);
  for (int s = 0; s < n; ++s) can[0][static_cast<std::size_t>(s)] = a.is_accepting(s);
  int len = 0;
  while (!can[static_cast<std::size_t>(len)][static_cast<std::size_t>(a.initial())]) {
    std::vector<char> next(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s)
      for (int d = 0; d < k && !next[static_cast<std::size_t>(s)]; ++d)
        next[static_cast<std::size_t>(s)] = can.back()[static_cast<std::size_t>(a.next(s, d))];
    can.push_back(std::move(next));
    ++len;
    if (len > n + 1) throw InternalError("min_accepted: accepted word not found");
    if (len > 64) throw ResourceLimitError("resource limit: least accepted value exceeds 64 bits");
  }
  Value v = 0;
  int s = a.initial();
  for (int remaining = len; remaining > 0; --remaining) {
    for (int d = 0; d < k; ++d) {
      int t = a.next(s, d);
      if (can[static_cast<std::size_t>(remaining - 1)][static_cast<std::size_t>(t)]) {
        v = v * static_cast<Value>(k) + static_cast<Value>(d);
        s = t;
        break;
      }
    }
  }
  return v;
}

bool equivalent(const Automaton& a, const Automaton& b) {
  return is_empty(combine(BoolOp::kXor, a, b));
}

bool is_padding_closed(const Automaton& a) {
  auto m = minimize(a);
  return m.next(m.initial(), 0) == m.initial();
}

}  // namespace pcabel
