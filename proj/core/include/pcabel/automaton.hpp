#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcabel {

using Value = std::uint64_t;

// Hard cap on the number of states any single construction may create.
struct EngineLimits {
  std::size_t max_states = 2'000'000;
  std::size_t max_alphabet = std::size_t{1} << 22;
};

EngineLimits& engine_limits();

class ScopedEngineLimits {
 public:
  explicit ScopedEngineLimits(EngineLimits limits) : saved_(engine_limits()) {
    engine_limits() = limits;
  }
  ~ScopedEngineLimits() { engine_limits() = saved_; }
  ScopedEngineLimits(const ScopedEngineLimits&) = delete;
  ScopedEngineLimits& operator=(const ScopedEngineLimits&) = delete;

 private:
  EngineLimits saved_;
};

// Deterministic complete automaton over tuples of base-k digits, read most
// significant digit first. Track j of a symbol is digit (symbol / k^j) % k.
//
// All automata produced by this library are padding closed: prefixing the
// all-zero tuple never changes acceptance.
class Automaton {
 public:
  Automaton() = default;
  Automaton(int base, std::vector<std::string> tracks, int num_states, int initial,
            std::vector<int> delta, std::vector<char> accepting);

  // Accepts every tuple / no tuple.
  static Automaton universal(int base, std::vector<std::string> tracks = {});
  static Automaton empty(int base, std::vector<std::string> tracks = {});

  int base() const noexcept { return base_; }
  const std::vector<std::string>& tracks() const noexcept { return tracks_; }
  int track_count() const noexcept { return static_cast<int>(tracks_.size()); }
  std::optional<int> track_index(std::string_view name) const;
  bool has_track(std::string_view name) const { return track_index(name).has_value(); }

  int alphabet_size() const noexcept { return sigma_; }
  int num_states() const noexcept { return num_states_; }
  int initial() const noexcept { return initial_; }
  int next(int state, int symbol) const {
    return delta_[static_cast<std::size_t>(state) * static_cast<std::size_t>(sigma_) +
                  static_cast<std::size_t>(symbol)];
  }
  bool is_accepting(int state) const { return accepting_[static_cast<std::size_t>(state)] != 0; }
  const std::vector<int>& transitions() const noexcept { return delta_; }
  const std::vector<char>& accepting() const noexcept { return accepting_; }

  // Values listed in track order.
  bool accepts(std::span<const Value> tuple) const;
  bool accepts(std::initializer_list<Value> tuple) const {
    return accepts(std::span<const Value>(tuple.begin(), tuple.size()));
  }
  // Runs an explicit digit string; each element is one symbol.
  bool accepts_symbols(std::span<const int> symbols) const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  int base_ = 2;
  std::vector<std::string> tracks_;
  int sigma_ = 1;
  int num_states_ = 0;
  int initial_ = 0;
  std::vector<int> delta_;
  std::vector<char> accepting_;
};

int symbol_count(int base, int tracks);
int encode_symbol(std::span<const int> digits, int base);
std::vector<int> decode_symbol(int symbol, int base, int tracks);
// msd-first digits of v, exactly `length` of them.
std::vector<int> digits_msd(Value v, int base, int length);
int digit_length(Value v, int base);

enum class BoolOp { kAnd, kOr, kImplies, kIff, kXor };
enum class LinearCmp { kEq, kLt };

// sum_j coeffs[j] * tracks[j]  (= or <)  constant, with integer coefficients.
// Repeated track names are not allowed.
Automaton linear_relation(int base, std::vector<std::string> tracks,
                          std::vector<std::int64_t> coeffs, std::int64_t constant,
                          LinearCmp cmp);

// Canonical arithmetic relations:
//   eq (x,y): x=y      lt (x,y): x<y      add (x,y,z): x+y=z
//   mul_const (x,y): c*x=y with c=param   const (x): x=param
Automaton builtin_relation(std::string_view name, int base, std::vector<std::string> tracks,
                           std::uint64_t param = 0);

Automaton complement(const Automaton& a);
// Tracks are aligned by name; the result lists a's tracks first.
Automaton combine(BoolOp op, const Automaton& a, const Automaton& b);
Automaton project_exists(const Automaton& a, const std::vector<std::string>& vars);
inline Automaton project_exists(const Automaton& a, const std::string& var) {
  return project_exists(a, std::vector<std::string>{var});
}
Automaton rename_tracks(const Automaton& a, const std::map<std::string, std::string>& renaming);
// Permutes tracks into `order`; names absent from `a` become don't-care tracks.
Automaton reorder_tracks(const Automaton& a, const std::vector<std::string>& order);

// Hopcroft minimization followed by canonical renumbering (BFS from the
// initial state, symbols in increasing order).
Automaton minimize(const Automaton& a);

bool is_empty(const Automaton& a);
bool is_universal(const Automaton& a);
// True iff the automaton accepts finitely many tuples.
bool is_finite(const Automaton& a);
// All accepted tuples whose components are <= bound, lexicographically sorted.
std::vector<std::vector<Value>> enumerate(const Automaton& a, Value bound);
// Least accepted value of a one-track automaton.
std::optional<Value> min_accepted(const Automaton& a);
// Language equality after aligning tracks by name.
bool equivalent(const Automaton& a, const Automaton& b);
// Checks that reading the zero tuple from the initial state leads to an
// equivalent state.
bool is_padding_closed(const Automaton& a);

}  // namespace pcabel
