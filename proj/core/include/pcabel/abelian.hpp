#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcabel/automaton.hpp"
#include "pcabel/cutting.hpp"
#include "pcabel/dfao.hpp"
#include "pcabel/morphism.hpp"
#include "pcabel/recognizability.hpp"
#include "pcabel/uniformizer.hpp"

namespace pcabel {

// Artifacts shared by the synchronized constructions for one (f, a).
struct AbelianContext {
  Morphism f;
  Letter seed = 0;
  UniformPresentation presentation;
  RecognizabilityCertificate certificate;
  Automaton cuts;
  CutRelations relations;
};

AbelianContext make_context(const Morphism& f, Letter a, const CertifyOptions& options = {});

// y = |pref_n(x)|_b over tracks ("n", "y"); ratio r/q in lowest terms.
struct PrefixCountRelation {
  Letter letter = 0;
  std::int64_t r = 0, q = 1;
  Automaton relation;
};

PrefixCountRelation prefix_count_relation(Letter b, const AbelianContext& ctx);
// z = |x[i..i+n)|_b over tracks ("i", "n", "z").
Automaton factor_count_relation(const PrefixCountRelation& pref);

// {|v|_b - |pref_n(x)|_b : v a length-n factor}, sorted. `signed_diffs`
// receives the two one-sided relations over ("i", "n", "d").
struct SignedDifferences {
  Automaton nonneg;  // |v|_b = |pref_n|_b + d
  Automaton neg;     // |v|_b + d = |pref_n|_b
};
SignedDifferences difference_relations(const PrefixCountRelation& pref, const Automaton& factor);
std::vector<std::int64_t> attained_difference_set(const SignedDifferences& diffs);

struct AttainedVector {
  std::vector<std::int64_t> v;
  Automaton automaton;  // one track "n": some length-n factor has Parikh vector psi(pref_n) + v
};

struct DifferenceProfile {
  std::vector<std::vector<std::int64_t>> sets;  // per letter
  std::vector<AttainedVector> vectors;          // lexicographic order
};

DifferenceProfile attainable_vectors(const std::vector<SignedDifferences>& diffs,
                                     const std::vector<std::vector<std::int64_t>>& sets);

// Attained vectors at one length.
std::vector<std::vector<std::int64_t>> vectors_at(const DifferenceProfile& profile, Value n);

// Output at n = number of vectors attained at n; minimized.
Dfao abelian_dfao(const DifferenceProfile& profile);

bool is_ultimately_periodic(const Dfao& d);
inline bool is_aperiodic(const Dfao& d) { return !is_ultimately_periodic(d); }
// Least period, then least preperiod for it.
struct PeriodWitness {
  Value preperiod = 0;
  Value period = 1;
};
PeriodWitness period_witness(const Dfao& d);

struct ComplexityDescription {
  bool aperiodic = false;
  std::vector<std::int64_t> preperiod, period;

  std::string compact() const;  // 135(377)^w
  std::string spaced() const;   // 1 3 5 (3 7 7)^w
  friend bool operator==(const ComplexityDescription&, const ComplexityDescription&) = default;
};

ComplexityDescription describe_sequence(const Dfao& d);
// Minimal description of a sequence known to satisfy s(n+p) = s(n) for n >= i,
// given its first i+p values.
ComplexityDescription describe_values(const std::vector<std::int64_t>& head, std::size_t i, std::size_t p);

// Abelian complexity of u v^w read off one period, without automata.
ComplexityDescription periodic_word_complexity(const Word& x, std::size_t preperiod, std::size_t period,
                                               int alphabet_size);

}  // namespace pcabel
