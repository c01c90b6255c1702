#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "pcabel/morphism.hpp"

// Brute-force reference computations. Nothing here goes through automata or
// the uniform presentation; the fixed point is regenerated by plain iteration.
namespace pcabel::oracle {

// Materialized prefix of f^w(a) with cumulative letter counts. The buffer
// grows on demand when built from a morphism.
class PrefixBuffer {
 public:
  PrefixBuffer(const Morphism& f, Letter a, std::size_t length);
  PrefixBuffer(Word word, int alphabet_size);

  std::size_t size() const noexcept { return word_.size(); }
  int alphabet_size() const noexcept { return sigma_; }
  const Word& word() const noexcept { return word_; }
  Letter operator[](std::size_t i) const { return word_[i]; }
  // |pref_n|_b
  std::int64_t count(std::size_t n, Letter b) const {
    return counts_[n * static_cast<std::size_t>(sigma_) + static_cast<std::size_t>(b)];
  }
  // Counts of every letter in pref_n, contiguous.
  const std::int32_t* count_row(std::size_t n) const { return counts_.data() + n * static_cast<std::size_t>(sigma_); }
  // The word as bytes when the alphabet has at most 256 letters, else null.
  const std::uint8_t* bytes() const { return bytes_.empty() ? nullptr : bytes_.data(); }
  bool can_grow() const noexcept { return !images_.empty(); }
  // Makes size() >= length; throws InconclusiveError for a fixed word.
  void ensure(std::size_t length);

 private:
  void rebuild_counts();

  std::vector<Word> images_;
  Letter seed_ = 0;
  int sigma_ = 0;
  Word word_;
  std::vector<std::int32_t> counts_;
  std::vector<std::uint8_t> bytes_;
};

// Plain iteration of f from a until the prefix has n letters.
Word brute_fixed_point(const Morphism& f, Letter a, std::size_t n);

struct StabilityPolicy {
  std::size_t min_window_span = 10000;  // B = max(per_n * n, min_window_span)
  std::size_t per_n = 64;
  int max_doublings = 2;
};

// Number of distinct Parikh vectors of length-n factors. The count over a
// prefix of length B is compared with the count over 2B (then 4B); the
// result is returned once two consecutive rounds agree.
std::int64_t brute_abelian(PrefixBuffer& buffer, std::size_t n, const StabilityPolicy& policy = {});
// Values for n = 0..n_max.
std::vector<std::int64_t> brute_abelian_range(PrefixBuffer& buffer, std::size_t n_max,
                                              const StabilityPolicy& policy = {});

// Distinct Parikh-vector differences psi(w) - psi(pref_n) over all length-n
// factors w starting below `starts`.
std::set<std::vector<std::int64_t>> brute_difference_vectors(const PrefixBuffer& buffer, std::size_t n,
                                                            std::size_t starts);

// {|f(pref_n(x))|} up to L, read straight off x = f(x).
std::vector<std::uint64_t> brute_cuts(const Morphism& f, Letter a, std::uint64_t L);
std::int64_t brute_prefix_counts(const PrefixBuffer& buffer, Letter b, std::size_t n);
std::set<Word> brute_factors(const PrefixBuffer& buffer, std::size_t m);

}  // namespace pcabel::oracle
