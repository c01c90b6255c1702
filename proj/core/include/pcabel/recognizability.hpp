#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pcabel/morphism.hpp"
#include "pcabel/uniformizer.hpp"

namespace pcabel {

// Big naturals are carried as decimal strings.
struct BoundReport {
  std::int64_t f_norm = 0;          // |f|
  std::int64_t f_min_immortal = 0;  // least |f(b)| over immortal b
  int alphabet_size = 0;            // l = #A
  std::optional<std::string> K_sigma_bound;  // linear recurrence bound of g, when g is primitive
  std::optional<std::string> K_f_bound;
  std::optional<std::string> rec_bound;  // exact value when it fits the bit budget
  std::string rec_digits;                // decimal digit count of the recognizability bound
  std::string rec_expression;

  // Exact values up to `display_threshold` digits, digit counts beyond.
  std::string to_text(std::size_t display_threshold = 60) const;
};

// |sigma|^(4 l^2) with l the alphabet size.
std::string bound_linear_recurrence(const Morphism& sigma);
// ceil(K_g |f| / min_{b immortal} |f(b)|)
std::string bound_K_f(const Morphism& f, const std::string& K_g);
// 4 (|f|^(4l^2) + 1) l^2 |f|^((2l+1)(2 + |f|^((2^l+1) l)))
BoundReport bound_recognizability(const Morphism& f, std::uint64_t exact_bit_budget = std::uint64_t{1} << 20);

// True iff no factor u^e (u non-empty) occurs in the length-N prefix of f^w(a).
bool power_free_check(const Morphism& f, Letter a, int e, std::size_t N);
// Return words to u witnessed in the length-N prefix of f^w(a).
std::set<Word> return_words(const Morphism& f, Letter a, const Word& u, std::size_t N);
// Exact set of length-m factors of x, from the length-2 factors of the
// internal word closed under the uniform morphism.
std::set<Word> factors_of_length(const UniformPresentation& p, std::size_t m);

// Desubstitution of one position of x: the owning block letter (smallest
// immortal letter with the same image) and the offset inside that block.
struct WindowLabel {
  bool cut = false;
  Letter letter = 0;
  std::uint32_t offset = 0;
  friend bool operator==(const WindowLabel&, const WindowLabel&) = default;
};

struct WindowConflict {
  int C = 0;
  Word window;
  std::size_t first = 0, second = 0;  // centers of the two occurrences
  WindowLabel first_label, second_label;
};

struct RecognizabilityCertificate {
  int C = 0;
  std::map<Word, WindowLabel> table;      // length 2C+1 windows, keyed by content
  std::vector<WindowLabel> prefix_labels;  // labels of positions n < C
  std::size_t depth = 0;                   // verified prefix length L
  bool stable = false;                     // the C+1 windows are conflict free too
  std::vector<WindowConflict> rejected;    // smallest conflict for each C below the certified one
};

struct CertifyOptions {
  int c_max = 64;
  std::size_t depth = 0;  // 0 selects max(10^5, 50 (2 c_max + 1))
  int max_doublings = 2;  // extra depth doublings allowed to complete the table
};

RecognizabilityCertificate certify_recognizability(const Morphism& f, Letter a, const UniformPresentation& p,
                                                   const CertifyOptions& options = {});

std::string certificate_to_json(const RecognizabilityCertificate& cert, const Alphabet& alphabet);
RecognizabilityCertificate certificate_from_json(std::string_view text, const Alphabet& alphabet);

std::string describe_conflict(const WindowConflict& c, const Alphabet& alphabet);

}  // namespace pcabel
