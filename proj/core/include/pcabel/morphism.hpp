#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcabel {

// Letters are interned: a letter is its index in the owning Alphabet.
using Letter = int;
using Word = std::vector<Letter>;
using ParikhVector = std::vector<std::int64_t>;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  int size() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& name(Letter l) const { return names_.at(static_cast<std::size_t>(l)); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Letter> find(std::string_view name) const;
  Letter index_of(std::string_view name) const;  // throws InputError

  // Concatenates letter names; names longer than one character are bracketed.
  std::string spell(const Word& w) const;
  // Inverse of spell() for single-character names.
  Word parse_word(std::string_view text) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

class Morphism {
 public:
  Morphism() = default;
  Morphism(Alphabet domain, Alphabet codomain, std::vector<Word> images);
  // Endomorphism shorthand.
  Morphism(Alphabet alphabet, std::vector<Word> images);

  const Alphabet& domain() const noexcept { return domain_; }
  const Alphabet& codomain() const noexcept { return codomain_; }
  const Word& image(Letter l) const { return images_.at(static_cast<std::size_t>(l)); }
  const std::vector<Word>& images() const noexcept { return images_; }
  bool is_endomorphism() const { return domain_ == codomain_; }

  // |m| and <m> over the whole domain.
  std::size_t max_image_length() const;
  std::size_t min_image_length() const;

  // "0->012 1->112002 2->"
  std::string to_string() const;

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  Alphabet domain_;
  Alphabet codomain_;
  std::vector<Word> images_;
};

// Parses the whitespace separated `letter->image` rule format. The alphabet is
// ordered by rule order. Errors carry line and column.
Morphism parse_morphism(std::string_view text);

using Matrix = std::vector<std::vector<std::int64_t>>;

struct LetterPartition {
  std::vector<Letter> immortal;  // B
  std::vector<Letter> mortal;    // C
  bool is_mortal(Letter l) const;
};

struct CollinearityWitness {
  Letter first;
  Letter second;
  Letter row_a;
  Letter row_b;
  std::int64_t minor;
};

Word apply(const Morphism& m, const Word& w);
ParikhVector parikh(const Word& w, int alphabet_size);
Matrix adjacency_matrix(const Morphism& m);

std::optional<CollinearityWitness> collinearity_witness(const Morphism& m);
bool is_parikh_collinear(const Morphism& m);
std::int64_t eigenvalue(const Morphism& m);

// Letters whose iterates eventually vanish, computed without any collinearity
// assumption.
std::vector<bool> mortal_letters(const Morphism& m);

LetterPartition mortal_partition(const Morphism& m);

struct KappaProjection {
  Morphism kappa;  // A* -> B*
  Morphism g;      // B* -> B*, g = kappa o f restricted to B
  std::vector<Letter> to_original;    // B letter -> A letter
  std::vector<int> from_original;     // A letter -> B letter or -1
};
KappaProjection kappa_projection(const Morphism& m);

bool is_primitive(const Morphism& m, std::optional<int> cutoff = std::nullopt);
bool is_prolongable(const Morphism& m, Letter a);
Word fixed_point_prefix(const Morphism& m, Letter a, std::size_t n);

struct Restriction {
  Morphism morphism;
  std::vector<Letter> to_original;
};
Restriction restrict_to_reachable(const Morphism& m, Letter a);

Morphism identity_morphism(const Alphabet& alphabet);

}  // namespace pcabel
