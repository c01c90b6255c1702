#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "pcabel/automaton.hpp"
#include "pcabel/morphism.hpp"

namespace testing {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline pcabel::Word random_word(std::mt19937_64& rng, int alphabet, int max_len) {
  pcabel::Word w(static_cast<std::size_t>(uniform(rng, 0, max_len)));
  for (auto& l : w) l = uniform(rng, 0, alphabet - 1);
  return w;
}

// Random Parikh-collinear endomorphism on 2..4 letters. Letter 0 is immortal
// and its image starts with 0 about half the time.
inline pcabel::Morphism random_collinear_morphism(std::mt19937_64& rng) {
  const int n = uniform(rng, 2, 4);
  std::vector<int> p(static_cast<std::size_t>(n));
  p[0] = uniform(rng, 1, 2);
  for (int i = 1; i < n; ++i) p[static_cast<std::size_t>(i)] = uniform(rng, 0, 2);
  std::vector<pcabel::Word> images(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    int mult = c == 0 ? uniform(rng, 1, 2) : uniform(rng, 0, 2);
    pcabel::Word img;
    for (int b = 0; b < n; ++b)
      for (int r = 0; r < mult * p[static_cast<std::size_t>(b)]; ++r) img.push_back(b);
    std::shuffle(img.begin(), img.end(), rng);
    if (c == 0 && uniform(rng, 0, 1)) std::iter_swap(img.begin(), std::find(img.begin(), img.end(), 0));
    images[static_cast<std::size_t>(c)] = std::move(img);
  }
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return pcabel::Morphism(pcabel::Alphabet(names), std::move(images));
}

// Random complete automaton with the given tracks; usually not padding
// closed, so callers normally go through a padding-closing operation.
inline pcabel::Automaton random_automaton(std::mt19937_64& rng, int base, std::vector<std::string> tracks,
                                          int max_states = 5) {
  const int n = uniform(rng, 1, max_states);
  const int sigma = pcabel::symbol_count(base, static_cast<int>(tracks.size()));
  std::vector<int> delta(static_cast<std::size_t>(n * sigma));
  for (auto& t : delta) t = uniform(rng, 0, n - 1);
  // keep the zero symbol a self loop on the initial state so padding is harmless
  delta[0] = 0;
  std::vector<char> acc(static_cast<std::size_t>(n));
  for (auto& a : acc) a = static_cast<char>(uniform(rng, 0, 1));
  return pcabel::Automaton(base, std::move(tracks), n, 0, std::move(delta), std::move(acc));
}

}  // namespace testing
