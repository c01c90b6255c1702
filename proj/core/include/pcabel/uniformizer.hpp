#pragma once

#include <string>

#include "pcabel/dfao.hpp"
#include "pcabel/morphism.hpp"

namespace pcabel {

// x = coding(uniform^w(start)), every image of `uniform` has length k.
struct UniformPresentation {
  int k = 0;
  Morphism uniform;
  Morphism coding;  // internal letters -> letters of f, one letter each
  Letter start = 0;
  // For presentations built by uniformize(): the (immortal letter, offset)
  // pair behind each internal letter. Empty after minimization.
  std::vector<std::pair<Letter, int>> pairs;
};

// Pair-alphabet construction: letter (b,i) stands for position i inside a
// block f(b). Its image addresses positions [k*i, k*i+k) of f(g(b)).
UniformPresentation uniformize(const Morphism& f, Letter a);

// Merges letters with the same coding and the same image blocks (Moore
// refinement); letters are renumbered in BFS order from the start letter.
UniformPresentation minimize_presentation(const UniformPresentation& p);

// States are internal letters; output is the f-letter index of the coding.
Dfao dfao_of_word(const UniformPresentation& p);

// Prefix of coding(uniform^w(start)).
Word generate(const UniformPresentation& p, std::size_t n);

// Two lines: `morphism <name> "..."` and `morphism <coding_name> "..."`.
std::string export_presentation(const UniformPresentation& p, const std::string& name = "h",
                                const std::string& coding_name = "tau");

}  // namespace pcabel
