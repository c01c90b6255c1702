#pragma once

#include <functional>
#include <vector>

#include "pcabel/automaton.hpp"
#include "pcabel/morphism.hpp"
#include "pcabel/recognizability.hpp"
#include "pcabel/uniformizer.hpp"

namespace pcabel {

// Cut positions <= L of x = f(y0) f(y1) ... with y = g^w(a). letters[j] owns
// the block starting at positions[j].
struct CutEnumeration {
  std::vector<Value> positions;
  std::vector<Letter> letters;
};

CutEnumeration enumerate_cuts(const Morphism& f, Letter a, Value L);

// Prefix of x with the label of every position, built block by block.
struct LabelledPrefix {
  Word word;
  std::vector<WindowLabel> labels;
};
LabelledPrefix labelled_prefix(const Morphism& f, Letter a, std::size_t length);

// One-track automaton (track "n") accepting the positions whose label
// satisfies `pred`, assembled from the certificate windows.
Automaton label_automaton(const UniformPresentation& p, const RecognizabilityCertificate& cert,
                          const std::function<bool(const WindowLabel&)>& pred, const std::string& track = "n");

Automaton cut_automaton(const UniformPresentation& p, const RecognizabilityCertificate& cert);

// Two-track relations over ("i", "m"):
//   ne:        m = least cut >= i
//   pr_strict: m = greatest cut < i, with pr_strict(0) = 0
//   pr_weak:   m = greatest cut <= i
struct CutRelations {
  Automaton ne, pr_strict, pr_weak;
};
CutRelations ne_pr_relations(const Automaton& cuts);

}  // namespace pcabel
