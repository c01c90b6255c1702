#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcabel/abelian.hpp"
#include "pcabel/oracle.hpp"

namespace pcabel {

struct PipelineConfig {
  CertifyOptions certify;
  bool check = true;               // compare against the brute-force oracle
  std::size_t check_depth = 10000;  // n <= check_depth
  oracle::StabilityPolicy policy;
  std::function<void(const std::string& stage)> on_stage;  // progress callback
};

struct PipelineReport {
  Morphism f;  // restricted to the letters occurring in x
  Letter seed = 0;
  std::int64_t eigenvalue = 0;
  LetterPartition partition;
  Morphism g;
  bool word_aperiodic = false;
  std::optional<PeriodWitness> word_period;
  int presentation_letters = 0;
  UniformPresentation presentation;  // minimized
  std::optional<RecognizabilityCertificate> certificate;
  std::optional<Automaton> cuts;
  std::vector<PrefixCountRelation> prefix;
  DifferenceProfile profile;
  std::optional<Dfao> dfao;
  ComplexityDescription description;
  std::vector<std::string> checks;  // oracle comparisons that passed
  std::vector<std::pair<std::string, double>> timings;

  bool degenerate() const { return !word_aperiodic; }
  // Deterministic; timings are left out.
  std::string to_json() const;
};

// validate, periodicity of x, uniformize, certify, cuts, prefix, profile,
// dfao, describe, check. Errors carry the stage name.
PipelineReport run_pipeline(const Morphism& f, Letter a, const PipelineConfig& config = {});

}  // namespace pcabel
