#include "pcabel/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "json.hpp"
#include "pcabel/error.hpp"
#include "pcabel/export.hpp"

namespace pcabel {

namespace {

[[noreturn]] void rethrow_in_stage(const Error& e, const std::string& stage) {
  std::string what = "stage " + stage + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::kInput:
      throw InputError(what);
    case ErrorKind::kInconclusive:
      throw InconclusiveError(what);
    case ErrorKind::kOracleMismatch:
      throw OracleMismatchError(what);
    case ErrorKind::kResourceLimit:
      throw ResourceLimitError(what);
    case ErrorKind::kInternal:
      break;
  }
  throw InternalError(what);
}

class Stages {
 public:
  Stages(const PipelineConfig& config, PipelineReport& report) : config_(config), report_(report) {}

  template <class Fn>
  void run(const std::string& name, Fn&& fn) {
    if (config_.on_stage) config_.on_stage(name);
    auto start = std::chrono::steady_clock::now();
    try {
      fn();
    } catch (const Error& e) {
      rethrow_in_stage(e, name);
    } catch (const std::exception& e) {
      throw InternalError("stage " + name + ": " + e.what());
    }
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report_.timings.emplace_back(name, dt.count());
  }

 private:
  const PipelineConfig& config_;
  PipelineReport& report_;
};

std::int64_t description_at(const ComplexityDescription& d, std::size_t n) {
  if (n < d.preperiod.size()) return d.preperiod[n];
  return d.period[(n - d.preperiod.size()) % d.period.size()];
}

void check_abelian(const PipelineReport& r, const PipelineConfig& config,
                   const std::function<std::int64_t(std::size_t)>& value) {
  oracle::PrefixBuffer buffer(r.f, r.seed, 1);
  auto brute = oracle::brute_abelian_range(buffer, config.check_depth, config.policy);
  for (std::size_t n = 0; n < brute.size(); ++n)
    if (value(n) != brute[n])
      throw OracleMismatchError("abelian complexity at n=" + std::to_string(n) + ": pipeline " +
                                std::to_string(value(n)) + ", oracle " + std::to_string(brute[n]));
}

}  // namespace

PipelineReport run_pipeline(const Morphism& input, Letter a, const PipelineConfig& config) {
  PipelineReport r;
  Stages stages(config, r);

  stages.run("validate", [&] {
    if (!input.is_endomorphism()) throw InputError("morphism is not an endomorphism");
    if (a < 0 || a >= input.domain().size()) throw InputError("seed letter out of range");
    if (!is_parikh_collinear(input)) throw InputError("morphism is not Parikh-collinear");
    if (!is_prolongable(input, a)) throw InputError("morphism is not prolongable on '" + input.domain().name(a) + "'");
    auto restricted = restrict_to_reachable(input, a);
    r.f = restricted.morphism;
    r.seed = static_cast<Letter>(std::find(restricted.to_original.begin(), restricted.to_original.end(), a) -
                                 restricted.to_original.begin());
    r.eigenvalue = eigenvalue(r.f);
    r.partition = mortal_partition(r.f);
    r.g = kappa_projection(r.f).g;
  });

  stages.run("uniformize", [&] {
    auto raw = uniformize(r.f, r.seed);
    r.presentation_letters = raw.uniform.domain().size();
    r.presentation = minimize_presentation(raw);
  });

  stages.run("periodicity", [&] {
    Dfao x = dfao_of_word(r.presentation);
    r.word_aperiodic = is_aperiodic(x);
    if (!r.word_aperiodic) r.word_period = period_witness(x);
  });

  if (!r.word_aperiodic) {
    stages.run("degenerate", [&] {
      const auto i = static_cast<std::size_t>(r.word_period->preperiod);
      const auto p = static_cast<std::size_t>(r.word_period->period);
      Word x = fixed_point_prefix(r.f, r.seed, i + p);
      r.description = periodic_word_complexity(x, i, p, r.f.domain().size());
    });
    if (config.check)
      stages.run("check", [&] {
        check_abelian(r, config, [&](std::size_t n) { return description_at(r.description, n); });
        r.checks.push_back("abelian complexity n<=" + std::to_string(config.check_depth));
      });
    return r;
  }

  AbelianContext ctx;
  stages.run("certify", [&] {
    ctx.f = r.f;
    ctx.seed = r.seed;
    ctx.presentation = r.presentation;
    ctx.certificate = certify_recognizability(r.f, r.seed, r.presentation, config.certify);
    r.certificate = ctx.certificate;
  });
  stages.run("cuts", [&] {
    ctx.cuts = cut_automaton(ctx.presentation, ctx.certificate);
    ctx.relations = ne_pr_relations(ctx.cuts);
    r.cuts = ctx.cuts;
  });

  std::vector<SignedDifferences> diffs;
  stages.run("prefix", [&] {
    for (Letter b = 0; b < r.f.domain().size(); ++b) {
      r.prefix.push_back(prefix_count_relation(b, ctx));
      diffs.push_back(difference_relations(r.prefix.back(), factor_count_relation(r.prefix.back())));
    }
  });
  stages.run("profile", [&] {
    std::vector<std::vector<std::int64_t>> sets;
    for (const auto& d : diffs) sets.push_back(attained_difference_set(d));
    r.profile = attainable_vectors(diffs, sets);
  });
  stages.run("dfao", [&] { r.dfao = abelian_dfao(r.profile); });
  stages.run("describe", [&] { r.description = describe_sequence(*r.dfao); });

  if (config.check)
    stages.run("check", [&] {
      const Value depth = static_cast<Value>(config.check_depth);
      std::vector<Value> got;
      for (const auto& t : enumerate(*r.cuts, depth)) got.push_back(t[0]);
      auto want = enumerate_cuts(r.f, r.seed, depth).positions;
      if (got != want) {
        std::size_t j = 0;
        while (j < got.size() && j < want.size() && got[j] == want[j]) ++j;
        throw OracleMismatchError("cut automaton differs from the enumeration near position " +
                                  std::to_string(j < want.size() ? want[j] : got[j]));
      }
      r.checks.push_back("cuts n<=" + std::to_string(depth));

      oracle::PrefixBuffer buffer(r.f, r.seed, config.check_depth + 1);
      for (const auto& p : r.prefix) {
        auto pairs = enumerate(reorder_tracks(p.relation, {"n", "y"}), depth);
        bool ok = pairs.size() == config.check_depth + 1;
        for (std::size_t n = 0; ok && n < pairs.size(); ++n)
          ok = pairs[n][0] == n && static_cast<std::int64_t>(pairs[n][1]) == oracle::brute_prefix_counts(buffer, p.letter, n);
        if (!ok) throw OracleMismatchError("prefix counts of '" + r.f.domain().name(p.letter) + "' differ from the oracle");
      }
      r.checks.push_back("prefix counts n<=" + std::to_string(depth));

      check_abelian(r, config, [&](std::size_t n) { return dfao_output(*r.dfao, static_cast<Value>(n)); });
      r.checks.push_back("abelian complexity n<=" + std::to_string(depth));
    });
  return r;
}

std::string PipelineReport::to_json() const {
  using nlohmann::json;
  const auto& A = f.domain();
  auto names = [&](const std::vector<Letter>& ls) {
    json out = json::array();
    for (Letter l : ls) out.push_back(A.name(l));
    return out;
  };
  json j;
  j["morphism"] = f.to_string();
  j["seed"] = A.name(seed);
  j["eigenvalue"] = eigenvalue;
  j["immortal"] = names(partition.immortal);
  j["mortal"] = names(partition.mortal);
  j["g"] = g.to_string();
  j["word"] = {{"aperiodic", word_aperiodic}};
  if (word_period) {
    j["word"]["preperiod"] = word_period->preperiod;
    j["word"]["period"] = word_period->period;
  }
  j["presentation"] = {{"letters", presentation_letters},
                       {"minimized", presentation.uniform.domain().size()},
                       {"morphism", presentation.uniform.to_string()},
                       {"coding", presentation.coding.to_string()}};
  if (certificate)
    j["recognizability"] = {{"C", certificate->C},
                            {"depth", certificate->depth},
                            {"stable", certificate->stable},
                            {"windows", certificate->table.size()}};
  if (cuts) j["cuts"] = {{"states", cuts->num_states()}};
  if (!prefix.empty()) {
    j["ratios"] = json::array();
    for (const auto& p : prefix) j["ratios"].push_back({{"letter", A.name(p.letter)}, {"r", p.r}, {"q", p.q}});
  }
  if (!profile.sets.empty()) {
    j["difference_sets"] = json::object();
    for (std::size_t b = 0; b < profile.sets.size(); ++b) j["difference_sets"][A.name(static_cast<Letter>(b))] = profile.sets[b];
    j["vectors"] = json::array();
    for (const auto& v : profile.vectors) j["vectors"].push_back(v.v);
  }
  if (dfao) j["dfao"] = json::parse(pcabel::to_json(*dfao));
  j["description"] = description.compact();
  j["checks"] = checks;
  return j.dump(2);
}

}  // namespace pcabel
