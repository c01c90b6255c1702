#include "pcabel/abelian.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "pcabel/error.hpp"
#include "pcabel/logic.hpp"

namespace pcabel {

namespace {

std::vector<Value> finite_values(const Automaton& a) {
  if (!is_finite(a)) throw InternalError("difference set is unbounded");
  Value bound = 1;
  for (int s = 0; s <= a.num_states() && bound < (Value{1} << 62) / static_cast<Value>(a.base()); ++s)
    bound *= static_cast<Value>(a.base());
  std::vector<Value> out;
  for (const auto& t : enumerate(a, bound)) out.push_back(t[0]);
  return out;
}

Term term(const std::string& v) { return var(v); }

}  // namespace

AbelianContext make_context(const Morphism& f, Letter a, const CertifyOptions& options) {
  AbelianContext ctx;
  ctx.f = f;
  ctx.seed = a;
  ctx.presentation = minimize_presentation(uniformize(f, a));
  ctx.certificate = certify_recognizability(f, a, ctx.presentation, options);
  ctx.cuts = cut_automaton(ctx.presentation, ctx.certificate);
  ctx.relations = ne_pr_relations(ctx.cuts);
  return ctx;
}

PrefixCountRelation prefix_count_relation(Letter b, const AbelianContext& ctx) {
  const auto& f = ctx.f;
  if (b < 0 || b >= f.domain().size()) throw InputError("letter out of range");
  PrefixCountRelation out;
  out.letter = b;
  const auto& ref = f.image(ctx.seed);
  std::int64_t r = std::count(ref.begin(), ref.end(), b);
  std::int64_t q = static_cast<std::int64_t>(ref.size());
  std::int64_t g = std::gcd(r, q);
  out.r = r / g;
  out.q = q / g;

  const int k = ctx.presentation.k;
  Environment env(k);
  env.add_relation("pr", ctx.relations.pr_weak);
  std::set<Letter> owners;
  for (const auto& [w, l] : ctx.certificate.table)
    if (l.cut) owners.insert(l.letter);
  for (const auto& l : ctx.certificate.prefix_labels)
    if (l.cut) owners.insert(l.letter);

  std::vector<Formula> parts;
  for (Letter c : owners) {
    const std::string name = "blk" + std::to_string(c);
    env.add_relation(name, label_automaton(ctx.presentation, ctx.certificate,
                                           [c](const WindowLabel& l) { return l.cut && l.letter == c; }, "m"));
    const auto& img = f.image(c);
    std::int64_t z = 0;
    for (std::size_t t = 0; t < img.size(); ++t) {
      // n = m + t, q y = r m + q z
      parts.push_back(Formula::rel(name, {term("m")}) && Formula::eq(term("n"), term("m") + cst(static_cast<Value>(t))) &&
                      Formula::eq(static_cast<Value>(out.q) * term("y"),
                                  static_cast<Value>(out.r) * term("m") + cst(static_cast<Value>(out.q * z))));
      if (img[t] == b) ++z;
    }
  }
  Formula phi = Formula::exists({"m"}, Formula::rel("pr", {term("n"), term("m")}) && Formula::disj(std::move(parts)));
  out.relation = compile(phi, env, {"n", "y"});
  if (!is_functional(out.relation, "y"))
    throw InternalError("prefix count relation for '" + f.domain().name(b) + "' is not functional");
  return out;
}

Automaton factor_count_relation(const PrefixCountRelation& pref) {
  Environment env(pref.relation.base());
  env.add_relation("pref", pref.relation);
  // y = F(i+n)
  env.add_relation("ahead", compile(parse_formula("Ej j=i+n & $pref(j,y)").formula, env, {"i", "n", "y"}));
  // z + F(i) = y
  env.add_relation("back", compile(parse_formula("Ex $pref(i,x) & z+x=y").formula, env, {"i", "z", "y"}));
  return compile(parse_formula("Ey $ahead(i,n,y) & $back(i,z,y)").formula, env, {"i", "n", "z"});
}

SignedDifferences difference_relations(const PrefixCountRelation& pref, const Automaton& factor) {
  Environment env(pref.relation.base());
  env.add_relation("pref", pref.relation);
  env.add_relation("fac", factor);
  env.add_relation("up", compile(parse_formula("Ex $pref(n,x) & z=x+d").formula, env, {"n", "z", "d"}));
  env.add_relation("down", compile(parse_formula("Ex $pref(n,x) & x=z+d").formula, env, {"n", "z", "d"}));
  return SignedDifferences{
      compile(parse_formula("Ez $fac(i,n,z) & $up(n,z,d)").formula, env, {"i", "n", "d"}),
      compile(parse_formula("Ez $fac(i,n,z) & $down(n,z,d)").formula, env, {"i", "n", "d"}),
  };
}

std::vector<std::int64_t> attained_difference_set(const SignedDifferences& diffs) {
  std::set<std::int64_t> out;
  for (Value d : finite_values(project_exists(diffs.nonneg, std::vector<std::string>{"i", "n"}))) out.insert(static_cast<std::int64_t>(d));
  for (Value d : finite_values(project_exists(diffs.neg, std::vector<std::string>{"i", "n"}))) out.insert(-static_cast<std::int64_t>(d));
  if (!out.count(0)) throw InternalError("difference set does not contain 0");
  return {out.begin(), out.end()};
}

DifferenceProfile attainable_vectors(const std::vector<SignedDifferences>& diffs,
                                     const std::vector<std::vector<std::int64_t>>& sets) {
  if (diffs.empty() || diffs.size() != sets.size()) throw InputError("one difference relation per letter expected");
  const int k = diffs.front().nonneg.base();
  const std::size_t l = sets.size();
  DifferenceProfile out;
  out.sets = sets;

  // E_{b,d}(i,n), cached
  std::map<std::pair<std::size_t, std::int64_t>, Automaton> cond;
  auto condition = [&](std::size_t b, std::int64_t d) -> const Automaton& {
    auto it = cond.find({b, d});
    if (it != cond.end()) return it->second;
    const auto& rel = d >= 0 ? diffs[b].nonneg : diffs[b].neg;
    Automaton fixed = combine(BoolOp::kAnd, rel, builtin_relation("const", k, {"d"}, static_cast<Value>(d >= 0 ? d : -d)));
    return cond.emplace(std::make_pair(b, d), minimize(project_exists(fixed, "d"))).first->second;
  };

  // candidates: the last coordinate is fixed by the zero sum
  std::vector<std::int64_t> v(l, 0);
  std::function<void(std::size_t)> walk = [&](std::size_t b) {
    if (b + 1 == l) {
      std::int64_t sum = 0;
      for (std::size_t j = 0; j + 1 < l; ++j) sum += v[j];
      v[b] = -sum;
      if (!std::binary_search(sets[b].begin(), sets[b].end(), v[b])) return;
      Automaton a = Automaton::universal(k, {"i", "n"});
      for (std::size_t j = 0; j + 1 < l; ++j) a = minimize(combine(BoolOp::kAnd, a, condition(j, v[j])));
      if (l == 1) a = condition(0, 0);
      Automaton att = minimize(reorder_tracks(project_exists(a, "i"), {"n"}));
      if (!is_empty(att)) out.vectors.push_back(AttainedVector{v, std::move(att)});
      return;
    }
    for (std::int64_t d : sets[b]) {
      v[b] = d;
      walk(b + 1);
    }
  };
  walk(0);
  for (const auto& av : out.vectors)
    if (std::all_of(av.v.begin(), av.v.end(), [](std::int64_t x) { return x == 0; }) && !is_universal(av.automaton))
      throw InternalError("zero difference vector is not attained at every length");
  return out;
}

std::vector<std::vector<std::int64_t>> vectors_at(const DifferenceProfile& profile, Value n) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& av : profile.vectors)
    if (av.automaton.accepts({n})) out.push_back(av.v);
  return out;
}

Dfao abelian_dfao(const DifferenceProfile& profile) {
  std::vector<Automaton> preds;
  for (const auto& av : profile.vectors) preds.push_back(av.automaton);
  return minimize_dfao(dfao_from_predicates(preds, [](const std::vector<bool>& bits) {
    return static_cast<std::int64_t>(std::count(bits.begin(), bits.end(), true));
  }));
}

namespace {

Formula periodicity_body() {
  return parse_formula("p>0 & An (n>=i => D[n]=D[n+p])").formula;
}

Environment sequence_env(const Dfao& d) {
  Environment env(d.base());
  env.add_sequence("D", d);
  return env;
}

}  // namespace

bool is_ultimately_periodic(const Dfao& d) {
  return decide(Formula::exists({"p", "i"}, periodicity_body()), sequence_env(d));
}

PeriodWitness period_witness(const Dfao& d) {
  auto env = sequence_env(d);
  Automaton pairs = compile(periodicity_body(), env, {"p", "i"});
  auto p = min_accepted(project_exists(pairs, "i"));
  if (!p) throw InputError("sequence is not ultimately periodic");
  Automaton fixed = combine(BoolOp::kAnd, pairs, builtin_relation("const", d.base(), {"p"}, *p));
  auto i = min_accepted(reorder_tracks(project_exists(fixed, "p"), {"i"}));
  return PeriodWitness{*i, *p};
}

ComplexityDescription describe_sequence(const Dfao& d) {
  if (!is_ultimately_periodic(d)) return ComplexityDescription{true, {}, {}};
  auto w = period_witness(d);
  ComplexityDescription out;
  for (Value n = 0; n < w.preperiod; ++n) out.preperiod.push_back(dfao_output(d, n));
  for (Value n = w.preperiod; n < w.preperiod + w.period; ++n) out.period.push_back(dfao_output(d, n));
  return out;
}

ComplexityDescription describe_values(const std::vector<std::int64_t>& head, std::size_t i, std::size_t p) {
  if (p == 0 || head.size() < i + p) throw InputError("need the first i+p values");
  auto at = [&](std::size_t n) { return n < i + p ? head[n] : head[i + (n - i) % p]; };
  std::size_t per = p;
  for (std::size_t q = 1; q < p; ++q) {
    if (p % q) continue;
    bool ok = true;
    for (std::size_t n = i; n < i + p && ok; ++n) ok = at(n) == at(n + q);
    if (ok) {
      per = q;
      break;
    }
  }
  std::size_t pre = i;
  while (pre > 0 && at(pre - 1) == at(pre - 1 + per)) --pre;
  ComplexityDescription out;
  for (std::size_t n = 0; n < pre; ++n) out.preperiod.push_back(at(n));
  for (std::size_t n = pre; n < pre + per; ++n) out.period.push_back(at(n));
  return out;
}

ComplexityDescription periodic_word_complexity(const Word& x, std::size_t preperiod, std::size_t period,
                                               int alphabet_size) {
  if (period == 0) throw InputError("period must be positive");
  const std::size_t i = preperiod, p = period;
  auto letter = [&](std::size_t n) { return n < i + p ? x.at(n) : x.at(i + (n - i) % p); };
  // windows starting below i+p cover every factor; lengths below i+p determine the rest
  const std::size_t starts = i + p, lengths = i + p;
  std::vector<std::int64_t> head;
  const auto s = static_cast<std::size_t>(alphabet_size);
  std::vector<std::vector<std::int64_t>> psi(starts, std::vector<std::int64_t>(s, 0));
  for (std::size_t n = 0; n < lengths; ++n) {
    std::set<std::vector<std::int64_t>> seen(psi.begin(), psi.end());
    head.push_back(static_cast<std::int64_t>(seen.size()));
    for (std::size_t j = 0; j < starts; ++j) ++psi[j][static_cast<std::size_t>(letter(j + n))];
  }
  return describe_values(head, i, p);
}

namespace {

std::string join(const std::vector<std::int64_t>& v, const char* sep) {
  std::string out;
  for (std::size_t j = 0; j < v.size(); ++j) out += (j ? sep : "") + std::to_string(v[j]);
  return out;
}

}  // namespace

std::string ComplexityDescription::compact() const {
  if (aperiodic) return "aperiodic";
  bool digits = true;
  for (auto x : preperiod) digits = digits && x >= 0 && x < 10;
  for (auto x : period) digits = digits && x >= 0 && x < 10;
  const char* sep = digits ? "" : ",";
  return join(preperiod, sep) + "(" + join(period, sep) + ")^w";
}

std::string ComplexityDescription::spaced() const {
  if (aperiodic) return "aperiodic";
  std::string pre = join(preperiod, " ");
  return (pre.empty() ? "" : pre + " ") + "(" + join(period, " ") + ")^w";
}

}  // namespace pcabel
