#include "pcabel/cutting.hpp"

#include <algorithm>

#include "pcabel/error.hpp"
#include "pcabel/logic.hpp"

namespace pcabel {

namespace {

// Block owners y0 y1 ... of x = f(y0) f(y1) ..., as letters of f.
std::vector<Letter> block_owners(const Morphism& f, Letter a, std::size_t count) {
  if (!is_parikh_collinear(f)) throw InputError("morphism is not Parikh-collinear");
  if (!is_prolongable(f, a)) throw InputError("morphism is not prolongable on '" + f.domain().name(a) + "'");
  auto kp = kappa_projection(f);
  Word y = fixed_point_prefix(kp.g, kp.from_original[static_cast<std::size_t>(a)], count);
  std::vector<Letter> out;
  out.reserve(y.size());
  for (Letter l : y) out.push_back(kp.to_original[static_cast<std::size_t>(l)]);
  return out;
}

std::size_t min_block(const Morphism& f) {
  std::size_t m = 0;
  for (Letter b : mortal_partition(f).immortal) {
    auto len = f.image(b).size();
    if (m == 0 || len < m) m = len;
  }
  if (m == 0) throw InputError("every letter is mortal");
  return m;
}

}  // namespace

CutEnumeration enumerate_cuts(const Morphism& f, Letter a, Value L) {
  auto owners = block_owners(f, a, static_cast<std::size_t>(L / min_block(f)) + 2);
  CutEnumeration out;
  Value pos = 0;
  for (Letter b : owners) {
    if (pos > L) break;
    out.positions.push_back(pos);
    out.letters.push_back(b);
    pos += f.image(b).size();
  }
  return out;
}

LabelledPrefix labelled_prefix(const Morphism& f, Letter a, std::size_t length) {
  auto immortal = mortal_partition(f).immortal;
  std::vector<Letter> rep(static_cast<std::size_t>(f.domain().size()));
  for (Letter b : immortal) {
    rep[static_cast<std::size_t>(b)] = b;
    for (Letter c : immortal)
      if (c < b && f.image(c) == f.image(b)) {
        rep[static_cast<std::size_t>(b)] = c;
        break;
      }
  }
  auto owners = block_owners(f, a, length / min_block(f) + 2);
  LabelledPrefix out;
  for (Letter b : owners) {
    if (out.word.size() >= length) break;
    const auto& img = f.image(b);
    for (std::size_t t = 0; t < img.size(); ++t) {
      out.word.push_back(img[t]);
      out.labels.push_back(WindowLabel{t == 0, rep[static_cast<std::size_t>(b)], static_cast<std::uint32_t>(t)});
    }
  }
  out.word.resize(length);
  out.labels.resize(length);
  return out;
}

Automaton label_automaton(const UniformPresentation& p, const RecognizabilityCertificate& cert,
                          const std::function<bool(const WindowLabel&)>& pred, const std::string& track) {
  const int k = p.k;
  const int C = cert.C;
  if (cert.prefix_labels.size() != static_cast<std::size_t>(C)) throw InputError("certificate prefix has the wrong length");
  Environment env(k);
  env.add_sequence("X", dfao_of_word(p));
  const std::string m = track == "_w" ? "_v" : "_w";
  std::map<std::pair<int, Letter>, Automaton> atoms;
  auto atom = [&](int d, Letter c) -> const Automaton& {
    auto it = atoms.find({d, c});
    if (it == atoms.end())
      it = atoms.emplace(std::make_pair(d, c), compile(Formula::seq("X", var(m) + cst(static_cast<Value>(d)), c), env, {m}))
               .first;
    return it->second;
  };
  Automaton windows = Automaton::empty(k, {m});
  for (const auto& [w, label] : cert.table) {
    if (static_cast<int>(w.size()) != 2 * C + 1) throw InputError("certificate window has the wrong length");
    if (!pred(label)) continue;
    Automaton a = atom(0, w[0]);
    for (int d = 1; d <= 2 * C; ++d) a = combine(BoolOp::kAnd, a, atom(d, w[static_cast<std::size_t>(d)]));
    windows = minimize(combine(BoolOp::kOr, windows, a));
  }
  // centre n = start + C
  Automaton shift = linear_relation(k, {track, m}, {1, -1}, C, LinearCmp::kEq);
  Automaton out = project_exists(combine(BoolOp::kAnd, shift, windows), m);
  for (int n = 0; n < C; ++n)
    if (pred(cert.prefix_labels[static_cast<std::size_t>(n)]))
      out = combine(BoolOp::kOr, out, builtin_relation("const", k, {track}, static_cast<Value>(n)));
  return minimize(reorder_tracks(out, {track}));
}

Automaton cut_automaton(const UniformPresentation& p, const RecognizabilityCertificate& cert) {
  return label_automaton(p, cert, [](const WindowLabel& l) { return l.cut; });
}

CutRelations ne_pr_relations(const Automaton& cuts) {
  if (cuts.track_count() != 1) throw InputError("cut automaton must have one track");
  if (!cuts.accepts({0})) throw InputError("cut automaton must accept 0");
  if (is_finite(cuts)) throw InputError("cut set is finite");
  Environment env(cuts.base());
  env.add_relation("cut", cuts);
  auto rel = [&](const char* text) { return compile(parse_formula(text).formula, env, {"i", "m"}); };
  return CutRelations{
      rel("$cut(m) & m>=i & Aj (i<=j & j<m) => ~$cut(j)"),
      rel("(i=0 & m=0) | ($cut(m) & m<i & Aj (m<j & j<i) => ~$cut(j))"),
      rel("$cut(m) & m<=i & Aj (m<j & j<=i) => ~$cut(j)"),
  };
}

}  // namespace pcabel
