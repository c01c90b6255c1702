#include "pcabel/morphism.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "pcabel/error.hpp"

namespace pcabel {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InputError("alphabet must not be empty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("letter names must not be empty");
    if (!seen.insert(n).second) throw InputError("duplicate letter '" + n + "'");
  }
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Letter>(i);
  return std::nullopt;
}

Letter Alphabet::index_of(std::string_view name) const {
  if (auto l = find(name)) return *l;
  throw InputError("letter '" + std::string(name) + "' is not in the alphabet");
}

std::string Alphabet::spell(const Word& w) const {
  std::string out;
  for (Letter l : w) {
    const auto& n = name(l);
    if (n.size() == 1) {
      out += n;
    } else {
      out += '[';
      out += n;
      out += ']';
    }
  }
  return out;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[') {
      auto close = text.find(']', i);
      if (close == std::string_view::npos) throw InputError("unterminated '[' in word");
      w.push_back(index_of(text.substr(i + 1, close - i - 1)));
      i = close;
    } else {
      w.push_back(index_of(text.substr(i, 1)));
    }
  }
  return w;
}

Morphism::Morphism(Alphabet domain, Alphabet codomain, std::vector<Word> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != domain_.size())
    throw InputError("every domain letter needs exactly one image");
  for (const auto& img : images_)
    for (Letter l : img)
      if (l < 0 || l >= codomain_.size()) throw InputError("image letter outside codomain");
}

Morphism::Morphism(Alphabet alphabet, std::vector<Word> images)
    : Morphism(alphabet, alphabet, std::move(images)) {}

std::size_t Morphism::max_image_length() const {
  std::size_t best = 0;
  for (const auto& img : images_) best = std::max(best, img.size());
  return best;
}

std::size_t Morphism::min_image_length() const {
  std::size_t best = images_.empty() ? 0 : images_.front().size();
  for (const auto& img : images_) best = std::min(best, img.size());
  return best;
}

std::string Morphism::to_string() const {
  std::string out;
  for (int l = 0; l < domain_.size(); ++l) {
    if (l) out += ' ';
    const auto& n = domain_.name(l);
    out += n.size() == 1 ? n : "[" + n + "]";
    out += "->";
    out += codomain_.spell(images_[static_cast<std::size_t>(l)]);
  }
  return out;
}

namespace {

struct Token {
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1, column = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
    } else {
      Token t{{}, line, column};
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
        t.text += text[i++];
        ++column;
      }
      tokens.push_back(std::move(t));
    }
  }
  return tokens;
}

[[noreturn]] void parse_fail(const Token& t, const std::string& why) {
  std::ostringstream os;
  os << "morphism parse error at line " << t.line << ", column " << t.column << ": " << why
     << " in '" << t.text << "'";
  throw InputError(os.str());
}

}  // namespace

Morphism parse_morphism(std::string_view text) {
  auto tokens = tokenize(text);
  if (tokens.empty()) throw InputError("morphism parse error: no rules given");
  std::vector<std::string> names;
  std::vector<std::string> raw_images;
  for (const auto& t : tokens) {
    auto arrow = t.text.find("->");
    if (arrow == std::string::npos) parse_fail(t, "expected 'letter->image'");
    std::string lhs = t.text.substr(0, arrow);
    if (lhs.size() >= 2 && lhs.front() == '[' && lhs.back() == ']') lhs = lhs.substr(1, lhs.size() - 2);
    if (lhs.empty()) parse_fail(t, "missing letter before '->'");
    if (lhs.size() != 1 && t.text.front() != '[') parse_fail(t, "letters are single characters");
    if (std::find(names.begin(), names.end(), lhs) != names.end())
      parse_fail(t, "letter '" + lhs + "' has two rules");
    names.push_back(lhs);
    raw_images.push_back(t.text.substr(arrow + 2));
  }
  Alphabet alphabet(names);
  std::vector<Word> images;
  for (std::size_t i = 0; i < raw_images.size(); ++i) {
    try {
      images.push_back(alphabet.parse_word(raw_images[i]));
    } catch (const InputError& e) {
      parse_fail(tokens[i], std::string("unknown letter in image (") + e.what() + ")");
    }
  }
  return Morphism(alphabet, std::move(images));
}

bool LetterPartition::is_mortal(Letter l) const {
  return std::find(mortal.begin(), mortal.end(), l) != mortal.end();
}

Word apply(const Morphism& m, const Word& w) {
  Word out;
  for (Letter l : w) {
    if (l < 0 || l >= m.domain().size()) throw InputError("domain mismatch: letter outside morphism domain");
    const auto& img = m.image(l);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

ParikhVector parikh(const Word& w, int alphabet_size) {
  ParikhVector v(static_cast<std::size_t>(alphabet_size), 0);
  for (Letter l : w) ++v.at(static_cast<std::size_t>(l));
  return v;
}

Matrix adjacency_matrix(const Morphism& m) {
  if (!m.is_endomorphism()) throw InputError("shape error: adjacency matrix needs an endomorphism");
  auto n = static_cast<std::size_t>(m.domain().size());
  Matrix mat(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t c = 0; c < n; ++c)
    for (Letter b : m.image(static_cast<Letter>(c))) ++mat[static_cast<std::size_t>(b)][c];
  return mat;
}

std::optional<CollinearityWitness> collinearity_witness(const Morphism& m) {
  int n = m.domain().size();
  int rows = m.codomain().size();
  std::vector<ParikhVector> cols;
  for (int c = 0; c < n; ++c) cols.push_back(parikh(m.image(c), rows));
  for (int c1 = 0; c1 < n; ++c1)
    for (int c2 = c1 + 1; c2 < n; ++c2)
      for (int r1 = 0; r1 < rows; ++r1)
        for (int r2 = r1 + 1; r2 < rows; ++r2) {
          auto u = static_cast<std::size_t>(c1), v = static_cast<std::size_t>(c2);
          auto a = static_cast<std::size_t>(r1), b = static_cast<std::size_t>(r2);
          std::int64_t minor = cols[u][a] * cols[v][b] - cols[u][b] * cols[v][a];
          if (minor != 0) return CollinearityWitness{c1, c2, r1, r2, minor};
        }
  return std::nullopt;
}

bool is_parikh_collinear(const Morphism& m) {
  if (!m.is_endomorphism()) return false;
  return !collinearity_witness(m).has_value();
}

std::int64_t eigenvalue(const Morphism& m) {
  if (!is_parikh_collinear(m)) throw InputError("classification error: morphism is not Parikh-collinear");
  std::int64_t k = 0;
  for (int b = 0; b < m.domain().size(); ++b)
    k += std::count(m.image(b).begin(), m.image(b).end(), b);
  return k;
}

std::vector<bool> mortal_letters(const Morphism& m) {
  auto n = static_cast<std::size_t>(m.domain().size());
  std::vector<bool> mortal(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (mortal[b]) continue;
      const auto& img = m.image(static_cast<Letter>(b));
      if (std::all_of(img.begin(), img.end(), [&](Letter l) { return mortal[static_cast<std::size_t>(l)]; })) {
        mortal[b] = true;
        changed = true;
      }
    }
  }
  return mortal;
}

LetterPartition mortal_partition(const Morphism& m) {
  if (!is_parikh_collinear(m)) throw InputError("classification error: morphism is not Parikh-collinear");
  LetterPartition p;
  int n = m.domain().size();
  for (int b = 0; b < n; ++b) (m.image(b).empty() ? p.mortal : p.immortal).push_back(b);
  auto truly_mortal = mortal_letters(m);
  for (Letter b : p.immortal) {
    if (truly_mortal[static_cast<std::size_t>(b)])
      throw InputError("classification error: letter '" + m.domain().name(b) +
                       "' has a non-empty image but is mortal");
  }
  if (!p.immortal.empty()) {
    auto ref = parikh(m.image(p.immortal.front()), n);
    for (Letter b : p.immortal) {
      auto v = parikh(m.image(b), n);
      std::int64_t ref_len = std::accumulate(ref.begin(), ref.end(), std::int64_t{0});
      std::int64_t len = std::accumulate(v.begin(), v.end(), std::int64_t{0});
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] * ref_len != ref[i] * len)
          throw InputError("classification error: image of '" + m.domain().name(b) +
                           "' is not a multiple of the reference image");
    }
  }
  return p;
}

KappaProjection kappa_projection(const Morphism& m) {
  auto part = mortal_partition(m);
  if (part.immortal.empty()) throw InputError("no fixed point: every letter is erased");
  const auto& A = m.domain();
  std::vector<std::string> b_names;
  KappaProjection out;
  out.from_original.assign(static_cast<std::size_t>(A.size()), -1);
  for (Letter b : part.immortal) {
    out.from_original[static_cast<std::size_t>(b)] = static_cast<int>(out.to_original.size());
    out.to_original.push_back(b);
    b_names.push_back(A.name(b));
  }
  Alphabet B(b_names);
  std::vector<Word> kappa_images;
  for (int c = 0; c < A.size(); ++c) {
    int idx = out.from_original[static_cast<std::size_t>(c)];
    kappa_images.push_back(idx < 0 ? Word{} : Word{idx});
  }
  out.kappa = Morphism(A, B, std::move(kappa_images));
  std::vector<Word> g_images;
  for (Letter b : part.immortal) g_images.push_back(pcabel::apply(out.kappa, m.image(b)));
  out.g = Morphism(B, std::move(g_images));
  return out;
}

bool is_primitive(const Morphism& m, std::optional<int> cutoff) {
  auto mat = adjacency_matrix(m);
  auto n = mat.size();
  int limit = cutoff.value_or(static_cast<int>((n - 1) * (n - 1) + 1));
  using BoolMat = std::vector<std::vector<char>>;
  BoolMat base(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = mat[i][j] > 0;
  BoolMat power = base;
  for (int e = 1; e <= limit; ++e) {
    bool positive = true;
    for (const auto& row : power)
      for (char v : row) positive = positive && v;
    if (positive) return true;
    BoolMat next(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (power[i][k])
          for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] || base[k][j];
    power = std::move(next);
  }
  return false;
}

bool is_prolongable(const Morphism& m, Letter a) {
  if (!m.is_endomorphism()) return false;
  const auto& img = m.image(a);
  if (img.empty() || img.front() != a) return false;
  auto mortal = mortal_letters(m);
  return std::any_of(img.begin() + 1, img.end(),
                     [&](Letter l) { return !mortal[static_cast<std::size_t>(l)]; });
}

Word fixed_point_prefix(const Morphism& m, Letter a, std::size_t n) {
  if (!is_prolongable(m, a))
    throw InputError("morphism is not prolongable on '" + m.domain().name(a) + "'");
  Word w{a};
  while (w.size() < n) {
    Word next;
    next.reserve(std::min<std::size_t>(n, w.size() * m.max_image_length()));
    for (Letter l : w) {
      const auto& img = m.image(l);
      next.insert(next.end(), img.begin(), img.end());
      if (next.size() >= n) break;
    }
    w = std::move(next);
  }
  w.resize(n);
  return w;
}

Restriction restrict_to_reachable(const Morphism& m, Letter a) {
  auto n = static_cast<std::size_t>(m.domain().size());
  std::vector<bool> seen(n, false);
  std::vector<Letter> stack{a};
  seen[static_cast<std::size_t>(a)] = true;
  while (!stack.empty()) {
    Letter l = stack.back();
    stack.pop_back();
    for (Letter c : m.image(l))
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = true;
        stack.push_back(c);
      }
  }
  Restriction r;
  std::vector<int> remap(n, -1);
  std::vector<std::string> names;
  for (std::size_t l = 0; l < n; ++l)
    if (seen[l]) {
      remap[l] = static_cast<int>(r.to_original.size());
      r.to_original.push_back(static_cast<Letter>(l));
      names.push_back(m.domain().name(static_cast<Letter>(l)));
    }
  std::vector<Word> images;
  for (Letter l : r.to_original) {
    Word img;
    for (Letter c : m.image(l)) img.push_back(remap[static_cast<std::size_t>(c)]);
    images.push_back(std::move(img));
  }
  r.morphism = Morphism(Alphabet(names), std::move(images));
  return r;
}

Morphism identity_morphism(const Alphabet& alphabet) {
  std::vector<Word> images;
  for (int l = 0; l < alphabet.size(); ++l) images.push_back(Word{l});
  return Morphism(alphabet, std::move(images));
}

}  // namespace pcabel
