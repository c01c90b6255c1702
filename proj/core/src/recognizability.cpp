#include "pcabel/recognizability.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "pcabel/cutting.hpp"
#include "pcabel/error.hpp"

namespace pcabel {

namespace {

mpz_class power(const mpz_class& base, const mpz_class& exp) {
  if (!exp.fits_ulong_p()) throw ResourceLimitError("resource limit: exponent too large");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
  return out;
}

mpz_class parse_natural(const std::string& s) {
  mpz_class v;
  if (s.empty() || v.set_str(s, 10) != 0 || v < 0) throw InputError("not a natural number: '" + s + "'");
  return v;
}

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

std::int64_t min_immortal_length(const Morphism& f) {
  auto mortal = mortal_letters(f);
  std::int64_t m = -1;
  for (Letter b = 0; b < f.domain().size(); ++b) {
    if (mortal[static_cast<std::size_t>(b)]) continue;
    auto len = static_cast<std::int64_t>(f.image(b).size());
    if (m < 0 || len < m) m = len;
  }
  if (m < 0) throw InputError("every letter is mortal");
  return m;
}

}  // namespace

std::string bound_linear_recurrence(const Morphism& sigma) {
  if (!is_primitive(sigma)) throw InputError("linear recurrence bound needs a primitive morphism");
  const auto l = static_cast<unsigned long>(sigma.domain().size());
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(sigma.max_image_length()), 4 * l * l);
  return out.get_str();
}

std::string bound_K_f(const Morphism& f, const std::string& K_g) {
  mpz_class num = parse_natural(K_g) * static_cast<unsigned long>(f.max_image_length());
  mpz_class den = static_cast<unsigned long>(min_immortal_length(f));
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q.get_str();
}

BoundReport bound_recognizability(const Morphism& f, std::uint64_t exact_bit_budget) {
  BoundReport r;
  r.f_norm = static_cast<std::int64_t>(f.max_image_length());
  r.f_min_immortal = min_immortal_length(f);
  r.alphabet_size = f.domain().size();
  const unsigned long F = static_cast<unsigned long>(r.f_norm);
  const unsigned long l = static_cast<unsigned long>(r.alphabet_size);
  if (l >= 32) throw ResourceLimitError("resource limit: alphabet too large for the recognizability bound");

  if (is_parikh_collinear(f)) {
    auto kp = kappa_projection(f);
    if (is_primitive(kp.g)) {
      r.K_sigma_bound = bound_linear_recurrence(kp.g);
      r.K_f_bound = bound_K_f(f, *r.K_sigma_bound);
    }
  }

  const unsigned long inner_exp = ((1ul << l) + 1) * l;
  std::ostringstream expr;
  expr << "4*(" << F << "^" << 4 * l * l << "+1)*" << l << "^2*" << F << "^(" << 2 * l + 1 << "*(2+" << F << "^"
       << inner_exp << "))";
  r.rec_expression = expr.str();

  mpz_class A;
  mpz_ui_pow_ui(A.get_mpz_t(), F, 4 * l * l);
  mpz_class P;
  if (F > 1 && static_cast<double>(inner_exp) * std::log2(static_cast<double>(F)) > 1e6)
    throw ResourceLimitError("resource limit: recognizability bound " + r.rec_expression + " is beyond the big-integer budget");
  mpz_ui_pow_ui(P.get_mpz_t(), F, inner_exp);
  mpz_class E = (2 * l + 1) * (2 + P);
  mpz_class head = 4 * (A + 1) * l * l;

  // bits of F^E
  double log2F = F > 1 ? std::log2(static_cast<double>(F)) : 0.0;
  double est_bits = E.get_d() * log2F + static_cast<double>(mpz_sizeinbase(head.get_mpz_t(), 2));
  if (est_bits <= static_cast<double>(exact_bit_budget)) {
    mpz_class v = head * power(F, E);
    r.rec_bound = v.get_str();
    r.rec_digits = std::to_string(r.rec_bound->size());
    return r;
  }
  // digits = floor(log10 head + E log10 F) + 1
  const auto prec = static_cast<mpfr_prec_t>(mpz_sizeinbase(E.get_mpz_t(), 2) + 192);
  Real t(prec), u(prec);
  mpfr_set_ui(t.get(), F, MPFR_RNDN);
  mpfr_log10(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_z(t.get(), t.get(), E.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(u.get(), head.get_mpz_t(), MPFR_RNDN);
  mpfr_log10(u.get(), u.get(), MPFR_RNDN);
  mpfr_add(t.get(), t.get(), u.get(), MPFR_RNDN);
  mpfr_floor(t.get(), t.get());
  mpz_class digits;
  mpfr_get_z(digits.get_mpz_t(), t.get(), MPFR_RNDN);
  r.rec_digits = mpz_class(digits + 1).get_str();
  return r;
}

std::string BoundReport::to_text(std::size_t display_threshold) const {
  auto show = [&](const std::string& v) {
    return v.size() <= display_threshold ? v : "(" + std::to_string(v.size()) + " digits)";
  };
  std::ostringstream out;
  out << "|f| = " << f_norm << ", min |f(b)| over immortal b = " << f_min_immortal << ", l = " << alphabet_size
      << "\n";
  out << "linear recurrence bound of g: " << (K_sigma_bound ? show(*K_sigma_bound) : "n/a (g not primitive)") << "\n";
  out << "K_f bound: " << (K_f_bound ? show(*K_f_bound) : "n/a") << "\n";
  out << "recognizability bound: " << rec_expression << " = ";
  if (rec_bound && rec_bound->size() <= display_threshold)
    out << *rec_bound;
  else
    out << "(" << rec_digits << " digits)";
  out << "\n";
  return out.str();
}

bool power_free_check(const Morphism& f, Letter a, int e, std::size_t N) {
  if (e < 1) throw InputError("exponent must be positive");
  Word x = fixed_point_prefix(f, a, N);
  if (e == 1) return x.empty();
  const std::size_t n = x.size();
  for (std::size_t p = 1; p * static_cast<std::size_t>(e) <= n; ++p) {
    const std::size_t need = static_cast<std::size_t>(e - 1) * p;
    std::size_t run = 0;
    for (std::size_t i = 0; i + p < n; ++i) {
      run = x[i] == x[i + p] ? run + 1 : 0;
      if (run >= need) return false;
    }
  }
  return true;
}

std::set<Word> return_words(const Morphism& f, Letter a, const Word& u, std::size_t N) {
  if (u.empty()) throw InputError("return words need a non-empty factor");
  Word x = fixed_point_prefix(f, a, N);
  std::vector<std::size_t> occ;
  for (std::size_t i = 0; i + u.size() <= x.size(); ++i)
    if (std::equal(u.begin(), u.end(), x.begin() + static_cast<std::ptrdiff_t>(i))) occ.push_back(i);
  if (occ.size() < 2) throw InconclusiveError("insufficient data: the factor occurs fewer than twice in the prefix");
  std::set<Word> out;
  for (std::size_t j = 0; j + 1 < occ.size(); ++j)
    out.emplace(x.begin() + static_cast<std::ptrdiff_t>(occ[j]), x.begin() + static_cast<std::ptrdiff_t>(occ[j + 1]));
  return out;
}

std::set<Word> factors_of_length(const UniformPresentation& p, std::size_t m) {
  if (m == 0) return {Word{}};
  const auto& h = p.uniform;
  std::set<std::pair<Letter, Letter>> pairs;
  std::vector<std::pair<Letter, Letter>> todo;
  auto add_pairs = [&](const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (pairs.emplace(w[i], w[i + 1]).second) todo.emplace_back(w[i], w[i + 1]);
  };
  add_pairs(h.image(p.start));
  while (!todo.empty()) {
    auto [b, c] = todo.back();
    todo.pop_back();
    Word w = h.image(b);
    const auto& hc = h.image(c);
    w.insert(w.end(), hc.begin(), hc.end());
    add_pairs(w);
  }
  int j = 0;
  for (std::size_t span = 1; span < m; span *= static_cast<std::size_t>(p.k)) ++j;
  std::set<Word> out;
  for (auto [b, c] : pairs) {
    Word w{b, c};
    for (int r = 0; r < j; ++r) w = pcabel::apply(h, w);
    for (std::size_t i = 0; i + m <= w.size(); ++i) {
      Word f;
      for (std::size_t t = i; t < i + m; ++t) f.push_back(p.coding.image(w[t])[0]);
      out.insert(std::move(f));
    }
  }
  return out;
}

namespace {

struct ScanResult {
  std::optional<WindowConflict> conflict;
  std::map<Word, WindowLabel> table;
};

ScanResult scan_windows(const LabelledPrefix& lp, int C, std::size_t L) {
  const auto c = static_cast<std::size_t>(C);
  if (lp.word.size() < L + c + 1) throw InternalError("labelled prefix too short");
  std::unordered_map<std::u32string, std::pair<WindowLabel, std::size_t>> seen;
  ScanResult out;
  std::u32string key(2 * c + 1, U'\0');
  for (std::size_t n = c; n <= L; ++n) {
    for (std::size_t d = 0; d < key.size(); ++d) key[d] = static_cast<char32_t>(lp.word[n - c + d]);
    const auto& label = lp.labels[n];
    auto [it, fresh] = seen.try_emplace(key, label, n);
    if (fresh || it->second.first == label) continue;
    Word w(lp.word.begin() + static_cast<std::ptrdiff_t>(n - c), lp.word.begin() + static_cast<std::ptrdiff_t>(n + c + 1));
    if (!out.conflict || w < out.conflict->window)
      out.conflict = WindowConflict{C, std::move(w), it->second.second, n, it->second.first, label};
  }
  if (out.conflict) return out;
  for (const auto& [k, v] : seen) out.table.emplace(Word(k.begin(), k.end()), v.first);
  return out;
}

}  // namespace

RecognizabilityCertificate certify_recognizability(const Morphism& f, Letter a, const UniformPresentation& p,
                                                   const CertifyOptions& options) {
  if (options.c_max < 0) throw InputError("C_max must be non-negative");
  std::size_t L = options.depth ? options.depth
                                : std::max<std::size_t>(100000, 50 * (2 * static_cast<std::size_t>(options.c_max) + 1));
  RecognizabilityCertificate cert;
  int C = 0;
  for (int attempt = 0;; ++attempt) {
    auto lp = labelled_prefix(f, a, L + static_cast<std::size_t>(options.c_max) + 2);
    for (; C <= options.c_max; ++C) {
      auto scan = scan_windows(lp, C, L);
      if (scan.conflict) {
        cert.rejected.push_back(*scan.conflict);
        continue;
      }
      auto exact = factors_of_length(p, 2 * static_cast<std::size_t>(C) + 1);
      for (const auto& [w, label] : scan.table)
        if (!exact.count(w)) throw InternalError("certificate window is not a factor of the presentation");
      if (exact.size() != scan.table.size()) break;  // some factor not seen yet
      cert.C = C;
      cert.table = std::move(scan.table);
      cert.prefix_labels.assign(lp.labels.begin(), lp.labels.begin() + C);
      cert.depth = L;
      cert.stable = !scan_windows(lp, C + 1, L).conflict;
      return cert;
    }
    if (C > options.c_max) {
      const auto& last = cert.rejected.back();
      throw InconclusiveError("no recognizability constant up to " + std::to_string(options.c_max) + " certifies: " +
                              describe_conflict(last, f.domain()));
    }
    if (attempt >= options.max_doublings)
      throw InconclusiveError("recognizability table incomplete at depth " + std::to_string(L) + " for C=" +
                              std::to_string(C));
    L *= 2;
  }
}

std::string describe_conflict(const WindowConflict& c, const Alphabet& alphabet) {
  auto label = [&](const WindowLabel& l) {
    return std::string(l.cut ? "cut, " : "") + "block " + alphabet.name(l.letter) + " offset " + std::to_string(l.offset);
  };
  return "C=" + std::to_string(c.C) + ": window " + alphabet.spell(c.window) + " centered at " +
         std::to_string(c.first) + " (" + label(c.first_label) + ") and at " + std::to_string(c.second) + " (" +
         label(c.second_label) + ")";
}

std::string certificate_to_json(const RecognizabilityCertificate& cert, const Alphabet& alphabet) {
  using nlohmann::json;
  auto label = [&](const WindowLabel& l) {
    return json{{"cut", l.cut}, {"letter", alphabet.name(l.letter)}, {"offset", l.offset}};
  };
  json j;
  j["C"] = cert.C;
  j["depth"] = cert.depth;
  j["stable"] = cert.stable;
  j["prefix"] = json::array();
  for (const auto& l : cert.prefix_labels) j["prefix"].push_back(label(l));
  j["table"] = json::array();
  for (const auto& [w, l] : cert.table) {
    auto e = label(l);
    e["window"] = alphabet.spell(w);
    j["table"].push_back(e);
  }
  j["rejected"] = json::array();
  for (const auto& c : cert.rejected)
    j["rejected"].push_back({{"C", c.C},
                             {"window", alphabet.spell(c.window)},
                             {"first", c.first},
                             {"second", c.second},
                             {"first_label", label(c.first_label)},
                             {"second_label", label(c.second_label)}});
  return j.dump(2);
}

RecognizabilityCertificate certificate_from_json(std::string_view text, const Alphabet& alphabet) {
  using nlohmann::json;
  try {
    json j = json::parse(text);
    auto label = [&](const json& e) {
      Word l = alphabet.parse_word(e.at("letter").get<std::string>());
      if (l.size() != 1) throw InputError("certificate letter must be a single letter");
      return WindowLabel{e.at("cut").get<bool>(), l[0], e.at("offset").get<std::uint32_t>()};
    };
    RecognizabilityCertificate cert;
    cert.C = j.at("C").get<int>();
    cert.depth = j.at("depth").get<std::size_t>();
    cert.stable = j.at("stable").get<bool>();
    for (const auto& e : j.at("prefix")) cert.prefix_labels.push_back(label(e));
    for (const auto& e : j.at("table")) {
      Word w = alphabet.parse_word(e.at("window").get<std::string>());
      if (w.size() != 2 * static_cast<std::size_t>(cert.C) + 1) throw InputError("certificate window has the wrong length");
      cert.table.emplace(std::move(w), label(e));
    }
    if (j.contains("rejected"))
      for (const auto& e : j.at("rejected"))
        cert.rejected.push_back(WindowConflict{e.at("C").get<int>(), alphabet.parse_word(e.at("window").get<std::string>()),
                                               e.at("first").get<std::size_t>(), e.at("second").get<std::size_t>(),
                                               label(e.at("first_label")), label(e.at("second_label"))});
    if (cert.prefix_labels.size() != static_cast<std::size_t>(cert.C)) throw InputError("certificate prefix has the wrong length");
    return cert;
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate JSON: ") + e.what());
  }
}

}  // namespace pcabel
