#include "pcabel/uniformizer.hpp"

#include <algorithm>
#include <map>

#include "pcabel/error.hpp"

namespace pcabel {

namespace {

Alphabet numbered(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return Alphabet(std::move(names));
}

}  // namespace

UniformPresentation uniformize(const Morphism& f, Letter a) {
  if (!is_parikh_collinear(f)) throw InputError("uniformize: morphism is not Parikh-collinear");
  if (!is_prolongable(f, a))
    throw InputError("uniformize: not prolongable on '" + f.domain().name(a) + "'; use the ultimately periodic path");
  const auto k = eigenvalue(f);
  if (k < 2) throw InputError("uniformize: eigenvalue " + std::to_string(k) + " < 2; use the ultimately periodic path");
  auto kp = kappa_projection(f);

  // block factorization of f(g(b)) for every immortal b
  std::map<std::pair<Letter, int>, int> id;
  std::vector<std::pair<Letter, int>> pairs;
  auto intern = [&](Letter b, int i) {
    auto [it, fresh] = id.try_emplace({b, i}, static_cast<int>(pairs.size()));
    if (fresh) pairs.emplace_back(b, i);
    return it->second;
  };
  auto block_pairs = [&](Letter b) {
    // b is an f-letter (immortal); returns the pair sequence of f(g(b))
    std::vector<std::pair<Letter, int>> out;
    for (Letter c : kp.g.image(kp.from_original[static_cast<std::size_t>(b)])) {
      Letter orig = kp.to_original[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < f.image(orig).size(); ++i) out.emplace_back(orig, static_cast<int>(i));
    }
    if (out.size() != static_cast<std::size_t>(k) * f.image(b).size())
      throw InternalError("uniformize: block length identity fails for '" + f.domain().name(b) + "'");
    return out;
  };

  // reachable pairs from (a,0), then canonical order by (letter, offset)
  intern(a, 0);
  std::map<Letter, std::vector<std::pair<Letter, int>>> blocks;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    auto [b, i] = pairs[q];
    if (!blocks.count(b)) blocks[b] = block_pairs(b);
    const auto& blk = blocks[b];
    for (std::int64_t d = 0; d < k; ++d) {
      auto [c, j] = blk[static_cast<std::size_t>(i * k + d)];
      intern(c, j);
    }
  }
  std::vector<std::pair<Letter, int>> order = pairs;
  std::sort(order.begin(), order.end());
  std::map<std::pair<Letter, int>, int> canon;
  for (std::size_t i = 0; i < order.size(); ++i) canon[order[i]] = static_cast<int>(i);

  const int n = static_cast<int>(order.size());
  std::vector<Word> images, codes;
  for (auto [b, i] : order) {
    const auto& blk = blocks.at(b);
    Word img;
    for (std::int64_t d = 0; d < k; ++d) img.push_back(canon.at(blk[static_cast<std::size_t>(i * k + d)]));
    images.push_back(std::move(img));
    codes.push_back(Word{f.image(b)[static_cast<std::size_t>(i)]});
  }
  Alphabet internal = numbered(n);
  UniformPresentation p;
  p.k = static_cast<int>(k);
  p.uniform = Morphism(internal, std::move(images));
  p.coding = Morphism(internal, f.domain(), std::move(codes));
  p.start = canon.at({a, 0});
  p.pairs = std::move(order);
  if (p.uniform.image(p.start).front() != p.start) throw InternalError("uniformize: start letter is not prolongable");
  return p;
}

UniformPresentation minimize_presentation(const UniformPresentation& p) {
  const int n = p.uniform.domain().size();
  const int k = p.k;
  std::vector<int> block(static_cast<std::size_t>(n));
  {
    std::map<Letter, int> ids;
    for (int l = 0; l < n; ++l)
      block[static_cast<std::size_t>(l)] = ids.try_emplace(p.coding.image(l)[0], static_cast<int>(ids.size())).first->second;
  }
  for (;;) {
    std::map<std::vector<int>, int> sigs;
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
      std::vector<int> sig{block[static_cast<std::size_t>(l)]};
      for (Letter t : p.uniform.image(l)) sig.push_back(block[static_cast<std::size_t>(t)]);
      next[static_cast<std::size_t>(l)] = sigs.try_emplace(std::move(sig), static_cast<int>(sigs.size())).first->second;
    }
    bool stable = sigs.size() == static_cast<std::size_t>(*std::max_element(block.begin(), block.end()) + 1);
    block = std::move(next);
    if (stable) break;
  }
  // BFS renumbering from the start letter, digits in order
  int blocks = *std::max_element(block.begin(), block.end()) + 1;
  std::vector<int> rep(static_cast<std::size_t>(blocks), -1);
  for (int l = 0; l < n; ++l)
    if (rep[static_cast<std::size_t>(block[static_cast<std::size_t>(l)])] < 0) rep[static_cast<std::size_t>(block[static_cast<std::size_t>(l)])] = l;
  std::vector<int> canon(static_cast<std::size_t>(blocks), -1);
  std::vector<int> bfs{block[static_cast<std::size_t>(p.start)]};
  canon[static_cast<std::size_t>(bfs[0])] = 0;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (Letter t : p.uniform.image(rep[static_cast<std::size_t>(bfs[i])])) {
      int tb = block[static_cast<std::size_t>(t)];
      if (canon[static_cast<std::size_t>(tb)] < 0) {
        canon[static_cast<std::size_t>(tb)] = static_cast<int>(bfs.size());
        bfs.push_back(tb);
      }
    }
  const int m = static_cast<int>(bfs.size());
  std::vector<Word> images, codes;
  for (int b : bfs) {
    Word img;
    for (Letter t : p.uniform.image(rep[static_cast<std::size_t>(b)]))
      img.push_back(canon[static_cast<std::size_t>(block[static_cast<std::size_t>(t)])]);
    images.push_back(std::move(img));
    codes.push_back(p.coding.image(rep[static_cast<std::size_t>(b)]));
  }
  Alphabet internal = numbered(m);
  UniformPresentation out;
  out.k = k;
  out.uniform = Morphism(internal, std::move(images));
  out.coding = Morphism(internal, p.coding.codomain(), std::move(codes));
  out.start = 0;
  return out;
}

Dfao dfao_of_word(const UniformPresentation& p) {
  const int n = p.uniform.domain().size();
  std::vector<int> delta;
  std::vector<std::int64_t> outputs;
  for (int l = 0; l < n; ++l) {
    const auto& img = p.uniform.image(l);
    if (static_cast<int>(img.size()) != p.k) throw InputError("presentation is not uniform");
    delta.insert(delta.end(), img.begin(), img.end());
    outputs.push_back(p.coding.image(l).at(0));
  }
  return Dfao(p.k, n, p.start, std::move(delta), std::move(outputs));
}

Word generate(const UniformPresentation& p, std::size_t n) {
  Word w{p.start};
  while (w.size() < n) {
    Word next;
    next.reserve(w.size() * static_cast<std::size_t>(p.k));
    for (Letter l : w) {
      const auto& img = p.uniform.image(l);
      next.insert(next.end(), img.begin(), img.end());
      if (next.size() >= n) break;
    }
    w = std::move(next);
  }
  w.resize(n);
  Word out;
  out.reserve(n);
  for (Letter l : w) out.push_back(p.coding.image(l)[0]);
  return out;
}

std::string export_presentation(const UniformPresentation& p, const std::string& name, const std::string& coding_name) {
  return "morphism " + name + " \"" + p.uniform.to_string() + "\"\nmorphism " + coding_name + " \"" +
         p.coding.to_string() + "\"\n";
}

}  // namespace pcabel
