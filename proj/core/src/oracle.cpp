#include "pcabel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "pcabel/error.hpp"

namespace pcabel::oracle {

Word brute_fixed_point(const Morphism& f, Letter a, std::size_t n) {
  Word w{a};
  while (w.size() < n) {
    Word next;
    for (Letter l : w) {
      const auto& img = f.image(l);
      next.insert(next.end(), img.begin(), img.end());
      if (next.size() >= n) break;
    }
    if (next.empty() || next.front() != a) throw InputError("oracle: image of the seed does not start with it");
    if (next.size() <= w.size()) throw InputError("oracle: fixed point is finite");
    w = std::move(next);
  }
  w.resize(n);
  return w;
}

PrefixBuffer::PrefixBuffer(const Morphism& f, Letter a, std::size_t length)
    : images_(f.images()), seed_(a), sigma_(f.domain().size()) {
  word_ = brute_fixed_point(f, a, std::max<std::size_t>(length, 1));
  rebuild_counts();
}

PrefixBuffer::PrefixBuffer(Word word, int alphabet_size) : sigma_(alphabet_size), word_(std::move(word)) {
  rebuild_counts();
}

void PrefixBuffer::rebuild_counts() {
  const auto s = static_cast<std::size_t>(sigma_);
  counts_.assign((word_.size() + 1) * s, 0);
  for (std::size_t i = 0; i < word_.size(); ++i) {
    std::copy_n(counts_.begin() + static_cast<std::ptrdiff_t>(i * s), s,
                counts_.begin() + static_cast<std::ptrdiff_t>((i + 1) * s));
    ++counts_[(i + 1) * s + static_cast<std::size_t>(word_[i])];
  }
  bytes_.clear();
  if (sigma_ <= 256) bytes_.assign(word_.begin(), word_.end());
}

void PrefixBuffer::ensure(std::size_t length) {
  if (length <= word_.size()) return;
  if (images_.empty()) throw InconclusiveError("oracle: buffer too short and cannot grow");
  Morphism f(Alphabet([&] {
               std::vector<std::string> names;
               for (int i = 0; i < sigma_; ++i) names.push_back(std::to_string(i));
               return names;
             }()),
             images_);
  word_ = brute_fixed_point(f, seed_, std::max(length, 2 * word_.size()));
  rebuild_counts();
}

namespace {

// Distinct window vectors, remembering for each the first start position.
// Vectors are offset around n * (letter frequency) and packed into a bitmap;
// anything outside the box goes to a hash set.
class WindowScan {
 public:
  WindowScan(const PrefixBuffer& buf, std::size_t n) : buf_(buf), n_(n) {
    const auto s = static_cast<std::size_t>(buf.alphabet_size());
    dims_ = s > 0 ? s - 1 : 0;
    center_.resize(dims_);
    const double len = static_cast<double>(buf.size());
    for (std::size_t b = 0; b < dims_; ++b)
      center_[b] = static_cast<std::int64_t>(
          std::llround(static_cast<double>(n) * static_cast<double>(buf.count(buf.size(), static_cast<Letter>(b))) / len));
    std::size_t cells = 1;
    for (std::size_t b = 0; b < dims_; ++b) cells *= kWidth;
    if (dims_ <= 2) bitmap_.assign(cells, 0);
  }

  // Scans windows starting in [from, to); returns the number of new vectors.
  std::size_t scan(std::size_t from, std::size_t to) {
    if (from >= to) return 0;
    std::size_t fresh = 0;
    std::vector<std::int64_t> key(dims_);
    for (std::size_t b = 0; b < dims_; ++b)
      key[b] = buf_.count(from + n_, static_cast<Letter>(b)) - buf_.count(from, static_cast<Letter>(b));
    const std::uint8_t* w = buf_.bytes();
    const auto width = static_cast<std::int64_t>(kWidth);
    const std::int64_t half = width / 2;
    if (w && dims_ >= 1 && !bitmap_.empty()) return scan_small(from, to, key, w);
    for (std::size_t i = from; i < to; ++i) {
      if (i > from) {
        // slide by one: drop x[i-1], add x[i-1+n]
        auto out = static_cast<std::size_t>(w ? w[i - 1] : buf_[i - 1]);
        auto in = static_cast<std::size_t>(w ? w[i - 1 + n_] : buf_[i - 1 + n_]);
        if (out < dims_) --key[out];
        if (in < dims_) ++key[in];
      }
      if (!bitmap_.empty()) {
        std::int64_t cell = 0;
        bool boxed = true;
        for (std::size_t b = 0; b < dims_; ++b) {
          std::int64_t off = key[b] - center_[b] + half;
          boxed = boxed && off >= 0 && off < width;
          cell = cell * width + off;
        }
        if (boxed) {
          char& bit = bitmap_[static_cast<std::size_t>(cell)];
          fresh += bit == 0;
          bit = 1;
          continue;
        }
      }
      std::string packed(reinterpret_cast<const char*>(key.data()), key.size() * sizeof(std::int64_t));
      if (overflow_.insert(std::move(packed)).second) ++fresh;
    }
    return fresh;
  }

 private:
  // Alphabets of two or three letters: scalar coordinates, bitmap first.
  std::size_t scan_small(std::size_t from, std::size_t to, std::vector<std::int64_t>& key, const std::uint8_t* w) {
    const auto width = static_cast<std::int64_t>(kWidth);
    const std::int64_t half = width / 2;
    std::int64_t a = key[0];
    std::int64_t b = dims_ == 2 ? key[1] : 0;
    const std::int64_t ca = center_[0] - half;
    const std::int64_t cb = dims_ == 2 ? center_[1] - half : 0;
    std::size_t fresh = 0;
    for (std::size_t i = from; i < to; ++i) {
      if (i > from) {
        const std::uint8_t out = w[i - 1], in = w[i - 1 + n_];
        a += (in == 0) - (out == 0);
        b += (in == 1) - (out == 1);
      }
      std::int64_t oa = a - ca;
      std::int64_t ob = dims_ == 2 ? b - cb : 0;
      if (oa >= 0 && oa < width && ob >= 0 && ob < width) {
        char& bit = bitmap_[static_cast<std::size_t>(oa * (dims_ == 2 ? width : 1) + ob)];
        if (!bit) {
          bit = 1;
          ++fresh;
        }
        continue;
      }
      key[0] = a;
      if (dims_ == 2) key[1] = b;
      std::string packed(reinterpret_cast<const char*>(key.data()), key.size() * sizeof(std::int64_t));
      if (overflow_.insert(std::move(packed)).second) ++fresh;
    }
    return fresh;
  }

  static constexpr std::size_t kWidth = 256;
  const PrefixBuffer& buf_;
  std::size_t n_;
  std::size_t dims_;
  std::vector<std::int64_t> center_;
  std::vector<char> bitmap_;
  std::unordered_set<std::string> overflow_;
};

}  // namespace

std::int64_t brute_abelian(PrefixBuffer& buffer, std::size_t n, const StabilityPolicy& policy) {
  if (n == 0) return 1;
  std::size_t span = std::max(policy.per_n * n, policy.min_window_span);
  std::size_t limit = span << policy.max_doublings;
  if (buffer.can_grow()) buffer.ensure(limit + n);
  if (buffer.size() < span + n) throw InconclusiveError("oracle: buffer shorter than the stabilization span");
  WindowScan scan(buffer, n);
  std::size_t total = scan.scan(0, span);
  for (int round = 0; round < policy.max_doublings; ++round) {
    std::size_t next = std::min(span * 2, buffer.size() - n + 1);
    std::size_t added = next > span ? scan.scan(span, next) : 0;
    if (added == 0) return static_cast<std::int64_t>(total);
    total += added;
    span = next;
  }
  throw InconclusiveError("oracle: abelian complexity at n=" + std::to_string(n) + " did not stabilize");
}

std::vector<std::int64_t> brute_abelian_range(PrefixBuffer& buffer, std::size_t n_max,
                                              const StabilityPolicy& policy) {
  if (buffer.can_grow())
    buffer.ensure((std::max(policy.per_n * n_max, policy.min_window_span) << policy.max_doublings) + n_max);
  std::vector<std::int64_t> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(brute_abelian(buffer, n, policy));
  return out;
}

std::set<std::vector<std::int64_t>> brute_difference_vectors(const PrefixBuffer& buffer, std::size_t n,
                                                            std::size_t starts) {
  if (starts == 0 || starts - 1 + n > buffer.size()) throw InconclusiveError("oracle: buffer too short for the requested windows");
  const int s = buffer.alphabet_size();
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> v(static_cast<std::size_t>(s));
  for (std::size_t i = 0; i < starts; ++i) {
    for (int b = 0; b < s; ++b)
      v[static_cast<std::size_t>(b)] = buffer.count(i + n, b) - buffer.count(i, b) - buffer.count(n, b);
    out.insert(v);
  }
  return out;
}

std::vector<std::uint64_t> brute_cuts(const Morphism& f, Letter a, std::uint64_t L) {
  std::vector<std::uint64_t> cuts{0};
  std::size_t len = 1024;
  for (;;) {
    Word x = brute_fixed_point(f, a, len);
    std::uint64_t pos = 0;
    for (Letter l : x) {
      pos += f.image(l).size();
      if (pos > L) return cuts;
      if (pos != cuts.back()) cuts.push_back(pos);
    }
    cuts.assign(1, 0);
    len *= 2;
  }
}

std::int64_t brute_prefix_counts(const PrefixBuffer& buffer, Letter b, std::size_t n) {
  if (n > buffer.size()) throw InconclusiveError("oracle: prefix longer than the buffer");
  return buffer.count(n, b);
}

std::set<Word> brute_factors(const PrefixBuffer& buffer, std::size_t m) {
  std::set<Word> out;
  const auto& w = buffer.word();
  for (std::size_t i = 0; i + m <= w.size(); ++i)
    out.emplace(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + m));
  return out;
}

}  // namespace pcabel::oracle
