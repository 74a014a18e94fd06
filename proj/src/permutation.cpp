#include "scl/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace scl {

Permutation::Permutation(std::size_t n) : map_(n) { std::iota(map_.begin(), map_.end(), point_t{0}); }

Permutation::Permutation(std::vector<point_t> images) : map_(std::move(images)) {
  std::vector<bool> seen(map_.size(), false);
  for (auto x : map_) {
    if (x >= map_.size() || seen[x]) throw std::invalid_argument("permutation images are not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<point_t>>& cycles) {
  std::vector<point_t> images(n);
  std::iota(images.begin(), images.end(), point_t{0});
  std::vector<bool> used(n, false);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const auto x = cycle[k];
      if (x >= n || used[x]) throw std::invalid_argument("cycles are not disjoint points of [0, n)");
      used[x] = true;
      images[x] = cycle[(k + 1) % cycle.size()];
    }
  }
  return PermutationBuilder::adopt(std::move(images));
}

bool Permutation::is_identity() const noexcept { return kernels::active().is_identity(map_); }

namespace {

void require_same_size(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("permutation size mismatch: " + std::to_string(p.size()) + " vs " +
                                std::to_string(q.size()));
}

}  // namespace

void compose_into(const Permutation& p, const Permutation& q, Permutation& out) {
  require_same_size(p, q);
  auto& dst = PermutationBuilder::storage(out);
  dst.resize(p.size());
  kernels::active().compose(p.images(), q.images(), dst);
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation out;
  compose_into(p, q, out);
  return out;
}

void inverse_into(const Permutation& p, Permutation& out) {
  auto& dst = PermutationBuilder::storage(out);
  dst.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) dst[p[i]] = static_cast<point_t>(i);
}

Permutation inverse(const Permutation& p) {
  Permutation out;
  inverse_into(p, out);
  return out;
}

Permutation conjugate(const Permutation& p, const Permutation& by) {
  require_same_size(p, by);
  return compose(compose(inverse(by), p), by);
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  require_same_size(a, b);
  return compose(compose(inverse(a), inverse(b)), compose(a, b));
}

Permutation power(const Permutation& p, std::uint64_t k) {
  Permutation result(p.size()), base = p, tmp;
  while (k) {
    if (k & 1) {
      compose_into(result, base, tmp);
      std::swap(result, tmp);
    }
    k >>= 1;
    if (k) {
      compose_into(base, base, tmp);
      std::swap(base, tmp);
    }
  }
  return result;
}

std::vector<std::uint32_t> cycle_counts(const Permutation& p) {
  const std::size_t n = p.size();
  std::vector<std::uint32_t> counts(n + 1, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    ++counts[len];
  }
  return counts;
}

CycleType cycle_type(const Permutation& p) {
  const auto counts = cycle_counts(p);
  std::vector<std::uint32_t> parts;
  for (std::size_t d = counts.size(); d-- > 1;)
    parts.insert(parts.end(), counts[d], static_cast<std::uint32_t>(d));
  return CycleType(std::move(parts));
}

std::size_t fix_count(const Permutation& p) { return kernels::active().fix_count(p.images()); }

std::size_t d_cycle_count(const Permutation& p, std::size_t d) {
  if (d < 1 || d > p.size())
    throw std::out_of_range("cycle length " + std::to_string(d) + " outside [1, " + std::to_string(p.size()) + "]");
  if (d == 1) return fix_count(p);
  return cycle_counts(p)[d];
}

std::string to_cycle_string(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      if (j != i) out += ' ';
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation parse_cycles(std::string_view text, std::size_t n) {
  std::vector<std::vector<point_t>> cycles;
  std::vector<point_t>* current = nullptr;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
    } else if (c == '(') {
      if (current) throw std::invalid_argument("nested '(' in cycle notation");
      current = &cycles.emplace_back();
      ++i;
    } else if (c == ')') {
      if (!current) throw std::invalid_argument("unmatched ')' in cycle notation");
      current = nullptr;
      ++i;
    } else {
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc() || !current || value < 1 || value > n)
        throw std::invalid_argument("bad point in cycle notation: '" + std::string(text) + "'");
      current->push_back(static_cast<point_t>(value - 1));
      i = static_cast<std::size_t>(ptr - text.data());
    }
  }
  if (current) throw std::invalid_argument("unterminated cycle");
  return Permutation::from_cycles(n, cycles);
}

HomPoint::HomPoint(Genus genus, std::size_t n)
    : genus_(genus), n_(n), images_(genus.generator_count(), Permutation(n)),
      inverses_(genus.generator_count(), Permutation(n)) {}

HomPoint::HomPoint(Genus genus, std::vector<Permutation> images) : genus_(genus), n_(0) {
  if (images.size() != genus.generator_count())
    throw std::invalid_argument("HomPoint needs " + std::to_string(genus.generator_count()) + " images");
  n_ = images.front().size();
  for (const auto& p : images)
    if (p.size() != n_) throw std::invalid_argument("HomPoint images have different degrees");
  images_ = std::move(images);
  inverses_.reserve(images_.size());
  for (const auto& p : images_) inverses_.push_back(inverse(p));
  if (!satisfies_relator()) throw std::invalid_argument("images do not satisfy the surface relator");
}

HomPoint HomPoint::scratch(Genus genus, std::size_t n) { return HomPoint(genus, n); }

void HomPoint::set(std::size_t generator, std::span<const point_t> image) {
  auto& dst = PermutationBuilder::storage(images_[generator]);
  dst.assign(image.begin(), image.end());
  inverse_into(images_[generator], inverses_[generator]);
}

void HomPoint::set(std::size_t generator, std::span<const point_t> image, std::span<const point_t> inverse_image) {
  PermutationBuilder::storage(images_[generator]).assign(image.begin(), image.end());
  PermutationBuilder::storage(inverses_[generator]).assign(inverse_image.begin(), inverse_image.end());
}

void HomPoint::set(std::size_t generator, const Permutation& image) { set(generator, image.images()); }

bool HomPoint::satisfies_relator() const {
  WordEvaluator eval;
  Permutation out;
  eval.evaluate(*this, relator(genus_), out);
  return out.is_identity();
}

void WordEvaluator::evaluate(const HomPoint& h, const Word& w, Permutation& out) {
  if (!(h.genus() == w.genus())) throw std::invalid_argument("evaluate_word: genus mismatch");
  auto image_of = [&](Letter l) -> const Permutation& {
    return l.sign > 0 ? h.image(l.generator) : h.inverse_image(l.generator);
  };
  if (w.empty()) {
    out = Permutation(h.degree());
    return;
  }
  auto& dst = PermutationBuilder::storage(out);
  const auto first = image_of(w[0]).images();
  dst.assign(first.begin(), first.end());
  for (std::size_t k = 1; k < w.size(); ++k) {
    compose_into(out, image_of(w[k]), tmp_);
    std::swap(out, tmp_);
  }
}

Permutation evaluate_word(const HomPoint& h, const Word& w) {
  WordEvaluator eval;
  Permutation out;
  eval.evaluate(h, w, out);
  return out;
}

}  // namespace scl
