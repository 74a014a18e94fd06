#include "scl/word.hpp"

#include <cctype>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace scl {

Genus::Genus(int g) : g_(g) {
  if (g < 2) throw std::invalid_argument("genus must be at least 2, got " + std::to_string(g));
}

Word Word::free_reduce(std::span<const Letter> raw, Genus genus) {
  Word out(genus);
  out.letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l.generator >= genus.generator_count() || (l.sign != 1 && l.sign != -1))
      throw std::out_of_range("letter generator " + std::to_string(l.generator) +
                              " out of range for genus " + std::to_string(genus.value()));
    if (!out.letters_.empty() && out.letters_.back().cancels(l))
      out.letters_.pop_back();
    else
      out.letters_.push_back(l);
  }
  return out;
}

Word Word::inverse() const {
  Word out(genus_);
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->inverse());
  return out;
}

namespace {

std::string generator_name(std::uint32_t generator) {
  return std::string(1, generator % 2 == 0 ? 'a' : 'b') + std::to_string(generator / 2 + 1);
}

}  // namespace

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size();) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    const auto run = static_cast<long>(j - i);
    if (!out.empty()) out += ' ';
    out += generator_name(letters_[i].generator);
    if (run == 1) {
      if (letters_[i].sign < 0) out += '\'';
    } else {
      out += '^' + std::to_string(letters_[i].sign * run);
    }
    i = j;
  }
  return out;
}

Word operator*(const Word& u, const Word& v) {
  if (!(u.genus_ == v.genus_)) throw std::invalid_argument("word genus mismatch");
  std::vector<Letter> raw(u.letters_);
  raw.insert(raw.end(), v.letters_.begin(), v.letters_.end());
  return Word::free_reduce(raw, u.genus_);
}

Word parse_word(std::string_view text, Genus genus) {
  std::vector<Letter> raw;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse word '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++i;
      continue;
    }
    if (c == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      continue;
    }
    if (c != 'a' && c != 'b') fail("expected a<i> or b<i> at offset " + std::to_string(i));
    ++i;
    int index = 0;
    auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), index);
    if (ec != std::errc() || index < 1) fail("bad generator index");
    i = static_cast<std::size_t>(p - text.data());
    if (index > genus.value()) fail("generator index exceeds genus");
    const auto generator = static_cast<std::uint32_t>(2 * (index - 1) + (c == 'b' ? 1 : 0));
    int sign = 1;
    while (i < text.size() && text[i] == '\'') {
      sign = -sign;
      ++i;
    }
    long power = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      auto [q, ec2] = std::from_chars(text.data() + i, text.data() + text.size(), power);
      if (ec2 != std::errc()) fail("bad exponent");
      i = static_cast<std::size_t>(q - text.data());
    }
    if (power < 0) {
      sign = -sign;
      power = -power;
    }
    for (long k = 0; k < power; ++k) raw.push_back({generator, static_cast<std::int8_t>(sign)});
  }
  return Word::free_reduce(raw, genus);
}

Word relator(Genus genus) {
  std::vector<Letter> raw;
  for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(genus.value()); ++i) {
    const Letter a{2 * i, 1}, b{2 * i + 1, 1};
    raw.insert(raw.end(), {a.inverse(), b.inverse(), a, b});
  }
  return Word::free_reduce(raw, genus);
}

Word cyclic_reduce(const Word& w) {
  auto letters = w.letters();
  std::size_t lo = 0, hi = letters.size();
  while (hi - lo >= 2 && letters[lo].cancels(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word::free_reduce(letters.subspan(lo, hi - lo), w.genus());
}

bool is_identity(const Word& w) { return dehn_reduce(w).empty(); }

AbelianImage AbelianImage::operator-() const {
  AbelianImage out{exponents};
  for (auto& e : out.exponents) e = -e;
  return out;
}

AbelianImage operator+(const AbelianImage& x, const AbelianImage& y) {
  if (x.exponents.size() != y.exponents.size()) throw std::invalid_argument("abelian image rank mismatch");
  AbelianImage out{x.exponents};
  for (std::size_t i = 0; i < out.exponents.size(); ++i) out.exponents[i] += y.exponents[i];
  return out;
}

bool AbelianImage::is_zero() const noexcept {
  for (auto e : exponents)
    if (e != 0) return false;
  return true;
}

AbelianImage abelianize(const Word& w) {
  AbelianImage out{std::vector<std::int64_t>(w.genus().generator_count(), 0)};
  for (Letter l : w.letters()) out.exponents[l.generator] += l.sign;
  return out;
}

namespace {

void require_nontrivial(const Word& w, const char* what) {
  if (is_identity(w)) throw std::invalid_argument(std::string(what) + ": identity word");
}

}  // namespace

DistinctnessCertificate distinct_in_p0_certificate(const Word& u, const Word& v) {
  require_nontrivial(u, "distinct_in_p0_certificate");
  require_nontrivial(v, "distinct_in_p0_certificate");
  const auto au = abelianize(u), av = abelianize(v);
  if (au == av || au == -av) return DistinctnessCertificate::unknown;
  return DistinctnessCertificate::distinct;
}

PrimitivityCertificate primitivity_certificate(const Word& w) {
  require_nontrivial(w, "primitivity_certificate");
  std::int64_t g = 0;
  for (auto e : abelianize(w).exponents) g = std::gcd(g, e);
  return g == 1 ? PrimitivityCertificate::primitive : PrimitivityCertificate::unknown;
}

Word power_word(const Word& base, int exponent) {
  if (exponent < 1) throw std::invalid_argument("power_word: exponent must be >= 1");
  std::vector<Letter> raw;
  raw.reserve(base.size() * static_cast<std::size_t>(exponent));
  for (int k = 0; k < exponent; ++k) raw.insert(raw.end(), base.letters().begin(), base.letters().end());
  return Word::free_reduce(raw, base.genus());
}

PowerClaim make_power_claim(const Word& base, int exponent) {
  if (exponent < 1) throw std::invalid_argument("make_power_claim: exponent must be >= 1");
  return {base, exponent, primitivity_certificate(base)};
}

}  // namespace scl
