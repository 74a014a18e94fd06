#include <map>
#include <memory>
#include <mutex>

#include "scl/word.hpp"

namespace scl {
namespace {

// All cyclic rotations of the relator and of its inverse, 8g words of length 4g.
using Rotations = std::vector<std::vector<Letter>>;

std::shared_ptr<const Rotations> relator_rotations(Genus genus) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const Rotations>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[genus.value()];
  if (!slot) {
    auto rotations = std::make_shared<Rotations>();
    const Word r = relator(genus);
    for (const Word& base : {r, r.inverse()}) {
      const auto letters = base.letters();
      for (std::size_t shift = 0; shift < letters.size(); ++shift) {
        std::vector<Letter> rot;
        rot.reserve(letters.size());
        for (std::size_t k = 0; k < letters.size(); ++k) rot.push_back(letters[(shift + k) % letters.size()]);
        rotations->push_back(std::move(rot));
      }
    }
    slot = std::move(rotations);
  }
  return slot;
}

}  // namespace

Word dehn_reduce(const Word& w) {
  const auto rotations = relator_rotations(w.genus());
  const std::size_t half = 2 * static_cast<std::size_t>(w.genus().value());
  std::vector<Letter> cur(w.letters().begin(), w.letters().end());

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.size() && !changed; ++i) {
      for (const auto& rot : *rotations) {
        std::size_t len = 0;
        while (len < rot.size() && i + len < cur.size() && cur[i + len] == rot[len]) ++len;
        if (len <= half) continue;
        // rot = u v with u the matched prefix and u v = 1, so u = v^-1.
        std::vector<Letter> next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(i));
        for (std::size_t k = rot.size(); k > len; --k) next.push_back(rot[k - 1].inverse());
        next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(i + len), cur.end());
        const Word reduced = Word::free_reduce(next, w.genus());
        cur.assign(reduced.letters().begin(), reduced.letters().end());
        changed = true;
        break;
      }
    }
  }
  return Word::free_reduce(cur, w.genus());
}

}  // namespace scl
