#include "scl/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace scl {

Partition::Partition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  for (auto p : parts_) {
    if (p == 0) throw std::invalid_argument("partition parts must be positive");
    n_ += p;
  }
}

std::uint32_t Partition::multiplicity(std::uint32_t k) const noexcept {
  return static_cast<std::uint32_t>(std::count(parts_.begin(), parts_.end(), k));
}

int Partition::sign() const noexcept {
  std::uint32_t even_parts = 0;
  for (auto p : parts_) even_parts += (p % 2 == 0);
  return even_parts % 2 == 0 ? 1 : -1;
}

bool Partition::is_identity_class() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(), [](auto p) { return p == 1; });
}

std::string Partition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

namespace {

void generate(std::uint32_t remaining, std::uint32_t max_part, std::vector<std::uint32_t>& prefix,
              std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (std::uint32_t p = std::min(remaining, max_part); p >= 1; --p) {
    prefix.push_back(p);
    generate(remaining - p, p, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(std::uint32_t n) {
  std::vector<Partition> out;
  std::vector<std::uint32_t> prefix;
  generate(n, n, prefix, out);
  return out;
}

}  // namespace scl
