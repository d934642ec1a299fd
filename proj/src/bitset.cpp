#include "rlab/bitset.hpp"

#include <algorithm>
#include <cassert>

#include "rlab/kernels/bitops.hpp"

namespace rlab {

Bitset::Bitset(std::size_t size, bool value) : size_(size), words_((size + 63) / 64, 0) {
  if (value) fill(true);
}

void Bitset::fill(bool value) {
  std::fill(words_.begin(), words_.end(), value ? ~std::uint64_t{0} : 0);
  trim();
}

void Bitset::trim() noexcept {
  if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

std::size_t Bitset::count() const noexcept {
  return static_cast<std::size_t>(kernels::ops().popcount(words_.data(), words_.size()));
}

bool Bitset::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t Bitset::and_count(const Bitset& other) const noexcept {
  assert(size_ == other.size_);
  return static_cast<std::size_t>(kernels::ops().and_popcount(words_.data(), other.words_.data(), words_.size()));
}

bool Bitset::intersects(const Bitset& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

bool Bitset::is_subset_of(const Bitset& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

Bitset& Bitset::operator&=(const Bitset& other) noexcept {
  assert(size_ == other.size_);
  kernels::ops().and_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Bitset& Bitset::operator^=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

Bitset& Bitset::operator-=(const Bitset& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

Bitset Bitset::complement() const {
  Bitset out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

std::vector<std::size_t> Bitset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

Bitset Bitset::rotated(std::size_t k) const {
  Bitset out(size_);
  if (size_ == 0) return out;
  k %= size_;
  // Bits [k, size) move to [0, size-k); bits [0, k) move to [size-k, size).
  auto copy_range = [&](std::size_t src_begin, std::size_t dst_begin, std::size_t len) {
    std::size_t done = 0;
    while (done < len) {
      const std::size_t s = src_begin + done;
      const std::size_t d = dst_begin + done;
      const std::size_t s_off = s & 63;
      const std::size_t d_off = d & 63;
      const std::size_t chunk = std::min({len - done, 64 - s_off, 64 - d_off});
      const std::uint64_t mask = chunk == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << chunk) - 1);
      const std::uint64_t bits = (words_[s >> 6] >> s_off) & mask;
      out.words_[d >> 6] |= bits << d_off;
      done += chunk;
    }
  };
  copy_range(k, 0, size_ - k);
  copy_range(0, size_ - k, k);
  return out;
}

}  // namespace rlab
