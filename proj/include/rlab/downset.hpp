#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rlab {

using Mask = std::uint32_t;  // subset of {0..J-1}

inline unsigned order(Mask e) { return static_cast<unsigned>(__builtin_popcount(e)); }

// Family of subsets of {0..J-1} closed under taking subsets. Members are kept
// sorted by mask value.
class Downset {
 public:
  Downset() = default;
  // Throws InputError if the family is not closed under subsets or J > 31.
  static Downset make(unsigned J, std::vector<Mask> members);
  static Downset empty(unsigned J);
  static Downset principal(unsigned J, Mask e);
  // {e : |e| <= h}.
  static Downset up_to_order(unsigned J, unsigned h);

  unsigned J() const noexcept { return J_; }
  const std::vector<Mask>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Mask e) const;

  // Max member cardinality; -1 stands for the empty downset's -infinity.
  int height() const noexcept;
  bool is_principal() const noexcept;
  std::vector<Mask> of_order(unsigned d) const;
  // {e in i : |e| < d}.
  Downset lower_part(unsigned d) const;
  // All sub-downsets, for at most 20 members.
  std::vector<Downset> sub_downsets() const;

  bool operator==(const Downset& o) const { return J_ == o.J_ && members_ == o.members_; }
  bool operator<(const Downset& o) const { return members_ < o.members_; }
  std::string to_string() const;

 private:
  unsigned J_ = 0;
  std::vector<Mask> members_;
};

// "{}", "{0,2}" style rendering of a mask.
std::string mask_to_string(Mask e);

}  // namespace rlab
