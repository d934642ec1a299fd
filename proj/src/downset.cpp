#include "rlab/downset.hpp"

#include <algorithm>

#include "rlab/errors.hpp"

namespace rlab {

std::string mask_to_string(Mask e) {
  std::string s = "{";
  bool first = true;
  for (unsigned i = 0; i < 32; ++i)
    if ((e >> i) & 1u) {
      s += (first ? "" : ",") + std::to_string(i);
      first = false;
    }
  return s + "}";
}

Downset Downset::make(unsigned J, std::vector<Mask> members) {
  if (J > 31) throw InputError("ground set too large (J <= 31)");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const Mask universe = (Mask{1} << J) - 1;
  for (Mask e : members) {
    if ((e & ~universe) != 0) throw InputError("member " + mask_to_string(e) + " outside the ground set");
    for (unsigned i = 0; i < J; ++i)
      if (((e >> i) & 1u) && !std::binary_search(members.begin(), members.end(), e & ~(Mask{1} << i)))
        throw InputError("not a downset: " + mask_to_string(e) + " lacks subset " +
                         mask_to_string(e & ~(Mask{1} << i)));
  }
  Downset d;
  d.J_ = J;
  d.members_ = std::move(members);
  return d;
}

Downset Downset::empty(unsigned J) { return make(J, {}); }

Downset Downset::principal(unsigned J, Mask e) {
  std::vector<Mask> subs;
  for (Mask s = e;; s = (s - 1) & e) {
    subs.push_back(s);
    if (s == 0) break;
  }
  return make(J, std::move(subs));
}

Downset Downset::up_to_order(unsigned J, unsigned h) {
  if (J > 31) throw InputError("ground set too large (J <= 31)");
  std::vector<Mask> members;
  for (Mask e = 0; e < (Mask{1} << J); ++e)
    if (order(e) <= h) members.push_back(e);
  return make(J, std::move(members));
}

bool Downset::contains(Mask e) const { return std::binary_search(members_.begin(), members_.end(), e); }

int Downset::height() const noexcept {
  int h = -1;
  for (Mask e : members_) h = std::max(h, static_cast<int>(order(e)));
  return h;
}

bool Downset::is_principal() const noexcept {
  if (members_.empty()) return false;
  Mask top = 0;
  for (Mask e : members_) top |= e;
  return contains(top);
}

std::vector<Mask> Downset::of_order(unsigned d) const {
  std::vector<Mask> out;
  for (Mask e : members_)
    if (order(e) == d) out.push_back(e);
  return out;
}

Downset Downset::lower_part(unsigned d) const {
  std::vector<Mask> out;
  for (Mask e : members_)
    if (order(e) < d) out.push_back(e);
  Downset r;
  r.J_ = J_;
  r.members_ = std::move(out);
  return r;
}

std::vector<Downset> Downset::sub_downsets() const {
  if (members_.size() > 20) throw InputError("too many members to enumerate sub-downsets");
  std::vector<Downset> out;
  const std::size_t k = members_.size();
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << k); ++pick) {
    std::vector<Mask> chosen;
    for (std::size_t i = 0; i < k; ++i)
      if ((pick >> i) & 1u) chosen.push_back(members_[i]);
    bool closed = true;
    for (Mask e : chosen) {
      for (unsigned b = 0; b < J_ && closed; ++b)
        if (((e >> b) & 1u) && !std::binary_search(chosen.begin(), chosen.end(), e & ~(Mask{1} << b)))
          closed = false;
      if (!closed) break;
    }
    if (!closed) continue;
    Downset d;
    d.J_ = J_;
    d.members_ = std::move(chosen);
    out.push_back(std::move(d));
  }
  return out;
}

std::string Downset::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) s += (i ? "," : "") + mask_to_string(members_[i]);
  return s + "}";
}

}  // namespace rlab
