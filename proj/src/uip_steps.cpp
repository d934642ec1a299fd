#include <map>

#include "rlab/errors.hpp"
#include "rlab/uip.hpp"

namespace rlab {

Bitset weak_mixing_step(const Bitset& event, const ExactFactor& b) {
  const auto& space = *b.space();
  Bitset out(space.size());
  for (std::size_t a = 0; a < b.atom_count(); ++a) {
    if (sgn(b.atom_weights()[a]) == 0) continue;
    if (sgn(space.prob(b.atom(a) & event)) > 0) out |= b.atom(a);
  }
  return out;
}

std::vector<FiniteRankTerm> finite_rank_decompose(const Bitset& event, const ExactFactor& b0,
                                                  const std::vector<ExactFactor>& parts) {
  ExactFactor all = b0;
  for (const auto& p : parts) all = join(all, p);
  if (!all.measurable(event)) throw InputError("event is not measurable in the join of B0 and the parts");

  const std::size_t n = b0.space()->size();
  std::map<std::vector<std::size_t>, Bitset> cells;  // part-atom combination -> its points
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<std::size_t> key;
    key.reserve(parts.size());
    for (const auto& f : parts) key.push_back(f.atom_of(p));
    auto [it, fresh] = cells.try_emplace(key, Bitset(n));
    it->second.set(p);
  }
  std::vector<FiniteRankTerm> terms;
  for (const auto& [key, cell] : cells) {
    Bitset base(n);
    for (std::size_t a = 0; a < b0.atom_count(); ++a) {
      const Bitset piece = b0.atom(a) & cell;
      if (piece.any() && piece.is_subset_of(event)) base |= b0.atom(a);
    }
    if (!base.intersects(cell)) continue;
    FiniteRankTerm t;
    t.base = std::move(base);
    t.atoms = key;
    for (std::size_t j = 0; j < parts.size(); ++j) t.part_events.push_back(parts[j].atom(key[j]));
    terms.push_back(std::move(t));
  }
  return terms;
}

ChainStepResult chain_limit_step(const std::vector<ChainSlot>& slots, std::size_t alpha) {
  const std::size_t k = slots.size();
  if (k == 0) throw InputError("chain step needs at least one slot");
  for (const auto& s : slots) {
    if (s.chain.empty()) throw InputError("missing filtration for a slot");
    if (alpha >= s.chain.size()) throw InputError("filtration level beyond the chain");
  }
  const auto& space = *slots[0].chain[0].space();
  ChainStepResult r;
  r.threshold = make_rational(static_cast<long>(k), static_cast<long>(k + 1));
  Bitset meet = space.everything();
  for (const auto& s : slots) {
    const ExactFactor& level = s.chain[alpha];
    Bitset ev(space.size());
    for (std::size_t a = 0; a < level.atom_count(); ++a) {
      const Rational& w = level.atom_weights()[a];
      if (sgn(w) == 0) continue;
      if (space.prob(level.atom(a) & s.event) / w > r.threshold) ev |= level.atom(a);
    }
    r.losses.push_back(space.prob(s.event - ev));
    meet &= ev;
    r.events.push_back(std::move(ev));
  }
  r.intersection_prob = space.prob(meet);
  r.null_intersection = sgn(r.intersection_prob) == 0;
  for (std::size_t i = 0; i < k; ++i) {
    ExactFactor others = ExactFactor::trivial(slots[i].chain[0].space());
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) others = join(others, slots[j].chain[alpha]);
    const Rational d = independence_defect(slots[i].chain.back(), others, slots[i].chain[alpha]);
    if (d > r.hypothesis_defect) r.hypothesis_defect = d;
  }
  r.hypothesis_exact = sgn(r.hypothesis_defect) == 0;
  return r;
}

}  // namespace rlab
