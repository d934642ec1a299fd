#include <algorithm>
#include <numeric>

#include "rlab/errors.hpp"
#include "rlab/rng.hpp"
#include "rlab/uip.hpp"

namespace rlab {

void FactorSystem::validate() const {
  if (!space) throw InputError("factor system without a space");
  for (Mask e : i_max.members()) {
    auto it = factors.find(e);
    if (it == factors.end()) throw InputError("no factor for member " + mask_to_string(e));
    if (it->second.space().get() != space.get()) throw InputError("factor for " + mask_to_string(e) + " on another space");
  }
  for (const auto& [e, f] : factors)
    if (!i_max.contains(e)) throw InputError("factor for non-member " + mask_to_string(e));
  for (const auto& [e, chain] : filtrations) {
    if (!i_max.contains(e)) throw InputError("filtration for non-member " + mask_to_string(e));
    if (chain.empty()) throw InputError("empty filtration for " + mask_to_string(e));
    for (std::size_t k = 0; k < chain.size(); ++k) {
      if (chain[k].space().get() != space.get()) throw InputError("filtration level on another space");
      if (k > 0 && !refines(chain[k], chain[k - 1]))
        throw InputError("filtration for " + mask_to_string(e) + " is not ascending at level " + std::to_string(k + 1));
    }
    if (!chain.back().same_partition(factor(e)))
      throw InputError("filtration for " + mask_to_string(e) + " does not end at B_e");
  }
}

const ExactFactor& FactorSystem::factor(Mask e) const {
  auto it = factors.find(e);
  if (it == factors.end()) throw InputError("no factor for member " + mask_to_string(e));
  return it->second;
}

std::size_t FactorSystem::levels(Mask e) const {
  auto it = filtrations.find(e);
  return it == filtrations.end() ? 1 : it->second.size();
}

const ExactFactor& FactorSystem::level(Mask e, std::size_t alpha) const {
  auto it = filtrations.find(e);
  if (it == filtrations.end()) return factor(e);
  return it->second[std::min(alpha, it->second.size() - 1)];
}

void UipProblem::validate() const {
  system.validate();
  if (!(epsilon > 0)) throw InputError("epsilon must be positive");
  for (Mask e : system.i_max.members()) {
    auto it = events.find(e);
    if (it == events.end()) throw InputError("no event for member " + mask_to_string(e));
    if (it->second.size() != system.space->size()) throw InputError("event size mismatch");
    if (!system.factor(e).measurable(it->second))
      throw InputError("event for " + mask_to_string(e) + " is not measurable in its factor");
  }
  for (const auto& [e, ev] : events)
    if (!system.i_max.contains(e)) throw InputError("event for non-member " + mask_to_string(e));
}

namespace {

ExactFactor join_of(const FactorSystem& s, const std::vector<Mask>& members) {
  ExactFactor acc = ExactFactor::trivial(s.space);
  for (Mask e : members) acc = join(acc, s.factor(e));
  return acc;
}

}  // namespace

HypothesisReport check_hypotheses(const FactorSystem& system, const HypothesisOptions& opt) {
  system.validate();
  HypothesisReport r;
  r.tolerance = opt.tolerance;
  const auto& members = system.i_max.members();

  for (Mask e : members)
    for (Mask f : members)
      if (e != f && (e & f) == e && !refines(system.factor(f), system.factor(e))) {
        r.nesting_ok = false;
        r.nesting_failures.emplace_back(e, f);
      }

  for (const auto& [e, chain] : system.filtrations)
    for (std::size_t k = 1; k < chain.size(); ++k)
      if (!refines(chain[k], chain[k - 1])) {
        r.filtrations_ok = false;
        r.filtration_problems.push_back(mask_to_string(e) + ": level " + std::to_string(k + 1) + " not ascending");
      }

  // Independence: B_e vs join B_{e_i} over join B_{e & e_i}, for families of
  // distinct members of size 1..max_family.
  const std::size_t k = members.size();
  std::vector<std::vector<std::size_t>> families;
  std::vector<std::size_t> pick;
  auto extend = [&](auto&& self, std::size_t start) -> void {
    if (!pick.empty()) families.push_back(pick);
    if (pick.size() == opt.max_family) return;
    for (std::size_t i = start; i < k; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  extend(extend, 0);
  for (Mask e : members) {
    for (const auto& fam : families) {
      std::vector<Mask> others, meets;
      for (std::size_t i : fam) {
        others.push_back(members[i]);
        meets.push_back(e & members[i]);
      }
      const Rational d = independence_defect(system.factor(e), join_of(system, others), join_of(system, meets));
      ++r.independence_checks;
      if (d > r.max_independence_defect) {
        r.max_independence_defect = d;
        r.independence_witness = e;
        r.independence_witness_family = others;
      }
    }
  }

  // Crop property on ideal pairs of height <= d sharing no member of order d.
  if (members.size() <= 16 && opt.crop_pairs > 0) {
    const auto ideals = system.i_max.sub_downsets();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < ideals.size(); ++a)
      for (std::size_t b = 0; b < ideals.size(); ++b) {
        const int d = std::max(ideals[a].height(), ideals[b].height());
        if (d < 0) continue;
        bool shared = false;
        for (Mask e : ideals[a].of_order(static_cast<unsigned>(d)))
          if (ideals[b].contains(e)) shared = true;
        if (!shared) pairs.emplace_back(a, b);
      }
    // Deterministic sample without replacement (partial Fisher-Yates).
    const std::size_t take = std::min(opt.crop_pairs, pairs.size());
    for (std::size_t i = 0; i < take; ++i) {
      CounterStream rng(opt.seed, stream_tag::generator, i);
      std::swap(pairs[i], pairs[i + rng.below(pairs.size() - i)]);
    }
    for (std::size_t i = 0; i < take; ++i) {
      const auto& ia = ideals[pairs[i].first];
      const auto& ib = ideals[pairs[i].second];
      const int d = std::max(ia.height(), ib.height());
      const Downset bar = ia.lower_part(static_cast<unsigned>(d));
      const Rational def = independence_defect(join_of(system, ia.members()), join_of(system, ib.members()),
                                               join_of(system, bar.members()));
      ++r.crop_pairs_checked;
      if (def > r.max_crop_defect) {
        r.max_crop_defect = def;
        r.crop_witness = ia.to_string() + " vs " + ib.to_string();
      }
    }
  }
  return r;
}

nlohmann::json HypothesisReport::to_json() const {
  nlohmann::json failures = nlohmann::json::array();
  for (auto [e, f] : nesting_failures) failures.push_back({{"sub", e}, {"super", f}});
  nlohmann::json fam = independence_witness_family;
  return {{"passed", passed()},
          {"tolerance", rational_report(tolerance)},
          {"nesting_ok", nesting_ok},
          {"nesting_failures", failures},
          {"filtrations_ok", filtrations_ok},
          {"filtration_problems", filtration_problems},
          {"max_independence_defect", rational_report(max_independence_defect)},
          {"independence_witness", {{"member", independence_witness}, {"family", fam}}},
          {"independence_checks", independence_checks},
          {"max_crop_defect", rational_report(max_crop_defect)},
          {"crop_witness", crop_witness},
          {"crop_pairs_checked", crop_pairs_checked}};
}

UipProblem generate_certified_problem(std::uint64_t seed, const GeneratorOptions& opt) {
  if (opt.J < 1 || opt.J > 5) throw InputError("generator supports 1 <= J <= 5");
  const Downset i_max = Downset::up_to_order(opt.J, opt.height);
  const auto& members = i_max.members();
  std::uint64_t draw = 0;
  auto rng = [&]() { return CounterStream(seed, stream_tag::generator, draw++); };

  // Coordinate sizes within the point budget; coordinate `planted` gets a
  // zero-weight value.
  const std::size_t planted = rng().below(members.size());
  std::vector<std::size_t> positive(members.size(), 1);
  std::vector<bool> has_zero(members.size(), false);
  has_zero[planted] = true;
  std::size_t total = 2;  // product of the current radices
  std::vector<std::size_t> order_idx(members.size());
  std::iota(order_idx.begin(), order_idx.end(), 0);
  for (std::size_t i = order_idx.size(); i > 1; --i) std::swap(order_idx[i - 1], order_idx[rng().below(i)]);
  for (std::size_t c : order_idx) {
    const std::size_t old_radix = 1 + (has_zero[c] ? 1 : 0);
    const std::size_t rest = total / old_radix;
    const bool zero = has_zero[c] || rng().below(4) == 0;
    std::size_t p = 1 + rng().below(3);
    while (p > 1 && rest * (p + (zero ? 1 : 0)) > opt.max_points) --p;
    positive[c] = p;
    has_zero[c] = has_zero[c] || (zero && rest * (p + 1) <= opt.max_points);
    total = rest * (p + (has_zero[c] ? 1 : 0));
  }

  // Coordinate value weights: positive values from small integers, normalized.
  std::vector<std::vector<Rational>> value_weight(members.size());
  for (std::size_t c = 0; c < members.size(); ++c) {
    std::vector<long> raw(positive[c]);
    long sum = 0;
    for (auto& r : raw) sum += (r = 1 + static_cast<long>(rng().below(3)));
    for (long r : raw) value_weight[c].push_back(make_rational(r, sum));
    if (has_zero[c]) value_weight[c].push_back(Rational(0));
  }

  std::vector<std::size_t> radix(members.size());
  std::size_t points = 1;
  for (std::size_t c = 0; c < members.size(); ++c) points *= (radix[c] = value_weight[c].size());
  std::vector<Rational> weights(points);
  std::vector<std::string> ids(points);
  std::vector<std::vector<std::size_t>> coord(points, std::vector<std::size_t>(members.size()));
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t rest = p;
    Rational w = 1;
    std::string id = "x";
    for (std::size_t c = 0; c < members.size(); ++c) {
      coord[p][c] = rest % radix[c];
      rest /= radix[c];
      w *= value_weight[c][coord[p][c]];
      id += std::to_string(coord[p][c]);
    }
    weights[p] = w;
    ids[p] = id;
  }

  UipProblem prob;
  prob.epsilon = opt.epsilon;
  prob.system.space = ExactSpace::make(weights, ids);
  prob.system.i_max = i_max;
  const auto& space = prob.system.space;

  auto coordinate_factor = [&](Mask e, bool coarse_top) {
    // Key: coordinates of all proper-or-equal subsets of e; optionally the
    // coordinate of e itself merged to "first value vs the rest".
    std::vector<std::size_t> labels(points);
    for (std::size_t p = 0; p < points; ++p) {
      std::size_t key = 0;
      for (std::size_t c = 0; c < members.size(); ++c) {
        if ((members[c] & e) != members[c]) continue;
        std::size_t v = coord[p][c];
        if (coarse_top && members[c] == e) v = v == 0 ? 0 : 1;
        key = key * 4 + v;
      }
      labels[p] = key;
    }
    return ExactFactor::from_labels(space, labels);
  };
  for (Mask e : members) prob.system.factors.emplace(e, coordinate_factor(e, false));
  if (opt.filtrations) {
    for (Mask e : i_max.of_order(static_cast<unsigned>(i_max.height())))
      prob.system.filtrations[e] = {coordinate_factor(e, true), prob.system.factor(e)};
  }

  // Random B_e-measurable events.
  for (Mask e : members) {
    const auto& f = prob.system.factor(e);
    Bitset ev(points);
    for (std::size_t a = 0; a < f.atom_count(); ++a)
      if (rng().uniform() < opt.atom_density) ev |= f.atom(a);
    prob.events[e] = ev;
  }
  // Kill the positive mass of the meet by trimming one top member.
  const auto tops = i_max.of_order(static_cast<unsigned>(i_max.height()));
  const Bitset support = space->positive_support();
  Bitset meet = space->everything();
  for (const auto& [e, ev] : prob.events) meet &= ev;
  if ((meet & support).any()) {
    const Mask victim = tops[rng().below(tops.size())];
    const auto& f = prob.system.factor(victim);
    Bitset& ev = prob.events[victim];
    (meet & support).for_each([&](std::size_t p) { ev -= f.atom(f.atom_of(p)); });
  }
  // Plant null atoms back in so that meets are null but often nonempty.
  for (Mask e : members) {
    const auto& f = prob.system.factor(e);
    for (std::size_t a = 0; a < f.atom_count(); ++a)
      if (sgn(f.atom_weights()[a]) == 0 && rng().below(2) == 0) prob.events[e] |= f.atom(a);
  }
  prob.validate();
  return prob;
}

UipProblem three_point_problem(const Rational& epsilon) {
  UipProblem p;
  p.epsilon = epsilon;
  p.system.space = ExactSpace::make({Rational(1, 2), Rational(1, 2), Rational(0)}, {"a", "b", "c"});
  const auto& s = p.system.space;
  p.system.i_max = Downset::up_to_order(2, 1);
  p.system.factors.emplace(Mask{0}, ExactFactor::trivial(s));
  p.system.factors.emplace(Mask{1}, ExactFactor::from_atoms(s, {{0}, {1, 2}}));
  p.system.factors.emplace(Mask{2}, ExactFactor::from_atoms(s, {{0, 1}, {2}}));
  Bitset bc(3), c(3);
  bc.set(1);
  bc.set(2);
  c.set(2);
  p.events[0] = s->everything();
  p.events[1] = bc;
  p.events[2] = c;
  p.validate();
  return p;
}

}  // namespace rlab
