#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "rlab/errors.hpp"
#include "rlab/uip.hpp"

namespace rlab {

namespace {

constexpr std::size_t kFull = std::numeric_limits<std::size_t>::max();

struct Slot {
  Downset ideal;
  Bitset event;
};

class Engine {
 public:
  Engine(const FactorSystem& s, const UipOptions& opt, UipStats& stats) : sys_(s), opt_(opt), stats_(stats) {}

  // B_alpha(i) at depth d: level alpha of the order-d members, B_e for the rest.
  const ExactFactor& factor(const Downset& ideal, int d, std::size_t alpha) {
    bool uses_alpha = false;
    for (Mask e : ideal.members())
      if (static_cast<int>(order(e)) == d && sys_.levels(e) > 1) uses_alpha = true;
    if (!uses_alpha) alpha = kFull;
    const auto key = std::make_tuple(ideal.members(), d, alpha);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ExactFactor f = ExactFactor::trivial(sys_.space);
    for (Mask e : ideal.members())
      f = join(f, static_cast<int>(order(e)) == d ? sys_.level(e, alpha) : sys_.factor(e));
    return cache_.emplace(key, std::move(f)).first->second;
  }

  // Slots with factors B(i), every ideal of height <= d.
  std::vector<Bitset> solve_ideals(const std::vector<Slot>& slots, int d, const Rational& eps) {
    if (auto done = trivial_cases(slots)) return *done;
    if (auto merged = dedup(slots, [&](const std::vector<Slot>& s) { return solve_ideals(s, d, eps); })) return *merged;
    if (d <= 0) return base_case(slots);
    bool top = false;
    std::size_t levels = 1;
    for (const auto& s : slots)
      for (Mask e : s.ideal.of_order(static_cast<unsigned>(d))) {
        top = true;
        levels = std::max(levels, sys_.levels(e));
      }
    if (!top) return solve_ideals(slots, d - 1, eps);
    if (levels == 1) return solve_level(slots, d, kFull, eps);

    // Limit of chains: the first level whose thresholded events lose at most
    // eps/2 and still meet in a null set. The last level always qualifies.
    const Rational half = eps / 2;
    for (std::size_t alpha = 0; alpha < levels; ++alpha) {
      std::vector<ChainSlot> chains;
      for (const auto& s : slots) {
        ChainSlot c;
        for (std::size_t a = 0; a < levels; ++a) c.chain.push_back(factor(s.ideal, d, a));
        c.event = s.event;
        chains.push_back(std::move(c));
      }
      ChainStepResult step = chain_limit_step(chains, alpha);
      const bool ok = step.null_intersection &&
                      std::all_of(step.losses.begin(), step.losses.end(), [&](const Rational& l) { return l <= half; });
      if (!ok && alpha + 1 < levels) continue;
      ++stats_.chain_steps;
      std::vector<Slot> next = slots;
      for (std::size_t i = 0; i < next.size(); ++i) next[i].event = step.events[i];
      return solve_level(next, d, alpha + 1 == levels ? kFull : alpha, ok ? half : eps);
    }
    throw VerificationError("chain step found no level");
  }

 private:
  // Slots with factors B_alpha(i) at depth d.
  std::vector<Bitset> solve_level(const std::vector<Slot>& slots, int d, std::size_t alpha, const Rational& eps) {
    if (auto done = trivial_cases(slots)) return *done;
    if (auto merged = dedup(slots, [&](const std::vector<Slot>& s) { return solve_level(s, d, alpha, eps); }))
      return *merged;
    const unsigned du = static_cast<unsigned>(d);

    for (std::size_t i0 = 0; i0 < slots.size(); ++i0) {
      const auto tops = slots[i0].ideal.of_order(du);
      if (tops.size() < 2) continue;
      return finite_rank(slots, i0, tops, d, alpha, eps);
    }
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].ideal.height() != d) continue;
      // Weakly mixing: replace <e> by its lower part and the event by the
      // support of its conditional probability there.
      ++stats_.weak_mixing_steps;
      std::vector<Slot> next = slots;
      next[i].ideal = slots[i].ideal.lower_part(du);
      next[i].event = weak_mixing_step(slots[i].event, factor(next[i].ideal, d, alpha));
      return solve_level(next, d, alpha, eps);
    }
    return solve_ideals(slots, d - 1, eps);
  }

  std::vector<Bitset> finite_rank(const std::vector<Slot>& slots, std::size_t i0, const std::vector<Mask>& tops, int d,
                                  std::size_t alpha, const Rational& eps) {
    ++stats_.finite_rank_steps;
    const unsigned du = static_cast<unsigned>(d);
    const Downset bar = slots[i0].ideal.lower_part(du);
    std::vector<ExactFactor> parts;
    for (Mask e : tops) parts.push_back(sys_.level(e, alpha));
    const auto terms = finite_rank_decompose(slots[i0].event, factor(bar, d, alpha), parts);
    stats_.finite_rank_terms += terms.size();
    const std::size_t l = tops.size();
    const std::size_t n = sys_.space->size();

    std::vector<Bitset> out(slots.size(), Bitset(n, true));
    out[i0] = Bitset(n);
    if (terms.empty()) return out;
    const Rational sub = eps / Rational(static_cast<long>(terms.size() * (l + 1)));
    for (const auto& t : terms) {
      std::vector<Slot> next;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (i != i0) next.push_back(slots[i]);
      for (std::size_t j = 0; j < l; ++j) next.push_back({Downset::principal(sys_.i_max.J(), tops[j]), t.part_events[j]});
      next.push_back({bar, t.base});
      const auto f = solve_level(next, d, alpha, sub);
      Bitset piece = f[next.size() - 1];
      for (std::size_t j = 0; j < l; ++j) piece &= f[slots.size() - 1 + j];
      out[i0] |= piece;
      for (std::size_t i = 0, k = 0; i < slots.size(); ++i)
        if (i != i0) out[i] &= f[k++];
    }
    return out;
  }

  std::optional<std::vector<Bitset>> trivial_cases(const std::vector<Slot>& slots) {
    Bitset meet = sys_.space->everything();
    for (const auto& s : slots) meet &= s.event;
    if (opt_.shortcut_empty && meet.none()) {
      ++stats_.shortcuts;
      std::vector<Bitset> out;
      for (const auto& s : slots) out.push_back(s.event);
      return out;
    }
    return std::nullopt;
  }

  // Merge slots sharing an ideal by intersecting their events, solve, then
  // split the merged answer back out.
  template <class Solve>
  std::optional<std::vector<Bitset>> dedup(const std::vector<Slot>& slots, Solve&& solve) {
    std::map<Downset, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < slots.size(); ++i) groups[slots[i].ideal].push_back(i);
    if (groups.size() == slots.size()) return std::nullopt;
    ++stats_.dedup_merges;
    std::vector<Slot> merged;
    std::vector<const std::vector<std::size_t>*> owners;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& g = groups[slots[i].ideal];
      if (g.front() != i) continue;
      Bitset ev = slots[i].event;
      for (std::size_t j : g) ev &= slots[j].event;
      merged.push_back({slots[i].ideal, ev});
      owners.push_back(&g);
    }
    const auto f = solve(merged);
    std::vector<Bitset> out(slots.size());
    for (std::size_t m = 0; m < merged.size(); ++m) {
      const auto& g = *owners[m];
      Bitset carry = f[m];
      for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        Bitset rest = sys_.space->everything();
        for (std::size_t k = j + 1; k < g.size(); ++k) rest &= slots[g[k]].event;
        const Bitset& ev = slots[g[j]].event;
        out[g[j]] = (ev - rest) | carry;
        carry = (rest - ev) | carry;
      }
      out[g.back()] = carry;
    }
    return out;
  }

  // Ideals {} and {empty}: either a trivial-factor event is already empty, or
  // the lone B_empty event is null and becomes empty.
  std::vector<Bitset> base_case(const std::vector<Slot>& slots) {
    ++stats_.base_cases;
    const std::size_t n = sys_.space->size();
    std::vector<Bitset> out(slots.size(), Bitset(n, true));
    if (slots.empty()) return out;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (slots[i].event.none()) {
        out[i] = Bitset(n);
        return out;
      }
    std::size_t best = 0;
    Rational best_p = 2;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const Rational p = sys_.space->prob(slots[i].event);
      if (p < best_p) {
        best_p = p;
        best = i;
      }
    }
    out[best] = Bitset(n);
    return out;
  }

  const FactorSystem& sys_;
  const UipOptions& opt_;
  UipStats& stats_;
  std::map<std::tuple<std::vector<Mask>, int, std::size_t>, ExactFactor> cache_;
};

}  // namespace

UipCertificate validate_solution(const UipProblem& problem, const std::map<Mask, Bitset>& f) {
  const auto& sys = problem.system;
  UipCertificate c;
  const std::size_t n = sys.space->size();
  Bitset meet(n, true);
  c.measurable = true;
  c.max_loss = 0;
  for (Mask e : sys.i_max.members()) {
    auto it = f.find(e);
    if (it == f.end() || it->second.size() != n) {
      c.measurable = false;
      meet = Bitset(n, true);
      c.losses[e] = 1;
      c.max_loss = 1;
      continue;
    }
    const Bitset& fe = it->second;
    if (!sys.factor(e).measurable(fe)) c.measurable = false;
    meet &= fe;
    const Rational loss = sys.space->prob(problem.events.at(e) - fe);
    c.losses[e] = loss;
    if (loss > c.max_loss) c.max_loss = loss;
  }
  c.empty_intersection = meet.none() && f.size() == sys.i_max.size();
  c.within_epsilon = c.max_loss <= problem.epsilon;
  return c;
}

UipSolution uip_construct(const UipProblem& problem, const UipOptions& opt) {
  problem.validate();
  const auto& sys = problem.system;
  const std::size_t n = sys.space->size();
  Bitset meet(n, true);
  for (const auto& [e, ev] : problem.events) meet &= ev;
  if (sgn(sys.space->prob(meet)) != 0)
    throw PreconditionError("the events do not meet in a null set: P = " + to_string(sys.space->prob(meet)));
  if (opt.check_hypotheses) {
    HypothesisOptions h = opt.hypotheses;
    if (!opt.best_effort) h.tolerance = 0;
    const HypothesisReport rep = check_hypotheses(sys, h);
    if (!rep.passed()) throw PreconditionError("factor system hypotheses fail: " + rep.to_json().dump());
  }

  UipSolution sol;
  sol.best_effort = opt.best_effort;
  Engine engine(sys, opt, sol.stats);
  std::vector<Slot> slots;
  const auto& members = sys.i_max.members();
  for (Mask e : members) slots.push_back({Downset::principal(sys.i_max.J(), e), problem.events.at(e)});
  const auto f = engine.solve_ideals(slots, sys.i_max.height(), problem.epsilon);
  for (std::size_t i = 0; i < members.size(); ++i) sol.events[members[i]] = f[i] & problem.events.at(members[i]);

  if (opt.best_effort) {
    // Emptiness is never relaxed: knock out the atom that costs least.
    for (;;) {
      Bitset m(n, true);
      for (const auto& [e, fe] : sol.events) m &= fe;
      if (m.none()) break;
      const std::size_t p = m.indices().front();
      Mask pick = members.front();
      Rational pick_cost = 2;
      for (Mask e : members) {
        const auto& fac = sys.factor(e);
        const Rational cost = sys.space->prob(fac.atom(fac.atom_of(p)) & sol.events[e]);
        if (cost < pick_cost) {
          pick_cost = cost;
          pick = e;
        }
      }
      const auto& fac = sys.factor(pick);
      sol.events[pick] -= fac.atom(fac.atom_of(p));
      ++sol.stats.repairs;
    }
  }

  sol.certificate = validate_solution(problem, sol.events);
  const auto& c = sol.certificate;
  if (!c.empty_intersection || !c.measurable) throw VerificationError("constructed events fail the certificate");
  if (!opt.best_effort && !c.within_epsilon)
    throw VerificationError("constructed events exceed epsilon: " + to_string(c.max_loss));
  return sol;
}

}  // namespace rlab
