#include "rlab/errors.hpp"
#include "rlab/uip.hpp"

namespace rlab {

namespace {

Mask mask_from_json(const nlohmann::json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError("member mask must be a nonnegative integer");
  const auto v = j.get<unsigned long long>();
  if (v >= (1ULL << 31)) throw InputError("member mask out of range");
  return static_cast<Mask>(v);
}

}  // namespace

nlohmann::json problem_to_json(const UipProblem& p) {
  const auto& sys = p.system;
  nlohmann::json members = nlohmann::json::array();
  for (Mask e : sys.i_max.members()) {
    nlohmann::json m{{"mask", e},
                     {"label", mask_to_string(e)},
                     {"factor", factor_to_json(sys.factor(e))},
                     {"event", event_to_json(*sys.space, p.events.at(e))}};
    auto it = sys.filtrations.find(e);
    if (it != sys.filtrations.end()) {
      nlohmann::json chain = nlohmann::json::array();
      for (const auto& f : it->second) chain.push_back(factor_to_json(f));
      m["filtration"] = chain;
    }
    members.push_back(m);
  }
  return {{"space", space_to_json(*sys.space)},
          {"J", sys.i_max.J()},
          {"members", members},
          {"epsilon", rational_to_json(p.epsilon)}};
}

UipProblem problem_from_json(const nlohmann::json& j) {
  try {
    UipProblem p;
    p.system.space = exact_space_from_json(j.at("space"));
    const auto& space = p.system.space;
    const unsigned J = j.at("J").get<unsigned>();
    std::vector<Mask> masks;
    for (const auto& m : j.at("members")) {
      const Mask e = mask_from_json(m.at("mask"));
      masks.push_back(e);
      if (!p.system.factors.emplace(e, factor_from_json(space, m.at("factor"))).second)
        throw InputError("duplicate member " + mask_to_string(e));
      p.events[e] = event_from_json(*space, m.at("event"));
      if (m.contains("filtration")) {
        std::vector<ExactFactor> chain;
        for (const auto& f : m.at("filtration")) chain.push_back(factor_from_json(space, f));
        p.system.filtrations[e] = std::move(chain);
      }
    }
    p.system.i_max = Downset::make(J, masks);
    p.epsilon = rational_from_json(j.at("epsilon"));
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed problem JSON: ") + e.what());
  }
}

nlohmann::json solution_to_json(const UipProblem& p, const UipSolution& s) {
  const auto& sys = p.system;
  const auto& c = s.certificate;
  nlohmann::json events = nlohmann::json::array();
  for (Mask e : sys.i_max.members()) {
    events.push_back({{"mask", e},
                      {"label", mask_to_string(e)},
                      {"event", event_to_json(*sys.space, s.events.at(e))},
                      {"loss", rational_report(c.losses.at(e))}});
  }
  const auto& st = s.stats;
  return {{"events", events},
          {"certificate",
           {{"valid", c.valid()},
            {"empty_intersection", c.empty_intersection},
            {"measurable", c.measurable},
            {"max_loss", rational_report(c.max_loss)},
            {"epsilon", rational_report(p.epsilon)},
            {"within_epsilon", c.within_epsilon}}},
          {"best_effort", s.best_effort},
          {"stats",
           {{"chain_steps", st.chain_steps},
            {"finite_rank_steps", st.finite_rank_steps},
            {"finite_rank_terms", st.finite_rank_terms},
            {"weak_mixing_steps", st.weak_mixing_steps},
            {"dedup_merges", st.dedup_merges},
            {"base_cases", st.base_cases},
            {"shortcuts", st.shortcuts},
            {"repairs", st.repairs}}}};
}

std::map<Mask, Bitset> solution_events_from_json(const UipProblem& p, const nlohmann::json& j) {
  try {
    std::map<Mask, Bitset> out;
    for (const auto& m : j.at("events")) out[mask_from_json(m.at("mask"))] = event_from_json(*p.system.space, m.at("event"));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed solution JSON: ") + e.what());
  }
}

}  // namespace rlab
