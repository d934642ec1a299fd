#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rlab/bitset.hpp"
#include "rlab/downset.hpp"
#include "rlab/probspace.hpp"

namespace rlab {

// Space, downset i_max, one factor B_e per member, and optional ascending
// filtrations B_{e,1} <= ... <= B_{e,T} = B_e. Members without a filtration
// use the one-level chain (B_e).
struct FactorSystem {
  SpacePtr<Rational> space;
  Downset i_max;
  std::map<Mask, ExactFactor> factors;
  std::map<Mask, std::vector<ExactFactor>> filtrations;

  // Structural validation (coverage, shared space, chains end at B_e, chains
  // ascend). Throws InputError.
  void validate() const;
  const ExactFactor& factor(Mask e) const;
  std::size_t levels(Mask e) const;
  // Level alpha (0-based), clamped to the last level.
  const ExactFactor& level(Mask e, std::size_t alpha) const;
};

struct UipProblem {
  FactorSystem system;
  std::map<Mask, Bitset> events;  // E_e, measurable in B_e
  Rational epsilon;

  void validate() const;
};

struct UipCertificate {
  bool empty_intersection = false;  // literal point-set emptiness of the meet of F_e
  bool measurable = false;          // every F_e measurable in B_e
  std::map<Mask, Rational> losses;  // P(E_e \ F_e)
  Rational max_loss;
  bool within_epsilon = false;
  bool valid() const { return empty_intersection && measurable && within_epsilon; }
};

struct UipStats {
  std::size_t chain_steps = 0;
  std::size_t finite_rank_steps = 0;
  std::size_t finite_rank_terms = 0;
  std::size_t weak_mixing_steps = 0;
  std::size_t dedup_merges = 0;
  std::size_t base_cases = 0;
  std::size_t shortcuts = 0;
  std::size_t repairs = 0;
};

struct UipSolution {
  std::map<Mask, Bitset> events;  // F_e
  UipCertificate certificate;
  bool best_effort = false;
  UipStats stats;
};

struct HypothesisOptions {
  Rational tolerance = 0;
  unsigned max_family = 2;       // l in (e; e_1..e_l)
  std::size_t crop_pairs = 200;  // ideal pairs sampled for the crop check
  std::uint64_t seed = 0;
};

struct HypothesisReport {
  bool nesting_ok = true;
  std::vector<std::pair<Mask, Mask>> nesting_failures;  // (e, e') with e <= e' but B_e not a factor of B_e'
  Rational max_independence_defect;
  Mask independence_witness = 0;
  std::vector<Mask> independence_witness_family;
  std::size_t independence_checks = 0;
  bool filtrations_ok = true;
  std::vector<std::string> filtration_problems;
  Rational max_crop_defect;
  std::string crop_witness;
  std::size_t crop_pairs_checked = 0;
  Rational tolerance;

  bool passed() const {
    return nesting_ok && filtrations_ok && !(max_independence_defect > tolerance) && !(max_crop_defect > tolerance);
  }
  nlohmann::json to_json() const;
};

HypothesisReport check_hypotheses(const FactorSystem& system, const HypothesisOptions& opt = {});

// Union of positive-weight atoms of B on which P(E'|atom) > 0.
Bitset weak_mixing_step(const Bitset& event, const ExactFactor& b);

struct FiniteRankTerm {
  Bitset base;                      // E_{0,m}, measurable in B0
  std::vector<std::size_t> atoms;   // atom index of parts_j
  std::vector<Bitset> part_events;  // E_{j,m}, the atoms themselves
};
// E == union over m of (E_{0,m} & E_{1,m} & ... & E_{l,m}). Throws InputError
// if E is not measurable in B0 v parts_1 v ... v parts_l.
std::vector<FiniteRankTerm> finite_rank_decompose(const Bitset& event, const ExactFactor& b0,
                                                  const std::vector<ExactFactor>& parts);

struct ChainSlot {
  std::vector<ExactFactor> chain;  // ascending; the last entry is B_i
  Bitset event;                    // E_i, measurable in the last entry
};
struct ChainStepResult {
  std::vector<Bitset> events;     // E_{alpha,i}
  Rational threshold;             // |I| / (|I|+1)
  std::vector<Rational> losses;   // P(E_i \ E_{alpha,i})
  Rational intersection_prob;     // P(meet of E_{alpha,i})
  Rational hypothesis_defect;     // max_i defect(B_i, join_{j!=i} B_{alpha,j}, B_{alpha,i})
  bool hypothesis_exact = false;  // defect == 0
  bool null_intersection = false;
};
// E_{alpha,i} := {P(E_i | B_{alpha,i}) > |I|/(|I|+1)}. Throws InputError on a
// missing chain or alpha beyond a chain.
ChainStepResult chain_limit_step(const std::vector<ChainSlot>& slots, std::size_t alpha);

struct UipOptions {
  // Return the events unchanged whenever their meet is already empty.
  bool shortcut_empty = true;
  // Repair non-null intersections instead of failing; the epsilon bound is
  // then reported rather than promised.
  bool best_effort = false;
  bool check_hypotheses = true;
  HypothesisOptions hypotheses;
};

// Requires P(meet of E_e) == 0 and the hypotheses at the configured tolerance
// (PreconditionError otherwise). The certificate is recomputed by
// validate_solution; a certified run that fails it throws VerificationError.
UipSolution uip_construct(const UipProblem& problem, const UipOptions& opt = {});

// Independent validator.
UipCertificate validate_solution(const UipProblem& problem, const std::map<Mask, Bitset>& f);

struct GeneratorOptions {
  unsigned J = 3;
  unsigned height = 2;
  std::size_t max_points = 256;
  bool filtrations = false;  // add a two-level chain for each top member
  double atom_density = 0.6;
  Rational epsilon = Rational(1, 10);
};
// Product construction: one independent coordinate per member of
// {e : |e| <= height}, with B_e generated by the coordinates of the subsets of
// e. At least one coordinate carries a zero-weight value, and events are
// trimmed until their meet is null (but typically nonempty).
UipProblem generate_certified_problem(std::uint64_t seed, const GeneratorOptions& opt = {});

// The three-point worked example: weights (1/2,1/2,0) on a,b,c; B_empty trivial;
// B_{0} = {{a},{b,c}}, B_{1} = {{a,b},{c}}; E_empty = all, E_{0} = {b,c}, E_{1} = {c}.
UipProblem three_point_problem(const Rational& epsilon = Rational(1, 10));

nlohmann::json problem_to_json(const UipProblem& p);
UipProblem problem_from_json(const nlohmann::json& j);
nlohmann::json solution_to_json(const UipProblem& p, const UipSolution& s);
std::map<Mask, Bitset> solution_events_from_json(const UipProblem& p, const nlohmann::json& j);

}  // namespace rlab
