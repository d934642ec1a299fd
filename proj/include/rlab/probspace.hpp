#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rlab/bitset.hpp"
#include "rlab/rational.hpp"

namespace rlab {

// Numeric mode of a space. Exact spaces use Rational; float spaces use double
// and compare with a small absolute tolerance where equality is asked for.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr const char* mode = "rational";
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr const char* mode = "float";
  static constexpr double eps = 1e-12;
  static bool is_zero(double x) { return x <= eps && x >= -eps; }
  static bool equal(double a, double b) { return is_zero(a - b); }
  static double abs(double x) { return x < 0 ? -x : x; }
  static double to_double(double x) { return x; }
};

template <class T>
class ProbSpace;
template <class T>
using SpacePtr = std::shared_ptr<const ProbSpace<T>>;

// Finite sample space with one nonnegative weight per point, summing to 1.
// Zero weights are allowed: they are the finite stand-in for null but
// nonempty events.
template <class T>
class ProbSpace {
 public:
  static SpacePtr<T> make(std::vector<T> weights, std::vector<std::string> ids = {});
  static SpacePtr<T> uniform(std::size_t points);

  std::size_t size() const noexcept { return weights_.size(); }
  const T& weight(std::size_t point) const { return weights_[point]; }
  const std::vector<T>& weights() const noexcept { return weights_; }
  const std::string& id(std::size_t point) const { return ids_[point]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  // Throws InputError for an unknown id.
  std::size_t index_of(const std::string& id) const;

  T prob(const Bitset& event) const;
  Bitset everything() const { return Bitset(size(), true); }
  Bitset nothing() const { return Bitset(size()); }
  Bitset positive_support() const;

 private:
  std::vector<T> weights_;
  std::vector<std::string> ids_;
};

// A factor is a partition of the points into atoms, numbered 0..atoms-1 in
// order of first appearance.
template <class T>
class Factor {
 public:
  Factor() = default;

  // labels[p] is any grouping key; equal keys share an atom.
  static Factor from_labels(SpacePtr<T> space, const std::vector<std::size_t>& labels,
                            std::vector<std::string> tags = {});
  // Atoms must partition the points. Throws InputError otherwise.
  static Factor from_atoms(SpacePtr<T> space, const std::vector<std::vector<std::size_t>>& atoms,
                           std::vector<std::string> tags = {});
  static Factor trivial(SpacePtr<T> space);
  static Factor discrete(SpacePtr<T> space);
  // The factor generated by finitely many events: atoms are membership signatures.
  static Factor generated(SpacePtr<T> space, const std::vector<Bitset>& events, std::vector<std::string> tags = {});

  const SpacePtr<T>& space() const noexcept { return space_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }
  std::size_t atom_of(std::size_t point) const { return atom_of_[point]; }
  const std::vector<std::uint32_t>& assignment() const noexcept { return atom_of_; }
  const Bitset& atom(std::size_t a) const { return atoms_[a]; }
  const std::vector<Bitset>& atoms() const noexcept { return atoms_; }
  const std::vector<T>& atom_weights() const noexcept { return atom_weights_; }
  const std::vector<std::string>& tags() const noexcept { return tags_; }

  bool measurable(const Bitset& event) const;
  // Union of the atoms selected by `chosen` (atom indices).
  Bitset union_of(const std::vector<std::size_t>& chosen) const;
  // Same partition of the same space.
  bool same_partition(const Factor& other) const;

 private:
  static Factor from_canonical(SpacePtr<T> space, std::vector<std::uint32_t> atom_of, std::size_t atoms,
                               std::vector<std::string> tags);

  SpacePtr<T> space_;
  std::vector<std::uint32_t> atom_of_;
  std::vector<Bitset> atoms_;
  std::vector<T> atom_weights_;
  std::vector<std::string> tags_;
};

template <class T>
struct RandomVar {
  SpacePtr<T> space;
  std::vector<T> values;

  static RandomVar constant(SpacePtr<T> space, const T& c);
  static RandomVar indicator(SpacePtr<T> space, const Bitset& event);
  RandomVar operator+(const RandomVar& o) const;
  RandomVar operator-(const RandomVar& o) const;
  RandomVar operator*(const RandomVar& o) const;
  bool operator==(const RandomVar& o) const;
};

enum class Norm { l1, l2_squared, linf };

template <class T>
Factor<T> join(const Factor<T>& a, const Factor<T>& b);
// Join of a list; the trivial factor for an empty list (needs the space).
template <class T>
Factor<T> join_all(const SpacePtr<T>& space, const std::vector<const Factor<T>*>& factors);
// True when every atom of `fine` lies inside one atom of `coarse`.
template <class T>
bool refines(const Factor<T>& fine, const Factor<T>& coarse);

template <class T>
T expectation(const RandomVar<T>& f);
// Atom-wise weighted average; 0 on atoms of total weight 0.
template <class T>
RandomVar<T> cond_expect(const RandomVar<T>& f, const Factor<T>& b);
// P(E | B) as a random variable.
template <class T>
RandomVar<T> cond_prob(const Bitset& event, const Factor<T>& b);
// L1, squared L2, or the essential supremum (max |f| over positive-weight points).
template <class T>
T lp_norm(const RandomVar<T>& f, Norm p);

// max over atom pairs (E1 of B1, E2 of B2) of ||E(1_E1 1_E2|B) - E(1_E1|B)E(1_E2|B)||_L1.
template <class T>
T independence_defect(const Factor<T>& b1, const Factor<T>& b2, const Factor<T>& b);

template <class T>
struct RegularApprox {
  Bitset event;
  T distance;
  bool within_epsilon = false;
};
// Majority rule on the atoms generated by `generators`.
template <class T>
RegularApprox<T> best_regular_approx(const Bitset& event, const std::vector<Bitset>& generators,
                                     const T& epsilon, const SpacePtr<T>& space);

struct IndependenceVerdicts {
  bool defect_zero = false;          // (i)
  bool projection_equal = false;     // (ii), on atom indicators
  bool norm_equal_atoms = false;     // (iii), on atom indicators
  bool norm_equal_events = false;    // (iv), on events of B1
  std::size_t events_checked = 0;
  std::string defect;                // rendered value
};
// Evaluates the four equivalent conditions and throws VerificationError if
// they disagree. Condition (iv) enumerates all events of B1 when B1 has at
// most `max_enumerated_atoms` atoms, else atoms together with pairwise unions.
template <class T>
IndependenceVerdicts equiv_independence_check(const Factor<T>& b1, const Factor<T>& b2, const Factor<T>& b,
                                              std::size_t max_enumerated_atoms = 12);

using ExactSpace = ProbSpace<Rational>;
using ExactFactor = Factor<Rational>;
using ExactVar = RandomVar<Rational>;
using FloatSpace = ProbSpace<double>;
using FloatFactor = Factor<double>;
using FloatVar = RandomVar<double>;

// JSON: {"mode": "rational"|"float", "points": [ids], "weights": [...]}.
// Rational weights are {num, den}; float weights are numbers. Loading a space
// whose mode differs from the requested one is an InputError.
nlohmann::json space_to_json(const ExactSpace& s);
nlohmann::json space_to_json(const FloatSpace& s);
SpacePtr<Rational> exact_space_from_json(const nlohmann::json& j);
SpacePtr<double> float_space_from_json(const nlohmann::json& j);
// Factor JSON: {"atoms": [[point ids...], ...], "tags": [...]}. Point ids may
// be given as strings or as integer indices.
template <class T>
nlohmann::json factor_to_json(const Factor<T>& f);
template <class T>
Factor<T> factor_from_json(const SpacePtr<T>& space, const nlohmann::json& j);
template <class T>
Bitset event_from_json(const ProbSpace<T>& space, const nlohmann::json& ids);
template <class T>
nlohmann::json event_to_json(const ProbSpace<T>& space, const Bitset& event);

}  // namespace rlab
