#include "rlab/probspace.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "rlab/errors.hpp"

namespace rlab {

namespace {

template <class T>
void require_same_space(const SpacePtr<T>& a, const SpacePtr<T>& b) {
  if (a.get() != b.get()) throw InputError("factors live on different spaces");
}

template <class T>
bool is_one(const T& sum);
template <>
bool is_one(const Rational& sum) {
  return sum == 1;
}
template <>
bool is_one(const double& sum) {
  return sum > 1 - 1e-9 && sum < 1 + 1e-9;
}

}  // namespace

template <class T>
SpacePtr<T> ProbSpace<T>::make(std::vector<T> weights, std::vector<std::string> ids) {
  if (weights.empty()) throw InputError("space needs at least one point");
  T total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw InputError("negative point weight");
    total += w;
  }
  if (!is_one(total)) throw InputError("point weights must sum to 1");
  if (ids.empty()) {
    ids.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) ids.push_back(std::to_string(i));
  }
  if (ids.size() != weights.size()) throw InputError("point id count differs from weight count");
  std::vector<std::string> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("duplicate point id");
  auto s = std::make_shared<ProbSpace<T>>();
  s->weights_ = std::move(weights);
  s->ids_ = std::move(ids);
  return s;
}

template <class T>
SpacePtr<T> ProbSpace<T>::uniform(std::size_t points) {
  if (points == 0) throw InputError("space needs at least one point");
  T w;
  if constexpr (std::is_same_v<T, Rational>)
    w = make_rational(BigInt(1), BigInt(static_cast<unsigned long>(points)));
  else
    w = 1.0 / static_cast<double>(points);
  return make(std::vector<T>(points, w));
}

template <class T>
std::size_t ProbSpace<T>::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return i;
  throw InputError("unknown point id '" + id + "'");
}

template <class T>
T ProbSpace<T>::prob(const Bitset& event) const {
  T total = 0;
  event.for_each([&](std::size_t p) { total += weights_[p]; });
  return total;
}

template <class T>
Bitset ProbSpace<T>::positive_support() const {
  Bitset out(size());
  for (std::size_t p = 0; p < size(); ++p)
    if (weights_[p] > 0) out.set(p);
  return out;
}

template <class T>
Factor<T> Factor<T>::from_canonical(SpacePtr<T> space, std::vector<std::uint32_t> atom_of, std::size_t atoms,
                                    std::vector<std::string> tags) {
  Factor f;
  f.atoms_.assign(atoms, Bitset(space->size()));
  f.atom_weights_.assign(atoms, T(0));
  for (std::size_t p = 0; p < atom_of.size(); ++p) {
    f.atoms_[atom_of[p]].set(p);
    f.atom_weights_[atom_of[p]] += space->weight(p);
  }
  f.space_ = std::move(space);
  f.atom_of_ = std::move(atom_of);
  f.tags_ = std::move(tags);
  return f;
}

template <class T>
Factor<T> Factor<T>::from_labels(SpacePtr<T> space, const std::vector<std::size_t>& labels,
                                 std::vector<std::string> tags) {
  if (!space) throw InputError("null space");
  if (labels.size() != space->size()) throw InputError("atom assignment must cover every point");
  std::unordered_map<std::size_t, std::uint32_t> rename;
  std::vector<std::uint32_t> atom_of(labels.size());
  for (std::size_t p = 0; p < labels.size(); ++p) {
    auto [it, inserted] = rename.emplace(labels[p], static_cast<std::uint32_t>(rename.size()));
    atom_of[p] = it->second;
  }
  return from_canonical(std::move(space), std::move(atom_of), rename.size(), std::move(tags));
}

template <class T>
Factor<T> Factor<T>::from_atoms(SpacePtr<T> space, const std::vector<std::vector<std::size_t>>& atoms,
                                std::vector<std::string> tags) {
  if (!space) throw InputError("null space");
  const std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> labels(space->size(), unset);
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    if (atoms[a].empty()) throw InputError("empty atom");
    for (std::size_t p : atoms[a]) {
      if (p >= space->size()) throw InputError("atom point out of range");
      if (labels[p] != unset) throw InputError("atoms overlap");
      labels[p] = a;
    }
  }
  if (std::find(labels.begin(), labels.end(), unset) != labels.end()) throw InputError("atoms do not cover the space");
  return from_labels(std::move(space), labels, std::move(tags));
}

template <class T>
Factor<T> Factor<T>::trivial(SpacePtr<T> space) {
  return from_labels(space, std::vector<std::size_t>(space->size(), 0));
}

template <class T>
Factor<T> Factor<T>::discrete(SpacePtr<T> space) {
  std::vector<std::size_t> labels(space->size());
  for (std::size_t p = 0; p < labels.size(); ++p) labels[p] = p;
  return from_labels(space, labels);
}

template <class T>
Factor<T> Factor<T>::generated(SpacePtr<T> space, const std::vector<Bitset>& events, std::vector<std::string> tags) {
  std::map<std::vector<bool>, std::size_t> keys;
  std::vector<std::size_t> labels(space->size());
  for (std::size_t p = 0; p < space->size(); ++p) {
    std::vector<bool> signature(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) signature[i] = events[i].test(p);
    labels[p] = keys.emplace(std::move(signature), keys.size()).first->second;
  }
  return from_labels(std::move(space), labels, std::move(tags));
}

template <class T>
bool Factor<T>::measurable(const Bitset& event) const {
  for (const auto& a : atoms_)
    if (a.intersects(event) && !a.is_subset_of(event)) return false;
  return true;
}

template <class T>
Bitset Factor<T>::union_of(const std::vector<std::size_t>& chosen) const {
  Bitset out(space_->size());
  for (std::size_t a : chosen) out |= atoms_.at(a);
  return out;
}

template <class T>
bool Factor<T>::same_partition(const Factor& other) const {
  return space_.get() == other.space_.get() && atom_of_ == other.atom_of_;
}

template <class T>
RandomVar<T> RandomVar<T>::constant(SpacePtr<T> space, const T& c) {
  RandomVar v{space, std::vector<T>(space->size(), c)};
  return v;
}

template <class T>
RandomVar<T> RandomVar<T>::indicator(SpacePtr<T> space, const Bitset& event) {
  RandomVar v{space, std::vector<T>(space->size(), T(0))};
  event.for_each([&](std::size_t p) { v.values[p] = 1; });
  return v;
}

namespace {

template <class T, class Op>
RandomVar<T> pointwise(const RandomVar<T>& a, const RandomVar<T>& b, Op op) {
  if (a.space.get() != b.space.get()) throw InputError("random variables on different spaces");
  RandomVar<T> out{a.space, std::vector<T>(a.values.size())};
  for (std::size_t p = 0; p < a.values.size(); ++p) out.values[p] = op(a.values[p], b.values[p]);
  return out;
}

}  // namespace

template <class T>
RandomVar<T> RandomVar<T>::operator+(const RandomVar& o) const {
  return pointwise(*this, o, [](const T& x, const T& y) { return T(x + y); });
}
template <class T>
RandomVar<T> RandomVar<T>::operator-(const RandomVar& o) const {
  return pointwise(*this, o, [](const T& x, const T& y) { return T(x - y); });
}
template <class T>
RandomVar<T> RandomVar<T>::operator*(const RandomVar& o) const {
  return pointwise(*this, o, [](const T& x, const T& y) { return T(x * y); });
}
template <class T>
bool RandomVar<T>::operator==(const RandomVar& o) const {
  if (space.get() != o.space.get() || values.size() != o.values.size()) return false;
  for (std::size_t p = 0; p < values.size(); ++p)
    if (!ScalarTraits<T>::equal(values[p], o.values[p])) return false;
  return true;
}

template <class T>
Factor<T> join(const Factor<T>& a, const Factor<T>& b) {
  require_same_space(a.space(), b.space());
  std::vector<std::size_t> labels(a.space()->size());
  const std::size_t nb = b.atom_count();
  for (std::size_t p = 0; p < labels.size(); ++p) labels[p] = a.atom_of(p) * nb + b.atom_of(p);
  return Factor<T>::from_labels(a.space(), labels);
}

template <class T>
Factor<T> join_all(const SpacePtr<T>& space, const std::vector<const Factor<T>*>& factors) {
  Factor<T> acc = Factor<T>::trivial(space);
  for (const auto* f : factors) acc = join(acc, *f);
  return acc;
}

template <class T>
bool refines(const Factor<T>& fine, const Factor<T>& coarse) {
  require_same_space(fine.space(), coarse.space());
  std::vector<std::int64_t> image(fine.atom_count(), -1);
  for (std::size_t p = 0; p < fine.space()->size(); ++p) {
    auto& slot = image[fine.atom_of(p)];
    const auto c = static_cast<std::int64_t>(coarse.atom_of(p));
    if (slot < 0)
      slot = c;
    else if (slot != c)
      return false;
  }
  return true;
}

template <class T>
T expectation(const RandomVar<T>& f) {
  T total = 0;
  for (std::size_t p = 0; p < f.values.size(); ++p) total += f.space->weight(p) * f.values[p];
  return total;
}

template <class T>
RandomVar<T> cond_expect(const RandomVar<T>& f, const Factor<T>& b) {
  if (f.space.get() != b.space().get()) throw InputError("random variable and factor on different spaces");
  std::vector<T> mass(b.atom_count(), T(0));
  for (std::size_t p = 0; p < f.values.size(); ++p) mass[b.atom_of(p)] += f.space->weight(p) * f.values[p];
  std::vector<T> mean(b.atom_count(), T(0));
  for (std::size_t a = 0; a < mean.size(); ++a)
    if (b.atom_weights()[a] > 0) mean[a] = mass[a] / b.atom_weights()[a];
  RandomVar<T> out{f.space, std::vector<T>(f.values.size())};
  for (std::size_t p = 0; p < f.values.size(); ++p) out.values[p] = mean[b.atom_of(p)];
  return out;
}

template <class T>
RandomVar<T> cond_prob(const Bitset& event, const Factor<T>& b) {
  return cond_expect(RandomVar<T>::indicator(b.space(), event), b);
}

template <class T>
T lp_norm(const RandomVar<T>& f, Norm p) {
  T total = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const T& w = f.space->weight(i);
    const T a = ScalarTraits<T>::abs(f.values[i]);
    switch (p) {
      case Norm::l1: total += w * a; break;
      case Norm::l2_squared: total += w * a * a; break;
      case Norm::linf:
        if (w > 0 && a > total) total = a;
        break;
    }
  }
  return total;
}

template <class T>
T independence_defect(const Factor<T>& b1, const Factor<T>& b2, const Factor<T>& b) {
  require_same_space(b1.space(), b.space());
  require_same_space(b2.space(), b.space());
  const auto& space = *b.space();
  const std::size_t n1 = b1.atom_count();
  const std::size_t n2 = b2.atom_count();
  std::vector<T> acc(n1 * n2, T(0));
  std::vector<T> m1(n1, T(0)), m2(n2, T(0));
  std::vector<char> seen1(n1, 0), seen2(n2, 0);
  std::vector<std::size_t> touched1, touched2;
  std::unordered_map<std::size_t, T> joint;
  // Per B-atom b: sum over pairs of |P(a1 a2 b) - P(a1 b) P(a2 b) / P(b)|.
  for (std::size_t a = 0; a < b.atom_count(); ++a) {
    const T& pb = b.atom_weights()[a];
    if (!(pb > 0)) continue;
    touched1.clear();
    touched2.clear();
    joint.clear();
    b.atom(a).for_each([&](std::size_t p) {
      const T& w = space.weight(p);
      if (!(w > 0)) return;
      const std::size_t x = b1.atom_of(p), y = b2.atom_of(p);
      if (!seen1[x]) {
        seen1[x] = 1;
        m1[x] = 0;
        touched1.push_back(x);
      }
      if (!seen2[y]) {
        seen2[y] = 1;
        m2[y] = 0;
        touched2.push_back(y);
      }
      m1[x] += w;
      m2[y] += w;
      joint[x * n2 + y] += w;
    });
    for (std::size_t x : touched1) {
      for (std::size_t y : touched2) {
        T diff = m1[x] * m2[y] / pb;
        if (auto it = joint.find(x * n2 + y); it != joint.end()) diff -= it->second;
        acc[x * n2 + y] += ScalarTraits<T>::abs(diff);
      }
    }
    for (std::size_t x : touched1) seen1[x] = 0;
    for (std::size_t y : touched2) seen2[y] = 0;
  }
  T best = 0;
  for (const auto& v : acc)
    if (v > best) best = v;
  return best;
}

template <class T>
RegularApprox<T> best_regular_approx(const Bitset& event, const std::vector<Bitset>& generators, const T& epsilon,
                                     const SpacePtr<T>& space) {
  if (generators.empty()) throw InputError("best_regular_approx needs at least one generator");
  const auto atoms = Factor<T>::generated(space, generators);
  Bitset chosen(space->size());
  for (std::size_t a = 0; a < atoms.atom_count(); ++a) {
    const T inside = space->prob(atoms.atom(a) & event);
    if (inside * 2 > atoms.atom_weights()[a]) chosen |= atoms.atom(a);
  }
  RegularApprox<T> out{chosen, space->prob(chosen ^ event), false};
  out.within_epsilon = !(out.distance > epsilon);
  return out;
}

template <class T>
IndependenceVerdicts equiv_independence_check(const Factor<T>& b1, const Factor<T>& b2, const Factor<T>& b,
                                              std::size_t max_enumerated_atoms) {
  using Tr = ScalarTraits<T>;
  const auto& space = b.space();
  const T defect = independence_defect(b1, b2, b);
  const Factor<T> bb2 = join(b, b2);

  IndependenceVerdicts v;
  v.defect_zero = Tr::is_zero(defect);
  if constexpr (std::is_same_v<T, Rational>)
    v.defect = to_string(defect);
  else
    v.defect = std::to_string(defect);

  auto norms_equal = [&](const Bitset& e) {
    const auto f = RandomVar<T>::indicator(space, e);
    return Tr::equal(lp_norm(cond_expect(f, bb2), Norm::l2_squared), lp_norm(cond_expect(f, b), Norm::l2_squared));
  };

  v.projection_equal = true;
  v.norm_equal_atoms = true;
  for (const auto& atom : b1.atoms()) {
    const auto f = RandomVar<T>::indicator(space, atom);
    if (!(cond_expect(f, bb2) == cond_expect(f, b))) {
      // Compare only on positive-weight points: conditional expectations are a.s. objects.
      const auto lhs = cond_expect(f, bb2), rhs = cond_expect(f, b);
      for (std::size_t p = 0; p < space->size(); ++p)
        if (space->weight(p) > 0 && !Tr::equal(lhs.values[p], rhs.values[p])) v.projection_equal = false;
    }
    if (!norms_equal(atom)) v.norm_equal_atoms = false;
  }

  v.norm_equal_events = true;
  const std::size_t k = b1.atom_count();
  if (k <= max_enumerated_atoms) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      Bitset e(space->size());
      for (std::size_t a = 0; a < k; ++a)
        if ((mask >> a) & 1u) e |= b1.atom(a);
      ++v.events_checked;
      if (!norms_equal(e)) v.norm_equal_events = false;
    }
  } else {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t c = a; c < k; ++c) {
        ++v.events_checked;
        if (!norms_equal(b1.atom(a) | b1.atom(c))) v.norm_equal_events = false;
      }
  }

  if (v.defect_zero != v.projection_equal || v.defect_zero != v.norm_equal_atoms ||
      v.defect_zero != v.norm_equal_events)
    throw VerificationError("independence verdicts disagree (defect " + v.defect + ")");
  return v;
}

namespace {

nlohmann::json ids_json(const std::vector<std::string>& ids) { return ids; }

template <class T>
std::size_t point_from_json(const ProbSpace<T>& space, const nlohmann::json& id) {
  if (id.is_number_integer()) {
    const auto i = id.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= space.size()) throw InputError("point index out of range");
    return static_cast<std::size_t>(i);
  }
  if (id.is_string()) return space.index_of(id.get<std::string>());
  throw InputError("point id must be a string or an index");
}

void check_mode(const nlohmann::json& j, const std::string& want) {
  if (!j.is_object()) throw InputError("space must be a JSON object");
  const std::string mode = j.value("mode", std::string("rational"));
  if (mode != want) throw InputError("space mode '" + mode + "' where '" + want + "' is required");
}

}  // namespace

nlohmann::json space_to_json(const ExactSpace& s) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& q : s.weights()) w.push_back(rational_to_json(q));
  return {{"mode", "rational"}, {"points", ids_json(s.ids())}, {"weights", w}};
}

nlohmann::json space_to_json(const FloatSpace& s) {
  return {{"mode", "float"}, {"points", ids_json(s.ids())}, {"weights", s.weights()}};
}

SpacePtr<Rational> exact_space_from_json(const nlohmann::json& j) {
  check_mode(j, "rational");
  std::vector<Rational> weights;
  for (const auto& w : j.at("weights")) weights.push_back(rational_from_json(w));
  std::vector<std::string> ids;
  if (j.contains("points"))
    for (const auto& p : j.at("points")) ids.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  return ExactSpace::make(std::move(weights), std::move(ids));
}

SpacePtr<double> float_space_from_json(const nlohmann::json& j) {
  check_mode(j, "float");
  std::vector<double> weights;
  for (const auto& w : j.at("weights")) {
    if (!w.is_number()) throw InputError("float weights must be numbers");
    weights.push_back(w.get<double>());
  }
  std::vector<std::string> ids;
  if (j.contains("points"))
    for (const auto& p : j.at("points")) ids.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  return FloatSpace::make(std::move(weights), std::move(ids));
}

template <class T>
nlohmann::json factor_to_json(const Factor<T>& f) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : f.atoms()) atoms.push_back(event_to_json(*f.space(), a));
  nlohmann::json out{{"atoms", atoms}};
  if (!f.tags().empty()) out["tags"] = f.tags();
  return out;
}

template <class T>
Factor<T> factor_from_json(const SpacePtr<T>& space, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms")) throw InputError("factor needs an atoms array");
  std::vector<std::vector<std::size_t>> atoms;
  for (const auto& a : j.at("atoms")) {
    std::vector<std::size_t> pts;
    for (const auto& id : a) pts.push_back(point_from_json(*space, id));
    atoms.push_back(std::move(pts));
  }
  std::vector<std::string> tags;
  if (j.contains("tags")) tags = j.at("tags").get<std::vector<std::string>>();
  return Factor<T>::from_atoms(space, atoms, std::move(tags));
}

template <class T>
Bitset event_from_json(const ProbSpace<T>& space, const nlohmann::json& ids) {
  if (!ids.is_array()) throw InputError("event must be an array of point ids");
  Bitset e(space.size());
  for (const auto& id : ids) e.set(point_from_json(space, id));
  return e;
}

template <class T>
nlohmann::json event_to_json(const ProbSpace<T>& space, const Bitset& event) {
  nlohmann::json out = nlohmann::json::array();
  event.for_each([&](std::size_t p) { out.push_back(space.id(p)); });
  return out;
}

#define RLAB_INSTANTIATE(T)                                                                                     \
  template class ProbSpace<T>;                                                                                  \
  template class Factor<T>;                                                                                     \
  template struct RandomVar<T>;                                                                                 \
  template Factor<T> join(const Factor<T>&, const Factor<T>&);                                                  \
  template Factor<T> join_all(const SpacePtr<T>&, const std::vector<const Factor<T>*>&);                        \
  template bool refines(const Factor<T>&, const Factor<T>&);                                                    \
  template T expectation(const RandomVar<T>&);                                                                  \
  template RandomVar<T> cond_expect(const RandomVar<T>&, const Factor<T>&);                                     \
  template RandomVar<T> cond_prob(const Bitset&, const Factor<T>&);                                             \
  template T lp_norm(const RandomVar<T>&, Norm);                                                                \
  template T independence_defect(const Factor<T>&, const Factor<T>&, const Factor<T>&);                         \
  template RegularApprox<T> best_regular_approx(const Bitset&, const std::vector<Bitset>&, const T&,            \
                                                const SpacePtr<T>&);                                            \
  template IndependenceVerdicts equiv_independence_check(const Factor<T>&, const Factor<T>&, const Factor<T>&, \
                                                         std::size_t);                                          \
  template nlohmann::json factor_to_json(const Factor<T>&);                                                     \
  template Factor<T> factor_from_json(const SpacePtr<T>&, const nlohmann::json&);                               \
  template Bitset event_from_json(const ProbSpace<T>&, const nlohmann::json&);                                  \
  template nlohmann::json event_to_json(const ProbSpace<T>&, const Bitset&);

RLAB_INSTANTIATE(Rational)
RLAB_INSTANTIATE(double)

}  // namespace rlab
