#include "rlab/rational.hpp"

#include <cmath>
#include <limits>

#include "rlab/errors.hpp"

namespace rlab {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(long num, long den) { return make_rational(BigInt(num), BigInt(den)); }

nlohmann::json bigint_to_json(const BigInt& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

nlohmann::json rational_to_json(const Rational& q) {
  return {{"num", bigint_to_json(q.get_num())}, {"den", bigint_to_json(q.get_den())}};
}

nlohmann::json rational_report(const Rational& q) {
  auto j = rational_to_json(q);
  j["float"] = q.get_d();
  return j;
}

namespace {

BigInt bigint_from_json(const nlohmann::json& j, const char* field) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    BigInt z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw InputError(std::string("bad integer in ") + field);
    return z;
  }
  throw InputError(std::string("expected integer for ") + field);
}

}  // namespace

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_object()) {
    if (!j.contains("num") || !j.contains("den")) throw InputError("rational object needs num and den");
    return make_rational(bigint_from_json(j.at("num"), "num"), bigint_from_json(j.at("den"), "den"));
  }
  if (j.is_number_integer()) return Rational(bigint_from_json(j, "value"));
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad rational string");
    if (q.get_den() == 0) throw InputError("rational with zero denominator");
    q.canonicalize();
    return q;
  }
  throw InputError("expected rational as {num, den}");
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value");
  Rational q(x);  // mpq_set_d is exact
  return q;
}

}  // namespace rlab
