#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <string>

namespace rlab {

using BigInt = mpz_class;
using Rational = mpq_class;

// Canonical rational from numerator/denominator; throws InputError on den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(long num, long den);

// {"num": n, "den": d}. Values outside int64 are written as decimal strings.
nlohmann::json rational_to_json(const Rational& q);
// Same plus a "float" rendering; used in reports.
nlohmann::json rational_report(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json bigint_to_json(const BigInt& z);

// "num/den" (or "num" when den == 1).
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

}  // namespace rlab
