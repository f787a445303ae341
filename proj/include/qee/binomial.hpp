#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qee {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact C(a, b), zero when b < 0, a < 0 or a < b.
BigInt binomial(long a, long b);

double to_double(const BigRational& r);

}  // namespace qee
