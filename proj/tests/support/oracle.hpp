#pragma once

// High-precision reference values for the test suites.
//
// Primitive operations on doubles are checked against MPFR with directed
// rounding at 256 bits, which decides "exact value >= lo" and "exact value
// <= hi" without error. Objective values use the reference formulas below at
// 60 significant decimal digits.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "enclose/interval.hpp"

namespace oracle {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>,
                                           boost::multiprecision::et_off>;

enum class Op { add, sub, mul, div, sqr, sqrt, exp, sin, cos };

std::string_view name(Op op) noexcept;

// True when the exact value of op(a[, b]) lies in r. Ops whose exact
// result is undefined (division by zero, sqrt of a negative) return true.
bool encloses(enclose::Interval r, Op op, double a, double b = 0.0);

// True when sin/cos reaches +1 (resp. -1) somewhere in [lo, hi].
bool trig_attains(Op op, double lo, double hi, int sign);

// Reference objective value at x, or its i-th partial derivative by a
// central difference with a step far below double resolution.
Real reference_value(std::string_view function, std::span<const double> x);
Real reference_partial(std::string_view function, std::span<const double> x, std::size_t i);

// Slack granted when comparing a reference value with a double interval:
// far below one ulp of any double involved.
Real reference_slack(const Real& v);
Real partial_slack(const Real& v);

bool contains(enclose::Interval r, const Real& v);
bool contains_partial(enclose::Interval r, const Real& v);

} // namespace oracle
