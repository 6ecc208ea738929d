#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace enclose {

class interval_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// How endpoints are pushed outward after each primitive operation.
//
// optimal_outward yields the closest machine numbers below/above the exact
// result. It is computed with error-free transformations (2Sum, fma-based
// product/remainder residuals) under the default round-to-nearest mode, so
// no floating-point environment state is ever touched.
//
// slack_ulps rounds to nearest and then steps `ulps` machine numbers outward.
struct RoundingPolicy {
    enum class Mode { optimal_outward, slack_ulps };

    Mode mode = Mode::optimal_outward;
    int ulps = 1;

    static RoundingPolicy optimal() { return {}; }
    static RoundingPolicy slack(int m);

    std::string to_string() const;
    // Accepts "optimal", "optimal-outward", "slack-ulps(M)" and "slack:M".
    static RoundingPolicy parse(std::string_view text);

    friend bool operator==(const RoundingPolicy&, const RoundingPolicy&) = default;
};

namespace detail {
inline thread_local RoundingPolicy active_rounding{};
}

inline const RoundingPolicy& current_rounding() noexcept { return detail::active_rounding; }

// Installs a rounding policy for the calling thread for the lifetime of the scope.
class RoundingScope {
public:
    explicit RoundingScope(RoundingPolicy policy) noexcept : saved_(detail::active_rounding)
    {
        detail::active_rounding = policy;
    }
    ~RoundingScope() { detail::active_rounding = saved_; }
    RoundingScope(const RoundingScope&) = delete;
    RoundingScope& operator=(const RoundingScope&) = delete;

private:
    RoundingPolicy saved_;
};

namespace fp {

inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double max = std::numeric_limits<double>::max();

// Below this magnitude product/remainder residuals may be inexact (gradual underflow).
inline constexpr double residual_floor = 0x1p-960;

inline double next_down(double x) noexcept
{
    if (x == -inf || std::isnan(x)) {
        return x;
    }
    if (x == 0.0) {
        return -std::numeric_limits<double>::denorm_min();
    }
    auto bits = std::bit_cast<std::uint64_t>(x);
    bits = x > 0.0 ? bits - 1 : bits + 1;
    return std::bit_cast<double>(bits);
}

inline double next_up(double x) noexcept { return -next_down(-x); }

inline double step_down(double x, int n) noexcept
{
    for (int i = 0; i < n; ++i) {
        x = next_down(x);
    }
    return x;
}

inline double step_up(double x, int n) noexcept
{
    for (int i = 0; i < n; ++i) {
        x = next_up(x);
    }
    return x;
}

// Rounds a nearest-mode result `r` downward given the sign of (exact - r).
inline double settle_down(double r, double residual) noexcept
{
    const auto& pol = current_rounding();
    if (pol.mode == RoundingPolicy::Mode::slack_ulps) {
        return step_down(r, pol.ulps);
    }
    return residual < 0.0 ? next_down(r) : r;
}

inline double settle_up(double r, double residual) noexcept
{
    const auto& pol = current_rounding();
    if (pol.mode == RoundingPolicy::Mode::slack_ulps) {
        return step_up(r, pol.ulps);
    }
    return residual > 0.0 ? next_up(r) : r;
}

// Residual of a + b - s (2Sum). Not finite only in overflow corner cases.
inline double sum_residual(double a, double b, double s) noexcept
{
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

// Indeterminate (+inf) + (-inf) widens to -inf on the lower endpoint.
inline double add_down(double a, double b) noexcept
{
    const double s = a + b;
    if (!std::isfinite(s)) {
        if (std::isnan(s)) {
            return -inf;
        }
        if (std::isinf(a) || std::isinf(b)) {
            return s;
        }
        return s > 0.0 ? max : -inf;
    }
    const double e = sum_residual(a, b, s);
    if (!std::isfinite(e)) {
        return next_down(s);
    }
    return settle_down(s, e);
}

inline double add_up(double a, double b) noexcept { return -add_down(-a, -b); }

// 0 * inf is taken as 0 for enclosure purposes.
inline double mul_down(double a, double b) noexcept
{
    if (a == 0.0 || b == 0.0) {
        return 0.0;
    }
    const double p = a * b;
    if (std::isinf(p)) {
        if (std::isinf(a) || std::isinf(b)) {
            return p;
        }
        return p > 0.0 ? max : -inf;
    }
    if (std::fabs(p) < residual_floor) {
        return std::min(next_down(p), step_down(p, current_rounding().ulps));
    }
    return settle_down(p, std::fma(a, b, -p));
}

inline double mul_up(double a, double b) noexcept { return -mul_down(-a, b); }

// Lower bound of 1/b for b != 0.
inline double recip_down(double b) noexcept
{
    if (std::isinf(b)) {
        return b > 0.0 ? 0.0 : -0.0;
    }
    const double q = 1.0 / b;
    if (std::isinf(q)) {
        return q > 0.0 ? max : -inf;
    }
    if (std::fabs(q) < residual_floor || std::fabs(b) < residual_floor) {
        return std::min(next_down(q), step_down(q, current_rounding().ulps));
    }
    // sign(1/b - q) == sign(r) * sign(b), with r = 1 - q*b exact.
    const double r = std::fma(-q, b, 1.0);
    return settle_down(q, b > 0.0 ? r : -r);
}

inline double recip_up(double b) noexcept { return -recip_down(-b); }

inline double sqrt_down(double a) noexcept
{
    if (a == 0.0 || std::isinf(a)) {
        return std::sqrt(a);
    }
    const double q = std::sqrt(a);
    if (a < residual_floor) {
        return std::max(0.0, std::min(next_down(q), step_down(q, current_rounding().ulps)));
    }
    return std::max(0.0, settle_down(q, std::fma(-q, q, a)));
}

inline double sqrt_up(double a) noexcept
{
    if (a == 0.0 || std::isinf(a)) {
        return std::sqrt(a);
    }
    const double q = std::sqrt(a);
    if (a < residual_floor) {
        return std::max(next_up(q), step_up(q, current_rounding().ulps));
    }
    return settle_up(q, std::fma(-q, q, a));
}

} // namespace fp

// Closed interval [lo, hi] over the extended reals. Never empty, never NaN.
class Interval {
public:
    constexpr Interval() noexcept = default;

    Interval(double lo, double hi) : lo_(lo), hi_(hi)
    {
        if (std::isnan(lo) || std::isnan(hi)) {
            throw interval_error("interval endpoint is NaN");
        }
        if (lo > hi) {
            throw interval_error("interval lower endpoint exceeds upper endpoint");
        }
    }

    // Degenerate interval [x, x]; x must be finite.
    static Interval point(double x)
    {
        if (!std::isfinite(x)) {
            throw interval_error("point interval requires a finite value");
        }
        return unchecked(x, x);
    }

    static constexpr Interval unchecked(double lo, double hi) noexcept
    {
        Interval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }

    static constexpr Interval entire() noexcept { return unchecked(-fp::inf, fp::inf); }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }

    // Upper bound on hi - lo.
    double width() const noexcept { return fp::add_up(hi_, -lo_); }
    double mid() const noexcept;

    constexpr bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    constexpr bool contains(const Interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    constexpr bool is_point() const noexcept { return lo_ == hi_; }
    constexpr bool intersects(const Interval& o) const noexcept { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

inline Interval operator+(Interval x, Interval y) noexcept
{
    return Interval::unchecked(fp::add_down(x.lo(), y.lo()), fp::add_up(x.hi(), y.hi()));
}

inline Interval operator-(Interval x) noexcept { return Interval::unchecked(-x.hi(), -x.lo()); }

inline Interval operator-(Interval x, Interval y) noexcept
{
    return Interval::unchecked(fp::add_down(x.lo(), -y.hi()), fp::add_up(x.hi(), -y.lo()));
}

inline Interval operator*(Interval x, Interval y) noexcept
{
    const double a = x.lo(), b = x.hi(), c = y.lo(), d = y.hi();
    // Sign-case split keeps the common cases to two products per endpoint.
    if (a >= 0.0 && c >= 0.0) {
        return Interval::unchecked(fp::mul_down(a, c), fp::mul_up(b, d));
    }
    if (b <= 0.0 && d <= 0.0) {
        return Interval::unchecked(fp::mul_down(b, d), fp::mul_up(a, c));
    }
    if (a >= 0.0 && d <= 0.0) {
        return Interval::unchecked(fp::mul_down(b, c), fp::mul_up(a, d));
    }
    if (b <= 0.0 && c >= 0.0) {
        return Interval::unchecked(fp::mul_down(a, d), fp::mul_up(b, c));
    }
    const double lo = std::min({fp::mul_down(a, c), fp::mul_down(a, d), fp::mul_down(b, c), fp::mul_down(b, d)});
    const double hi = std::max({fp::mul_up(a, c), fp::mul_up(a, d), fp::mul_up(b, c), fp::mul_up(b, d)});
    return Interval::unchecked(lo, hi);
}

// Hull of 1/y over y in Y, zero excluded; [-inf, inf] when 0 is interior.
Interval reciprocal(Interval y) noexcept;

// x * (1 / y). A divisor containing zero yields the extended-real hull.
Interval operator/(Interval x, Interval y) noexcept;

inline Interval operator+(Interval x, double y) { return x + Interval::point(y); }
inline Interval operator+(double x, Interval y) { return Interval::point(x) + y; }
inline Interval operator-(Interval x, double y) { return x - Interval::point(y); }
inline Interval operator-(double x, Interval y) { return Interval::point(x) - y; }
inline Interval operator*(Interval x, double y) { return x * Interval::point(y); }
inline Interval operator*(double x, Interval y) { return Interval::point(x) * y; }
inline Interval operator/(Interval x, double y) { return x / Interval::point(y); }
inline Interval operator/(double x, Interval y) { return Interval::point(x) / y; }

inline Interval& operator+=(Interval& x, Interval y) noexcept { return x = x + y; }
inline Interval& operator-=(Interval& x, Interval y) noexcept { return x = x - y; }
inline Interval& operator*=(Interval& x, Interval y) noexcept { return x = x * y; }

// Range-exact square (no dependence between the two factors).
inline Interval sqr(Interval x) noexcept
{
    const double a = x.lo(), b = x.hi();
    if (a >= 0.0) {
        return Interval::unchecked(fp::mul_down(a, a), fp::mul_up(b, b));
    }
    if (b <= 0.0) {
        return Interval::unchecked(fp::mul_down(b, b), fp::mul_up(a, a));
    }
    return Interval::unchecked(0.0, std::max(fp::mul_up(a, a), fp::mul_up(b, b)));
}

// A slightly negative lower endpoint is clamped to zero; hi < 0 is a domain error.
Interval sqrt(Interval x);

enum class Elementary { exp, sin, cos };

Interval transcendental(Elementary fn, Interval x) noexcept;

inline Interval exp(Interval x) noexcept { return transcendental(Elementary::exp, x); }
inline Interval sin(Interval x) noexcept { return transcendental(Elementary::sin, x); }
inline Interval cos(Interval x) noexcept { return transcendental(Elementary::cos, x); }

enum class Constant { pi, e };

// Tightest machine interval around the constant.
Interval constant(Constant c) noexcept;

inline Interval pi() noexcept { return constant(Constant::pi); }

inline Interval hull(Interval x, Interval y) noexcept
{
    return Interval::unchecked(std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi()));
}

inline std::optional<Interval> intersect(Interval x, Interval y) noexcept
{
    if (!x.intersects(y)) {
        return std::nullopt;
    }
    return Interval::unchecked(std::max(x.lo(), y.lo()), std::min(x.hi(), y.hi()));
}

std::string to_string(const Interval& x);

} // namespace enclose
