#include "enclose/interval.hpp"

#include <charconv>
#include <cstdlib>

namespace enclose {

namespace {

// M_PI and M_E are both the machine numbers just below the true constants.
constexpr double pi_below = 0x1.921fb54442d18p+1;
constexpr double e_below = 0x1.5bf0a8b145769p+1;

// Transcendentals are evaluated to nearest and widened by at least this many ulps.
constexpr int transcendental_slack = 2;

int elementary_slack() noexcept
{
    const auto& pol = current_rounding();
    if (pol.mode == RoundingPolicy::Mode::slack_ulps) {
        return std::max(transcendental_slack, pol.ulps);
    }
    return transcendental_slack;
}

Interval exp_enclosure(Interval x) noexcept
{
    const int slack = elementary_slack();
    double lo;
    if (x.lo() == -fp::inf) {
        lo = 0.0;
    } else if (x.lo() == 0.0) {
        lo = 1.0;
    } else {
        lo = std::max(0.0, fp::step_down(std::exp(x.lo()), slack));
    }
    double hi;
    if (x.hi() == 0.0) {
        hi = 1.0;
    } else if (x.hi() == -fp::inf) {
        hi = 0.0;
    } else {
        hi = fp::step_up(std::exp(x.hi()), slack);
    }
    return Interval::unchecked(lo, hi);
}

// Shared sin/cos routine. Extrema sit at x = (j + shift) * pi; even j gives +1,
// odd j gives -1 (shift = 0 for cos, 1/2 for sin). When no candidate j can lie
// in the argument range the function is monotone there.
Interval trig_enclosure(Interval x, bool is_sin) noexcept
{
    const Interval full = Interval::unchecked(-1.0, 1.0);
    const double lo = x.lo();
    const double hi = x.hi();
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        return full;
    }
    if (lo == 0.0 && hi == 0.0) {
        return is_sin ? Interval::unchecked(0.0, 0.0) : Interval::unchecked(1.0, 1.0);
    }
    if (fp::add_up(hi, -lo) >= 2.0 * pi_below) {
        return full;
    }

    Interval t_lo = Interval::point(lo) / pi();
    Interval t_hi = Interval::point(hi) / pi();
    if (is_sin) {
        t_lo = t_lo - Interval::point(0.5);
        t_hi = t_hi - Interval::point(0.5);
    }
    constexpr double exact_int_limit = 0x1p52;
    if (std::fabs(t_lo.lo()) > exact_int_limit || std::fabs(t_hi.hi()) > exact_int_limit) {
        return full;
    }
    const double first = std::ceil(t_lo.lo());
    const double last = std::floor(t_hi.hi());
    bool has_max = false;
    bool has_min = false;
    if (first <= last) {
        if (last - first >= 1.0) {
            return full;
        }
        const bool even = std::fmod(first, 2.0) == 0.0;
        has_max = even;
        has_min = !even;
    }

    const int slack = elementary_slack();
    const double f_lo = is_sin ? std::sin(lo) : std::cos(lo);
    const double f_hi = is_sin ? std::sin(hi) : std::cos(hi);
    double r_lo = has_min ? -1.0 : std::min(fp::step_down(f_lo, slack), fp::step_down(f_hi, slack));
    double r_hi = has_max ? 1.0 : std::max(fp::step_up(f_lo, slack), fp::step_up(f_hi, slack));
    r_lo = std::clamp(r_lo, -1.0, 1.0);
    r_hi = std::clamp(r_hi, -1.0, 1.0);
    return Interval::unchecked(r_lo, r_hi);
}

} // namespace

RoundingPolicy RoundingPolicy::slack(int m)
{
    if (m < 1) {
        throw std::invalid_argument("slack-ulps rounding needs a positive ulp count");
    }
    return {Mode::slack_ulps, m};
}

std::string RoundingPolicy::to_string() const
{
    if (mode == Mode::optimal_outward) {
        return "optimal-outward";
    }
    return "slack-ulps(" + std::to_string(ulps) + ")";
}

RoundingPolicy RoundingPolicy::parse(std::string_view text)
{
    if (text == "optimal" || text == "optimal-outward") {
        return optimal();
    }
    std::string_view digits;
    if (text.starts_with("slack-ulps(") && text.ends_with(")")) {
        digits = text.substr(11, text.size() - 12);
    } else if (text.starts_with("slack:")) {
        digits = text.substr(6);
    } else {
        throw std::invalid_argument("unknown rounding policy '" + std::string(text) + "'");
    }
    int m = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument("malformed slack ulp count in '" + std::string(text) + "'");
    }
    return slack(m);
}

double Interval::mid() const noexcept
{
    if (lo_ == -fp::inf && hi_ == fp::inf) {
        return 0.0;
    }
    if (lo_ == -fp::inf) {
        return -fp::max;
    }
    if (hi_ == fp::inf) {
        return fp::max;
    }
    return std::clamp(0.5 * lo_ + 0.5 * hi_, lo_, hi_);
}

Interval reciprocal(Interval y) noexcept
{
    const double c = y.lo();
    const double d = y.hi();
    if (c > 0.0 || d < 0.0) {
        return Interval::unchecked(fp::recip_down(d), fp::recip_up(c));
    }
    if (c == 0.0 && d > 0.0) {
        return Interval::unchecked(fp::recip_down(d), fp::inf);
    }
    if (d == 0.0 && c < 0.0) {
        return Interval::unchecked(-fp::inf, fp::recip_up(c));
    }
    return Interval::entire();
}

Interval operator/(Interval x, Interval y) noexcept
{
    if (y.lo() == 0.0 && y.hi() == 0.0) {
        return Interval::entire();
    }
    return x * reciprocal(y);
}

Interval sqrt(Interval x)
{
    if (x.hi() < 0.0) {
        throw interval_error("sqrt of an interval lying entirely below zero");
    }
    const double lo = std::max(x.lo(), 0.0);
    return Interval::unchecked(fp::sqrt_down(lo), fp::sqrt_up(x.hi()));
}

Interval transcendental(Elementary fn, Interval x) noexcept
{
    switch (fn) {
    case Elementary::exp:
        return exp_enclosure(x);
    case Elementary::sin:
        return trig_enclosure(x, true);
    case Elementary::cos:
        return trig_enclosure(x, false);
    }
    return Interval::entire();
}

Interval constant(Constant c) noexcept
{
    switch (c) {
    case Constant::pi:
        return Interval::unchecked(pi_below, fp::next_up(pi_below));
    case Constant::e:
        return Interval::unchecked(e_below, fp::next_up(e_below));
    }
    return Interval::entire();
}

std::string to_string(const Interval& x)
{
    auto fmt = [](double v) {
        char buf[32];
        const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, end);
    };
    return "[" + fmt(x.lo()) + ", " + fmt(x.hi()) + "]";
}

} // namespace enclose
