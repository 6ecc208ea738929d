#pragma once

#include <memory>
#include <string>

#include "enclose/objective.hpp"

namespace toys {

// f(x) = sum_i (a x_i^2 + b x_i) over a uniform box domain.
class Quadratic final : public enclose::Objective {
public:
    Quadratic(std::size_t n, enclose::Interval bounds, double a, double b, double x_star, double f_star)
        : Objective(spec_for(n, bounds, x_star, f_star)), a_(a), b_(b)
    {
    }

    std::size_t feature_width() const noexcept override { return 2; }

    void features(std::size_t, enclose::Interval x, enclose::Interval* out) const override
    {
        out[0] = x;
        out[1] = sqr(x);
    }

    enclose::Interval combine(const enclose::FeatureRows& rows) const override
    {
        enclose::Interval s(0.0, 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            s += a_ * rows[i][1] + b_ * rows[i][0];
        }
        return s;
    }

    void partials(const enclose::FeatureRows& rows, std::span<const std::size_t> dims,
                  std::span<enclose::Interval> out) const override
    {
        for (std::size_t k = 0; k < dims.size(); ++k) {
            out[k] = (2.0 * a_) * rows[dims[k]][0] + b_;
        }
    }

private:
    static enclose::ObjectiveSpec spec_for(std::size_t n, enclose::Interval bounds, double x_star, double f_star)
    {
        enclose::ObjectiveSpec s;
        s.name = "quadratic";
        s.dimension = n;
        s.domain = enclose::Box::uniform(n, bounds);
        s.minimizer = enclose::Box::uniform(n, enclose::Interval::point(x_star));
        s.known_minimum = enclose::Interval::point(f_star);
        return s;
    }

    double a_;
    double b_;
};

// x^2 on [lo, hi]^n.
inline std::unique_ptr<const enclose::Objective> square(std::size_t n, double lo, double hi)
{
    return std::make_unique<Quadratic>(n, enclose::Interval(lo, hi), 1.0, 0.0, 0.0, 0.0);
}

// f(x) = sum x_i on [lo, hi]^n.
inline std::unique_ptr<const enclose::Objective> linear(std::size_t n, double lo, double hi)
{
    return std::make_unique<Quadratic>(n, enclose::Interval(lo, hi), 0.0, 1.0, lo, lo * static_cast<double>(n));
}

} // namespace toys
