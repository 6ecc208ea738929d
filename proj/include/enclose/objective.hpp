#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "enclose/box.hpp"
#include "enclose/interval.hpp"

namespace enclose {

struct ObjectiveSpec {
    std::string name;
    std::size_t dimension = 0;
    Box domain;
    // Enclosure of the known global minimizer (a point box unless the
    // coordinates are not machine numbers, e.g. 2*pi/3).
    Box minimizer;
    Interval known_minimum;
    bool differentiable = true;
};

// Per-coordinate cached quantities: row(i) points at feature_width()
// intervals computed from coordinate i alone.
class FeatureRows {
public:
    explicit FeatureRows(std::span<const Interval* const> rows) noexcept : rows_(rows) {}

    std::size_t size() const noexcept { return rows_.size(); }
    const Interval* operator[](std::size_t i) const noexcept { return rows_[i]; }

private:
    std::span<const Interval* const> rows_;
};

// A box-constrained benchmark objective.
//
// Every objective is split into a per-coordinate stage (features), and an
// ordered fold over the coordinates (combine / partials). eval() is exactly
// features-then-combine, so a caller that caches feature rows for unchanged
// coordinates reproduces eval() bit for bit.
class Objective {
public:
    explicit Objective(ObjectiveSpec spec);
    virtual ~Objective() = default;

    Objective(const Objective&) = delete;
    Objective& operator=(const Objective&) = delete;

    const ObjectiveSpec& spec() const noexcept { return spec_; }
    const std::string& name() const noexcept { return spec_.name; }
    std::size_t dimension() const noexcept { return spec_.dimension; }
    const Box& domain() const noexcept { return spec_.domain; }

    virtual std::size_t feature_width() const noexcept = 0;
    // i is zero-based; writes feature_width() intervals to out.
    virtual void features(std::size_t i, Interval x, Interval* out) const = 0;
    virtual Interval combine(const FeatureRows& rows) const = 0;
    // Enclosures of df/dx_i for each zero-based i in dims, written to out.
    virtual void partials(const FeatureRows& rows, std::span<const std::size_t> dims,
                          std::span<Interval> out) const = 0;

    // Enclosure of {f(x) : x in b}.
    Interval eval(const Box& b) const;

    std::vector<Interval> gradient(const Box& b, std::span<const std::size_t> dims) const;

    // Rigorous upper bound on f(x); x must lie inside the domain.
    double eval_point_upper(std::span<const double> x) const;

private:
    void check_dimension(std::size_t n) const;

    ObjectiveSpec spec_;
};

inline constexpr std::array<std::string_view, 10> objective_names = {
    "ackley", "belegundu", "breiman", "fu", "griewank",
    "levy", "rastrigin", "salomon", "styblinski", "zabinsky",
};

// Throws std::invalid_argument for unknown names or n == 0.
std::unique_ptr<const Objective> make_objective(std::string_view name, std::size_t n);

std::vector<std::unique_ptr<const Objective>> catalog(std::size_t n);

} // namespace enclose
