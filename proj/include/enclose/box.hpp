#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "enclose/interval.hpp"

namespace enclose {

// n-dimensional axis-aligned region, one Interval per variable.
class Box {
public:
    Box() = default;
    explicit Box(std::vector<Interval> dims) : dims_(std::move(dims)) {}

    static Box uniform(std::size_t n, Interval x) { return Box(std::vector<Interval>(n, x)); }
    static Box point(std::span<const double> x);

    std::size_t dimension() const noexcept { return dims_.size(); }

    Interval& operator[](std::size_t i) noexcept { return dims_[i]; }
    const Interval& operator[](std::size_t i) const noexcept { return dims_[i]; }

    std::span<const Interval> dims() const noexcept { return dims_; }
    std::span<Interval> dims() noexcept { return dims_; }

    auto begin() const noexcept { return dims_.begin(); }
    auto end() const noexcept { return dims_.end(); }

    // Upper bound on the largest per-dimension width.
    double max_width() const noexcept;

    bool contains(std::span<const double> x) const noexcept;
    bool contains(const Box& other) const noexcept;
    bool intersects(const Box& other) const noexcept;

    friend bool operator==(const Box&, const Box&) = default;

private:
    std::vector<Interval> dims_;
};

} // namespace enclose
