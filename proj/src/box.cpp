#include "enclose/box.hpp"

#include <algorithm>

namespace enclose {

Box Box::point(std::span<const double> x)
{
    std::vector<Interval> dims;
    dims.reserve(x.size());
    for (double v : x) {
        dims.push_back(Interval::point(v));
    }
    return Box(std::move(dims));
}

double Box::max_width() const noexcept
{
    double w = 0.0;
    for (const auto& d : dims_) {
        w = std::max(w, d.width());
    }
    return w;
}

bool Box::contains(std::span<const double> x) const noexcept
{
    if (x.size() != dims_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!dims_[i].contains(x[i])) {
            return false;
        }
    }
    return true;
}

bool Box::contains(const Box& other) const noexcept
{
    if (other.dimension() != dimension()) {
        return false;
    }
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (!dims_[i].contains(other[i])) {
            return false;
        }
    }
    return true;
}

bool Box::intersects(const Box& other) const noexcept
{
    if (other.dimension() != dimension()) {
        return false;
    }
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (!dims_[i].intersects(other[i])) {
            return false;
        }
    }
    return true;
}

} // namespace enclose
