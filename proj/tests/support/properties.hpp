#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "enclose/interval.hpp"

namespace props {

struct Tally {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::string first_failure;

    bool ok() const noexcept { return trials > 0 && failures == 0; }
    void record(bool pass, const std::string& detail);
};

// Random interval pairs; for each op, sampled points of the operands
// (endpoints included) must map into the interval result. Run under the
// given rounding policy.
std::vector<Tally> interval_containment(std::uint64_t trials_per_op, std::uint64_t seed,
                                        enclose::RoundingPolicy policy);

// X within X', Y within Y' implies op(X, Y) within op(X', Y').
std::vector<Tally> inclusion_isotonicity(std::uint64_t trials_per_op, std::uint64_t seed);

// Per function: random boxes at dimension n, `points` random points each,
// reference value inside the box enclosure.
std::vector<Tally> objective_containment(std::size_t n, std::size_t boxes, std::size_t points,
                                         std::uint64_t seed);

// Per function: reference partials at random points inside random boxes lie
// in the interval partials over the box.
std::vector<Tally> gradient_containment(std::size_t n, std::size_t boxes, std::size_t points,
                                        std::uint64_t seed);

// Hull of X - X*X over m equal pieces of [0, 1].
enclose::Interval refinement_hull(std::size_t m);

} // namespace props
