#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "enclose/box.hpp"
#include "enclose/objective.hpp"
#include "enclose/parallel.hpp"

namespace enclose {

// Uniform partition of `dims_per_iter` consecutive dimensions into
// `subintervals` pieces each.
struct PartitionScheme {
    std::size_t dims_per_iter = 10;
    std::size_t subintervals = 4;

    // Throws std::invalid_argument unless p >= 1, s >= 2 and s^p fits in 64 bits.
    void validate() const;

    // Same scheme with p clamped to n.
    PartitionScheme for_dimension(std::size_t n) const noexcept;
};

// One-based index of the first dimension of the group partitioned next.
struct CyclingIndex {
    std::int32_t first = 1;

    friend bool operator==(CyclingIndex, CyclingIndex) = default;
};

// Number of dimensions partitioned for c: min(p, n - c + 1).
std::size_t group_size(CyclingIndex c, std::size_t n, std::size_t p);

CyclingIndex next_cycling_index(CyclingIndex c, std::size_t n, std::size_t p) noexcept;

// s^dims; throws std::overflow_error when it does not fit in 64 bits.
std::uint64_t subregion_count(std::size_t s, std::size_t dims);

// Mixed-radix digits of r, least significant first: I_j = (r / s^j) mod s.
std::vector<std::size_t> subindices(std::uint64_t r, std::size_t s, std::size_t p);

std::uint64_t compose_subindices(std::span<const std::size_t> digits, std::size_t s);

// s + 1 cut points; the outer two are the interval endpoints verbatim and the
// interior ones are lo + w*j with w = (hi - lo)/s, clamped into [lo, hi].
// Neighbouring children share cut points, so the pieces cover x with no gaps.
std::vector<double> cut_points(Interval x, std::size_t s);

// Child r of parent when partitioning the group starting at c. Other
// dimensions are copied verbatim.
Box child_box(const Box& parent, CyclingIndex c, std::uint64_t r, const PartitionScheme& scheme);

enum class PruneVerdict { keep, pruned_by_gub, pruned_by_derivative };

struct PruneDecision {
    PruneVerdict verdict = PruneVerdict::keep;
    std::size_t dim = 0; // zero-based, meaningful for pruned_by_derivative

    friend bool operator==(const PruneDecision&, const PruneDecision&) = default;
};

// GUB test (f.lo > gub) first, then the first-order test over `dims`: a box
// is suboptimal in dim i if df/dx_i > 0 throughout and its lower face is not
// on the domain edge, or df/dx_i < 0 throughout and its upper face is not.
// Endpoints are compared for exact equality.
PruneDecision prune_test(const Box& b, Interval f, std::span<const std::size_t> dims,
                         std::span<const Interval> grads, double gub, const Box& domain);

struct Survivor {
    std::uint64_t index = 0;
    double lb = 0.0;
    double maxwidth = 0.0;

    friend bool operator==(const Survivor&, const Survivor&) = default;
};

struct KernelOptions {
    bool derivative_test = true;
    // Test every dimension rather than only the partitioned group.
    bool full_gradient = false;
    // When set, every pruned child is checked against this box (debug instrumentation).
    const Box* watch = nullptr;
};

struct KernelOutcome {
    std::vector<Survivor> survivors; // ascending by index
    std::uint64_t evaluated = 0;
    std::uint64_t pruned_by_gub = 0;
    std::uint64_t pruned_by_derivative = 0;
    // A pruned child intersected the watch box.
    bool watch_pruned = false;
};

// Evaluates every child of parent independently and keeps the ones no rule
// can discard. The outcome does not depend on the executor's thread count.
KernelOutcome evaluate_partition(const Objective& obj, const Box& parent, CyclingIndex c, double gub,
                                 const PartitionScheme& scheme, const KernelOptions& options,
                                 const Executor& executor);

// x.lo + t (x.hi - x.lo), clamped into x.
double diagonal_coordinate(Interval x, double t) noexcept;

// Sample parameters t_j = j / (m + 1), j = 1..m.
std::vector<double> diagonal_parameters(std::size_t m);

struct SampleResult {
    double upper = 0.0; // +inf when nothing was sampled
    std::vector<double> point;
};

// Diagonal sampling of every child of parent (m points each). Ties resolve
// to the smallest child index, then the smallest sample index.
SampleResult sample_partition(const Objective& obj, const Box& parent, CyclingIndex c,
                              const PartitionScheme& scheme, std::size_t m, const Executor& executor);

} // namespace enclose
