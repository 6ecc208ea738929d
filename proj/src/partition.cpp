#include "enclose/partition.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace enclose {

namespace {

constexpr std::uint64_t chunk_size = 2048;

struct GroupLayout {
    std::size_t first = 0; // zero-based
    std::size_t size = 0;
    std::uint64_t count = 0;
};

GroupLayout layout_for(const Box& parent, CyclingIndex c, const PartitionScheme& scheme)
{
    scheme.validate();
    const std::size_t n = parent.dimension();
    const auto eff = scheme.for_dimension(n);
    GroupLayout g;
    g.size = group_size(c, n, eff.dims_per_iter);
    g.first = static_cast<std::size_t>(c.first - 1);
    g.count = subregion_count(eff.subintervals, g.size);
    return g;
}

// Advances least-significant-first digits by one.
void increment(std::vector<std::size_t>& digits, std::size_t s) noexcept
{
    for (auto& d : digits) {
        if (++d < s) {
            return;
        }
        d = 0;
    }
}

// Feature rows of the parent plus one table of s rows per partitioned dimension.
struct FeatureTables {
    std::size_t width = 0;
    std::vector<Interval> base;
    std::vector<Interval> pieces; // [(j * s + d) * width]

    const Interval* base_row(std::size_t i) const noexcept { return &base[i * width]; }
    const Interval* piece_row(std::size_t j, std::size_t d, std::size_t s) const noexcept
    {
        return &pieces[(j * s + d) * width];
    }
};

} // namespace

void PartitionScheme::validate() const
{
    if (dims_per_iter < 1) {
        throw std::invalid_argument("partition must cover at least one dimension per iteration");
    }
    if (subintervals < 2) {
        throw std::invalid_argument("partition needs at least two subintervals per dimension");
    }
    (void)subregion_count(subintervals, dims_per_iter);
}

PartitionScheme PartitionScheme::for_dimension(std::size_t n) const noexcept
{
    PartitionScheme out = *this;
    out.dims_per_iter = std::min(dims_per_iter, n);
    return out;
}

std::size_t group_size(CyclingIndex c, std::size_t n, std::size_t p)
{
    if (c.first < 1 || static_cast<std::size_t>(c.first) > n) {
        throw std::out_of_range("cycling index " + std::to_string(c.first) + " outside 1.." + std::to_string(n));
    }
    return std::min(p, n - static_cast<std::size_t>(c.first) + 1);
}

CyclingIndex next_cycling_index(CyclingIndex c, std::size_t n, std::size_t p) noexcept
{
    const std::size_t next = static_cast<std::size_t>(c.first) + p;
    return next <= n ? CyclingIndex{static_cast<std::int32_t>(next)} : CyclingIndex{1};
}

std::uint64_t subregion_count(std::size_t s, std::size_t dims)
{
    std::uint64_t k = 1;
    for (std::size_t i = 0; i < dims; ++i) {
        if (k > std::numeric_limits<std::uint64_t>::max() / s) {
            throw std::overflow_error("subregion count s^p does not fit in 64 bits");
        }
        k *= s;
    }
    return k;
}

std::vector<std::size_t> subindices(std::uint64_t r, std::size_t s, std::size_t p)
{
    if (r >= subregion_count(s, p)) {
        throw std::out_of_range("subregion index " + std::to_string(r) + " out of range");
    }
    std::vector<std::size_t> digits(p);
    for (auto& d : digits) {
        d = static_cast<std::size_t>(r % s);
        r /= s;
    }
    return digits;
}

std::uint64_t compose_subindices(std::span<const std::size_t> digits, std::size_t s)
{
    std::uint64_t r = 0;
    for (std::size_t j = digits.size(); j-- > 0;) {
        r = r * s + digits[j];
    }
    return r;
}

std::vector<double> cut_points(Interval x, std::size_t s)
{
    std::vector<double> cuts(s + 1);
    const double lo = x.lo();
    const double hi = x.hi();
    const double w = (hi - lo) / static_cast<double>(s);
    cuts[0] = lo;
    for (std::size_t j = 1; j < s; ++j) {
        cuts[j] = std::clamp(lo + w * static_cast<double>(j), lo, hi);
    }
    cuts[s] = hi;
    return cuts;
}

Box child_box(const Box& parent, CyclingIndex c, std::uint64_t r, const PartitionScheme& scheme)
{
    const auto g = layout_for(parent, c, scheme);
    if (r >= g.count) {
        throw std::out_of_range("subregion index " + std::to_string(r) + " out of range");
    }
    const auto digits = subindices(r, scheme.subintervals, g.size);
    Box child = parent;
    for (std::size_t j = 0; j < g.size; ++j) {
        const std::size_t i = g.first + j;
        const auto cuts = cut_points(parent[i], scheme.subintervals);
        child[i] = Interval::unchecked(cuts[digits[j]], cuts[digits[j] + 1]);
    }
    return child;
}

PruneDecision prune_test(const Box& b, Interval f, std::span<const std::size_t> dims,
                         std::span<const Interval> grads, double gub, const Box& domain)
{
    if (f.lo() > gub) {
        return {PruneVerdict::pruned_by_gub, 0};
    }
    for (std::size_t t = 0; t < dims.size(); ++t) {
        const std::size_t i = dims[t];
        if (grads[t].lo() > 0.0 && b[i].lo() != domain[i].lo()) {
            return {PruneVerdict::pruned_by_derivative, i};
        }
        if (grads[t].hi() < 0.0 && b[i].hi() != domain[i].hi()) {
            return {PruneVerdict::pruned_by_derivative, i};
        }
    }
    return {};
}

KernelOutcome evaluate_partition(const Objective& obj, const Box& parent, CyclingIndex c, double gub,
                                 const PartitionScheme& scheme, const KernelOptions& options,
                                 const Executor& executor)
{
    const std::size_t n = obj.dimension();
    if (parent.dimension() != n) {
        throw std::invalid_argument("parent box dimension does not match the objective");
    }
    const auto g = layout_for(parent, c, scheme);
    const std::size_t s = scheme.subintervals;

    std::vector<std::vector<double>> cuts(g.size);
    for (std::size_t j = 0; j < g.size; ++j) {
        cuts[j] = cut_points(parent[g.first + j], s);
    }

    FeatureTables tables;
    tables.width = obj.feature_width();
    tables.base.resize(n * tables.width);
    tables.pieces.resize(g.size * s * tables.width);
    for (std::size_t i = 0; i < n; ++i) {
        obj.features(i, parent[i], &tables.base[i * tables.width]);
    }
    std::vector<double> piece_width(g.size * s);
    for (std::size_t j = 0; j < g.size; ++j) {
        for (std::size_t d = 0; d < s; ++d) {
            const auto piece = Interval::unchecked(cuts[j][d], cuts[j][d + 1]);
            obj.features(g.first + j, piece, &tables.pieces[(j * s + d) * tables.width]);
            piece_width[j * s + d] = piece.width();
        }
    }
    double fixed_width = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < g.first || i >= g.first + g.size) {
            fixed_width = std::max(fixed_width, parent[i].width());
        }
    }

    std::vector<std::size_t> tested;
    if (options.derivative_test) {
        const std::size_t from = options.full_gradient ? 0 : g.first;
        const std::size_t to = options.full_gradient ? n : g.first + g.size;
        for (std::size_t i = from; i < to; ++i) {
            tested.push_back(i);
        }
    }
    const bool watching = options.watch != nullptr && parent.intersects(*options.watch);

    struct ChunkResult {
        std::vector<Survivor> survivors;
        std::uint64_t pruned_gub = 0;
        std::uint64_t pruned_derivative = 0;
        bool watch_pruned = false;
    };
    const std::size_t chunks = static_cast<std::size_t>((g.count + chunk_size - 1) / chunk_size);
    std::vector<ChunkResult> results(chunks);

    executor.for_each_chunk(chunks, [&](std::size_t chunk) {
        const std::uint64_t begin = chunk * chunk_size;
        const std::uint64_t end = std::min(g.count, begin + chunk_size);
        ChunkResult& out = results[chunk];

        std::vector<const Interval*> rows(n);
        for (std::size_t i = 0; i < n; ++i) {
            rows[i] = tables.base_row(i);
        }
        const FeatureRows view(rows);
        Box child = parent;
        std::vector<Interval> grads(tested.size());
        auto digits = subindices(begin, s, g.size);

        for (std::uint64_t r = begin; r < end; ++r, increment(digits, s)) {
            double width = fixed_width;
            for (std::size_t j = 0; j < g.size; ++j) {
                const std::size_t d = digits[j];
                rows[g.first + j] = tables.piece_row(j, d, s);
                child[g.first + j] = Interval::unchecked(cuts[j][d], cuts[j][d + 1]);
                width = std::max(width, piece_width[j * s + d]);
            }

            const Interval f = obj.combine(view);
            PruneDecision decision;
            if (f.lo() > gub) {
                decision.verdict = PruneVerdict::pruned_by_gub;
            } else if (!tested.empty()) {
                obj.partials(view, tested, grads);
                decision = prune_test(child, f, tested, grads, gub, obj.domain());
            }

            switch (decision.verdict) {
            case PruneVerdict::keep:
                out.survivors.push_back({r, f.lo(), width});
                continue;
            case PruneVerdict::pruned_by_gub:
                ++out.pruned_gub;
                break;
            case PruneVerdict::pruned_by_derivative:
                ++out.pruned_derivative;
                break;
            }
            if (watching && child.intersects(*options.watch)) {
                out.watch_pruned = true;
            }
        }
    });

    KernelOutcome outcome;
    outcome.evaluated = g.count;
    std::size_t total = 0;
    for (const auto& r : results) {
        total += r.survivors.size();
    }
    outcome.survivors.reserve(total);
    for (auto& r : results) {
        outcome.survivors.insert(outcome.survivors.end(), r.survivors.begin(), r.survivors.end());
        outcome.pruned_by_gub += r.pruned_gub;
        outcome.pruned_by_derivative += r.pruned_derivative;
        outcome.watch_pruned = outcome.watch_pruned || r.watch_pruned;
    }
    return outcome;
}

double diagonal_coordinate(Interval x, double t) noexcept
{
    return std::clamp(x.lo() + t * (x.hi() - x.lo()), x.lo(), x.hi());
}

std::vector<double> diagonal_parameters(std::size_t m)
{
    std::vector<double> t(m);
    for (std::size_t j = 0; j < m; ++j) {
        t[j] = static_cast<double>(j + 1) / static_cast<double>(m + 1);
    }
    return t;
}

SampleResult sample_partition(const Objective& obj, const Box& parent, CyclingIndex c,
                              const PartitionScheme& scheme, std::size_t m, const Executor& executor)
{
    const std::size_t n = obj.dimension();
    if (parent.dimension() != n) {
        throw std::invalid_argument("parent box dimension does not match the objective");
    }
    const auto g = layout_for(parent, c, scheme);
    const std::size_t s = scheme.subintervals;
    const std::size_t w = obj.feature_width();
    const auto ts = diagonal_parameters(m);

    std::vector<std::vector<double>> cuts(g.size);
    for (std::size_t j = 0; j < g.size; ++j) {
        cuts[j] = cut_points(parent[g.first + j], s);
    }
    // Point features per sample parameter: unchanged dims, then (group dim, piece).
    std::vector<Interval> base(m * n * w);
    std::vector<Interval> pieces(m * g.size * s * w);
    for (std::size_t q = 0; q < m; ++q) {
        for (std::size_t i = 0; i < n; ++i) {
            const double x = diagonal_coordinate(parent[i], ts[q]);
            obj.features(i, Interval::point(x), &base[(q * n + i) * w]);
        }
        for (std::size_t j = 0; j < g.size; ++j) {
            for (std::size_t d = 0; d < s; ++d) {
                const double x = diagonal_coordinate(Interval::unchecked(cuts[j][d], cuts[j][d + 1]), ts[q]);
                obj.features(g.first + j, Interval::point(x), &pieces[((q * g.size + j) * s + d) * w]);
            }
        }
    }

    struct Best {
        double upper = fp::inf;
        std::uint64_t child = 0;
        std::size_t sample = 0;
    };
    const std::size_t chunks = static_cast<std::size_t>((g.count + chunk_size - 1) / chunk_size);
    std::vector<Best> best(chunks);

    executor.for_each_chunk(chunks, [&](std::size_t chunk) {
        const std::uint64_t begin = chunk * chunk_size;
        const std::uint64_t end = std::min(g.count, begin + chunk_size);
        Best local;
        std::vector<const Interval*> rows(n);
        const FeatureRows view(rows);
        auto digits = subindices(begin, s, g.size);
        for (std::uint64_t r = begin; r < end; ++r, increment(digits, s)) {
            for (std::size_t q = 0; q < m; ++q) {
                for (std::size_t i = 0; i < n; ++i) {
                    rows[i] = &base[(q * n + i) * w];
                }
                for (std::size_t j = 0; j < g.size; ++j) {
                    rows[g.first + j] = &pieces[((q * g.size + j) * s + digits[j]) * w];
                }
                const double upper = obj.combine(view).hi();
                if (upper < local.upper) {
                    local = {upper, r, q};
                }
            }
        }
        best[chunk] = local;
    });

    Best overall;
    for (const auto& b : best) {
        if (b.upper < overall.upper) {
            overall = b;
        }
    }
    SampleResult result;
    result.upper = overall.upper;
    if (overall.upper < fp::inf) {
        const Box child = child_box(parent, c, overall.child, scheme);
        result.point.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            result.point[i] = diagonal_coordinate(child[i], ts[overall.sample]);
        }
    }
    return result;
}

} // namespace enclose
