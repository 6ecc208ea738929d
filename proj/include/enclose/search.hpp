#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "enclose/box.hpp"
#include "enclose/interval.hpp"
#include "enclose/objective.hpp"
#include "enclose/parallel.hpp"
#include "enclose/partition.hpp"

namespace enclose {

enum class SamplingScope { selected, per_subregion };

std::string_view to_string(SamplingScope scope) noexcept;
SamplingScope parse_sampling_scope(std::string_view text);

struct SolverConfig {
    std::string objective = "levy";
    std::size_t n = 50;
    PartitionScheme scheme{};
    std::size_t samples = 10;
    double width_tolerance = 1e-4;
    std::uint64_t max_iterations = 1'000'000;
    double time_limit_s = 0.0; // 0 disables the wall-clock budget
    bool derivative_test = true;
    bool full_gradient = false;
    SamplingScope sampling = SamplingScope::selected;
    unsigned threads = 1;
    RoundingPolicy rounding{};
    bool debug_soundness = false;

    // Throws std::invalid_argument on an unusable configuration.
    void validate() const;
};

// Compact worklist record. The region itself is rebuilt from the history
// record of iteration `itr` (itr == -1 denotes the whole domain).
struct RegionEntry {
    std::uint64_t sidx = 0;
    std::int32_t itr = -1;
    std::int32_t cyc = 1;
    double lb = 0.0;
    double maxwidth = 0.0;

    friend bool operator==(const RegionEntry&, const RegionEntry&) = default;
};

static_assert(sizeof(RegionEntry) == 32);

// Strict weak order used for selection: smallest lb, then itr, then sidx.
inline bool selected_before(const RegionEntry& a, const RegionEntry& b) noexcept
{
    if (a.lb != b.lb) {
        return a.lb < b.lb;
    }
    if (a.itr != b.itr) {
        return a.itr < b.itr;
    }
    return a.sidx < b.sidx;
}

// Min-heap of RegionEntry keyed by selected_before. Also counts entries
// whose maxwidth is not below the width threshold.
class WorkList {
public:
    explicit WorkList(double width_threshold = fp::inf) : threshold_(width_threshold) {}

    void push(const RegionEntry& e);
    RegionEntry pop_min();
    const RegionEntry& min() const;

    // Removes every entry with lb > bound; on_removed sees each removed entry.
    template <class OnRemoved>
    std::size_t sweep(double bound, OnRemoved&& on_removed);
    std::size_t sweep(double bound)
    {
        return sweep(bound, [](const RegionEntry&) {});
    }

    std::size_t size() const noexcept { return heap_.size(); }
    bool empty() const noexcept { return heap_.empty(); }
    std::size_t wide_count() const noexcept { return wide_; }
    std::span<const RegionEntry> entries() const noexcept { return heap_; }

private:
    double threshold_;
    std::size_t wide_ = 0;
    std::vector<RegionEntry> heap_;
};

struct IterationRecord {
    Box selected;
    CyclingIndex cyc_used;
};

enum class StopReason { tolerance, max_iterations, time_limit, list_exhausted };

std::string_view to_string(StopReason reason) noexcept;

enum class SoundnessStatus { off, ok, violated };

std::string_view to_string(SoundnessStatus status) noexcept;

struct TraceRow {
    std::int32_t selected_itr = 0;
    std::uint64_t selected_sidx = 0;
    double selected_lb = 0.0;
    double gub = 0.0;
    std::uint64_t survivors = 0;
    std::uint64_t list_size = 0;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct OutputRegion {
    Box box;
    double lb = 0.0;
};

struct SearchResult {
    std::vector<OutputRegion> regions; // ordered by selection priority
    double glb = 0.0;
    double gub = 0.0;
    std::uint64_t iterations = 0;
    StopReason stop = StopReason::tolerance;
    std::vector<double> witness;
    SoundnessStatus soundness = SoundnessStatus::off;
    double wall_time_s = 0.0;
};

// Evaluates m points X.lo + t_j (X.hi - X.lo), t_j = j/(m+1), and returns
// the smallest rigorous upper bound with the point attaining it.
SampleResult sample_diagonal(const Objective& obj, const Box& b, std::size_t m);

// Complete-search driver. Owns the worklist, the per-iteration history and
// the global bounds; only the partition kernel and subregion sampling fan
// out to worker threads.
class Solver {
public:
    explicit Solver(SolverConfig config);
    // Uses `objective` in place of the catalog entry; config.objective and
    // config.n are overwritten from it.
    Solver(SolverConfig config, std::unique_ptr<const Objective> objective);

    const SolverConfig& config() const noexcept { return config_; }
    const Objective& objective() const noexcept { return *objective_; }
    const PartitionScheme& scheme() const noexcept { return scheme_; }

    // Removes the minimum entry and rebuilds its box.
    std::pair<RegionEntry, Box> select_region();
    Box reconstruct_box(const RegionEntry& entry) const;
    // Drops entries with lb > gub.
    std::size_t sweep_list(double gub);
    void iterate();
    std::optional<StopReason> stopping_check() const;
    SearchResult finalize(StopReason reason) const;
    SearchResult run();

    double gub() const noexcept { return gub_; }
    // Smallest lb over the worklist and the most recently selected region.
    double glb() const noexcept;
    std::uint64_t iteration() const noexcept { return iteration_; }
    const WorkList& worklist() const noexcept { return list_; }
    const std::vector<IterationRecord>& history() const noexcept { return history_; }
    const std::vector<TraceRow>& trace() const noexcept { return trace_; }
    const std::vector<double>& witness() const noexcept { return witness_; }
    SoundnessStatus soundness() const noexcept;

private:
    bool entry_touches_watch(const RegionEntry& e) const;
    void check_completeness();

    SolverConfig config_;
    std::unique_ptr<const Objective> objective_;
    PartitionScheme scheme_;
    Executor executor_;
    WorkList list_;
    std::vector<IterationRecord> history_;
    std::vector<TraceRow> trace_;
    std::vector<bool> watched_; // history[t].selected intersects the minimizer box
    double gub_ = fp::inf;
    double last_selected_lb_ = fp::inf;
    std::vector<double> witness_;
    std::uint64_t iteration_ = 0;
    bool violated_ = false;
    std::chrono::steady_clock::time_point started_;
};

template <class OnRemoved>
std::size_t WorkList::sweep(double bound, OnRemoved&& on_removed)
{
    const auto keep_end = std::partition(heap_.begin(), heap_.end(),
                                         [bound](const RegionEntry& e) { return !(e.lb > bound); });
    const std::size_t removed = static_cast<std::size_t>(heap_.end() - keep_end);
    for (auto it = keep_end; it != heap_.end(); ++it) {
        if (it->maxwidth >= threshold_) {
            --wide_;
        }
        on_removed(*it);
    }
    if (removed != 0) {
        heap_.erase(keep_end, heap_.end());
        std::make_heap(heap_.begin(), heap_.end(),
                       [](const RegionEntry& a, const RegionEntry& b) { return selected_before(b, a); });
    }
    return removed;
}

} // namespace enclose
