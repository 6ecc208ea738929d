#include "enclose/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace enclose {

namespace {

constexpr auto heap_order = [](const RegionEntry& a, const RegionEntry& b) { return selected_before(b, a); };

} // namespace

std::string_view to_string(SamplingScope scope) noexcept
{
    return scope == SamplingScope::selected ? "selected" : "per-subregion";
}

SamplingScope parse_sampling_scope(std::string_view text)
{
    if (text == "selected") {
        return SamplingScope::selected;
    }
    if (text == "per-subregion") {
        return SamplingScope::per_subregion;
    }
    throw std::invalid_argument("unknown sampling scope: " + std::string(text));
}

std::string_view to_string(StopReason reason) noexcept
{
    switch (reason) {
    case StopReason::tolerance:
        return "tolerance";
    case StopReason::max_iterations:
        return "max_iterations";
    case StopReason::time_limit:
        return "time_limit";
    case StopReason::list_exhausted:
        return "list_exhausted";
    }
    return "unknown";
}

std::string_view to_string(SoundnessStatus status) noexcept
{
    switch (status) {
    case SoundnessStatus::off:
        return "off";
    case SoundnessStatus::ok:
        return "ok";
    case SoundnessStatus::violated:
        return "violated";
    }
    return "unknown";
}

void SolverConfig::validate() const
{
    if (n == 0) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    scheme.validate();
    if (samples == 0) {
        throw std::invalid_argument("at least one diagonal sample is required");
    }
    if (!(width_tolerance > 0.0) || !std::isfinite(width_tolerance)) {
        throw std::invalid_argument("width tolerance must be positive and finite");
    }
    if (!(time_limit_s >= 0.0)) {
        throw std::invalid_argument("time limit must be non-negative");
    }
    if (threads == 0) {
        throw std::invalid_argument("thread count must be at least 1");
    }
    if (max_iterations > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
        throw std::invalid_argument("iteration budget exceeds the history index range");
    }
}

void WorkList::push(const RegionEntry& e)
{
    heap_.push_back(e);
    std::push_heap(heap_.begin(), heap_.end(), heap_order);
    if (e.maxwidth >= threshold_) {
        ++wide_;
    }
}

RegionEntry WorkList::pop_min()
{
    if (heap_.empty()) {
        throw std::logic_error("pop from an empty worklist");
    }
    std::pop_heap(heap_.begin(), heap_.end(), heap_order);
    const RegionEntry e = heap_.back();
    heap_.pop_back();
    if (e.maxwidth >= threshold_) {
        --wide_;
    }
    return e;
}

const RegionEntry& WorkList::min() const
{
    if (heap_.empty()) {
        throw std::logic_error("empty worklist has no minimum");
    }
    return heap_.front();
}

SampleResult sample_diagonal(const Objective& obj, const Box& b, std::size_t m)
{
    SampleResult best{fp::inf, {}};
    std::vector<double> x(b.dimension());
    for (const double t : diagonal_parameters(m)) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = diagonal_coordinate(b[i], t);
        }
        const double upper = obj.eval_point_upper(x);
        if (upper < best.upper) {
            best = {upper, x};
        }
    }
    return best;
}

Solver::Solver(SolverConfig config) : Solver(config, make_objective(config.objective, config.n)) {}

Solver::Solver(SolverConfig config, std::unique_ptr<const Objective> objective)
    : config_(std::move(config)), objective_(std::move(objective))
{
    if (!objective_) {
        throw std::invalid_argument("solver needs an objective");
    }
    config_.objective = objective_->name();
    config_.n = objective_->dimension();
    config_.validate();
    scheme_ = config_.scheme.for_dimension(config_.n);
    executor_ = Executor(config_.threads);
    list_ = WorkList(config_.width_tolerance);

    RoundingScope scope(config_.rounding);
    const Box& domain = objective_->domain();
    list_.push({0, -1, 1, objective_->eval(domain).lo(), domain.max_width()});
    started_ = std::chrono::steady_clock::now();
}

double Solver::glb() const noexcept
{
    const double listed = list_.empty() ? fp::inf : list_.min().lb;
    return std::min(listed, last_selected_lb_);
}

SoundnessStatus Solver::soundness() const noexcept
{
    if (!config_.debug_soundness) {
        return SoundnessStatus::off;
    }
    return violated_ ? SoundnessStatus::violated : SoundnessStatus::ok;
}

Box Solver::reconstruct_box(const RegionEntry& entry) const
{
    if (entry.itr < 0) {
        return objective_->domain();
    }
    const auto t = static_cast<std::size_t>(entry.itr);
    if (t >= history_.size()) {
        throw std::out_of_range("worklist entry refers to an unknown iteration");
    }
    const IterationRecord& rec = history_[t];
    return child_box(rec.selected, rec.cyc_used, entry.sidx, scheme_);
}

std::pair<RegionEntry, Box> Solver::select_region()
{
    const RegionEntry entry = list_.pop_min();
    return {entry, reconstruct_box(entry)};
}

bool Solver::entry_touches_watch(const RegionEntry& e) const
{
    if (e.itr >= 0 && !watched_[static_cast<std::size_t>(e.itr)]) {
        return false;
    }
    return reconstruct_box(e).intersects(objective_->spec().minimizer);
}

std::size_t Solver::sweep_list(double gub)
{
    if (!config_.debug_soundness) {
        return list_.sweep(gub);
    }
    return list_.sweep(gub, [&](const RegionEntry& e) {
        if (entry_touches_watch(e)) {
            violated_ = true;
        }
    });
}

void Solver::check_completeness()
{
    const auto entries = list_.entries();
    const bool covered = std::any_of(entries.begin(), entries.end(),
                                     [&](const RegionEntry& e) { return entry_touches_watch(e); });
    if (!covered) {
        violated_ = true;
    }
}

void Solver::iterate()
{
    RoundingScope scope(config_.rounding);
    const auto itr = static_cast<std::int32_t>(history_.size());
    auto [entry, box] = select_region();
    const CyclingIndex c{entry.cyc};
    const Box& watch = objective_->spec().minimizer;
    watched_.push_back(box.intersects(watch));
    history_.push_back({box, c});
    last_selected_lb_ = entry.lb;

    const SampleResult sample = config_.sampling == SamplingScope::selected
                                    ? sample_diagonal(*objective_, box, config_.samples)
                                    : sample_partition(*objective_, box, c, scheme_, config_.samples, executor_);
    if (sample.upper < gub_) {
        gub_ = sample.upper;
        witness_ = sample.point;
        sweep_list(gub_);
    }

    KernelOptions options;
    options.derivative_test = config_.derivative_test && objective_->spec().differentiable;
    options.full_gradient = config_.full_gradient;
    options.watch = config_.debug_soundness ? &watch : nullptr;
    const KernelOutcome outcome = evaluate_partition(*objective_, box, c, gub_, scheme_, options, executor_);
    if (outcome.watch_pruned) {
        violated_ = true;
    }

    const CyclingIndex next = next_cycling_index(c, config_.n, scheme_.dims_per_iter);
    for (const Survivor& s : outcome.survivors) {
        list_.push({s.index, itr, next.first, s.lb, s.maxwidth});
    }

    trace_.push_back({entry.itr, entry.sidx, entry.lb, gub_, outcome.survivors.size(), list_.size()});
    ++iteration_;

    if (config_.debug_soundness) {
        check_completeness();
    }
}

std::optional<StopReason> Solver::stopping_check() const
{
    if (list_.empty()) {
        return StopReason::list_exhausted;
    }
    if (list_.wide_count() == 0) {
        return StopReason::tolerance;
    }
    if (iteration_ >= config_.max_iterations) {
        return StopReason::max_iterations;
    }
    if (config_.time_limit_s > 0.0) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started_;
        if (elapsed.count() >= config_.time_limit_s) {
            return StopReason::time_limit;
        }
    }
    return std::nullopt;
}

SearchResult Solver::finalize(StopReason reason) const
{
    SearchResult result;
    std::vector<RegionEntry> entries(list_.entries().begin(), list_.entries().end());
    std::sort(entries.begin(), entries.end(), selected_before);
    result.regions.reserve(entries.size());
    for (const RegionEntry& e : entries) {
        result.regions.push_back({reconstruct_box(e), e.lb});
    }
    result.glb = entries.empty() ? last_selected_lb_ : entries.front().lb;
    result.gub = gub_;
    result.iterations = iteration_;
    result.stop = reason;
    result.witness = witness_;

    result.soundness = soundness();
    if (config_.debug_soundness) {
        const Box& watch = objective_->spec().minimizer;
        const bool covered = std::any_of(result.regions.begin(), result.regions.end(),
                                         [&](const OutputRegion& r) { return r.box.intersects(watch); });
        if (!covered || result.glb > objective_->spec().known_minimum.hi()) {
            result.soundness = SoundnessStatus::violated;
        }
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started_;
    result.wall_time_s = elapsed.count();
    return result;
}

SearchResult Solver::run()
{
    started_ = std::chrono::steady_clock::now();
    for (;;) {
        if (const auto reason = stopping_check()) {
            return finalize(*reason);
        }
        iterate();
    }
}

} // namespace enclose
