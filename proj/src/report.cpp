#include "enclose/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace enclose {

namespace {

using nlohmann::json;

json number(double x)
{
    if (std::isfinite(x)) {
        return x;
    }
    return format_double(x);
}

json config_json(const SolverConfig& c)
{
    json j = {
        {"p", c.scheme.for_dimension(c.n).dims_per_iter},
        {"s", c.scheme.subintervals},
        {"m", c.samples},
        {"tolerance", c.width_tolerance},
        {"derivative_test", c.derivative_test},
        {"full_gradient", c.full_gradient},
        {"sampling", std::string(to_string(c.sampling))},
        {"threads", c.threads},
        {"rounding", c.rounding.to_string()},
        {"max_iterations", c.max_iterations},
        {"time_limit", c.time_limit_s},
        {"debug_soundness", c.debug_soundness},
    };
    return j;
}

} // namespace

ReportFormat parse_report_format(std::string_view text)
{
    if (text == "json") {
        return ReportFormat::json;
    }
    if (text == "csv") {
        return ReportFormat::csv;
    }
    throw std::invalid_argument("unknown report format: " + std::string(text));
}

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

json to_json(const SolverConfig& config, const SearchResult& result)
{
    json regions = json::array();
    for (const OutputRegion& r : result.regions) {
        json bounds = json::array();
        for (const Interval& x : r.box) {
            bounds.push_back({number(x.lo()), number(x.hi())});
        }
        regions.push_back({{"lb", number(r.lb)}, {"bounds", std::move(bounds)}});
    }
    json witness = json::array();
    for (const double x : result.witness) {
        witness.push_back(number(x));
    }
    return {
        {"function", config.objective},
        {"n", config.n},
        {"config", config_json(config)},
        {"iterations", result.iterations},
        {"stop_reason", std::string(to_string(result.stop))},
        {"glb", number(result.glb)},
        {"gub", number(result.gub)},
        {"witness", std::move(witness)},
        {"regions", std::move(regions)},
        {"wall_time_s", result.wall_time_s},
        {"soundness", std::string(to_string(result.soundness))},
    };
}

json deterministic_view(json report)
{
    report.erase("wall_time_s");
    if (report.contains("config")) {
        report["config"].erase("threads");
    }
    return report;
}

void write_json(std::ostream& out, const SolverConfig& config, const SearchResult& result)
{
    out << to_json(config, result).dump(2) << '\n';
}

void write_csv(std::ostream& out, const SolverConfig& config, const SearchResult& result)
{
    const PartitionScheme scheme = config.scheme.for_dimension(config.n);
    out << "function=" << config.objective << ",n=" << config.n << ",p=" << scheme.dims_per_iter
        << ",s=" << scheme.subintervals << ",m=" << config.samples
        << ",tolerance=" << format_double(config.width_tolerance)
        << ",derivative_test=" << (config.derivative_test ? "on" : "off")
        << ",sampling=" << to_string(config.sampling) << ",threads=" << config.threads
        << ",rounding=" << config.rounding.to_string() << ",iterations=" << result.iterations
        << ",stop_reason=" << to_string(result.stop) << ",glb=" << format_double(result.glb)
        << ",gub=" << format_double(result.gub) << ",regions=" << result.regions.size()
        << ",soundness=" << to_string(result.soundness)
        << ",wall_time_s=" << format_double(result.wall_time_s) << '\n';

    out << "lb";
    for (std::size_t i = 1; i <= config.n; ++i) {
        out << ",x" << i << "_lo,x" << i << "_hi";
    }
    out << '\n';
    for (const OutputRegion& r : result.regions) {
        out << format_double(r.lb);
        for (const Interval& x : r.box) {
            out << ',' << format_double(x.lo()) << ',' << format_double(x.hi());
        }
        out << '\n';
    }
}

void write_report(std::ostream& out, ReportFormat format, const SolverConfig& config,
                  const SearchResult& result)
{
    if (format == ReportFormat::json) {
        write_json(out, config, result);
    } else {
        write_csv(out, config, result);
    }
}

} // namespace enclose
