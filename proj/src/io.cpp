#include "hawkes/io.hpp"

#include "hawkes/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hawkes {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n\xef\xbb\xbf");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

TimeUnit parse_unit(std::string_view name) {
    if (name == "s" || name == "sec" || name == "second" || name == "seconds") {
        return TimeUnit::Seconds;
    }
    if (name == "min" || name == "minute" || name == "minutes") return TimeUnit::Minutes;
    if (name == "h" || name == "hour" || name == "hours") return TimeUnit::Hours;
    throw HawkesError(ErrorCode::InvalidArgument, "unknown time unit '" + std::string(name) + "'");
}

std::string_view unit_name(TimeUnit unit) noexcept {
    switch (unit) {
        case TimeUnit::Seconds: return "seconds";
        case TimeUnit::Minutes: return "minutes";
        case TimeUnit::Hours: return "hours";
    }
    return "minutes";
}

double seconds_per(TimeUnit unit) noexcept {
    switch (unit) {
        case TimeUnit::Seconds: return 1.0;
        case TimeUnit::Minutes: return 60.0;
        case TimeUnit::Hours: return 3600.0;
    }
    return 60.0;
}

EventSequence convert_units(const EventSequence& events, TimeUnit to) {
    const TimeUnit from = parse_unit(events.unit());
    if (from == to) return events;
    const double factor = seconds_per(from) / seconds_per(to);
    std::vector<double> times(events.times().begin(), events.times().end());
    for (double& t : times) t *= factor;
    return EventSequence(std::move(times), events.horizon() * factor, std::string(unit_name(to)));
}

ParsedEvents parse_events(std::istream& in, TimeUnit unit, std::optional<double> horizon) {
    std::vector<double> times;
    std::vector<std::string> warnings;
    std::string line;
    std::size_t line_number = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_number;
        const auto text = trim(line);
        if (text.empty()) continue;
        if (!seen_content) {
            seen_content = true;
            if (text == "t") continue;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
            std::ostringstream msg;
            msg << "line " << line_number << ": cannot parse '" << text << "' as a timestamp";
            throw HawkesError(ErrorCode::ParseError, msg.str());
        }
        if (value < 0.0) {
            std::ostringstream msg;
            msg << "line " << line_number << ": negative timestamp " << text;
            throw HawkesError(ErrorCode::NegativeTimestamp, msg.str());
        }
        times.push_back(value);
    }
    if (times.empty()) throw HawkesError(ErrorCode::EmptyFile, "no timestamps found");

    if (!std::is_sorted(times.begin(), times.end())) {
        std::sort(times.begin(), times.end());
        warnings.emplace_back("timestamps were not sorted; sorted on input");
    }

    double end = times.back();
    if (horizon) {
        if (!(*horizon >= 0.0) || !std::isfinite(*horizon)) {
            throw HawkesError(ErrorCode::InvalidArgument, "horizon must be finite and >= 0");
        }
        end = *horizon;
        const auto keep = std::upper_bound(times.begin(), times.end(), end);
        const auto dropped = static_cast<std::size_t>(times.end() - keep);
        if (dropped > 0) {
            warnings.push_back(std::to_string(dropped) + " events after horizon " +
                               format_number(end) + " dropped");
            times.erase(keep, times.end());
        }
    }
    return {EventSequence(std::move(times), end, std::string(unit_name(unit))),
            std::move(warnings)};
}

ParsedEvents parse_events_file(const std::filesystem::path& path, TimeUnit unit,
                               std::optional<double> horizon) {
    std::ifstream in(path);
    if (!in) throw HawkesError(ErrorCode::IoError, "cannot open " + path.string());
    return parse_events(in, unit, horizon);
}

std::string format_number(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) return "nan";
    return std::string(buffer, ptr);
}

void write_events(std::ostream& out, const EventSequence& events) {
    out << "t\n";
    for (double t : events.times()) out << format_number(t) << '\n';
}

nlohmann::json to_json(const FitParams& params) {
    return {{"alpha", params.alpha}, {"beta", params.beta}, {"lambda_inf", params.lambda_inf}};
}

nlohmann::json to_json(const EmpiricalMoments& stats) {
    return {{"m1", stats.triple.m1},   {"m2", stats.triple.m2},       {"m3", stats.triple.m3},
            {"delta", stats.delta},    {"count", stats.window_count}, {"t0", stats.t0}};
}

nlohmann::json to_json(const EstimateReport& report) {
    nlohmann::json j;
    j["params_hat"] = to_json(report.params_hat);
    j["residual_norm"] = report.residual_norm;
    j["residuals"] = report.residuals;
    j["iterations"] = report.iterations;
    j["converged"] = report.converged;
    j["boundary_fit"] = report.boundary_fit;
    j["init"] = to_json(report.init);
    j["window_stats"] = to_json(report.window_stats);
    j["warnings"] = report.warnings;
    return j;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw HawkesError(ErrorCode::IoError, "cannot write " + path.string());
    return out;
}

}  // namespace hawkes
