#pragma once

#include "hawkes/core.hpp"
#include "hawkes/estimate.hpp"

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hawkes {

enum class TimeUnit { Seconds, Minutes, Hours };

/// Accepts "s", "sec", "seconds", "min", "minutes", "h", "hours".
[[nodiscard]] TimeUnit parse_unit(std::string_view name);
[[nodiscard]] std::string_view unit_name(TimeUnit unit) noexcept;
[[nodiscard]] double seconds_per(TimeUnit unit) noexcept;

/// Rescales timestamps and horizon into `to`.
[[nodiscard]] EventSequence convert_units(const EventSequence& events, TimeUnit to);

struct ParsedEvents {
    EventSequence events;
    std::vector<std::string> warnings;
};

/// Events file: UTF-8 text, optional single header line "t", then one
/// nonnegative decimal per line. Blank lines are skipped. Unsorted input is
/// sorted with a warning. Horizon is the last timestamp unless `horizon` is
/// given, in which case later events are dropped with a warning.
/// Throws ParseError (with line number), NegativeTimestamp, EmptyFile.
[[nodiscard]] ParsedEvents parse_events(std::istream& in, TimeUnit unit,
                                        std::optional<double> horizon = std::nullopt);
[[nodiscard]] ParsedEvents parse_events_file(const std::filesystem::path& path, TimeUnit unit,
                                             std::optional<double> horizon = std::nullopt);

/// Shortest round-trip decimal representation.
[[nodiscard]] std::string format_number(double value);

void write_events(std::ostream& out, const EventSequence& events);

[[nodiscard]] nlohmann::json to_json(const FitParams& params);
[[nodiscard]] nlohmann::json to_json(const EmpiricalMoments& stats);
[[nodiscard]] nlohmann::json to_json(const EstimateReport& report);

/// Opens for writing or throws IoError.
[[nodiscard]] std::ofstream open_output(const std::filesystem::path& path);

}  // namespace hawkes
