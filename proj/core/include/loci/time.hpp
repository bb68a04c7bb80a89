#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace loci {

/// UTC instant at one-second resolution.
using Timestamp = std::chrono::sys_seconds;

/// Durations derived from medians can land on half seconds, so they carry
/// millisecond resolution.
using Duration = std::chrono::milliseconds;

/// Parses ISO-8601 style timestamps as produced by Movebank and most
/// weather archives:
///
///   2009-01-01 00:00:00.000
///   2009-01-01T00:00:00Z
///   2009-01-01T02:00:00+02:00
///   2009-01-01
///
/// Fractional seconds are truncated. Inputs without a zone are taken as UTC.
/// Returns nullopt on anything malformed or out of range.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Timestamp t);

/// Formats the calendar date only, `YYYY-MM-DD`.
std::string format_date(Timestamp t);

}  // namespace loci
