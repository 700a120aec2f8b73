#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace vaxwane::io {

using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Returns nullopt for
/// malformed text or impossible dates such as 2021-13-40.
std::optional<Date> parse_iso_date(std::string_view text);

std::string format_iso_date(Date d);

/// Whole days from `from` to `to` (positive when `to` is later).
inline long days_between(Date from, Date to) { return (to - from).count(); }

}  // namespace vaxwane::io
