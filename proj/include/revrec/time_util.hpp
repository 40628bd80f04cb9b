#ifndef REVREC_TIME_UTIL_HPP
#define REVREC_TIME_UTIL_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace revrec {

// Parses a timestamp string to UTC epoch milliseconds. Accepted forms:
//   ISO-8601:      2017-01-10T12:34:56Z, 2017-01-10T12:34:56.123+02:00
//   Gerrit format: 2017-01-10 12:34:56.000000000  (implicitly UTC)
//   date only:     2017-01-10
// Returns nullopt when the string matches none of them.
std::optional<std::int64_t> parse_timestamp_ms(const std::string& text);

// Normalizes an integer timestamp to milliseconds. Values below 1e11 are
// interpreted as seconds since epoch (1e11 ms is March 1973, long before
// any mined review), larger values as milliseconds.
std::int64_t normalize_epoch_ms(std::int64_t value);

// Epoch milliseconds of the instant `months` calendar months before
// `reference_ms`, clamping invalid days to the end of the month
// (e.g. March 31 minus one month -> February 28/29).
std::int64_t months_before_ms(std::int64_t reference_ms, int months);

// "2017-01-10T12:34:56Z" for logs and report headers.
std::string format_timestamp_utc(std::int64_t epoch_ms);

}  // namespace revrec

#endif  // REVREC_TIME_UTIL_HPP
