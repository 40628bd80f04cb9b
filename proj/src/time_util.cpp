#include "revrec/time_util.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

namespace revrec {

namespace {

using days_t = std::chrono::days;
using std::chrono::sys_days;
using std::chrono::year_month_day;

bool parse_fraction_ms(const char* p, const char** rest, std::int64_t* out_ms) {
  // p points at the first digit after '.'. Keeps millisecond precision.
  std::int64_t ms = 0;
  int digits = 0;
  while (*p >= '0' && *p <= '9') {
    if (digits < 3) ms = ms * 10 + (*p - '0');
    ++digits;
    ++p;
  }
  if (digits == 0) return false;
  while (digits < 3) {
    ms *= 10;
    ++digits;
  }
  *rest = p;
  *out_ms = ms;
  return true;
}

}  // namespace

std::optional<std::int64_t> parse_timestamp_ms(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0;
  double unused_sec = 0;
  (void)unused_sec;
  int s = 0;
  int consumed = 0;
  const char* c = text.c_str();

  if (std::sscanf(c, "%4d-%2d-%2d%n", &y, &mo, &d, &consumed) != 3) {
    return std::nullopt;
  }
  const char* p = c + consumed;
  std::int64_t frac_ms = 0;
  bool have_time = false;
  if (*p == 'T' || *p == ' ') {
    int tc = 0;
    if (std::sscanf(p + 1, "%2d:%2d:%2d%n", &h, &mi, &s, &tc) != 3) {
      return std::nullopt;
    }
    p += 1 + tc;
    have_time = true;
    if (*p == '.') {
      if (!parse_fraction_ms(p + 1, &p, &frac_ms)) return std::nullopt;
    }
  }

  std::int64_t offset_min = 0;
  if (have_time) {
    if (*p == 'Z') {
      ++p;
    } else if (*p == '+' || *p == '-') {
      int oh = 0, om = 0, oc = 0;
      int sign = (*p == '-') ? -1 : 1;
      if (std::sscanf(p + 1, "%2d:%2d%n", &oh, &om, &oc) == 2 ||
          std::sscanf(p + 1, "%2d%2d%n", &oh, &om, &oc) == 2) {
        offset_min = sign * (oh * 60 + om);
        p += 1 + oc;
      } else {
        return std::nullopt;
      }
    }
  }
  if (*p != '\0') return std::nullopt;

  year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                     std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return std::nullopt;
  if (h > 23 || mi > 59 || s > 60) return std::nullopt;

  std::int64_t day_count = sys_days{ymd}.time_since_epoch().count();
  std::int64_t total_s =
      day_count * 86400 + h * 3600 + mi * 60 + s - offset_min * 60;
  return total_s * 1000 + frac_ms;
}

std::int64_t normalize_epoch_ms(std::int64_t value) {
  constexpr std::int64_t kSecondsCutoff = 100000000000;  // 1e11
  if (value < kSecondsCutoff && value > -kSecondsCutoff) return value * 1000;
  return value;
}

std::int64_t months_before_ms(std::int64_t reference_ms, int months) {
  std::int64_t day_count = reference_ms / 86400000;
  std::int64_t within_day = reference_ms % 86400000;
  if (within_day < 0) {
    within_day += 86400000;
    --day_count;
  }
  sys_days sd{days_t{day_count}};
  year_month_day ymd{sd};
  ymd -= std::chrono::months{months};
  if (!ymd.ok()) {
    ymd = ymd.year() / ymd.month() / std::chrono::last;
  }
  std::int64_t new_days = sys_days{ymd}.time_since_epoch().count();
  return new_days * 86400000 + within_day;
}

std::string format_timestamp_utc(std::int64_t epoch_ms) {
  std::int64_t day_count = epoch_ms / 86400000;
  std::int64_t within = epoch_ms % 86400000;
  if (within < 0) {
    within += 86400000;
    --day_count;
  }
  year_month_day ymd{sys_days{days_t{day_count}}};
  std::int64_t sec = within / 1000;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                int(sec / 3600), int((sec / 60) % 60), int(sec % 60));
  return buf;
}

}  // namespace revrec
