#include "invariant/calendar.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace invariant::calendar {
namespace {

constexpr std::array<std::string_view, 7> kWeekdays{"Sun", "Mon", "Tue", "Wed", "Thu", "Fri", "Sat"};
constexpr std::array<std::string_view, 12> kMonthsShort{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                        "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
constexpr std::array<std::string_view, 12> kMonthsLong{
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

struct Civil {
  std::int64_t year;
  int month;  // 1..12
  int day;    // 1..31
  int hour;
  int minute;
  int second;
  int weekday;  // 0 = Sunday
};

// Howard Hinnant's days_from_civil / civil_from_days.
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Civil civil_from_seconds(std::int64_t t) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  Civil c{};
  c.day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  c.month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  c.year = static_cast<std::int64_t>(yoe) + era * 400 + (c.month <= 2);
  c.hour = static_cast<int>(rem / 3600);
  c.minute = static_cast<int>(rem / 60 % 60);
  c.second = static_cast<int>(rem % 60);
  c.weekday = static_cast<int>(((days % 7) + 11) % 7);  // 1970-01-01 was a Thursday
  return c;
}

bool valid_date(std::int64_t y, int m, int d) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m < 1 || m > 12 || d < 1) return false;
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  int limit = kDays[m - 1] + (m == 2 && leap ? 1 : 0);
  return d <= limit;
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool literal(std::string_view lit) {
    if (s_.substr(pos_, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  // Exactly `width` digits, or 1..max_width when width == 0.
  std::optional<int> number(std::size_t width, std::size_t max_width = 2) {
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9' &&
           pos_ - start < (width ? width : max_width)) {
      ++pos_;
    }
    std::size_t len = pos_ - start;
    if (len == 0 || (width && len != width)) return std::nullopt;
    int v = 0;
    std::from_chars(s_.data() + start, s_.data() + pos_, v);
    return v;
  }

  template <std::size_t N>
  std::optional<int> one_of(const std::array<std::string_view, N>& names) {
    for (std::size_t i = 0; i < N; ++i) {
      if (literal(names[i])) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  bool done() const { return pos_ == s_.size(); }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::int64_t to_seconds(std::int64_t y, int m, int d, int hh, int mm, int ss) {
  return days_from_civil(y, m, d) * 86400 + hh * 3600 + mm * 60 + ss;
}

std::string_view ordinal_suffix(int day) {
  if (day % 100 >= 11 && day % 100 <= 13) return "th";
  switch (day % 10) {
    case 1: return "st";
    case 2: return "nd";
    case 3: return "rd";
    default: return "th";
  }
}

}  // namespace

std::string format_log_style(std::int64_t epoch_seconds) {
  Civil c = civil_from_seconds(epoch_seconds);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s %s %02d %02d:%02d:%02d UTC %lld",
                kWeekdays[c.weekday].data(), kMonthsShort[c.month - 1].data(), c.day, c.hour,
                c.minute, c.second, static_cast<long long>(c.year));
  return buf;
}

std::optional<std::int64_t> parse_log_style(std::string_view text) {
  Cursor cur(text);
  auto wd = cur.one_of(kWeekdays);
  if (!wd || !cur.literal(" ")) return std::nullopt;
  auto mon = cur.one_of(kMonthsShort);
  if (!mon || !cur.literal(" ")) return std::nullopt;
  auto day = cur.number(0);
  if (!day || !cur.literal(" ")) return std::nullopt;
  auto hh = cur.number(2);
  if (!hh || !cur.literal(":")) return std::nullopt;
  auto mm = cur.number(2);
  if (!mm || !cur.literal(":")) return std::nullopt;
  auto ss = cur.number(2);
  if (!ss || !cur.literal(" UTC ")) return std::nullopt;
  auto year = cur.number(4);
  if (!year || !cur.done()) return std::nullopt;
  if (!valid_date(*year, *mon + 1, *day) || *hh > 23 || *mm > 59 || *ss > 60) return std::nullopt;
  std::int64_t t = to_seconds(*year, *mon + 1, *day, *hh, *mm, *ss);
  if (civil_from_seconds(t).weekday != *wd) return std::nullopt;
  return t;
}

std::string format_ordinal_style(std::int64_t epoch_seconds) {
  Civil c = civil_from_seconds(epoch_seconds);
  int hour12 = c.hour % 12 == 0 ? 12 : c.hour % 12;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d%s %s %lld%02d:%02d%s", c.day, ordinal_suffix(c.day).data(),
                kMonthsLong[c.month - 1].data(), static_cast<long long>(c.year), hour12, c.minute,
                c.hour < 12 ? "AM" : "PM");
  return buf;
}

std::optional<std::int64_t> parse_ordinal_style(std::string_view text) {
  Cursor cur(text);
  auto day = cur.number(0);
  if (!day) return std::nullopt;
  if (!cur.literal(ordinal_suffix(*day))) return std::nullopt;
  if (!cur.literal(" ")) return std::nullopt;
  auto mon = cur.one_of(kMonthsLong);
  if (!mon || !cur.literal(" ")) return std::nullopt;
  auto year = cur.number(4);
  if (!year) return std::nullopt;
  auto hh = cur.number(2);
  if (!hh || !cur.literal(":")) return std::nullopt;
  auto mm = cur.number(2);
  if (!mm) return std::nullopt;
  bool pm = false;
  if (cur.literal("PM")) {
    pm = true;
  } else if (!cur.literal("AM")) {
    return std::nullopt;
  }
  if (!cur.done()) return std::nullopt;
  if (*hh < 1 || *hh > 12 || *mm > 59 || !valid_date(*year, *mon + 1, *day)) return std::nullopt;
  int hour24 = (*hh % 12) + (pm ? 12 : 0);
  return to_seconds(*year, *mon + 1, *day, hour24, *mm, 0);
}

std::optional<std::int64_t> to_epoch_millis(const Timestamp& ts) {
  if (ts.is_epoch()) return ts.millis();
  if (auto s = parse_log_style(ts.text())) return *s * 1000;
  return std::nullopt;
}

}  // namespace invariant::calendar
