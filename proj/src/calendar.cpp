#include "esgirt/calendar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "esgirt/errors.hpp"

namespace esgirt {

namespace {

bool is_leap(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

// Parses exactly `len` digits starting at `pos`; returns false on any
// non-digit or short input.
bool take_digits(std::string_view s, size_t pos, size_t len, int& out) {
  if (s.size() < pos + len) return false;
  int value = 0;
  for (size_t i = pos; i < pos + len; ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (!std::isdigit(c)) return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

}  // namespace

int days_in_month(int year, int month) {
  static const int table[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  if (month == 2 && is_leap(year)) return 29;
  return table[month - 1];
}

Date parse_date(std::string_view text) {
  Date d;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !take_digits(text, 0, 4, d.year) || !take_digits(text, 5, 2, d.month) ||
      !take_digits(text, 8, 2, d.day)) {
    throw ParseError("malformed date '" + std::string(text) +
                     "' (expected YYYY-MM-DD)");
  }
  if (d.month < 1 || d.month > 12 || d.day < 1 ||
      d.day > days_in_month(d.year, d.month)) {
    throw ParseError("invalid calendar date '" + std::string(text) + "'");
  }
  return d;
}

MonthKey parse_month(std::string_view text) {
  MonthKey m;
  if (text.size() != 7 || text[4] != '-' || !take_digits(text, 0, 4, m.year) ||
      !take_digits(text, 5, 2, m.month)) {
    throw ParseError("malformed month '" + std::string(text) +
                     "' (expected YYYY-MM)");
  }
  if (m.month < 1 || m.month > 12) {
    throw ParseError("invalid month '" + std::string(text) + "'");
  }
  return m;
}

MonthRange parse_month_range(std::string_view text) {
  size_t sep = text.find("..");
  if (sep == std::string_view::npos) {
    throw ParseError("malformed month range '" + std::string(text) +
                     "' (expected YYYY-MM..YYYY-MM)");
  }
  MonthRange r{parse_month(text.substr(0, sep)), parse_month(text.substr(sep + 2))};
  if (r.end < r.start) {
    throw ParseError("month range '" + std::string(text) + "' ends before it starts");
  }
  return r;
}

MonthKey MonthKey::next() const {
  return month == 12 ? MonthKey{year + 1, 1} : MonthKey{year, month + 1};
}

std::string MonthKey::label() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

int MonthRange::size() const {
  return (end.year - start.year) * 12 + (end.month - start.month) + 1;
}

std::vector<MonthKey> MonthRange::months() const {
  std::vector<MonthKey> out;
  out.reserve(static_cast<size_t>(size()));
  for (MonthKey m = start;; m = m.next()) {
    out.push_back(m);
    if (m == end) break;
  }
  return out;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

}  // namespace esgirt
