#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace esgirt {

// Calendar date with day precision, ISO-8601 "YYYY-MM-DD".
struct Date {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..days_in_month

  auto operator<=>(const Date&) const = default;
};

// A calendar month, the item unit of the response matrix. Label "YYYY-MM".
struct MonthKey {
  int year = 0;
  int month = 0;  // 1..12

  auto operator<=>(const MonthKey&) const = default;

  MonthKey next() const;
  std::string label() const;
};

// Inclusive month range.
struct MonthRange {
  MonthKey start;
  MonthKey end;  // >= start

  bool contains(MonthKey m) const { return start <= m && m <= end; }
  int size() const;  // number of months, >= 1
  std::vector<MonthKey> months() const;

  auto operator<=>(const MonthRange&) const = default;
};

int days_in_month(int year, int month);

// Throws ParseError on anything that is not a valid ISO date / month.
Date parse_date(std::string_view text);
MonthKey parse_month(std::string_view text);
// "YYYY-MM..YYYY-MM", throws ParseError.
MonthRange parse_month_range(std::string_view text);

std::string format_date(const Date& d);

inline MonthKey month_of(const Date& d) { return MonthKey{d.year, d.month}; }

}  // namespace esgirt
