#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace context_eval {

// Calendar-month bucket in UTC.
struct MonthKey {
    int year = 1970;
    int month = 1;  // 1..12

    static MonthKey from_timestamp(std::int64_t utc_seconds);

    // Months since year 0, so window arithmetic works across year boundaries.
    constexpr int index() const { return year * 12 + (month - 1); }
    static constexpr MonthKey from_index(int idx) {
        int y = idx / 12;
        int m = idx % 12;
        if (m < 0) {
            m += 12;
            y -= 1;
        }
        return MonthKey{y, m + 1};
    }

    MonthKey next() const { return from_index(index() + 1); }
    MonthKey prev() const { return from_index(index() - 1); }

    std::string str() const;  // "2016-03"

    auto operator<=>(const MonthKey&) const = default;
};

// First second of the month, as a UTC epoch timestamp.
std::int64_t month_start_epoch(MonthKey m);

}  // namespace context_eval
