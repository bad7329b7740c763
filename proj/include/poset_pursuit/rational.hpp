#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pursuit {

// Exact time values. mpq_class keeps numerator/denominator reduced once
// canonicalized, so equality and ordering are exact.
using Time = mpq_class;

Time parse_time(std::string_view text);
std::string to_string(const Time& t);
Time midpoint(const Time& a, const Time& b);
Time make_time(long num, long den = 1);

}  // namespace pursuit
