#pragma once

#include <string>

namespace fockstat {

/// Shortest decimal text that parses back to exactly the same double
/// ("nan", "inf", "-inf" for non-finite values). Locale independent.
std::string format_double(double value);

}  // namespace fockstat
