#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace parazone {

/// Exact rational number, always kept in canonical (reduced) form.
using Rat = mpq_class;

/// Parses "num/den" or an integer literal. Throws InvalidInput on a
/// malformed literal or a zero denominator.
Rat parse_rat(std::string_view text);

/// Canonical textual form: "n" for integers, "n/d" otherwise.
std::string to_string(const Rat& value);

/// Approximate value, for presentation only.
double to_double(const Rat& value);

}  // namespace parazone
