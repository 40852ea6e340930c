#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace latpatch {

/// Exact horizontal coordinate. Always kept in lowest terms by boost.
using Rational = boost::rational<std::int64_t>;

/// Formats as "p/q" with q > 0, lowest terms ("3/1", "-1/2", "0/1").
std::string format_rational(const Rational& r);

/// Accepts "p/q" or a bare integer "p". Throws LatticeError(SchemaError) otherwise.
Rational parse_rational(std::string_view text);

}  // namespace latpatch
