#ifndef DOFAM_RATIONAL_HPP
#define DOFAM_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "json.hpp"

namespace dofam {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "-0.125" or "1.5e-2", exactly.
Rational parse_rational(std::string_view text);

/// Lowest terms, always "num/den" (e.g. "0/1", "1/4").
std::string format_rational(const Rational& q);

/// Accepts a JSON string (any parse_rational form) or a JSON number (read from its
/// shortest decimal rendering).
Rational rational_from_json(const nlohmann::json& j);

}  // namespace dofam

#endif
