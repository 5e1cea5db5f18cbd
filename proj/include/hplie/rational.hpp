#ifndef HPLIE_RATIONAL_HPP
#define HPLIE_RATIONAL_HPP

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hplie
{

// Exact scalar field. mpq_class keeps numerator/denominator canonical
// (positive denominator, coprime) after every arithmetic operation.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

// "p/q", or "p" when q == 1; sign on the numerator.
std::string to_string(Rational const &q);

// Accepts "p", "p/q", with optional leading sign. Throws std::invalid_argument
// on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

bool is_zero(Vector const &v);

Vector operator+(Vector const &a, Vector const &b);
Vector operator-(Vector const &a, Vector const &b);
Vector operator*(Rational const &s, Vector const &v);

} // namespace hplie

#endif
