#include "hplie/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hplie
{

std::string to_string(Rational const &q)
{
  // get_str emits the canonical "p/q" or "p" form with the sign on p.
  return q.get_str();
}

namespace
{

bool is_integer_literal(std::string_view s)
{
  if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    s.remove_prefix(1);
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

std::string strip_plus(std::string_view s)
{
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  return std::string(s);
}

} // namespace

Rational parse_rational(std::string_view text)
{
  auto const slash = text.find('/');
  auto const num = text.substr(0, slash);
  if (!is_integer_literal(num))
    throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");

  Rational q;
  q.get_num() = mpz_class(strip_plus(num), 10);
  if (slash == std::string_view::npos) {
    q.get_den() = 1;
    return q;
  }

  auto const den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
  q.get_den() = mpz_class(std::string(den), 10);
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: \"" + std::string(text) + "\"");
  q.canonicalize();
  return q;
}

bool is_zero(Vector const &v)
{
  for (auto const &x : v)
    if (x != 0)
      return false;
  return true;
}

Vector operator+(Vector const &a, Vector const &b)
{
  if (a.size() != b.size())
    throw std::invalid_argument("vector size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] + b[i];
  return r;
}

Vector operator-(Vector const &a, Vector const &b)
{
  if (a.size() != b.size())
    throw std::invalid_argument("vector size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] - b[i];
  return r;
}

Vector operator*(Rational const &s, Vector const &v)
{
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = s * v[i];
  return r;
}

} // namespace hplie
