#include "fairdiv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace fairdiv {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational denominator must be nonzero");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("malformed rational '" + std::string(text) +
                                 "' (expected p or p/q with decimal integers, q >= 1)");
  };
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  const auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view num_digits = num;
  if (!num_digits.empty() && num_digits.front() == '-') num_digits.remove_prefix(1);
  if (!digits_only(num_digits) || !digits_only(den)) throw bad();

  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw bad();
  Rational value(p, q);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational pow_rational(const Rational& base, unsigned long exp) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  return out;  // powers of a canonical rational stay canonical
}

}  // namespace fairdiv
