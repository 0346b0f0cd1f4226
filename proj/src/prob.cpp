#include "rdmlab/prob.hpp"

#include <cstdio>
#include <stdexcept>

namespace rdmlab {

std::string to_fraction(const Prob& p) {
  return p.get_num().get_str() + "/" + p.get_den().get_str();
}

std::string to_decimal(const Prob& p, int places) {
  // Round half away from zero at the requested place using integer math so
  // huge numerators and denominators never pass through a double.
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  mpz_class num = p.get_num();
  const bool negative = num < 0;
  if (negative) num = -num;
  mpz_class scaled = (2 * num * scale + p.get_den()) / (2 * p.get_den());
  mpz_class whole = scaled / scale;
  mpz_class frac = scaled % scale;
  std::string frac_str = frac.get_str();
  if (static_cast<int>(frac_str.size()) < places) {
    frac_str.insert(0, static_cast<std::size_t>(places) - frac_str.size(), '0');
  }
  std::string out = (negative && scaled != 0) ? "-" : "";
  out += whole.get_str();
  if (places > 0) out += "." + frac_str;
  return out;
}

Prob parse_fraction(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](std::string_view s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-') {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  Prob p(mpz_class(std::string(num), 10), d);
  p.canonicalize();
  return p;
}

}  // namespace rdmlab
