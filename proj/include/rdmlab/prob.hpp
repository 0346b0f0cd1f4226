#ifndef RDMLAB_PROB_HPP
#define RDMLAB_PROB_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rdmlab {

/// Exact rational. All probabilities, gains and bound terms are carried as
/// reduced GMP rationals; doubles appear only in reporting and Monte Carlo.
using Prob = mpq_class;

/// C(n, 2) as an exact integer.
inline long long pairs(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

inline Prob make_prob(long long num, long long den = 1) {
  Prob p(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  p.canonicalize();
  return p;
}

/// Always "p/q", including integers ("1/1", "0/1").
std::string to_fraction(const Prob& p);

/// Fixed six-place decimal rendering.
std::string to_decimal(const Prob& p, int places = 6);

/// Parses "p/q" or an integer; throws std::invalid_argument otherwise.
Prob parse_fraction(std::string_view text);

}  // namespace rdmlab

#endif
