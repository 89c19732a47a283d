#include "solspace/rng.hpp"

#include <cmath>

namespace solspace {

long long round_half_even(double x) {
  double floor_x = std::floor(x);
  double frac = x - floor_x;
  long long lo = static_cast<long long>(floor_x);
  if (frac > 0.5) return lo + 1;
  if (frac < 0.5) return lo;
  return (lo % 2 == 0) ? lo : lo + 1;
}

}  // namespace solspace
