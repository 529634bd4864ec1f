#ifndef QSL_SRC_KAHAN_HPP
#define QSL_SRC_KAHAN_HPP

#include <cmath>

namespace qsl::detail {

// Neumaier-compensated accumulator. The doublet family mixes magnitudes 1 and
// n^alpha in one sum, which naive summation cannot carry at full precision.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double total() const { return sum + comp; }
};

}  // namespace qsl::detail

#endif
