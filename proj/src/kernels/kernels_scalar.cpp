#include "mtdm/kernels.hpp"

#include <limits>

namespace mtdm::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

Chord chord(const double* slack, const double* rate, std::size_t n, double rate_tol,
            double lo0, double hi0) {
  double lo = lo0;
  double hi = hi0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rate[i];
    if (r > rate_tol) {
      const double q = -slack[i] / r;
      if (q > lo) lo = q;
    } else if (r < -rate_tol) {
      const double q = -slack[i] / r;
      if (q < hi) hi = q;
    }
  }
  return {lo, hi};
}

double min_value(const double* x, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] < m) m = x[i];
  return m;
}

}  // namespace mtdm::kernels::scalar
