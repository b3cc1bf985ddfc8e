#include "kernels_avx2.hpp"

#include <immintrin.h>

#include <limits>

namespace mtdm::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
  __m128d m = _mm_max_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline double hmin(__m256d v) {
  __m128d m = _mm_min_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

Chord chord(const double* slack, const double* rate, std::size_t n, double rate_tol,
            double lo0, double hi0) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d ptol = _mm256_set1_pd(rate_tol);
  const __m256d ntol = _mm256_set1_pd(-rate_tol);
  const __m256d vninf = _mm256_set1_pd(-inf);
  const __m256d vpinf = _mm256_set1_pd(inf);
  __m256d vlo = _mm256_set1_pd(lo0);
  __m256d vhi = _mm256_set1_pd(hi0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(rate + i);
    const __m256d q = _mm256_div_pd(_mm256_xor_pd(_mm256_loadu_pd(slack + i), sign), r);
    const __m256d pos = _mm256_cmp_pd(r, ptol, _CMP_GT_OQ);
    const __m256d neg = _mm256_cmp_pd(r, ntol, _CMP_LT_OQ);
    vlo = _mm256_max_pd(vlo, _mm256_blendv_pd(vninf, q, pos));
    vhi = _mm256_min_pd(vhi, _mm256_blendv_pd(vpinf, q, neg));
  }
  double lo = hmax(vlo);
  double hi = hmin(vhi);
  for (; i < n; ++i) {
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
  constexpr double inf = std::numeric_limits<double>::infinity();
  __m256d vm = _mm256_set1_pd(inf);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vm = _mm256_min_pd(vm, _mm256_loadu_pd(x + i));
  double m = hmin(vm);
  for (; i < n; ++i)
    if (x[i] < m) m = x[i];
  return m;
}

}  // namespace mtdm::kernels::avx2
