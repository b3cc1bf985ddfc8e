#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version chosen at runtime from CPUID. The AVX2 variants
// are compiled with -ffp-contract=off and use separate multiply/add so that
// element-wise kernels (axpy, chord) are bit-identical to the scalar path;
// only the reduction order of `dot` differs.

#include <cstddef>
#include <span>
#include <string_view>

namespace mtdm::kernels {

/// Feasible step interval [lo, hi] along a direction.
struct Chord {
  double lo;
  double hi;
};

struct KernelTable {
  std::string_view name;
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// Largest interval [lo, hi] (clipped to [lo0, hi0]) such that
  /// slack[i] + t * rate[i] >= 0 for every i with |rate[i]| > rate_tol.
  Chord (*chord)(const double* slack, const double* rate, std::size_t n,
                 double rate_tol, double lo0, double hi0);
  /// min_i x[i]; +inf for n == 0.
  double (*min_value)(const double* x, std::size_t n);
};

enum class Isa { Scalar, Avx2 };

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_table();

/// Table used by the library. Defaults to the best available variant; the
/// environment variable MTDM_ISA=scalar forces the reference kernels.
const KernelTable& active();
/// Overrides the active table. Returns false if the ISA is unavailable.
bool select(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
Chord chord(const double* slack, const double* rate, std::size_t n, double rate_tol,
            double lo0, double hi0);
double min_value(const double* x, std::size_t n);
}  // namespace scalar

}  // namespace mtdm::kernels
