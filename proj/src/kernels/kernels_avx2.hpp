#pragma once

#include "mtdm/kernels.hpp"

namespace mtdm::kernels::avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
Chord chord(const double* slack, const double* rate, std::size_t n, double rate_tol,
            double lo0, double hi0);
double min_value(const double* x, std::size_t n);
}  // namespace mtdm::kernels::avx2
