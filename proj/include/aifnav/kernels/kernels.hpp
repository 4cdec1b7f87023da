#pragma once

#include <cstddef>
#include <string_view>

// Dense double-precision loops used by inference and the planner.
// Every variant must agree with the scalar reference to rounding.

namespace aifnav::kernels {

struct KernelTable {
    const char* name;
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*max)(const double* x, std::size_t n);
    // y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // out = x * y elementwise (out may alias x or y)
    void (*hadamard)(const double* x, const double* y, double* out, std::size_t n);
    // x *= a
    void (*scale)(double a, double* x, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// Selected once: AVX2 or NEON when available, scalar otherwise.
// AIFNAV_KERNELS=scalar in the environment forces the reference path.
const KernelTable& active();

// Testing hook; pass nullptr to restore the default selection.
void override_active(const KernelTable* table);

inline double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double max(const double* x, std::size_t n) { return active().max(x, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void hadamard(const double* x, const double* y, double* out, std::size_t n) {
    active().hadamard(x, y, out, n);
}
inline void scale(double a, double* x, std::size_t n) { active().scale(a, x, n); }

// out[r] = sum_c m[c*rows + r] * x[c]  (column-major matrix times vector)
void matvec_colmajor(const double* m, std::size_t rows, std::size_t cols, const double* x, double* out);

// Scales x to sum 1; returns the pre-normalisation sum (x untouched when it is 0).
double normalise(double* x, std::size_t n);

// -sum p log p with 0 log 0 = 0. Kept scalar: log has no portable vector form.
double entropy(const double* p, std::size_t n);

}  // namespace aifnav::kernels
