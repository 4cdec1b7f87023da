#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "aifnav/kernels/kernels.hpp"

namespace aifnav::kernels {
namespace {

const KernelTable* detect() {
    const char* forced = std::getenv("AIFNAV_KERNELS");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return &scalar_table();
    if (const KernelTable* t = avx2_table()) return t;
    if (const KernelTable* t = neon_table()) return t;
    return &scalar_table();
}

std::atomic<const KernelTable*> g_override{nullptr};

}  // namespace

const KernelTable& active() {
    if (const KernelTable* o = g_override.load(std::memory_order_relaxed)) return *o;
    static const KernelTable* chosen = detect();
    return *chosen;
}

void override_active(const KernelTable* table) { g_override.store(table, std::memory_order_relaxed); }

void matvec_colmajor(const double* m, std::size_t rows, std::size_t cols, const double* x, double* out) {
    const KernelTable& k = active();
    for (std::size_t r = 0; r < rows; ++r) out[r] = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (x[c] == 0.0) continue;
        k.axpy(x[c], m + c * rows, out, rows);
    }
}

double normalise(double* x, std::size_t n) {
    const KernelTable& k = active();
    const double total = k.sum(x, n);
    if (total > 0.0) k.scale(1.0 / total, x, n);
    return total;
}

double entropy(const double* p, std::size_t n) {
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
    return h;
}

}  // namespace aifnav::kernels
