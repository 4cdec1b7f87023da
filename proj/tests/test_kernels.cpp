#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "aifnav/kernels/kernels.hpp"

namespace k = aifnav::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

std::vector<const k::KernelTable*> variants() {
    std::vector<const k::KernelTable*> out;
    if (auto* t = k::avx2_table()) out.push_back(t);
    if (auto* t = k::neon_table()) out.push_back(t);
    return out;
}

// Relative agreement to a few ulps of the magnitude involved; the variants
// reassociate sums, so bit equality is not expected.
void expect_close(double ref, double got, double scale) {
    EXPECT_NEAR(ref, got, 1e-13 * (1.0 + scale)) << "ref " << ref << " got " << got;
}

}  // namespace

TEST(Kernels, ScalarReferenceValues) {
    const auto& s = k::scalar_table();
    const std::vector<double> x{1, 2, 3};
    const std::vector<double> y{4, -5, 6};
    EXPECT_DOUBLE_EQ(s.dot(x.data(), y.data(), 3), 12.0);
    EXPECT_DOUBLE_EQ(s.sum(y.data(), 3), 5.0);
    EXPECT_DOUBLE_EQ(s.max(y.data(), 3), 6.0);
    std::vector<double> z = y;
    s.axpy(2.0, x.data(), z.data(), 3);
    EXPECT_EQ(z, (std::vector<double>{6, -1, 12}));
    s.hadamard(x.data(), y.data(), z.data(), 3);
    EXPECT_EQ(z, (std::vector<double>{4, -10, 18}));
    s.scale(0.5, z.data(), 3);
    EXPECT_EQ(z, (std::vector<double>{2, -5, 9}));
}

TEST(Kernels, VariantsMatchScalarAcrossLengths) {
    const auto& ref = k::scalar_table();
    std::mt19937_64 rng(7);
    for (const auto* t : variants()) {
        SCOPED_TRACE(t->name);
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 100u, 1023u}) {
            SCOPED_TRACE(n);
            const auto x = random_vector(rng, n);
            const auto y = random_vector(rng, n);
            double mag = 0.0;
            for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i] * y[i]) + std::abs(x[i]);
            expect_close(ref.dot(x.data(), y.data(), n), t->dot(x.data(), y.data(), n), mag);
            expect_close(ref.sum(x.data(), n), t->sum(x.data(), n), mag);
            if (n > 0) {
                EXPECT_EQ(ref.max(x.data(), n), t->max(x.data(), n));
            }

            auto a1 = y, a2 = y;
            ref.axpy(0.37, x.data(), a1.data(), n);
            t->axpy(0.37, x.data(), a2.data(), n);
            for (std::size_t i = 0; i < n; ++i) expect_close(a1[i], a2[i], std::abs(a1[i]));

            std::vector<double> h1(n), h2(n);
            ref.hadamard(x.data(), y.data(), h1.data(), n);
            t->hadamard(x.data(), y.data(), h2.data(), n);
            EXPECT_EQ(h1, h2);

            auto s1 = x, s2 = x;
            ref.scale(-1.7, s1.data(), n);
            t->scale(-1.7, s2.data(), n);
            EXPECT_EQ(s1, s2);
        }
    }
}

TEST(Kernels, HadamardMayAliasInput) {
    std::mt19937_64 rng(3);
    for (const auto* t : variants()) {
        auto x = random_vector(rng, 13);
        const auto y = random_vector(rng, 13);
        std::vector<double> expect(13);
        k::scalar_table().hadamard(x.data(), y.data(), expect.data(), 13);
        t->hadamard(x.data(), y.data(), x.data(), 13);
        EXPECT_EQ(x, expect) << t->name;
    }
}

TEST(Kernels, DispatchCanBeForcedToScalar) {
    k::override_active(&k::scalar_table());
    EXPECT_STREQ(k::active().name, k::scalar_table().name);
    k::override_active(nullptr);
    if (auto* t = k::avx2_table()) {
        EXPECT_STREQ(k::active().name, t->name);
    }
}

TEST(Kernels, NormaliseAndEntropy) {
    std::vector<double> p{1, 1, 2};
    EXPECT_DOUBLE_EQ(k::normalise(p.data(), 3), 4.0);
    EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-15);
    EXPECT_NEAR(k::entropy(p.data(), 3), -(0.25 * std::log(0.25) * 2 + 0.5 * std::log(0.5)), 1e-15);
    std::vector<double> zero{0, 0};
    EXPECT_EQ(k::normalise(zero.data(), 2), 0.0);
    EXPECT_EQ(zero, (std::vector<double>{0, 0}));
    const std::vector<double> delta{0, 1, 0};
    EXPECT_EQ(k::entropy(delta.data(), 3), 0.0);
}

TEST(Kernels, MatvecMatchesNaiveUnderEveryVariant) {
    std::mt19937_64 rng(11);
    const std::size_t rows = 7, cols = 5;
    const auto m = random_vector(rng, rows * cols);
    const auto x = random_vector(rng, cols);
    std::vector<double> naive(rows, 0.0);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) naive[r] += m[c * rows + r] * x[c];
    std::vector<const k::KernelTable*> all{&k::scalar_table()};
    for (auto* t : variants()) all.push_back(t);
    for (const auto* t : all) {
        k::override_active(t);
        std::vector<double> out(rows);
        k::matvec_colmajor(m.data(), rows, cols, x.data(), out.data());
        for (std::size_t r = 0; r < rows; ++r) EXPECT_NEAR(out[r], naive[r], 1e-13) << t->name;
    }
    k::override_active(nullptr);
}
