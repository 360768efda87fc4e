#include "imgql/kernels.hpp"

// Reference kernels. Plain loops, one element at a time; the AVX2 variants in
// kernels_avx2.cpp must match these bit for bit on elementwise operations.

namespace imgql::kern {
namespace {

template <class F>
bool arith_loop(double* out, std::size_t n, F f) {
    bool nan = false;
    for (std::size_t i = 0; i < n; ++i) {
        double r = f(i);
        nan |= (r != r);
        out[i] = r;
    }
    return nan;
}

bool s_add_ff(const double* a, const double* b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a[i] + b[i]; });
}
bool s_sub_ff(const double* a, const double* b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a[i] - b[i]; });
}
bool s_mul_ff(const double* a, const double* b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a[i] * b[i]; });
}
bool s_div_ff(const double* a, const double* b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a[i] / b[i]; });
}
bool s_add_fs(const double* a, double b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a[i] + b; });
}
bool s_sub_fs(const double* a, double b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a[i] - b; });
}
bool s_sub_sf(double a, const double* b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a - b[i]; });
}
bool s_mul_fs(const double* a, double b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a[i] * b; });
}
bool s_div_fs(const double* a, double b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a[i] / b; });
}
bool s_div_sf(double a, const double* b, double* out, std::size_t n) {
    return arith_loop(out, n, [&](std::size_t i) { return a / b[i]; });
}

template <class F>
void cmp_loop(const double* a, std::uint8_t* out, std::size_t n, F f) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(a[i]) ? 1 : 0;
}

void s_cmp_gt(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_loop(a, out, n, [c](double v) { return v > c; });
}
void s_cmp_lt(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_loop(a, out, n, [c](double v) { return v < c; });
}
void s_cmp_geq(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_loop(a, out, n, [c](double v) { return v >= c; });
}
void s_cmp_leq(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_loop(a, out, n, [c](double v) { return v <= c; });
}
void s_cmp_eq(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_loop(a, out, n, [c](double v) { return v == c; });
}

void s_and_bb(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] & b[i]) ? 1 : 0;
}
void s_or_bb(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] | b[i]) ? 1 : 0;
}
void s_not_b(const std::uint8_t* a, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] ? 0 : 1;
}

double s_reduce_min(const double* a, std::size_t n) {
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i)
        if (a[i] < m) m = a[i];
    return m;
}
double s_reduce_max(const double* a, std::size_t n) {
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}
std::int64_t s_count_true(const std::uint8_t* a, std::size_t n) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += a[i] ? 1 : 0;
    return c;
}

double s_dot_counts(const std::int32_t* counts, const double* weights, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(counts[i]) * weights[i];
    return s;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",
        s_add_ff, s_sub_ff, s_mul_ff, s_div_ff,
        s_add_fs, s_sub_fs, s_sub_sf, s_mul_fs, s_div_fs, s_div_sf,
        s_cmp_gt, s_cmp_lt, s_cmp_geq, s_cmp_leq, s_cmp_eq,
        s_and_bb, s_or_bb, s_not_b,
        s_reduce_min, s_reduce_max, s_count_true,
        s_dot_counts,
    };
    return ops;
}

} // namespace imgql::kern
