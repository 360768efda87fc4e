// AVX2 kernel variants. This translation unit is compiled with -mavx2 and is
// only reachable through the dispatch table when the CPU reports AVX2.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "imgql/kernels.hpp"

namespace imgql::kern {
namespace {

inline bool any_nan_mask(__m256d nan_acc) {
    return _mm256_movemask_pd(nan_acc) != 0;
}

template <class VF, class SF>
bool arith_ff(const double* a, const double* b, double* out, std::size_t n, VF vf, SF sf) {
    __m256d nan_acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = vf(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        nan_acc = _mm256_or_pd(nan_acc, _mm256_cmp_pd(r, r, _CMP_UNORD_Q));
        _mm256_storeu_pd(out + i, r);
    }
    bool nan = any_nan_mask(nan_acc);
    for (; i < n; ++i) {
        double r = sf(a[i], b[i]);
        nan |= (r != r);
        out[i] = r;
    }
    return nan;
}

template <class VF, class SF>
bool arith_fs(const double* a, double b, double* out, std::size_t n, VF vf, SF sf) {
    __m256d vb = _mm256_set1_pd(b);
    __m256d nan_acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = vf(_mm256_loadu_pd(a + i), vb);
        nan_acc = _mm256_or_pd(nan_acc, _mm256_cmp_pd(r, r, _CMP_UNORD_Q));
        _mm256_storeu_pd(out + i, r);
    }
    bool nan = any_nan_mask(nan_acc);
    for (; i < n; ++i) {
        double r = sf(a[i], b);
        nan |= (r != r);
        out[i] = r;
    }
    return nan;
}

bool v_add_ff(const double* a, const double* b, double* out, std::size_t n) {
    return arith_ff(a, b, out, n,
                    [](__m256d x, __m256d y) { return _mm256_add_pd(x, y); },
                    [](double x, double y) { return x + y; });
}
bool v_sub_ff(const double* a, const double* b, double* out, std::size_t n) {
    return arith_ff(a, b, out, n,
                    [](__m256d x, __m256d y) { return _mm256_sub_pd(x, y); },
                    [](double x, double y) { return x - y; });
}
bool v_mul_ff(const double* a, const double* b, double* out, std::size_t n) {
    return arith_ff(a, b, out, n,
                    [](__m256d x, __m256d y) { return _mm256_mul_pd(x, y); },
                    [](double x, double y) { return x * y; });
}
bool v_div_ff(const double* a, const double* b, double* out, std::size_t n) {
    return arith_ff(a, b, out, n,
                    [](__m256d x, __m256d y) { return _mm256_div_pd(x, y); },
                    [](double x, double y) { return x / y; });
}
bool v_add_fs(const double* a, double b, double* out, std::size_t n) {
    return arith_fs(a, b, out, n,
                    [](__m256d x, __m256d y) { return _mm256_add_pd(x, y); },
                    [](double x, double y) { return x + y; });
}
bool v_sub_fs(const double* a, double b, double* out, std::size_t n) {
    return arith_fs(a, b, out, n,
                    [](__m256d x, __m256d y) { return _mm256_sub_pd(x, y); },
                    [](double x, double y) { return x - y; });
}
bool v_sub_sf(double a, const double* b, double* out, std::size_t n) {
    return arith_fs(b, a, out, n,
                    [](__m256d x, __m256d y) { return _mm256_sub_pd(y, x); },
                    [](double x, double y) { return y - x; });
}
bool v_mul_fs(const double* a, double b, double* out, std::size_t n) {
    return arith_fs(a, b, out, n,
                    [](__m256d x, __m256d y) { return _mm256_mul_pd(x, y); },
                    [](double x, double y) { return x * y; });
}
bool v_div_fs(const double* a, double b, double* out, std::size_t n) {
    return arith_fs(a, b, out, n,
                    [](__m256d x, __m256d y) { return _mm256_div_pd(x, y); },
                    [](double x, double y) { return x / y; });
}
bool v_div_sf(double a, const double* b, double* out, std::size_t n) {
    return arith_fs(b, a, out, n,
                    [](__m256d x, __m256d y) { return _mm256_div_pd(y, x); },
                    [](double x, double y) { return y / x; });
}

template <int CMP, class SF>
void cmp_vs(const double* a, double c, std::uint8_t* out, std::size_t n, SF sf) {
    __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(a + i), vc, CMP));
        out[i + 0] = mask & 1;
        out[i + 1] = (mask >> 1) & 1;
        out[i + 2] = (mask >> 2) & 1;
        out[i + 3] = (mask >> 3) & 1;
    }
    for (; i < n; ++i) out[i] = sf(a[i]) ? 1 : 0;
}

void v_cmp_gt(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_vs<_CMP_GT_OQ>(a, c, out, n, [c](double v) { return v > c; });
}
void v_cmp_lt(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_vs<_CMP_LT_OQ>(a, c, out, n, [c](double v) { return v < c; });
}
void v_cmp_geq(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_vs<_CMP_GE_OQ>(a, c, out, n, [c](double v) { return v >= c; });
}
void v_cmp_leq(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_vs<_CMP_LE_OQ>(a, c, out, n, [c](double v) { return v <= c; });
}
void v_cmp_eq(const double* a, double c, std::uint8_t* out, std::size_t n) {
    cmp_vs<_CMP_EQ_OQ>(a, c, out, n, [c](double v) { return v == c; });
}

void v_and_bb(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(va, vb));
    }
    for (; i < n; ++i) out[i] = (a[i] & b[i]) ? 1 : 0;
}
void v_or_bb(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_or_si256(va, vb));
    }
    for (; i < n; ++i) out[i] = (a[i] | b[i]) ? 1 : 0;
}
void v_not_b(const std::uint8_t* a, std::uint8_t* out, std::size_t n) {
    __m256i zero = _mm256_setzero_si256();
    __m256i one = _mm256_set1_epi8(1);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i eq = _mm256_cmpeq_epi8(va, zero);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(eq, one));
    }
    for (; i < n; ++i) out[i] = a[i] ? 0 : 1;
}

double v_reduce_min(const double* a, std::size_t n) {
    std::size_t i = 0;
    double m;
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(a);
        for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(a + i));
        __m128d lo = _mm256_castpd256_pd128(acc);
        __m128d hi = _mm256_extractf128_pd(acc, 1);
        __m128d m2 = _mm_min_pd(lo, hi);
        __m128d m1 = _mm_min_sd(m2, _mm_unpackhi_pd(m2, m2));
        m = _mm_cvtsd_f64(m1);
    } else {
        m = a[0];
        i = 1;
    }
    for (; i < n; ++i)
        if (a[i] < m) m = a[i];
    return m;
}
double v_reduce_max(const double* a, std::size_t n) {
    std::size_t i = 0;
    double m;
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(a);
        for (i = 4; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + i));
        __m128d lo = _mm256_castpd256_pd128(acc);
        __m128d hi = _mm256_extractf128_pd(acc, 1);
        __m128d m2 = _mm_max_pd(lo, hi);
        __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
        m = _mm_cvtsd_f64(m1);
    } else {
        m = a[0];
        i = 1;
    }
    for (; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}

std::int64_t v_count_true(const std::uint8_t* a, std::size_t n) {
    // Inputs are 0/1 bytes, so SAD against zero sums them 32 at a time.
    __m256i zero = _mm256_setzero_si256();
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(va, zero));
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::int64_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) c += a[i] ? 1 : 0;
    return c;
}

double v_dot_counts(const std::int32_t* counts, const double* weights, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m128i ci = _mm_loadu_si128(reinterpret_cast<const __m128i*>(counts + i));
        __m256d cd = _mm256_cvtepi32_pd(ci);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(cd, _mm256_loadu_pd(weights + i)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += static_cast<double>(counts[i]) * weights[i];
    return s;
}

} // namespace

const Ops* avx2_ops() {
    static const Ops ops = {
        "avx2",
        v_add_ff, v_sub_ff, v_mul_ff, v_div_ff,
        v_add_fs, v_sub_fs, v_sub_sf, v_mul_fs, v_div_fs, v_div_sf,
        v_cmp_gt, v_cmp_lt, v_cmp_geq, v_cmp_leq, v_cmp_eq,
        v_and_bb, v_or_bb, v_not_b,
        v_reduce_min, v_reduce_max, v_count_true,
        v_dot_counts,
    };
    return &ops;
}

} // namespace imgql::kern

#endif // x86-64
