#pragma once

#include <cstddef>
#include <cstdint>

// Flat array kernels behind the pointwise field operations. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant compiled in
// a separate translation unit. The active table is chosen once at startup from
// CPUID; IMGQL_KERNELS=scalar|avx2 overrides the choice (used by the
// equivalence tests and as an escape hatch).
//
// Arithmetic kernels return true when any output lane is NaN so the caller can
// reject 0/0 and inf-inf with a proper evaluation error instead of letting NaN
// propagate through a field.

namespace imgql::kern {

struct Ops {
    const char* name;

    bool (*add_ff)(const double* a, const double* b, double* out, std::size_t n);
    bool (*sub_ff)(const double* a, const double* b, double* out, std::size_t n);
    bool (*mul_ff)(const double* a, const double* b, double* out, std::size_t n);
    bool (*div_ff)(const double* a, const double* b, double* out, std::size_t n);

    bool (*add_fs)(const double* a, double b, double* out, std::size_t n);
    bool (*sub_fs)(const double* a, double b, double* out, std::size_t n);
    bool (*sub_sf)(double a, const double* b, double* out, std::size_t n);
    bool (*mul_fs)(const double* a, double b, double* out, std::size_t n);
    bool (*div_fs)(const double* a, double b, double* out, std::size_t n);
    bool (*div_sf)(double a, const double* b, double* out, std::size_t n);

    void (*cmp_gt)(const double* a, double c, std::uint8_t* out, std::size_t n);
    void (*cmp_lt)(const double* a, double c, std::uint8_t* out, std::size_t n);
    void (*cmp_geq)(const double* a, double c, std::uint8_t* out, std::size_t n);
    void (*cmp_leq)(const double* a, double c, std::uint8_t* out, std::size_t n);
    void (*cmp_eq)(const double* a, double c, std::uint8_t* out, std::size_t n);

    void (*and_bb)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
    void (*or_bb)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
    void (*not_b)(const std::uint8_t* a, std::uint8_t* out, std::size_t n);

    double (*reduce_min)(const double* a, std::size_t n);
    double (*reduce_max)(const double* a, std::size_t n);
    std::int64_t (*count_true)(const std::uint8_t* a, std::size_t n);

    // Dot product of histogram bin counts against fixed weights.
    double (*dot_counts)(const std::int32_t* counts, const double* weights, std::size_t n);
};

const Ops& scalar_ops();

bool avx2_available();      // compiled in and supported by this CPU
const Ops* avx2_ops();      // nullptr when not compiled in

// Table selected at first use (CPUID + IMGQL_KERNELS override).
const Ops& active_ops();

} // namespace imgql::kern
