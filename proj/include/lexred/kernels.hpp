#pragma once

#include <cstddef>
#include <vector>

namespace lexred::kernels {

// Data-parallel inner loops behind brute-force ranking and the selector
// forward pass. Each has a scalar reference implementation plus SIMD
// variants selected at runtime; the variants are equivalence-tested
// against the scalar path.
//
// l2sq subtracts in f32 and accumulates in f64 in every variant, so
// backends differ only by summation order (reassociation noise ~1e-16
// relative), which keeps distance-based rankings stable across them.

using L2SqFn = double (*)(const float* a, const float* b, size_t n);
using DotFn = float (*)(const float* a, const float* b, size_t n);

struct Backend {
    const char* name;
    L2SqFn l2sq;
    DotFn dot;
};

double l2sq_scalar(const float* a, const float* b, size_t n);
float dot_scalar(const float* a, const float* b, size_t n);

const Backend& scalar_backend();

// Every backend usable on this machine (scalar first).
std::vector<const Backend*> available_backends();

// Best backend the CPU supports, unless overridden. The LEXRED_KERNEL
// environment variable ("scalar", "avx2", "neon") pins a choice at startup.
const Backend& active_backend();

// Test hook; pass nullptr to restore automatic selection.
void set_backend(const Backend* backend);

inline double l2sq(const float* a, const float* b, size_t n) {
    return active_backend().l2sq(a, b, n);
}

inline float dot(const float* a, const float* b, size_t n) {
    return active_backend().dot(a, b, n);
}

// y[r] = dot(w[r*cols .. r*cols+cols), x) for each row r.
void matvec(const float* w, const float* x, float* y, size_t rows, size_t cols);

} // namespace lexred::kernels
