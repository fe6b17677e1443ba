#include "lexred/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace lexred::kernels {

double l2sq_scalar(const float* a, const float* b, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const float d = a[i] - b[i];
        acc += static_cast<double>(d) * static_cast<double>(d);
    }
    return acc;
}

float dot_scalar(const float* a, const float* b, size_t n) {
    float acc = 0.0f;
    for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

const Backend& scalar_backend() {
    static const Backend backend{"scalar", &l2sq_scalar, &dot_scalar};
    return backend;
}

#if defined(LEXRED_HAVE_AVX2)
double l2sq_avx2(const float* a, const float* b, size_t n);
float dot_avx2(const float* a, const float* b, size_t n);

static const Backend& avx2_backend() {
    static const Backend backend{"avx2", &l2sq_avx2, &dot_avx2};
    return backend;
}

static bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(LEXRED_HAVE_NEON)
double l2sq_neon(const float* a, const float* b, size_t n);
float dot_neon(const float* a, const float* b, size_t n);

static const Backend& neon_backend() {
    static const Backend backend{"neon", &l2sq_neon, &dot_neon};
    return backend;
}
#endif

std::vector<const Backend*> available_backends() {
    std::vector<const Backend*> v{&scalar_backend()};
#if defined(LEXRED_HAVE_AVX2)
    if (cpu_has_avx2()) v.push_back(&avx2_backend());
#endif
#if defined(LEXRED_HAVE_NEON)
    v.push_back(&neon_backend());
#endif
    return v;
}

namespace {

const Backend* pick_backend() {
    const char* env = std::getenv("LEXRED_KERNEL");
    const std::string_view want = env ? std::string_view(env) : std::string_view();
    const Backend* best = &scalar_backend();
    for (const Backend* backend : available_backends()) {
        if (!want.empty()) {
            if (want == backend->name) return backend;
        } else {
            best = backend; // list is ordered scalar -> simd
        }
    }
    return best;
}

const Backend* g_override = nullptr;

} // namespace

const Backend& active_backend() {
    if (g_override) return *g_override;
    static const Backend* selected = pick_backend();
    return *selected;
}

void set_backend(const Backend* backend) { g_override = backend; }

void matvec(const float* w, const float* x, float* y, size_t rows, size_t cols) {
    const Backend& backend = active_backend();
    for (size_t r = 0; r < rows; ++r) y[r] = backend.dot(w + r * cols, x, cols);
}

} // namespace lexred::kernels
