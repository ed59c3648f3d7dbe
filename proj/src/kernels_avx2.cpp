#include "qdet/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace qdet::kernels::avx2 {

#if defined(__AVX2__)

namespace {

// One quaternion per __m256d. The product a*b is
//   a0*(b0, b1, b2, b3) + a1*(-b1, b0, -b3, b2) + a2*(-b2, b3, b0, -b1) + a3*(-b3, -b2, b1, b0)
// summed left to right, which is the scalar reference order lane by lane.
inline __m256d hamilton(const double* a, __m256d b) {
  const __m256d sign1 = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);   // lanes 0 and 2 negated
  const __m256d sign2 = _mm256_set_pd(-0.0, 0.0, 0.0, -0.0);   // lanes 0 and 3
  const __m256d sign3 = _mm256_set_pd(0.0, 0.0, -0.0, -0.0);   // lanes 0 and 1

  const __m256d b1 = _mm256_xor_pd(_mm256_permute4x64_pd(b, 0xB1), sign1);  // (b1, b0, b3, b2)
  const __m256d b2 = _mm256_xor_pd(_mm256_permute4x64_pd(b, 0x4E), sign2);  // (b2, b3, b0, b1)
  const __m256d b3 = _mm256_xor_pd(_mm256_permute4x64_pd(b, 0x1B), sign3);  // (b3, b2, b1, b0)

  __m256d r = _mm256_mul_pd(_mm256_broadcast_sd(a + 0), b);
  r = _mm256_add_pd(r, _mm256_mul_pd(_mm256_broadcast_sd(a + 1), b1));
  r = _mm256_add_pd(r, _mm256_mul_pd(_mm256_broadcast_sd(a + 2), b2));
  r = _mm256_add_pd(r, _mm256_mul_pd(_mm256_broadcast_sd(a + 3), b3));
  return r;
}

}  // namespace

bool compiled() { return true; }

void qmul(const double* a, const double* b, double* out) {
  _mm256_storeu_pd(out, hamilton(a, _mm256_loadu_pd(b)));
}

void qgemm(const double* a, const double* b, double* c, std::size_t m, std::size_t n, std::size_t p) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t s = 0; s < n; ++s)
        acc = _mm256_add_pd(acc, hamilton(a + 4 * (i * n + s), _mm256_loadu_pd(b + 4 * (s * p + j))));
      _mm256_storeu_pd(c + 4 * (i * p + j), acc);
    }
  }
}

void qrow_sub_left(const double* f, const double* x, double* y, std::size_t len) {
  for (std::size_t s = 0; s < len; ++s) {
    const __m256d t = hamilton(f, _mm256_loadu_pd(x + 4 * s));
    _mm256_storeu_pd(y + 4 * s, _mm256_sub_pd(_mm256_loadu_pd(y + 4 * s), t));
  }
}

#else

bool compiled() { return false; }
void qmul(const double*, const double*, double*) {}
void qgemm(const double*, const double*, double*, std::size_t, std::size_t, std::size_t) {}
void qrow_sub_left(const double*, const double*, double*, std::size_t) {}

#endif

}  // namespace qdet::kernels::avx2
