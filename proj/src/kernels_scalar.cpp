#include "qdet/kernels.hpp"

namespace qdet::kernels::scalar {
namespace {

// Same term order as the AVX2 lanes: t0 + t1 + t2 + t3, left to right.
inline void hamilton(const double* x, const double* y, double* r) {
  r[0] = x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3];
  r[1] = x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
  r[2] = x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1];
  r[3] = x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0];
}

}  // namespace

void qmul(const double* a, const double* b, double* out) { hamilton(a, b, out); }

void qgemm(const double* a, const double* b, double* c, std::size_t m, std::size_t n, std::size_t p) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double acc[4] = {0.0, 0.0, 0.0, 0.0};
      for (std::size_t s = 0; s < n; ++s) {
        double t[4];
        hamilton(a + 4 * (i * n + s), b + 4 * (s * p + j), t);
        for (int q = 0; q < 4; ++q) acc[q] = acc[q] + t[q];
      }
      for (int q = 0; q < 4; ++q) c[4 * (i * p + j) + q] = acc[q];
    }
  }
}

void qrow_sub_left(const double* f, const double* x, double* y, std::size_t len) {
  for (std::size_t s = 0; s < len; ++s) {
    double t[4];
    hamilton(f, x + 4 * s, t);
    for (int q = 0; q < 4; ++q) y[4 * s + q] = y[4 * s + q] - t[q];
  }
}

}  // namespace qdet::kernels::scalar
