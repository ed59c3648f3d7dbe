#pragma once

// Float-mode quaternion kernels. Quaternions are stored as four consecutive
// doubles (a0, a1, a2, a3); matrices are row-major arrays of them.
//
// Every ISA variant performs the same operations in the same order as the
// scalar reference, so results are bit-identical across variants. The build
// disables FMA contraction to keep it that way.

#include <cstddef>
#include <string_view>

namespace qdet::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Whether the running CPU (and this build) can execute `isa`.
bool isa_available(Isa isa);

/// The variant used by the dispatching entry points below. Chosen on first
/// use: AVX2 when available, scalar otherwise. QDET_FORCE_SCALAR=1 in the
/// environment pins the scalar reference.
Isa active_isa();

/// Overrides the selection; throws PreconditionError if unavailable.
void select_isa(Isa isa);

/// c (m x p) = a (m x n) * b (n x p), Hamilton products, left factor from a.
void qgemm(const double* a, const double* b, double* c, std::size_t m, std::size_t n, std::size_t p);

/// y[s] = y[s] - f * x[s] for s < len (left multiplication by one quaternion).
void qrow_sub_left(const double* f, const double* x, double* y, std::size_t len);

namespace scalar {
void qmul(const double* a, const double* b, double* out);
void qgemm(const double* a, const double* b, double* c, std::size_t m, std::size_t n, std::size_t p);
void qrow_sub_left(const double* f, const double* x, double* y, std::size_t len);
}  // namespace scalar

namespace avx2 {
bool compiled();
void qmul(const double* a, const double* b, double* out);
void qgemm(const double* a, const double* b, double* c, std::size_t m, std::size_t n, std::size_t p);
void qrow_sub_left(const double* f, const double* x, double* y, std::size_t len);
}  // namespace avx2

}  // namespace qdet::kernels
