#include <atomic>
#include <cstdlib>
#include <string>

#include "qdet/errors.hpp"
#include "qdet/kernels.hpp"

namespace qdet::kernels {
namespace {

Isa detect() {
  const char* force = std::getenv("QDET_FORCE_SCALAR");
  if (force != nullptr && std::string(force) == "1") return Isa::scalar;
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& selected() {
  static std::atomic<int> isa{static_cast<int>(detect())};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return avx2::compiled() && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return static_cast<Isa>(selected().load(std::memory_order_relaxed)); }

void select_isa(Isa isa) {
  if (!isa_available(isa))
    throw PreconditionError("kernel variant '" + std::string(isa_name(isa)) + "' is not available on this CPU");
  selected().store(static_cast<int>(isa), std::memory_order_relaxed);
}

void qgemm(const double* a, const double* b, double* c, std::size_t m, std::size_t n, std::size_t p) {
  if (active_isa() == Isa::avx2)
    avx2::qgemm(a, b, c, m, n, p);
  else
    scalar::qgemm(a, b, c, m, n, p);
}

void qrow_sub_left(const double* f, const double* x, double* y, std::size_t len) {
  if (active_isa() == Isa::avx2)
    avx2::qrow_sub_left(f, x, y, len);
  else
    scalar::qrow_sub_left(f, x, y, len);
}

}  // namespace qdet::kernels
