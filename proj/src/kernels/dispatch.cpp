#include <atomic>
#include <cstdlib>
#include <string_view>

#include "lufact/errors.hpp"
#include "lufact/kernels.hpp"

namespace lufact::kernels {

namespace {

Isa detect() noexcept {
  if (const char* forced = std::getenv("LUFACT_ISA"); forced && std::string_view(forced) == "scalar") {
    return Isa::Scalar;
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

bool use_avx2(std::uint32_t p) noexcept {
#if defined(LUFACT_HAVE_AVX2)
  return p < avx2::kModulusLimit && current().load(std::memory_order_relaxed) == Isa::Avx2;
#else
  (void)p;
  return false;
#endif
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(LUFACT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw UsageError(std::string("ISA not supported: ") + isa_name(isa));
  current().store(isa, std::memory_order_relaxed);
}

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
              std::uint32_t p) {
  if (dst.size() != src.size()) throw UsageError("axpy_mod: length mismatch");
#if defined(LUFACT_HAVE_AVX2)
  if (use_avx2(p)) return avx2::axpy_mod(dst.data(), src.data(), dst.size(), c, p);
#endif
  scalar::axpy_mod(dst.data(), src.data(), dst.size(), c, p);
}

void scale_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
               std::uint32_t p) {
  if (dst.size() != src.size()) throw UsageError("scale_mod: length mismatch");
#if defined(LUFACT_HAVE_AVX2)
  if (use_avx2(p)) return avx2::scale_mod(dst.data(), src.data(), dst.size(), c, p);
#endif
  scalar::scale_mod(dst.data(), src.data(), dst.size(), c, p);
}

}  // namespace lufact::kernels
