#include "lufact/kernels.hpp"

namespace lufact::kernels::scalar {

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
              std::uint32_t p) noexcept {
  if (c == 0) return;
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t v = (std::uint64_t{c} * src[j] + dst[j]) % p;
    dst[j] = static_cast<std::uint32_t>(v);
  }
}

void scale_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
               std::uint32_t p) noexcept {
  for (std::size_t j = 0; j < n; ++j) {
    dst[j] = static_cast<std::uint32_t>(std::uint64_t{c} * src[j] % p);
  }
}

}  // namespace lufact::kernels::scalar
