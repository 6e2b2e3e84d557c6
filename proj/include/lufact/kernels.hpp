#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

// Row kernels for GF(p) elimination. Every matrix operation over a prime field
// funnels its inner loop through axpy_mod / scale_mod; the implementation is
// chosen once at runtime from the instruction sets the CPU reports.

namespace lufact::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
/// Best supported ISA, unless LUFACT_ISA=scalar is set in the environment.
Isa active_isa() noexcept;
/// Pins the dispatcher; throws UsageError if the CPU lacks `isa`.
void set_isa(Isa isa);

/// dst[j] = (dst[j] + c * src[j]) mod p. Inputs are canonical residues.
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
              std::uint32_t p);
/// dst[j] = c * src[j] mod p. dst and src may be the same row.
void scale_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
               std::uint32_t p);

namespace scalar {
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
              std::uint32_t p) noexcept;
void scale_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
               std::uint32_t p) noexcept;
}  // namespace scalar

namespace avx2 {
// Products are formed in double precision, which is exact while c * x < 2^53.
inline constexpr std::uint32_t kModulusLimit = std::uint32_t{1} << 26;

// Precondition: p < kModulusLimit and isa_supported(Isa::Avx2).
void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
              std::uint32_t p) noexcept;
void scale_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
               std::uint32_t p) noexcept;
}  // namespace avx2

}  // namespace lufact::kernels
