// Compiled with -mavx2 -mfma. Keep this file free of standard-library templates so
// no AVX-encoded copy of a shared inline function can leak into the scalar path.

#include <immintrin.h>

#include "lufact/kernels.hpp"

namespace lufact::kernels::avx2 {

namespace {

// c * x mod p for four lanes, every lane an integer in [0, p).
inline __m256d mul_mod(__m256d x, __m256d c, __m256d p, __m256d pinv) {
  const __m256d prod = _mm256_mul_pd(x, c);
  const __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, pinv));
  // q is off by at most one, so the remainder lands in [-p, 2p).
  __m256d r = _mm256_fnmadd_pd(q, p, prod);
  r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ), p));
  r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
  return r;
}

inline __m256d load4(const std::uint32_t* src) {
  return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(src)));
}

inline void store4(std::uint32_t* dst, __m256d v) {
  _mm_storeu_si128(reinterpret_cast<__m128i*>(dst), _mm256_cvtpd_epi32(v));
}

inline std::uint32_t mul_mod_tail(std::uint32_t x, std::uint32_t c, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<unsigned long long>(x) * c % p);
}

}  // namespace

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
              std::uint32_t p) noexcept {
  if (c == 0) return;
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d vc = _mm256_set1_pd(static_cast<double>(c));
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    __m256d s0 = _mm256_add_pd(load4(dst + j), mul_mod(load4(src + j), vc, vp, vpinv));
    __m256d s1 = _mm256_add_pd(load4(dst + j + 4), mul_mod(load4(src + j + 4), vc, vp, vpinv));
    s0 = _mm256_sub_pd(s0, _mm256_and_pd(_mm256_cmp_pd(s0, vp, _CMP_GE_OQ), vp));
    s1 = _mm256_sub_pd(s1, _mm256_and_pd(_mm256_cmp_pd(s1, vp, _CMP_GE_OQ), vp));
    store4(dst + j, s0);
    store4(dst + j + 4, s1);
  }
  for (; j + 4 <= n; j += 4) {
    __m256d s = _mm256_add_pd(load4(dst + j), mul_mod(load4(src + j), vc, vp, vpinv));
    s = _mm256_sub_pd(s, _mm256_and_pd(_mm256_cmp_pd(s, vp, _CMP_GE_OQ), vp));
    store4(dst + j, s);
  }
  for (; j < n; ++j) {
    std::uint32_t v = dst[j] + mul_mod_tail(src[j], c, p);
    dst[j] = v >= p ? v - p : v;
  }
}

void scale_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
               std::uint32_t p) noexcept {
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d vpinv = _mm256_set1_pd(1.0 / static_cast<double>(p));
  const __m256d vc = _mm256_set1_pd(static_cast<double>(c));
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    store4(dst + j, mul_mod(load4(src + j), vc, vp, vpinv));
  }
  for (; j < n; ++j) dst[j] = mul_mod_tail(src[j], c, p);
}

}  // namespace lufact::kernels::avx2
