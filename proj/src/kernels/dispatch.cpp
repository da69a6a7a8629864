// Runtime selection between the scalar and AVX2 kernel variants.
#include "sdutm/kernels.hpp"

#include <cstdlib>
#include <optional>
#include <string>

namespace sdutm::kernels {

namespace {

std::optional<SimdLevel> g_forced;

SimdLevel detect_level() {
#ifdef SDUTM_HAVE_AVX2
  if (const char* env = std::getenv("SDUTM_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return SimdLevel::Scalar;
    if (v == "avx2" && avx2_available()) return SimdLevel::Avx2;
    // Unknown value or unavailable request: fall through to detection.
  }
  if (avx2_available()) return SimdLevel::Avx2;
#endif
  return SimdLevel::Scalar;
}

} // namespace

bool avx2_available() {
#ifdef SDUTM_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

SimdLevel active_level() {
  if (g_forced) return *g_forced;
  static const SimdLevel detected = detect_level();
  return detected;
}

void force_level(SimdLevel level) {
  require(level != SimdLevel::Avx2 || avx2_available(), ErrorCode::InvalidArgument,
          "cannot force AVX2 kernels: not available on this machine");
  g_forced = level;
}

void clear_forced_level() { g_forced.reset(); }

void trig_sin_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out) {
#ifdef SDUTM_HAVE_AVX2
  if (active_level() == SimdLevel::Avx2) return avx2::trig_sin_sum(w, nw, theta, nt, out);
#endif
  scalar::trig_sin_sum(w, nw, theta, nt, out);
}

void trig_cos_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out) {
#ifdef SDUTM_HAVE_AVX2
  if (active_level() == SimdLevel::Avx2) return avx2::trig_cos_sum(w, nw, theta, nt, out);
#endif
  scalar::trig_cos_sum(w, nw, theta, nt, out);
}

void corr_trunc(const double* w, int nw, const Cx* phi, int nphi, Cx* out, int nout) {
#ifdef SDUTM_HAVE_AVX2
  if (active_level() == SimdLevel::Avx2) return avx2::corr_trunc(w, nw, phi, nphi, out, nout);
#endif
  scalar::corr_trunc(w, nw, phi, nphi, out, nout);
}

} // namespace sdutm::kernels
