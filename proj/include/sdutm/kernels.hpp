// Hot-loop kernels for series evaluation, with scalar reference implementations
// and an AVX2 variant selected at runtime.
#pragma once

#include "sdutm/types.hpp"

namespace sdutm::kernels {

enum class SimdLevel { Scalar, Avx2 };

// True when the build has the AVX2 variant and the CPU reports AVX2+FMA.
bool avx2_available();

// Level the dispatched entry points currently resolve to.  Detection order:
// forced level (tests), then the SDUTM_SIMD environment variable
// ("scalar"/"avx2"), then CPU detection.
SimdLevel active_level();

// Test hook: pin dispatch to one implementation.  Throws InvalidArgument when
// forcing Avx2 on a machine without it.
void force_level(SimdLevel level);
void clear_forced_level();

// out[t] = sum_{j=1}^{nw} w[j-1] * sin(j * theta[t]),  t = 0..nt-1
void trig_sin_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out);

// out[t] = sum_{j=0}^{nw-1} w[j] * cos(j * theta[t]),  t = 0..nt-1
void trig_cos_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out);

// Truncated correlation against the tail of phi:
//   out[n] = sum_{m=0}^{min(nw-1, nphi-1-n)} w[m] * phi[n+m],  n = 0..nout-1
void corr_trunc(const double* w, int nw, const Cx* phi, int nphi, Cx* out, int nout);

// Direct (non-dispatched) entry points, used by the equivalence tests.
namespace scalar {
void trig_sin_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out);
void trig_cos_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out);
void corr_trunc(const double* w, int nw, const Cx* phi, int nphi, Cx* out, int nout);
} // namespace scalar

#ifdef SDUTM_HAVE_AVX2
namespace avx2 {
void trig_sin_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out);
void trig_cos_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out);
void corr_trunc(const double* w, int nw, const Cx* phi, int nphi, Cx* out, int nout);
} // namespace avx2
#endif

} // namespace sdutm::kernels
