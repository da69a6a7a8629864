// AVX2 kernels: four targets per vector for the trig sums, two complex lanes
// per accumulator for the truncated correlation.  Compiled with -mavx2 -mfma.
#include "sdutm/kernels.hpp"

#ifdef SDUTM_HAVE_AVX2

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace sdutm::kernels::avx2 {

namespace {

constexpr int kResyncStride = 256;

inline __m256d load4(const double* p) { return _mm256_loadu_pd(p); }

// Horizontal helpers are unnecessary here: targets map one-to-one onto lanes.

} // namespace

void trig_sin_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out) {
  int t = 0;
  for (; t + 4 <= nt; t += 4) {
    const __m256d th = load4(theta + t);
    alignas(32) double thv[4], cv[4], sv[4];
    _mm256_store_pd(thv, th);
    for (int l = 0; l < 4; ++l) {
      cv[l] = std::cos(thv[l]);
      sv[l] = std::sin(thv[l]);
    }
    const __m256d ct = _mm256_load_pd(cv), st = _mm256_load_pd(sv);
    __m256d c = ct, s = st;
    __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
    for (int j = 1; j <= nw; ++j) {
      const __m256d wre = _mm256_set1_pd(w[j - 1].real());
      const __m256d wim = _mm256_set1_pd(w[j - 1].imag());
      acc_re = _mm256_fmadd_pd(wre, s, acc_re);
      acc_im = _mm256_fmadd_pd(wim, s, acc_im);
      if (j % kResyncStride == 0) {
        for (int l = 0; l < 4; ++l) {
          cv[l] = std::cos((j + 1) * thv[l]);
          sv[l] = std::sin((j + 1) * thv[l]);
        }
        c = _mm256_load_pd(cv);
        s = _mm256_load_pd(sv);
      } else {
        const __m256d cn = _mm256_fmsub_pd(c, ct, _mm256_mul_pd(s, st));
        s = _mm256_fmadd_pd(s, ct, _mm256_mul_pd(c, st));
        c = cn;
      }
    }
    alignas(32) double rre[4], rim[4];
    _mm256_store_pd(rre, acc_re);
    _mm256_store_pd(rim, acc_im);
    for (int l = 0; l < 4; ++l) out[t + l] = Cx{rre[l], rim[l]};
  }
  if (t < nt) scalar::trig_sin_sum(w, nw, theta + t, nt - t, out + t);
}

void trig_cos_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out) {
  int t = 0;
  for (; t + 4 <= nt; t += 4) {
    alignas(32) double thv[4], cv[4], sv[4];
    _mm256_store_pd(thv, load4(theta + t));
    for (int l = 0; l < 4; ++l) {
      cv[l] = std::cos(thv[l]);
      sv[l] = std::sin(thv[l]);
    }
    const __m256d ct = _mm256_load_pd(cv), st = _mm256_load_pd(sv);
    __m256d c = _mm256_set1_pd(1.0), s = _mm256_setzero_pd();
    __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
    for (int j = 0; j < nw; ++j) {
      const __m256d wre = _mm256_set1_pd(w[j].real());
      const __m256d wim = _mm256_set1_pd(w[j].imag());
      acc_re = _mm256_fmadd_pd(wre, c, acc_re);
      acc_im = _mm256_fmadd_pd(wim, c, acc_im);
      if ((j + 1) % kResyncStride == 0) {
        for (int l = 0; l < 4; ++l) {
          cv[l] = std::cos((j + 1) * thv[l]);
          sv[l] = std::sin((j + 1) * thv[l]);
        }
        c = _mm256_load_pd(cv);
        s = _mm256_load_pd(sv);
      } else {
        const __m256d cn = _mm256_fmsub_pd(c, ct, _mm256_mul_pd(s, st));
        s = _mm256_fmadd_pd(s, ct, _mm256_mul_pd(c, st));
        c = cn;
      }
    }
    alignas(32) double rre[4], rim[4];
    _mm256_store_pd(rre, acc_re);
    _mm256_store_pd(rim, acc_im);
    for (int l = 0; l < 4; ++l) out[t + l] = Cx{rre[l], rim[l]};
  }
  if (t < nt) scalar::trig_cos_sum(w, nw, theta + t, nt - t, out + t);
}

void corr_trunc(const double* w, int nw, const Cx* phi, int nphi, Cx* out, int nout) {
  // std::complex<double> arrays are interleaved re/im, so two complex values
  // fill one __m256d; broadcasting the real weight keeps the layout intact.
  const double* pd = reinterpret_cast<const double*>(phi);
  int n = 0;
  for (; n + 4 <= nout; n += 4) {
    // All four lanes share the vector loop up to the shortest truncation.
    const int m_vec = std::min(nw, nphi - (n + 3));
    __m256d acc0 = _mm256_setzero_pd(); // out[n], out[n+1]
    __m256d acc1 = _mm256_setzero_pd(); // out[n+2], out[n+3]
    int m = 0;
    for (; m < m_vec; ++m) {
      const __m256d wm = _mm256_set1_pd(w[m]);
      acc0 = _mm256_fmadd_pd(wm, _mm256_loadu_pd(pd + 2 * (n + m)), acc0);
      acc1 = _mm256_fmadd_pd(wm, _mm256_loadu_pd(pd + 2 * (n + m) + 4), acc1);
    }
    alignas(32) double r0[4], r1[4];
    _mm256_store_pd(r0, acc0);
    _mm256_store_pd(r1, acc1);
    Cx res[4] = {Cx{r0[0], r0[1]}, Cx{r0[2], r0[3]}, Cx{r1[0], r1[1]}, Cx{r1[2], r1[3]}};
    // Ragged tail where lanes truncate at different lengths.
    for (int l = 0; l < 4; ++l) {
      const int m_end = std::min(nw, nphi - (n + l));
      for (int k = std::max(m, 0); k < m_end; ++k) res[l] += w[k] * phi[n + l + k];
      out[n + l] = res[l];
    }
  }
  if (n < nout) scalar::corr_trunc(w, nw, phi + n, nphi - n, out + n, nout - n);
}

} // namespace sdutm::kernels::avx2

#endif // SDUTM_HAVE_AVX2
