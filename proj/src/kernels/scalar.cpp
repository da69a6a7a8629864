// Scalar reference kernels.  The trig sums walk the angle with a rotation
// recurrence and resynchronize from libm periodically to stop drift.
#include "sdutm/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace sdutm::kernels::scalar {

namespace {
constexpr int kResyncStride = 256;
} // namespace

void trig_sin_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out) {
  for (int t = 0; t < nt; ++t) {
    const double th = theta[t];
    const double ct = std::cos(th), st = std::sin(th);
    double c = ct, s = st; // cos(j*th), sin(j*th) at j = 1
    double acc_re = 0.0, acc_im = 0.0;
    for (int j = 1; j <= nw; ++j) {
      acc_re += w[j - 1].real() * s;
      acc_im += w[j - 1].imag() * s;
      if (j % kResyncStride == 0) {
        c = std::cos((j + 1) * th);
        s = std::sin((j + 1) * th);
      } else {
        const double cn = c * ct - s * st;
        s = s * ct + c * st;
        c = cn;
      }
    }
    out[t] = Cx{acc_re, acc_im};
  }
}

void trig_cos_sum(const Cx* w, int nw, const double* theta, int nt, Cx* out) {
  for (int t = 0; t < nt; ++t) {
    const double th = theta[t];
    const double ct = std::cos(th), st = std::sin(th);
    double c = 1.0, s = 0.0; // j = 0
    double acc_re = 0.0, acc_im = 0.0;
    for (int j = 0; j < nw; ++j) {
      acc_re += w[j].real() * c;
      acc_im += w[j].imag() * c;
      if ((j + 1) % kResyncStride == 0) {
        c = std::cos((j + 1) * th);
        s = std::sin((j + 1) * th);
      } else {
        const double cn = c * ct - s * st;
        s = s * ct + c * st;
        c = cn;
      }
    }
    out[t] = Cx{acc_re, acc_im};
  }
}

void corr_trunc(const double* w, int nw, const Cx* phi, int nphi, Cx* out, int nout) {
  for (int n = 0; n < nout; ++n) {
    const int m_end = std::min(nw, nphi - n);
    Cx acc{0.0, 0.0};
    for (int m = 0; m < m_end; ++m) acc += w[m] * phi[n + m];
    out[n] = acc;
  }
}

} // namespace sdutm::kernels::scalar
