// Time transforms (closed forms + quadrature) and discrete trigonometric
// coefficient assembly.
#include "sdutm/transforms.hpp"

#include "sdutm/kernels.hpp"
#include "sdutm/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace sdutm {

namespace {

const Cx kIm{0.0, 1.0};

// (e^z - 1)/z, accurate through z = 0.
Cx phi1(Cx z) {
  if (std::abs(z) <= 0.1) {
    Cx sum{1.0, 0.0}, term{1.0, 0.0};
    for (int k = 1; k <= 12; ++k) {
      term *= z / static_cast<double>(k + 1);
      sum += term;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

// Moments M_m = integral of t^m e^{nu t} dt over [0, T], m = 0..mmax.
// Series below |nu T| = 1, integration-by-parts recurrence above.
std::vector<Cx> plain_moments(Cx nu, double T, int mmax) {
  std::vector<Cx> M(static_cast<size_t>(mmax) + 1);
  if (std::abs(nu) * T <= 1.0) {
    double Tp = T;
    for (int m = 0; m <= mmax; ++m) {
      Cx sum{0.0, 0.0}, term{1.0, 0.0};
      for (int i = 0;; ++i) {
        const Cx add = term / static_cast<double>(m + i + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
        term *= nu * T / static_cast<double>(i + 1);
      }
      M[static_cast<size_t>(m)] = Tp * sum;
      Tp *= T;
    }
    return M;
  }
  const Cx e = std::exp(nu * T);
  M[0] = (e - 1.0) / nu;
  double Tp = 1.0;
  for (int m = 1; m <= mmax; ++m) {
    Tp *= T;
    M[static_cast<size_t>(m)] =
        (Tp * e - static_cast<double>(m) * M[static_cast<size_t>(m - 1)]) / nu;
  }
  return M;
}

// Damped moments K_j = e^{alpha T} * integral of s^j e^{-mu s} ds over [0, T]
// with mu = W + alpha.  The scaled recurrence keeps every term bounded by
// e^{Re alpha T} and e^{-Re W T}, so nothing overflows when Re W >> 1.
std::vector<Cx> damped_moments(Cx W, Cx alpha, double T, int jmax) {
  const Cx mu = W + alpha;
  std::vector<Cx> K(static_cast<size_t>(jmax) + 1);
  const Cx eaT = std::exp(alpha * T);
  if (std::abs(mu) * T <= 1.0) {
    double Tp = T;
    for (int j = 0; j <= jmax; ++j) {
      Cx sum{0.0, 0.0}, term{1.0, 0.0};
      for (int i = 0;; ++i) {
        const Cx add = term / static_cast<double>(j + i + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
        term *= -mu * T / static_cast<double>(i + 1);
      }
      K[static_cast<size_t>(j)] = eaT * Tp * sum;
      Tp *= T;
    }
    return K;
  }
  const Cx emWT = std::exp(-W * T);
  K[0] = (eaT - emWT) / mu;
  double Tp = 1.0;
  for (int j = 1; j <= jmax; ++j) {
    Tp *= T;
    K[static_cast<size_t>(j)] =
        (static_cast<double>(j) * K[static_cast<size_t>(j - 1)] - Tp * emWT) / mu;
  }
  return K;
}

// Coefficients of p(T - s) as a polynomial in s.
std::vector<Cx> flipped_poly(const std::vector<Cx>& p, double T) {
  const int deg = static_cast<int>(p.size()) - 1;
  std::vector<Cx> P(p.size(), Cx{0.0, 0.0});
  for (int m = 0; m <= deg; ++m) {
    double binom = 1.0, Tp = std::pow(T, m);
    double sign = 1.0;
    for (int j = 0; j <= m; ++j) {
      P[static_cast<size_t>(j)] += p[static_cast<size_t>(m)] * sign * binom * Tp;
      binom *= static_cast<double>(m - j) / static_cast<double>(j + 1);
      Tp = (T == 0.0) ? 0.0 : Tp / T;
      sign = -sign;
    }
  }
  // T = 0 degenerates: p(0 - s) has P_j = p_j * (-1)^j.
  if (T == 0.0)
    for (int j = 0; j <= deg; ++j)
      P[static_cast<size_t>(j)] = p[static_cast<size_t>(j)] * ((j % 2) ? -1.0 : 1.0);
  return P;
}

Cx quadrature_or_throw(const std::function<Cx(double)>& f, double a, double b,
                       double tol, double osc_rate, const char* what) {
  QuadOptions opt;
  opt.tol_abs = tol;
  opt.tol_rel = tol;
  if (osc_rate > 0.0) opt.breakpoints = panel_breakpoints(a, b, kPi / osc_rate);
  require(opt.breakpoints.size() < 20000, ErrorCode::ResourceLimit,
          "time-transform quadrature would need too many oscillation panels");
  const QuadResult res = integrate_gk(f, a, b, opt);
  if (!res.converged) {
    std::ostringstream msg;
    msg << what << " quadrature did not reach tolerance " << tol
        << "; achieved error estimate " << res.error;
    fail(ErrorCode::AccuracyFailure, msg.str());
  }
  return res.value;
}

Cx damped_impl(const TimeFunction& v, Cx W, double T, double tol) {
  switch (v.form()) {
    case TimeFunction::Form::Zero: return {0.0, 0.0};
    case TimeFunction::Form::Constant: return v.constant_value() * T * phi1(-W * T);
    case TimeFunction::Form::PolyExp: {
      const auto& p = v.poly_coeffs();
      const Cx alpha = v.exp_rate();
      const auto P = flipped_poly(p, T);
      const auto K = damped_moments(W, alpha, T, static_cast<int>(p.size()) - 1);
      Cx sum{0.0, 0.0};
      for (size_t j = 0; j < P.size(); ++j) sum += P[j] * K[j];
      return sum;
    }
    case TimeFunction::Form::Sinusoid: {
      // A sin(wt + p) = (A/2i)(e^{ip} e^{iwt} - e^{-ip} e^{-iwt})
      const Cx A = v.sin_amplitude();
      const double w = v.sin_omega(), p = v.sin_phase();
      const Cx ep = std::exp(kIm * p);
      const Cx plus = damped_moments(W, kIm * w, T, 0)[0];
      const Cx minus = damped_moments(W, -kIm * w, T, 0)[0];
      return A / (2.0 * kIm) * (ep * plus - minus / ep);
    }
    case TimeFunction::Form::General: {
      double lo = 0.0;
      if (W.real() > 0.0) lo = std::max(0.0, T - 45.0 / W.real());
      return quadrature_or_throw(
          [&](double t) { return std::exp(-W * (T - t)) * v(t); }, lo, T, tol,
          std::abs(W.imag()), "damped time-transform");
    }
  }
  return {0.0, 0.0};
}

} // namespace

TimeTransformValue time_transform(const TimeFunction& v, Cx W, double T, double tol) {
  require(T >= 0.0, ErrorCode::InvalidArgument, "time transform needs T >= 0");
  TimeTransformValue out;
  out.W = W;
  out.T = T;
  switch (v.form()) {
    case TimeFunction::Form::Zero: out.value = {0.0, 0.0}; break;
    case TimeFunction::Form::Constant:
      out.value = v.constant_value() * T * phi1(W * T);
      break;
    case TimeFunction::Form::PolyExp: {
      const auto& p = v.poly_coeffs();
      const auto M = plain_moments(W + v.exp_rate(), T, static_cast<int>(p.size()) - 1);
      Cx sum{0.0, 0.0};
      for (size_t m = 0; m < p.size(); ++m) sum += p[m] * M[m];
      out.value = sum;
      break;
    }
    case TimeFunction::Form::Sinusoid: {
      const Cx A = v.sin_amplitude();
      const double w = v.sin_omega(), p = v.sin_phase();
      const Cx ep = std::exp(kIm * p);
      const Cx plus = plain_moments(W + kIm * w, T, 0)[0];
      const Cx minus = plain_moments(W - kIm * w, T, 0)[0];
      out.value = A / (2.0 * kIm) * (ep * plus - minus / ep);
      break;
    }
    case TimeFunction::Form::General:
      out.value = quadrature_or_throw([&](double t) { return std::exp(W * t) * v(t); },
                                      0.0, T, tol, std::abs(W.imag()), "time-transform");
      break;
  }
  return out;
}

Cx damped_time_transform(const TimeFunction& v, Cx W, double T, double tol) {
  require(T >= 0.0, ErrorCode::InvalidArgument, "time transform needs T >= 0");
  return damped_impl(v, W, T, tol);
}

Cx forward_fourier_sum(const std::vector<Cx>& values, double h, Cx k, int n_begin,
                       int n_end) {
  require(n_begin >= 0 && n_end < static_cast<int>(values.size()) && h > 0.0,
          ErrorCode::InvalidArgument, "fourier sum range outside the stored nodes");
  Cx sum{0.0, 0.0};
  for (int n = n_begin; n <= n_end; ++n)
    sum += std::exp(-kIm * k * (static_cast<double>(n) * h)) *
           values[static_cast<size_t>(n)];
  return h * sum;
}

std::vector<Cx> sine_coefficients(const InitialCondition& ic, const Grid& grid) {
  require(ic.size() == grid.num_nodes(), ErrorCode::InvalidArgument,
          "initial condition samples do not match the grid");
  const int N = grid.N;
  // b_l = (2h/L) sum_m phi_m sin(m * theta_l), theta_l = pi l h / L.
  std::vector<double> theta(static_cast<size_t>(N));
  for (int l = 1; l <= N; ++l)
    theta[static_cast<size_t>(l - 1)] = kPi * l * grid.h / grid.L;
  std::vector<Cx> out(static_cast<size_t>(N) + 1, Cx{0.0, 0.0});
  kernels::trig_sin_sum(ic.values.data() + 1, N, theta.data(), N, out.data() + 1);
  const double scale = 2.0 * grid.h / grid.L;
  for (auto& b : out) b *= scale;
  return out;
}

std::vector<Cx> cosine_coefficients(const InitialCondition& ic, const Grid& grid) {
  require(ic.size() == grid.num_nodes(), ErrorCode::InvalidArgument,
          "initial condition samples do not match the grid");
  const int N = grid.N;
  const int modes = N + 2; // l = 0..N+1
  // cos((m + 1/2) theta) = cos(theta/2) cos(m theta) - sin(theta/2) sin(m theta)
  std::vector<double> theta(static_cast<size_t>(modes));
  for (int l = 0; l < modes; ++l)
    theta[static_cast<size_t>(l)] = kPi * l * grid.h / (grid.L + grid.h);
  std::vector<Cx> csum(static_cast<size_t>(modes)), ssum(static_cast<size_t>(modes));
  kernels::trig_cos_sum(ic.values.data(), N + 2, theta.data(), modes, csum.data());
  kernels::trig_sin_sum(ic.values.data() + 1, N + 1, theta.data(), modes, ssum.data());
  std::vector<Cx> out(static_cast<size_t>(modes));
  const double scale = 2.0 * grid.h / grid.L;
  for (int l = 0; l < modes; ++l) {
    const double half = theta[static_cast<size_t>(l)] / 2.0;
    out[static_cast<size_t>(l)] =
        scale * (std::cos(half) * csum[static_cast<size_t>(l)] -
                 std::sin(half) * ssum[static_cast<size_t>(l)]);
  }
  return out;
}

std::vector<Cx> boundary_combination(const std::vector<Cx>& left,
                                     const std::vector<Cx>& right) {
  require(left.size() == right.size(), ErrorCode::InvalidArgument,
          "boundary transform arrays are misaligned");
  std::vector<Cx> H(left.size());
  for (size_t l = 0; l < left.size(); ++l)
    H[l] = left[l] + ((l % 2 == 0) ? -right[l] : right[l]);
  return H;
}

} // namespace sdutm
