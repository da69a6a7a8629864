// Series-form SD-UTM solvers.  Advection evaluates Poisson-type weight sums
// against the initial samples plus a boundary memory integral; heat and
// Schroedinger evaluate finite eigenmode sums with fused damped boundary
// transforms.

#include "sdutm/series.hpp"

#include "sdutm/dispersion.hpp"
#include "sdutm/kernels.hpp"
#include "sdutm/quadrature.hpp"
#include "sdutm/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace sdutm {

namespace {

// Caps on the dimensionless elapsed time of the advection series.  Beyond
// these the weight vectors are numerically fine but the quadrature interval
// (and the useful signal) makes a direct evaluation wasteful; callers should
// use the integral solver or step in time.
constexpr double kMaxPoissonArg = 500.0; // s = c T / h
constexpr double kMaxAdv2Arg = 200.0;    // S = c T / (2h)

void require_valid(const ProblemSpec& spec, double T) {
  require(std::isfinite(T) && T >= 0.0, ErrorCode::InvalidArgument,
          "final time must be finite and nonnegative");
  const ValidationReport rep = validate_discretization(spec);
  if (!rep.accepted) {
    fail(rep.reason == "unsupported-pair" ? ErrorCode::UnsupportedDiscretization
                                          : ErrorCode::InvalidProblem,
         "series solver: " + rep.message);
  }
}

SolutionField make_field(const ProblemSpec& spec, double T) {
  SolutionField out;
  out.grid = spec.grid;
  out.time = T;
  out.values.assign(static_cast<size_t>(spec.grid.num_nodes()), Cx{0.0, 0.0});
  return out;
}

// Fills w[m] = [z^m] exp(-s (3 - 4z + z^2)) for m = 0..w.size()-1 by the
// three-term recurrence (m+1) w_{m+1} = 4 s w_m - 2 s w_{m-1}.  All weights
// are bounded by 1 in magnitude, so the recurrence cannot overflow.
void adv2_weights_into(double s, std::vector<double>& w) {
  const int count = static_cast<int>(w.size());
  if (count == 0) return;
  std::fill(w.begin(), w.end(), 0.0);
  w[0] = std::exp(-3.0 * s);
  if (count > 1) w[1] = 4.0 * s * w[0];
  for (int m = 1; m + 1 < count; ++m)
    w[m + 1] = (4.0 * s * w[m] - 2.0 * s * w[m - 1]) / (m + 1);
}

// Mode rates, damped boundary transforms, and their parity combination for the
// second-order series; k_l = pi l / span.
struct ModeData {
  std::vector<Cx> W;
  std::vector<Cx> H; // e^{-W_l T} (F_l +- G_l), overflow-safe
};

ModeData second_order_modes(const ProblemSpec& spec, double T, double span, int modes) {
  const DispersionModel dm =
      make_dispersion(spec.equation, spec.stencil, spec.grid.h, spec.c);
  const TimeFunction& left = spec.required_bc(Side::Left).data;
  const TimeFunction& right = spec.required_bc(Side::Right).data;
  ModeData md;
  md.W.resize(static_cast<size_t>(modes) + 1);
  std::vector<Cx> F(static_cast<size_t>(modes) + 1), G(F.size());
  for (int l = 0; l <= modes; ++l) {
    md.W[l] = dm.W(Cx{kPi * l / span, 0.0});
    F[l] = damped_time_transform(left, md.W[l], T);
    G[l] = damped_time_transform(right, md.W[l], T);
  }
  md.H = boundary_combination(F, G);
  return md;
}

SolutionField second_order_dirichlet(const ProblemSpec& spec, double T) {
  const Grid& g = spec.grid;
  const int N = g.N;
  const double L = g.L;
  const double h = g.h;
  const bool ls = spec.equation == EquationKind::Schrodinger;

  const ModeData md = second_order_modes(spec, T, L, N);
  const std::vector<Cx> b = sine_coefficients(spec.ic, g);
  const Cx coef = ls ? Cx{0.0, 1.0 / (L * h)} : Cx{2.0 / (L * h), 0.0};

  std::vector<Cx> w(static_cast<size_t>(N) + 1, Cx{0.0, 0.0});
  for (int l = 1; l <= N; ++l)
    w[l] = std::exp(-md.W[l] * T) * b[l] + coef * std::sin(kPi * l * h / L) * md.H[l];

  SolutionField out = make_field(spec, T);
  std::vector<double> theta(static_cast<size_t>(N));
  for (int n = 1; n <= N; ++n) theta[n - 1] = kPi * n * h / L;
  kernels::trig_sin_sum(w.data() + 1, N, theta.data(), N, out.values.data() + 1);
  out.values[0] = spec.required_bc(Side::Left).data(T);
  out.values[static_cast<size_t>(N) + 1] = spec.required_bc(Side::Right).data(T);
  return out;
}

SolutionField second_order_neumann(const ProblemSpec& spec, double T) {
  const Grid& g = spec.grid;
  const int N = g.N;
  const double L = g.L;
  const double h = g.h;
  const double span = L + h; // half-shifted cosine modes live on [0, L+h]
  const bool ls = spec.equation == EquationKind::Schrodinger;

  const ModeData md = second_order_modes(spec, T, span, N + 1);
  const std::vector<Cx> b = cosine_coefficients(spec.ic, g);
  const Cx cfac = ls ? Cx{0.0, -1.0 / L} : Cx{-2.0 / L, 0.0};

  std::vector<Cx> w(static_cast<size_t>(N) + 2, Cx{0.0, 0.0});
  for (int l = 1; l <= N + 1; ++l)
    w[l] = std::exp(-md.W[l] * T) * b[l] +
           cfac * std::cos(kPi * l * h / (2.0 * span)) * md.H[l];
  // The l = 0 mode carries the conserved (heat) / unitary (Schroedinger)
  // mean; its boundary factor differs from the oscillatory modes.
  const Cx zero_mode = ls ? (L * b[0] - Cx{0.0, 1.0} * md.H[0]) / (2.0 * span)
                          : L * b[0] / (2.0 * span) - md.H[0] / span;

  SolutionField out = make_field(spec, T);
  std::vector<double> theta(static_cast<size_t>(N) + 2);
  for (int n = 0; n <= N + 1; ++n) theta[n] = kPi * (n + 0.5) * h / span;
  kernels::trig_cos_sum(w.data(), N + 2, theta.data(), N + 2, out.values.data());
  const double scale = L / span;
  for (Cx& q : out.values) q = scale * q + zero_mode;
  return out;
}

void require_second_order(const ProblemSpec& spec, EquationKind eq, BcKind bk,
                          const char* who) {
  require(spec.equation == eq && spec.stencil == StencilKind::CenteredO2,
          ErrorCode::InvalidProblem,
          std::string(who) + " needs " + equation_name(eq) +
              " with the second-order centered stencil");
  require(spec.required_bc(Side::Left).kind == bk &&
              spec.required_bc(Side::Right).kind == bk,
          ErrorCode::InvalidProblem,
          std::string(who) + " needs " + bc_kind_name(bk) +
              " conditions at both ends");
}

// Reflect a left-moving problem onto the forward form: r_m(t) = q_{N+1-m}(t)
// satisfies the right-moving scheme with the same speed, inflow data moved to
// the right end.
ProblemSpec mirrored(const ProblemSpec& spec) {
  ProblemSpec m = spec;
  m.equation = EquationKind::AdvectionRight;
  m.stencil = spec.stencil == StencilKind::BackwardO1 ? StencilKind::ForwardO1
                                                      : StencilKind::ForwardO2;
  std::reverse(m.ic.values.begin(), m.ic.values.end());
  m.bcs = {BoundaryCondition::dirichlet(Side::Right, spec.required_bc(Side::Left).data)};
  return m;
}

} // namespace

std::vector<double> poisson_weights(double s, int count, bool log_domain) {
  require(std::isfinite(s) && s >= 0.0, ErrorCode::InvalidArgument,
          "poisson_weights needs a finite nonnegative argument");
  require(count >= 0, ErrorCode::InvalidArgument, "weight count must be nonnegative");
  std::vector<double> w(static_cast<size_t>(count), 0.0);
  if (count == 0) return w;
  if (s == 0.0) {
    w[0] = 1.0;
    return w;
  }
  if (log_domain) {
    const double ls = std::log(s);
    for (int m = 0; m < count; ++m)
      w[m] = std::exp(m * ls - std::lgamma(m + 1.0) - s);
  } else {
    // Naive textbook evaluation; overflows past m ~ 170 and is kept only to
    // show why the log-domain form is the default.
    for (int m = 0; m < count; ++m)
      w[m] = std::pow(s, m) / std::tgamma(m + 1.0) * std::exp(-s);
  }
  return w;
}

std::vector<double> advection2_weights(double s, int count) {
  require(std::isfinite(s) && s >= 0.0, ErrorCode::InvalidArgument,
          "advection2_weights needs a finite nonnegative argument");
  require(count >= 0, ErrorCode::InvalidArgument, "weight count must be nonnegative");
  std::vector<double> w(static_cast<size_t>(count), 0.0);
  adv2_weights_into(s, w);
  return w;
}

std::vector<double> advection2_weights_dft(double s, int count) {
  require(std::isfinite(s) && s >= 0.0, ErrorCode::InvalidArgument,
          "advection2_weights_dft needs a finite nonnegative argument");
  require(count >= 0, ErrorCode::InvalidArgument, "weight count must be nonnegative");
  std::vector<double> w(static_cast<size_t>(count), 0.0);
  if (count == 0) return w;
  // Ring size large enough that aliased coefficients (index >= K - count) sit
  // far beyond the ~11 s support of the weight sequence.
  const int K = count + static_cast<int>(std::ceil(12.0 * s)) + 80;
  for (int j = 0; j < K; ++j) {
    const double theta = 2.0 * kPi * j / K;
    const Cx z = std::polar(1.0, theta);
    const Cx f = std::exp(-s * (3.0 - 4.0 * z + z * z));
    const Cx rot = std::conj(z);
    Cx phase{1.0, 0.0};
    for (int m = 0; m < count; ++m) {
      w[m] += (phase * f).real();
      phase *= rot;
    }
  }
  for (double& x : w) x /= K;
  return w;
}

std::vector<double> advection2_cumulative_integrals(double S, int count) {
  const std::vector<double> C = advection2_weights(S, count);
  std::vector<double> E(static_cast<size_t>(count), 0.0);
  // Generating function: sum_m E_m z^m = (1 - e^{-S(3-4z+z^2)}) / ((3-z)(1-z))
  // with 1/((3-z)(1-z)) = (1/2)[1/(1-z) - 1/(3-z)], so
  // E_m = (1/2) [(1 - sum_{j<=m} C_j) - (3^{-(m+1)} - sum_{j<=m} 3^{j-m-1} C_j)].
  double partial = 0.0;
  double geo = 0.0;
  double pow3 = 1.0 / 3.0;
  for (int m = 0; m < count; ++m) {
    partial += C[m];
    geo = geo / 3.0 + C[m] / 3.0;
    E[m] = 0.5 * ((1.0 - partial) - (pow3 - geo));
    pow3 /= 3.0;
  }
  return E;
}

Cx advection2_g1_closure(Cx g0, Cx Vdot, Cx Vddot, double h, double c) {
  const Cx slope = Vdot / c;      // required value of the first difference
  const Cx curv = Vddot / (c * c); // required value of the second difference
  return g0 + h * slope + 0.5 * h * h * curv;
}

SolutionField advection_forward_series(const ProblemSpec& spec, double T,
                                       const SeriesSolveOptions& opt) {
  require_valid(spec, T);
  require(spec.equation == EquationKind::AdvectionRight &&
              spec.stencil == StencilKind::ForwardO1,
          ErrorCode::InvalidProblem,
          "advection_forward_series needs right-moving data with the first-order "
          "forward stencil");
  const Grid& g = spec.grid;
  const int N = g.N;
  const double h = g.h;
  const double c = spec.c;
  const double s = c * T / h;
  require(s <= kMaxPoissonArg, ErrorCode::ResourceLimit,
          "c*T/h exceeds the series cap; use the integral solver or split the "
          "time interval");
  const TimeFunction& v = spec.required_bc(Side::Right).data;

  SolutionField out = make_field(spec, T);
  const std::vector<double> P = poisson_weights(s, N + 1, opt.log_domain);
  kernels::corr_trunc(P.data(), N + 1, spec.ic.values.data(), N + 1,
                      out.values.data(), N + 1);

  if (T > 0.0 && !v.is_zero()) {
    if (v.is_constant()) {
      // integral of P_M over [0, s] = 1 - sum_{j<=M} P_j(s)
      const Cx vc = v.constant_value();
      double cum = 0.0;
      for (int M = 0; M <= N; ++M) {
        cum += P[M];
        out.values[static_cast<size_t>(N - M)] += vc * std::max(0.0, 1.0 - cum);
      }
    } else {
      QuadOptions qopt;
      qopt.tol_abs = 1e-13;
      qopt.tol_rel = 1e-10;
      qopt.max_segments = 8000;
      qopt.breakpoints = panel_breakpoints(0.0, s, 4.0);
      auto f = [&](double sigma, Cx* dst) {
        const Cx val = v(T - h * sigma / c);
        double p = std::exp(-sigma); // P_0, then the ratio recurrence
        for (int M = 0; M <= N; ++M) {
          dst[M] = p * val;
          p *= sigma / (M + 1);
        }
      };
      const VecQuadResult res = integrate_gk_vec(f, N + 1, 0.0, s, qopt);
      require(res.converged, ErrorCode::AccuracyFailure,
              "boundary-term quadrature did not converge");
      for (int M = 0; M <= N; ++M)
        out.values[static_cast<size_t>(N - M)] += res.value[M];
    }
  }
  out.values[static_cast<size_t>(N) + 1] = v(T);
  return out;
}

SolutionField advection_forward2_series(const ProblemSpec& spec, double T,
                                        const SeriesSolveOptions&) {
  require_valid(spec, T);
  require(spec.equation == EquationKind::AdvectionRight &&
              spec.stencil == StencilKind::ForwardO2,
          ErrorCode::InvalidProblem,
          "advection_forward2_series needs right-moving data with the "
          "second-order forward stencil");
  const Grid& g = spec.grid;
  const int N = g.N;
  const double h = g.h;
  const double c = spec.c;
  const double S = c * T / (2.0 * h);
  require(S <= kMaxAdv2Arg, ErrorCode::ResourceLimit,
          "c*T/(2h) exceeds the series cap; use the integral solver or split "
          "the time interval");
  const TimeFunction& v = spec.required_bc(Side::Right).data;

  SolutionField out = make_field(spec, T);
  const std::vector<double> C = advection2_weights(S, N + 1);
  kernels::corr_trunc(C.data(), N + 1, spec.ic.values.data(), N + 1,
                      out.values.data(), N + 1);

  if (T > 0.0 && !v.is_zero()) {
    if (v.is_constant()) {
      const Cx vc = v.constant_value();
      const std::vector<double> E = advection2_cumulative_integrals(S, N + 1);
      for (int n = 0; n <= N; ++n) {
        const int M = N - n;
        const double em1 = M >= 1 ? E[M - 1] : 0.0;
        out.values[static_cast<size_t>(n)] += vc * (3.0 * E[M] - em1);
      }
    } else {
      // Ghost closure g_1 = g_0 + h V'/c + h^2 V''/(2 c^2) folds the
      // derivative conditions into one memory integral per node.
      const TimeFunction vd = v.derivative();
      const TimeFunction vdd = vd.derivative();
      QuadOptions qopt;
      qopt.tol_abs = 1e-13;
      qopt.tol_rel = 1e-10;
      qopt.max_segments = 8000;
      qopt.breakpoints = panel_breakpoints(0.0, S, 2.0);
      std::vector<double> cw(static_cast<size_t>(N) + 1);
      auto f = [&](double sigma, Cx* dst) {
        adv2_weights_into(sigma, cw);
        const double t = T - 2.0 * h * sigma / c;
        const Cx val = v(t);
        const Cx ghost = advection2_g1_closure(Cx{0.0, 0.0}, vd(t), vdd(t), h, c);
        for (int n = 0; n <= N; ++n) {
          const int M = N - n;
          const double cm1 = M >= 1 ? cw[static_cast<size_t>(M - 1)] : 0.0;
          dst[n] = (3.0 * cw[static_cast<size_t>(M)] - cm1) * val -
                   cw[static_cast<size_t>(M)] * ghost;
        }
      };
      const VecQuadResult res = integrate_gk_vec(f, N + 1, 0.0, S, qopt);
      require(res.converged, ErrorCode::AccuracyFailure,
              "boundary-term quadrature did not converge");
      for (int n = 0; n <= N; ++n)
        out.values[static_cast<size_t>(n)] += res.value[static_cast<size_t>(n)];
    }
  }
  out.values[static_cast<size_t>(N) + 1] = v(T);
  return out;
}

SolutionField heat_dirichlet_series(const ProblemSpec& spec, double T) {
  require_valid(spec, T);
  require_second_order(spec, EquationKind::Heat, BcKind::Dirichlet,
                       "heat_dirichlet_series");
  return second_order_dirichlet(spec, T);
}

SolutionField heat_neumann_series(const ProblemSpec& spec, double T) {
  require_valid(spec, T);
  require_second_order(spec, EquationKind::Heat, BcKind::Neumann,
                       "heat_neumann_series");
  return second_order_neumann(spec, T);
}

SolutionField ls_dirichlet_series(const ProblemSpec& spec, double T) {
  require_valid(spec, T);
  require_second_order(spec, EquationKind::Schrodinger, BcKind::Dirichlet,
                       "ls_dirichlet_series");
  return second_order_dirichlet(spec, T);
}

SolutionField ls_neumann_series(const ProblemSpec& spec, double T) {
  require_valid(spec, T);
  require_second_order(spec, EquationKind::Schrodinger, BcKind::Neumann,
                       "ls_neumann_series");
  return second_order_neumann(spec, T);
}

SolutionField series_solve(const ProblemSpec& spec, double T,
                           const SeriesSolveOptions& opt) {
  require_valid(spec, T);
  switch (spec.equation) {
  case EquationKind::AdvectionRight:
    return spec.stencil == StencilKind::ForwardO1
               ? advection_forward_series(spec, T, opt)
               : advection_forward2_series(spec, T, opt);
  case EquationKind::AdvectionLeft: {
    SolutionField sol = series_solve(mirrored(spec), T, opt);
    std::reverse(sol.values.begin(), sol.values.end());
    sol.grid = spec.grid;
    return sol;
  }
  case EquationKind::Heat:
  case EquationKind::Schrodinger: {
    require(spec.stencil != StencilKind::CenteredO4,
            ErrorCode::UnsupportedDiscretization,
            "the fourth-order heat scheme has no series form; use the integral "
            "solver");
    const bool dirichlet = spec.required_bc(Side::Left).kind == BcKind::Dirichlet;
    if (spec.equation == EquationKind::Heat)
      return dirichlet ? heat_dirichlet_series(spec, T) : heat_neumann_series(spec, T);
    return dirichlet ? ls_dirichlet_series(spec, T) : ls_neumann_series(spec, T);
  }
  }
  fail(ErrorCode::InvalidArgument, "unknown equation kind");
}

} // namespace sdutm
