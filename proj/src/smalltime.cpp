// Small-time expansion of the forward-advection series.  The boundary memory
// integral is replaced by the Taylor coefficients K_l(n), which involve only
// factorial ratios and boundary-data derivatives at the expansion time.

#include "sdutm/smalltime.hpp"

#include "sdutm/dispersion.hpp"
#include "sdutm/kernels.hpp"
#include "sdutm/series.hpp"

#include <cmath>
#include <iostream>

namespace sdutm {

namespace {

double parity(int k) { return (k & 1) ? -1.0 : 1.0; }

double factorial(int k) { return std::tgamma(k + 1.0); }

void require_forward1(const ProblemSpec& spec, const char* who) {
  const ValidationReport rep = validate_discretization(spec);
  require(rep.accepted, ErrorCode::InvalidProblem,
          std::string(who) + ": " + rep.message);
  require(spec.equation == EquationKind::AdvectionRight &&
              spec.stencil == StencilKind::ForwardO1,
          ErrorCode::InvalidProblem,
          std::string(who) +
              " supports right-moving advection with the first-order forward "
              "stencil only");
}

} // namespace

double moment_integral(int m, int n, const Grid& grid, double c) {
  require(m >= 0, ErrorCode::InvalidArgument, "moment order must be nonnegative");
  require(n >= 0 && n <= grid.N, ErrorCode::InvalidArgument,
          "node index out of range");
  const int N = grid.N;
  if (m + n < N) return 0.0;
  // (2 pi (-1)^{N-n} / (h (N-n)!)) (c/h)^m m! / (m-N+n)!  in log form
  const double logmag = m * std::log(c / grid.h) + std::lgamma(m + 1.0) -
                        std::lgamma(N - n + 1.0) - std::lgamma(m - N + n + 1.0);
  return parity(N - n) * (2.0 * kPi / grid.h) * std::exp(logmag);
}

std::vector<std::vector<Cx>> smalltime_coefficients(const ProblemSpec& spec,
                                                    double t0, int order) {
  require_forward1(spec, "smalltime_coefficients");
  require(order >= 1 && order <= 3, ErrorCode::InvalidArgument,
          "expansion order must be 1, 2, or 3");
  const TimeFunction& v = spec.required_bc(Side::Right).data;
  require(v.derivative_order() >= order - 1, ErrorCode::DerivativesRequired,
          "boundary data must supply derivatives up to order-1");

  const int N = spec.grid.N;
  const double ch = spec.c / spec.grid.h;
  std::vector<Cx> vder(static_cast<size_t>(order));
  for (int j = 0; j < order; ++j) vder[static_cast<size_t>(j)] = v.derivative(j)(t0);

  std::vector<std::vector<Cx>> K(static_cast<size_t>(order));
  for (int l = 1; l <= order; ++l) {
    std::vector<Cx>& Kl = K[static_cast<size_t>(l - 1)];
    Kl.assign(static_cast<size_t>(spec.grid.num_nodes()), Cx{0.0, 0.0});
    for (int n = std::max(0, N - l + 1); n <= N; ++n) {
      Cx sum{0.0, 0.0};
      for (int j = 0; j <= l - 1; ++j) {
        const int d = l - 1 - j - N + n; // lower factorial argument
        if (d < 0) continue;
        sum += parity(l - 1 - j) * factorial(l - 1 - j) / factorial(d) *
               std::pow(ch, l - j) * vder[static_cast<size_t>(j)];
      }
      Kl[static_cast<size_t>(n)] =
          parity(N - n) / (factorial(N - n) * factorial(l)) * sum;
    }
  }
  return K;
}

SolutionField SmallTimeExpansion::evaluate(double tau) const {
  require(std::isfinite(tau) && tau >= 0.0, ErrorCode::InvalidArgument,
          "time increment must be finite and nonnegative");
  const Grid& g = problem.grid;
  const int N = g.N;
  const double s = problem.c * tau / g.h;
  if (s > 1.0)
    std::cerr << "smalltime: c*tau/h = " << s
              << " exceeds 1; the expansion loses accuracy\n";

  SolutionField out;
  out.grid = g;
  out.time = t0 + tau;
  out.values.assign(static_cast<size_t>(g.num_nodes()), Cx{0.0, 0.0});

  const std::vector<double> P = poisson_weights(s, N + 1);
  kernels::corr_trunc(P.data(), N + 1, problem.ic.values.data(), N + 1,
                      out.values.data(), N + 1);

  double tl = tau;
  for (int l = 1; l <= order; ++l) {
    const std::vector<Cx>& Kl = K[static_cast<size_t>(l - 1)];
    for (int n = std::max(0, N - l + 1); n <= N; ++n)
      out.values[static_cast<size_t>(n)] += Kl[static_cast<size_t>(n)] * tl;
    tl *= tau;
  }
  out.values[static_cast<size_t>(N) + 1] =
      problem.required_bc(Side::Right).data(t0 + tau);
  return out;
}

SmallTimeExpansion make_smalltime_expansion(const ProblemSpec& spec, double t0,
                                            int order) {
  SmallTimeExpansion ex;
  ex.problem = spec;
  ex.t0 = t0;
  ex.order = order;
  ex.K = smalltime_coefficients(spec, t0, order);
  return ex;
}

SolutionField smalltime_solve(const ProblemSpec& spec, double t0, double tau,
                              int order) {
  return make_smalltime_expansion(spec, t0, order).evaluate(tau);
}

} // namespace sdutm
