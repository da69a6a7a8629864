// Exact solutions, separation-of-variables series, and the augmented matrix
// exponential used as an independent reference for the semidiscrete systems.

#include "sdutm/oracles.hpp"

#include "sdutm/quadrature.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <memory>
#include <mutex>
#include <utility>

namespace sdutm {

ExactSolution advection_traveling_wave(std::function<Cx(double)> phi, TimeFunction v0,
                                       double c, double L) {
  require(c > 0.0, ErrorCode::InvalidArgument, "traveling wave requires c > 0");
  require(L > 0.0, ErrorCode::InvalidArgument, "traveling wave requires L > 0");
  ExactSolution sol;
  sol.domain = "x in [0, L], t >= 0";
  sol.eval = [phi = std::move(phi), v0 = std::move(v0), c, L](double x, double t) -> Cx {
    if (x + c * t < L) return phi(x + c * t);
    return v0((x - L) / c + t);
  };
  return sol;
}

ExactSolution heat_dirichlet_example() {
  ExactSolution sol;
  sol.domain = "x in [0, 1], t >= 0";
  sol.eval = [](double x, double t) -> Cx {
    return Cx{2.0 * x + std::sin(5.0 * kPi * x) * std::exp(-25.0 * kPi * kPi * t), 0.0};
  };
  return sol;
}

namespace {

struct SeriesState {
  std::vector<Cx> coef;      // index m; m = 0 stores a_0 / 2 for Neumann
  bool dirichlet = true;
  bool heat = true;
  double L = 1.0;
  Cx part_a, part_b, part_c;  // particular part a + b x (+ c x^2 for Neumann)
  Cx part_t;                  // coefficient of t in the particular part
  std::mutex mu;
  double cached_t = -1.0;
  std::vector<Cx> phase;

  void refresh_phases(double t) {
    if (!phase.empty() && t == cached_t) return;
    phase.resize(coef.size());
    for (size_t m = 0; m < coef.size(); ++m) {
      const double w = kPi * static_cast<double>(m) / L;
      if (heat)
        phase[m] = Cx{std::exp(-w * w * t), 0.0};
      else
        phase[m] = std::polar(1.0, -0.5 * w * w * t);
    }
    cached_t = t;
  }
};

}  // namespace

ExactSolution separation_series(EquationKind equation, std::function<Cx(double)> phi,
                                const BoundaryCondition& left,
                                const BoundaryCondition& right, double L, int modes) {
  require(L > 0.0 && modes >= 1, ErrorCode::InvalidArgument,
          "separation series requires L > 0 and at least one mode");
  require(equation == EquationKind::Heat || equation == EquationKind::Schrodinger,
          ErrorCode::UnsupportedDiscretization,
          "separation series covers heat and Schroedinger only");
  require(left.side == Side::Left && right.side == Side::Right,
          ErrorCode::InvalidArgument, "separation series: sides are swapped");
  require(left.kind == right.kind, ErrorCode::UnsupportedDiscretization,
          "separation series: mixed boundary kinds are not supported");
  require(left.data.is_constant() && right.data.is_constant(),
          ErrorCode::UnsupportedDiscretization,
          "separation series requires constant boundary data");

  auto st = std::make_shared<SeriesState>();
  st->dirichlet = left.kind == BcKind::Dirichlet;
  st->heat = equation == EquationKind::Heat;
  st->L = L;
  const Cx u = left.data.constant_value();
  const Cx v = right.data.constant_value();
  if (st->dirichlet) {
    st->part_a = u;
    st->part_b = (v - u) / L;
    st->part_c = Cx{0.0, 0.0};
    st->part_t = Cx{0.0, 0.0};
  } else {
    // q_x(0) = u, q_x(L) = v: particular part alpha x^2 + beta x + gamma t with
    // gamma chosen so the particular part solves the PDE.
    const Cx alpha = (v - u) / (2.0 * L);
    st->part_a = Cx{0.0, 0.0};
    st->part_b = u;
    st->part_c = alpha;
    st->part_t = st->heat ? 2.0 * alpha : Cx{0.0, 1.0} * alpha;
  }

  auto residual = [&](double x) -> Cx {
    return phi(x) - (st->part_a + st->part_b * x + st->part_c * x * x);
  };

  const int m_begin = st->dirichlet ? 1 : 0;
  st->coef.assign(static_cast<size_t>(modes + 1), Cx{0.0, 0.0});
  for (int m = m_begin; m <= modes; ++m) {
    const double w = kPi * static_cast<double>(m) / L;
    QuadOptions opt;
    opt.tol_abs = 1e-12;
    opt.tol_rel = 1e-10;
    opt.max_segments = std::max(8000, 10 * m);
    opt.breakpoints = panel_breakpoints(0.0, L, L / std::max(1.0, 0.5 * m));
    const bool dirichlet = st->dirichlet;
    const auto res = integrate_gk(
        [&](double x) -> Cx {
          return residual(x) * (dirichlet ? std::sin(w * x) : std::cos(w * x));
        },
        0.0, L, opt);
    if (!res.converged)
      fail(ErrorCode::AccuracyFailure,
           "separation series: coefficient quadrature did not converge at mode " +
               std::to_string(m));
    st->coef[static_cast<size_t>(m)] = (2.0 / L) * res.value;
  }
  if (!st->dirichlet) st->coef[0] *= 0.5;  // constant mode carries a_0 / 2

  ExactSolution sol;
  sol.domain = "x in [0, L], t >= 0; constant boundary data";
  sol.eval = [st](double x, double t) -> Cx {
    std::lock_guard<std::mutex> lock(st->mu);
    st->refresh_phases(t);
    Cx acc = st->part_a + st->part_b * x + st->part_c * x * x + st->part_t * t;
    for (size_t m = st->dirichlet ? 1 : 0; m < st->coef.size(); ++m) {
      const double w = kPi * static_cast<double>(m) / st->L;
      const double basis = st->dirichlet ? std::sin(w * x) : std::cos(w * x);
      acc += st->coef[m] * basis * st->phase[m];
    }
    return acc;
  };
  return sol;
}

std::vector<Cx> expm_solve(const OdeSystem& sys, const std::vector<Cx>& Q0, double T) {
  require(static_cast<int>(Q0.size()) == sys.dim, ErrorCode::InvalidArgument,
          "expm_solve: state size mismatch");
  require(sys.forcing_constant, ErrorCode::InvalidArgument,
          "expm_solve requires time-constant forcing");
  require(sys.dim <= 2000, ErrorCode::ResourceLimit,
          "expm_solve: dimension exceeds the dense-computation budget (2000)");
  const int n = sys.dim;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - sys.A.kl); j <= std::min(n - 1, i + sys.A.ku); ++j)
      M(i, j) = sys.A.at(i, j);
  const std::vector<Cx> g = sys.forcing_at(0.0);
  for (int i = 0; i < n; ++i) M(i, n) = g[static_cast<size_t>(i)];
  M *= T;
  const Eigen::MatrixXcd E = M.exp();
  Eigen::VectorXcd v(n + 1);
  for (int i = 0; i < n; ++i) v(i) = Q0[static_cast<size_t>(i)];
  v(n) = Cx{1.0, 0.0};
  const Eigen::VectorXcd w = E * v;
  std::vector<Cx> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = w(i);
  return out;
}

std::vector<Cx> rk4_reference(const OdeSystem& sys, const std::vector<Cx>& Q0, double T) {
  require(T >= 0.0, ErrorCode::InvalidArgument, "rk4_reference: T must be nonnegative");
  if (T == 0.0) return Q0;
  const long long steps = 1000000;
  const double dt = T / static_cast<double>(steps);
  std::vector<Cx> q(Q0);
  const Stepper rk{StepKind::RK4, dt};
  for (long long i = 0; i < steps; ++i)
    q = step(sys, rk, q, static_cast<double>(i) * dt);
  return q;
}

SolutionField sample_exact(const ExactSolution& exact, const Grid& grid, double t) {
  SolutionField f;
  f.grid = grid;
  f.time = t;
  f.values.resize(static_cast<size_t>(grid.num_nodes()));
  for (int n = 0; n < grid.num_nodes(); ++n)
    f.values[static_cast<size_t>(n)] = exact(grid.x(n), t);
  return f;
}

}  // namespace sdutm
