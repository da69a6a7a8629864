// Banded LU, semidiscrete system assembly, and the FE/RK4/BE/TR steppers.

#include "sdutm/fd.hpp"

#include "sdutm/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace sdutm {

BandedMatrix BandedMatrix::zero(int n, int kl, int ku) {
  require(n > 0 && kl >= 0 && ku >= 0, ErrorCode::InvalidArgument,
          "banded matrix dimensions must be positive");
  BandedMatrix m;
  m.n = n;
  m.kl = kl;
  m.ku = ku;
  m.data.assign(static_cast<size_t>(kl + ku + 1) * static_cast<size_t>(n), Cx{0.0, 0.0});
  return m;
}

Cx BandedMatrix::at(int i, int j) const {
  if (!in_band(i, j)) return Cx{0.0, 0.0};
  return data[static_cast<size_t>(i - j + ku) * static_cast<size_t>(n) + static_cast<size_t>(j)];
}

Cx& BandedMatrix::ref(int i, int j) {
  require(in_band(i, j), ErrorCode::InvalidArgument, "banded entry outside band");
  return data[static_cast<size_t>(i - j + ku) * static_cast<size_t>(n) + static_cast<size_t>(j)];
}

std::vector<Cx> BandedMatrix::multiply(const std::vector<Cx>& x) const {
  require(static_cast<int>(x.size()) == n, ErrorCode::InvalidArgument,
          "banded multiply: size mismatch");
  std::vector<Cx> y(static_cast<size_t>(n), Cx{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    const int j0 = std::max(0, i - kl);
    const int j1 = std::min(n - 1, i + ku);
    Cx acc{0.0, 0.0};
    for (int j = j0; j <= j1; ++j) acc += at(i, j) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = acc;
  }
  return y;
}

BandedLU factor_banded(const BandedMatrix& A) {
  BandedLU lu;
  lu.n_ = A.n;
  lu.kl_ = A.kl;
  lu.ku_ = A.kl + A.ku;  // room for pivoting fill-in
  lu.data_.assign(static_cast<size_t>(lu.kl_ + lu.ku_ + 1) * static_cast<size_t>(A.n),
                  Cx{0.0, 0.0});
  lu.pivots_.assign(static_cast<size_t>(A.n), 0);
  for (int i = 0; i < A.n; ++i)
    for (int j = std::max(0, i - A.kl); j <= std::min(A.n - 1, i + A.ku); ++j)
      lu.fref(i, j) = A.at(i, j);

  const int n = lu.n_;
  for (int j = 0; j < n; ++j) {
    const int ilast = std::min(n - 1, j + lu.kl_);
    int piv = j;
    double best = std::abs(lu.fat(j, j));
    for (int i = j + 1; i <= ilast; ++i) {
      const double m = std::abs(lu.fat(i, j));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best == 0.0)
      fail(ErrorCode::NumericalFailure, "banded LU: singular matrix at column " +
                                            std::to_string(j));
    lu.pivots_[static_cast<size_t>(j)] = piv;
    const int jlast = std::min(n - 1, j + lu.ku_);
    if (piv != j)
      for (int col = j; col <= jlast; ++col) std::swap(lu.fref(j, col), lu.fref(piv, col));
    const Cx d = lu.fat(j, j);
    for (int i = j + 1; i <= ilast; ++i) {
      const Cx mult = lu.fat(i, j) / d;
      lu.fref(i, j) = mult;
      if (mult != Cx{0.0, 0.0})
        for (int col = j + 1; col <= jlast; ++col)
          lu.fref(i, col) -= mult * lu.fat(j, col);
    }
  }
  return lu;
}

std::vector<Cx> BandedLU::solve(std::vector<Cx> rhs) const {
  require(static_cast<int>(rhs.size()) == n_, ErrorCode::InvalidArgument,
          "banded solve: size mismatch");
  for (int j = 0; j < n_; ++j) {
    const int piv = pivots_[static_cast<size_t>(j)];
    if (piv != j) std::swap(rhs[static_cast<size_t>(j)], rhs[static_cast<size_t>(piv)]);
    const Cx xj = rhs[static_cast<size_t>(j)];
    const int ilast = std::min(n_ - 1, j + kl_);
    for (int i = j + 1; i <= ilast; ++i) rhs[static_cast<size_t>(i)] -= fat(i, j) * xj;
  }
  for (int j = n_ - 1; j >= 0; --j) {
    rhs[static_cast<size_t>(j)] /= fat(j, j);
    const Cx xj = rhs[static_cast<size_t>(j)];
    const int i0 = std::max(0, j - ku_);
    for (int i = i0; i < j; ++i) rhs[static_cast<size_t>(i)] -= fat(i, j) * xj;
  }
  return rhs;
}

std::vector<Cx> OdeSystem::forcing_at(double t) const {
  std::vector<Cx> g(static_cast<size_t>(dim), Cx{0.0, 0.0});
  if (forcing) forcing(t, g);
  return g;
}

std::vector<Cx> OdeSystem::rhs(const std::vector<Cx>& Q, double t) const {
  std::vector<Cx> d = A.multiply(Q);
  const std::vector<Cx> g = forcing_at(t);
  for (size_t i = 0; i < d.size(); ++i) d[i] += g[i];
  return d;
}

SolutionField OdeSystem::reconstruct(const std::vector<Cx>& Q, double t) const {
  require(static_cast<int>(Q.size()) == dim, ErrorCode::InvalidArgument,
          "reconstruct: state size mismatch");
  SolutionField f;
  f.grid = grid;
  f.time = t;
  f.values.assign(static_cast<size_t>(grid.num_nodes()), Cx{0.0, 0.0});
  for (int i = 0; i < dim; ++i)
    f.values[static_cast<size_t>(first_node + i)] = Q[static_cast<size_t>(i)];
  if (pin_left) f.values.front() = (*pin_left)(t);
  if (pin_right) f.values.back() = (*pin_right)(t);
  return f;
}

const char* step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::FE: return "fe";
    case StepKind::RK4: return "rk4";
    case StepKind::BE: return "be";
    case StepKind::TR: return "tr";
  }
  return "?";
}

namespace {

bool is_const_or_zero(const TimeFunction& f) { return f.is_zero() || f.is_constant(); }

std::vector<Cx> slice_state(const InitialCondition& ic, int first, int dim) {
  std::vector<Cx> q(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) q[static_cast<size_t>(i)] = ic[first + i];
  return q;
}

OdeSystem assemble_advection(const ProblemSpec& spec) {
  const Grid& g = spec.grid;
  const double h = g.h;
  const double c = spec.c;
  const bool right_bc = spec.equation == EquationKind::AdvectionRight;
  const bool second = spec.stencil == StencilKind::ForwardO2 ||
                      spec.stencil == StencilKind::BackwardO2;
  const TimeFunction bc_data =
      spec.required_bc(right_bc ? Side::Right : Side::Left).data;

  OdeSystem sys;
  sys.grid = g;
  sys.dim = g.N + 1;  // inflow-side boundary node is pinned, the other evolves
  sys.first_node = right_bc ? 0 : 1;
  if (right_bc)
    sys.pin_right = bc_data;
  else
    sys.pin_left = bc_data;
  sys.forcing_constant = is_const_or_zero(bc_data);
  sys.initial_state = slice_state(spec.ic, sys.first_node, sys.dim);

  const int dim = sys.dim;
  // Assemble for the right-BC orientation, then mirror rows for the left-BC
  // one (the stencil reflects, so the band transposes).
  auto row = [&](int i) { return right_bc ? i : dim - 1 - i; };
  if (!second) {
    sys.A = BandedMatrix::zero(dim, right_bc ? 0 : 1, right_bc ? 1 : 0);
    for (int i = 0; i < dim; ++i) {
      sys.A.ref(row(i), row(i)) = -c / h;
      if (i + 1 < dim) sys.A.ref(row(i), row(i + 1)) = c / h;
    }
    const int last = row(dim - 1);
    sys.forcing = [dim, last, c, h, bc_data](double t, std::vector<Cx>& out) {
      out.assign(static_cast<size_t>(dim), Cx{0.0, 0.0});
      out[static_cast<size_t>(last)] = (c / h) * bc_data(t);
    };
  } else {
    const TimeFunction bdot = bc_data.derivative(1);
    const TimeFunction bddot = bc_data.derivative(2);
    sys.A = BandedMatrix::zero(dim, right_bc ? 0 : 2, right_bc ? 2 : 0);
    for (int i = 0; i < dim; ++i) {
      sys.A.ref(row(i), row(i)) = -3.0 * c / (2.0 * h);
      if (i + 1 < dim) sys.A.ref(row(i), row(i + 1)) = 2.0 * c / h;
      if (i + 2 < dim) sys.A.ref(row(i), row(i + 2)) = -c / (2.0 * h);
    }
    const int last = row(dim - 1);
    const int next = row(dim - 2);
    sys.forcing = [dim, last, next, c, h, bc_data, bdot, bddot](double t,
                                                               std::vector<Cx>& out) {
      out.assign(static_cast<size_t>(dim), Cx{0.0, 0.0});
      // Stencil row touching the pinned node directly.
      out[static_cast<size_t>(next)] = -(c / (2.0 * h)) * bc_data(t);
      // Boundary row with the ghost node eliminated through the PDE trace:
      // q(ghost) = v + (h/c) v' + (h^2/(2c^2)) v''.
      out[static_cast<size_t>(last)] = (3.0 * c / (2.0 * h)) * bc_data(t) -
                                       0.5 * bdot(t) - (h / (4.0 * c)) * bddot(t);
    };
  }
  return sys;
}

OdeSystem assemble_second_order(const ProblemSpec& spec) {
  const Grid& g = spec.grid;
  const double h = g.h;
  const Cx scale = spec.equation == EquationKind::Schrodinger ? Cx{0.0, 0.5} : Cx{1.0, 0.0};
  const BoundaryCondition& left = spec.required_bc(Side::Left);
  const BoundaryCondition& right = spec.required_bc(Side::Right);
  const bool neumann = left.kind == BcKind::Neumann;
  const bool fourth = spec.stencil == StencilKind::CenteredO4;

  OdeSystem sys;
  sys.grid = g;
  sys.forcing_constant = is_const_or_zero(left.data) && is_const_or_zero(right.data);

  if (!fourth && !neumann) {
    // Dirichlet second-order: unknowns 1..N, tridiagonal.
    sys.dim = g.N;
    sys.first_node = 1;
    sys.pin_left = left.data;
    sys.pin_right = right.data;
    sys.A = BandedMatrix::zero(sys.dim, 1, 1);
    const Cx w = scale / (h * h);
    for (int i = 0; i < sys.dim; ++i) {
      sys.A.ref(i, i) = -2.0 * w;
      if (i > 0) sys.A.ref(i, i - 1) = w;
      if (i + 1 < sys.dim) sys.A.ref(i, i + 1) = w;
    }
    const int dim = sys.dim;
    const TimeFunction u = left.data, v = right.data;
    sys.forcing = [dim, w, u, v](double t, std::vector<Cx>& out) {
      out.assign(static_cast<size_t>(dim), Cx{0.0, 0.0});
      out.front() += w * u(t);
      out.back() += w * v(t);
    };
  } else if (!fourth) {
    // Neumann second-order: all nodes evolve; one-sided first-order boundary
    // stencils eliminate the ghosts.
    sys.dim = g.N + 2;
    sys.first_node = 0;
    sys.A = BandedMatrix::zero(sys.dim, 1, 1);
    const Cx w = scale / (h * h);
    for (int i = 0; i < sys.dim; ++i) {
      const bool edge = i == 0 || i == sys.dim - 1;
      sys.A.ref(i, i) = (edge ? -1.0 : -2.0) * w;
      if (i > 0) sys.A.ref(i, i - 1) = w;
      if (i + 1 < sys.dim) sys.A.ref(i, i + 1) = w;
    }
    const int dim = sys.dim;
    const Cx wh = scale / h;
    const TimeFunction du = left.data, dv = right.data;
    sys.forcing = [dim, wh, du, dv](double t, std::vector<Cx>& out) {
      out.assign(static_cast<size_t>(dim), Cx{0.0, 0.0});
      out.front() -= wh * du(t);
      out.back() += wh * dv(t);
    };
  } else {
    // Fourth-order Dirichlet: ghosts eliminated via the boundary trace of the
    // PDE, q(ghost) = 2u - q(first interior) + h^2 u' + (h^4/12) u''.
    sys.dim = g.N;
    sys.first_node = 1;
    sys.pin_left = left.data;
    sys.pin_right = right.data;
    require(sys.dim >= 2, ErrorCode::InvalidProblem,
            "fourth-order stencil needs at least two interior nodes");
    sys.A = BandedMatrix::zero(sys.dim, 2, 2);
    const Cx w = scale / (12.0 * h * h);
    for (int i = 0; i < sys.dim; ++i) {
      const bool edge = i == 0 || i == sys.dim - 1;
      sys.A.ref(i, i) = (edge ? -29.0 : -30.0) * w;
      if (i > 0) sys.A.ref(i, i - 1) = 16.0 * w;
      if (i + 1 < sys.dim) sys.A.ref(i, i + 1) = 16.0 * w;
      if (i > 1) sys.A.ref(i, i - 2) = -w;
      if (i + 2 < sys.dim) sys.A.ref(i, i + 2) = -w;
    }
    const int dim = sys.dim;
    const TimeFunction u = left.data, v = right.data;
    const TimeFunction udot = u.derivative(1), uddot = u.derivative(2);
    const TimeFunction vdot = v.derivative(1), vddot = v.derivative(2);
    const double h2 = h * h, h4 = h2 * h2;
    sys.forcing = [dim, w, h2, h4, u, v, udot, uddot, vdot, vddot](
                      double t, std::vector<Cx>& out) {
      out.assign(static_cast<size_t>(dim), Cx{0.0, 0.0});
      out[0] += w * (14.0 * u(t) - h2 * udot(t) - (h4 / 12.0) * uddot(t));
      out[1] += -w * u(t);
      out[static_cast<size_t>(dim) - 2] += -w * v(t);
      out[static_cast<size_t>(dim) - 1] +=
          w * (14.0 * v(t) - h2 * vdot(t) - (h4 / 12.0) * vddot(t));
    };
  }
  sys.initial_state = slice_state(spec.ic, sys.first_node, sys.dim);
  return sys;
}

}  // namespace

OdeSystem assemble_system(const ProblemSpec& spec) {
  const ValidationReport report = validate_discretization(spec);
  if (!report.accepted) {
    const ErrorCode code = report.reason == "unsupported-pair"
                               ? ErrorCode::UnsupportedDiscretization
                               : ErrorCode::InvalidProblem;
    fail(code, "assemble_system: " + report.message);
  }
  switch (spec.equation) {
    case EquationKind::AdvectionRight:
    case EquationKind::AdvectionLeft:
      return assemble_advection(spec);
    case EquationKind::Heat:
      if (spec.stencil == StencilKind::CenteredO4 &&
          spec.required_bc(Side::Left).kind == BcKind::Neumann)
        fail(ErrorCode::UnsupportedDiscretization,
             "fourth-order Neumann boundary closure is not implemented");
      return assemble_second_order(spec);
    case EquationKind::Schrodinger:
      return assemble_second_order(spec);
  }
  fail(ErrorCode::InvalidArgument, "assemble_system: unknown equation");
}

namespace {

BandedMatrix shifted_identity_minus(const BandedMatrix& A, double alpha) {
  BandedMatrix m = BandedMatrix::zero(A.n, A.kl, A.ku);
  for (size_t i = 0; i < m.data.size(); ++i) m.data[i] = -alpha * A.data[i];
  for (int i = 0; i < m.n; ++i) m.ref(i, i) += 1.0;
  return m;
}

std::vector<Cx> step_impl(const OdeSystem& sys, StepKind kind, double dt,
                          const std::vector<Cx>& Q, double t, const BandedLU* cached) {
  const size_t dim = Q.size();
  switch (kind) {
    case StepKind::FE: {
      std::vector<Cx> d = sys.rhs(Q, t);
      std::vector<Cx> out(Q);
      for (size_t i = 0; i < dim; ++i) out[i] += dt * d[i];
      return out;
    }
    case StepKind::RK4: {
      const std::vector<Cx> k1 = sys.rhs(Q, t);
      std::vector<Cx> tmp(dim);
      for (size_t i = 0; i < dim; ++i) tmp[i] = Q[i] + 0.5 * dt * k1[i];
      const std::vector<Cx> k2 = sys.rhs(tmp, t + 0.5 * dt);
      for (size_t i = 0; i < dim; ++i) tmp[i] = Q[i] + 0.5 * dt * k2[i];
      const std::vector<Cx> k3 = sys.rhs(tmp, t + 0.5 * dt);
      for (size_t i = 0; i < dim; ++i) tmp[i] = Q[i] + dt * k3[i];
      const std::vector<Cx> k4 = sys.rhs(tmp, t + dt);
      std::vector<Cx> out(Q);
      for (size_t i = 0; i < dim; ++i)
        out[i] += (dt / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
      return out;
    }
    case StepKind::BE: {
      std::vector<Cx> rhs(Q);
      const std::vector<Cx> g = sys.forcing_at(t + dt);
      for (size_t i = 0; i < dim; ++i) rhs[i] += dt * g[i];
      if (cached) return cached->solve(std::move(rhs));
      return factor_banded(shifted_identity_minus(sys.A, dt)).solve(std::move(rhs));
    }
    case StepKind::TR: {
      std::vector<Cx> rhs = sys.A.multiply(Q);
      const std::vector<Cx> g0 = sys.forcing_at(t);
      const std::vector<Cx> g1 = sys.forcing_at(t + dt);
      for (size_t i = 0; i < dim; ++i)
        rhs[i] = Q[i] + 0.5 * dt * (rhs[i] + g0[i] + g1[i]);
      if (cached) return cached->solve(std::move(rhs));
      return factor_banded(shifted_identity_minus(sys.A, 0.5 * dt)).solve(std::move(rhs));
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown stepper");
}

}  // namespace

std::vector<Cx> step(const OdeSystem& sys, const Stepper& stepper,
                     const std::vector<Cx>& Q, double t) {
  require(stepper.dt > 0.0, ErrorCode::InvalidArgument, "step size must be positive");
  require(static_cast<int>(Q.size()) == sys.dim, ErrorCode::InvalidArgument,
          "step: state size mismatch");
  return step_impl(sys, stepper.kind, stepper.dt, Q, t, nullptr);
}

SolutionField integrate(const OdeSystem& sys, const Stepper& stepper,
                        const std::vector<Cx>& Q0, double T, IntegrateStats* stats) {
  require(stepper.dt > 0.0, ErrorCode::InvalidArgument, "step size must be positive");
  require(T >= 0.0, ErrorCode::InvalidArgument, "final time must be nonnegative");
  require(static_cast<int>(Q0.size()) == sys.dim, ErrorCode::InvalidArgument,
          "integrate: state size mismatch");
  if (stats) *stats = IntegrateStats{};
  if (T == 0.0) return sys.reconstruct(Q0, 0.0);

  const double dt = stepper.dt;
  long long steps = static_cast<long long>(std::floor(T / dt + 1e-9));
  double rem = T - static_cast<double>(steps) * dt;
  if (rem <= 1e-12 * std::max(1.0, T)) rem = 0.0;

  const bool implicit = stepper.kind == StepKind::BE || stepper.kind == StepKind::TR;
  BandedLU cached;
  if (implicit && steps > 0)
    cached = factor_banded(
        shifted_identity_minus(sys.A, stepper.kind == StepKind::BE ? dt : 0.5 * dt));

  std::vector<Cx> Q(Q0);
  for (long long i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    Q = step_impl(sys, stepper.kind, dt, Q, t, implicit ? &cached : nullptr);
  }
  if (rem > 0.0)
    Q = step_impl(sys, stepper.kind, rem, Q, static_cast<double>(steps) * dt, nullptr);
  if (stats) {
    stats->full_steps = steps;
    stats->final_step = rem;
  }
  return sys.reconstruct(Q, T);
}

}  // namespace sdutm
