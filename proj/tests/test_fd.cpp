// Banded solver correctness, system assembly row checks, and stepper behavior.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sdutm/fd.hpp"

#include <cmath>
#include <random>

using namespace sdutm;

namespace {

const Cx I{0.0, 1.0};

double inf_norm(const std::vector<Cx>& v) {
  double m = 0.0;
  for (const Cx& x : v) m = std::max(m, std::abs(x));
  return m;
}

double l2h(const std::vector<Cx>& v, double h) {
  double s = 0.0;
  for (const Cx& x : v) s += std::norm(x);
  return std::sqrt(s * h);
}

BandedMatrix random_banded(int n, int kl, int ku, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BandedMatrix A = BandedMatrix::zero(n, kl, ku);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j)
      A.ref(i, j) = Cx{u(rng), u(rng)} + (i == j ? Cx{3.0, 0.0} : Cx{0.0, 0.0});
  return A;
}

ProblemSpec base_spec(EquationKind eq, StencilKind st, double L, int N) {
  ProblemSpec spec;
  spec.name = "test";
  spec.equation = eq;
  spec.stencil = st;
  spec.c = 1.0;
  spec.grid = make_grid(L, N);
  spec.ic.values.assign(static_cast<size_t>(spec.grid.num_nodes()), Cx{0.0, 0.0});
  return spec;
}

}  // namespace

TEST_CASE("banded matrix storage and multiply") {
  BandedMatrix A = BandedMatrix::zero(3, 1, 1);
  A.ref(0, 0) = 2.0;
  A.ref(0, 1) = -1.0;
  A.ref(1, 0) = 3.0;
  A.ref(1, 1) = 4.0;
  A.ref(1, 2) = 5.0;
  A.ref(2, 1) = -2.0;
  A.ref(2, 2) = 1.0;
  CHECK(A.at(0, 2) == Cx{0.0, 0.0});
  CHECK(A.at(2, 0) == Cx{0.0, 0.0});
  const auto y = A.multiply({Cx{1.0, 0.0}, Cx{2.0, 0.0}, Cx{3.0, 0.0}});
  CHECK(std::abs(y[0] - Cx{0.0, 0.0}) < 1e-15);
  CHECK(std::abs(y[1] - Cx{26.0, 0.0}) < 1e-15);
  CHECK(std::abs(y[2] - Cx{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("banded LU solves random systems to 1e-12") {
  for (const auto& [n, kl, ku] :
       {std::tuple{60, 2, 2}, std::tuple{60, 1, 1}, std::tuple{1, 0, 0},
        std::tuple{7, 2, 1}}) {
    const BandedMatrix A = random_banded(n, kl, ku, 1000u + static_cast<unsigned>(n + kl));
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Cx> b(static_cast<size_t>(n));
    for (auto& x : b) x = Cx{u(rng), u(rng)};
    const auto lu = factor_banded(A);
    const auto x = lu.solve(b);
    auto r = A.multiply(x);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    CHECK(inf_norm(r) < 1e-12 * (1.0 + inf_norm(b)));
  }
}

TEST_CASE("banded LU needs pivoting for zero leading pivot") {
  BandedMatrix A = BandedMatrix::zero(2, 1, 1);
  A.ref(0, 0) = 0.0;
  A.ref(0, 1) = 1.0;
  A.ref(1, 0) = 1.0;
  A.ref(1, 1) = 1.0;
  const auto x = factor_banded(A).solve({Cx{2.0, 0.0}, Cx{5.0, 0.0}});
  CHECK(std::abs(x[0] - Cx{3.0, 0.0}) < 1e-14);
  CHECK(std::abs(x[1] - Cx{2.0, 0.0}) < 1e-14);

  const BandedMatrix zero = BandedMatrix::zero(3, 1, 1);
  CHECK_THROWS_WITH_AS(static_cast<void>(factor_banded(zero)),
                       doctest::Contains("singular"), SolverError);
}

TEST_CASE("heat Dirichlet assembly matches the tridiagonal form") {
  ProblemSpec spec = base_spec(EquationKind::Heat, StencilKind::CenteredO2, 1.0, 3);
  spec.bcs = {BoundaryCondition::dirichlet(Side::Left,
                                           TimeFunction::poly_exp({Cx{0.0, 0.0}, Cx{2.0, 0.0}},
                                                                  Cx{0.0, 0.0})),
              BoundaryCondition::dirichlet(Side::Right, TimeFunction::constant(Cx{3.0, 0.0}))};
  const OdeSystem sys = assemble_system(spec);
  const double w = 16.0;  // 1/h^2 with h = 0.25
  CHECK(sys.dim == 3);
  CHECK(sys.first_node == 1);
  CHECK(std::abs(sys.A.at(0, 0) - Cx{-2.0 * w, 0.0}) < 1e-13);
  CHECK(std::abs(sys.A.at(0, 1) - Cx{w, 0.0}) < 1e-13);
  CHECK(std::abs(sys.A.at(1, 0) - Cx{w, 0.0}) < 1e-13);
  CHECK(std::abs(sys.A.at(1, 2) - Cx{w, 0.0}) < 1e-13);
  CHECK(std::abs(sys.A.at(2, 2) - Cx{-2.0 * w, 0.0}) < 1e-13);
  const auto g = sys.forcing_at(1.5);
  CHECK(std::abs(g[0] - Cx{3.0 * w, 0.0}) < 1e-12);  // u(1.5) = 2 * 1.5
  CHECK(std::abs(g[1]) == 0.0);
  CHECK(std::abs(g[2] - Cx{3.0 * w, 0.0}) < 1e-12);
  CHECK_FALSE(sys.forcing_constant);
}

TEST_CASE("advection first-order assembly is upper bidiagonal") {
  ProblemSpec spec = base_spec(EquationKind::AdvectionRight, StencilKind::ForwardO1, 1.0, 3);
  spec.c = 2.0;
  spec.bcs = {BoundaryCondition::dirichlet(Side::Right, TimeFunction::constant(Cx{5.0, 0.0}))};
  const OdeSystem sys = assemble_system(spec);
  const double r = spec.c / spec.grid.h;
  CHECK(sys.dim == 4);
  CHECK(sys.first_node == 0);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(sys.A.at(i, i) - Cx{-r, 0.0}) < 1e-13);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(sys.A.at(i, i + 1) - Cx{r, 0.0}) < 1e-13);
  const auto g = sys.forcing_at(0.3);
  CHECK(std::abs(g[0]) == 0.0);
  CHECK(std::abs(g[1]) == 0.0);
  CHECK(std::abs(g[2]) == 0.0);
  CHECK(std::abs(g[3] - Cx{5.0 * r, 0.0}) < 1e-12);
  CHECK(sys.forcing_constant);
  // Rows away from the boundary annihilate constants.
  for (int i = 0; i < 3; ++i) {
    Cx s{0.0, 0.0};
    for (int j = 0; j < 4; ++j) s += sys.A.at(i, j);
    CHECK(std::abs(s) < 1e-13);
  }
}

TEST_CASE("heat Neumann assembly uses one-sided boundary rows") {
  ProblemSpec spec = base_spec(EquationKind::Heat, StencilKind::CenteredO2, 1.0, 3);
  spec.bcs = {BoundaryCondition::neumann(Side::Left, TimeFunction::constant(Cx{2.0, 0.0})),
              BoundaryCondition::neumann(Side::Right, TimeFunction::constant(Cx{7.0, 0.0}))};
  const OdeSystem sys = assemble_system(spec);
  const double h = spec.grid.h, w = 1.0 / (h * h);
  CHECK(sys.dim == 5);
  CHECK(sys.first_node == 0);
  CHECK(std::abs(sys.A.at(0, 0) - Cx{-w, 0.0}) < 1e-12);
  CHECK(std::abs(sys.A.at(0, 1) - Cx{w, 0.0}) < 1e-12);
  CHECK(std::abs(sys.A.at(4, 4) - Cx{-w, 0.0}) < 1e-12);
  CHECK(std::abs(sys.A.at(2, 2) - Cx{-2.0 * w, 0.0}) < 1e-12);
  const auto g = sys.forcing_at(0.0);
  CHECK(std::abs(g[0] - Cx{-2.0 / h, 0.0}) < 1e-12);
  CHECK(std::abs(g[4] - Cx{7.0 / h, 0.0}) < 1e-12);
  CHECK(std::abs(g[2]) == 0.0);
}

TEST_CASE("fourth-order heat assembly: band entries and boundary forcing") {
  ProblemSpec spec = base_spec(EquationKind::Heat, StencilKind::CenteredO4, 1.0, 5);
  spec.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::constant(Cx{1.0, 0.0})),
              BoundaryCondition::dirichlet(Side::Right, TimeFunction::constant(Cx{4.0, 0.0}))};
  const OdeSystem sys = assemble_system(spec);
  const double h = spec.grid.h, w = 1.0 / (12.0 * h * h);
  CHECK(sys.dim == 5);
  CHECK(std::abs(sys.A.at(0, 0) - Cx{-29.0 * w, 0.0}) < 1e-10);
  CHECK(std::abs(sys.A.at(1, 1) - Cx{-30.0 * w, 0.0}) < 1e-10);
  CHECK(std::abs(sys.A.at(2, 0) - Cx{-w, 0.0}) < 1e-10);
  CHECK(std::abs(sys.A.at(1, 0) - Cx{16.0 * w, 0.0}) < 1e-10);
  const auto g = sys.forcing_at(0.0);
  CHECK(std::abs(g[0] - Cx{14.0 * w, 0.0}) < 1e-10);      // left closure row
  CHECK(std::abs(g[1] - Cx{-w, 0.0}) < 1e-10);            // touches pinned left node
  CHECK(std::abs(g[3] - Cx{-4.0 * w, 0.0}) < 1e-10);
  CHECK(std::abs(g[4] - Cx{14.0 * 4.0 * w, 0.0}) < 1e-10);
}

TEST_CASE("schrodinger assembly carries the i/2 scale") {
  ProblemSpec spec = base_spec(EquationKind::Schrodinger, StencilKind::CenteredO2, 1.0, 4);
  spec.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
              BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  const OdeSystem sys = assemble_system(spec);
  const double w = 1.0 / (spec.grid.h * spec.grid.h);
  CHECK(std::abs(sys.A.at(1, 1) - Cx{0.0, -w}) < 1e-12);
  CHECK(std::abs(sys.A.at(1, 2) - Cx{0.0, 0.5 * w}) < 1e-12);
}

TEST_CASE("constant states are stationary for matching boundary data") {
  const Cx C{2.0, 0.5};
  struct Case {
    EquationKind eq;
    StencilKind st;
    std::vector<BoundaryCondition> bcs;
  };
  const std::vector<Case> cases = {
      {EquationKind::AdvectionRight, StencilKind::ForwardO1,
       {BoundaryCondition::dirichlet(Side::Right, TimeFunction::constant(C))}},
      {EquationKind::AdvectionRight, StencilKind::ForwardO2,
       {BoundaryCondition::dirichlet(Side::Right, TimeFunction::constant(C))}},
      {EquationKind::AdvectionLeft, StencilKind::BackwardO1,
       {BoundaryCondition::dirichlet(Side::Left, TimeFunction::constant(C))}},
      {EquationKind::AdvectionLeft, StencilKind::BackwardO2,
       {BoundaryCondition::dirichlet(Side::Left, TimeFunction::constant(C))}},
      {EquationKind::Heat, StencilKind::CenteredO2,
       {BoundaryCondition::dirichlet(Side::Left, TimeFunction::constant(C)),
        BoundaryCondition::dirichlet(Side::Right, TimeFunction::constant(C))}},
      {EquationKind::Heat, StencilKind::CenteredO2,
       {BoundaryCondition::neumann(Side::Left, TimeFunction::zero()),
        BoundaryCondition::neumann(Side::Right, TimeFunction::zero())}},
      {EquationKind::Heat, StencilKind::CenteredO4,
       {BoundaryCondition::dirichlet(Side::Left, TimeFunction::constant(C)),
        BoundaryCondition::dirichlet(Side::Right, TimeFunction::constant(C))}},
      {EquationKind::Schrodinger, StencilKind::CenteredO2,
       {BoundaryCondition::dirichlet(Side::Left, TimeFunction::constant(C)),
        BoundaryCondition::dirichlet(Side::Right, TimeFunction::constant(C))}},
      {EquationKind::Schrodinger, StencilKind::CenteredO2,
       {BoundaryCondition::neumann(Side::Left, TimeFunction::zero()),
        BoundaryCondition::neumann(Side::Right, TimeFunction::zero())}},
  };
  for (const Case& cs : cases) {
    ProblemSpec spec = base_spec(cs.eq, cs.st, 1.0, 7);
    spec.bcs = cs.bcs;
    for (auto& v : spec.ic.values) v = C;
    const OdeSystem sys = assemble_system(spec);
    std::vector<Cx> ones(static_cast<size_t>(sys.dim), C);
    const auto d = sys.rhs(ones, 0.7);
    CHECK(inf_norm(d) < 1e-10);  // scale ~ 1/h^2 = 64 here
    CHECK(sys.forcing_constant);
  }
}

TEST_CASE("assembly rejects unsupported combinations") {
  ProblemSpec heat4nn = base_spec(EquationKind::Heat, StencilKind::CenteredO4, 1.0, 7);
  heat4nn.bcs = {BoundaryCondition::neumann(Side::Left, TimeFunction::zero()),
                 BoundaryCondition::neumann(Side::Right, TimeFunction::zero())};
  try {
    assemble_system(heat4nn);
    CHECK(false);
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDiscretization);
  }

  ProblemSpec advc = base_spec(EquationKind::AdvectionRight, StencilKind::CenteredO2, 1.0, 7);
  advc.bcs = {BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  CHECK_THROWS_AS(static_cast<void>(assemble_system(advc)), SolverError);
}

TEST_CASE("stepper algebra on a scalar system") {
  // 1x1 system dq/dt = a q + b with constant forcing has hand-checkable steps.
  const Cx a{-2.0, 1.0}, b{0.3, -0.1}, q0{1.0, 0.5};
  OdeSystem sys;
  sys.A = BandedMatrix::zero(1, 0, 0);
  sys.A.ref(0, 0) = a;
  sys.dim = 1;
  sys.grid = make_grid(1.0, 1);
  sys.forcing = [b](double, std::vector<Cx>& out) { out.assign(1, b); };
  const double dt = 0.01;

  const auto fe = step(sys, {StepKind::FE, dt}, {q0}, 0.0);
  CHECK(std::abs(fe[0] - (q0 + dt * (a * q0 + b))) < 1e-15);

  const auto be = step(sys, {StepKind::BE, dt}, {q0}, 0.0);
  CHECK(std::abs(be[0] - (q0 + dt * b) / (1.0 - dt * a)) < 1e-15);

  const auto tr = step(sys, {StepKind::TR, dt}, {q0}, 0.0);
  CHECK(std::abs(tr[0] - (q0 + 0.5 * dt * (a * q0 + 2.0 * b)) / (1.0 - 0.5 * dt * a)) <
        1e-15);

  // RK4 one-step defect against the exact solution is O(dt^5).
  const Cx exact = std::exp(a * dt) * (q0 + b / a) - b / a;
  const auto rk = step(sys, {StepKind::RK4, dt}, {q0}, 0.0);
  CHECK(std::abs(rk[0] - exact) < 1e-9 * std::abs(exact));
  CHECK(std::abs(fe[0] - exact) < 2.0 * std::abs(a * a * q0) * dt * dt);
}

TEST_CASE("forward Euler heat amplification at the stability boundary") {
  const int N = 99;
  const Grid g = make_grid(1.0, N);
  const double h = g.h;
  double max_amp_05 = 0.0, max_amp_06 = 0.0;
  for (int l = 1; l <= N; ++l) {
    const double lambda = -4.0 * std::pow(std::sin(kPi * l * h / 2.0), 2.0) / (h * h);
    max_amp_05 = std::max(max_amp_05, std::abs(1.0 + 0.5 * h * h * lambda));
    max_amp_06 = std::max(max_amp_06, std::abs(1.0 + 0.6 * h * h * lambda));
  }
  CHECK(max_amp_05 <= 1.0 + 1e-14);
  CHECK(max_amp_05 > 0.999);
  CHECK(max_amp_06 > 1.3);
}

TEST_CASE("forward Euler grows a seeded high mode beyond the stable step") {
  ProblemSpec spec = base_spec(EquationKind::Heat, StencilKind::CenteredO2, 1.0, 63);
  spec.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
              BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  const OdeSystem sys = assemble_system(spec);
  const Grid& g = spec.grid;
  std::vector<Cx> seed(static_cast<size_t>(sys.dim));
  for (int i = 0; i < sys.dim; ++i)
    seed[static_cast<size_t>(i)] = std::sin(kPi * g.N * (i + 1) * g.h / g.L);
  const double n0 = l2h(seed, g.h);

  auto run = [&](double ratio) {
    std::vector<Cx> q(seed);
    const double dt = ratio * g.h * g.h;
    for (int s = 0; s < 500; ++s) q = step(sys, {StepKind::FE, dt}, q, s * dt);
    return l2h(q, g.h);
  };
  CHECK(run(0.6) > 1e3 * n0);
  CHECK(run(0.4) <= n0);
}

TEST_CASE("zero data gives a zero trajectory") {
  ProblemSpec spec = base_spec(EquationKind::Heat, StencilKind::CenteredO2, 1.0, 15);
  spec.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
              BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  const OdeSystem sys = assemble_system(spec);
  for (StepKind k : {StepKind::FE, StepKind::RK4, StepKind::BE, StepKind::TR}) {
    const SolutionField f = integrate(sys, {k, 1e-3}, sys.initial_state, 0.05);
    CHECK(inf_norm(f.values) == 0.0);
  }
}

TEST_CASE("trapezoidal rule conserves the discrete norm for schrodinger") {
  ProblemSpec spec = base_spec(EquationKind::Schrodinger, StencilKind::CenteredO2, 1.0, 40);
  spec.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
              BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  const OdeSystem sys = assemble_system(spec);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Cx> q(static_cast<size_t>(sys.dim));
  for (auto& x : q) x = Cx{u(rng), u(rng)};
  const double n0 = l2h(q, spec.grid.h);
  const double dt = 1e-3;
  for (int s = 0; s < 100; ++s) {
    q = step(sys, {StepKind::TR, dt}, q, s * dt);
    CHECK(std::abs(l2h(q, spec.grid.h) - n0) < 1e-10);
  }
}

TEST_CASE("backward Euler is contractive for heat with zero boundaries") {
  ProblemSpec spec = base_spec(EquationKind::Heat, StencilKind::CenteredO2, 1.0, 30);
  spec.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
              BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  const OdeSystem sys = assemble_system(spec);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Cx> q(static_cast<size_t>(sys.dim));
  for (auto& x : q) x = Cx{u(rng), 0.0};
  double prev = l2h(q, spec.grid.h);
  for (int s = 0; s < 50; ++s) {
    q = step(sys, {StepKind::BE, 5e-3}, q, s * 5e-3);
    const double cur = l2h(q, spec.grid.h);
    CHECK(cur <= prev + 1e-14);
    prev = cur;
  }
}

TEST_CASE("integrate matches repeated steps and records partial steps") {
  ProblemSpec spec = base_spec(EquationKind::AdvectionRight, StencilKind::ForwardO1, 1.0, 20);
  spec.bcs = {BoundaryCondition::dirichlet(
      Side::Right, TimeFunction::sinusoid(Cx{1.0, 0.0}, 3.0, 0.2))};
  spec.ic = sample_initial([](double x) { return Cx{std::sin(2.0 * x), 0.0}; }, spec.grid);
  const OdeSystem sys = assemble_system(spec);

  const double dt = 1e-2;
  std::vector<Cx> manual(sys.initial_state);
  for (int s = 0; s < 8; ++s) manual = step(sys, {StepKind::RK4, dt}, manual, s * dt);
  IntegrateStats stats;
  const SolutionField f = integrate(sys, {StepKind::RK4, dt}, sys.initial_state,
                                    8 * dt, &stats);
  CHECK(stats.full_steps == 8);
  CHECK(stats.final_step == 0.0);
  for (int i = 0; i < sys.dim; ++i)
    CHECK(std::abs(f.values[static_cast<size_t>(i)] - manual[static_cast<size_t>(i)]) <
          1e-13);
  // The pinned boundary node reports the boundary value at T.
  CHECK(std::abs(f.values.back() - (*sys.pin_right)(8 * dt)) < 1e-15);

  IntegrateStats stats2;
  const SolutionField g = integrate(sys, {StepKind::BE, dt}, sys.initial_state,
                                    10.5 * dt, &stats2);
  CHECK(stats2.full_steps == 10);
  CHECK(stats2.final_step == doctest::Approx(0.5 * dt).epsilon(1e-9));
  CHECK(g.time == doctest::Approx(10.5 * dt));
}
