#pragma once
// Independent ground truth: closed-form PDE solutions, separation-of-variables
// series, and a dense matrix-exponential integrator for the semidiscrete
// systems.

#include "sdutm/fd.hpp"
#include "sdutm/problem.hpp"

#include <functional>
#include <string>

namespace sdutm {

struct ExactSolution {
  std::function<Cx(double, double)> eval;  // (x, t) -> value
  std::string domain;                      // human-readable validity note

  Cx operator()(double x, double t) const { return eval(x, t); }
};

// Right-boundary-driven transport: data translates leftward with speed c, so
// the value at (x, T) is either the initial profile shifted or the boundary
// history.
ExactSolution advection_traveling_wave(std::function<Cx(double)> phi, TimeFunction v0,
                                       double c, double L);

// Closed form for the constant-BC heat example q = 2x + sin(5 pi x) e^{-25 pi^2 t}.
ExactSolution heat_dirichlet_example();

// Eigenfunction expansion for heat/Schroedinger with constant Dirichlet values
// or constant Neumann fluxes; mode coefficients computed by quadrature against
// the initial profile minus the steady/particular part.
ExactSolution separation_series(EquationKind equation, std::function<Cx(double)> phi,
                                const BoundaryCondition& left,
                                const BoundaryCondition& right, double L, int modes);

// Q(T) for dQ/dt = A Q + g with constant g, via the augmented matrix
// exponential exp([[A, g], [0, 0]] T).
std::vector<Cx> expm_solve(const OdeSystem& sys, const std::vector<Cx>& Q0, double T);

// High-resolution RK4 reference (dt = 1e-6 T) for systems whose forcing varies
// in time.
std::vector<Cx> rk4_reference(const OdeSystem& sys, const std::vector<Cx>& Q0, double T);

// Samples an exact solution on the nodes of a grid.
SolutionField sample_exact(const ExactSolution& exact, const Grid& grid, double t);

}  // namespace sdutm
