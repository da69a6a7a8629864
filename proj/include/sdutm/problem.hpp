// Problem description: grid, equation/stencil/BC enums, time-dependent boundary
// data, sampled initial conditions, and the ProblemSpec consumed by all solvers.
#pragma once

#include "sdutm/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sdutm {

// Uniform grid on [0, L] with nodes x_n = n h, n = 0..N+1, h = L/(N+1).
// n = 1..N are interior; n = 0 and n = N+1 sit on the boundary.
struct Grid {
  double L = 0.0;
  int N = 0;
  double h = 0.0;

  int num_nodes() const { return N + 2; }
  double x(int n) const { return n * h; }
  std::vector<double> nodes() const;
};

Grid make_grid(double L, int N);

enum class EquationKind {
  AdvectionRight, // q_t = +c q_x, c > 0 (leftward-travelling solutions)
  AdvectionLeft,  // q_t = -c q_x, c > 0
  Heat,           // q_t = q_xx
  Schrodinger,    // q_t = (i/2) q_xx (free linear Schroedinger)
};

enum class StencilKind {
  ForwardO1,  // (q_{n+1} - q_n)/h
  ForwardO2,  // (-3 q_n + 4 q_{n+1} - q_{n+2})/(2h)
  BackwardO1, // (q_n - q_{n-1})/h
  BackwardO2, // (3 q_n - 4 q_{n-1} + q_{n-2})/(2h)
  CenteredO2, // second derivative, 3-point
  CenteredO4, // second derivative, 5-point
};

const char* equation_name(EquationKind e);
const char* stencil_name(StencilKind s);

// Scalar function of time with analytic derivatives where the structure allows.
// Closed forms (constant, polynomial * exponential, sinusoid) are recognized by
// the exact time-transform evaluators; everything else goes through quadrature.
class TimeFunction {
public:
  enum class Form { Zero, Constant, PolyExp, Sinusoid, General };

  TimeFunction() : form_(Form::Zero) {}

  static TimeFunction zero() { return TimeFunction(); }
  static TimeFunction constant(Cx value);
  // (sum_m coeffs[m] t^m) * exp(alpha t)
  static TimeFunction poly_exp(std::vector<Cx> coeffs, Cx alpha);
  // amplitude * sin(omega t + phase)
  static TimeFunction sinusoid(Cx amplitude, double omega, double phase);
  static TimeFunction general(std::function<Cx(double)> f,
                              std::function<Cx(double)> df = {},
                              std::function<Cx(double)> d2f = {});

  Cx operator()(double t) const;
  Form form() const { return form_; }
  bool is_zero() const { return form_ == Form::Zero; }
  bool is_constant() const { return form_ == Form::Zero || form_ == Form::Constant; }
  Cx constant_value() const; // valid for Zero/Constant

  // Highest derivative order available analytically (2 for General with both
  // callbacks, effectively unbounded for closed forms; 0 means values only).
  int derivative_order() const;
  // The derivative as a TimeFunction; throws DerivativesRequired past
  // derivative_order().
  TimeFunction derivative(int order = 1) const;

  // Closed-form accessors (valid for the matching form only).
  const std::vector<Cx>& poly_coeffs() const { return coeffs_; }
  Cx exp_rate() const { return alpha_; }
  Cx sin_amplitude() const { return amplitude_; }
  double sin_omega() const { return omega_; }
  double sin_phase() const { return phase_; }

private:
  Form form_;
  std::vector<Cx> coeffs_; // PolyExp coefficients; Constant uses coeffs_[0]
  Cx alpha_{0.0, 0.0};
  Cx amplitude_{0.0, 0.0};
  double omega_ = 0.0;
  double phase_ = 0.0;
  std::function<Cx(double)> f_, df_, d2f_;
};

enum class BcKind { Dirichlet, Neumann };
enum class Side { Left, Right };

const char* bc_kind_name(BcKind k);
const char* side_name(Side s);

struct BoundaryCondition {
  Side side = Side::Left;
  BcKind kind = BcKind::Dirichlet;
  TimeFunction data; // q (Dirichlet) or q_x (Neumann) as a function of t

  static BoundaryCondition dirichlet(Side s, TimeFunction f) {
    return {s, BcKind::Dirichlet, std::move(f)};
  }
  static BoundaryCondition neumann(Side s, TimeFunction f) {
    return {s, BcKind::Neumann, std::move(f)};
  }
};

// Nodal samples phi_n, n = 0..N+1 (the solution formulas consume only samples).
struct InitialCondition {
  std::vector<Cx> values;

  int size() const { return static_cast<int>(values.size()); }
  Cx operator[](int n) const { return values[static_cast<size_t>(n)]; }
};

InitialCondition sample_initial(const std::function<Cx(double)>& phi, const Grid& grid);

struct ProblemSpec {
  std::string name; // optional label used in reports
  EquationKind equation = EquationKind::Heat;
  StencilKind stencil = StencilKind::CenteredO2;
  double c = 1.0; // advection speed; unused for heat/Schroedinger
  Grid grid;
  InitialCondition ic;
  std::vector<BoundaryCondition> bcs;

  // nullptr when no condition is attached to that side.
  const BoundaryCondition* bc(Side s) const;
  // The condition on the given side; throws InvalidProblem when absent.
  const BoundaryCondition& required_bc(Side s) const;
};

// Nodal solution snapshot over all N+2 nodes at one time.
struct SolutionField {
  Grid grid;
  double time = 0.0;
  std::vector<Cx> values; // size grid.num_nodes()

  Cx& operator[](int n) { return values[static_cast<size_t>(n)]; }
  const Cx& operator[](int n) const { return values[static_cast<size_t>(n)]; }
};

double max_abs_diff(const SolutionField& a, const SolutionField& b);

} // namespace sdutm
