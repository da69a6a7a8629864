#pragma once
// Series-form SD-UTM solvers: quadrature-free eigenmode sums for heat and
// Schroedinger problems, Poisson-type weight sums for upwinded advection.

#include "sdutm/problem.hpp"

#include <vector>

namespace sdutm {

struct SeriesSolveOptions {
  bool log_domain = true;  // factorial/power products via log-gamma (safe for large cT/h)
};

SolutionField advection_forward_series(const ProblemSpec& spec, double T,
                                       const SeriesSolveOptions& opt = {});
SolutionField advection_forward2_series(const ProblemSpec& spec, double T,
                                        const SeriesSolveOptions& opt = {});
SolutionField heat_dirichlet_series(const ProblemSpec& spec, double T);
SolutionField heat_neumann_series(const ProblemSpec& spec, double T);
SolutionField ls_dirichlet_series(const ProblemSpec& spec, double T);
SolutionField ls_neumann_series(const ProblemSpec& spec, double T);

// Dispatches to the matching series solver; left-moving advection is solved by
// reflecting onto the forward form and reflecting back.
SolutionField series_solve(const ProblemSpec& spec, double T,
                           const SeriesSolveOptions& opt = {});

// Weight vectors underlying the advection series; exposed for validation.
// poisson_weights[m] = e^{-s} s^m / m!.
std::vector<double> poisson_weights(double s, int count, bool log_domain = true);
// advection2_weights[m] = [z^m] e^{-s(3 - 4z + z^2)}, by three-term recurrence.
std::vector<double> advection2_weights(double s, int count);
// Same coefficients by discrete Fourier inversion (independent cross-check).
std::vector<double> advection2_weights_dft(double s, int count);
// E_m(S) = integral of advection2_weights[m](sigma) over sigma in [0, S].
std::vector<double> advection2_cumulative_integrals(double S, int count);

// Ghost value g_1 = g_0 + h V'/c + h^2 V''/(2 c^2) closing the second-order
// forward scheme at the inflow end.  The same value satisfies both the
// centered and the one-sided discretizations of the derivative conditions;
// the test suite checks the two residuals directly.
Cx advection2_g1_closure(Cx g0, Cx Vdot, Cx Vddot, double h, double c);

}  // namespace sdutm
