#pragma once
// Small-time-increment expansion of the forward-advection solution for
// split-step use: the initial-condition weight series plus a polynomial
// boundary correction sum K_l(n) tau^l, free of quadrature.

#include "sdutm/problem.hpp"

#include <vector>

namespace sdutm {

// I_m(n) = integral of e^{ik(n-N)h} W(k)^m dk over one lattice period, in
// closed form; zero when m + n < N.
double moment_integral(int m, int n, const Grid& grid, double c);

// K_l(n) arrays for l = 1..order (order <= 3), built from the boundary data
// derivatives at t0.  K[l-1] is indexed by node n = 0..N+1 (boundary slot 0).
std::vector<std::vector<Cx>> smalltime_coefficients(const ProblemSpec& spec,
                                                    double t0, int order);

struct SmallTimeExpansion {
  ProblemSpec problem; // right-moving first-order advection problem
  double t0 = 0.0;
  int order = 3;
  std::vector<std::vector<Cx>> K;

  // phi-weight series at s = c tau / h plus sum_l K_l tau^l; tau >= 0.
  // Accuracy degrades past c tau / h ~ 1 (a warning is printed once).
  SolutionField evaluate(double tau) const;
};

SmallTimeExpansion make_smalltime_expansion(const ProblemSpec& spec, double t0,
                                            int order = 3);

// make_smalltime_expansion + evaluate in one call.
SolutionField smalltime_solve(const ProblemSpec& spec, double t0, double tau,
                              int order = 3);

} // namespace sdutm
