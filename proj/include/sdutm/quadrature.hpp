// Adaptive Gauss-Kronrod (7-15) quadrature for scalar and vector-valued
// complex integrands on real intervals.
#pragma once

#include "sdutm/types.hpp"

#include <functional>
#include <vector>

namespace sdutm {

struct QuadResult {
  Cx value{0.0, 0.0};
  double error = 0.0; // absolute error estimate
  int evals = 0;
  bool converged = false;
};

struct QuadOptions {
  double tol_abs = 1e-12;
  double tol_rel = 1e-10;
  int max_segments = 4000;
  // Initial breakpoints strictly inside (a, b); used to pre-split around
  // known oscillation scales before adaptivity starts.
  std::vector<double> breakpoints;
};

// Integrate f over [a, b], bisecting the segment with the largest error
// estimate until sum(err) <= tol_abs + tol_rel*|value| or the segment budget
// is exhausted (converged = false then; callers decide whether that is fatal).
QuadResult integrate_gk(const std::function<Cx(double)>& f, double a, double b,
                        const QuadOptions& opt = {});

struct VecQuadResult {
  std::vector<Cx> value;
  double error = 0.0; // max over components
  int evals = 0;
  bool converged = false;
};

// Vector-valued variant: f(x, out) fills out[0..dim-1].  All components share
// the segment subdivision; the error driving adaptivity is the worst
// component.  Used by the contour solvers, where every grid node shares the
// same quadrature points.
VecQuadResult integrate_gk_vec(const std::function<void(double, Cx*)>& f, int dim,
                               double a, double b, const QuadOptions& opt = {});

// Evenly spaced interior breakpoints giving ceil((b-a)/max_width) panels.
std::vector<double> panel_breakpoints(double a, double b, double max_width);

} // namespace sdutm
