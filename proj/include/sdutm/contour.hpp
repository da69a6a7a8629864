// Deformed complex integration paths and adaptive quadrature evaluation of
// the SD-UTM integral representations (Dirichlet problems: heat at second and
// fourth order, linear Schrodinger at second order).
#pragma once

#include "sdutm/dispersion.hpp"
#include "sdutm/problem.hpp"

#include <functional>
#include <vector>

namespace sdutm {

enum class Halfplane { Upper, Lower };

// One smooth oriented piece of a contour: s in [0,1] -> k(s), with the
// analytic derivative dk/ds used for the change of variable in path
// integrals.  Re k(s) is monotone along every segment built here, which the
// solvers rely on when projecting real-line singularities onto the path.
struct ContourSegment {
  std::function<Cx(double)> map;
  std::function<Cx(double)> deriv;
};

// Piecewise path from Re k = -pi/h to Re k = +pi/h, displaced off the real
// axis.  Both endpoints sit at the same |Im k|, so two such paths in the same
// half-plane always enclose a singularity-free region and give identical
// integrals (the vertical closing segments cancel by 2pi/h-periodicity).
struct ContourPath {
  std::vector<ContourSegment> segments; // ordered left to right
  Halfplane halfplane = Halfplane::Upper;
  double delta = 0.0;  // offset of the shallow portion off the real axis
  double height = 0.0; // cap / apex height actually used
  Cx start() const { return segments.front().map(0.0); }
  Cx end() const { return segments.back().map(1.0); }
};

// Offset used when the caller does not supply one: a quarter of the spacing
// pi/L between the real-line singularities, scaled by h.  For Schrodinger the
// offset is additionally capped by h/(2T) so that |e^{-WT}| stays below
// exp(1/2) on the shallow portion, where that factor grows with height.
double default_contour_offset(const DispersionModel& model, double L, double T);

// Cap height making |e^{-W(k)T}| negligible (~1e-16) where the truncation
// cap meets the climbing branch, for the heat-type models; pi/h (the apex of
// the Schrodinger path) otherwise, where extra height adds no decay.
double default_truncation_height(const DispersionModel& model, double delta,
                                 double T);

// Piecewise path through the region where the damped integrand stays bounded:
//   heat CenteredO2:  flat run at height delta over the real-line
//     singularities, straight branches climbing just outside the growth lobe
//     (|Re k| in [0.55, 0.68]*pi/h; the lobe's vertical asymptotes are at
//     +-pi/(2h)), horizontal caps at the truncation height out to +-pi/h;
//   heat CenteredO4:  same shape with branches inside |Re k| in
//     [0.80, 0.92]*pi/h, the band where this dispersion relation decays at
//     every height;
//   Schrodinger CenteredO2:  straight diagonal from (-pi/h, ~delta/2) to the
//     apex (0, truncation), down the imaginary axis to (0, delta), then a
//     monotonically decaying approach to (pi/h, ~delta/2).  The decaying leg
//     (and, mirrored, the diagonal) keeps the side where |e^{-WT}| grows with
//     height at |Im k| <= delta.
// The lower-halfplane path is the mirror image (heat: reflection through the
// real axis; Schrodinger: point reflection through the origin, so the shallow
// leg swaps sides to follow the growth region).
// pre: 0 < delta < pi/(4h), truncation > 2*delta.
ContourPath build_contour(const DispersionModel& model, Halfplane halfplane,
                          double delta, double truncation);

// q_n(T) for heat / CenteredO2 / Dirichlet-Dirichlet via the three-integral
// representation: real-line initial-condition integral plus one integral
// along each of the two deformed paths, every piece evaluated by adaptive
// Gauss-Kronrod quadrature with node-shared subdivision.  Throws
// AccuracyFailure when a quadrature cannot reach its share of tol.
SolutionField heat_dirichlet_integral(const ProblemSpec& spec, double T,
                                      const ContourPath& upper,
                                      const ContourPath& lower,
                                      double tol = 1e-8);

// Same representation for Schrodinger / CenteredO2 / Dirichlet-Dirichlet.
SolutionField ls_dirichlet_integral(const ProblemSpec& spec, double T,
                                    const ContourPath& upper,
                                    const ContourPath& lower,
                                    double tol = 1e-8);

// Heat / CenteredO4 / Dirichlet-Dirichlet.  On top of the initial-condition
// brackets this adds boundary terms weighted by the wide-stencil flux factor
// and by h*u' + (h^3/12)*u'' (same on the right with v), so both boundary
// functions must expose first and second derivatives; otherwise throws
// DerivativesRequired.
SolutionField heat4_dirichlet_integral(const ProblemSpec& spec, double T,
                                       const ContourPath& upper,
                                       const ContourPath& lower,
                                       double tol = 1e-8);

// Convenience overloads building default paths for the given problem.
SolutionField heat_dirichlet_integral(const ProblemSpec& spec, double T,
                                      double tol = 1e-8);
SolutionField ls_dirichlet_integral(const ProblemSpec& spec, double T,
                                    double tol = 1e-8);
SolutionField heat4_dirichlet_integral(const ProblemSpec& spec, double T,
                                       double tol = 1e-8);

// Dispatch on (equation, stencil): heat -> second- or fourth-order heat
// solver, Schrodinger -> the Schrodinger solver.  Advection and Neumann
// problems have no integral representation here and throw
// UnsupportedDiscretization.
SolutionField integral_solve(const ProblemSpec& spec, double T,
                             double tol = 1e-8);

} // namespace sdutm
