// Semidiscrete dispersion relations W(k), their symmetries nu_j(k), and the
// stencil/boundary-condition compatibility rules solvers enforce.
#pragma once

#include "sdutm/problem.hpp"

#include <string>
#include <vector>

namespace sdutm {

struct DispersionModel {
  EquationKind equation = EquationKind::Heat;
  StencilKind stencil = StencilKind::CenteredO2;
  double h = 0.0;
  double c = 1.0; // advection speed (ignored for heat/Schroedinger)

  // Exponential time rate attached to the lattice mode e^{iknh} e^{-W(k)t}.
  Cx W(Cx k) const;
  // Continuum-limit rate for the same equation (advection: -+cik, heat: k^2,
  // Schroedinger: ik^2/2), used by consistency tests.
  Cx continuum_W(Cx k) const;

  // Maps nu_j with W(nu_j(k)) = W(k).  Index 0 is the identity.
  int num_symmetries() const;
  Cx symmetry(int j, Cx k) const;

  // Formal accuracy order of the stencil.
  int order() const;
};

DispersionModel make_dispersion(EquationKind equation, StencilKind stencil, double h,
                                double c = 1.0);

// Sign of Re(-W(k)): +1 where the mode grows under e^{-W t}, -1 where it
// decays, 0 on the boundary curve (to a relative tolerance).  Contour builders
// use this to keep paths inside bounded-integrand regions.
int growth_region_sign(const DispersionModel& model, Cx k);

struct ValidationReport {
  bool accepted = false;
  std::string reason;  // machine-readable code; "ok" when accepted
  std::string message; // human-readable detail
  std::vector<std::string> warnings;
};

// Structural compatibility of equation, stencil, and boundary conditions.
// Catalog of accepted discretizations:
//   advection-right + forward stencils, single Dirichlet condition at x = L
//   advection-left  + backward stencils, single Dirichlet condition at x = 0
//   heat/schrodinger + centered-o2, Dirichlet or Neumann pairs
//   heat + centered-o4, Dirichlet or Neumann pairs
// Everything else is rejected with a reason code; rejection is a report, not
// an exception.
ValidationReport validate_discretization(const ProblemSpec& spec);

} // namespace sdutm
