// Dispersion relations, symmetry maps, and discretization validation.
#include "sdutm/dispersion.hpp"

#include <cmath>
#include <string>

namespace sdutm {

namespace {

const Cx kI{0.0, 1.0};

// Square root with the branch cut on the positive real axis: arg in [0, 2pi).
Cx sqrt_poscut(Cx w) {
  double th = std::arg(w);
  if (th < 0.0) th += 2.0 * kPi;
  return std::sqrt(std::abs(w)) * std::exp(kI * (th / 2.0));
}

bool is_advection(EquationKind e) {
  return e == EquationKind::AdvectionRight || e == EquationKind::AdvectionLeft;
}

bool is_one_sided(StencilKind s) {
  return s == StencilKind::ForwardO1 || s == StencilKind::ForwardO2 ||
         s == StencilKind::BackwardO1 || s == StencilKind::BackwardO2;
}

bool pair_supported(EquationKind e, StencilKind s) {
  switch (e) {
    case EquationKind::AdvectionRight:
      return s == StencilKind::ForwardO1 || s == StencilKind::ForwardO2;
    case EquationKind::AdvectionLeft:
      return s == StencilKind::BackwardO1 || s == StencilKind::BackwardO2;
    case EquationKind::Heat:
      return s == StencilKind::CenteredO2 || s == StencilKind::CenteredO4;
    case EquationKind::Schrodinger: return s == StencilKind::CenteredO2;
  }
  return false;
}

} // namespace

Cx DispersionModel::W(Cx k) const {
  const Cx e = std::exp(kI * k * h);
  switch (stencil) {
    case StencilKind::ForwardO1: return c * (1.0 - e) / h;
    case StencilKind::ForwardO2: return c * (3.0 - 4.0 * e + e * e) / (2.0 * h);
    case StencilKind::BackwardO1: return c * (1.0 - 1.0 / e) / h;
    case StencilKind::BackwardO2: {
      const Cx em = 1.0 / e;
      return c * (3.0 - 4.0 * em + em * em) / (2.0 * h);
    }
    case StencilKind::CenteredO2: {
      // 2(1 - cos kh) = 4 sin^2(kh/2), cancellation-free for small kh.
      const Cx s = std::sin(k * h / 2.0);
      if (equation == EquationKind::Schrodinger) return kI * 2.0 * s * s / (h * h);
      return 4.0 * s * s / (h * h);
    }
    case StencilKind::CenteredO4: {
      // 30 - 32 cos(kh) + 2 cos(2kh) = 4 (cos kh - 1)(cos kh - 7)
      //                              = 8 sin^2(kh/2) (7 - cos kh).
      const Cx s = std::sin(k * h / 2.0);
      return 2.0 * s * s * (7.0 - std::cos(k * h)) / (3.0 * h * h);
    }
  }
  return {0.0, 0.0};
}

Cx DispersionModel::continuum_W(Cx k) const {
  switch (equation) {
    case EquationKind::AdvectionRight: return -c * kI * k;
    case EquationKind::AdvectionLeft: return c * kI * k;
    case EquationKind::Heat: return k * k;
    case EquationKind::Schrodinger: return kI * k * k / 2.0;
  }
  return {0.0, 0.0};
}

int DispersionModel::num_symmetries() const {
  switch (stencil) {
    case StencilKind::ForwardO1:
    case StencilKind::BackwardO1: return 1;
    case StencilKind::ForwardO2:
    case StencilKind::BackwardO2:
    case StencilKind::CenteredO2: return 2;
    case StencilKind::CenteredO4: return 4;
  }
  return 1;
}

Cx DispersionModel::symmetry(int j, Cx k) const {
  require(j >= 0 && j < num_symmetries(), ErrorCode::InvalidArgument,
          "symmetry index out of range");
  if (j == 0) return k;
  switch (stencil) {
    case StencilKind::ForwardO2:
      // e^{i nu h} = 4 - e^{ikh}
      return std::log(4.0 - std::exp(kI * k * h)) / (kI * h);
    case StencilKind::BackwardO2:
      // e^{-i nu h} = 4 - e^{-ikh}
      return std::log(4.0 - std::exp(-kI * k * h)) / (-kI * h);
    case StencilKind::CenteredO2: return -k;
    case StencilKind::CenteredO4: {
      if (j == 1) return -k;
      // Remaining pair: e^{i nu h} solves z + 1/z = 16 - y - 1/y, y = e^{ikh};
      // the square root carries its branch cut on the positive real axis.
      const Cx y = std::exp(kI * k * h);
      const Cx b = 16.0 * y - y * y - 1.0;
      const Cx root = sqrt_poscut(b * b - 4.0 * y * y);
      const Cx z = (j == 2) ? (b + root) / (2.0 * y) : (b - root) / (2.0 * y);
      return std::log(z) / (kI * h);
    }
    default: break;
  }
  fail(ErrorCode::InvalidArgument, "symmetry index out of range");
}

int DispersionModel::order() const {
  switch (stencil) {
    case StencilKind::ForwardO1:
    case StencilKind::BackwardO1: return 1;
    case StencilKind::ForwardO2:
    case StencilKind::BackwardO2:
    case StencilKind::CenteredO2: return 2;
    case StencilKind::CenteredO4: return 4;
  }
  return 1;
}

DispersionModel make_dispersion(EquationKind equation, StencilKind stencil, double h,
                                double c) {
  require(h > 0.0, ErrorCode::InvalidArgument, "mesh width must be positive");
  require(!is_advection(equation) || c > 0.0, ErrorCode::InvalidArgument,
          "advection speed must be positive");
  require(pair_supported(equation, stencil), ErrorCode::UnsupportedDiscretization,
          std::string("no dispersion model for ") + equation_name(equation) + " with " +
              stencil_name(stencil));
  DispersionModel m;
  m.equation = equation;
  m.stencil = stencil;
  m.h = h;
  m.c = c;
  return m;
}

int growth_region_sign(const DispersionModel& model, Cx k) {
  const Cx w = model.W(k);
  const double s = -w.real();
  if (std::abs(s) <= 1e-14 * (1.0 + std::abs(w))) return 0;
  return s > 0.0 ? 1 : -1;
}

ValidationReport validate_discretization(const ProblemSpec& spec) {
  ValidationReport rep;
  auto reject = [&rep](const char* reason, std::string msg) {
    rep.accepted = false;
    rep.reason = reason;
    rep.message = std::move(msg);
    return rep;
  };

  if (spec.grid.N < 1 || spec.grid.h <= 0.0 || spec.grid.L <= 0.0)
    return reject("invalid-grid", "grid is empty or has nonpositive extent");
  if (!spec.ic.values.empty() && spec.ic.size() != spec.grid.num_nodes())
    return reject("invalid-ic", "initial condition sample count does not match the grid");

  if (is_advection(spec.equation)) {
    if (spec.c <= 0.0) return reject("nonpositive-speed", "advection speed must be positive");
    if (!is_one_sided(spec.stencil))
      return reject("no-closing-relation",
                    "centered advection stencils admit no boundary closure on a finite "
                    "interval; use a one-sided stencil");
    if (!pair_supported(spec.equation, spec.stencil))
      return reject("wrong-sided-stencil",
                    std::string(equation_name(spec.equation)) +
                        " needs the one-sided stencil that points toward the inflow end");
    const Side inflow =
        spec.equation == EquationKind::AdvectionRight ? Side::Right : Side::Left;
    const Side outflow = inflow == Side::Right ? Side::Left : Side::Right;
    if (spec.bc(outflow))
      return reject("wrong-side-bc",
                    std::string("advection admits boundary data only at the ") +
                        side_name(inflow) + " (inflow) end");
    const BoundaryCondition* b = spec.bc(inflow);
    if (!b)
      return reject("missing-bc", std::string("advection needs Dirichlet data at the ") +
                                      side_name(inflow) + " end");
    if (b->kind != BcKind::Dirichlet)
      return reject("neumann-advection",
                    "first-order-in-space problems take Dirichlet data only");
    if (spec.bcs.size() > 1)
      return reject("extra-bc", "advection takes exactly one boundary condition");
  } else {
    if (is_one_sided(spec.stencil))
      return reject("one-sided-second-derivative",
                    "second-derivative equations use centered stencils");
    if (!pair_supported(spec.equation, spec.stencil))
      return reject("unsupported-pair",
                    std::string("no closure catalog entry for ") +
                        equation_name(spec.equation) + " with " +
                        stencil_name(spec.stencil));
    const BoundaryCondition* l = spec.bc(Side::Left);
    const BoundaryCondition* r = spec.bc(Side::Right);
    if (!l || !r)
      return reject("missing-bc", "second-order problems need conditions at both ends");
    if (spec.bcs.size() != 2)
      return reject("extra-bc", "second-order problems take exactly two boundary conditions");
    if (l->kind != r->kind)
      return reject("mixed-bc", "boundary conditions must be the same kind at both ends");
    if (spec.stencil == StencilKind::CenteredO4 && l->kind == BcKind::Neumann)
      rep.warnings.push_back(
          "fourth-order Neumann closure is structurally valid but no solver implements it");
  }

  // Corner compatibility is advisory: the formulas stay evaluable either way.
  if (!spec.ic.values.empty()) {
    auto check_corner = [&](Side s, int node) {
      const BoundaryCondition* b = spec.bc(s);
      if (!b || b->kind != BcKind::Dirichlet) return;
      const Cx mismatch = spec.ic[node] - b->data(0.0);
      if (std::abs(mismatch) > 1e-8 * (1.0 + std::abs(spec.ic[node])))
        rep.warnings.push_back(std::string("initial and boundary data disagree at the ") +
                               side_name(s) + " corner (t = 0)");
    };
    check_corner(Side::Left, 0);
    check_corner(Side::Right, spec.grid.N + 1);
  }

  rep.accepted = true;
  rep.reason = "ok";
  rep.message = "discretization accepted";
  return rep;
}

} // namespace sdutm
