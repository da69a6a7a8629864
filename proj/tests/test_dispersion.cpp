// Dispersion relation values, symmetry invariance, periodicity, continuum
// limits, and the discretization compatibility catalog.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sdutm/dispersion.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace sdutm;

namespace {

const Cx I{0.0, 1.0};

std::vector<DispersionModel> all_models(double h) {
  return {
      make_dispersion(EquationKind::AdvectionRight, StencilKind::ForwardO1, h, 1.0),
      make_dispersion(EquationKind::AdvectionRight, StencilKind::ForwardO2, h, 0.7),
      make_dispersion(EquationKind::AdvectionLeft, StencilKind::BackwardO1, h, 1.0),
      make_dispersion(EquationKind::AdvectionLeft, StencilKind::BackwardO2, h, 1.3),
      make_dispersion(EquationKind::Heat, StencilKind::CenteredO2, h),
      make_dispersion(EquationKind::Heat, StencilKind::CenteredO4, h),
      make_dispersion(EquationKind::Schrodinger, StencilKind::CenteredO2, h),
  };
}

// Least-squares slope of log10(err) against log10(x).
double fit_slope(const std::vector<double>& x, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log10(x[i]), ly = std::log10(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ProblemSpec base_spec(EquationKind eq, StencilKind st) {
  ProblemSpec spec;
  spec.equation = eq;
  spec.stencil = st;
  spec.grid = make_grid(1.0, 9);
  return spec;
}

} // namespace

TEST_CASE("dispersion values at hand-checkable wavenumbers") {
  const double h = 0.25, c = 2.0;
  const auto heat = make_dispersion(EquationKind::Heat, StencilKind::CenteredO2, h);
  CHECK(std::abs(heat.W(Cx{0.0, 0.0})) == 0.0);
  CHECK(heat.W(Cx{kPi / h, 0.0}).real() == doctest::Approx(4.0 / (h * h)).epsilon(1e-13));
  CHECK(heat.W(Cx{kPi / h, 0.0}).imag() == doctest::Approx(0.0));

  const auto adv = make_dispersion(EquationKind::AdvectionRight, StencilKind::ForwardO1, h, c);
  CHECK(adv.W(Cx{kPi / h, 0.0}).real() == doctest::Approx(2.0 * c / h).epsilon(1e-13));

  const auto ls = make_dispersion(EquationKind::Schrodinger, StencilKind::CenteredO2, h);
  CHECK(ls.W(Cx{1.0, 0.0}).real() == doctest::Approx(0.0));
  CHECK(ls.W(Cx{1.0, 0.0}).imag() ==
        doctest::Approx((1.0 - std::cos(h)) / (h * h)).epsilon(1e-13));
}

TEST_CASE("W is 2pi/h periodic for every model") {
  const double h = 0.2;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ua(-kPi / h, kPi / h), ub(-2.0, 2.0);
  for (const auto& m : all_models(h)) {
    for (int i = 0; i < 100; ++i) {
      const Cx k{ua(rng), ub(rng)};
      const Cx w = m.W(k), wp = m.W(k + 2.0 * kPi / h);
      CHECK(std::abs(wp - w) < 1e-12 * (1.0 + std::abs(w)));
    }
  }
}

TEST_CASE("every listed symmetry leaves W invariant") {
  const double h = 0.2;
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> ua(-kPi / h, kPi / h), ub(-1.5, 1.5);
  for (const auto& m : all_models(h)) {
    for (int i = 0; i < 100; ++i) {
      const Cx k{ua(rng), ub(rng)};
      const Cx w = m.W(k);
      for (int j = 0; j < m.num_symmetries(); ++j) {
        const Cx wv = m.W(m.symmetry(j, k));
        // The fourth-order pair goes through log/sqrt evaluations; allow the
        // correspondingly looser 1e-10 relative bound there.
        const double tol = (m.stencil == StencilKind::CenteredO4 && j >= 2) ? 1e-10 : 1e-12;
        CHECK(std::abs(wv - w) <= tol * (1.0 + std::abs(w)));
      }
    }
  }
}

TEST_CASE("fourth-order heat symmetry pair on the real strip") {
  const double h = 0.1;
  const auto m = make_dispersion(EquationKind::Heat, StencilKind::CenteredO4, h);
  REQUIRE(m.num_symmetries() == 4);
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> ua(-kPi / h, kPi / h);
  for (int i = 0; i < 100; ++i) {
    const Cx k{ua(rng), 0.0};
    const Cx w = m.W(k);
    CHECK(std::abs(m.W(m.symmetry(2, k)) - w) < 1e-10 * std::abs(w) + 1e-15);
    CHECK(std::abs(m.W(m.symmetry(3, k)) - w) < 1e-10 * std::abs(w) + 1e-15);
  }
}

TEST_CASE("W approaches the continuum rate at the stencil's order") {
  const Cx k{1.3, 0.0};
  for (const auto& proto : all_models(1.0)) {
    // Fourth-order differences sink to rounding level below h ~ 1e-3; fit the
    // slope on mesh widths where the truncation term still dominates.
    const std::vector<double> hs = proto.order() >= 4
                                       ? std::vector<double>{1e-1, 3.1623e-2, 1e-2}
                                       : std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> errs;
    for (double h : hs) {
      const auto m = make_dispersion(proto.equation, proto.stencil, h, proto.c);
      errs.push_back(std::abs(m.W(k) - m.continuum_W(k)));
    }
    const double slope = fit_slope(hs, errs);
    CHECK(slope == doctest::Approx(static_cast<double>(proto.order())).epsilon(0.15));
  }
}

TEST_CASE("growth region sign") {
  const double h = 0.25;
  const auto heat = make_dispersion(EquationKind::Heat, StencilKind::CenteredO2, h);
  CHECK(growth_region_sign(heat, Cx{0.0, 0.0}) == 0);
  CHECK(growth_region_sign(heat, Cx{1.0, 0.0}) == -1);
  CHECK(growth_region_sign(heat, Cx{0.0, 1.0}) == 1); // imaginary axis grows

  const auto adv = make_dispersion(EquationKind::AdvectionRight, StencilKind::ForwardO1, h, 1.0);
  CHECK(growth_region_sign(adv, Cx{0.0, 10.0 / h}) == -1);

  const auto ls = make_dispersion(EquationKind::Schrodinger, StencilKind::CenteredO2, h);
  CHECK(growth_region_sign(ls, Cx{1.0, 0.0}) == 0);
  CHECK(growth_region_sign(ls, Cx{-2.0, 0.7}) == -1); // upper-left half-strip decays
  CHECK(growth_region_sign(ls, Cx{2.0, 0.7}) == 1);   // upper-right half-strip grows
}

TEST_CASE("make_dispersion rejects pairs outside the catalog") {
  CHECK_THROWS_AS(make_dispersion(EquationKind::AdvectionRight, StencilKind::CenteredO2, 0.1),
                  SolverError);
  CHECK_THROWS_AS(make_dispersion(EquationKind::Schrodinger, StencilKind::CenteredO4, 0.1),
                  SolverError);
  CHECK_THROWS_AS(make_dispersion(EquationKind::AdvectionLeft, StencilKind::ForwardO1, 0.1),
                  SolverError);
  try {
    make_dispersion(EquationKind::AdvectionRight, StencilKind::CenteredO2, 0.1);
  } catch (const SolverError& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDiscretization);
  }
}

TEST_CASE("validation accepts the natural discretizations") {
  auto adv = base_spec(EquationKind::AdvectionRight, StencilKind::ForwardO1);
  adv.bcs = {BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  CHECK(validate_discretization(adv).accepted);

  auto advl = base_spec(EquationKind::AdvectionLeft, StencilKind::BackwardO2);
  advl.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero())};
  CHECK(validate_discretization(advl).accepted);

  auto heat = base_spec(EquationKind::Heat, StencilKind::CenteredO2);
  heat.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
              BoundaryCondition::dirichlet(Side::Right, TimeFunction::constant(Cx{2.0, 0.0}))};
  CHECK(validate_discretization(heat).accepted);

  auto neum = base_spec(EquationKind::Heat, StencilKind::CenteredO2);
  neum.bcs = {BoundaryCondition::neumann(Side::Left, TimeFunction::zero()),
              BoundaryCondition::neumann(Side::Right, TimeFunction::zero())};
  CHECK(validate_discretization(neum).accepted);

  auto ls = base_spec(EquationKind::Schrodinger, StencilKind::CenteredO2);
  ls.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
            BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  CHECK(validate_discretization(ls).accepted);
}

TEST_CASE("validation rejects centered advection with no-closing-relation") {
  auto spec = base_spec(EquationKind::AdvectionRight, StencilKind::CenteredO2);
  spec.c = 1.0;
  spec.bcs = {BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  const auto rep = validate_discretization(spec);
  CHECK_FALSE(rep.accepted);
  CHECK(rep.reason == "no-closing-relation");
}

TEST_CASE("validation rejects structural mismatches with reason codes") {
  auto wrong_side = base_spec(EquationKind::AdvectionRight, StencilKind::ForwardO1);
  wrong_side.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero())};
  CHECK(validate_discretization(wrong_side).reason == "wrong-side-bc");

  auto missing = base_spec(EquationKind::AdvectionRight, StencilKind::ForwardO1);
  CHECK(validate_discretization(missing).reason == "missing-bc");

  auto neum_adv = base_spec(EquationKind::AdvectionRight, StencilKind::ForwardO1);
  neum_adv.bcs = {BoundaryCondition::neumann(Side::Right, TimeFunction::zero())};
  CHECK(validate_discretization(neum_adv).reason == "neumann-advection");

  auto mirrored = base_spec(EquationKind::AdvectionRight, StencilKind::BackwardO1);
  mirrored.bcs = {BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  CHECK(validate_discretization(mirrored).reason == "wrong-sided-stencil");

  auto mixed = base_spec(EquationKind::Heat, StencilKind::CenteredO2);
  mixed.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
               BoundaryCondition::neumann(Side::Right, TimeFunction::zero())};
  CHECK(validate_discretization(mixed).reason == "mixed-bc");

  auto one_sided = base_spec(EquationKind::Heat, StencilKind::ForwardO1);
  one_sided.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
                   BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  CHECK(validate_discretization(one_sided).reason == "one-sided-second-derivative");

  auto ls4 = base_spec(EquationKind::Schrodinger, StencilKind::CenteredO4);
  ls4.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero()),
             BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  CHECK(validate_discretization(ls4).reason == "unsupported-pair");

  auto half = base_spec(EquationKind::Heat, StencilKind::CenteredO2);
  half.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::zero())};
  CHECK(validate_discretization(half).reason == "missing-bc");
}

TEST_CASE("corner mismatch is a warning, not a rejection") {
  auto spec = base_spec(EquationKind::Heat, StencilKind::CenteredO2);
  spec.bcs = {BoundaryCondition::dirichlet(Side::Left, TimeFunction::constant(Cx{5.0, 0.0})),
              BoundaryCondition::dirichlet(Side::Right, TimeFunction::zero())};
  spec.ic = sample_initial([](double) { return Cx{0.0, 0.0}; }, spec.grid);
  const auto rep = validate_discretization(spec);
  CHECK(rep.accepted);
  REQUIRE(rep.warnings.size() == 1);
  CHECK(rep.warnings[0].find("left corner") != std::string::npos);
}
