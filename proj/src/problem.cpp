// Implementation of grid construction and TimeFunction calculus.
#include "sdutm/problem.hpp"

#include <cmath>
#include <utility>

namespace sdutm {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::UnsupportedDiscretization: return "unsupported-discretization";
    case ErrorCode::InvalidProblem: return "invalid-problem";
    case ErrorCode::DerivativesRequired: return "derivatives-required";
    case ErrorCode::AccuracyFailure: return "accuracy-failure";
    case ErrorCode::ResourceLimit: return "resource-limit";
    case ErrorCode::NumericalFailure: return "numerical-failure";
    case ErrorCode::ConfigError: return "config-error";
  }
  return "unknown";
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(static_cast<size_t>(num_nodes()));
  for (int n = 0; n < num_nodes(); ++n) xs[static_cast<size_t>(n)] = x(n);
  return xs;
}

Grid make_grid(double L, int N) {
  require(L > 0.0, ErrorCode::InvalidArgument, "grid length must be positive");
  require(N >= 1, ErrorCode::InvalidArgument, "grid needs at least one interior node");
  Grid g;
  g.L = L;
  g.N = N;
  g.h = L / (N + 1);
  return g;
}

const char* equation_name(EquationKind e) {
  switch (e) {
    case EquationKind::AdvectionRight: return "advection-right";
    case EquationKind::AdvectionLeft: return "advection-left";
    case EquationKind::Heat: return "heat";
    case EquationKind::Schrodinger: return "schrodinger";
  }
  return "unknown";
}

const char* stencil_name(StencilKind s) {
  switch (s) {
    case StencilKind::ForwardO1: return "forward-o1";
    case StencilKind::ForwardO2: return "forward-o2";
    case StencilKind::BackwardO1: return "backward-o1";
    case StencilKind::BackwardO2: return "backward-o2";
    case StencilKind::CenteredO2: return "centered-o2";
    case StencilKind::CenteredO4: return "centered-o4";
  }
  return "unknown";
}

const char* bc_kind_name(BcKind k) {
  return k == BcKind::Dirichlet ? "dirichlet" : "neumann";
}

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

TimeFunction TimeFunction::constant(Cx value) {
  if (value == Cx{0.0, 0.0}) return zero();
  TimeFunction f;
  f.form_ = Form::Constant;
  f.coeffs_ = {value};
  return f;
}

TimeFunction TimeFunction::poly_exp(std::vector<Cx> coeffs, Cx alpha) {
  // Trim trailing zero coefficients so degree queries stay meaningful.
  while (!coeffs.empty() && coeffs.back() == Cx{0.0, 0.0}) coeffs.pop_back();
  if (coeffs.empty()) return zero();
  if (coeffs.size() == 1 && alpha == Cx{0.0, 0.0}) return constant(coeffs[0]);
  TimeFunction f;
  f.form_ = Form::PolyExp;
  f.coeffs_ = std::move(coeffs);
  f.alpha_ = alpha;
  return f;
}

TimeFunction TimeFunction::sinusoid(Cx amplitude, double omega, double phase) {
  if (amplitude == Cx{0.0, 0.0}) return zero();
  if (omega == 0.0) return constant(amplitude * std::sin(phase));
  TimeFunction f;
  f.form_ = Form::Sinusoid;
  f.amplitude_ = amplitude;
  f.omega_ = omega;
  f.phase_ = phase;
  return f;
}

TimeFunction TimeFunction::general(std::function<Cx(double)> f,
                                   std::function<Cx(double)> df,
                                   std::function<Cx(double)> d2f) {
  require(static_cast<bool>(f), ErrorCode::InvalidArgument,
          "general time function needs a value callback");
  TimeFunction g;
  g.form_ = Form::General;
  g.f_ = std::move(f);
  g.df_ = std::move(df);
  g.d2f_ = std::move(d2f);
  return g;
}

Cx TimeFunction::operator()(double t) const {
  switch (form_) {
    case Form::Zero: return {0.0, 0.0};
    case Form::Constant: return coeffs_[0];
    case Form::PolyExp: {
      Cx p{0.0, 0.0};
      for (size_t m = coeffs_.size(); m-- > 0;) p = p * t + coeffs_[m];
      return p * std::exp(alpha_ * t);
    }
    case Form::Sinusoid: return amplitude_ * std::sin(omega_ * t + phase_);
    case Form::General: return f_(t);
  }
  return {0.0, 0.0};
}

Cx TimeFunction::constant_value() const {
  require(is_constant(), ErrorCode::InvalidArgument,
          "constant_value() called on a non-constant time function");
  return form_ == Form::Zero ? Cx{0.0, 0.0} : coeffs_[0];
}

int TimeFunction::derivative_order() const {
  switch (form_) {
    case Form::Zero:
    case Form::Constant:
    case Form::PolyExp:
    case Form::Sinusoid: return 1 << 20; // effectively unbounded
    case Form::General: return d2f_ ? 2 : (df_ ? 1 : 0);
  }
  return 0;
}

TimeFunction TimeFunction::derivative(int order) const {
  require(order >= 0, ErrorCode::InvalidArgument, "derivative order must be >= 0");
  if (order == 0) return *this;
  if (order > 1) return derivative(1).derivative(order - 1);
  switch (form_) {
    case Form::Zero:
    case Form::Constant: return zero();
    case Form::PolyExp: {
      // d/dt [p(t) e^{at}] = (p'(t) + a p(t)) e^{at}
      std::vector<Cx> d(coeffs_.size(), Cx{0.0, 0.0});
      for (size_t m = 0; m < coeffs_.size(); ++m) {
        d[m] += alpha_ * coeffs_[m];
        if (m + 1 < coeffs_.size()) d[m] += static_cast<double>(m + 1) * coeffs_[m + 1];
      }
      return poly_exp(std::move(d), alpha_);
    }
    case Form::Sinusoid:
      // d/dt [A sin(wt+p)] = A w sin(wt + p + pi/2)
      return sinusoid(amplitude_ * omega_, omega_, phase_ + kPi / 2.0);
    case Form::General: {
      require(static_cast<bool>(df_), ErrorCode::DerivativesRequired,
              "time function has no first derivative callback");
      TimeFunction g;
      g.form_ = Form::General;
      g.f_ = df_;
      g.df_ = d2f_;
      return g;
    }
  }
  return zero();
}

InitialCondition sample_initial(const std::function<Cx(double)>& phi, const Grid& grid) {
  require(static_cast<bool>(phi), ErrorCode::InvalidArgument,
          "sample_initial needs an evaluable space function");
  InitialCondition ic;
  ic.values.resize(static_cast<size_t>(grid.num_nodes()));
  for (int n = 0; n < grid.num_nodes(); ++n)
    ic.values[static_cast<size_t>(n)] = phi(grid.x(n));
  return ic;
}

const BoundaryCondition* ProblemSpec::bc(Side s) const {
  for (const auto& b : bcs)
    if (b.side == s) return &b;
  return nullptr;
}

const BoundaryCondition& ProblemSpec::required_bc(Side s) const {
  const BoundaryCondition* b = bc(s);
  require(b != nullptr, ErrorCode::InvalidProblem,
          std::string("problem is missing the boundary condition at the ") + side_name(s) +
              " end");
  return *b;
}

double max_abs_diff(const SolutionField& a, const SolutionField& b) {
  require(a.values.size() == b.values.size(), ErrorCode::InvalidArgument,
          "solution fields have different sizes");
  double m = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    const double d = std::abs(a.values[i] - b.values[i]);
    if (std::isnan(d)) return d; // a NaN anywhere poisons the comparison
    if (d > m) m = d;
  }
  return m;
}

} // namespace sdutm
