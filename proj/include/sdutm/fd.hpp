#pragma once
// Banded linear algebra and method-of-lines finite-difference baselines.

#include "sdutm/problem.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace sdutm {

// Complex banded matrix with kl subdiagonals and ku superdiagonals.
struct BandedMatrix {
  int n = 0;
  int kl = 0;
  int ku = 0;
  std::vector<Cx> data;  // entry (i,j) stored at data[(i - j + ku) * n + j]

  static BandedMatrix zero(int n, int kl, int ku);
  bool in_band(int i, int j) const {
    return i >= 0 && j >= 0 && i < n && j < n && i - j <= kl && j - i <= ku;
  }
  Cx at(int i, int j) const;
  Cx& ref(int i, int j);
  std::vector<Cx> multiply(const std::vector<Cx>& x) const;
};

// LU factorization with partial pivoting; fill-in widens the upper band to
// kl + ku.
class BandedLU {
 public:
  std::vector<Cx> solve(std::vector<Cx> rhs) const;
  int size() const { return n_; }

 private:
  friend BandedLU factor_banded(const BandedMatrix& A);
  int n_ = 0;
  int kl_ = 0;
  int ku_ = 0;  // widened upper bandwidth
  std::vector<Cx> data_;
  std::vector<int> pivots_;
  Cx fat(int i, int j) const { return data_[static_cast<size_t>(i - j + ku_) * n_ + j]; }
  Cx& fref(int i, int j) { return data_[static_cast<size_t>(i - j + ku_) * n_ + j]; }
};

BandedLU factor_banded(const BandedMatrix& A);

// Semidiscrete system dQ/dt = A Q + g(t) over the unknown nodes of a problem,
// with boundary data folded into g and pinned Dirichlet values re-attached on
// output.
struct OdeSystem {
  BandedMatrix A;
  std::function<void(double, std::vector<Cx>&)> forcing;  // writes g(t), size dim
  int dim = 0;
  Grid grid;
  int first_node = 0;  // grid node carried by unknown 0
  std::optional<TimeFunction> pin_left;   // Dirichlet value at node 0, if pinned
  std::optional<TimeFunction> pin_right;  // Dirichlet value at node N+1, if pinned
  bool forcing_constant = false;
  std::vector<Cx> initial_state;

  std::vector<Cx> forcing_at(double t) const;
  std::vector<Cx> rhs(const std::vector<Cx>& Q, double t) const;  // A Q + g(t)
  SolutionField reconstruct(const std::vector<Cx>& Q, double t) const;
};

enum class StepKind { FE, RK4, BE, TR };

const char* step_kind_name(StepKind kind);

struct Stepper {
  StepKind kind = StepKind::RK4;
  double dt = 0.0;
};

OdeSystem assemble_system(const ProblemSpec& spec);

// One step from t to t + dt; implicit schemes factor their banded system on
// each call (integrate() caches the factorization instead).
std::vector<Cx> step(const OdeSystem& sys, const Stepper& stepper,
                     const std::vector<Cx>& Q, double t);

struct IntegrateStats {
  long long full_steps = 0;
  double final_step = 0.0;  // nonzero when a trailing partial step was taken
};

SolutionField integrate(const OdeSystem& sys, const Stepper& stepper,
                        const std::vector<Cx>& Q0, double T,
                        IntegrateStats* stats = nullptr);

}  // namespace sdutm
