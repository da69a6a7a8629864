// Discrete Fourier sums, time transforms of boundary data (closed forms plus
// adaptive quadrature), and the spectral coefficients of the series solvers.
#pragma once

#include "sdutm/problem.hpp"

#include <vector>

namespace sdutm {

struct TimeTransformValue {
  Cx W{0.0, 0.0};
  double T = 0.0;
  Cx value{0.0, 0.0}; // integral of e^{Wt} v(t) over [0, T]
};

// integral of e^{Wt} v(t) dt over [0, T].  Closed forms are used for the
// constant / polynomial-exponential / sinusoid registry; general functions go
// through adaptive quadrature with oscillation-aware pre-splitting
// (|Im W| * panel <= pi).  Throws AccuracyFailure when quadrature stalls.
TimeTransformValue time_transform(const TimeFunction& v, Cx W, double T,
                                  double tol = 1e-10);

// Damped form e^{-WT} * time_transform = integral of e^{-W(T-t)} v(t) dt.
// This is the quantity the solvers consume: for Re W ~ 1/h^2 the plain
// transform overflows while the damped product stays O(sup|v| * T).
Cx damped_time_transform(const TimeFunction& v, Cx W, double T, double tol = 1e-10);

// h * sum_{n=n_begin}^{n_end} e^{-iknh} values[n]
Cx forward_fourier_sum(const std::vector<Cx>& values, double h, Cx k, int n_begin,
                       int n_end);

// Dirichlet sine coefficients b_l = (2h/L) sum_{m=1}^{N} sin(pi l m h/L) phi_m,
// returned indexed by l with [0] = 0 and entries l = 1..N (b_0 = b_{N+1} = 0).
std::vector<Cx> sine_coefficients(const InitialCondition& ic, const Grid& grid);

// Neumann half-shifted cosine coefficients
// b_l = (2h/L) sum_{m=0}^{N+1} cos(pi l (m+1/2) h/(L+h)) phi_m, l = 0..N+1.
std::vector<Cx> cosine_coefficients(const InitialCondition& ic, const Grid& grid);

// H_l = left_l + (-1)^{l+1} right_l, aligned on the same mode index l.
std::vector<Cx> boundary_combination(const std::vector<Cx>& left,
                                     const std::vector<Cx>& right);

// Per-mode data feeding a series evaluation.  dampedH[l] stores the fused
// product e^{-W_l T} H(W_l, T), the only form that is overflow-safe.
struct SpectralData {
  std::vector<double> k; // mode wavenumbers k_l
  std::vector<Cx> W;     // W(k_l)
  std::vector<Cx> b;     // initial-condition coefficients
  std::vector<Cx> dampedH;
};

} // namespace sdutm
