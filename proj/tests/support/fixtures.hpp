#pragma once

// The worked examples used as regression fixtures throughout the suite.

#include "ctrlmetrics/system.hpp"

namespace test_support {

using ctrlmetrics::CoeffMap;
using ctrlmetrics::Matrix;
using ctrlmetrics::SwitchedSystem;
using ctrlmetrics::TrendModel;
using ctrlmetrics::Vector;

inline Matrix swap_matrix() {
  Matrix A(2, 2);
  A << 0, 1, 1, 0;
  return A;
}

/// Two-state fair coin trend, horizon 2, A = swap, B = e_2,
/// C_i = [[0, (-1)^{i+1}],[0,0]]. Exactly null-controllable in two steps but
/// not approximately controllable.
inline SwitchedSystem nullctrl_not_approx_system() {
  Matrix C1(2, 2), C2(2, 2);
  C1 << 0, 1, 0, 0;
  C2 << 0, -1, 0, 0;
  Vector B(2);
  B << 0, 1;
  return SwitchedSystem(2, 1, 2, CoeffMap::constant(swap_matrix()), B,
                        {CoeffMap::constant(C1), CoeffMap::constant(C2)},
                        TrendModel::iid(Vector::Constant(2, 0.5), 0));
}

/// Same trend and horizon, A = swap, C_i = (-1)^{i+1} A, B = e_2. Full Kalman
/// rank yet not null-controllable; also the instance on which the invariance
/// necessary condition holds without sufficiency.
inline SwitchedSystem kalman_not_nullctrl_system() {
  const Matrix A = swap_matrix();
  Vector B(2);
  B << 0, 1;
  return SwitchedSystem(2, 1, 2, CoeffMap::constant(A), B,
                        {CoeffMap::constant(A), CoeffMap::constant(-A)},
                        TrendModel::iid(Vector::Constant(2, 0.5), 0));
}

inline Matrix phage_a() {
  Matrix A(2, 2);
  A << 0.25, 0.5, 0.25, 0.75;
  return A;
}

inline Matrix phage_c2() {
  Matrix C(2, 2);
  C << 0, 1, 0, 0;
  return C;
}

inline Vector phage_b1() {
  Vector b(2);
  b << 0, 1;
  return b;
}

inline Vector phage_b2() {
  Vector b(2);
  b << 1, 1;
  return b;
}

/// Repressor/dimer toy model at host equilibrium: four-state uniform i.i.d.
/// trend, noise only in state 2, horizon 2.
inline SwitchedSystem phage_system(const Matrix& B, int horizon = 2) {
  const int d = static_cast<int>(B.cols());
  const Matrix zero = Matrix::Zero(2, 2);
  return SwitchedSystem(2, d, horizon, CoeffMap::constant(phage_a()), B,
                        {CoeffMap::constant(zero), CoeffMap::constant(phage_c2()),
                         CoeffMap::constant(zero), CoeffMap::constant(zero)},
                        TrendModel::iid(Vector::Constant(4, 0.25), 0));
}

/// Alternating 3-cycles, B = e_1: every step is Kalman-controllable but the
/// reachability gramian stays singular at every horizon.
inline std::vector<Matrix> alternating_cycles(int N) {
  Matrix even(3, 3), odd(3, 3);
  even << 0, 1, 0,
          0, 0, 1,
          1, 0, 0;
  odd << 0, 0, 1,
         1, 0, 0,
         0, 1, 0;
  std::vector<Matrix> seq;
  for (int n = 0; n < N; ++n) seq.push_back(n % 2 == 0 ? even : odd);
  return seq;
}

/// Alternating transpositions, B = e_1: no single step is Kalman-controllable
/// yet the gramian reaches full rank at horizon 4.
inline std::vector<Matrix> alternating_swaps(int N) {
  Matrix even(3, 3), odd(3, 3);
  even << 1, 0, 0,
          0, 0, 1,
          0, 1, 0;
  odd << 0, 1, 0,
         1, 0, 0,
         0, 0, 1;
  std::vector<Matrix> seq;
  for (int n = 0; n < N; ++n) seq.push_back(n % 2 == 0 ? even : odd);
  return seq;
}

/// Deterministic single-state trend wrapper for time-varying A with C = 0.
inline SwitchedSystem deterministic_system(const std::vector<Matrix>& A_seq, const Matrix& B,
                                           int N) {
  const int m = static_cast<int>(B.rows());
  return SwitchedSystem(m, static_cast<int>(B.cols()), N, CoeffMap::time(A_seq, true), B,
                        {CoeffMap::constant(Matrix::Zero(m, m))},
                        TrendModel::iid(Vector::Ones(1), 0));
}

}  // namespace test_support
