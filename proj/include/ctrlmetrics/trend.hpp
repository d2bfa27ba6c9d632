#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "ctrlmetrics/numeric.hpp"

namespace ctrlmetrics {

/// Finite-state trend chain valued in the standard basis {e_1..e_p}.
/// Row l of the transition matrix is the law of the next state given the
/// current state is l. In i.i.d. mode all rows are identical.
class TrendModel {
 public:
  enum class Mode { Iid, Markov };

  /// Fixed initial state (0-based).
  TrendModel(Mode mode, Matrix transition, int initial_state)
      : mode_(mode), transition_(std::move(transition)), initial_state_(initial_state) {
    validate();
  }

  /// Distributed initial state.
  TrendModel(Mode mode, Matrix transition, Vector initial_law)
      : mode_(mode), transition_(std::move(transition)), initial_state_(-1),
        initial_law_(std::move(initial_law)) {
    validate();
  }

  static TrendModel iid(const Vector& q, int initial_state) {
    return TrendModel(Mode::Iid, q.transpose().replicate(q.size(), 1), initial_state);
  }
  static TrendModel iid(const Vector& q, const Vector& initial_law) {
    return TrendModel(Mode::Iid, q.transpose().replicate(q.size(), 1), initial_law);
  }
  static TrendModel markov(const Matrix& Q, int initial_state) {
    return TrendModel(Mode::Markov, Q, initial_state);
  }
  static TrendModel markov(const Matrix& Q, const Vector& initial_law) {
    return TrendModel(Mode::Markov, Q, initial_law);
  }

  int p() const { return static_cast<int>(transition_.rows()); }
  Mode mode() const { return mode_; }
  bool is_iid() const { return mode_ == Mode::Iid; }
  const Matrix& transition() const { return transition_; }
  Vector row(int state) const { return transition_.row(state).transpose(); }

  /// The common row in i.i.d. mode.
  Vector iid_law() const {
    if (!is_iid()) throw UnsupportedSchemeError("trend: iid law requested on a markov-mode chain");
    return transition_.row(0).transpose();
  }

  bool has_fixed_initial() const { return initial_state_ >= 0; }
  int initial_state() const { return initial_state_; }

  /// Law of L_0 (a point mass when the initial state is fixed).
  Vector initial_law() const {
    if (has_fixed_initial()) {
      Vector law = Vector::Zero(p());
      law(initial_state_) = 1.0;
      return law;
    }
    return *initial_law_;
  }

  /// Martingale increment along a transition: e_child - row(parent).
  /// Components sum to zero.
  Vector martingale_increment(int parent_state, int child_state) const {
    check_state(parent_state);
    check_state(child_state);
    Vector d = -transition_.row(parent_state).transpose();
    d(child_state) += 1.0;
    return d;
  }

  /// E[<dM,e_i><dM,e_j> | current state] = q_j d_ij - q_i q_j with q = row(state).
  double increment_covariance(int state, int i, int j) const {
    check_state(state);
    check_state(i);
    check_state(j);
    const double qi = transition_(state, i), qj = transition_(state, j);
    return (i == j ? qj : 0.0) - qi * qj;
  }

  /// The full p x p conditional covariance of the increment; symmetric PSD.
  Matrix increment_covariance_matrix(int state) const {
    check_state(state);
    const Vector q = row(state);
    return Matrix(q.asDiagonal()) - q * q.transpose();
  }

 private:
  void validate() const {
    const int n = p();
    if (n < 1 || transition_.cols() != n)
      throw ValidationError("trend: transition matrix must be square, p >= 1");
    for (int l = 0; l < n; ++l) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (transition_(l, j) < -1e-12)
          throw ValidationError("trend: negative transition probability in row " + std::to_string(l + 1));
        sum += transition_(l, j);
      }
      if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("trend: transition row " + std::to_string(l + 1) + " does not sum to 1");
    }
    if (mode_ == Mode::Iid) {
      for (int l = 1; l < n; ++l)
        if ((transition_.row(l) - transition_.row(0)).cwiseAbs().maxCoeff() > 1e-12)
          throw ValidationError("trend: iid mode requires identical transition rows");
    }
    if (initial_state_ >= 0) {
      if (initial_state_ >= n) throw ValidationError("trend: initial state out of range");
    } else {
      if (!initial_law_ || initial_law_->size() != n)
        throw ValidationError("trend: initial law has wrong dimension");
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if ((*initial_law_)(j) < -1e-12) throw ValidationError("trend: negative initial probability");
        sum += (*initial_law_)(j);
      }
      if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("trend: initial law does not sum to 1");
    }
  }

  void check_state(int s) const {
    if (s < 0 || s >= p()) throw ValidationError("trend: state index out of range");
  }

  Mode mode_;
  Matrix transition_;
  int initial_state_;
  std::optional<Vector> initial_law_;
};

/// Third conditional moment m_{j,k,l} of the increment of an i.i.d. chain
/// with law q: q_l(q_j - d_jl)(q_k - d_kl) - q_l(d_jk - q_j)q_k.
/// Symmetric in (j,k).
inline double increment_third_moment(const Vector& q, int j, int k, int l) {
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  return q(l) * (q(j) - d(j, l)) * (q(k) - d(k, l)) - q(l) * (d(j, k) - q(j)) * q(k);
}

/// Invariant distribution of a transition matrix: solves pi Q = pi, sum pi = 1.
inline Vector invariant_distribution(const Matrix& Q) {
  const int n = static_cast<int>(Q.rows());
  Matrix A(n + 1, n);
  A.topRows(n) = Q.transpose() - Matrix::Identity(n, n);
  A.bottomRows(1).setOnes();
  Vector b = Vector::Zero(n + 1);
  b(n) = 1.0;
  Vector pi = min_norm_solve(A, b);
  if ((A * pi - b).norm() > 1e-9)
    throw NumericalError("trend: no invariant distribution found");
  return pi;
}

}  // namespace ctrlmetrics
