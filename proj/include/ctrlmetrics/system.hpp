#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ctrlmetrics/path_tree.hpp"

namespace ctrlmetrics {

/// A time/trend-indexed family of m x m coefficient matrices.
/// Standard modes key on the step index n and/or the current trend state;
/// Path mode is an escape hatch keying on the whole prefix (L_0..L_n), which
/// the pathspace oracle supports but the Riccati schemes do not.
class CoeffMap {
 public:
  enum class Mode { Constant, Time, Trend, TimeTrend, Path };
  using PathFn = std::function<Matrix(int n, const std::vector<int>& prefix)>;

  static CoeffMap constant(Matrix M) {
    CoeffMap c;
    c.mode_ = Mode::Constant;
    c.store_.push_back({std::move(M)});
    return c;
  }
  /// One matrix per step n = 0..len-1; with `periodic` the list wraps around.
  static CoeffMap time(std::vector<Matrix> per_step, bool periodic = false) {
    CoeffMap c;
    c.mode_ = Mode::Time;
    c.periodic_ = periodic;
    for (auto& M : per_step) c.store_.push_back({std::move(M)});
    return c;
  }
  /// One matrix per trend state.
  static CoeffMap trend(std::vector<Matrix> per_state) {
    CoeffMap c;
    c.mode_ = Mode::Trend;
    c.store_.push_back(std::move(per_state));
    return c;
  }
  /// store[n][l], optionally periodic in n.
  static CoeffMap time_trend(std::vector<std::vector<Matrix>> per_step_state, bool periodic = false) {
    CoeffMap c;
    c.mode_ = Mode::TimeTrend;
    c.periodic_ = periodic;
    c.store_ = std::move(per_step_state);
    return c;
  }
  static CoeffMap path(PathFn fn) {
    CoeffMap c;
    c.mode_ = Mode::Path;
    c.path_fn_ = std::move(fn);
    return c;
  }

  Mode mode() const { return mode_; }
  bool depends_on_time() const { return mode_ == Mode::Time || mode_ == Mode::TimeTrend || mode_ == Mode::Path; }
  bool depends_on_trend() const { return mode_ == Mode::Trend || mode_ == Mode::TimeTrend || mode_ == Mode::Path; }
  bool is_path_mode() const { return mode_ == Mode::Path; }

  /// Evaluation keyed on (n, current state). Rejects Path mode.
  Matrix eval(int n, int state) const {
    switch (mode_) {
      case Mode::Constant: return store_[0][0];
      case Mode::Time: return store_[step_index(n, store_.size())][0];
      case Mode::Trend: return store_[0].at(state);
      case Mode::TimeTrend: return store_[step_index(n, store_.size())].at(state);
      case Mode::Path:
        throw UnsupportedSchemeError("coefficient map: path-dependent map has no (n, state) evaluation");
    }
    throw ValidationError("coefficient map: invalid mode");
  }

  /// Evaluation at a tree node (handles Path mode).
  Matrix eval(int n, const PathTree& tree, int depth, int node_idx) const {
    if (mode_ == Mode::Path) return path_fn_(n, tree.prefix_of(depth, node_idx));
    return eval(n, tree.node(depth, node_idx).state);
  }

  /// All matrices the map can produce over steps 0..N-1 (Path mode excluded).
  std::vector<Matrix> materialize(int N, int p) const {
    std::vector<Matrix> out;
    switch (mode_) {
      case Mode::Constant: out.push_back(store_[0][0]); break;
      case Mode::Time:
        for (int n = 0; n < N; ++n) out.push_back(eval(n, 0));
        break;
      case Mode::Trend:
        for (int l = 0; l < p; ++l) out.push_back(store_[0][l]);
        break;
      case Mode::TimeTrend:
        for (int n = 0; n < N; ++n)
          for (int l = 0; l < p; ++l) out.push_back(eval(n, l));
        break;
      case Mode::Path:
        throw UnsupportedSchemeError("coefficient map: cannot materialize a path-dependent map");
    }
    return out;
  }

  bool is_zero(int N, int p) const {
    if (mode_ == Mode::Path) return false;
    for (const auto& M : materialize(N, p))
      if (M.norm() != 0.0) return false;
    return true;
  }

 private:
  std::size_t step_index(int n, std::size_t len) const {
    if (n < 0) throw ValidationError("coefficient map: negative step index");
    if (static_cast<std::size_t>(n) < len) return static_cast<std::size_t>(n);
    if (periodic_) return static_cast<std::size_t>(n) % len;
    throw ValidationError("coefficient map: step " + std::to_string(n) +
                          " beyond the provided " + std::to_string(len) + " matrices");
  }

  Mode mode_ = Mode::Constant;
  bool periodic_ = false;
  std::vector<std::vector<Matrix>> store_;
  PathFn path_fn_;
};

/// The controlled system
///   X_{n+1} = A_n X_n + B u_{n+1} + sum_i <dM_{n+1}, e_i> C_{i,n} X_n.
struct SwitchedSystem {
  int m = 0;   // state dimension
  int d = 0;   // control dimension
  int N = 0;   // horizon
  CoeffMap A;
  Matrix B;
  std::vector<CoeffMap> C;  // one map per trend state
  TrendModel trend;

  // Set by validate(): all reachable A(n,l) pass the invertibility test.
  // Systems failing it are accepted for forward simulation only.
  bool a_invertible = false;

  SwitchedSystem(int m_, int d_, int N_, CoeffMap A_, Matrix B_, std::vector<CoeffMap> C_,
                 TrendModel trend_)
      : m(m_), d(d_), N(N_), A(std::move(A_)), B(std::move(B_)), C(std::move(C_)),
        trend(std::move(trend_)) {
    validate();
  }

  int p() const { return trend.p(); }

  void validate() {
    if (m < 1 || d < 1 || N < 0) throw ValidationError("system: need m >= 1, d >= 1, N >= 0");
    if (B.rows() != m || B.cols() != d) throw ValidationError("system: B must be m x d");
    if (static_cast<int>(C.size()) != p())
      throw ValidationError("system: need one C map per trend state");
    auto check_dims = [&](const CoeffMap& map, const std::string& name) {
      if (map.is_path_mode()) return;
      for (const auto& M : map.materialize(std::max(N, 1), p()))
        if (M.rows() != m || M.cols() != m)
          throw ValidationError("system: " + name + " matrices must be m x m");
    };
    check_dims(A, "A");
    for (std::size_t i = 0; i < C.size(); ++i) check_dims(C[i], "C_" + std::to_string(i + 1));

    a_invertible = true;
    if (!A.is_path_mode()) {
      for (const auto& M : A.materialize(std::max(N, 1), p()))
        if (!is_invertible(M)) a_invertible = false;
    }
  }

  /// Throws with the offending (n, state) when some A(n, l) is singular.
  void require_invertible_a() const {
    if (A.is_path_mode()) return;  // checked lazily at evaluation sites
    for (int n = 0; n < std::max(N, 1); ++n)
      for (int l = 0; l < p(); ++l) {
        if (!A.depends_on_time() && n > 0) continue;
        if (!A.depends_on_trend() && l > 0) continue;
        if (!is_invertible(A.eval(n, l)))
          throw ValidationError("system: A(n=" + std::to_string(n) + ", state=" +
                                std::to_string(l + 1) + ") is numerically singular");
      }
  }

  bool c_is_zero() const {
    for (const auto& ci : C)
      if (!ci.is_path_mode() && !ci.is_zero(std::max(N, 1), p())) return false;
    for (const auto& ci : C)
      if (ci.is_path_mode()) return false;
    return true;
  }

  bool coefficients_nonrandom() const {
    auto nonrandom = [](const CoeffMap& c) {
      return c.mode() == CoeffMap::Mode::Constant || c.mode() == CoeffMap::Mode::Time;
    };
    if (!nonrandom(A)) return false;
    for (const auto& ci : C)
      if (!nonrandom(ci)) return false;
    return true;
  }

  PathTree tree(long node_cap = defaults::kNodeCap) const {
    return enumerate_paths(trend, N, node_cap);
  }
};

/// Predictable control: u_{n+1} attached to each depth-n node, n = 0..N-1.
using ControlPolicy = DepthValues<Vector>;
/// Predictable m x p dual control: v_{n+1} attached to each depth-n node.
using DualPolicy = DepthValues<Matrix>;
/// F_N-measurable random vector: one value per leaf.
using RandomVector = std::vector<Vector>;

inline ControlPolicy zero_policy(const SwitchedSystem& sys, const PathTree& tree) {
  ControlPolicy u(tree.horizon());
  for (int n = 0; n < tree.horizon(); ++n)
    u[n].assign(tree.level(n).size(), Vector::Zero(sys.d));
  return u;
}

inline DualPolicy zero_dual_policy(const SwitchedSystem& sys, const PathTree& tree) {
  DualPolicy v(tree.horizon());
  for (int n = 0; n < tree.horizon(); ++n)
    v[n].assign(tree.level(n).size(), Matrix::Zero(sys.m, sys.p()));
  return v;
}

inline void check_policy(const SwitchedSystem& sys, const PathTree& tree, const ControlPolicy& u) {
  if (static_cast<int>(u.size()) != tree.horizon())
    throw ValidationError("policy: must provide controls for depths 0..N-1");
  for (int n = 0; n < tree.horizon(); ++n) {
    if (u[n].size() != tree.level(n).size())
      throw ValidationError("policy: depth " + std::to_string(n) + " has wrong node count");
    for (const auto& un : u[n])
      if (un.size() != sys.d) throw ValidationError("policy: control dimension mismatch");
  }
}

/// Exact forward recursion of X along every branch. Returns values at all
/// depths 0..N; depth-0 values equal x0.
inline DepthValues<Vector> simulate_states(const SwitchedSystem& sys, const Vector& x0,
                                           const ControlPolicy& u, const PathTree& tree) {
  if (x0.size() != sys.m) throw ValidationError("simulate: x0 must have dimension m");
  if (tree.horizon() != sys.N) throw ValidationError("simulate: tree horizon differs from system horizon");
  check_policy(sys, tree, u);

  DepthValues<Vector> X(sys.N + 1);
  X[0].assign(tree.level(0).size(), x0);
  for (int n = 0; n < sys.N; ++n) {
    const auto& cur = tree.level(n);
    const auto& nxt = tree.level(n + 1);
    X[n + 1].resize(nxt.size());
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
      const Matrix An = sys.A.eval(n, tree, n, i);
      const Vector drift = An * X[n][i] + sys.B * u[n][i];
      for (int ci : cur[i].children) {
        const Vector dm = sys.trend.martingale_increment(cur[i].state, nxt[ci].state);
        Vector noise = Vector::Zero(sys.m);
        for (int k = 0; k < sys.p(); ++k)
          if (dm(k) != 0.0) noise += dm(k) * (sys.C[k].eval(n, tree, n, i) * X[n][i]);
        X[n + 1][ci] = drift + noise;
      }
    }
  }
  return X;
}

/// The dual decision process driven by a predictable m x p control v:
///   y_{n+1} = (A_n^T)^{-1} (y_n - sum_i C_{i,n}^T v_{n+1} Psi_i) + v_{n+1} dM_{n+1},
/// with Psi_i the i-th row of the conditional increment covariance.
inline DepthValues<Vector> simulate_dual(const SwitchedSystem& sys, const Vector& y0,
                                         const DualPolicy& v, const PathTree& tree) {
  if (y0.size() != sys.m) throw ValidationError("simulate dual: y0 must have dimension m");
  if (tree.horizon() != sys.N) throw ValidationError("simulate dual: tree horizon differs from system horizon");

  DepthValues<Vector> Y(sys.N + 1);
  Y[0].assign(tree.level(0).size(), y0);
  for (int n = 0; n < sys.N; ++n) {
    const auto& cur = tree.level(n);
    const auto& nxt = tree.level(n + 1);
    Y[n + 1].resize(nxt.size());
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
      const Matrix An = sys.A.eval(n, tree, n, i);
      if (!is_invertible(An))
        throw ValidationError("simulate dual: A(n=" + std::to_string(n) + ", state=" +
                              std::to_string(cur[i].state + 1) + ") is singular");
      const Matrix cov = sys.trend.increment_covariance_matrix(cur[i].state);
      Vector corrected = Y[n][i];
      for (int k = 0; k < sys.p(); ++k) {
        const Vector psi = cov.row(k).transpose();
        if (psi.norm() != 0.0)
          corrected -= sys.C[k].eval(n, tree, n, i).transpose() * (v[n][i] * psi);
      }
      const Vector mean_part = An.transpose().partialPivLu().solve(corrected);
      for (int ci : cur[i].children) {
        const Vector dm = sys.trend.martingale_increment(cur[i].state, nxt[ci].state);
        Y[n + 1][ci] = mean_part + v[n][i] * dm;
      }
    }
  }
  return Y;
}

/// E |X_N - xi|^2 over the leaves.
inline double expected_square_distance(const PathTree& tree, const RandomVector& x_terminal,
                                       const RandomVector& xi) {
  const auto& leaves = tree.leaves();
  if (x_terminal.size() != leaves.size() || xi.size() != leaves.size())
    throw ValidationError("expected square distance: families live on different trees");
  double acc = 0.0;
  for (std::size_t i = 0; i < leaves.size(); ++i)
    acc += leaves[i].prob * (x_terminal[i] - xi[i]).squaredNorm();
  return acc;
}

/// eps * sum_n E|v_{n+1}|^2 + sum_n E|B^T E[y_{n+1}/F_n]|^2 for a dual
/// trajectory; the functional whose infimum over v is the controllability
/// (pseudo)norm (exactly, when eps = 0).
inline double dual_cost(const SwitchedSystem& sys, const DepthValues<Vector>& y,
                        const DualPolicy& v, const PathTree& tree, double eps = 0.0) {
  double acc = 0.0;
  for (int n = 0; n < sys.N; ++n) {
    const auto cond = conditional_expectation(tree, y[n + 1], n);
    const auto& cur = tree.level(n);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      acc += cur[i].prob * (sys.B.transpose() * cond[i]).squaredNorm();
      if (eps != 0.0) acc += eps * cur[i].prob * v[n][i].squaredNorm();
    }
  }
  return acc;
}

}  // namespace ctrlmetrics
