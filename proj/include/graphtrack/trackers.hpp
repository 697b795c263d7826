#pragma once

#include <functional>
#include <vector>

#include "graphtrack/common.hpp"
#include "graphtrack/filter.hpp"
#include "graphtrack/graph.hpp"

namespace graphtrack {

/// Point estimate of the edge-weight vector together with its error
/// covariance. One of these is carried forward per tracked graph.
///
/// `carrier` is used by the sparsity-aware tracker only: it holds the
/// unregularized recursion the filter linearizes and predicts from, while
/// `estimate` is the sparsified estimate reported at each step. Empty for
/// every other tracker (their reported estimate is the recursion state).
struct TrackerState {
  Vector estimate;     // length max_edges
  Matrix covariance;   // max_edges x max_edges, symmetric PSD
  Vector carrier;      // empty, or the internal unregularized estimate

  const Vector& recursion_estimate() const {
    return carrier.size() > 0 ? carrier : estimate;
  }
};

/// Process and measurement noise covariances assumed by a tracker.
/// R must be strictly positive definite.
struct NoiseModel {
  Matrix Q;  // max_edges x max_edges
  Matrix R;  // n_nodes x n_nodes

  static NoiseModel isotropic(int state_dim, double q_sigma, int obs_dim,
                              double r_sigma);
};

/// Proximal-gradient (ISTA) update parameters: iteration count M, the l1
/// weight mu, and one step size per iteration.
struct IstaConfig {
  int iterations = 1;
  double mu = 0.25;
  std::vector<double> step_sizes = {1.0};
};

/// State evolution f with its Jacobian. The identity transition is the
/// common case and lets the covariance prediction skip two dense products.
class StateTransition {
 public:
  static StateTransition identity();
  static StateTransition linear(Matrix f);
  static StateTransition nonlinear(std::function<Vector(const Vector&)> f,
                                   std::function<Matrix(const Vector&)> jacobian);

  Vector apply(const Vector& x) const;
  Matrix jacobian_at(const Vector& x) const;
  bool is_identity() const { return is_identity_; }

 private:
  StateTransition() = default;
  bool is_identity_ = false;
  std::function<Vector(const Vector&)> f_;
  std::function<Matrix(const Vector&)> jacobian_;
};

/// Known set of active edges for the oracle tracker.
struct SupportMask {
  std::vector<int> active;  // ascending edge indices

  /// 0/1 indicator vector of length dim.
  Vector indicator(int dim) const;
};

/// Elementwise sign(v) * max(0, |v| - beta); the proximal map of beta*||.||_1.
Vector soft_threshold(const Vector& v, double beta);

/// Prediction: x_pred = f(x), Sigma_pred = F Sigma F^T + Q.
TrackerState predict(const TrackerState& state, const StateTransition& trans,
                     const NoiseModel& noise);

/// Innovation covariance S = H Sigma H^T + R and gain K = Sigma H^T S^{-1},
/// computed through a symmetric factorization of S rather than an explicit
/// inverse. Throws NumericalError with a condition estimate if S is
/// numerically singular.
struct InnovationMoments {
  Matrix S;
  Matrix K;
};

InnovationMoments innovation_moments(const TrackerState& predicted,
                                     const Matrix& jacobian,
                                     const NoiseModel& noise);

/// One extended-Kalman step against the graph-filter measurement model:
/// predict, linearize via the DP Jacobian at the predicted state, gain,
/// state update, Joseph-form covariance. Negative entries of the updated
/// estimate are clamped to zero; the covariance is left untouched.
TrackerState ekf_step(const TrackerState& state, const StateTransition& trans,
                      const NoiseModel& noise, const PolynomialGraphFilter& filter,
                      const Matrix& incidence, const EdgeIndexMap& map,
                      const Vector& q, const Vector& y);

/// M proximal-gradient iterations on phi(x) + mu*||x||_1, where phi is the
/// local quadratic model around the prediction:
///   grad phi(x) = 2 (H^T R^{-1} H + Sigma_pred^{-1}) (x - x_pred)
///                 - 2 H^T R^{-1} (y - h_pred).
///
/// When `init_is_unregularized_update` is set, the caller guarantees init is
/// the exact minimizer of phi (the plain EKF update), where the gradient
/// vanishes identically; the first iteration is then just the soft
/// threshold of init, and with M = 1 neither R^{-1} H products nor
/// Sigma_pred^{-1} are ever formed.
Vector ista_update(const TrackerState& predicted, const Matrix& jacobian,
                   const NoiseModel& noise, const Vector& y, const Vector& h_pred,
                   const IstaConfig& config, const Vector& init,
                   bool init_is_unregularized_update = false);

/// Sparsity-aware EKF step. The unregularized EKF recursion (prediction,
/// linearization, gain, update, Joseph covariance with the unregularized
/// gain) is carried in state.carrier; the reported estimate runs the ISTA
/// iterate (initialized at the unregularized update) to select the edge
/// support and keeps the unregularized update values on it, zero elsewhere.
/// Re-propagating the sparsified iterate itself would reset every gated-out
/// edge each step, so sub-threshold evidence could never accumulate and the
/// shrinkage bias would compound; carrying the unregularized recursion is
/// also what the covariance in use corresponds to.
TrackerState gsp_ekf_step(const TrackerState& state, const StateTransition& trans,
                          const NoiseModel& noise,
                          const PolynomialGraphFilter& filter,
                          const Matrix& incidence, const EdgeIndexMap& map,
                          const Vector& q, const Vector& y,
                          const IstaConfig& config);

/// Known-support step: masked prediction x_pred = M (f(x) + mean_jump),
/// masked covariance M F Sigma F^T M + M Q M, gain from the masked
/// covariance, Kalman update on active entries, inactive entries pinned to
/// exactly zero (estimate and covariance).
TrackerState oracle_step(const TrackerState& state, const StateTransition& trans,
                         const NoiseModel& noise,
                         const PolynomialGraphFilter& filter,
                         const Matrix& incidence, const EdgeIndexMap& map,
                         const Vector& q, const Vector& y, const SupportMask& mask,
                         const Vector& mean_jump);

/// Exact (non-extended) Kalman step for the first-order filter a0 + a1 L,
/// using the closed-form observation y = H x + c + v.
TrackerState linear_kf_step(const TrackerState& state, const Matrix& transition,
                            const NoiseModel& noise, double a0, double a1,
                            const Matrix& incidence, const Vector& q,
                            const Vector& y);

}  // namespace graphtrack
