#include "graphtrack/trackers.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "graphtrack/linalg.hpp"

namespace graphtrack {

NoiseModel NoiseModel::isotropic(int state_dim, double q_sigma, int obs_dim,
                                 double r_sigma) {
  NoiseModel noise;
  noise.Q = q_sigma * q_sigma * Matrix::Identity(state_dim, state_dim);
  noise.R = r_sigma * r_sigma * Matrix::Identity(obs_dim, obs_dim);
  return noise;
}

StateTransition StateTransition::identity() {
  StateTransition t;
  t.is_identity_ = true;
  return t;
}

StateTransition StateTransition::linear(Matrix f) {
  StateTransition t;
  t.f_ = [f](const Vector& x) { return Vector(f * x); };
  t.jacobian_ = [f](const Vector&) { return f; };
  return t;
}

StateTransition StateTransition::nonlinear(
    std::function<Vector(const Vector&)> f,
    std::function<Matrix(const Vector&)> jacobian) {
  StateTransition t;
  t.f_ = std::move(f);
  t.jacobian_ = std::move(jacobian);
  return t;
}

Vector StateTransition::apply(const Vector& x) const {
  return is_identity_ ? x : f_(x);
}

Matrix StateTransition::jacobian_at(const Vector& x) const {
  return is_identity_ ? Matrix(Matrix::Identity(x.size(), x.size()))
                      : jacobian_(x);
}

Vector SupportMask::indicator(int dim) const {
  Vector ind = Vector::Zero(dim);
  for (int m : active) {
    if (m < 0 || m >= dim) {
      throw std::invalid_argument("support mask index out of range");
    }
    ind[m] = 1.0;
  }
  return ind;
}

Vector soft_threshold(const Vector& v, double beta) {
  if (beta < 0.0) throw std::invalid_argument("soft_threshold: beta < 0");
  return v.array().sign() * (v.array().abs() - beta).max(0.0);
}

TrackerState predict(const TrackerState& state, const StateTransition& trans,
                     const NoiseModel& noise) {
  TrackerState pred;
  if (trans.is_identity()) {
    pred.estimate = state.estimate;
    pred.covariance = state.covariance + noise.Q;
  } else {
    pred.estimate = trans.apply(state.estimate);
    const Matrix f = trans.jacobian_at(state.estimate);
    pred.covariance = f * state.covariance * f.transpose() + noise.Q;
  }
  pred.covariance = symmetrize(pred.covariance);
  return pred;
}

InnovationMoments innovation_moments(const TrackerState& predicted,
                                     const Matrix& jacobian,
                                     const NoiseModel& noise) {
  InnovationMoments out;
  out.S = symmetrize(jacobian * predicted.covariance * jacobian.transpose() +
                     noise.R);
  Eigen::LDLT<Matrix> ldlt(out.S);
  bool singular = ldlt.info() != Eigen::Success;
  double cond = std::numeric_limits<double>::infinity();
  if (!singular) {
    const Vector d = ldlt.vectorD();
    const double dmax = d.maxCoeff();
    const double dmin = d.minCoeff();
    cond = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
    singular = !(dmin > dmax * std::numeric_limits<double>::epsilon() *
                            static_cast<double>(out.S.rows()));
  }
  if (!singular) {
    // K = Sigma H^T S^{-1} = (S^{-1} H Sigma)^T for symmetric Sigma, S.
    out.K = ldlt.solve(jacobian * predicted.covariance).transpose();
    singular = !out.K.allFinite();
  }
  if (singular) {
    std::ostringstream msg;
    msg << "innovation covariance numerically singular (pivot ratio "
        << cond << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

namespace {

Matrix joseph_update(const Matrix& sigma_pred, const Matrix& gain,
                     const Matrix& jacobian, const Matrix& r) {
  const auto dim = sigma_pred.rows();
  const Matrix a = Matrix::Identity(dim, dim) - gain * jacobian;
  return symmetrize(a * sigma_pred * a.transpose() +
                    gain * r * gain.transpose());
}

void clamp_nonnegative(Vector& v) {
  v = v.cwiseMax(0.0);
}

void zero_masked_out(Vector& v, const Vector& indicator) {
  v.array() *= indicator.array();
}

void zero_masked_out(Matrix& m, const Vector& indicator) {
  m.array().colwise() *= indicator.array();
  m.array().rowwise() *= indicator.transpose().array();
}

}  // namespace

TrackerState ekf_step(const TrackerState& state, const StateTransition& trans,
                      const NoiseModel& noise, const PolynomialGraphFilter& filter,
                      const Matrix& incidence, const EdgeIndexMap& map,
                      const Vector& q, const Vector& y) {
  TrackerState pred = predict(state, trans, noise);
  const Matrix lap = laplacian_from_weights(incidence, pred.estimate);
  const Matrix h = jacobian_dp(filter, map, lap, q);
  const Vector h_pred = apply_filter(filter, lap, q);
  const auto [s, k] = innovation_moments(pred, h, noise);

  TrackerState updated;
  updated.estimate = pred.estimate + k * (y - h_pred);
  updated.covariance = joseph_update(pred.covariance, k, h, noise.R);
  clamp_nonnegative(updated.estimate);
  return updated;
}

Vector ista_update(const TrackerState& predicted, const Matrix& jacobian,
                   const NoiseModel& noise, const Vector& y, const Vector& h_pred,
                   const IstaConfig& config, const Vector& init,
                   bool init_is_unregularized_update) {
  if (config.iterations < 1) {
    throw std::invalid_argument("ista_update: iterations must be >= 1");
  }
  if (static_cast<int>(config.step_sizes.size()) != config.iterations) {
    throw std::invalid_argument(
        "ista_update: need one step size per iteration");
  }

  // Pieces of grad phi, built lazily: with the unregularized-update
  // initialization and a single iteration the gradient is identically zero
  // and none of this is needed.
  bool have_grad_terms = false;
  Matrix quad;       // H^T R^{-1} H + Sigma_pred^{-1}
  Vector data_term;  // H^T R^{-1} (y - h_pred)
  auto prepare_grad = [&]() {
    if (have_grad_terms) return;
    Eigen::LDLT<Matrix> r_ldlt(noise.R);
    if (r_ldlt.info() != Eigen::Success) {
      throw NumericalError("ista_update: R factorization failed");
    }
    const Matrix rinv_h = r_ldlt.solve(jacobian);
    quad = jacobian.transpose() * rinv_h +
           symmetric_inverse_with_jitter(predicted.covariance);
    data_term = rinv_h.transpose() * (y - h_pred);
    have_grad_terms = true;
  };

  Vector x = init;
  for (int m = 0; m < config.iterations; ++m) {
    const double rho = config.step_sizes[m];
    if (rho <= 0.0) throw std::invalid_argument("ista_update: step size <= 0");
    Vector arg;
    if (m == 0 && init_is_unregularized_update) {
      arg = x;  // gradient vanishes exactly at the unregularized minimizer
    } else {
      prepare_grad();
      const Vector grad =
          2.0 * (quad * (x - predicted.estimate)) - 2.0 * data_term;
      if (!grad.allFinite()) {
        throw NumericalError("ista_update: non-finite gradient");
      }
      arg = x - rho * grad;
    }
    x = soft_threshold(arg, config.mu * rho);
  }
  if (!x.allFinite()) throw NumericalError("ista_update: non-finite iterate");
  return x;
}

TrackerState gsp_ekf_step(const TrackerState& state, const StateTransition& trans,
                          const NoiseModel& noise,
                          const PolynomialGraphFilter& filter,
                          const Matrix& incidence, const EdgeIndexMap& map,
                          const Vector& q, const Vector& y,
                          const IstaConfig& config) {
  TrackerState pred = predict(state, trans, noise);
  const Matrix lap = laplacian_from_weights(incidence, pred.estimate);
  const Matrix h = jacobian_dp(filter, map, lap, q);
  const Vector h_pred = apply_filter(filter, lap, q);
  const auto [s, k] = innovation_moments(pred, h, noise);

  const Vector ekf_estimate = pred.estimate + k * (y - h_pred);
  const Vector ista_estimate =
      ista_update(pred, h, noise, y, h_pred, config, ekf_estimate,
                  /*init_is_unregularized_update=*/true);

  // Debiasing refit: the l1 iterate selects the support, the surviving
  // entries keep the unregularized update values. Re-propagating the
  // shrunken iterate itself accumulates a mu*rho bias on every active edge
  // (the gain recovers only a fraction of it per step), which collapses the
  // weight estimates over long runs.
  TrackerState updated;
  updated.estimate = Vector::Zero(ekf_estimate.size());
  for (Eigen::Index m = 0; m < ista_estimate.size(); ++m) {
    if (ista_estimate[m] != 0.0) updated.estimate[m] = ekf_estimate[m];
  }
  // Covariance keeps the unregularized gain regardless of the ISTA output.
  updated.covariance = joseph_update(pred.covariance, k, h, noise.R);
  clamp_nonnegative(updated.estimate);
  return updated;
}

TrackerState oracle_step(const TrackerState& state, const StateTransition& trans,
                         const NoiseModel& noise,
                         const PolynomialGraphFilter& filter,
                         const Matrix& incidence, const EdgeIndexMap& map,
                         const Vector& q, const Vector& y, const SupportMask& mask,
                         const Vector& mean_jump) {
  const int dim = map.max_edges();
  const Vector ind = mask.indicator(dim);

  TrackerState pred;
  pred.estimate = trans.apply(state.estimate) + mean_jump;
  zero_masked_out(pred.estimate, ind);
  if (trans.is_identity()) {
    pred.covariance = state.covariance + noise.Q;
  } else {
    const Matrix f = trans.jacobian_at(state.estimate);
    pred.covariance = f * state.covariance * f.transpose() + noise.Q;
  }
  zero_masked_out(pred.covariance, ind);
  pred.covariance = symmetrize(pred.covariance);

  const Matrix lap = laplacian_from_weights(incidence, pred.estimate);
  const Matrix h = jacobian_dp(filter, map, lap, q);
  const Vector h_pred = apply_filter(filter, lap, q);
  const auto [s, k] = innovation_moments(pred, h, noise);

  TrackerState updated;
  updated.estimate = pred.estimate + k * (y - h_pred);
  updated.covariance = joseph_update(pred.covariance, k, h, noise.R);
  // The masked prediction already makes inactive rows of K zero; pin them
  // exactly so the off-support entries are 0 by construction, not rounding.
  zero_masked_out(updated.estimate, ind);
  zero_masked_out(updated.covariance, ind);
  clamp_nonnegative(updated.estimate);
  return updated;
}

TrackerState linear_kf_step(const TrackerState& state, const Matrix& transition,
                            const NoiseModel& noise, double a0, double a1,
                            const Matrix& incidence, const Vector& q,
                            const Vector& y) {
  TrackerState pred;
  if (transition.isIdentity(0.0)) {
    pred.estimate = state.estimate;
    pred.covariance = state.covariance + noise.Q;
  } else {
    pred.estimate = transition * state.estimate;
    pred.covariance =
        transition * state.covariance * transition.transpose() + noise.Q;
  }
  pred.covariance = symmetrize(pred.covariance);

  const auto [h, c] = linear_observation(a0, a1, incidence, q);
  const auto [s, k] = innovation_moments(pred, h, noise);

  TrackerState updated;
  updated.estimate = pred.estimate + k * (y - (h * pred.estimate + c));
  updated.covariance = joseph_update(pred.covariance, k, h, noise.R);
  clamp_nonnegative(updated.estimate);
  return updated;
}

}  // namespace graphtrack
