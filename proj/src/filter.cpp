#include "graphtrack/filter.hpp"

#include <vector>

namespace graphtrack {

namespace {

void check_filter(const PolynomialGraphFilter& filter) {
  if (filter.coeffs.size() < 1) {
    throw std::invalid_argument("filter needs at least one coefficient");
  }
}

}  // namespace

Vector apply_filter(const PolynomialGraphFilter& filter, const Matrix& laplacian,
                    const Vector& q) {
  check_filter(filter);
  if (laplacian.rows() != laplacian.cols() || laplacian.rows() != q.size()) {
    throw std::invalid_argument("apply_filter: dimension mismatch");
  }
  Vector out = filter.coeffs[0] * q;
  Vector power = q;  // L^p q
  for (int p = 1; p <= filter.order(); ++p) {
    power = laplacian * power;
    out.noalias() += filter.coeffs[p] * power;
  }
  return out;
}

Matrix jacobian_naive(const PolynomialGraphFilter& filter, const Vector& weights,
                      const Matrix& incidence, const Vector& q) {
  check_filter(filter);
  const auto n = incidence.rows();
  if (incidence.cols() != weights.size() || q.size() != n) {
    throw std::invalid_argument("jacobian_naive: dimension mismatch");
  }
  const Matrix lap = laplacian_from_weights(incidence, weights);
  const int order = filter.order();
  Matrix jac = Matrix::Zero(n, weights.size());
  for (Eigen::Index m = 0; m < weights.size(); ++m) {
    const Vector bm = incidence.col(m);
    Vector col = Vector::Zero(n);
    for (int p = 1; p <= order; ++p) {
      const double ap = filter.coeffs[p];
      if (ap == 0.0) continue;
      for (int k = 0; k < p; ++k) {
        Vector right = q;  // L^{p-k-1} q
        for (int i = 0; i < p - k - 1; ++i) right = lap * right;
        Vector left = bm;  // L^k B_m
        for (int i = 0; i < k; ++i) left = lap * left;
        col.noalias() += ap * bm.dot(right) * left;
      }
    }
    jac.col(m) = col;
  }
  return jac;
}

Matrix jacobian_dp(const PolynomialGraphFilter& filter, const EdgeIndexMap& map,
                   const Matrix& laplacian, const Vector& q) {
  check_filter(filter);
  const int n = map.n_nodes();
  if (laplacian.rows() != n || laplacian.cols() != n || q.size() != n) {
    throw std::invalid_argument("jacobian_dp: dimension mismatch");
  }
  const int order = filter.order();
  Matrix jac = Matrix::Zero(n, map.max_edges());
  if (order == 0) return jac;  // constant filter: no topology dependence

  // c_p = L^p q and D_p = sum_{r=0}^{P-1-p} a_{p+r+1} L^r, built by the
  // recursions c_p = L c_{p-1} and D_p = a_{p+1} I + L D_{p+1}.
  std::vector<Vector> c(order);
  c[0] = q;
  for (int p = 1; p < order; ++p) c[p] = laplacian * c[p - 1];

  std::vector<Matrix> d(order);
  d[order - 1] = filter.coeffs[order] * Matrix::Identity(n, n);
  for (int p = order - 2; p >= 0; --p) {
    d[p] = laplacian * d[p + 1];
    d[p].diagonal().array() += filter.coeffs[p + 1];
  }

  for (int m = 0; m < map.max_edges(); ++m) {
    auto [en, ek] = map.pair_of(m);
    Vector col = Vector::Zero(n);
    for (int p = 0; p < order; ++p) {
      const double scale = c[p][en] - c[p][ek];
      if (scale == 0.0) continue;
      col.noalias() += scale * (d[p].col(en) - d[p].col(ek));
    }
    jac.col(m) = col;
  }
  return jac;
}

LinearObservation linear_observation(double a0, double a1, const Matrix& incidence,
                                     const Vector& q) {
  if (incidence.rows() != q.size()) {
    throw std::invalid_argument("linear_observation: dimension mismatch");
  }
  LinearObservation obs;
  obs.H = a1 * incidence * (incidence.transpose() * q).asDiagonal();
  obs.c = a0 * q;
  return obs;
}

}  // namespace graphtrack
