#pragma once

#include "graphtrack/common.hpp"
#include "graphtrack/graph.hpp"

namespace graphtrack {

/// Polynomial graph filter h(L) = sum_p coeffs[p] * L^p. Order P is
/// coeffs.size() - 1; a constant filter has a single coefficient.
struct PolynomialGraphFilter {
  Vector coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// h(L) q via iterated matrix-vector products; never forms L^p.
Vector apply_filter(const PolynomialGraphFilter& filter, const Matrix& laplacian,
                    const Vector& q);

/// Reference Jacobian of x -> h(B diag(x) B^T) q, column by column:
///   col m = sum_{p=1}^P a_p sum_{k=0}^{p-1} L^k (B_m B_m^T) L^{p-k-1} q,
/// each term evaluated as the scalar-vector product
/// (B_m^T L^{p-k-1} q) * (L^k B_m) with fresh matrix-vector chains, so the
/// cost scales as O(P^3 N^2) per column. Serves as the oracle for
/// jacobian_dp.
Matrix jacobian_naive(const PolynomialGraphFilter& filter, const Vector& weights,
                      const Matrix& incidence, const Vector& q);

/// Dynamic-programming Jacobian. Precomputes c_p = L^p q and
/// D_p = a_{p+1} I + L D_{p+1} (D_{P-1} = a_P I), then assembles
///   col m = sum_{p=0}^{P-1} (c_p[n] - c_p[k]) * (D_p[:,n] - D_p[:,k])
/// for (n, k) = pair_of(m). Requires laplacian == B diag(x) B^T for the
/// weights the caller is linearizing at. Total cost O(P N^3).
Matrix jacobian_dp(const PolynomialGraphFilter& filter, const EdgeIndexMap& map,
                   const Matrix& laplacian, const Vector& q);

/// Exact linear form of a first-order filter a0 + a1 L:
/// h(x) = H x + c with H = a1 B diag(B^T q) and c = a0 q.
struct LinearObservation {
  Matrix H;
  Vector c;
};

LinearObservation linear_observation(double a0, double a1, const Matrix& incidence,
                                     const Vector& q);

}  // namespace graphtrack
