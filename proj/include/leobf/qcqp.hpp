#pragma once

#include <stdexcept>
#include <vector>

#include "leobf/types.hpp"

namespace leobf {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cost of one optimized column: w^H A w - 2 Re(b^H w), A Hermitian PSD.
struct ColumnQuadratic {
  CMat A;
  CVec b;
};

struct PowerConstraint {
  CMat gram;      // Hermitian PSD
  double budget;  // > 0
};

struct QcqpSolution {
  std::vector<CVec> cols;
  double lambda = 0;
};

// Minimizes the separable column costs under the shared constraint
// sum_l w_l^H gram w_l <= budget via KKT dual bisection:
// w_l(lambda) = (A_l + lambda gram)^-1 b_l, power non-increasing in lambda.
QcqpSolution solve_single_constraint_qcqp(const std::vector<ColumnQuadratic>& cols,
                                          const PowerConstraint& con, double tol);

double qcqp_objective(const std::vector<ColumnQuadratic>& cols,
                      const std::vector<CVec>& w);

// Coupled multi-block QCQP in stacked form: per column l a D x D quadratic
// over the concatenated per-block variables, one power constraint per block.
struct MultiblockQcqp {
  std::vector<CMat> A;                 // per column, D x D Hermitian PSD
  std::vector<CVec> b;                 // per column, D
  std::vector<PowerConstraint> cons;   // per block
  std::vector<int> offset;             // block starts, size S+1, offset[S] = D
  std::vector<std::vector<int>> active_cols;  // columns optimized per block
};

// Gauss-Seidel block coordinate descent; each block solved exactly with the
// single-constraint solver, other blocks frozen. Objective non-increasing.
// Returns per-block matrices T_s x L (inactive columns zero).
std::vector<CMat> solve_multiblock_qcqp(const MultiblockQcqp& prob,
                                        std::vector<CMat> init, double tol,
                                        int max_rounds);

double multiblock_objective(const MultiblockQcqp& prob,
                            const std::vector<CMat>& w);

// Exchanged consensus intermediates for one subcarrier: f complex, p and q
// real with q's diagonal fixed at zero. Also the shape of the PDD duals.
struct Intermediates {
  CVec f;  // U
  RVec p;  // U
  RMat q;  // U x U

  static Intermediates zeros(int U);
  Intermediates& operator+=(const Intermediates& o);
  Intermediates& operator-=(const Intermediates& o);
  Intermediates scaled(double c) const;
  double max_abs() const;
};

// Closed-form minimizer of the separable augmented-Lagrangian problem:
// sum_u nu_u Upsilon_u(f,p,q) + rho/2 sum_s || Gamma - Gamma_s + Theta_s/rho ||_F^2
// with p >= 0 and q >= 0 entrywise.
Intermediates solve_separable_alp(const RVec& nu, const CVec& mu, double sigma2,
                                  const std::vector<Intermediates>& gamma_locals,
                                  const std::vector<Intermediates>& duals,
                                  double rho);

}  // namespace leobf
