#include "leobf/qcqp.hpp"

#include <cmath>

namespace leobf {

namespace {

constexpr double kPsdSlack = 1e-9;
constexpr double kPinvTol = 1e-12;
constexpr int kMaxDoublings = 60;
constexpr int kMaxBisects = 300;

void validate_inputs(const std::vector<ColumnQuadratic>& cols,
                     const PowerConstraint& con) {
  if (!(con.budget > 0)) throw SolverError("qcqp: budget must be > 0");
  auto check_psd = [](const CMat& m, const char* what) {
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale)) {
      throw SolverError(std::string("qcqp: ") + what + " not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdSlack * (1.0 + scale)) {
      throw SolverError(std::string("qcqp: ") + what + " not PSD");
    }
  };
  check_psd(con.gram, "constraint gram");
  for (const auto& c : cols) {
    if (c.A.rows() != con.gram.rows()) throw SolverError("qcqp: dimension mismatch");
    check_psd(c.A, "column matrix");
  }
}

double power_of(const std::vector<CVec>& w, const CMat& gram) {
  double p = 0.0;
  for (const auto& col : w) p += (col.adjoint() * gram * col).real()(0, 0);
  return p;
}

std::vector<CVec> solve_at(const std::vector<ColumnQuadratic>& cols,
                           const CMat& gram, double lambda) {
  std::vector<CVec> w;
  w.reserve(cols.size());
  for (const auto& c : cols) {
    const CMat m = c.A + lambda * gram;
    Eigen::LDLT<CMat> ldlt(m);
    if (ldlt.info() != Eigen::Success) {
      throw SolverError("qcqp: factorization failed (degenerate gram matrix)");
    }
    w.push_back(ldlt.solve(c.b));
  }
  return w;
}

}  // namespace

double qcqp_objective(const std::vector<ColumnQuadratic>& cols,
                      const std::vector<CVec>& w) {
  double obj = 0.0;
  for (size_t i = 0; i < cols.size(); ++i) {
    obj += (w[i].adjoint() * cols[i].A * w[i]).real()(0, 0) -
           2.0 * (cols[i].b.adjoint() * w[i]).real()(0, 0);
  }
  return obj;
}

QcqpSolution solve_single_constraint_qcqp(const std::vector<ColumnQuadratic>& cols,
                                          const PowerConstraint& con, double tol) {
  validate_inputs(cols, con);
  QcqpSolution sol;

  // Unconstrained candidate (lambda = 0) through the PSD pseudo-inverse.
  bool unconstrained_ok = true;
  std::vector<CVec> w0;
  w0.reserve(cols.size());
  for (const auto& c : cols) {
    Eigen::SelfAdjointEigenSolver<CMat> es(c.A);
    const RVec ev = es.eigenvalues();
    const double cutoff = kPinvTol * std::max(ev.maxCoeff(), 0.0);
    CVec y = es.eigenvectors().adjoint() * c.b;
    for (int i = 0; i < y.size(); ++i) {
      y[i] = ev[i] > cutoff ? y[i] / ev[i] : cplx(0, 0);
    }
    CVec w = es.eigenvectors() * y;
    // b outside the range of A means the column cost is unbounded below
    // unless the power constraint binds.
    if ((c.A * w - c.b).norm() > 1e-9 * (c.b.norm() + 1e-300)) {
      unconstrained_ok = false;
      break;
    }
    w0.push_back(std::move(w));
  }
  if (unconstrained_ok && power_of(w0, con.gram) <= con.budget * (1.0 + 1e-12)) {
    sol.cols = std::move(w0);
    sol.lambda = 0.0;
    return sol;
  }

  // Bracket: power(lambda) is non-increasing; grow hi until feasible.
  double hi = 1.0;
  double p_hi = power_of(solve_at(cols, con.gram, hi), con.gram);
  int doublings = 0;
  while (p_hi > con.budget) {
    if (++doublings > kMaxDoublings) {
      throw SolverError("qcqp: bisection bracket failure (degenerate gram matrix)");
    }
    hi *= 2.0;
    const double p_next = power_of(solve_at(cols, con.gram, hi), con.gram);
    if (p_next > p_hi * (1.0 + 1e-9)) {
      throw SolverError("qcqp: power not monotone in lambda");
    }
    p_hi = p_next;
  }

  double lo = 0.0;
  double lambda = hi;
  std::vector<CVec> w = solve_at(cols, con.gram, hi);
  double p = p_hi;
  for (int it = 0; it < kMaxBisects; ++it) {
    if (std::abs(p - con.budget) <= tol * con.budget) break;
    const double mid = 0.5 * (lo + hi);
    const auto w_mid = solve_at(cols, con.gram, mid);
    const double p_mid = power_of(w_mid, con.gram);
    if (p_mid > con.budget) {
      lo = mid;
    } else {
      hi = mid;
      lambda = mid;
      w = w_mid;
      p = p_mid;
    }
    if (hi - lo < 1e-18 * (1.0 + hi)) break;
  }
  sol.cols = std::move(w);
  sol.lambda = lambda;
  return sol;
}

double multiblock_objective(const MultiblockQcqp& prob,
                            const std::vector<CMat>& w) {
  const int D = prob.offset.back();
  const int S = static_cast<int>(prob.cons.size());
  const int L = static_cast<int>(prob.A.size());
  double obj = 0.0;
  CVec stacked(D);
  for (int l = 0; l < L; ++l) {
    for (int s = 0; s < S; ++s) {
      stacked.segment(prob.offset[s], prob.offset[s + 1] - prob.offset[s]) =
          w[s].col(l);
    }
    obj += (stacked.adjoint() * prob.A[l] * stacked).real()(0, 0) -
           2.0 * (prob.b[l].adjoint() * stacked).real()(0, 0);
  }
  return obj;
}

std::vector<CMat> solve_multiblock_qcqp(const MultiblockQcqp& prob,
                                        std::vector<CMat> init, double tol,
                                        int max_rounds) {
  const int S = static_cast<int>(prob.cons.size());
  std::vector<CMat> w = std::move(init);
  double prev = multiblock_objective(prob, w);
  for (int round = 0; round < max_rounds; ++round) {
    for (int s = 0; s < S; ++s) {
      const int o = prob.offset[s];
      const int t = prob.offset[s + 1] - o;
      std::vector<ColumnQuadratic> cols;
      cols.reserve(prob.active_cols[s].size());
      for (int l : prob.active_cols[s]) {
        ColumnQuadratic c;
        c.A = prob.A[l].block(o, o, t, t);
        c.b = prob.b[l].segment(o, t);
        for (int j = 0; j < S; ++j) {
          if (j == s) continue;
          const int oj = prob.offset[j];
          const int tj = prob.offset[j + 1] - oj;
          c.b -= prob.A[l].block(o, oj, t, tj) * w[j].col(l);
        }
        cols.push_back(std::move(c));
      }
      const QcqpSolution sol =
          solve_single_constraint_qcqp(cols, prob.cons[s], tol);
      w[s].setZero();
      for (size_t i = 0; i < prob.active_cols[s].size(); ++i) {
        w[s].col(prob.active_cols[s][i]) = sol.cols[i];
      }
    }
    const double obj = multiblock_objective(prob, w);
    if (std::abs(prev - obj) <= tol * (std::abs(prev) + 1e-300)) {
      prev = obj;
      break;
    }
    prev = obj;
  }
  return w;
}

Intermediates Intermediates::zeros(int U) {
  Intermediates g;
  g.f = CVec::Zero(U);
  g.p = RVec::Zero(U);
  g.q = RMat::Zero(U, U);
  return g;
}

Intermediates& Intermediates::operator+=(const Intermediates& o) {
  f += o.f;
  p += o.p;
  q += o.q;
  return *this;
}

Intermediates& Intermediates::operator-=(const Intermediates& o) {
  f -= o.f;
  p -= o.p;
  q -= o.q;
  return *this;
}

Intermediates Intermediates::scaled(double c) const {
  Intermediates g;
  g.f = c * f;
  g.p = c * p;
  g.q = c * q;
  return g;
}

double Intermediates::max_abs() const {
  double m = f.size() > 0 ? f.cwiseAbs().maxCoeff() : 0.0;
  if (p.size() > 0) m = std::max(m, p.cwiseAbs().maxCoeff());
  if (q.size() > 0) m = std::max(m, q.cwiseAbs().maxCoeff());
  return m;
}

Intermediates solve_separable_alp(const RVec& nu, const CVec& mu, double sigma2,
                                  const std::vector<Intermediates>& gamma_locals,
                                  const std::vector<Intermediates>& duals,
                                  double rho) {
  (void)sigma2;  // additive constant in the objective, not in the minimizer
  if (!(rho > 0)) throw SolverError("alp: rho must be > 0");
  const int S = static_cast<int>(gamma_locals.size());
  if (S < 1 || duals.size() != gamma_locals.size()) {
    throw SolverError("alp: need matching locals and duals, S >= 1");
  }
  const int U = static_cast<int>(nu.size());
  Intermediates out = Intermediates::zeros(U);

  // Per-entry targets a_s = Gamma_s - Theta_s / rho enter only through sums.
  CVec f_sum = CVec::Zero(U);
  RVec p_sum = RVec::Zero(U);
  RMat q_sum = RMat::Zero(U, U);
  for (int s = 0; s < S; ++s) {
    f_sum += gamma_locals[s].f - duals[s].f / rho;
    p_sum += gamma_locals[s].p - duals[s].p / rho;
    q_sum += gamma_locals[s].q - duals[s].q / rho;
  }

  for (int u = 0; u < U; ++u) {
    const double w = nu[u] * std::norm(mu[u]);
    // F_u: nu|1 - mu F|^2 + (rho/2) sum_s |F - a_s|^2, unconstrained complex.
    out.f[u] = (nu[u] * std::conj(mu[u]) + 0.5 * rho * f_sum[u]) /
               (w + 0.5 * rho * S);
    // P_u: nu|mu|^2 P + (rho/2) sum_s (P - a_s)^2, clamped at zero.
    out.p[u] = std::max(0.0, (p_sum[u] - w / rho) / S);
    for (int l = 0; l < U; ++l) {
      const double c = (l == u) ? 0.0 : w;  // no Q_{u,u} term in the objective
      out.q(u, l) = std::max(0.0, (q_sum(u, l) - c / rho) / S);
    }
  }
  return out;
}

}  // namespace leobf
