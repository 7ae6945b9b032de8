#include "vtsi/bauchau.hpp"

#include <stdexcept>
#include <string>

namespace vtsi {

namespace {

// Columns Mbar^-1 Lb^T for the nonempty rows of Lb only.
Mat bridge_influence(const Eigen::SimplicialLDLT<SparseMat>& solver, const SparseRows& Lb) {
  Mat X = Mat::Zero(Lb.cols(), Lb.rows());
  if (Lb.cols() == 0) return X;
  for (Index i = 0; i < Lb.rows(); ++i) {
    if (Lb.row(i).nonZeros() == 0) continue;
    const Vec col = Vec(Lb.row(i).transpose());
    X.col(i) = solver.solve(col);
  }
  return X;
}

}  // namespace

BauchauIntegrator::BauchauIntegrator(const CoupledSystem& system, double dt)
    : sys_(system), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("BauchauIntegrator: dt must be positive");
  const auto& t = sys_.train().system;
  const double h = dt / 2.0;
  if (sys_.n_train() > 0) {
    train_bar_.compute(t.M + h * t.C + h * h * t.K);
    Xt_ = train_bar_.solve(sys_.train().Lt.transpose());
    if (!Xt_.allFinite()) throw SolverError("BauchauIntegrator: singular train step matrix");
  } else {
    Xt_ = Mat::Zero(0, sys_.n_wheels());
  }
  if (sys_.n_bridge() > 0) {
    bridge_bar_.compute(sys_.Mb() + h * sys_.Cb() + h * h * sys_.Kb());
    if (bridge_bar_.info() != Eigen::Success) {
      throw SolverError("BauchauIntegrator: bridge step matrix factorization failed");
    }
  }
}

State BauchauIntegrator::step(const State& s) const {
  const double h = dt_ / 2.0;
  const auto& tr = sys_.train();
  const auto& ts = tr.system;
  const auto& bs = sys_.bridge().system;
  const CouplingState mid = sys_.coupling(s.t + h);
  const CouplingState end = sys_.coupling(s.t + dt_);

  // Constant loads: (P_{n+1} + P_n) / 2 = P.
  const Vec at = ts.M * s.vt + h * (ts.P - ts.K * s.ut);
  Vec vt_tilde = sys_.n_train() > 0 ? Vec(train_bar_.solve(at)) : Vec::Zero(0);
  Vec vb_tilde = Vec::Zero(sys_.n_bridge());
  Mat Xb = Mat::Zero(sys_.n_bridge(), sys_.n_wheels());
  if (sys_.n_bridge() > 0) {
    const Vec ab = sys_.Mb() * s.vb + h * (bs.P - sys_.Kb() * s.ub);
    vb_tilde = bridge_bar_.solve(ab);
    Xb = bridge_influence(bridge_bar_, mid.Lb);
  }

  const Vec b = -0.5 * (tr.Lt * s.ut + end.Lb * s.ub + end.rho);
  const Mat A = h * h * (tr.Lt * Xt_ + end.Lb * Xb);
  const Vec rhs = h * (tr.Lt * vt_tilde + end.Lb * vb_tilde) - b;
  Vec lambda = Vec::Zero(sys_.n_wheels());
  if (sys_.n_wheels() > 0) {
    Eigen::PartialPivLU<Mat> lu(A);
    lambda = lu.solve(rhs);
    if (!lambda.allFinite() || (A * lambda - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm())) {
      throw SolverError("bauchau_step: singular coupling matrix at t = " + std::to_string(s.t));
    }
  }

  const Vec vt_bar = vt_tilde - h * Xt_ * lambda;
  const Vec vb_bar = vb_tilde - h * Xb * lambda;

  State n;
  n.t = s.t + dt_;
  n.ut = s.ut + dt_ * vt_bar;
  n.ub = s.ub + dt_ * vb_bar;
  n.vt = 2.0 * vt_bar - s.vt;
  n.vb = 2.0 * vb_bar - s.vb;
  n.at = (n.vt - s.vt) / dt_;
  n.ab = (n.vb - s.vb) / dt_;
  n.lambda = lambda;
  n.lambda_half = lambda;
  if (sys_.n_wheels() > 0) {
    n.constraint_residual = constraint_residual(tr.Lt, n.ut, n.ub, end).cwiseAbs().maxCoeff();
  }
  return n;
}

}  // namespace vtsi
