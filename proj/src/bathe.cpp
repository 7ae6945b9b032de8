#include "vtsi/bathe.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vtsi/lcp.hpp"

namespace vtsi {

BatheIntegrator::BatheIntegrator(const CoupledSystem& system, double dt, ContactMode mode)
    : sys_(system), dt_(dt), mode_(mode) {
  if (!(dt > 0.0)) throw std::invalid_argument("BatheIntegrator: dt must be positive");
  factor(half_, 16.0 / (dt * dt), 4.0 / dt);
  factor(full_, 9.0 / (dt * dt), 3.0 / dt);
}

void BatheIntegrator::factor(Stage& stage, double cm, double cc) const {
  const auto& t = sys_.train().system;
  if (sys_.n_train() > 0) {
    stage.train.compute(cm * t.M + cc * t.C + t.K);
    stage.At = stage.train.solve(sys_.train().Lt.transpose());
    if (!stage.At.allFinite()) throw SolverError("BatheIntegrator: singular train step matrix");
  } else {
    stage.At = Mat::Zero(0, sys_.n_wheels());
  }
  if (sys_.n_bridge() > 0) {
    stage.bridge.compute(cm * sys_.Mb() + cc * sys_.Cb() + sys_.Kb());
    if (stage.bridge.info() != Eigen::Success) {
      throw SolverError("BatheIntegrator: bridge step matrix factorization failed");
    }
  }
}

void BatheIntegrator::constrain(const Stage& stage, double tau, const Vec& rt, const Vec& rb,
                                State& out) const {
  const int nw = sys_.n_wheels(), nb = sys_.n_bridge();
  const Mat& Lt = sys_.train().Lt;
  const CouplingState c = sys_.coupling(tau);

  const Vec ut = sys_.n_train() > 0 ? Vec(stage.train.solve(rt)) : Vec::Zero(0);
  Vec ub = Vec::Zero(nb);
  Mat Ab = Mat::Zero(nb, nw);
  if (nb > 0) {
    ub = stage.bridge.solve(rb);
    for (Index i = 0; i < nw; ++i) {
      if (c.Lb.row(i).nonZeros() == 0) continue;
      Ab.col(i) = stage.bridge.solve(Vec(c.Lb.row(i).transpose()));
    }
  }

  Vec lambda = Vec::Zero(nw);
  if (nw > 0) {
    const Mat A = Lt * stage.At + c.Lb * Ab;
    const Vec rho_bar = Lt * ut + c.Lb * ub + c.rho;
    if (mode_ == ContactMode::bilateral) {
      Eigen::PartialPivLU<Mat> lu(A);
      lambda = lu.solve(rho_bar);
      if (!lambda.allFinite()) {
        throw SolverError("bathe: singular coupling matrix at t = " + std::to_string(tau));
      }
    } else {
      lambda = lcp_solve(A, rho_bar).z;
      out.complementarity_residual = lcp_residual(A, rho_bar, lambda);
    }
  }

  out.t = tau;
  out.ut = ut - stage.At * lambda;
  out.ub = ub - Ab * lambda;
  out.lambda = lambda;
  if (nw > 0) {
    const Vec gap = constraint_residual(Lt, out.ut, out.ub, c);
    out.penetration = std::max(0.0, gap.maxCoeff());
    if (mode_ == ContactMode::bilateral) {
      out.constraint_residual = gap.cwiseAbs().maxCoeff();
    } else {
      // Only rows in contact are equalities.
      double r = 0.0;
      for (Index i = 0; i < nw; ++i) {
        if (lambda(i) > 0.0) r = std::max(r, std::abs(gap(i)));
      }
      out.constraint_residual = r;
    }
  }
}

State BatheIntegrator::substep_half(const State& s) const {
  const double dt = dt_;
  const auto& t = sys_.train().system;
  const auto& b = sys_.bridge().system;
  const Vec rt = t.P + t.C * (4.0 / dt * s.ut + s.vt) +
                 t.M * (16.0 / (dt * dt) * s.ut + 8.0 / dt * s.vt + s.at);
  const Vec rb = b.P + sys_.Cb() * (4.0 / dt * s.ub + s.vb) +
                 sys_.Mb() * (16.0 / (dt * dt) * s.ub + 8.0 / dt * s.vb + s.ab);
  State h;
  constrain(half_, s.t + dt / 2.0, rt, rb, h);
  h.vt = 4.0 / dt * (h.ut - s.ut) - s.vt;
  h.vb = 4.0 / dt * (h.ub - s.ub) - s.vb;
  h.at = 4.0 / dt * (h.vt - s.vt) - s.at;
  h.ab = 4.0 / dt * (h.vb - s.vb) - s.ab;
  h.lambda_half = h.lambda;
  return h;
}

State BatheIntegrator::substep_full(const State& s, const State& h) const {
  const double dt = dt_;
  const double dt2 = dt * dt;
  const auto& t = sys_.train().system;
  const auto& b = sys_.bridge().system;
  const Vec rt = t.P + t.C * (4.0 / dt * h.ut - 1.0 / dt * s.ut) +
                 t.M * (12.0 / dt2 * h.ut - 3.0 / dt2 * s.ut + 4.0 / dt * h.vt - 1.0 / dt * s.vt);
  const Vec rb = b.P + sys_.Cb() * (4.0 / dt * h.ub - 1.0 / dt * s.ub) +
                 sys_.Mb() * (12.0 / dt2 * h.ub - 3.0 / dt2 * s.ub + 4.0 / dt * h.vb -
                              1.0 / dt * s.vb);
  State n;
  constrain(full_, s.t + dt, rt, rb, n);
  n.vt = (s.ut - 4.0 * h.ut + 3.0 * n.ut) / dt;
  n.vb = (s.ub - 4.0 * h.ub + 3.0 * n.ub) / dt;
  n.at = (s.vt - 4.0 * h.vt + 3.0 * n.vt) / dt;
  n.ab = (s.vb - 4.0 * h.vb + 3.0 * n.vb) / dt;
  n.lambda_half = h.lambda;
  n.constraint_residual = std::max(n.constraint_residual, h.constraint_residual);
  n.penetration = std::max(n.penetration, h.penetration);
  n.complementarity_residual = std::max(n.complementarity_residual, h.complementarity_residual);
  return n;
}

State BatheIntegrator::step(const State& s, State* half) const {
  const State h = substep_half(s);
  if (half) *half = h;
  return substep_full(s, h);
}

}  // namespace vtsi
