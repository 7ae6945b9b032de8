#include "vtsi/coupled_system.hpp"

#include <algorithm>
#include <stdexcept>

#include "vtsi/bspline.hpp"

namespace vtsi {

CoupledSystem::CoupledSystem(BridgeModel bridge, TrainModel train, double speed,
                             double front_position, Interpolation interp,
                             std::optional<IrregularityProfile> irregularity)
    : bridge_(std::move(bridge)),
      train_(std::move(train)),
      speed_(speed),
      interp_(interp),
      irregularity_(std::move(irregularity)) {
  bridge_.system.validate();
  train_.system.validate();
  if (train_.Lt.cols() != train_.n_dof()) {
    throw std::invalid_argument("CoupledSystem: Lt column count does not match train DOFs");
  }
  if (static_cast<int>(train_.wheel_offsets.size()) != train_.n_wheels()) {
    throw std::invalid_argument("CoupledSystem: one offset per wheel required");
  }
  if (interp_ == Interpolation::bspline && bridge_.ends != EndCondition::fixed) {
    throw std::invalid_argument("CoupledSystem: B-spline interpolation requires fixed ends");
  }
  const double front = train_.wheel_offsets.empty() ? 0.0 : train_.wheel_offsets.back();
  for (double off : train_.wheel_offsets) x0_.push_back(front_position - (front - off));
  Mb_ = bridge_.system.M.sparseView();
  Cb_ = bridge_.system.C.sparseView();
  Kb_ = bridge_.system.K.sparseView();
}

double CoupledSystem::rho_at(double x) const {
  if (!irregularity_ || x < bridge_.x_start || x > bridge_.x_end) return 0.0;
  return irregularity_->eval(x);
}

CouplingState CoupledSystem::coupling(double t) const {
  CouplingState s;
  s.t = t;
  s.x_w = positions(t);
  const int n = n_wheels();
  s.active.resize(n);
  s.rho = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    s.active[i] = s.x_w[i] >= bridge_.x_start && s.x_w[i] <= bridge_.x_end;
    s.rho(i) = rho_at(s.x_w[i]);
  }
  s.Lb = interp_ == Interpolation::hermite ? assemble_Lb(bridge_, s.x_w)
                                           : assemble_Lb_spline(bridge_, s.x_w);
  return s;
}

State static_init(const CoupledSystem& sys, double t) {
  const int nt = sys.n_train(), nb = sys.n_bridge(), nw = sys.n_wheels();
  const int n = nt + nb;
  const CouplingState c = sys.coupling(t);
  // Constraint rows and multiplier columns scaled to the stiffness level.
  double scale = 1.0;
  for (const Mat* K : {&sys.train().system.K, &sys.bridge().system.K}) {
    if (K->size() > 0) scale = std::max(scale, K->cwiseAbs().maxCoeff());
  }
  Mat KKT = Mat::Zero(n + nw, n + nw);
  Vec rhs = Vec::Zero(n + nw);
  KKT.topLeftCorner(nt, nt) = sys.train().system.K;
  KKT.block(nt, nt, nb, nb) = sys.bridge().system.K;
  const Mat Lb = Mat(c.Lb);
  KKT.block(n, 0, nw, nt) = scale * sys.train().Lt;
  KKT.block(n, nt, nw, nb) = scale * Lb;
  KKT.block(0, n, nt, nw) = scale * sys.train().Lt.transpose();
  KKT.block(nt, n, nb, nw) = scale * Lb.transpose();
  rhs.head(nt) = sys.train().system.P;
  rhs.segment(nt, nb) = sys.bridge().system.P;
  rhs.tail(nw) = -scale * c.rho;

  Eigen::FullPivLU<Mat> lu(KKT);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible()) throw SolverError("static_init: singular equilibrium system");
  Vec x = lu.solve(rhs);
  x += lu.solve(Vec(rhs - KKT * x));
  x.tail(nw) *= scale;

  State s;
  s.t = t;
  s.ut = x.head(nt);
  s.ub = x.segment(nt, nb);
  s.lambda = x.tail(nw);
  s.lambda_half = s.lambda;
  s.vt = s.at = Vec::Zero(nt);
  s.vb = s.ab = Vec::Zero(nb);
  s.constraint_residual = constraint_residual(sys.train().Lt, s.ut, s.ub, c).cwiseAbs().maxCoeff();
  if (nw == 0) s.constraint_residual = 0.0;
  return s;
}

}  // namespace vtsi
