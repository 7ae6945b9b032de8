#include "vtsi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SparseLU>

namespace vtsi {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void append(Triplets& out, const SparseMat& A, Index r0, Index c0, double scale = 1.0) {
  for (Index k = 0; k < A.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(A, k); it; ++it) {
      out.emplace_back(r0 + it.row(), c0 + it.col(), scale * it.value());
    }
  }
}

void append(Triplets& out, const Mat& A, Index r0, Index c0, double scale = 1.0) {
  for (Index j = 0; j < A.cols(); ++j) {
    for (Index i = 0; i < A.rows(); ++i) {
      if (A(i, j) != 0.0) out.emplace_back(r0 + i, c0 + j, scale * A(i, j));
    }
  }
}

SparseMat block_diag(const Mat& A, const SparseMat& B) {
  SparseMat out(A.rows() + B.rows(), A.cols() + B.cols());
  Triplets t;
  append(t, A, 0, 0);
  append(t, B, A.rows(), A.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

}  // namespace

double DaeResidual::max_abs() const {
  double m = 0.0;
  for (const Vec* v : {&F1, &F2, &F3, &F4, &F5}) {
    if (v->size() > 0) m = std::max(m, v->cwiseAbs().maxCoeff());
  }
  return m;
}

DaeResidual dae_residual(const CoupledSystem& sys, const State& s, const State& rate) {
  const auto& t = sys.train().system;
  const auto& Lt = sys.train().Lt;
  const CouplingState c = sys.coupling(s.t);
  DaeResidual r;
  r.F1 = t.M * rate.vt + t.C * s.vt + t.K * s.ut + Lt.transpose() * s.lambda - t.P;
  r.F2 = sys.Mb() * rate.vb + sys.Cb() * s.vb + sys.Kb() * s.ub +
         SparseMat(c.Lb.transpose()) * s.lambda - sys.bridge().system.P;
  r.F3 = rate.ut - s.vt;
  r.F4 = rate.ub - s.vb;
  r.F5 = Lt * s.ut + c.Lb * s.ub + c.rho;
  return r;
}

BdfIntegrator::BdfIntegrator(const CoupledSystem& system, double dt, int order)
    : sys_(system), dt_(dt), order_(order) {
  if (!(dt > 0.0)) throw std::invalid_argument("BdfIntegrator: dt must be positive");
  if (order != 1 && order != 2) throw std::invalid_argument("BdfIntegrator: order must be 1 or 2");
  const auto& t = sys_.train().system;
  M_ = block_diag(t.M, sys_.Mb());
  C_ = block_diag(t.C, sys_.Cb());
  K_ = block_diag(t.K, sys_.Kb());
}

State BdfIntegrator::step(const State& s, const State* previous) const {
  const int nt = sys_.n_train(), nb = sys_.n_bridge(), nw = sys_.n_wheels();
  const int n = nt + nb;
  const bool second = order_ == 2 && previous != nullptr;
  const double c0 = second ? 1.5 : 1.0, c1 = second ? -2.0 : -1.0, c2 = second ? 0.5 : 0.0;
  const double t1 = s.t + dt_;
  const CouplingState c = sys_.coupling(t1);

  Vec u0(n), v0(n), um(n), vm(n);
  u0 << s.ut, s.ub;
  v0 << s.vt, s.vb;
  if (second) {
    um << previous->ut, previous->ub;
    vm << previous->vt, previous->vb;
  } else {
    um.setZero();
    vm.setZero();
  }
  Vec P(n);
  P << sys_.train().system.P, sys_.bridge().system.P;

  // Constraint rows and multiplier columns scaled by the stiffness level.
  const double scale = std::max(1.0, K_.coeffs().cwiseAbs().maxCoeff());
  SparseMat G(nw, n);
  {
    Triplets t;
    append(t, sys_.train().Lt, 0, 0);
    append(t, SparseMat(c.Lb), 0, nt);
    G.setFromTriplets(t.begin(), t.end());
  }

  SparseMat J(2 * n + nw, 2 * n + nw);
  Triplets t;
  SparseMat I(n, n);
  I.setIdentity();
  append(t, I, 0, 0, c0 / dt_);
  append(t, I, 0, n, -1.0);
  append(t, K_, n, 0);
  append(t, SparseMat(c0 / dt_ * M_ + C_), n, n);
  append(t, SparseMat(G.transpose()), n, 2 * n, scale);
  append(t, G, 2 * n, 0, scale);
  J.setFromTriplets(t.begin(), t.end());

  Vec rhs(2 * n + nw);
  rhs.head(n) = -(c1 * u0 + c2 * um) / dt_;
  rhs.segment(n, n) = P - M_ * ((c1 * v0 + c2 * vm) / dt_);
  rhs.tail(nw) = -scale * c.rho;

  Eigen::SparseLU<SparseMat> lu;
  lu.compute(J);
  if (lu.info() != Eigen::Success) {
    throw SolverError("bdf_step: singular step matrix at t = " + std::to_string(t1));
  }
  Vec x = lu.solve(rhs);
  // One refinement sweep.
  x += lu.solve(Vec(rhs - J * x));

  State out;
  out.t = t1;
  const Vec u = x.head(n), v = x.segment(n, n);
  const Vec a = (c0 * v + c1 * v0 + c2 * vm) / dt_;
  out.ut = u.head(nt);
  out.ub = u.tail(nb);
  out.vt = v.head(nt);
  out.vb = v.tail(nb);
  out.at = a.head(nt);
  out.ab = a.tail(nb);
  out.lambda = scale * x.tail(nw);
  out.lambda_half = out.lambda;
  if (nw > 0) {
    out.constraint_residual =
        constraint_residual(sys_.train().Lt, out.ut, out.ub, c).cwiseAbs().maxCoeff();
  }
  return out;
}

DirectCoupledIntegrator::DirectCoupledIntegrator(const CoupledSystem& system, double dt)
    : sys_(system), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("DirectCoupledIntegrator: dt must be positive");
  if (sys_.interpolation() != Interpolation::hermite) {
    throw std::invalid_argument("DirectCoupledIntegrator: requires Hermite constraint rows");
  }
  if (sys_.irregularity()) {
    throw std::invalid_argument("DirectCoupledIntegrator: requires a smooth track (no irregularity)");
  }
  const auto& tr = sys_.train();
  const int nw = tr.n_wheels();
  for (int i = 0; i < nw; ++i) {
    int dof = -1;
    for (int j = 0; j < tr.n_dof(); ++j) {
      const double v = tr.Lt(i, j);
      if (v == 0.0) continue;
      if (v != -1.0 || dof >= 0) {
        throw std::invalid_argument("DirectCoupledIntegrator: each Lt row must be -1 on one wheel DOF");
      }
      dof = j;
    }
    if (dof < 0) throw std::invalid_argument("DirectCoupledIntegrator: empty Lt row");
    wheel_.push_back(dof);
  }
  std::vector<bool> is_wheel(tr.n_dof(), false);
  for (int d : wheel_) {
    if (is_wheel[d]) throw std::invalid_argument("DirectCoupledIntegrator: wheel DOF shared by two rows");
    is_wheel[d] = true;
  }
  for (int j = 0; j < tr.n_dof(); ++j) {
    if (!is_wheel[j]) carriage_.push_back(j);
  }
  TrainModel layout = tr;
  layout.carriage_dofs = carriage_;
  layout.wheel_dofs = wheel_;
  p_ = partition(layout);
}

DirectCoupledIntegrator::Matrices DirectCoupledIntegrator::matrices(double t) const {
  const double v = sys_.speed();
  const auto x = sys_.positions(t);
  const SparseMat L = assemble_Lb(sys_.bridge(), x, 0);
  const SparseMat L1 = v * SparseMat(assemble_Lb(sys_.bridge(), x, 1));
  const SparseMat L2 = v * v * SparseMat(assemble_Lb(sys_.bridge(), x, 2));
  const SparseMat LT = L.transpose();
  const int nc = static_cast<int>(carriage_.size());
  const int nb = sys_.n_bridge();

  auto sp = [](const Mat& m) { return SparseMat(m.sparseView()); };
  const SparseMat Mww = sp(p_.Mww), Cww = sp(p_.Cww), Kww = sp(p_.Kww);
  const SparseMat Mcw = sp(p_.Mcw), Ccw = sp(p_.Ccw), Kcw = sp(p_.Kcw);
  const SparseMat Mwc = sp(p_.Mwc), Cwc = sp(p_.Cwc), Kwc = sp(p_.Kwc);

  const SparseMat Mbb = sys_.Mb() + LT * Mww * L;
  const SparseMat Cbb = sys_.Cb() + LT * Cww * L + 2.0 * LT * Mww * L1;
  const SparseMat Kbb = sys_.Kb() + LT * Kww * L + LT * Cww * L1 + LT * Mww * L2;
  const SparseMat Mcb = Mcw * L;
  const SparseMat Ccb = Ccw * L + 2.0 * Mcw * L1;
  const SparseMat Kcb = Kcw * L + Ccw * L1 + Mcw * L2;

  auto assemble = [&](const Mat& cc, const SparseMat& cb, const SparseMat& bc,
                      const SparseMat& bb) {
    SparseMat out(nc + nb, nc + nb);
    Triplets t;
    append(t, cc, 0, 0);
    append(t, cb, 0, nc);
    append(t, bc, nc, 0);
    append(t, bb, nc, nc);
    out.setFromTriplets(t.begin(), t.end());
    return out;
  };
  Matrices m;
  m.M = assemble(p_.Mcc, Mcb, SparseMat(LT * Mwc), Mbb);
  m.C = assemble(p_.Ccc, Ccb, SparseMat(LT * Cwc), Cbb);
  m.K = assemble(p_.Kcc, Kcb, SparseMat(LT * Kwc), Kbb);
  m.F.resize(nc + nb);
  m.F << p_.Pc, sys_.bridge().system.P + LT * p_.Pw;
  return m;
}

void DirectCoupledIntegrator::expand(State& s) const {
  const double v = sys_.speed();
  const auto x = sys_.positions(s.t);
  const SparseRows L = assemble_Lb(sys_.bridge(), x, 0);
  const SparseRows L1 = v * assemble_Lb(sys_.bridge(), x, 1);
  const SparseRows L2 = v * v * assemble_Lb(sys_.bridge(), x, 2);
  const Vec uw = L * s.ub;
  const Vec vw = L * s.vb + L1 * s.ub;
  const Vec aw = L * s.ab + 2.0 * (L1 * s.vb) + L2 * s.ub;
  const Vec uc = s.ut(carriage_), vc = s.vt(carriage_), ac = s.at(carriage_);
  s.ut(wheel_) = uw;
  s.vt(wheel_) = vw;
  s.at(wheel_) = aw;
  s.lambda = p_.Mww * aw + p_.Mwc * ac + p_.Cww * vw + p_.Cwc * vc + p_.Kww * uw + p_.Kwc * uc - p_.Pw;
  s.lambda_half = s.lambda;
  s.constraint_residual = 0.0;
}

State DirectCoupledIntegrator::initial(const State& s0) const {
  const int nc = static_cast<int>(carriage_.size());
  const int nb = sys_.n_bridge();
  State s = s0;
  const Matrices m = matrices(s.t);
  Vec u(nc + nb), v(nc + nb);
  u << s.ut(carriage_), s.ub;
  v << s.vt(carriage_), s.vb;
  Eigen::SparseLU<SparseMat> lu(m.M);
  if (lu.info() != Eigen::Success) throw SolverError("direct_coupled: singular mass matrix");
  const Vec a = lu.solve(Vec(m.F - m.C * v - m.K * u));
  s.at = Vec::Zero(sys_.n_train());
  s.at(carriage_) = a.head(nc);
  s.ab = a.tail(nb);
  expand(s);
  return s;
}

State DirectCoupledIntegrator::step(const State& s) const {
  const int nc = static_cast<int>(carriage_.size());
  const int nb = sys_.n_bridge();
  const double t1 = s.t + dt_;
  Vec u(nc + nb), v(nc + nb), a(nc + nb);
  u << s.ut(carriage_), s.ub;
  v << s.vt(carriage_), s.vb;
  a << s.at(carriage_), s.ab;

  const Matrices m = matrices(t1);
  const Vec u_star = u + dt_ * v + dt_ * dt_ / 4.0 * a;
  const Vec v_star = v + dt_ / 2.0 * a;
  const SparseMat S = m.M + dt_ / 2.0 * m.C + dt_ * dt_ / 4.0 * m.K;
  Eigen::SparseLU<SparseMat> lu(S);
  if (lu.info() != Eigen::Success) {
    throw SolverError("direct_coupled: singular step matrix at t = " + std::to_string(t1));
  }
  const Vec a1 = lu.solve(Vec(m.F - m.C * v_star - m.K * u_star));
  const Vec u1 = u_star + dt_ * dt_ / 4.0 * a1;
  const Vec v1 = v_star + dt_ / 2.0 * a1;

  State out;
  out.t = t1;
  out.ut = out.vt = out.at = Vec::Zero(sys_.n_train());
  out.ut(carriage_) = u1.head(nc);
  out.vt(carriage_) = v1.head(nc);
  out.at(carriage_) = a1.head(nc);
  out.ub = u1.tail(nb);
  out.vb = v1.tail(nb);
  out.ab = a1.tail(nb);
  expand(out);
  return out;
}

}  // namespace vtsi
