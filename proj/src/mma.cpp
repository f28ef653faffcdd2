#include "trussopt/mma.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

namespace trussopt {

MmaSolver::MmaSolver(int n, int m, Vec lower, Vec upper, MmaOptions options)
    : n_(n), m_(m), lower_(std::move(lower)), upper_(std::move(upper)),
      options_(options) {
  if (n_ <= 0 || m_ <= 0) throw std::invalid_argument("MmaSolver: empty problem");
  if (lower_.size() != n_ || upper_.size() != n_) {
    throw std::invalid_argument("MmaSolver: bound size mismatch");
  }
  reset();
}

void MmaSolver::reset() {
  iter_ = 0;
  xold1_ = Vec::Zero(n_);
  xold2_ = Vec::Zero(n_);
  low_ = lower_;
  upp_ = upper_;
}

Vec MmaSolver::update(const Vec& x, const Vec& dfdx, const Vec& g, const Mat& dgdx) {
  if (x.size() != n_ || dfdx.size() != n_) throw std::invalid_argument("MmaSolver: size mismatch");
  if (g.size() != m_ || dgdx.rows() != m_ || dgdx.cols() != n_) {
    throw std::invalid_argument("MmaSolver: constraint size mismatch");
  }
  ++iter_;
  const Vec range = upper_ - lower_;

  if (iter_ < 3) {
    low_ = x - options_.asy_init * range;
    upp_ = x + options_.asy_init * range;
  } else {
    for (int j = 0; j < n_; ++j) {
      const double osc = (x(j) - xold1_(j)) * (xold1_(j) - xold2_(j));
      double factor = 1.0;
      if (osc > 0) factor = options_.asy_incr;
      else if (osc < 0) factor = options_.asy_decr;
      low_(j) = x(j) - factor * (xold1_(j) - low_(j));
      upp_(j) = x(j) + factor * (upp_(j) - xold1_(j));
      low_(j) = std::max(low_(j), x(j) - 10.0 * range(j));
      low_(j) = std::min(low_(j), x(j) - 0.01 * range(j));
      upp_(j) = std::max(upp_(j), x(j) + 0.01 * range(j));
      upp_(j) = std::min(upp_(j), x(j) + 10.0 * range(j));
    }
  }

  Vec alfa(n_), beta(n_);
  for (int j = 0; j < n_; ++j) {
    alfa(j) = std::max({low_(j) + options_.albefa * (x(j) - low_(j)),
                        x(j) - options_.move * range(j), lower_(j)});
    beta(j) = std::min({upp_(j) - options_.albefa * (upp_(j) - x(j)),
                        x(j) + options_.move * range(j), upper_(j)});
  }

  // Separable approximation coefficients.
  const Vec ux1 = upp_ - x;
  const Vec xl1 = x - low_;
  const Vec ux2 = ux1.cwiseProduct(ux1);
  const Vec xl2 = xl1.cwiseProduct(xl1);
  const Vec xmami_inv = range.cwiseMax(1e-5).cwiseInverse();

  p0_.resize(n_);
  q0_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    const double plus = std::max(dfdx(j), 0.0);
    const double minus = std::max(-dfdx(j), 0.0);
    const double extra = 0.001 * (plus + minus) + options_.raa0 * xmami_inv(j);
    p0_(j) = (plus + extra) * ux2(j);
    q0_(j) = (minus + extra) * xl2(j);
  }

  p_.resize(m_, n_);
  q_.resize(m_, n_);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const double plus = std::max(dgdx(i, j), 0.0);
      const double minus = std::max(-dgdx(i, j), 0.0);
      const double extra = 0.001 * (plus + minus) + options_.raa0 * xmami_inv(j);
      p_(i, j) = (plus + extra) * ux2(j);
      q_(i, j) = (minus + extra) * xl2(j);
    }
  }
  b_ = p_ * ux1.cwiseInverse() + q_ * xl1.cwiseInverse() - g;

  xold2_ = xold1_;
  xold1_ = x;
  return subsolve(alfa, beta);
}

// Primal-dual interior Newton solution of the separable subproblem
//   min  sum_j [ p0/(upp-x) + q0/(x-low) ] + a0 z + sum_i (c y + 0.5 y^2)
//   s.t. P_i/(upp-x) + Q_i/(x-low) - a_i z - y_i <= b_i,  x in [alfa, beta],
// with a0 = 1 and a = 0 (the z variable is inert and stays at its barrier
// floor; it is kept so the iteration matches the published method).
Vec MmaSolver::subsolve(const Vec& alfa, const Vec& beta) const {
  const int n = n_;
  const int m = m_;
  const double a0 = 1.0;
  const Vec a = Vec::Zero(m);
  const Vec c = Vec::Constant(m, options_.elastic_weight);
  const Vec d = Vec::Ones(m);

  double epsi = 1.0;
  Vec x = 0.5 * (alfa + beta);
  Vec y = Vec::Ones(m);
  double z = 1.0;
  Vec lam = Vec::Ones(m);
  Vec xsi = (x - alfa).cwiseInverse().cwiseMax(1.0);
  Vec eta = (beta - x).cwiseInverse().cwiseMax(1.0);
  Vec mu = c.cwiseMax(2.0) * 0.5;
  double zet = 1.0;
  Vec s = Vec::Ones(m);

  const auto residual_norms = [&](double eps, double& norm2, double& norm_inf) {
    const Vec ux1 = upp_ - x;
    const Vec xl1 = x - low_;
    const Vec plam = p0_ + p_.transpose() * lam;
    const Vec qlam = q0_ + q_.transpose() * lam;
    const Vec gvec = p_ * ux1.cwiseInverse() + q_ * xl1.cwiseInverse();
    const Vec dpsidx = plam.cwiseQuotient(ux1.cwiseProduct(ux1)) -
                       qlam.cwiseQuotient(xl1.cwiseProduct(xl1));

    const Vec rex = dpsidx - xsi + eta;
    const Vec rey = c + d.cwiseProduct(y) - mu - lam;
    const double rez = a0 - zet - a.dot(lam);
    const Vec relam = gvec - a * z - y + s - b_;
    const Vec rexsi = xsi.cwiseProduct(x - alfa).array() - eps;
    const Vec reeta = eta.cwiseProduct(beta - x).array() - eps;
    const Vec remu = mu.cwiseProduct(y).array() - eps;
    const double rezet = zet * z - eps;
    const Vec res = lam.cwiseProduct(s).array() - eps;

    double sq = rex.squaredNorm() + rey.squaredNorm() + rez * rez + relam.squaredNorm() +
                rexsi.squaredNorm() + reeta.squaredNorm() + remu.squaredNorm() +
                rezet * rezet + res.squaredNorm();
    norm2 = std::sqrt(sq);
    norm_inf = std::max({rex.cwiseAbs().maxCoeff(), rey.cwiseAbs().maxCoeff(), std::abs(rez),
                         relam.cwiseAbs().maxCoeff(), rexsi.cwiseAbs().maxCoeff(),
                         reeta.cwiseAbs().maxCoeff(), remu.cwiseAbs().maxCoeff(),
                         std::abs(rezet), res.cwiseAbs().maxCoeff()});
  };

  while (epsi > options_.epsimin) {
    double residunorm = 0, residumax = 0;
    residual_norms(epsi, residunorm, residumax);

    int inner = 0;
    while (residumax > 0.9 * epsi && inner < 200) {
      ++inner;
      const Vec ux1 = upp_ - x;
      const Vec xl1 = x - low_;
      const Vec ux2 = ux1.cwiseProduct(ux1);
      const Vec xl2 = xl1.cwiseProduct(xl1);
      const Vec ux3 = ux2.cwiseProduct(ux1);
      const Vec xl3 = xl2.cwiseProduct(xl1);
      const Vec plam = p0_ + p_.transpose() * lam;
      const Vec qlam = q0_ + q_.transpose() * lam;
      const Vec gvec = p_ * ux1.cwiseInverse() + q_ * xl1.cwiseInverse();
      Mat gg(m, n);
      for (int i = 0; i < m; ++i) {
        gg.row(i) = p_.row(i).cwiseQuotient(ux2.transpose()) -
                    q_.row(i).cwiseQuotient(xl2.transpose());
      }
      const Vec dpsidx = plam.cwiseQuotient(ux2) - qlam.cwiseQuotient(xl2);

      const Vec delx = dpsidx - epsi * (x - alfa).cwiseInverse() + epsi * (beta - x).cwiseInverse();
      const Vec dely = c + d.cwiseProduct(y) - lam - epsi * y.cwiseInverse();
      const double delz = a0 - a.dot(lam) - epsi / z;
      const Vec dellam = gvec - a * z - y - b_ + epsi * lam.cwiseInverse();

      const Vec diagx = 2.0 * (plam.cwiseQuotient(ux3) + qlam.cwiseQuotient(xl3)) +
                        xsi.cwiseQuotient(x - alfa) + eta.cwiseQuotient(beta - x);
      const Vec diagy = d + mu.cwiseQuotient(y);
      const Vec diaglam = s.cwiseQuotient(lam);
      const Vec diaglamyi = diaglam + diagy.cwiseInverse();

      Vec dlam(m), dx(n);
      double dz = 0;
      if (m < n) {
        const Vec blam = dellam + dely.cwiseQuotient(diagy) - gg * delx.cwiseQuotient(diagx);
        Mat aa(m + 1, m + 1);
        aa.topLeftCorner(m, m) = Mat(diaglamyi.asDiagonal()) +
                                 gg * diagx.cwiseInverse().asDiagonal() * gg.transpose();
        aa.topRightCorner(m, 1) = a;
        aa.bottomLeftCorner(1, m) = a.transpose();
        aa(m, m) = -zet / z;
        Vec bb(m + 1);
        bb.head(m) = blam;
        bb(m) = delz;
        const Vec solut = aa.partialPivLu().solve(bb);
        dlam = solut.head(m);
        dz = solut(m);
        dx = -delx.cwiseQuotient(diagx) - (gg.transpose() * dlam).cwiseQuotient(diagx);
      } else {
        const Vec diaglamyi_inv = diaglamyi.cwiseInverse();
        const Vec dellamyi = dellam + dely.cwiseQuotient(diagy);
        Mat aa(n + 1, n + 1);
        aa.topLeftCorner(n, n) = Mat(diagx.asDiagonal()) +
                                 gg.transpose() * diaglamyi_inv.asDiagonal() * gg;
        const Vec axz = -gg.transpose() * a.cwiseQuotient(diaglamyi);
        aa.topRightCorner(n, 1) = axz;
        aa.bottomLeftCorner(1, n) = axz.transpose();
        aa(n, n) = zet / z + a.dot(a.cwiseQuotient(diaglamyi));
        Vec bb(n + 1);
        bb.head(n) = -(delx + gg.transpose() * dellamyi.cwiseQuotient(diaglamyi));
        bb(n) = -(delz - a.dot(dellamyi.cwiseQuotient(diaglamyi)));
        const Vec solut = aa.partialPivLu().solve(bb);
        dx = solut.head(n);
        dz = solut(n);
        dlam = (gg * dx).cwiseQuotient(diaglamyi) - dz * a.cwiseQuotient(diaglamyi) +
               dellamyi.cwiseQuotient(diaglamyi);
      }

      const Vec dy = -dely.cwiseQuotient(diagy) + dlam.cwiseQuotient(diagy);
      const Vec dxsi = -xsi + (epsi - xsi.cwiseProduct(dx).array()).matrix().cwiseQuotient(x - alfa);
      const Vec deta = -eta + (epsi + eta.cwiseProduct(dx).array()).matrix().cwiseQuotient(beta - x);
      const Vec dmu = -mu + (epsi - mu.cwiseProduct(dy).array()).matrix().cwiseQuotient(y);
      const double dzet = -zet + (epsi - zet * dz) / z;
      const Vec ds = -s + (epsi - s.cwiseProduct(dlam).array()).matrix().cwiseQuotient(lam);

      // Fraction-to-boundary step limit over every positive variable.
      double stmax = 1.0;
      const auto limit = [&stmax](const Vec& v, const Vec& dv) {
        for (int j = 0; j < v.size(); ++j) {
          if (dv(j) < 0) stmax = std::max(stmax, -1.01 * dv(j) / v(j));
        }
      };
      limit(y, dy);
      limit(lam, dlam);
      limit(xsi, dxsi);
      limit(eta, deta);
      limit(mu, dmu);
      limit(s, ds);
      if (dz < 0) stmax = std::max(stmax, -1.01 * dz / z);
      if (dzet < 0) stmax = std::max(stmax, -1.01 * dzet / zet);
      for (int j = 0; j < n; ++j) {
        if (dx(j) < 0) stmax = std::max(stmax, -1.01 * dx(j) / (x(j) - alfa(j)));
        if (dx(j) > 0) stmax = std::max(stmax, 1.01 * dx(j) / (beta(j) - x(j)));
      }
      double steg = 1.0 / stmax;

      const Vec xold = x, yold = y, lamold = lam, xsiold = xsi, etaold = eta, muold = mu,
                sold = s;
      const double zold = z, zetold = zet;

      // Backtrack until the residual norm decreases.
      double resinew = 2.0 * residunorm;
      int backtracks = 0;
      while (resinew > residunorm && backtracks < 50) {
        x = xold + steg * dx;
        y = yold + steg * dy;
        z = zold + steg * dz;
        lam = lamold + steg * dlam;
        xsi = xsiold + steg * dxsi;
        eta = etaold + steg * deta;
        mu = muold + steg * dmu;
        zet = zetold + steg * dzet;
        s = sold + steg * ds;
        double ignored = 0;
        residual_norms(epsi, resinew, ignored);
        steg *= 0.5;
        ++backtracks;
      }
      residual_norms(epsi, residunorm, residumax);
    }
    epsi *= 0.1;
  }
  return x;
}

}  // namespace trussopt
