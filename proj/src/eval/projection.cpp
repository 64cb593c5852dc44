//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/eval/projection.h"

#include <cmath>
#include <limits>
#include <string>

#include "lcjt/error.h"
#include "lcjt/tensor/rng.h"

namespace lcjt {
namespace {
void require_points(const Eigen::MatrixXd &points) {
  if (points.rows() < 3)
    throw Error("projection: need at least 3 points, got "
                + std::to_string(points.rows()));
  if (!points.allFinite())
    throw Error("projection: non-finite coordinate");
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd &x) {
  const Eigen::VectorXd sq = x.rowwise().squaredNorm();
  Eigen::MatrixXd d = -2.0 * x * x.transpose();
  d.colwise() += sq;
  d.rowwise() += sq.transpose();
  d = d.cwiseMax(0.0);
  d.diagonal().setZero();
  return d;
}
}  // namespace

std::string_view to_string(ProjectionMethod m) {
  return m == ProjectionMethod::kPca ? "pca" : "tsne";
}

ProjectionMethod parse_projection_method(std::string_view s) {
  if (s == "pca")
    return ProjectionMethod::kPca;
  if (s == "tsne")
    return ProjectionMethod::kTsne;
  throw Error("unknown projection method '" + std::string(s) + "'");
}

Eigen::MatrixXd fingerprint_matrix(const std::vector<Fingerprint> &fps) {
  if (fps.empty())
    return {};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(fps.size()),
                                            fps.front().nbits());
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (fps[i].nbits() != fps.front().nbits())
      throw Error("fingerprint_matrix: mixed fingerprint widths");
    for (int b = 0; b < fps[i].nbits(); ++b)
      m(static_cast<Eigen::Index>(i), b) = fps[i].test(b) ? 1.0 : 0.0;
  }
  return m;
}

Eigen::MatrixXd pca_2d(const Eigen::MatrixXd &points) {
  require_points(points);
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd c = points.rowwise() - points.colwise().mean();
  // Gram matrix is n x n, much smaller than the bit-space covariance.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c * c.transpose());
  Eigen::MatrixXd out(n, 2);
  for (int k = 0; k < 2; ++k) {
    const Eigen::Index idx = n - 1 - k;  // ascending eigenvalues
    const double lambda = es.eigenvalues()(idx);
    // Round-off can leave a tiny residue on a null direction.
    const double tol = 1e-10 * std::max(1.0, es.eigenvalues()(n - 1));
    Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
    if (lambda > tol)
      col = es.eigenvectors().col(idx) * std::sqrt(lambda);
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(col(i)) > std::abs(col(arg)) + 1e-12)
        arg = i;
    }
    if (col(arg) < 0)
      col = -col;
    out.col(k) = col;
  }
  return out;
}

TsneAffinities tsne_affinities(const Eigen::MatrixXd &points, double perplexity) {
  require_points(points);
  const Eigen::Index n = points.rows();
  if (!(perplexity > 0))
    throw Error("tsne: perplexity must be positive");
  const Eigen::MatrixXd d = squared_distances(points);
  const double target = std::log(perplexity);
  TsneAffinities a;
  a.conditional = Eigen::MatrixXd::Zero(n, n);
  a.beta = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double beta = 1, lo = 0, hi = std::numeric_limits<double>::infinity();
    Eigen::VectorXd p(n);
    for (int it = 0; it < 200; ++it) {
      // Shift by the nearest distance so exp never underflows to all zeros.
      double dmin = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i)
          dmin = std::min(dmin, d(i, j));
      }
      double sum = 0, dot = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        p(j) = j == i ? 0.0 : std::exp(-(d(i, j) - dmin) * beta);
        sum += p(j);
        dot += p(j) * (d(i, j) - dmin);
      }
      // H = log(sum) + beta * E[d - dmin]
      const double h = std::log(sum) + beta * dot / sum;
      p /= sum;
      const double diff = h - target;
      if (std::abs(diff) < 1e-10)
        break;
      if (diff > 0) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2 : (beta + hi) / 2;
      } else {
        hi = beta;
        beta = (beta + lo) / 2;
      }
    }
    a.conditional.row(i) = p.transpose();
    a.beta(i) = beta;
  }
  a.joint = (a.conditional + a.conditional.transpose()) / (2.0 * static_cast<double>(n));
  return a;
}

Eigen::MatrixXd tsne_2d(const Eigen::MatrixXd &points, const ProjectionConfig &cfg) {
  require_points(points);
  const Eigen::Index n = points.rows();
  if (!(cfg.perplexity < (static_cast<double>(n) - 1) / 3))
    throw Error("tsne: perplexity " + std::to_string(cfg.perplexity)
                + " must be below (n - 1) / 3 = "
                + std::to_string((static_cast<double>(n) - 1) / 3));
  if (cfg.iterations < 1)
    throw Error("tsne: iterations must be positive");
  Eigen::MatrixXd p = tsne_affinities(points, cfg.perplexity).joint;
  p = p.cwiseMax(1e-12);
  p.diagonal().setZero();

  Rng rng(cfg.seed, "tsne");
  Eigen::MatrixXd y(n, 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int k = 0; k < 2; ++k)
      y(i, k) = 1e-4 * rng.normal();

  const double lr = 200;
  const int exaggerate_until = std::min(100, cfg.iterations / 4);
  Eigen::MatrixXd step = Eigen::MatrixXd::Zero(n, 2);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, 2);
  Eigen::MatrixXd num(n, n), grad(n, 2);
  for (int it = 0; it < cfg.iterations; ++it) {
    const double exag = it < exaggerate_until ? 12.0 : 1.0;
    const double momentum = it < 250 ? 0.5 : 0.8;
    num = (1.0 + squared_distances(y).array()).inverse().matrix();
    num.diagonal().setZero();
    const double z = num.sum();
    // dC/dy_i = 4 sum_j (p_ij - q_ij) num_ij (y_i - y_j)
    const Eigen::MatrixXd w = ((exag * p).array() - num.array() / z).matrix().cwiseProduct(num);
    grad = 4.0 * (w.rowwise().sum().asDiagonal() * y - w * y);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int k = 0; k < 2; ++k) {
        const bool same = (grad(i, k) > 0) == (step(i, k) > 0);
        gains(i, k) = std::max(0.01, same ? gains(i, k) * 0.8 : gains(i, k) + 0.2);
      }
    }
    step = momentum * step - lr * gains.cwiseProduct(grad);
    y += step;
    y = y.rowwise() - y.colwise().mean();
  }
  return y;
}

Eigen::MatrixXd project_2d(const Eigen::MatrixXd &points, const ProjectionConfig &cfg) {
  return cfg.method == ProjectionMethod::kPca ? pca_2d(points) : tsne_2d(points, cfg);
}

}  // namespace lcjt
