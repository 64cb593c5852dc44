//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_EVAL_PROJECTION_H_
#define LCJT_EVAL_PROJECTION_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lcjt/chem/fingerprint.h"

namespace lcjt {

enum class ProjectionMethod { kPca, kTsne };

std::string_view to_string(ProjectionMethod m);
ProjectionMethod parse_projection_method(std::string_view s);

struct ProjectionConfig {
  ProjectionMethod method = ProjectionMethod::kTsne;
  double perplexity = 15;  // tsne only
  int iterations = 500;    // tsne only
  std::uint64_t seed = 0;
};

// One row per fingerprint, bits as 0/1.
Eigen::MatrixXd fingerprint_matrix(const std::vector<Fingerprint> &fps);

// Top-two principal component scores of the row-centered points (n x 2).
// Each column's sign is fixed so its largest-magnitude entry is positive.
// Throws Error for fewer than 3 points.
Eigen::MatrixXd pca_2d(const Eigen::MatrixXd &points);

struct TsneAffinities {
  Eigen::MatrixXd conditional;  // row i: p(j | i), zero diagonal
  Eigen::VectorXd beta;         // precision 1 / (2 sigma_i^2)
  Eigen::MatrixXd joint;        // (P + P^T) / 2n
};

// Per-point bandwidths found by bisection so each conditional row has
// entropy log(perplexity) (nats).
TsneAffinities tsne_affinities(const Eigen::MatrixXd &points, double perplexity);

// Exact t-SNE (no Barnes-Hut). Throws Error for fewer than 3 points or
// perplexity >= (n - 1) / 3.
Eigen::MatrixXd tsne_2d(const Eigen::MatrixXd &points, const ProjectionConfig &cfg);

Eigen::MatrixXd project_2d(const Eigen::MatrixXd &points, const ProjectionConfig &cfg);

}  // namespace lcjt

#endif  // LCJT_EVAL_PROJECTION_H_
