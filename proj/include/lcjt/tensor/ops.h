//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_TENSOR_OPS_H_
#define LCJT_TENSOR_OPS_H_

#include <span>
#include <vector>

#include "lcjt/tensor/tensor.h"

// Differentiable primitives. All throw ShapeError naming the offending
// shapes when operands do not conform.
namespace lcjt::ops {

Var matmul(Var a, Var b);
// Same shape, or b a 1 x n row broadcast over the rows of a.
Var add(Var a, Var b);
Var sub(Var a, Var b);
// Elementwise product, same shapes.
Var mul(Var a, Var b);
Var scale(Var a, double s);
Var add_scalar(Var a, double s);
Var transpose(Var a);

Var concat_cols(const std::vector<Var> &parts);
Var concat_rows(const std::vector<Var> &parts);
Var slice_cols(Var a, int start, int count);
Var slice_rows(Var a, int start, int count);
Var gather_rows(Var a, std::span<const int> rows);

Var relu(Var a);
Var sigmoid(Var a);
Var tanh(Var a);
Var exp(Var a);

// Reductions to 1 x 1.
Var sum(Var a);
Var mean(Var a);
// Column-wise reductions to 1 x cols.
Var sum_rows(Var a);
Var mean_rows(Var a);

Var softmax_rows(Var a);

// Sum over rows of -log softmax(logits)[target]. 1 x 1.
Var softmax_cross_entropy(Var logits, std::span<const int> targets);
// Sum of elementwise BCE between sigmoid(logits) and 0/1 targets, computed
// stably from the logits. 1 x 1.
Var binary_cross_entropy(Var logits, const Mat &targets);

}  // namespace lcjt::ops

#endif  // LCJT_TENSOR_OPS_H_
