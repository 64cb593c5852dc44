//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/tensor/ops.h"

#include <cmath>

#include "lcjt/error.h"

namespace lcjt::ops {
namespace {
[[noreturn]] void shape_error(const char *op, const Mat &a, const Mat &b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + shape_string(a)
                   + " and " + shape_string(b));
}

Tape &tape_of(Var a) {
  if (a.tape == nullptr)
    throw Error("operation on an unbound Var");
  return *a.tape;
}

Tape &tape_of(Var a, Var b) {
  if (a.tape != b.tape)
    throw Error("operands recorded on different tapes");
  return tape_of(a);
}

double stable_sigmoid(double x) {
  if (x >= 0)
    return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}
}  // namespace

Var matmul(Var a, Var b) {
  Tape &t = tape_of(a, b);
  const Mat &av = a.value(), &bv = b.value();
  if (av.cols() != bv.rows())
    shape_error("matmul", av, bv);
  Mat out = av * bv;
  return t.push(std::move(out), { a, b }, [a, b](Tape &t, int self) {
    const Mat &g = t.upstream(self);
    if (t.requires_grad(a.id))
      t.accumulate(a.id, g * t.value(b.id).transpose());
    if (t.requires_grad(b.id))
      t.accumulate(b.id, t.value(a.id).transpose() * g);
  });
}

Var add(Var a, Var b) {
  Tape &t = tape_of(a, b);
  const Mat &av = a.value(), &bv = b.value();
  if (av.rows() == bv.rows() && av.cols() == bv.cols()) {
    Mat out = av + bv;
    return t.push(std::move(out), { a, b }, [a, b](Tape &t, int self) {
      t.accumulate(a.id, t.upstream(self));
      t.accumulate(b.id, t.upstream(self));
    });
  }
  if (bv.rows() == 1 && bv.cols() == av.cols()) {
    Mat out = av.rowwise() + bv.row(0);
    return t.push(std::move(out), { a, b }, [a, b](Tape &t, int self) {
      t.accumulate(a.id, t.upstream(self));
      if (t.requires_grad(b.id))
        t.accumulate(b.id, t.upstream(self).colwise().sum());
    });
  }
  shape_error("add", av, bv);
}

Var sub(Var a, Var b) {
  Tape &t = tape_of(a, b);
  const Mat &av = a.value(), &bv = b.value();
  if (av.rows() != bv.rows() || av.cols() != bv.cols())
    shape_error("sub", av, bv);
  Mat out = av - bv;
  return t.push(std::move(out), { a, b }, [a, b](Tape &t, int self) {
    t.accumulate(a.id, t.upstream(self));
    if (t.requires_grad(b.id))
      t.accumulate(b.id, -t.upstream(self));
  });
}

Var mul(Var a, Var b) {
  Tape &t = tape_of(a, b);
  const Mat &av = a.value(), &bv = b.value();
  if (av.rows() != bv.rows() || av.cols() != bv.cols())
    shape_error("mul", av, bv);
  Mat out = av.cwiseProduct(bv);
  return t.push(std::move(out), { a, b }, [a, b](Tape &t, int self) {
    const Mat &g = t.upstream(self);
    if (t.requires_grad(a.id))
      t.accumulate(a.id, g.cwiseProduct(t.value(b.id)));
    if (t.requires_grad(b.id))
      t.accumulate(b.id, g.cwiseProduct(t.value(a.id)));
  });
}

Var scale(Var a, double s) {
  Tape &t = tape_of(a);
  Mat out = a.value() * s;
  return t.push(std::move(out), { a }, [a, s](Tape &t, int self) {
    t.accumulate(a.id, t.upstream(self) * s);
  });
}

Var add_scalar(Var a, double s) {
  Tape &t = tape_of(a);
  Mat out = a.value().array() + s;
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    t.accumulate(a.id, t.upstream(self));
  });
}

Var transpose(Var a) {
  Tape &t = tape_of(a);
  Mat out = a.value().transpose();
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    t.accumulate(a.id, t.upstream(self).transpose());
  });
}

Var concat_cols(const std::vector<Var> &parts) {
  if (parts.empty())
    throw ShapeError("concat_cols: no operands");
  Tape &t = tape_of(parts[0]);
  const Eigen::Index rows = parts[0].value().rows();
  Eigen::Index cols = 0;
  for (Var p: parts) {
    tape_of(parts[0], p);
    if (p.value().rows() != rows)
      shape_error("concat_cols", parts[0].value(), p.value());
    cols += p.value().cols();
  }
  Mat out(rows, cols);
  Eigen::Index at = 0;
  for (Var p: parts) {
    out.middleCols(at, p.value().cols()) = p.value();
    at += p.value().cols();
  }
  return t.push(std::move(out), parts, [parts](Tape &t, int self) {
    const Mat &g = t.upstream(self);
    Eigen::Index at = 0;
    for (Var p: parts) {
      const Eigen::Index c = t.value(p.id).cols();
      if (t.requires_grad(p.id))
        t.accumulate(p.id, g.middleCols(at, c));
      at += c;
    }
  });
}

Var concat_rows(const std::vector<Var> &parts) {
  if (parts.empty())
    throw ShapeError("concat_rows: no operands");
  Tape &t = tape_of(parts[0]);
  const Eigen::Index cols = parts[0].value().cols();
  Eigen::Index rows = 0;
  for (Var p: parts) {
    tape_of(parts[0], p);
    if (p.value().cols() != cols)
      shape_error("concat_rows", parts[0].value(), p.value());
    rows += p.value().rows();
  }
  Mat out(rows, cols);
  Eigen::Index at = 0;
  for (Var p: parts) {
    out.middleRows(at, p.value().rows()) = p.value();
    at += p.value().rows();
  }
  return t.push(std::move(out), parts, [parts](Tape &t, int self) {
    const Mat &g = t.upstream(self);
    Eigen::Index at = 0;
    for (Var p: parts) {
      const Eigen::Index r = t.value(p.id).rows();
      if (t.requires_grad(p.id))
        t.accumulate(p.id, g.middleRows(at, r));
      at += r;
    }
  });
}

Var slice_cols(Var a, int start, int count) {
  Tape &t = tape_of(a);
  const Mat &av = a.value();
  if (start < 0 || count < 0 || start + count > av.cols())
    throw ShapeError("slice_cols: [" + std::to_string(start) + ", "
                     + std::to_string(start + count) + ") outside "
                     + shape_string(av));
  Mat out = av.middleCols(start, count);
  return t.push(std::move(out), { a }, [a, start, count](Tape &t, int self) {
    const Mat &v = t.value(a.id);
    Mat g = Mat::Zero(v.rows(), v.cols());
    g.middleCols(start, count) = t.upstream(self);
    t.accumulate(a.id, g);
  });
}

Var slice_rows(Var a, int start, int count) {
  Tape &t = tape_of(a);
  const Mat &av = a.value();
  if (start < 0 || count < 0 || start + count > av.rows())
    throw ShapeError("slice_rows: [" + std::to_string(start) + ", "
                     + std::to_string(start + count) + ") outside "
                     + shape_string(av));
  Mat out = av.middleRows(start, count);
  return t.push(std::move(out), { a }, [a, start, count](Tape &t, int self) {
    const Mat &v = t.value(a.id);
    Mat g = Mat::Zero(v.rows(), v.cols());
    g.middleRows(start, count) = t.upstream(self);
    t.accumulate(a.id, g);
  });
}

Var gather_rows(Var a, std::span<const int> rows) {
  Tape &t = tape_of(a);
  const Mat &av = a.value();
  std::vector<int> idx(rows.begin(), rows.end());
  Mat out(static_cast<Eigen::Index>(idx.size()), av.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= av.rows())
      throw ShapeError("gather_rows: row " + std::to_string(idx[i])
                       + " outside " + shape_string(av));
    out.row(static_cast<Eigen::Index>(i)) = av.row(idx[i]);
  }
  return t.push(std::move(out), { a }, [a, idx](Tape &t, int self) {
    const Mat &v = t.value(a.id);
    const Mat &g = t.upstream(self);
    Mat ga = Mat::Zero(v.rows(), v.cols());
    for (std::size_t i = 0; i < idx.size(); ++i)
      ga.row(idx[i]) += g.row(static_cast<Eigen::Index>(i));
    t.accumulate(a.id, ga);
  });
}

Var relu(Var a) {
  Tape &t = tape_of(a);
  Mat out = a.value().cwiseMax(0.0);
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    Mat mask = (t.value(a.id).array() > 0).cast<double>();
    t.accumulate(a.id, t.upstream(self).cwiseProduct(mask));
  });
}

Var sigmoid(Var a) {
  Tape &t = tape_of(a);
  Mat out = a.value().unaryExpr([](double x) { return stable_sigmoid(x); });
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    const Mat &y = t.value(self);
    Mat d = y.array() * (1.0 - y.array());
    t.accumulate(a.id, t.upstream(self).cwiseProduct(d));
  });
}

Var tanh(Var a) {
  Tape &t = tape_of(a);
  Mat out = a.value().array().tanh();
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    const Mat &y = t.value(self);
    Mat d = 1.0 - y.array().square();
    t.accumulate(a.id, t.upstream(self).cwiseProduct(d));
  });
}

Var exp(Var a) {
  Tape &t = tape_of(a);
  Mat out = a.value().array().exp();
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    t.accumulate(a.id, t.upstream(self).cwiseProduct(t.value(self)));
  });
}

Var sum(Var a) {
  Tape &t = tape_of(a);
  Mat out(1, 1);
  out(0, 0) = a.value().sum();
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    const Mat &v = t.value(a.id);
    t.accumulate(a.id, Mat::Constant(v.rows(), v.cols(), t.upstream(self)(0, 0)));
  });
}

Var mean(Var a) {
  Tape &t = tape_of(a);
  const Mat &av = a.value();
  if (av.size() == 0)
    throw ShapeError("mean of empty tensor");
  Mat out(1, 1);
  out(0, 0) = av.mean();
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    const Mat &v = t.value(a.id);
    t.accumulate(a.id, Mat::Constant(v.rows(), v.cols(),
                                     t.upstream(self)(0, 0)
                                         / static_cast<double>(v.size())));
  });
}

Var sum_rows(Var a) {
  Tape &t = tape_of(a);
  Mat out = a.value().colwise().sum();
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    const Mat &v = t.value(a.id);
    Mat g = t.upstream(self).replicate(v.rows(), 1);
    t.accumulate(a.id, g);
  });
}

Var mean_rows(Var a) {
  Tape &t = tape_of(a);
  const Mat &av = a.value();
  if (av.rows() == 0)
    throw ShapeError("mean_rows of empty tensor");
  Mat out = av.colwise().mean();
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    const Mat &v = t.value(a.id);
    Mat g = t.upstream(self).replicate(v.rows(), 1)
            / static_cast<double>(v.rows());
    t.accumulate(a.id, g);
  });
}

Var softmax_rows(Var a) {
  Tape &t = tape_of(a);
  const Mat &av = a.value();
  Mat out(av.rows(), av.cols());
  for (Eigen::Index r = 0; r < av.rows(); ++r) {
    const double m = av.row(r).maxCoeff();
    out.row(r) = (av.row(r).array() - m).exp();
    out.row(r) /= out.row(r).sum();
  }
  return t.push(std::move(out), { a }, [a](Tape &t, int self) {
    const Mat &y = t.value(self);
    const Mat &g = t.upstream(self);
    Mat ga(y.rows(), y.cols());
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
      const double dot = g.row(r).dot(y.row(r));
      ga.row(r) = y.row(r).array() * (g.row(r).array() - dot);
    }
    t.accumulate(a.id, ga);
  });
}

Var softmax_cross_entropy(Var logits, std::span<const int> targets) {
  Tape &t = tape_of(logits);
  const Mat &lv = logits.value();
  if (static_cast<Eigen::Index>(targets.size()) != lv.rows())
    throw ShapeError("softmax_cross_entropy: " + std::to_string(targets.size())
                     + " targets for logits " + shape_string(lv));
  Mat prob(lv.rows(), lv.cols());
  double loss = 0;
  for (Eigen::Index r = 0; r < lv.rows(); ++r) {
    const int y = targets[static_cast<std::size_t>(r)];
    if (y < 0 || y >= lv.cols())
      throw ShapeError("softmax_cross_entropy: target " + std::to_string(y)
                       + " outside " + shape_string(lv));
    const double m = lv.row(r).maxCoeff();
    prob.row(r) = (lv.row(r).array() - m).exp();
    const double z = prob.row(r).sum();
    prob.row(r) /= z;
    loss += -(lv(r, y) - m - std::log(z));
  }
  Mat out(1, 1);
  out(0, 0) = loss;
  std::vector<int> ys(targets.begin(), targets.end());
  return t.push(std::move(out), { logits },
                [logits, ys, prob = std::move(prob)](Tape &t, int self) {
                  Mat g = prob;
                  for (std::size_t r = 0; r < ys.size(); ++r)
                    g(static_cast<Eigen::Index>(r), ys[r]) -= 1.0;
                  t.accumulate(logits.id, g * t.upstream(self)(0, 0));
                });
}

Var binary_cross_entropy(Var logits, const Mat &targets) {
  Tape &t = tape_of(logits);
  const Mat &lv = logits.value();
  if (lv.rows() != targets.rows() || lv.cols() != targets.cols())
    shape_error("binary_cross_entropy", lv, targets);
  double loss = 0;
  for (Eigen::Index i = 0; i < lv.size(); ++i) {
    const double x = lv.data()[i], y = targets.data()[i];
    // max(x,0) - x*y + log(1 + exp(-|x|))
    loss += std::max(x, 0.0) - x * y + std::log1p(std::exp(-std::fabs(x)));
  }
  Mat out(1, 1);
  out(0, 0) = loss;
  return t.push(std::move(out), { logits },
                [logits, targets](Tape &t, int self) {
                  const Mat &x = t.value(logits.id);
                  Mat g = x.unaryExpr([](double v) { return stable_sigmoid(v); })
                          - targets;
                  t.accumulate(logits.id, g * t.upstream(self)(0, 0));
                });
}

}  // namespace lcjt::ops
