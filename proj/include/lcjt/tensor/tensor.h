//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_TENSOR_TENSOR_H_
#define LCJT_TENSOR_TENSOR_H_

#include <deque>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace lcjt {

// Dense 2-D tensor of 64-bit floats; vectors are 1 x n rows.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::string shape_string(const Mat &m);

struct Parameter {
  std::string name;
  Mat value;
  Mat grad;  // same shape as value
};

// Named parameters in insertion order. References stay valid for the
// lifetime of the store.
class ParamStore {
public:
  Parameter &add(const std::string &name, Mat value);
  Parameter &get(std::string_view name);
  const Parameter &get(std::string_view name) const;
  bool contains(std::string_view name) const;

  std::vector<Parameter *> all();
  std::vector<const Parameter *> all() const;
  int size() const { return static_cast<int>(params_.size()); }
  long long num_values() const;

  void zero_grad();

private:
  std::deque<Parameter> params_;
  std::map<std::string, int, std::less<>> index_;
};

class Tape;

// Handle to a tape node.
struct Var {
  Tape *tape = nullptr;
  int id = -1;

  const Mat &value() const;
  int rows() const { return static_cast<int>(value().rows()); }
  int cols() const { return static_cast<int>(value().cols()); }
  double item() const;
};

// Records primitive applications in execution order; backward() walks the
// records in reverse. Single-threaded.
class Tape {
public:
  using Backward = std::function<void(Tape &, int self)>;

  Var constant(Mat value);
  // Leaf that receives a gradient but is not a Parameter.
  Var leaf(Mat value);
  // Repeated calls for the same parameter return the same node.
  Var param(Parameter &p);

  const Mat &value(int id) const {
    const Node &n = nodes_[id];
    return n.ref != nullptr ? *n.ref : n.value;
  }
  bool requires_grad(int id) const { return nodes_[id].requires_grad; }

  // Gradient of node `id`; zeros of the right shape if nothing flowed in.
  Mat grad(int id) const;
  Mat grad(Var v) const { return grad(v.id); }

  // Adds `g` into the gradient of node `id` (no-op for constants).
  void accumulate(int id, const Mat &g);

  // Appends a node computed from `inputs`. `fn` runs during backward only if
  // some input requires a gradient.
  Var push(Mat value, std::initializer_list<Var> inputs, Backward fn);
  Var push(Mat value, const std::vector<Var> &inputs, Backward fn);

  const Mat &upstream(int self) const { return nodes_[self].grad; }

  // Seeds d(loss)/d(loss) = 1 and propagates; parameter gradients are added
  // into Parameter::grad. Throws ShapeError unless loss is 1 x 1.
  void backward(Var loss);

  int size() const { return static_cast<int>(nodes_.size()); }
  void clear();

private:
  struct Node {
    Mat value;
    const Mat *ref = nullptr;
    Mat grad;
    bool requires_grad = false;
    bool has_grad = false;
    Parameter *param = nullptr;
    Backward backward;
  };

  std::vector<Node> nodes_;
  std::unordered_map<const Parameter *, int> param_nodes_;
};

}  // namespace lcjt

#endif  // LCJT_TENSOR_TENSOR_H_
