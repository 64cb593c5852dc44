//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/tensor/tensor.h"

#include "lcjt/error.h"

namespace lcjt {

std::string shape_string(const Mat &m) {
  return "(" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
}

Parameter &ParamStore::add(const std::string &name, Mat value) {
  if (index_.count(name) != 0)
    throw Error("duplicate parameter " + name);
  index_.emplace(name, size());
  Parameter &p = params_.emplace_back();
  p.name = name;
  p.grad = Mat::Zero(value.rows(), value.cols());
  p.value = std::move(value);
  return p;
}

Parameter &ParamStore::get(std::string_view name) {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error("unknown parameter " + std::string(name));
  return params_[it->second];
}

const Parameter &ParamStore::get(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error("unknown parameter " + std::string(name));
  return params_[it->second];
}

bool ParamStore::contains(std::string_view name) const {
  return index_.find(name) != index_.end();
}

std::vector<Parameter *> ParamStore::all() {
  std::vector<Parameter *> out;
  for (Parameter &p: params_)
    out.push_back(&p);
  return out;
}

std::vector<const Parameter *> ParamStore::all() const {
  std::vector<const Parameter *> out;
  for (const Parameter &p: params_)
    out.push_back(&p);
  return out;
}

long long ParamStore::num_values() const {
  long long n = 0;
  for (const Parameter &p: params_)
    n += p.value.size();
  return n;
}

void ParamStore::zero_grad() {
  for (Parameter &p: params_)
    p.grad.setZero();
}

const Mat &Var::value() const {
  return tape->value(id);
}

double Var::item() const {
  const Mat &v = value();
  if (v.size() != 1)
    throw ShapeError("item() on non-scalar " + shape_string(v));
  return v(0, 0);
}

Var Tape::constant(Mat value) {
  Node &n = nodes_.emplace_back();
  n.value = std::move(value);
  return { this, size() - 1 };
}

Var Tape::leaf(Mat value) {
  Node &n = nodes_.emplace_back();
  n.value = std::move(value);
  n.requires_grad = true;
  return { this, size() - 1 };
}

Var Tape::param(Parameter &p) {
  auto it = param_nodes_.find(&p);
  if (it != param_nodes_.end())
    return { this, it->second };
  Node &n = nodes_.emplace_back();
  n.ref = &p.value;
  n.requires_grad = true;
  n.param = &p;
  param_nodes_.emplace(&p, size() - 1);
  return { this, size() - 1 };
}

Mat Tape::grad(int id) const {
  const Node &n = nodes_[id];
  if (n.has_grad)
    return n.grad;
  const Mat &v = value(id);
  return Mat::Zero(v.rows(), v.cols());
}

void Tape::accumulate(int id, const Mat &g) {
  Node &n = nodes_[id];
  if (!n.requires_grad)
    return;
  if (!n.has_grad) {
    n.grad = g;
    n.has_grad = true;
  } else {
    n.grad += g;
  }
}

Var Tape::push(Mat value, std::initializer_list<Var> inputs, Backward fn) {
  bool rg = false;
  for (Var v: inputs)
    rg |= nodes_[v.id].requires_grad;
  Node &n = nodes_.emplace_back();
  n.value = std::move(value);
  n.requires_grad = rg;
  if (rg)
    n.backward = std::move(fn);
  return { this, size() - 1 };
}

Var Tape::push(Mat value, const std::vector<Var> &inputs, Backward fn) {
  bool rg = false;
  for (Var v: inputs)
    rg |= nodes_[v.id].requires_grad;
  Node &n = nodes_.emplace_back();
  n.value = std::move(value);
  n.requires_grad = rg;
  if (rg)
    n.backward = std::move(fn);
  return { this, size() - 1 };
}

void Tape::backward(Var loss) {
  if (loss.tape != this)
    throw Error("backward: loss belongs to another tape");
  if (value(loss.id).size() != 1)
    throw ShapeError("backward: loss must be scalar, got "
                     + shape_string(value(loss.id)));
  accumulate(loss.id, Mat::Ones(1, 1));
  for (int i = loss.id; i >= 0; --i) {
    Node &n = nodes_[i];
    if (!n.has_grad)
      continue;
    if (n.backward)
      n.backward(*this, i);
    if (n.param != nullptr)
      n.param->grad += n.grad;
  }
}

void Tape::clear() {
  nodes_.clear();
  param_nodes_.clear();
}

}  // namespace lcjt
