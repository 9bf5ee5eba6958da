#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace sgq {

namespace detail {

struct TensorNode {
  long rows = 0;
  long cols = 0;
  std::vector<double> value;
  std::vector<double> grad;  // allocated iff requires_grad
  bool requires_grad = false;
  std::vector<std::shared_ptr<TensorNode>> parents;
  // Reads this node's grad and accumulates into the parents' grads.
  std::function<void(const TensorNode&)> backprop;
};

}  // namespace detail

// Dense row-major matrix of doubles participating in a reverse-mode
// autodiff tape. Copies are shallow handles to the same node; completed
// values are treated as immutable except for leaf initialization.
class Tensor {
 public:
  Tensor() : node_(std::make_shared<detail::TensorNode>()) {}

  static Tensor zeros(long rows, long cols, bool requires_grad = false);
  static Tensor full(long rows, long cols, double value);
  static Tensor from_data(long rows, long cols, std::vector<double> data,
                          bool requires_grad = false);

  long rows() const { return node_->rows; }
  long cols() const { return node_->cols; }
  long size() const { return node_->rows * node_->cols; }
  bool requires_grad() const { return node_->requires_grad; }

  const std::vector<double>& value() const& { return node_->value; }
  // A temporary handle may be the node's last owner; hand out a copy so
  // range-for over value() cannot dangle.
  std::vector<double> value() && { return node_->value; }
  // Leaf initialization / in-place perturbation only.
  std::vector<double>& mutable_value() { return node_->value; }
  const std::vector<double>& grad() const&;
  std::vector<double> grad() &&;

  double at(long r, long c) const { return node_->value[r * node_->cols + c]; }
  // Value of a 1x1 tensor.
  double scalar() const;

  // Runs reverse-mode accumulation from this scalar; grads accumulate
  // across calls until zero_grad.
  void backward() const;
  void zero_grad();

  std::shared_ptr<detail::TensorNode> node() const { return node_; }

 private:
  explicit Tensor(std::shared_ptr<detail::TensorNode> node)
      : node_(std::move(node)) {}

  std::shared_ptr<detail::TensorNode> node_;

  friend Tensor make_op_result(long rows, long cols,
                               std::vector<const Tensor*> parents);
};

// Autodiff operator set. Every op records a backward rule; shape
// mismatches throw ShapeError naming the op and both shapes.
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor add(const Tensor& a, const Tensor& b);
// Broadcasts a 1 x cols row vector over every row of a.
Tensor add_rowvec(const Tensor& a, const Tensor& row);
Tensor elementwise_mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);
Tensor add_scalar(const Tensor& a, double constant);
Tensor sigmoid(const Tensor& a);
Tensor relu(const Tensor& a);
Tensor softplus(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);
Tensor softmax_rows(const Tensor& a);
Tensor log_softmax_rows(const Tensor& a);
Tensor transpose(const Tensor& a);
Tensor sum(const Tensor& a);
Tensor mean(const Tensor& a);
Tensor slice_rows(const Tensor& a, long begin, long end);
Tensor gather_rows(const Tensor& a, const std::vector<long>& indices);

bool all_finite(const Tensor& t);

}  // namespace sgq
