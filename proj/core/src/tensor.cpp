#include "sgq/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sgq/errors.hpp"

namespace sgq {

namespace {

std::string shape_str(const Tensor& t) {
  return std::to_string(t.rows()) + "x" + std::to_string(t.cols());
}

[[noreturn]] void shape_fail(const char* op, const Tensor& a, const Tensor& b) {
  throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a) +
                   " vs " + shape_str(b));
}

// c (n x p) = a (n x m) * b (m x p), optionally accumulating into c.
void mm(const double* a, const double* b, double* c, long n, long m, long p,
        bool accumulate) {
  if (!accumulate) std::fill(c, c + n * p, 0.0);
  for (long i = 0; i < n; ++i) {
    const double* arow = a + i * m;
    double* crow = c + i * p;
    for (long k = 0; k < m; ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = b + k * p;
      for (long j = 0; j < p; ++j) crow[j] += aik * brow[j];
    }
  }
}

// c (n x p) += a^T (n x m, stored m x n) * b (m x p)
void mm_at(const double* a, const double* b, double* c, long m, long n, long p) {
  for (long k = 0; k < m; ++k) {
    const double* arow = a + k * n;
    const double* brow = b + k * p;
    for (long i = 0; i < n; ++i) {
      const double aki = arow[i];
      if (aki == 0.0) continue;
      double* crow = c + i * p;
      for (long j = 0; j < p; ++j) crow[j] += aki * brow[j];
    }
  }
}

// c (n x m) += a (n x p) * b^T (p x m, stored m x p)
void mm_bt(const double* a, const double* b, double* c, long n, long p, long m) {
  for (long i = 0; i < n; ++i) {
    const double* arow = a + i * p;
    double* crow = c + i * m;
    for (long j = 0; j < m; ++j) {
      const double* brow = b + j * p;
      double acc = 0.0;
      for (long k = 0; k < p; ++k) acc += arow[k] * brow[k];
      crow[j] += acc;
    }
  }
}

double stable_softplus(double x) {
  if (x > 36.0) return x;
  if (x < -36.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Tensor make_op_result(long rows, long cols,
                      std::vector<const Tensor*> parents) {
  auto node = std::make_shared<detail::TensorNode>();
  node->rows = rows;
  node->cols = cols;
  node->value.assign(rows * cols, 0.0);
  for (const Tensor* p : parents) {
    node->parents.push_back(p->node());
    node->requires_grad = node->requires_grad || p->requires_grad();
  }
  if (node->requires_grad) node->grad.assign(rows * cols, 0.0);
  return Tensor(std::move(node));
}

Tensor Tensor::zeros(long rows, long cols, bool requires_grad) {
  auto node = std::make_shared<detail::TensorNode>();
  node->rows = rows;
  node->cols = cols;
  node->value.assign(rows * cols, 0.0);
  node->requires_grad = requires_grad;
  if (requires_grad) node->grad.assign(rows * cols, 0.0);
  return Tensor(std::move(node));
}

Tensor Tensor::full(long rows, long cols, double value) {
  Tensor t = zeros(rows, cols, false);
  std::fill(t.node_->value.begin(), t.node_->value.end(), value);
  return t;
}

Tensor Tensor::from_data(long rows, long cols, std::vector<double> data,
                         bool requires_grad) {
  if (static_cast<long>(data.size()) != rows * cols) {
    throw ShapeError("from_data: " + std::to_string(data.size()) +
                     " values for shape " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
  auto node = std::make_shared<detail::TensorNode>();
  node->rows = rows;
  node->cols = cols;
  node->value = std::move(data);
  node->requires_grad = requires_grad;
  if (requires_grad) node->grad.assign(rows * cols, 0.0);
  return Tensor(std::move(node));
}

const std::vector<double>& Tensor::grad() const& {
  if (!node_->requires_grad) {
    throw ValidationError("grad: tensor does not require gradients");
  }
  return node_->grad;
}

std::vector<double> Tensor::grad() && {
  if (!node_->requires_grad) {
    throw ValidationError("grad: tensor does not require gradients");
  }
  return node_->grad;
}

double Tensor::scalar() const {
  if (size() != 1) {
    throw ShapeError("scalar: tensor is " + shape_str(*this) + ", want 1x1");
  }
  return node_->value[0];
}

void Tensor::zero_grad() {
  if (node_->requires_grad) {
    std::fill(node_->grad.begin(), node_->grad.end(), 0.0);
  }
}

void Tensor::backward() const {
  if (size() != 1) {
    throw ShapeError("backward: root is " + shape_str(*this) + ", want 1x1");
  }
  if (!node_->requires_grad) return;

  // Reverse DFS postorder = consumers before parents.
  std::vector<detail::TensorNode*> order;
  std::unordered_set<detail::TensorNode*> seen;
  std::vector<std::pair<detail::TensorNode*, size_t>> stack;
  stack.emplace_back(node_.get(), 0);
  seen.insert(node_.get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      detail::TensorNode* parent = node->parents[next++].get();
      if (parent->requires_grad && seen.insert(parent).second) {
        stack.emplace_back(parent, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  node_->grad[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if ((*it)->backprop) (*it)->backprop(**it);
  }
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) shape_fail("matmul", a, b);
  Tensor out = make_op_result(a.rows(), b.cols(), {&a, &b});
  mm(a.value().data(), b.value().data(), out.node()->value.data(), a.rows(),
     a.cols(), b.cols(), false);
  if (out.requires_grad()) {
    auto an = a.node(), bn = b.node();
    out.node()->backprop = [an, bn](const detail::TensorNode& self) {
      const long n = an->rows, m = an->cols, p = bn->cols;
      if (an->requires_grad) {
        mm_bt(self.grad.data(), bn->value.data(), an->grad.data(), n, p, m);
      }
      if (bn->requires_grad) {
        mm_at(an->value.data(), self.grad.data(), bn->grad.data(), n, m, p);
      }
    };
  }
  return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_fail("add", a, b);
  Tensor out = make_op_result(a.rows(), a.cols(), {&a, &b});
  const auto& av = a.value();
  const auto& bv = b.value();
  auto& ov = out.node()->value;
  for (size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] + bv[i];
  if (out.requires_grad()) {
    auto an = a.node(), bn = b.node();
    out.node()->backprop = [an, bn](const detail::TensorNode& self) {
      for (size_t i = 0; i < self.grad.size(); ++i) {
        if (an->requires_grad) an->grad[i] += self.grad[i];
        if (bn->requires_grad) bn->grad[i] += self.grad[i];
      }
    };
  }
  return out;
}

Tensor add_rowvec(const Tensor& a, const Tensor& row) {
  if (row.rows() != 1 || row.cols() != a.cols()) shape_fail("add_rowvec", a, row);
  Tensor out = make_op_result(a.rows(), a.cols(), {&a, &row});
  const auto& av = a.value();
  const auto& rv = row.value();
  auto& ov = out.node()->value;
  const long cols = a.cols();
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < cols; ++j) ov[i * cols + j] = av[i * cols + j] + rv[j];
  }
  if (out.requires_grad()) {
    auto an = a.node(), rn = row.node();
    out.node()->backprop = [an, rn](const detail::TensorNode& self) {
      const long cols = self.cols;
      if (an->requires_grad) {
        for (size_t i = 0; i < self.grad.size(); ++i) an->grad[i] += self.grad[i];
      }
      if (rn->requires_grad) {
        for (long i = 0; i < self.rows; ++i) {
          for (long j = 0; j < cols; ++j) rn->grad[j] += self.grad[i * cols + j];
        }
      }
    };
  }
  return out;
}

Tensor elementwise_mul(const Tensor& a, const Tensor& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    shape_fail("elementwise_mul", a, b);
  }
  Tensor out = make_op_result(a.rows(), a.cols(), {&a, &b});
  const auto& av = a.value();
  const auto& bv = b.value();
  auto& ov = out.node()->value;
  for (size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] * bv[i];
  if (out.requires_grad()) {
    auto an = a.node(), bn = b.node();
    out.node()->backprop = [an, bn](const detail::TensorNode& self) {
      for (size_t i = 0; i < self.grad.size(); ++i) {
        if (an->requires_grad) an->grad[i] += self.grad[i] * bn->value[i];
        if (bn->requires_grad) bn->grad[i] += self.grad[i] * an->value[i];
      }
    };
  }
  return out;
}

namespace {

// Shared scaffolding for elementwise unary ops; dydx receives (x, y).
Tensor unary_op(const Tensor& a, double (*fwd)(double),
                double (*dydx)(double, double)) {
  Tensor out = make_op_result(a.rows(), a.cols(), {&a});
  const auto& av = a.value();
  auto& ov = out.node()->value;
  for (size_t i = 0; i < ov.size(); ++i) ov[i] = fwd(av[i]);
  if (out.requires_grad()) {
    auto an = a.node();
    out.node()->backprop = [an, dydx](const detail::TensorNode& self) {
      for (size_t i = 0; i < self.grad.size(); ++i) {
        an->grad[i] += self.grad[i] * dydx(an->value[i], self.value[i]);
      }
    };
  }
  return out;
}

}  // namespace

Tensor scale(const Tensor& a, double factor) {
  Tensor out = make_op_result(a.rows(), a.cols(), {&a});
  const auto& av = a.value();
  auto& ov = out.node()->value;
  for (size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] * factor;
  if (out.requires_grad()) {
    auto an = a.node();
    out.node()->backprop = [an, factor](const detail::TensorNode& self) {
      for (size_t i = 0; i < self.grad.size(); ++i) {
        an->grad[i] += self.grad[i] * factor;
      }
    };
  }
  return out;
}

Tensor add_scalar(const Tensor& a, double constant) {
  Tensor out = make_op_result(a.rows(), a.cols(), {&a});
  const auto& av = a.value();
  auto& ov = out.node()->value;
  for (size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] + constant;
  if (out.requires_grad()) {
    auto an = a.node();
    out.node()->backprop = [an](const detail::TensorNode& self) {
      for (size_t i = 0; i < self.grad.size(); ++i) an->grad[i] += self.grad[i];
    };
  }
  return out;
}

Tensor sigmoid(const Tensor& a) {
  return unary_op(
      a, +[](double x) { return logistic(x); },
      +[](double, double y) { return y * (1.0 - y); });
}

Tensor relu(const Tensor& a) {
  return unary_op(
      a, +[](double x) { return x > 0.0 ? x : 0.0; },
      +[](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor softplus(const Tensor& a) {
  return unary_op(
      a, +[](double x) { return stable_softplus(x); },
      +[](double x, double) { return logistic(x); });
}

Tensor exp(const Tensor& a) {
  return unary_op(
      a, +[](double x) { return std::exp(x); },
      +[](double, double y) { return y; });
}

Tensor log(const Tensor& a) {
  return unary_op(
      a, +[](double x) { return std::log(x); },
      +[](double x, double) { return 1.0 / x; });
}

Tensor softmax_rows(const Tensor& a) {
  Tensor out = make_op_result(a.rows(), a.cols(), {&a});
  const auto& av = a.value();
  auto& ov = out.node()->value;
  const long cols = a.cols();
  for (long i = 0; i < a.rows(); ++i) {
    const double* x = av.data() + i * cols;
    double* y = ov.data() + i * cols;
    double mx = x[0];
    for (long j = 1; j < cols; ++j) mx = std::max(mx, x[j]);
    double z = 0.0;
    for (long j = 0; j < cols; ++j) {
      y[j] = std::exp(x[j] - mx);
      z += y[j];
    }
    for (long j = 0; j < cols; ++j) y[j] /= z;
  }
  if (out.requires_grad()) {
    auto an = a.node();
    out.node()->backprop = [an](const detail::TensorNode& self) {
      const long cols = self.cols;
      for (long i = 0; i < self.rows; ++i) {
        const double* y = self.value.data() + i * cols;
        const double* g = self.grad.data() + i * cols;
        double dot = 0.0;
        for (long j = 0; j < cols; ++j) dot += g[j] * y[j];
        for (long j = 0; j < cols; ++j) {
          an->grad[i * cols + j] += y[j] * (g[j] - dot);
        }
      }
    };
  }
  return out;
}

Tensor log_softmax_rows(const Tensor& a) {
  Tensor out = make_op_result(a.rows(), a.cols(), {&a});
  const auto& av = a.value();
  auto& ov = out.node()->value;
  const long cols = a.cols();
  for (long i = 0; i < a.rows(); ++i) {
    const double* x = av.data() + i * cols;
    double* y = ov.data() + i * cols;
    double mx = x[0];
    for (long j = 1; j < cols; ++j) mx = std::max(mx, x[j]);
    double z = 0.0;
    for (long j = 0; j < cols; ++j) z += std::exp(x[j] - mx);
    const double lse = mx + std::log(z);
    for (long j = 0; j < cols; ++j) y[j] = x[j] - lse;
  }
  if (out.requires_grad()) {
    auto an = a.node();
    out.node()->backprop = [an](const detail::TensorNode& self) {
      const long cols = self.cols;
      for (long i = 0; i < self.rows; ++i) {
        const double* y = self.value.data() + i * cols;
        const double* g = self.grad.data() + i * cols;
        double gsum = 0.0;
        for (long j = 0; j < cols; ++j) gsum += g[j];
        for (long j = 0; j < cols; ++j) {
          an->grad[i * cols + j] += g[j] - std::exp(y[j]) * gsum;
        }
      }
    };
  }
  return out;
}

Tensor transpose(const Tensor& a) {
  Tensor out = make_op_result(a.cols(), a.rows(), {&a});
  const auto& av = a.value();
  auto& ov = out.node()->value;
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) ov[j * a.rows() + i] = av[i * a.cols() + j];
  }
  if (out.requires_grad()) {
    auto an = a.node();
    out.node()->backprop = [an](const detail::TensorNode& self) {
      const long rows = self.rows, cols = self.cols;  // = a.cols, a.rows
      for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) {
          an->grad[j * rows + i] += self.grad[i * cols + j];
        }
      }
    };
  }
  return out;
}

Tensor sum(const Tensor& a) {
  Tensor out = make_op_result(1, 1, {&a});
  double acc = 0.0;
  for (const double v : a.value()) acc += v;
  out.node()->value[0] = acc;
  if (out.requires_grad()) {
    auto an = a.node();
    out.node()->backprop = [an](const detail::TensorNode& self) {
      const double g = self.grad[0];
      for (double& gi : an->grad) gi += g;
    };
  }
  return out;
}

Tensor mean(const Tensor& a) {
  if (a.size() == 0) throw ShapeError("mean: empty tensor");
  Tensor out = make_op_result(1, 1, {&a});
  double acc = 0.0;
  for (const double v : a.value()) acc += v;
  const double inv = 1.0 / static_cast<double>(a.size());
  out.node()->value[0] = acc * inv;
  if (out.requires_grad()) {
    auto an = a.node();
    out.node()->backprop = [an, inv](const detail::TensorNode& self) {
      const double g = self.grad[0] * inv;
      for (double& gi : an->grad) gi += g;
    };
  }
  return out;
}

Tensor slice_rows(const Tensor& a, long begin, long end) {
  if (begin < 0 || end > a.rows() || begin > end) {
    throw ShapeError("slice_rows: range [" + std::to_string(begin) + ", " +
                     std::to_string(end) + ") on " + std::to_string(a.rows()) +
                     " rows");
  }
  Tensor out = make_op_result(end - begin, a.cols(), {&a});
  const long cols = a.cols();
  std::copy(a.value().begin() + begin * cols, a.value().begin() + end * cols,
            out.node()->value.begin());
  if (out.requires_grad()) {
    auto an = a.node();
    out.node()->backprop = [an, begin, cols](const detail::TensorNode& self) {
      for (size_t i = 0; i < self.grad.size(); ++i) {
        an->grad[begin * cols + i] += self.grad[i];
      }
    };
  }
  return out;
}

Tensor gather_rows(const Tensor& a, const std::vector<long>& indices) {
  for (const long idx : indices) {
    if (idx < 0 || idx >= a.rows()) {
      throw ShapeError("gather_rows: index " + std::to_string(idx) + " on " +
                       std::to_string(a.rows()) + " rows");
    }
  }
  Tensor out = make_op_result(static_cast<long>(indices.size()), a.cols(), {&a});
  const long cols = a.cols();
  for (size_t i = 0; i < indices.size(); ++i) {
    std::copy(a.value().begin() + indices[i] * cols,
              a.value().begin() + (indices[i] + 1) * cols,
              out.node()->value.begin() + i * cols);
  }
  if (out.requires_grad()) {
    auto an = a.node();
    auto idx = indices;
    out.node()->backprop = [an, idx, cols](const detail::TensorNode& self) {
      for (size_t i = 0; i < idx.size(); ++i) {
        for (long j = 0; j < cols; ++j) {
          an->grad[idx[i] * cols + j] += self.grad[i * cols + j];
        }
      }
    };
  }
  return out;
}

bool all_finite(const Tensor& t) {
  for (const double v : t.value()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace sgq
