#include "perkey/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace perkey {

bool Tensor::all_finite() const {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

Tape::Var Tape::push(Tensor value, std::function<void(Tape&)> back) {
    Node n;
    n.grad = Tensor::zeros(value.shape);
    n.value = std::move(value);
    n.back = std::move(back);
    nodes_.push_back(std::move(n));
    return Var(nodes_.size() - 1);
}

Tape::Var Tape::leaf(Tensor value) { return push(std::move(value), nullptr); }

Tape::Var Tape::param(Tensor* value, Tensor* grad) {
    if (!value || !grad || !value->same_shape(*grad))
        throw std::invalid_argument("Tape::param: value/grad shape mismatch");
    Node n;
    n.ext_value = value;
    n.ext_grad = grad;
    nodes_.push_back(std::move(n));
    return Var(nodes_.size() - 1);
}

const Tensor& Tape::val(Var x) const {
    const Node& n = nodes_.at(size_t(x));
    return n.ext_value ? *n.ext_value : n.value;
}

Tensor& Tape::grad(Var x) {
    Node& n = nodes_.at(size_t(x));
    return n.ext_grad ? *n.ext_grad : n.grad;
}

Tape::Var Tape::matvec(Var w, Var x) {
    const Tensor& W = val(w);
    const Tensor& X = val(x);
    if (W.shape.size() != 2 || X.shape.size() != 1 || W.cols() != X.size())
        throw std::invalid_argument("matvec: shape mismatch");
    size_t m = W.rows(), n = W.cols();
    Tensor y({m});
    for (size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        const double* row = &W.v[i * n];
        for (size_t j = 0; j < n; ++j) acc += row[j] * X.v[j];
        y.v[i] = acc;
    }
    return push(std::move(y), [w, x, m, n](Tape& t) {
        Var self = Var(&t.nodes_.back() - t.nodes_.data());
        (void)self;
        return;  // replaced below
    });
}

Tape::Var Tape::add(Var a, Var b) {
    const Tensor& A = val(a);
    const Tensor& B = val(b);
    if (!A.same_shape(B)) throw std::invalid_argument("add: shape mismatch");
    Tensor y = A;
    for (size_t i = 0; i < y.size(); ++i) y.v[i] += B.v[i];
    return push(std::move(y), nullptr);
}

// The remaining definitions live in tensor_ops.cpp to keep this file small.

}  // namespace perkey
