#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "perkey/util.hpp"

namespace perkey {

// Dense row-major f64 tensor. 64-bit floats throughout: the gradient checks
// demand it and the desk-scale runs this repo targets don't need f32.
struct Tensor {
    std::vector<size_t> shape;
    std::vector<double> v;

    Tensor() = default;
    explicit Tensor(std::vector<size_t> s) : shape(std::move(s)) {
        v.assign(count(shape), 0.0);
    }

    static size_t count(const std::vector<size_t>& shape) {
        size_t n = 1;
        for (size_t d : shape) n *= d;
        return n;
    }

    static Tensor zeros(std::vector<size_t> shape) { return Tensor(std::move(shape)); }

    static Tensor uniform(std::vector<size_t> shape, Rng& rng, double lo, double hi) {
        Tensor t(std::move(shape));
        for (auto& x : t.v) x = rng.uniform(lo, hi);
        return t;
    }

    size_t size() const { return v.size(); }
    size_t rows() const { return shape.empty() ? 0 : shape[0]; }
    size_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }

    double& at(size_t i) { return v[i]; }
    double at(size_t i) const { return v[i]; }
    double& at(size_t r, size_t c) { return v[r * cols() + c]; }
    double at(size_t r, size_t c) const { return v[r * cols() + c]; }

    void fill(double x) { std::fill(v.begin(), v.end(), x); }
    bool all_finite() const;
    bool same_shape(const Tensor& o) const { return shape == o.shape; }
};

// Reverse-mode tape. Nodes own their values and gradients except parameter
// leaves, which reference external storage so that a training step can
// accumulate straight into the optimizer's gradient buffers.
class Tape {
public:
    using Var = int;

    Var leaf(Tensor value);
    Var param(Tensor* value, Tensor* grad);

    const Tensor& val(Var x) const;
    Tensor& grad(Var x);

    // y = W x  (W: [m,n], x: [n])
    Var matvec(Var w, Var x);
    Var add(Var a, Var b);
    Var concat(Var a, Var b);
    Var sigmoid(Var x);
    Var tanh(Var x);
    Var emul(Var a, Var b);
    // h = (1 - z) * h_prev + z * h_new, elementwise
    Var gate_mix(Var z, Var h_prev, Var h_new);
    // row `row` of matrix leaf/param `m`; gradient scatters into that row
    Var embed(Var m, size_t row);
    Var dot(Var a, Var b);                 // -> [1]
    Var stack(const std::vector<Var>& scalars);  // T scalars -> [T]
    Var softmax(Var x);
    // c = sum_j weights[j] * rows[j]
    Var mix(const std::vector<Var>& rows, Var weights);
    // negative log-likelihood of `target` under softmax(logits) -> [1]
    Var nll_logits(Var logits, int target);
    Var mean(const std::vector<Var>& scalars);  // -> [1]
    // inverted dropout: multiplies by a 0 / (1/(1-p)) mask drawn from rng
    Var dropout(Var x, double p, Rng& rng);

    // Accumulates d(root)/d(node) into every node's gradient buffer,
    // seeding d(root)/d(root) = seed. root must be a scalar.
    void backward(Var root, double seed = 1.0);

    size_t size() const { return nodes_.size(); }

private:
    struct Node {
        Tensor value;               // owned unless ext_value set
        Tensor* ext_value = nullptr;
        Tensor grad;
        Tensor* ext_grad = nullptr;
        std::function<void(Tape&)> back;  // null for leaves
    };
    std::vector<Node> nodes_;

    Var push(Tensor value, std::function<void(Tape&)> back);
};

}  // namespace perkey
