// SPDX-License-Identifier: Apache-2.0
// ----------------------------------------------------------------------------
// Copyright 2026 The texinr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at:
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.
// ----------------------------------------------------------------------------

#include "texinr/tensor.hpp"

#include "texinr/error.hpp"

#include <algorithm>
#include <cmath>

namespace texinr {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data))
{
    if (data_.size() != rows * cols)
        throw ShapeError("matrix data length " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw ShapeError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

void Matrix::fill(double v)
{
    std::fill(data_.begin(), data_.end(), v);
}

bool Matrix::all_finite() const
{
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

std::string Matrix::shape_string() const
{
    return "[" + std::to_string(rows_) + "x" + std::to_string(cols_) + "]";
}

void Vector::fill(double v)
{
    std::fill(data_.begin(), data_.end(), v);
}

bool Vector::all_finite() const
{
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

std::string to_string(ActivationKind kind)
{
    switch (kind) {
    case ActivationKind::identity: return "identity";
    case ActivationKind::relu: return "relu";
    case ActivationKind::sine: return "sine";
    }
    return "unknown";
}

ActivationKind activation_from_string(const std::string& name)
{
    if (name == "identity")
        return ActivationKind::identity;
    if (name == "relu")
        return ActivationKind::relu;
    if (name == "sine")
        return ActivationKind::sine;
    throw ConfigError("unknown activation '" + name + "'");
}

Matrix affine(const Matrix& W, const Vector& b, const Matrix& x)
{
    if (x.cols() != W.rows() || b.size() != W.cols())
        throw ShapeError("affine: input " + x.shape_string() + " weights " + W.shape_string() +
                         " bias [" + std::to_string(b.size()) + "]");

    const std::size_t n = x.rows(), d_in = W.rows(), d_out = W.cols();
    Matrix out(n, d_out);
    // Each output element accumulates over k in ascending order regardless of
    // batch size, so batched and per-sample evaluation agree bit for bit.
    for (std::size_t i = 0; i < n; ++i) {
        double* o = out.row(i).data();
        const double* xi = x.row(i).data();
        for (std::size_t k = 0; k < d_in; ++k) {
            const double xk = xi[k];
            const double* w = W.row(k).data();
            for (std::size_t j = 0; j < d_out; ++j)
                o[j] += xk * w[j];
        }
        for (std::size_t j = 0; j < d_out; ++j)
            o[j] += b[j];
    }
    return out;
}

Matrix apply_activation(const Activation& act, const Matrix& x)
{
    Matrix out = x;
    auto v = out.values();
    switch (act.kind) {
    case ActivationKind::identity:
        break;
    case ActivationKind::relu:
        for (double& e : v)
            e = e > 0.0 ? e : 0.0;
        break;
    case ActivationKind::sine:
        for (double& e : v)
            e = std::sin(act.omega0 * e);
        break;
    }
    return out;
}

Matrix Tape::affine_forward(const Matrix& W, const Vector& b, const Matrix& x)
{
    Matrix out = affine(W, b, x);
    Op op{Op::Kind::affine, &W, &b, {}, x, out.rows(), out.cols()};
    ops_.push_back(std::move(op));
    return out;
}

Matrix Tape::activation_forward(const Activation& act, const Matrix& x)
{
    Matrix out = apply_activation(act, x);
    Op op{Op::Kind::activation, nullptr, nullptr, act, x, out.rows(), out.cols()};
    ops_.push_back(std::move(op));
    return out;
}

std::size_t Tape::affine_count() const
{
    return static_cast<std::size_t>(
        std::count_if(ops_.begin(), ops_.end(), [](const Op& op) { return op.kind == Op::Kind::affine; }));
}

TapeGradients Tape::backward(const Matrix& loss_grad) const
{
    if (ops_.empty())
        throw StateError("backward called on an empty tape (no forward pass recorded)");
    const Op& last = ops_.back();
    if (loss_grad.rows() != last.out_rows || loss_grad.cols() != last.out_cols)
        throw ShapeError("backward: loss gradient " + loss_grad.shape_string() + " does not match output [" +
                         std::to_string(last.out_rows) + "x" + std::to_string(last.out_cols) + "]");

    TapeGradients grads;
    grads.layers.resize(affine_count());
    std::size_t layer = grads.layers.size();

    Matrix delta = loss_grad;
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        const Op& op = *it;
        if (op.kind == Op::Kind::activation) {
            auto d = delta.values();
            auto x = op.input.values();
            switch (op.act.kind) {
            case ActivationKind::identity:
                break;
            case ActivationKind::relu:
                // Subgradient at exactly zero is zero.
                for (std::size_t i = 0; i < d.size(); ++i)
                    d[i] = x[i] > 0.0 ? d[i] : 0.0;
                break;
            case ActivationKind::sine:
                for (std::size_t i = 0; i < d.size(); ++i)
                    d[i] *= op.act.omega0 * std::cos(op.act.omega0 * x[i]);
                break;
            }
            continue;
        }

        const Matrix& W = *op.W;
        const Matrix& x = op.input;
        const std::size_t n = x.rows(), d_in = W.rows(), d_out = W.cols();
        LayerGrad& g = grads.layers[--layer];
        g.dW = Matrix(d_in, d_out);
        g.db = Vector(d_out);

        for (std::size_t i = 0; i < n; ++i) {
            const double* dy = delta.row(i).data();
            const double* xi = x.row(i).data();
            for (std::size_t k = 0; k < d_in; ++k) {
                const double xk = xi[k];
                double* dw = g.dW.row(k).data();
                for (std::size_t j = 0; j < d_out; ++j)
                    dw[j] += xk * dy[j];
            }
            for (std::size_t j = 0; j < d_out; ++j)
                g.db[j] += dy[j];
        }

        // dx = delta * W^T, computed as row updates against W^T for contiguous access.
        Matrix Wt(d_out, d_in);
        for (std::size_t k = 0; k < d_in; ++k)
            for (std::size_t j = 0; j < d_out; ++j)
                Wt(j, k) = W(k, j);
        Matrix dx(n, d_in);
        for (std::size_t i = 0; i < n; ++i) {
            const double* dy = delta.row(i).data();
            double* o = dx.row(i).data();
            for (std::size_t j = 0; j < d_out; ++j) {
                const double dj = dy[j];
                const double* wt = Wt.row(j).data();
                for (std::size_t k = 0; k < d_in; ++k)
                    o[k] += dj * wt[k];
            }
        }
        delta = std::move(dx);
    }
    grads.input = std::move(delta);
    return grads;
}

} // namespace texinr
