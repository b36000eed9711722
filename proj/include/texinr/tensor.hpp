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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace texinr {

/// Dense row-major matrix of doubles. Batched data uses one row per sample.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    void fill(double v);
    bool all_finite() const;

    std::string shape_string() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t len, double fill = 0.0) : data_(len, fill) {}
    explicit Vector(std::vector<double> data) : data_(std::move(data)) {}
    Vector(std::initializer_list<double> values) : data_(values) {}

    std::size_t size() const { return data_.size(); }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> values() { return data_; }
    std::span<const double> values() const { return data_; }

    void fill(double v);
    bool all_finite() const;

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<double> data_;
};

enum class ActivationKind { identity, relu, sine };

std::string to_string(ActivationKind kind);
ActivationKind activation_from_string(const std::string& name);

struct Activation {
    ActivationKind kind = ActivationKind::identity;
    double omega0 = 1.0; // sine only: sin(omega0 * x)
};

/// out = x * W + b, with x of shape batch x d_in and W of shape d_in x d_out.
Matrix affine(const Matrix& W, const Vector& b, const Matrix& x);

Matrix apply_activation(const Activation& act, const Matrix& x);

struct LayerGrad {
    Matrix dW;
    Vector db;
};

struct TapeGradients {
    /// One entry per recorded affine op, in forward order.
    std::vector<LayerGrad> layers;
    /// d loss / d tape input.
    Matrix input;
};

/// Records affine and activation ops of one forward pass so the gradient of a
/// scalar loss can be pulled back through them.
///
/// The tape keeps non-owning pointers to the weights passed to affine_forward;
/// they must stay alive and unmodified until backward() returns.
class Tape {
public:
    Matrix affine_forward(const Matrix& W, const Vector& b, const Matrix& x);
    Matrix activation_forward(const Activation& act, const Matrix& x);

    /// Gradients w.r.t. every affine op's W and b and w.r.t. the first input.
    /// loss_grad is d loss / d (last recorded output).
    TapeGradients backward(const Matrix& loss_grad) const;

    bool empty() const { return ops_.empty(); }
    std::size_t affine_count() const;
    void clear() { ops_.clear(); }

private:
    struct Op {
        enum class Kind { affine, activation } kind;
        const Matrix* W = nullptr;
        const Vector* b = nullptr;
        Activation act;
        Matrix input;
        std::size_t out_rows = 0;
        std::size_t out_cols = 0;
    };
    std::vector<Op> ops_;
};

} // namespace texinr
