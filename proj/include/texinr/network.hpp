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

#include "texinr/encoding.hpp"
#include "texinr/tensor.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace texinr {

/// The evaluated network families.
enum class Architecture { mlp, siren, fourier, hash };

std::string to_string(Architecture arch);
Architecture architecture_from_string(const std::string& name);

struct NetworkSpec {
    std::size_t input_dim = 2; // 2 for (u,v), 3 for (u,v,t)
    std::size_t hidden_width = 128;
    std::size_t hidden_count = 1;
    std::size_t output_dim = 3;
    ActivationKind activation = ActivationKind::relu;
    EncoderConfig encoder = IdentityEncoding{};
    double omega0 = 30.0;

    Activation hidden_activation() const { return {activation, omega0}; }
    std::size_t encoded_input_dim() const { return encoded_dim(encoder, input_dim); }

    friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

/// Spec for one architecture at a given width/depth with the default
/// hyperparameters (octave Fourier bands with n_f = 8, omega0 = 30).
NetworkSpec make_spec(Architecture arch, std::size_t width, std::size_t depth, std::size_t input_dim = 2);

/// Best-effort inverse of make_spec, used for report tags.
Architecture architecture_of(const NetworkSpec& spec);

/// The (width, depth) grid: depths 1..3 by widths 128/256/512, minus 512x3.
struct GridPoint {
    std::size_t width;
    std::size_t depth;
};
std::vector<GridPoint> standard_grid();

/// Throws ConfigError if the network spec is not buildable.
void validate(const NetworkSpec& spec);

std::size_t param_count(const NetworkSpec& spec);

struct Layer {
    Matrix W; // d_in x d_out
    Vector b;

    friend bool operator==(const Layer&, const Layer&) = default;
};

struct InrModel {
    NetworkSpec spec;
    std::vector<Layer> layers;
    std::vector<double> hash_table; // hash encoder only

    friend bool operator==(const InrModel&, const InrModel&) = default;
};

/// Uniform initialization, deterministic in `seed`. Biases start at zero.
/// SIREN: first layer U(-1/d_in, 1/d_in), later layers
/// U(-sqrt(6/d_in)/omega0, +sqrt(6/d_in)/omega0). Other activations use
/// Glorot uniform. Hash tables start at U(-1e-4, 1e-4).
InrModel init(const NetworkSpec& spec, std::uint64_t seed);

/// Zero-weight model with the given spec.
InrModel zeros(const NetworkSpec& spec);

/// Bound of the uniform init distribution for layer `index` (0 = first).
double init_bound(const NetworkSpec& spec, std::size_t index, std::size_t d_in, std::size_t d_out);

/// Raw linear RGB output; not clamped. Throws NumericError on non-finite
/// activations, naming the layer.
Matrix forward(const InrModel& model, const Matrix& coords);

/// Copy with every weight rounded through 32-bit float.
InrModel quantize32(const InrModel& model);

struct ModelGradient {
    std::vector<LayerGrad> layers;
    std::vector<double> hash_table;

    static ModelGradient zeros_like(const InrModel& model);
    void clear();
};

/// Adds the gradient of sum((forward(coords) - targets)^2) / normalizer to
/// `grad` and returns the unnormalized squared-error sum. Calling this over
/// disjoint chunks with a shared normalizer yields the full-batch gradient.
double accumulate_mse_gradient(const InrModel& model, const Matrix& coords, const Matrix& targets,
                               double normalizer, ModelGradient& grad);

/// Named parameter/gradient spans in a fixed order shared by optimizers and
/// serialization: per layer W then b, then the hash table.
struct ParamBlock {
    std::string name;
    std::span<double> values;
    std::span<const double> grad;
};
std::vector<ParamBlock> param_blocks(InrModel& model, const ModelGradient& grad);

/// Read-only flat view of every parameter in serialization order.
std::vector<std::span<const double>> parameter_spans(const InrModel& model);

} // namespace texinr
