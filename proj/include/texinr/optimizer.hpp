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

#include "texinr/network.hpp"
#include "texinr/tensor.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace texinr {

enum class OptimizerKind { adam, rprop };

std::string to_string(OptimizerKind kind);
OptimizerKind optimizer_from_string(const std::string& name);

struct AdamParams {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// iRprop- constants. The initial step size doubles as the learning rate.
struct RpropParams {
    double eta_plus = 1.2;
    double eta_minus = 0.5;
    double step_init = 1e-3;
    double step_min = 1e-8;
    double step_max = 1.0;
};

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::adam;
    double learning_rate = 1e-3;
    AdamParams adam;
    RpropParams rprop;
};

/// Adam: lr 1e-3, or 1e-4 for sine networks. Rprop: standard iRprop- constants.
OptimizerConfig default_config(ActivationKind activation, OptimizerKind kind);

void validate(const OptimizerConfig& cfg);

/// Per-parameter optimizer buffers. Allocated lazily on the first step to
/// mirror the block shapes; later steps must pass the same shapes.
class Optimizer {
public:
    explicit Optimizer(OptimizerConfig cfg);

    /// Updates every block in place from its gradient. Throws NumericError
    /// naming the block if a gradient is non-finite; nothing is modified then.
    void step(std::span<const ParamBlock> blocks);

    const OptimizerConfig& config() const { return cfg_; }
    std::uint64_t steps() const { return t_; }

private:
    void ensure_state(std::span<const ParamBlock> blocks);

    OptimizerConfig cfg_;
    std::uint64_t t_ = 0;
    // adam: first and second moments; rprop: previous gradient and step size.
    std::vector<std::vector<double>> buf_a_;
    std::vector<std::vector<double>> buf_b_;
};

} // namespace texinr
