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

#include "texinr/optimizer.hpp"

#include "texinr/error.hpp"

#include <algorithm>
#include <cmath>

namespace texinr {

std::string to_string(OptimizerKind kind)
{
    return kind == OptimizerKind::adam ? "adam" : "rprop";
}

OptimizerKind optimizer_from_string(const std::string& name)
{
    if (name == "adam")
        return OptimizerKind::adam;
    if (name == "rprop")
        return OptimizerKind::rprop;
    throw ConfigError("unknown optimizer '" + name + "' (expected adam or rprop)");
}

OptimizerConfig default_config(ActivationKind activation, OptimizerKind kind)
{
    OptimizerConfig cfg;
    cfg.kind = kind;
    if (kind == OptimizerKind::adam)
        cfg.learning_rate = activation == ActivationKind::sine ? 1e-4 : 1e-3;
    else
        cfg.learning_rate = cfg.rprop.step_init;
    return cfg;
}

void validate(const OptimizerConfig& cfg)
{
    if (!(cfg.learning_rate > 0.0))
        throw ConfigError("learning rate must be positive");
    if (cfg.kind == OptimizerKind::adam) {
        const auto& a = cfg.adam;
        if (!(0.0 < a.beta1 && a.beta1 < a.beta2 && a.beta2 < 1.0))
            throw ConfigError("adam requires 0 < beta1 < beta2 < 1");
        if (!(a.epsilon > 0.0))
            throw ConfigError("adam epsilon must be positive");
    }
    else {
        const auto& r = cfg.rprop;
        if (!(r.eta_minus > 0.0 && r.eta_minus < 1.0 && 1.0 < r.eta_plus))
            throw ConfigError("rprop requires 0 < eta_minus < 1 < eta_plus");
        if (!(0.0 < r.step_min && r.step_min <= r.step_init && r.step_init <= r.step_max))
            throw ConfigError("rprop requires 0 < step_min <= step_init <= step_max");
    }
}

Optimizer::Optimizer(OptimizerConfig cfg) : cfg_(cfg)
{
    if (cfg_.kind == OptimizerKind::rprop)
        cfg_.rprop.step_init = cfg_.learning_rate;
    validate(cfg_);
}

void Optimizer::ensure_state(std::span<const ParamBlock> blocks)
{
    if (buf_a_.empty()) {
        const double b_init = cfg_.kind == OptimizerKind::rprop ? cfg_.rprop.step_init : 0.0;
        for (const ParamBlock& blk : blocks) {
            buf_a_.emplace_back(blk.values.size(), 0.0);
            buf_b_.emplace_back(blk.values.size(), b_init);
        }
    }
    if (buf_a_.size() != blocks.size())
        throw ShapeError("optimizer: block count changed between steps");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].values.size() != buf_a_[i].size() || blocks[i].grad.size() != blocks[i].values.size())
            throw ShapeError("optimizer: shape mismatch in block '" + blocks[i].name + "'");
    }
}

void Optimizer::step(std::span<const ParamBlock> blocks)
{
    for (const ParamBlock& blk : blocks) {
        if (!std::all_of(blk.grad.begin(), blk.grad.end(), [](double g) { return std::isfinite(g); }))
            throw NumericError("non-finite gradient in parameter block '" + blk.name + "'");
    }
    ensure_state(blocks);
    ++t_;

    if (cfg_.kind == OptimizerKind::adam) {
        const auto& a = cfg_.adam;
        const double bc1 = 1.0 - std::pow(a.beta1, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(a.beta2, static_cast<double>(t_));
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            auto theta = blocks[bi].values;
            auto g = blocks[bi].grad;
            auto& m = buf_a_[bi];
            auto& v = buf_b_[bi];
            for (std::size_t i = 0; i < theta.size(); ++i) {
                m[i] = a.beta1 * m[i] + (1.0 - a.beta1) * g[i];
                v[i] = a.beta2 * v[i] + (1.0 - a.beta2) * g[i] * g[i];
                const double m_hat = m[i] / bc1;
                const double v_hat = v[i] / bc2;
                theta[i] -= cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + a.epsilon);
            }
        }
        return;
    }

    // iRprop-: on a sign flip shrink the step, forget the gradient, skip the update.
    const auto& r = cfg_.rprop;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        auto theta = blocks[bi].values;
        auto g = blocks[bi].grad;
        auto& prev = buf_a_[bi];
        auto& delta = buf_b_[bi];
        for (std::size_t i = 0; i < theta.size(); ++i) {
            double gi = g[i];
            const double s = prev[i] * gi;
            if (s > 0.0)
                delta[i] = std::min(delta[i] * r.eta_plus, r.step_max);
            else if (s < 0.0) {
                delta[i] = std::max(delta[i] * r.eta_minus, r.step_min);
                gi = 0.0;
            }
            if (gi > 0.0)
                theta[i] -= delta[i];
            else if (gi < 0.0)
                theta[i] += delta[i];
            prev[i] = gi;
        }
    }
}

} // namespace texinr
