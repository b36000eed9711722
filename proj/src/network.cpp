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

#include "texinr/network.hpp"

#include "texinr/error.hpp"

#include <cmath>
#include <random>

namespace texinr {

namespace {

std::vector<std::size_t> layer_widths(const NetworkSpec& spec)
{
    std::vector<std::size_t> w{spec.encoded_input_dim()};
    for (std::size_t i = 0; i < spec.hidden_count; ++i)
        w.push_back(spec.hidden_width);
    w.push_back(spec.output_dim);
    return w;
}

void check_finite(const Matrix& m, std::size_t layer, const char* stage)
{
    if (!m.all_finite())
        throw NumericError("non-finite value at layer " + std::to_string(layer) + " (" + stage + ")");
}

} // namespace

std::string to_string(Architecture arch)
{
    switch (arch) {
    case Architecture::mlp: return "mlp";
    case Architecture::siren: return "siren";
    case Architecture::fourier: return "fourier";
    case Architecture::hash: return "hash";
    }
    return "unknown";
}

Architecture architecture_from_string(const std::string& name)
{
    if (name == "mlp")
        return Architecture::mlp;
    if (name == "siren")
        return Architecture::siren;
    if (name == "fourier")
        return Architecture::fourier;
    if (name == "hash")
        return Architecture::hash;
    throw ConfigError("unknown architecture '" + name + "' (expected mlp, siren, fourier or hash)");
}

NetworkSpec make_spec(Architecture arch, std::size_t width, std::size_t depth, std::size_t input_dim)
{
    NetworkSpec spec;
    spec.input_dim = input_dim;
    spec.hidden_width = width;
    spec.hidden_count = depth;
    switch (arch) {
    case Architecture::mlp:
        break;
    case Architecture::siren:
        spec.activation = ActivationKind::sine;
        break;
    case Architecture::fourier:
        spec.encoder = FourierEncoding::octaves(8);
        break;
    case Architecture::hash:
        spec.encoder = HashEncoding{};
        break;
    }
    return spec;
}

Architecture architecture_of(const NetworkSpec& spec)
{
    if (std::holds_alternative<FourierEncoding>(spec.encoder))
        return Architecture::fourier;
    if (std::holds_alternative<HashEncoding>(spec.encoder))
        return Architecture::hash;
    return spec.activation == ActivationKind::sine ? Architecture::siren : Architecture::mlp;
}

std::vector<GridPoint> standard_grid()
{
    std::vector<GridPoint> grid;
    for (std::size_t depth : {1, 2, 3})
        for (std::size_t width : {128, 256, 512})
            if (!(depth == 3 && width == 512))
                grid.push_back({width, depth});
    return grid;
}

void validate(const NetworkSpec& spec)
{
    if (spec.input_dim != 2 && spec.input_dim != 3)
        throw ConfigError("input_dim must be 2 or 3, got " + std::to_string(spec.input_dim));
    if (spec.output_dim != 3)
        throw ConfigError("output_dim must be 3");
    if (spec.hidden_count > 0 && spec.hidden_width == 0)
        throw ConfigError("hidden width must be positive");
    if (spec.activation == ActivationKind::sine && !(spec.omega0 > 0.0 && std::isfinite(spec.omega0)))
        throw ConfigError("omega0 must be positive");
    validate(spec.encoder);
}

std::size_t param_count(const NetworkSpec& spec)
{
    const auto w = layer_widths(spec);
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        n += w[i] * w[i + 1] + w[i + 1];
    if (const auto* h = std::get_if<HashEncoding>(&spec.encoder))
        n += h->table_entries();
    return n;
}

double init_bound(const NetworkSpec& spec, std::size_t index, std::size_t d_in, std::size_t d_out)
{
    if (spec.activation == ActivationKind::sine) {
        if (index == 0)
            return 1.0 / static_cast<double>(d_in);
        return std::sqrt(6.0 / static_cast<double>(d_in)) / spec.omega0;
    }
    return std::sqrt(6.0 / static_cast<double>(d_in + d_out));
}

InrModel zeros(const NetworkSpec& spec)
{
    validate(spec);
    InrModel model;
    model.spec = spec;
    const auto w = layer_widths(spec);
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        model.layers.push_back({Matrix(w[i], w[i + 1]), Vector(w[i + 1])});
    if (const auto* h = std::get_if<HashEncoding>(&spec.encoder))
        model.hash_table.assign(h->table_entries(), 0.0);
    return model;
}

InrModel init(const NetworkSpec& spec, std::uint64_t seed)
{
    InrModel model = zeros(spec);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        Matrix& W = model.layers[i].W;
        const double bound = init_bound(spec, i, W.rows(), W.cols());
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (double& v : W.values())
            v = dist(rng);
    }
    std::uniform_real_distribution<double> table_dist(-1e-4, 1e-4);
    for (double& v : model.hash_table)
        v = table_dist(rng);
    return model;
}

Matrix forward(const InrModel& model, const Matrix& coords)
{
    if (coords.cols() != model.spec.input_dim)
        throw ShapeError("forward: coords " + coords.shape_string() + " but model expects input_dim " +
                         std::to_string(model.spec.input_dim));
    Matrix a = encode(model.spec.encoder, coords, model.hash_table);
    const Activation act = model.spec.hidden_activation();
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        a = affine(model.layers[i].W, model.layers[i].b, a);
        if (i + 1 < model.layers.size())
            a = apply_activation(act, a);
        check_finite(a, i, "forward");
    }
    return a;
}

InrModel quantize32(const InrModel& model)
{
    InrModel q = model;
    auto round32 = [](double& v) { v = static_cast<double>(static_cast<float>(v)); };
    for (Layer& layer : q.layers) {
        for (double& v : layer.W.values())
            round32(v);
        for (double& v : layer.b.values())
            round32(v);
    }
    for (double& v : q.hash_table)
        round32(v);
    return q;
}

ModelGradient ModelGradient::zeros_like(const InrModel& model)
{
    ModelGradient g;
    for (const Layer& layer : model.layers)
        g.layers.push_back({Matrix(layer.W.rows(), layer.W.cols()), Vector(layer.b.size())});
    g.hash_table.assign(model.hash_table.size(), 0.0);
    return g;
}

void ModelGradient::clear()
{
    for (LayerGrad& l : layers) {
        l.dW.fill(0.0);
        l.db.fill(0.0);
    }
    std::fill(hash_table.begin(), hash_table.end(), 0.0);
}

double accumulate_mse_gradient(const InrModel& model, const Matrix& coords, const Matrix& targets,
                               double normalizer, ModelGradient& grad)
{
    if (targets.rows() != coords.rows() || targets.cols() != model.spec.output_dim)
        throw ShapeError("targets " + targets.shape_string() + " do not match coords " + coords.shape_string());

    Tape tape;
    Matrix a = encode(model.spec.encoder, coords, model.hash_table);
    const Activation act = model.spec.hidden_activation();
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        a = tape.affine_forward(model.layers[i].W, model.layers[i].b, a);
        if (i + 1 < model.layers.size())
            a = tape.activation_forward(act, a);
    }

    double sse = 0.0;
    Matrix dloss(a.rows(), a.cols());
    auto out = a.values();
    auto tgt = targets.values();
    auto d = dloss.values();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double e = out[i] - tgt[i];
        sse += e * e;
        d[i] = 2.0 * e / normalizer;
    }

    TapeGradients g = tape.backward(dloss);
    for (std::size_t l = 0; l < g.layers.size(); ++l) {
        auto dst_w = grad.layers[l].dW.values();
        auto src_w = g.layers[l].dW.values();
        for (std::size_t k = 0; k < dst_w.size(); ++k)
            dst_w[k] += src_w[k];
        auto dst_b = grad.layers[l].db.values();
        auto src_b = g.layers[l].db.values();
        for (std::size_t k = 0; k < dst_b.size(); ++k)
            dst_b[k] += src_b[k];
    }
    if (const auto* h = std::get_if<HashEncoding>(&model.spec.encoder))
        hash_encode_backward(*h, coords, g.input, grad.hash_table);
    return sse;
}

std::vector<ParamBlock> param_blocks(InrModel& model, const ModelGradient& grad)
{
    std::vector<ParamBlock> blocks;
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        blocks.push_back({"layer " + std::to_string(i) + " W", model.layers[i].W.values(), grad.layers[i].dW.values()});
        blocks.push_back({"layer " + std::to_string(i) + " b", model.layers[i].b.values(), grad.layers[i].db.values()});
    }
    if (!model.hash_table.empty())
        blocks.push_back({"hash table", model.hash_table, grad.hash_table});
    return blocks;
}

std::vector<std::span<const double>> parameter_spans(const InrModel& model)
{
    std::vector<std::span<const double>> spans;
    for (const Layer& layer : model.layers) {
        spans.push_back(layer.W.values());
        spans.push_back(layer.b.values());
    }
    if (!model.hash_table.empty())
        spans.push_back(model.hash_table);
    return spans;
}

} // namespace texinr
