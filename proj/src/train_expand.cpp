/*******************************************************************************
* Copyright 2026 The sasim Authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*******************************************************************************/

#include "sasim/train_expand.hpp"

#include <algorithm>

namespace sasim {

BackwardConvShapes backward_conv_shapes(const ConvShape &f) {
    const count_t eff_h = f.effective_ih();
    const count_t eff_w = f.effective_iw();

    ConvShape dx;
    dx.n = f.n;
    dx.kh = f.kh;
    dx.kw = f.kw;
    dx.ic = f.oc;
    dx.oc = f.ic;
    dx.stride = 1;
    dx.ih = f.stride * (f.oh - 1) + 1 + 2 * (f.kh - 1);
    dx.iw = f.stride * (f.ow - 1) + 1 + 2 * (f.kw - 1);
    dx.oh = eff_h;
    dx.ow = eff_w;

    ConvShape dw;
    dw.n = f.ic;
    dw.kh = f.stride * (f.oh - 1) + 1;
    dw.kw = f.stride * (f.ow - 1) + 1;
    dw.ic = f.n;
    dw.oc = f.oc;
    dw.stride = 1;
    dw.ih = eff_h;
    dw.iw = eff_w;
    dw.oh = f.kh;
    dw.ow = f.kw;
    return {dx, dw};
}

namespace {

LayerSpec derived(const LayerSpec &src, std::string suffix, LayerKind kind, Phase phase) {
    LayerSpec l;
    l.name = src.name + "." + suffix;
    l.kind = kind;
    l.bits = src.bits;
    l.phase = phase;
    l.source = src.name;
    return l;
}

SimdShape param_shape(count_t h, count_t w, count_t n, count_t c) {
    SimdShape s;
    s.h = h;
    s.w = w;
    s.n = n;
    s.c = c;
    return s;
}

} // namespace

std::vector<LayerSpec> TrainingGraph::all() const {
    std::vector<LayerSpec> out = forward;
    out.insert(out.end(), backward.begin(), backward.end());
    out.insert(out.end(), updates.begin(), updates.end());
    return out;
}

TrainingGraph expand_training(const std::vector<LayerSpec> &network) {
    TrainingGraph g;
    for (const auto &l : network) {
        if (l.phase != Phase::Forward) continue;
        LayerSpec f = l;
        f.source.clear();
        g.forward.push_back(f);
    }

    for (std::size_t idx = g.forward.size(); idx-- > 0;) {
        const LayerSpec &f = g.forward[idx];
        switch (f.kind) {
            case LayerKind::Conv:
            case LayerKind::FC: {
                const auto shapes = backward_conv_shapes(f.conv());
                if (idx != 0) {
                    auto dx = derived(f, "dX", LayerKind::ConvGradIfmap, Phase::Backward);
                    dx.shape = shapes.grad_ifmap;
                    g.backward.push_back(dx);
                }
                auto dw = derived(f, "dW", LayerKind::ConvGradWeight, Phase::Backward);
                dw.shape = shapes.grad_weight;
                g.backward.push_back(dw);
                break;
            }
            case LayerKind::ReLU: {
                auto b = derived(f, "grad", LayerKind::ReluBackward, Phase::Backward);
                b.shape = f.simd();
                g.backward.push_back(b);
                break;
            }
            case LayerKind::TensorAdd: {
                auto b = derived(f, "grad", LayerKind::TensorAddBackward, Phase::Backward);
                b.shape = f.simd();
                g.backward.push_back(b);
                break;
            }
            case LayerKind::MaxPool:
            case LayerKind::AvgPool:
            case LayerKind::GlobalAvgPool: {
                auto b = derived(f, "grad", LayerKind::PoolBackward, Phase::Backward);
                b.shape = f.simd();
                g.backward.push_back(b);
                break;
            }
            case LayerKind::BatchNorm: {
                auto b = derived(f, "grad", LayerKind::BnBackward, Phase::Backward);
                b.shape = f.simd();
                g.backward.push_back(b);
                break;
            }
            default: break;
        }
    }

    for (const auto &f : g.forward) {
        if (is_conv_family(f.kind)) {
            const auto &s = f.conv();
            auto w = derived(f, "W", LayerKind::ParamUpdate, Phase::Update);
            w.shape = param_shape(s.kh, s.kw, s.ic, s.oc);
            g.updates.push_back(w);
            if (s.has_bias) {
                auto b = derived(f, "b", LayerKind::ParamUpdate, Phase::Update);
                b.shape = param_shape(1, 1, 1, s.oc);
                g.updates.push_back(b);
            }
        } else if (f.kind == LayerKind::BatchNorm) {
            const count_t c = f.simd().c;
            auto gamma = derived(f, "gamma", LayerKind::ParamUpdate, Phase::Update);
            gamma.shape = param_shape(1, 1, 1, c);
            auto beta = derived(f, "beta", LayerKind::ParamUpdate, Phase::Update);
            beta.shape = param_shape(1, 1, 1, c);
            g.updates.push_back(gamma);
            g.updates.push_back(beta);
        }
    }
    return g;
}

std::vector<LayerSpec> inference_workload(const std::vector<LayerSpec> &network) {
    std::vector<LayerSpec> out;
    for (const auto &l : network)
        if (l.phase == Phase::Forward && l.kind != LayerKind::BatchNorm) out.push_back(l);
    return out;
}

std::vector<LayerSpec> training_workload(const std::vector<LayerSpec> &network) {
    return expand_training(network).all();
}

std::vector<LayerSpec> with_batch(std::vector<LayerSpec> network, count_t batch) {
    for (auto &l : network) {
        if (l.kind == LayerKind::ParamUpdate) continue;
        if (auto *c = std::get_if<ConvShape>(&l.shape))
            c->n = batch;
        else
            std::get<SimdShape>(l.shape).n = batch;
        if (l.tiling) {
            const count_t tn = std::visit([](const auto &t) { return t.n; }, *l.tiling);
            if (tn > batch) l.tiling.reset();
        }
    }
    return network;
}

} // namespace sasim
