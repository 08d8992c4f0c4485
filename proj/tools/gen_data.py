#!/usr/bin/env python3
# Copyright 2026 The sasim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the shipped hardware and network description files under data/."""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data"

KB = 1024

# Bbuf, Imem and op latencies are not published for these platforms; the
# values below are placeholders (see data/README.md).
PLACEHOLDER = {
    "bbuf_bytes": 64 * KB,
    "imem_bytes": 64 * KB,
    "op_latency": {"add": 1, "sub": 1, "mul": 1, "div": 4, "max": 1},
}


def platform(name, pe, sizes_kb, bw, bits_wi):
    wbuf, ibuf, obuf, vmem = sizes_kb
    hw = {
        "name": name,
        "pe_rows": pe,
        "pe_cols": pe,
        "wbuf_bytes": wbuf * KB,
        "ibuf_bytes": ibuf * KB,
        "obuf_bytes": obuf * KB,
        "vmem_bytes": vmem * KB,
        "bw_w": bw,
        "bw_i": bw,
        "bw_o": bw,
        "bw_v": bw,
        "bits_weight": bits_wi,
        "bits_bias": 32,
        "bits_ifmap": bits_wi,
        "bits_psum": 32,
        "bits_simd_in": 32,
        "bits_simd_out": 32,
    }
    hw.update(PLACEHOLDER)
    return hw


HARDWARE = {
    "HT1": platform("HT1", 16, (256, 128, 256, 256), 128, 16),
    "HT2": platform("HT2", 32, (512, 256, 512, 512), 256, 16),
    "HT3": platform("HT3", 64, (1024, 512, 1024, 1024), 512, 16),
    "HI1": platform("HI1", 16, (32, 32, 128, 128), 128, 8),
    "HI2": platform("HI2", 32, (256, 128, 512, 512), 256, 8),
    "HI3": platform("HI3", 64, (512, 256, 1024, 1024), 512, 8),
}

SMALL4 = platform("small4x4", 4, (64, 64, 64, 64), 128, 16)
SMALL4["op_latency"] = {"add": 1, "sub": 1, "mul": 1, "div": 4, "max": 1}


class Net:
    def __init__(self):
        self.layers = []

    def add(self, name, kind, dims, **extra):
        entry = {"name": name, "kind": kind, "dims": dims}
        entry.update(extra)
        self.layers.append(entry)

    def conv(self, name, n, h, c_in, c_out, k, s, pad, bias=False):
        oh = (h + 2 * pad - k) // s + 1
        self.add(name, "Conv", {"n": n, "ih": h, "iw": h, "ic": c_in, "oc": c_out,
                                "kh": k, "kw": k, "s": s, "pad": pad, "bias": bias})
        return oh

    def simd(self, name, kind, n, h, c, **pool):
        dims = {"h": h, "w": h, "n": n, "c": c}
        dims.update(pool)
        self.add(name, kind, dims)

    def conv_bn(self, name, n, h, c_in, c_out, k, s, pad, relu=True):
        oh = self.conv(name + ".conv", n, h, c_in, c_out, k, s, pad)
        self.simd(name + ".bn", "BatchNorm", n, oh, c_out)
        if relu:
            self.simd(name + ".relu", "ReLU", n, oh, c_out)
        return oh


def stem(net, n):
    h = net.conv_bn("conv1", n, 224, 3, 64, 7, 2, 3)
    net.simd("maxpool", "MaxPool", n, h, 64, r=3, s=2, pad=1)
    return (h + 2 - 3) // 2 + 1


def head(net, n, h, c):
    net.simd("avgpool", "GlobalAvgPool", n, h, c)
    net.add("fc", "FC", {"n": n, "ic": c, "oc": 1000, "bias": True})


def resnet50(n=1):
    net = Net()
    h = stem(net, n)
    c_in = 64
    for stage, (blocks, width) in enumerate(zip((3, 4, 6, 3), (64, 128, 256, 512)), start=1):
        for b in range(blocks):
            s = 2 if (b == 0 and stage > 1) else 1
            name = f"layer{stage}.{b}"
            out = width * 4
            h1 = net.conv_bn(name + ".a", n, h, c_in, width, 1, 1, 0)
            h2 = net.conv_bn(name + ".b", n, h1, width, width, 3, s, 1)
            net.conv_bn(name + ".c", n, h2, width, out, 1, 1, 0, relu=False)
            if b == 0:
                net.conv_bn(name + ".down", n, h, c_in, out, 1, s, 0, relu=False)
            net.simd(name + ".add", "TensorAdd", n, h2, out)
            net.simd(name + ".relu", "ReLU", n, h2, out)
            h, c_in = h2, out
    head(net, n, h, c_in)
    return net.layers


def resnet18(n=1):
    net = Net()
    h = stem(net, n)
    c_in = 64
    for stage, width in enumerate((64, 128, 256, 512), start=1):
        for b in range(2):
            s = 2 if (b == 0 and stage > 1) else 1
            name = f"layer{stage}.{b}"
            h1 = net.conv_bn(name + ".a", n, h, c_in, width, 3, s, 1)
            net.conv_bn(name + ".b", n, h1, width, width, 3, 1, 1, relu=False)
            if s != 1 or c_in != width:
                net.conv_bn(name + ".down", n, h, c_in, width, 1, s, 0, relu=False)
            net.simd(name + ".add", "TensorAdd", n, h1, width)
            net.simd(name + ".relu", "ReLU", n, h1, width)
            h, c_in = h1, width
    head(net, n, h, c_in)
    return net.layers


def smoke_conv():
    return [{
        "name": "conv_example",
        "kind": "Conv",
        "dims": {"n": 1, "ih": 8, "iw": 8, "ic": 4, "oc": 8, "kh": 3, "kw": 3, "s": 1,
                 "pad": 0, "bias": True},
        "tiling": {"outer": {"oh": 6, "ow": 6, "n": 1, "kh": 3, "kw": 3, "ic": 4, "oc": 4}},
    }]


def conv_bn_relu():
    net = Net()
    net.conv_bn("block", 2, 8, 4, 8, 3, 1, 1)
    return net.layers


def toy4():
    net = Net()
    net.conv("conv_a", 1, 16, 16, 32, 3, 1, 1)
    net.simd("relu_a", "ReLU", 1, 16, 32)
    net.conv("conv_b", 1, 16, 32, 32, 3, 1, 1)
    net.simd("add", "TensorAdd", 1, 16, 32)
    return net.layers


def write(path, doc):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=2) + "\n")


def main():
    for name, hw in HARDWARE.items():
        write(ROOT / "hw" / f"{name}.json", hw)
    write(ROOT / "hw" / "small4x4.json", SMALL4)
    write(ROOT / "networks" / "resnet50.json", resnet50())
    write(ROOT / "networks" / "resnet18.json", resnet18())
    write(ROOT / "networks" / "smoke_conv.json", smoke_conv())
    write(ROOT / "networks" / "conv_bn_relu.json", conv_bn_relu())
    write(ROOT / "networks" / "toy4.json", toy4())


if __name__ == "__main__":
    main()
