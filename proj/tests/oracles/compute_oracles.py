# Copyright 2026 The ecq Authors.
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

"""Independent high-precision reference values frozen into the C++ tests.

Run with: python3 tests/oracles/compute_oracles.py
"""
import itertools
import mpmath as mp

mp.mp.dps = 40


def phi(x):
    return mp.ncdf(x)


def gaussian_integer_part_entropy():
    h = mp.mpf(0)
    for k in range(-12, 12):
        p = phi(k + 1) - phi(k)
        h -= p * mp.log(p)
    return h


def hexagon_G():
    # regular hexagon, inradius 1/2: integrate |x|^2 over the 12 right triangles
    # G = (1/d) * int |x|^2 / V^{1+2/d}
    a = mp.mpf(1) / 2            # apothem
    s = 2 * a / mp.sqrt(3)       # side
    area = 3 * mp.sqrt(3) / 2 * s**2
    half = s / 2
    # right triangle 0<=x<=a, 0<=y<=x*half/a
    tri = mp.quad(lambda x: x**2 * (x * half / a) + (x * half / a)**3 / 3, [0, a])
    second = 12 * tri
    return second / area**2 / 2


def d2_nearest(x):
    best = None
    for p in itertools.product(range(-2, 4), repeat=2):
        if sum(p) % 2:
            continue
        dist = sum((xi - pi) ** 2 for xi, pi in zip(x, p))
        if best is None or dist < best[0]:
            best = (dist, p)
    return best


def bounds():
    def lb_per_dim(d):
        return mp.log(2 * mp.pi * mp.e * mp.gamma(1 + mp.mpf(d) / 2) ** (mp.mpf(2) / d) / (mp.pi * (2 + d))) / 2

    def zador(d):
        return mp.log(2 * mp.pi * mp.e * mp.gamma(1 + mp.mpf(2) / d) * mp.gamma(1 + mp.mpf(d) / 2) ** (mp.mpf(2) / d) / (mp.pi * d)) / 2

    return {d: (lb_per_dim(d) / mp.log(2), zador(d)) for d in (1, 2, 10, 24, 10000)}


def pattern_uniform_distortion():
    # pattern [1,2], base 0.1, offset 0 on Uniform(0,1): midpoint per cell
    edges = [0]
    lens = [mp.mpf(1) / 10, mp.mpf(2) / 10]
    k = 0
    while edges[-1] < 1:
        edges.append(edges[-1] + lens[k % 2])
        k += 1
    total = mp.mpf(0)
    for a, b in zip(edges, edges[1:]):
        lo, hi = max(a, 0), min(b, 1)
        if hi <= lo:
            continue
        c = (a + b) / 2
        total += mp.quad(lambda x: (x - c) ** 2, [lo, hi])
    return total


if __name__ == "__main__":
    print("H(floor(N(0,1))) nats =", mp.nstr(gaussian_integer_part_entropy(), 17))
    print("hexagon G =", mp.nstr(hexagon_G(), 17), " closed form 5/(36 sqrt3) =", mp.nstr(5 / (36 * mp.sqrt(3)), 17))
    print("D2 nearest (0.9,0.4) =", d2_nearest((mp.mpf('0.9'), mp.mpf('0.4'))))
    for d, (lb, z) in bounds().items():
        print(f"d={d}: lb bits/dim = {mp.nstr(lb, 12)}  zador nats/dim = {mp.nstr(z, 12)}")
    print("pattern[1,2]@0.1 Uniform(0,1) D =", mp.nstr(pattern_uniform_distortion(), 17))
    print("Gaussian cell [0,1) =", mp.nstr(phi(1) - phi(0), 17))
