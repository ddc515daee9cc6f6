"""Pure-Python Numerov kernels; same contract as the compiled ``_numerov``."""

import math

import numpy as np

RESCALE_AT = 1e200
RESCALE_BY = 1e-200


def shoot(f0, g, energy, h, start, stop):
    step = 1 if stop > start else -1
    f0 = f0.tolist() if hasattr(f0, "tolist") else f0
    g = g.tolist() if hasattr(g, "tolist") else g
    h12 = h * h / 12.0
    fa = f0[start] - energy * g[start]
    f1 = f0[start + step] - energy * g[start + step]
    y0 = 1.0
    y1 = math.exp(h * math.sqrt(fa if fa > 0.0 else 0.0))
    w0 = 1.0 - h12 * fa
    w1 = 1.0 - h12 * f1
    sgn = 1
    nodes = 0
    for k in range(start + 2 * step, stop + step, step):
        f2 = f0[k] - energy * g[k]
        w2 = 1.0 - h12 * f2
        y2 = ((2.0 + 10.0 * h12 * f1) * y1 - w0 * y0) / w2
        if y2 != 0.0 and ((y2 > 0.0) != (sgn > 0)):
            nodes += 1
            sgn = -sgn
        if abs(y2) > RESCALE_AT:
            y1 *= RESCALE_BY
            y2 *= RESCALE_BY
        y0, y1 = y1, y2
        w0, w1 = w1, w2
        f1 = f2
    return y0, y1, nodes


def profile(f0, g, energy, h, start, stop):
    step = 1 if stop > start else -1
    n = (stop - start) * step + 1
    f0 = f0.tolist() if hasattr(f0, "tolist") else f0
    g = g.tolist() if hasattr(g, "tolist") else g
    h12 = h * h / 12.0
    fa = f0[start] - energy * g[start]
    f1 = f0[start + step] - energy * g[start + step]
    w0 = 1.0 - h12 * fa
    w1 = 1.0 - h12 * f1
    out = [1.0, math.exp(h * math.sqrt(fa if fa > 0.0 else 0.0))]
    for idx in range(2, n):
        k = start + idx * step
        f2 = f0[k] - energy * g[k]
        w2 = 1.0 - h12 * f2
        y2 = ((2.0 + 10.0 * h12 * f1) * out[-1] - w0 * out[-2]) / w2
        out.append(y2)
        if abs(y2) > RESCALE_AT:
            out = [v * RESCALE_BY for v in out]
        w0, w1 = w1, w2
        f1 = f2
    return np.array(out)
