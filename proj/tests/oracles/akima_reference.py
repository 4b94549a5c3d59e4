"""Regenerates tests/data/akima_reference.inc from SciPy's Akima1DInterpolator.

Run once; the output is committed and the C++ tests compare against it.
"""
import numpy as np
from scipy.interpolate import Akima1DInterpolator

FIXTURES = {
    "vmaf_decay": ([10, 20, 30, 40, 50], [95, 88, 70, 45, 20]),
    "nonuniform": ([0.0, 1.5, 2.0, 4.5, 7.0, 7.5, 10.0],
                   [3.0, -1.0, 2.5, 2.4, 8.0, 6.5, 1.0]),
    "flat_run": ([10, 20, 30, 40, 50, 60], [5, 5, 5, 9, 12, 12]),
    "bitrate": ([10, 20, 30, 40, 50], [81234.5, 22011.0, 6120.25, 1810.0, 640.5]),
}
PROBES = 50

lines = ["// Generated by tests/oracles/akima_reference.py. Do not edit.", ""]
for name, (xs, ys) in FIXTURES.items():
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    spl = Akima1DInterpolator(xs, ys)
    probes = np.linspace(xs[0], xs[-1], PROBES + 2)[1:-1]
    vals = spl(probes)
    xs_s = ", ".join(repr(float(v)) for v in xs)
    ys_s = ", ".join(repr(float(v)) for v in ys)
    pr = ",\n     ".join(f"{{{float(p)!r}, {float(v)!r}}}" for p, v in zip(probes, vals))
    lines.append(f"{{\"{name}\",\n  {{{xs_s}}},\n  {{{ys_s}}},\n  {{{pr}}}}},")
open("tests/data/akima_reference.inc", "w").write("\n".join(lines) + "\n")
