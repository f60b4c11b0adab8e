#!/usr/bin/env python3
"""Smoke test for the bhdimer_py extension module.

Build the module first, then run this script from the repository root:

    cargo build -p bhdimer-py --release
    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / "release" / "libbhdimer_py.so",
        REPO / "target" / "debug" / "libbhdimer_py.so",
        REPO / "target" / "release" / "libbhdimer_py.dylib",
        REPO / "target" / "debug" / "libbhdimer_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p bhdimer-py --release")
    stage = Path(tempfile.mkdtemp(prefix="bhdimer_py_"))
    shutil.copy2(built, stage / "bhdimer_py.so")
    sys.path.insert(0, str(stage))
    import bhdimer_py

    return bhdimer_py


def approx(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def main():
    bh = load_module()
    print(f"loaded bhdimer_py {bh.__version__}")

    p = bh.ModelParams(1.0, 0.005, 100)
    assert p.coupling == 0.5 and p.rabi_regime
    p2 = bh.ModelParams.from_coupling(1.0, 0.05, 50)
    approx(p2.interaction, 0.001, 1e-15)
    print(f"params: {p!r}")

    diag, offdiag = bh.hamiltonian(p)
    assert len(diag) == 101 and len(offdiag) == 100
    approx(diag[100], 49.5, 1e-12)
    approx(offdiag[0], -10.0, 1e-12)

    evals = bh.eigenvalues(bh.ModelParams(1.0, 0.0, 100))
    approx(evals[0], -100.0, 1e-9)
    approx(evals[-1], 100.0, 1e-9)
    approx(evals[1] - evals[0], 2.0, 1e-9)
    print("spectrum: U=0 ladder spacing 2J OK")

    psi0 = bh.initial_state(p)
    assert psi0[100] == 1.0 + 0j
    approx(bh.s_z(p, psi0), 0.5, 1e-15)
    sp = bh.s_plus(p, psi0)
    approx(sp.real, 50.0, 1e-12)
    approx(sp.imag, 0.0, 1e-12)

    tilted = bh.initial_state(p2, math.pi / 8)
    approx(bh.s_z(p2, tilted), 0.5 * math.cos(math.pi / 4), 1e-12)
    print("states: all-left and tilted expectations OK")

    rv = bh.revival(p)
    approx(rv.t_r, 200.0 * math.pi, 1e-9)
    approx(rv.t_c, math.sqrt(200.0) / 0.5, 1e-9)
    approx(rv.m_max, 9.3898, 1e-3)
    approx(rv.phi, 2.03625, 1e-12)
    assert len(rv.peaks) == 11
    print(f"revival: {rv!r}")

    approx(bh.tilted_revival_time(p2, math.pi / 4), 1000 * math.pi / (1 - 3 / 80), 1e-9)
    approx(bh.energy_perturbative(p, 0.0, order=1), 37.0, 1e-12)

    # short exact run: free hopping is a pure cosine
    free = bh.ModelParams(1.0, 0.0, 60)
    times = [0.05 * i for i in range(400)]
    delta, env = bh.evolve(free, times)
    worst = max(abs(d - 0.5 * math.cos(2 * t)) for d, t in zip(delta, times))
    assert worst <= 1e-9, worst
    print(f"evolve: U=0 cosine max deviation {worst:.2e}")

    # collapse fit on the fig1 envelope
    rv_times = [0.15 * i for i in range(int(3 * rv.t_c / 0.15))]
    _, env = bh.evolve(p, rv_times)
    t_fit = bh.fit_collapse_time(rv_times, env)
    assert abs(t_fit - rv.t_c) / rv.t_c <= 0.05, t_fit
    print(f"collapse fit: T_fit = {t_fit:.3f} vs T_c = {rv.t_c:.3f}")

    # the three routes agree at the first revival center
    c1 = rv.peaks[1][1]
    window = [c1 + 0.1 * (i - 50) for i in range(101)]
    d_exact, e_exact = bh.evolve(p, window)
    d_closed, e_closed = bh.delta_closed_form(p, window)
    d_semi, e_semi = bh.delta_semianalytic(p, window)
    assert max(abs(a - b) for a, b in zip(e_exact, e_closed)) < 0.05
    assert max(abs(a - b) for a, b in zip(e_semi, e_closed)) < 0.05
    print("engines: exact / semi-analytic / closed-form envelopes agree at m=1")

    # errors surface as ValueError
    try:
        bh.revival(free)
    except ValueError as e:
        assert "no revival structure" in str(e)
    else:
        sys.exit("expected ValueError for u = 0")

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
