#!/usr/bin/env python3
"""Smoke test for the cpshield_py extension module.

Builds the cdylib if needed, imports it, and checks a handful of known
values end to end. Run from anywhere: python3 python/smoke_test.py
"""

import math
import shutil
import subprocess
import sys
import sysconfig
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def load_module():
    lib = None
    for profile in ("release", "debug"):
        candidate = ROOT / "target" / profile / "libcpshield_py.so"
        if candidate.exists():
            lib = candidate
            break
    if lib is None:
        subprocess.run(
            ["cargo", "build", "-p", "cpshield-py"], check=True, cwd=ROOT
        )
        lib = ROOT / "target" / "debug" / "libcpshield_py.so"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    importable = lib.parent / f"cpshield_py{suffix}"
    if not importable.exists() or importable.stat().st_mtime < lib.stat().st_mtime:
        shutil.copy2(lib, importable)
    sys.path.insert(0, str(lib.parent))
    import cpshield_py

    return cpshield_py


def approx(got, want, rel=1e-9, label=""):
    if want == 0.0:
        ok = got == 0.0
    else:
        ok = math.isfinite(got) and abs(got / want - 1.0) < rel
    if not ok:
        raise SystemExit(f"FAIL {label}: got {got!r}, want {want!r} (rel {rel})")
    print(f"  ok  {label}: {got:.6g}")


def main():
    cp = load_module()
    fixtures = ROOT / "crates" / "core" / "fixtures"

    print("responses")
    sigma0 = cp.EV**2 / (2.0 * cp.HBAR)
    approx(
        cp.bilayer_sigma_xx(2.0 * cp.GAMMA_HOP_DEFAULT / cp.HBAR),
        11.0 / 12.0 * sigma0,
        1e-12,
        "bilayer sigma_xx at the second interband step",
    )
    approx(
        cp.chi_undoped(1e6, 0.0),
        -cp.DEGENERACY_DEFAULT * 1e6 / (16.0 * cp.HBAR * cp.V_FERMI_DEFAULT),
        1e-12,
        "undoped chi static limit",
    )
    f = cp.f_doped(1.0, 0.0)
    approx(f.real, math.pi, 1e-12, "f(1, 0) real part")
    approx(f.imag, 0.0, label="f(1, 0) imaginary part")

    print("reflection")
    pc = cp.Stack(substrate=cp.Substrate.perfect_conductor())
    r_tm, r_te = pc.reflection(1e6, 1e14)
    approx(r_tm, 1.0, 1e-15, "perfect conductor r_tm")
    approx(r_te, -1.0, 1e-15, "perfect conductor r_te")

    print("ground-state potential")
    rb = cp.Atom.from_fixture(fixtures / "rb_ground.atom")
    sheet = cp.Sheet.undoped()
    scen = cp.Scenario(rb, cp.Stack(sheet=sheet), z_a=1e-6)
    u = scen.total()
    approx(u.u_over_hbar, -74.0038, 1e-3, "undoped sheet at 1 um")
    approx(u.resonant, 0.0, label="ground state has no resonant part")
    approx(u.u_joule, cp.HBAR * u.u_over_hbar, 1e-15, "joule column")

    print("shielding")
    ratio = cp.shielding_ratio(rb, sheet, cp.Substrate.gold(), z_a=1e-6, gap=2e-6)
    approx(ratio, 1.2483, 1e-2, "undoped sheet 2 um above gold")

    points = cp.sweep(scen, "z_a", [0.5e-6, 1e-6, 2e-6])
    mags = [abs(p.result.u_over_hbar) for p in points]
    assert mags[0] > mags[1] > mags[2], f"sweep not decaying: {mags}"
    print(f"  ok  height sweep decays: {mags[0]:.4g} > {mags[1]:.4g} > {mags[2]:.4g}")

    print("excited state")
    rb32 = cp.Atom.from_fixture(fixtures / "rb_32s.atom")
    over_gold = cp.Scenario(rb32, cp.Stack(substrate=cp.Substrate.gold()), z_a=1e-6)
    approx(over_gold.total().resonant, -7.946180e8, 1e-3, "32S resonant part over gold")

    print("error mapping")
    try:
        cp.Scenario(rb, cp.Stack(sheet=sheet), z_a=-1.0)
    except ValueError:
        print("  ok  negative z_a raises ValueError")
    else:
        raise SystemExit("FAIL: negative z_a accepted")
    try:
        cp.Scenario(rb, cp.Stack(sheet=sheet), z_a=1e-6, rel_tol=1e-15, max_refinements=1).total()
    except RuntimeError:
        print("  ok  starved quadrature raises RuntimeError")
    else:
        raise SystemExit("FAIL: starved quadrature converged")

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
