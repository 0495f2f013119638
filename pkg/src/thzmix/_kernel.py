"""Hot loop: RK4 evolution of one atomic column over the retarded-time grid.

Hand-rolled 4x4 complex arithmetic so the jit can keep everything in
registers.  Set THZMIX_NO_NUMBA=1 to force the pure-python fallback; the
numerics are bit-identical either way.
"""

from __future__ import annotations

import os

import numpy as np


def _rhs(rho, q, diag, gpop, deph, br_ab, br_db, h, out):
    for i in range(4):
        for j in range(4):
            h[i, j] = 0.0 + 0.0j
    h[0, 0] = diag[0]
    h[1, 1] = diag[1]
    h[2, 2] = diag[2]
    h[3, 3] = diag[3]
    h[0, 1] -= q[0]
    h[1, 0] -= np.conj(q[0])
    h[0, 2] -= q[1]
    h[2, 0] -= np.conj(q[1])
    h[3, 2] -= q[2]
    h[2, 3] -= np.conj(q[2])
    h[3, 1] -= q[3]
    h[1, 3] -= np.conj(q[3])
    for i in range(4):
        for j in range(4):
            c = 0.0 + 0.0j
            for k in range(4):
                c += h[i, k] * rho[k, j] - rho[i, k] * h[k, j]
            out[i, j] = -1j * c \
                - (0.5 * (gpop[i] + gpop[j]) + deph[i, j]) * rho[i, j]
    fa = gpop[0] * rho[0, 0].real
    fd = gpop[3] * rho[3, 3].real
    out[1, 1] += br_ab * fa + br_db * fd
    out[2, 2] += (1.0 - br_ab) * fa + (1.0 - br_db) * fd


def _clamp(rho, cb, pg, ps):
    rho[1, 1] = pg + 0.0j
    rho[2, 2] = ps + 0.0j
    rho[1, 2] = cb
    rho[2, 1] = np.conj(cb)


def _evolve(rho0, drives, dt, diag, gpop, deph, br_ab, br_db,
            frozen, cb, pg, ps):
    nt = drives.shape[0]
    hist = np.zeros((nt, 4, 4), dtype=np.complex128)
    rho = rho0.copy()
    if frozen:
        _clamp(rho, cb, pg, ps)
    hist[0] = rho

    h = np.zeros((4, 4), dtype=np.complex128)
    k1 = np.zeros((4, 4), dtype=np.complex128)
    k2 = np.zeros((4, 4), dtype=np.complex128)
    k3 = np.zeros((4, 4), dtype=np.complex128)
    k4 = np.zeros((4, 4), dtype=np.complex128)
    tmp = np.zeros((4, 4), dtype=np.complex128)
    qm = np.zeros(4, dtype=np.complex128)

    trace_dev = 0.0
    herm_dev = 0.0

    for it in range(nt - 1):
        q0 = drives[it]
        q1 = drives[it + 1]
        for k in range(4):
            qm[k] = 0.5 * (q0[k] + q1[k])

        _rhs(rho, q0, diag, gpop, deph, br_ab, br_db, h, k1)
        for i in range(4):
            for j in range(4):
                tmp[i, j] = rho[i, j] + 0.5 * dt * k1[i, j]
        _rhs(tmp, qm, diag, gpop, deph, br_ab, br_db, h, k2)
        for i in range(4):
            for j in range(4):
                tmp[i, j] = rho[i, j] + 0.5 * dt * k2[i, j]
        _rhs(tmp, qm, diag, gpop, deph, br_ab, br_db, h, k3)
        for i in range(4):
            for j in range(4):
                tmp[i, j] = rho[i, j] + dt * k3[i, j]
        _rhs(tmp, q1, diag, gpop, deph, br_ab, br_db, h, k4)
        for i in range(4):
            for j in range(4):
                rho[i, j] = rho[i, j] + (dt / 6.0) * (
                    k1[i, j] + 2.0 * k2[i, j] + 2.0 * k3[i, j] + k4[i, j]
                )

        # hermiticity repair, recording the raw drift first
        hd = 0.0
        for i in range(4):
            di = abs(rho[i, i].imag)
            if di > hd:
                hd = di
            rho[i, i] = rho[i, i].real + 0.0j
            for j in range(i + 1, 4):
                d = abs(rho[i, j] - np.conj(rho[j, i]))
                if d > hd:
                    hd = d
                avg = 0.5 * (rho[i, j] + np.conj(rho[j, i]))
                rho[i, j] = avg
                rho[j, i] = np.conj(avg)
        if hd > herm_dev:
            herm_dev = hd

        if frozen:
            _clamp(rho, cb, pg, ps)
        else:
            tr = rho[0, 0].real + rho[1, 1].real \
                + rho[2, 2].real + rho[3, 3].real
            td = abs(tr - 1.0)
            if td > trace_dev:
                trace_dev = td
            inv = 1.0 / tr
            for i in range(4):
                for j in range(4):
                    rho[i, j] = rho[i, j] * inv

        hist[it + 1] = rho

    return hist, trace_dev, herm_dev


NUMBA_ENABLED = os.environ.get("THZMIX_NO_NUMBA", "") != "1"

if NUMBA_ENABLED:
    try:
        from numba import njit

        _rhs = njit(cache=True)(_rhs)
        _clamp = njit(cache=True)(_clamp)
        _evolve = njit(cache=True)(_evolve)
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False


def evolve_slice(
    rho0: np.ndarray,
    drives: np.ndarray,
    dt: float,
    diag: np.ndarray,
    gpop: np.ndarray,
    deph: np.ndarray,
    branch_pump_to_ground: float,
    branch_thz_to_ground: float,
    *,
    frozen: bool = False,
    clamp_bc: complex = 0.0,
    clamp_pop_ground: float = 0.5,
    clamp_pop_storage: float = 0.5,
) -> tuple[np.ndarray, float, float]:
    """Evolve rho0 under the (nt, 4) drive history; returns the state at every
    time sample plus the worst per-step trace and hermiticity drifts."""
    rho0 = np.ascontiguousarray(rho0, dtype=np.complex128)
    drives = np.ascontiguousarray(drives, dtype=np.complex128)
    if rho0.shape != (4, 4):
        raise ValueError(f"rho0 must be 4x4, got {rho0.shape}")
    if drives.ndim != 2 or drives.shape[1] != 4 or drives.shape[0] < 2:
        raise ValueError(f"drives must be (nt >= 2, 4), got {drives.shape}")
    return _evolve(
        rho0,
        drives,
        float(dt),
        np.ascontiguousarray(diag, dtype=np.float64),
        np.ascontiguousarray(gpop, dtype=np.float64),
        np.ascontiguousarray(deph, dtype=np.float64),
        float(branch_pump_to_ground),
        float(branch_thz_to_ground),
        bool(frozen),
        complex(clamp_bc),
        float(clamp_pop_ground),
        float(clamp_pop_storage),
    )
