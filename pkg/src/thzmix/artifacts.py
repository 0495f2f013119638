"""Run artifact persistence: CSV field histories, one-row reports, manifests.

Everything is written in SI with 17 significant digits and "\n" line ends, so
identical runs produce byte-identical files.  Row order is z-major, then tau.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .analytics import RunReport
from .levels import FIELD_NAMES
from .propagation import FieldGrid, MarchResult

TOOL_VERSION = "0.1.0"

FIELDS_CSV = "fields.csv"
COHERENCE_CSV = "coherence.csv"
REPORT_CSV = "report.csv"
MANIFEST = "manifest"


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return str(x)


def _fields_csv_text(grid: FieldGrid, fields: np.ndarray) -> str:
    header = ["z_m", "tau_s"]
    for name in FIELD_NAMES:
        header += [f"re_omega_{name}_per_s", f"im_omega_{name}_per_s"]
    lines = [",".join(header)]
    for iz in range(fields.shape[0]):
        zs = _fmt(float(grid.z[iz]))
        for it in range(fields.shape[1]):
            row = [zs, _fmt(float(grid.tau[it]))]
            for k in range(4):
                a = fields[iz, it, k]
                row += [_fmt(float(a.real)), _fmt(float(a.imag))]
            lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _coherence_csv_text(grid: FieldGrid, coherence: np.ndarray) -> str:
    lines = ["z_m,tau_s,re_rho_bc,im_rho_bc"]
    for iz in range(coherence.shape[0]):
        zs = _fmt(float(grid.z[iz]))
        for it in range(coherence.shape[1]):
            c = coherence[iz, it]
            lines.append(",".join([
                zs, _fmt(float(grid.tau[it])),
                _fmt(float(c.real)), _fmt(float(c.imag)),
            ]))
    return "\n".join(lines) + "\n"


def _report_csv_text(report: RunReport) -> str:
    head = ",".join(report.columns())
    row = ",".join(_fmt(v) for v in report.row())
    return head + "\n" + row + "\n"


def _manifest_text(
    grid: FieldGrid,
    report: RunReport,
    config_hash: str,
    frozen: bool,
    lossless: bool,
    fields_sha256: str,
) -> str:
    pairs: list[tuple[str, str]] = [
        ("tool_version", TOOL_VERSION),
        ("config_hash", config_hash),
        ("label", report.label),
        ("mode", report.mode),
        ("frozen", _fmt(frozen)),
        ("lossless", _fmt(lossless)),
        ("signature", " ".join(str(s) for s in grid.signature)),
        ("nt", _fmt(grid.nt)),
        ("nz", _fmt(grid.nz)),
        ("t_min_s", _fmt(float(grid.tau[0]))),
        ("t_max_s", _fmt(float(grid.tau[-1]))),
        ("length_m", _fmt(grid.length_m)),
        ("delta_k_per_m", _fmt(grid.delta_k)),
        ("delta_k_l", _fmt(grid.delta_k_l)),
        ("beam_area_m2", _fmt(report.beam_area_m2)),
        ("fields_sha256", fields_sha256),
    ]
    for k, name in enumerate(FIELD_NAMES):
        pairs.append((f"nu_{name}_per_s", _fmt(float(grid.nus[k]))))
    for k, name in enumerate(FIELD_NAMES):
        pairs.append((f"coupling_{name}_per_m_s", _fmt(float(grid.couplings[k]))))
    for k, name in enumerate(FIELD_NAMES):
        pairs.append((f"kappa_{name}_per_m", _fmt(float(grid.kappa[k]))))
    for k, name in enumerate(FIELD_NAMES):
        pairs.append((f"dipole_{name}_cm", _fmt(float(grid.dipoles[k]))))
    return "".join(f"{k}={v}\n" for k, v in pairs)


def write_run_artifacts(
    result: MarchResult,
    report: RunReport,
    out_dir: str | Path,
    *,
    config_hash: str = "",
    lossless: bool = False,
) -> Path:
    """Write fields.csv, coherence.csv, report.csv and the manifest.

    Returns the manifest path.  Deterministic: running the same config twice
    produces byte-identical files.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = result.grid

    fields_text = _fields_csv_text(grid, result.fields)
    sha = hashlib.sha256(fields_text.encode()).hexdigest()
    try:
        (out / FIELDS_CSV).write_text(fields_text)
        (out / COHERENCE_CSV).write_text(
            _coherence_csv_text(grid, result.coherence_storage))
        (out / REPORT_CSV).write_text(_report_csv_text(report))
        manifest_path = out / MANIFEST
        manifest_path.write_text(_manifest_text(
            grid, report, config_hash, result.frozen, lossless, sha))
    except OSError as exc:
        raise OSError(f"cannot write artifacts under {out}: {exc}") from exc
    return manifest_path


def read_manifest(run_dir: str | Path) -> dict[str, str]:
    path = Path(run_dir) / MANIFEST
    if not path.is_file():
        raise FileNotFoundError(f"no manifest in {run_dir}")
    out: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        if not line.strip():
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: malformed manifest line {line!r}")
        k, _, v = line.partition("=")
        out[k] = v
    return out


def read_fields_csv(run_dir: str | Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read fields.csv back into (z, tau, fields[(nz+1), nt, 4] complex).

    Also verifies the checksum recorded in the manifest, raising ValueError
    on a mismatch (tampered or rewritten file).
    """
    run = Path(run_dir)
    path = run / FIELDS_CSV
    if not path.is_file():
        raise FileNotFoundError(f"no {FIELDS_CSV} in {run_dir}")
    text = path.read_text()
    manifest = read_manifest(run)
    want = manifest.get("fields_sha256", "")
    got = hashlib.sha256(text.encode()).hexdigest()
    if want and want != got:
        raise ValueError(
            f"{path}: checksum mismatch (manifest {want[:12]}..., file {got[:12]}...)"
        )
    raw = np.genfromtxt(path, delimiter=",", skip_header=1, dtype=np.float64)
    if raw.ndim == 1:
        raw = raw[None, :]
    if raw.shape[1] != 10 or np.isnan(raw).any():
        raise ValueError(f"{path}: malformed rows")
    z = np.unique(raw[:, 0])
    nz1 = z.size
    nt = raw.shape[0] // nz1
    if nz1 * nt != raw.shape[0]:
        raise ValueError(f"{path}: ragged grid ({raw.shape[0]} rows, {nz1} z values)")
    tau = raw[:nt, 1].copy()
    fields = np.empty((nz1, nt, 4), dtype=np.complex128)
    for k in range(4):
        fields[:, :, k] = (
            raw[:, 2 + 2 * k] + 1j * raw[:, 3 + 2 * k]
        ).reshape(nz1, nt)
    return z, tau, fields
