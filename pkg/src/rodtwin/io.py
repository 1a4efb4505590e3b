"""Plain-text serialization: snapshot CSV, model files, sweep CSV, reports.

Every number is written with 17 significant digits so float64 values
survive a write/read cycle bit-exactly.  Magnitudes outside
[1e-3, 1e4) use scientific notation; everything uses '.' as the
decimal separator regardless of locale.
"""

from __future__ import annotations

import csv
import hashlib

import numpy as np

from .metrics import QualityReport
from .rank_select import ParetoPoint
from .rod import RodModel, SnapshotMatrix


def fmt(value):
    """Format one float: 17 significant digits, range-dependent notation."""
    value = float(value)
    if value == 0.0:
        return "0"
    mag = abs(value)
    if 1e-3 <= mag < 1e4:
        return "%.17g" % value
    return "%.16e" % value


def _fmt_complex_pair(z):
    return fmt(z.real) + "," + fmt(z.imag)


def file_sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


# ---------------------------------------------------------------- snapshots

def write_snapshot_csv(path, snap, meta=None):
    """Snapshot matrix as CSV: header row x,<times...>, one row per x.

    The header carries the actual time values, making the file
    self-contained.  A meta dict, when given, is written next to the
    data as '<path>.meta' with one 'key = value' line per entry.
    """
    lines = ["x," + ",".join(fmt(t) for t in snap.t)]
    for i in range(snap.values.shape[0]):
        row = snap.values[i]
        lines.append(fmt(snap.x[i]) + "," + ",".join(fmt(v) for v in row))
    with open(path, "w", newline="") as handle:
        handle.write("\n".join(lines) + "\n")
    if meta is not None:
        with open(str(path) + ".meta", "w") as handle:
            for key, value in meta.items():
                handle.write("%s = %s\n" % (key, value))


def read_snapshot_csv(path):
    """Parse a snapshot CSV back into a SnapshotMatrix.

    Malformed content raises ValueError carrying path and line number.
    """
    with open(path) as handle:
        raw_lines = [ln.rstrip("\n") for ln in handle]
    lines = [(i + 1, ln) for i, ln in enumerate(raw_lines) if ln.strip()]
    if len(lines) < 3:
        raise ValueError("%s: need a header and at least 2 data rows" % path)
    header_no, header = lines[0]
    cells = header.split(",")
    if cells[0].strip() != "x":
        raise ValueError(
            "%s:%d: header must start with 'x'" % (path, header_no)
        )
    try:
        t = np.array([float(c) for c in cells[1:]])
    except ValueError as exc:
        raise ValueError("%s:%d: bad time value (%s)" % (path, header_no, exc))
    x = np.empty(len(lines) - 1)
    values = np.empty((x.size, t.size))
    for row_index, (line_no, line) in enumerate(lines[1:]):
        parts = line.split(",")
        if len(parts) != t.size + 1:
            raise ValueError(
                "%s:%d: expected %d cells, found %d"
                % (path, line_no, t.size + 1, len(parts))
            )
        try:
            x[row_index] = float(parts[0])
            values[row_index] = [float(p) for p in parts[1:]]
        except ValueError as exc:
            raise ValueError("%s:%d: bad cell (%s)" % (path, line_no, exc))
    return SnapshotMatrix(values=values, x=x, t=t)


def read_meta(path):
    """Parse a 'key = value' sidecar file into a dict of strings."""
    out = {}
    with open(path) as handle:
        for line_no, line in enumerate(handle, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ValueError("%s:%d: expected 'key = value'" % (path, line_no))
            key, _, value = stripped.partition("=")
            out[key.strip()] = value.strip()
    return out


# ------------------------------------------------------------------- models

_MODEL_HEADER_KEYS = ("nx", "nt", "rank", "seed", "dx", "dt", "length", "t_final")


def write_model(path, model):
    """Single-file model format: key=value header, then bracketed sections.

    [modes] has nx rows of rank (re,im) pairs, [amplitudes] rank rows of
    nt+1 pairs, [eigenvalues] rank rows of one pair each.
    """
    nx = model.modes.shape[0]
    nt = model.amplitudes.shape[1] - 1
    length = float(model.x[-1] - model.x[0])
    t_final = float(model.t[-1] - model.t[0])
    header = {
        "nx": nx,
        "nt": nt,
        "rank": model.rank,
        "seed": model.seed,
        "dx": fmt(model.dx),
        "dt": fmt(model.dt),
        "length": fmt(length),
        "t_final": fmt(t_final),
    }
    parts = ["%s = %s" % (k, header[k]) for k in _MODEL_HEADER_KEYS]
    parts.append("[modes]")
    for i in range(nx):
        parts.append(",".join(_fmt_complex_pair(z) for z in model.modes[i]))
    parts.append("[amplitudes]")
    for i in range(model.rank):
        parts.append(",".join(_fmt_complex_pair(z) for z in model.amplitudes[i]))
    parts.append("[eigenvalues]")
    for z in model.eigenvalues:
        parts.append(_fmt_complex_pair(z))
    with open(path, "w", newline="") as handle:
        handle.write("\n".join(parts) + "\n")


def _parse_pair_row(cells, line_no, path):
    if len(cells) % 2:
        raise ValueError(
            "%s:%d: odd cell count, expected (re,im) pairs" % (path, line_no)
        )
    try:
        flat = np.array([float(c) for c in cells])
    except ValueError as exc:
        raise ValueError("%s:%d: bad numeric cell (%s)" % (path, line_no, exc))
    return flat[0::2] + 1j * flat[1::2]


def read_model(path):
    """Parse a model file written by write_model.

    Grids are rebuilt from the header spacings with origin zero.
    """
    with open(path) as handle:
        lines = [ln.rstrip("\n") for ln in handle]
    header = {}
    sections = {}
    current = None
    for line_no, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1]
            sections[current] = []
        elif current is None:
            if "=" not in stripped:
                raise ValueError(
                    "%s:%d: expected 'key = value' before sections" % (path, line_no)
                )
            key, _, value = stripped.partition("=")
            header[key.strip()] = value.strip()
        else:
            sections[current].append((line_no, stripped.split(",")))
    missing = [k for k in _MODEL_HEADER_KEYS if k not in header]
    if missing:
        raise ValueError("%s: missing header keys %s" % (path, missing))
    for name in ("modes", "amplitudes", "eigenvalues"):
        if name not in sections:
            raise ValueError("%s: missing [%s] section" % (path, name))
    nx = int(header["nx"])
    nt = int(header["nt"])
    rank = int(header["rank"])
    modes = np.empty((nx, rank), dtype=complex)
    rows = sections["modes"]
    if len(rows) != nx:
        raise ValueError("%s: [modes] must have %d rows" % (path, nx))
    for i, (line_no, cells) in enumerate(rows):
        modes[i] = _parse_pair_row(cells, line_no, path)
    amp = np.empty((rank, nt + 1), dtype=complex)
    rows = sections["amplitudes"]
    if len(rows) != rank:
        raise ValueError("%s: [amplitudes] must have %d rows" % (path, rank))
    for i, (line_no, cells) in enumerate(rows):
        amp[i] = _parse_pair_row(cells, line_no, path)
    rows = sections["eigenvalues"]
    if len(rows) != rank:
        raise ValueError("%s: [eigenvalues] must have %d rows" % (path, rank))
    eigenvalues = np.array(
        [_parse_pair_row(cells, line_no, path)[0] for line_no, cells in rows]
    )
    dx = float(header["dx"])
    dt = float(header["dt"])
    return RodModel(
        modes=modes,
        amplitudes=amp,
        eigenvalues=eigenvalues,
        rank=rank,
        seed=int(header["seed"]),
        x=np.arange(nx) * dx,
        t=np.arange(nt + 1) * dt,
    )


# -------------------------------------------------------------------- sweeps

def write_sweep_csv(path, points):
    """Sweep points as CSV rows: rank, j1, j2, dominated, error."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["rank", "j1", "j2", "dominated", "error"])
        for p in points:
            writer.writerow(
                [p.rank, fmt(p.j1), fmt(p.j2), int(p.dominated), p.error]
            )


def read_sweep_csv(path):
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != ["rank", "j1", "j2", "dominated", "error"]:
            raise ValueError("%s: unexpected sweep CSV header" % path)
        points = []
        for row in reader:
            if not row:
                continue
            points.append(
                ParetoPoint(
                    rank=int(row[0]),
                    j1=float(row[1]),
                    j2=float(row[2]),
                    dominated=bool(int(row[3])),
                    error=row[4],
                )
            )
    return points


# ------------------------------------------------------------------- reports

def report_text(report):
    """QualityReport as a flat key=value block, fixed field order."""
    lines = []
    for name in QualityReport.FIELDS:
        value = getattr(report, name)
        if name in ("rank", "seed"):
            lines.append("%s = %d" % (name, value))
        else:
            lines.append("%s = %s" % (name, fmt(value)))
    return "\n".join(lines) + "\n"


def parse_report_text(text):
    values = {}
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip()
    missing = [k for k in QualityReport.FIELDS if k not in values]
    if missing:
        raise ValueError("report text missing fields %s" % missing)
    return QualityReport(
        rank=int(values["rank"]),
        absolute_error=float(values["absolute_error"]),
        correlation=float(values["correlation"]),
        rod_projection_norm=float(values["rod_projection_norm"]),
        fourier_projection_norm=float(values["fourier_projection_norm"]),
        gram_deviation=float(values["gram_deviation"]),
        seed=int(values["seed"]),
    )


def report_csv(report):
    """QualityReport as a two-line CSV: header row plus one value row."""
    header = ",".join(QualityReport.FIELDS)
    cells = []
    for name in QualityReport.FIELDS:
        value = getattr(report, name)
        cells.append("%d" % value if name in ("rank", "seed") else fmt(value))
    return header + "\n" + ",".join(cells) + "\n"
