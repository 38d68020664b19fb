"""Matrix file formats and the key=value run-configuration format.

Two matrix formats:

* CSV: UTF-8, one row per line, comma-separated decimal floats, no
  header.  Written with 17 significant digits, which round-trips float64
  exactly.
* Binary "FPCA1": the 5 magic bytes b"FPCA1", then rows and cols as
  little-endian u64, then row-major little-endian float64 payload.
  Bitwise lossless.

``read_matrix`` sniffs the magic bytes; ``write_matrix`` picks the binary
format for paths ending in .fpca1 or .bin unless told otherwise.
"""

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, MatrixParseError

MAGIC = b"FPCA1"
_BINARY_SUFFIXES = (".fpca1", ".bin")


def write_matrix_csv(path, M):
    arr = np.asarray(M, dtype=np.float64)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in arr:
            fh.write(",".join(f"{v:.17g}" for v in row))
            fh.write("\n")


def read_matrix_csv(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    lines = text.split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MatrixParseError(f"{path}: empty matrix file", line=1)
    rows = []
    width = None
    for i, line in enumerate(lines, start=1):
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise MatrixParseError(
                f"{path}: line {i} has {len(fields)} fields, expected {width}", line=i
            )
        row = np.empty(width)
        for j, tok in enumerate(fields, start=1):
            try:
                row[j - 1] = float(tok)
            except ValueError:
                raise MatrixParseError(
                    f"{path}: line {i}, column {j}: not a decimal float: {tok.strip()!r}",
                    line=i, col=j,
                ) from None
            if not np.isfinite(row[j - 1]):
                raise MatrixParseError(
                    f"{path}: line {i}, column {j}: non-finite entry {tok.strip()!r}",
                    line=i, col=j,
                )
        rows.append(row)
    return np.vstack(rows)


def write_matrix_binary(path, M):
    arr = np.ascontiguousarray(M, dtype=np.float64)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<QQ", arr.shape[0], arr.shape[1]))
        fh.write(arr.astype("<f8", copy=False).tobytes())


def read_matrix_binary(path):
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:5] != MAGIC:
        raise MatrixParseError(f"{path}: missing FPCA1 magic bytes", line=1)
    if len(blob) < 21:
        raise MatrixParseError(f"{path}: truncated header", line=1)
    rows, cols = struct.unpack("<QQ", blob[5:21])
    expected = 21 + rows * cols * 8
    if len(blob) != expected:
        raise MatrixParseError(
            f"{path}: payload is {len(blob) - 21} bytes, expected {rows}x{cols}x8",
            line=1,
        )
    arr = np.frombuffer(blob[21:], dtype="<f8").astype(np.float64).reshape(rows, cols)
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        r, c = divmod(int(bad[0]), cols)
        raise MatrixParseError(
            f"{path}: non-finite entry at row {r + 1}, column {c + 1}",
            line=int(r + 1), col=int(c + 1),
        )
    return arr


def read_matrix(path):
    """Load a matrix from either format (sniffed by magic bytes)."""
    with open(path, "rb") as fh:
        head = fh.read(5)
    if head == MAGIC:
        return read_matrix_binary(path)
    return read_matrix_csv(path)


def write_matrix(path, M, fmt=None):
    """Write a matrix; fmt is "csv", "fpca1", or None to pick by suffix."""
    if fmt is None:
        fmt = "fpca1" if str(path).endswith(_BINARY_SUFFIXES) else "csv"
    if fmt == "csv":
        write_matrix_csv(path, M)
    elif fmt == "fpca1":
        write_matrix_binary(path, M)
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")


@dataclass
class RunConfig:
    """Benchmark grid plus solver settings parsed from a key=value file."""

    a1: float = 1.0
    a2: float = 1.0
    rho: float = 1.5
    epsilon: float = 0.01
    mu_bar_multiplier: float = 1e7
    tol: float = 1e-6
    max_iter: int = 1000
    m_list: list = field(default_factory=list)
    r_list: list = field(default_factory=list)
    spr_list: list = field(default_factory=list)
    trials: int = 1
    base_seed: int = 0
    out: str = "bench_results.csv"

    def cells(self):
        """Cross product of the m, r, spr lists as (a1, a2, m, r, spr)."""
        return [
            (self.a1, self.a2, m, r, spr)
            for m in self.m_list
            for r in self.r_list
            for spr in self.spr_list
        ]


_FLOAT_KEYS = {"a1", "a2", "rho", "epsilon", "mu_bar_multiplier", "tol"}
_INT_KEYS = {"max_iter", "trials", "base_seed"}
_INT_LIST_KEYS = {"m_list", "r_list"}
_FLOAT_LIST_KEYS = {"spr_list"}
_STR_KEYS = {"out"}
_ALL_KEYS = _FLOAT_KEYS | _INT_KEYS | _INT_LIST_KEYS | _FLOAT_LIST_KEYS | _STR_KEYS


def parse_run_config(path):
    """Parse a run-configuration file.

    One key=value pair per line; blank lines and lines starting with '#'
    are skipped.  Lists are comma-separated.  Unknown keys are rejected.
    """
    cfg = RunConfig()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}: line {lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _ALL_KEYS:
                raise ConfigError(f"{path}: line {lineno}: unknown key {key!r}")
            try:
                if key in _FLOAT_KEYS:
                    setattr(cfg, key, float(value))
                elif key in _INT_KEYS:
                    setattr(cfg, key, int(value))
                elif key in _INT_LIST_KEYS:
                    setattr(cfg, key, [int(v) for v in value.split(",") if v.strip()])
                elif key in _FLOAT_LIST_KEYS:
                    setattr(cfg, key, [float(v) for v in value.split(",") if v.strip()])
                else:
                    setattr(cfg, key, value)
            except ValueError:
                raise ConfigError(
                    f"{path}: line {lineno}: bad value for {key}: {value!r}"
                ) from None
    return cfg
