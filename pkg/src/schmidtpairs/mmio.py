"""Matrix Market ``array`` I/O for dense real and complex matrices.

Values are written with 17 significant digits, which is enough for every
IEEE double to survive a text round trip unchanged.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .errors import InvalidInput

_FIELDS = ("real", "complex", "integer")


def format_mm(M) -> str:
    A = np.asarray(M)
    if A.ndim != 2:
        raise InvalidInput("only 2-D arrays can be written")
    field = "complex" if np.iscomplexobj(A) else "real"
    out = io.StringIO()
    out.write(f"%%MatrixMarket matrix array {field} general\n")
    out.write(f"{A.shape[0]} {A.shape[1]}\n")
    # column-major entry order is mandated by the format
    for value in A.T.ravel():
        if field == "complex":
            out.write(f"{value.real:.17g} {value.imag:.17g}\n")
        else:
            out.write(f"{float(value):.17g}\n")
    return out.getvalue()


def write_mm(path, M) -> None:
    Path(path).write_text(format_mm(M))


def parse_mm(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise InvalidInput("missing %%MatrixMarket header")
    header = lines[0].split()
    if len(header) != 5:
        raise InvalidInput(f"malformed header: {lines[0]!r}")
    _, obj, fmt, field, symmetry = (h.lower() for h in header)
    if obj != "matrix" or fmt != "array":
        raise InvalidInput(f"only 'matrix array' files are supported, got {obj} {fmt}")
    if field not in _FIELDS:
        raise InvalidInput(f"unsupported field {field!r}")
    if symmetry != "general":
        raise InvalidInput(f"unsupported symmetry {symmetry!r}")
    body = [ln for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise InvalidInput("missing size line")
    try:
        rows, cols = (int(t) for t in body[0].split())
        tokens = [float(t) for ln in body[1:] for t in ln.split()]
    except ValueError as exc:
        raise InvalidInput(f"malformed Matrix Market data: {exc}") from None
    per = 2 if field == "complex" else 1
    if len(tokens) != rows * cols * per:
        raise InvalidInput(f"expected {rows * cols} entries, found {len(tokens) // per}")
    data = np.array(tokens)
    if field == "complex":
        data = data[0::2] + 1j * data[1::2]
    A = data.reshape(cols, rows).T.copy()
    if not np.all(np.isfinite(A)):
        raise InvalidInput("non-finite entries")
    return A


def read_mm(path) -> np.ndarray:
    return parse_mm(Path(path).read_text())


def read_complex_list(path) -> np.ndarray:
    """Read one complex number per line as ``re im`` (or just ``re``)."""
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        try:
            if len(parts) == 1:
                values.append(complex(float(parts[0]), 0.0))
            elif len(parts) == 2:
                values.append(complex(float(parts[0]), float(parts[1])))
            else:
                raise ValueError
        except ValueError:
            raise InvalidInput(f"{path}:{lineno}: expected 're im', got {line!r}") from None
    return np.array(values, dtype=complex)


def write_complex_list(path, values) -> None:
    lines = [f"{complex(v).real:.17g} {complex(v).imag:.17g}" for v in values]
    Path(path).write_text("\n".join(lines) + "\n")
