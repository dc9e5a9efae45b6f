"""Frame CSV reading and writing."""

import csv
import io
import math
from pathlib import Path

import numpy as np

import config
from errors import EmptyInputError, FrameParseError

from .sequence import Sequence


def _parse_row(row: list[str], line: int) -> list[float]:
    if len(row) != len(config.FRAME_HEADER):
        raise FrameParseError(line, f"expected {len(config.FRAME_HEADER)} fields, got {len(row)}")
    try:
        td = int(row[0])
    except ValueError:
        raise FrameParseError(line, f"td is not an integer: {row[0]!r}") from None
    if td < 0:
        raise FrameParseError(line, f"td must be non-negative, got {td}")
    values = [float(td)]
    for name, raw in zip(config.FRAME_HEADER[1:], row[1:], strict=True):
        try:
            v = float(raw)
        except ValueError:
            raise FrameParseError(line, f"{name} is not a number: {raw!r}") from None
        if not math.isfinite(v):
            raise FrameParseError(line, f"{name} is not finite: {raw!r}")
        values.append(v)
    return values


def parse_frames(text: str | io.TextIOBase) -> Sequence:
    """
    Parse a frame CSV into a Sequence.

    Args:
        text: CSV content or an open text stream. The first row must be the exact
            header ``td,yaw,pitch,roll,ax,ay,az``.

    Returns:
        Sequence with frames in file order and no metadata
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None:
        raise EmptyInputError("Frame CSV is empty")
    if tuple(h.strip() for h in header) != config.FRAME_HEADER:
        raise FrameParseError(1, f"bad header {','.join(header)!r}")

    rows = []
    for row in reader:
        if not row or all(not field.strip() for field in row):
            continue
        rows.append(_parse_row([field.strip() for field in row], reader.line_num))
    if not rows:
        raise EmptyInputError("Frame CSV has a header but no frames")
    return Sequence(np.array(rows, dtype=np.float64))


def serialize_frames(seq: Sequence) -> str:
    """Render a Sequence as frame CSV (repr floats, so parsing restores them exactly)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(config.FRAME_HEADER)
    for r in seq.data:
        writer.writerow([str(int(r[0]))] + [repr(float(v)) for v in r[1:]])
    return out.getvalue()


def read_frames_file(path: str | Path) -> Sequence:
    """Parse a frame CSV file."""
    with Path(path).open(newline="") as fh:
        return parse_frames(fh.read())


def write_frames_file(path: str | Path, seq: Sequence) -> None:
    """Write a Sequence as frame CSV, creating parent directories."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(serialize_frames(seq))
