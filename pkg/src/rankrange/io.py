"""File formats: matrices, computed regions and SVG pictures.

Floats are written with 17 significant digits so every value round-trips
exactly through text; the JSON emitter is a small local one for that reason
(the stdlib writer formats floats with repr, which is also lossless, but the
CSV side needs the explicit format anyway and sharing one keeps the files
uniform).  Readers use the stdlib json and csv modules.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .engine import Approximate, EmptyCertificate, NonEmptyWitness, RankRangeResult
from .errors import RankRangeError
from .geometry import ConvexRegion, RegionKind
from .validation import check_square_matrix

__all__ = [
    "RegionExport",
    "read_matrix",
    "read_matrix_json",
    "read_matrix_csv",
    "write_matrix_json",
    "write_matrix_csv",
    "write_array_json",
    "read_array_json",
    "read_region_json",
    "write_region_json",
    "read_region_csv",
    "write_region_csv",
    "write_region_svg",
]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_dump(obj) -> str:
    if isinstance(obj, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {_json_dump(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_dump(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _json_dump(obj.tolist())
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _split_parts(z: np.ndarray) -> tuple[list, list]:
    return np.real(z).tolist(), np.imag(z).tolist()


def write_matrix_json(path, a) -> None:
    """Square matrix as {"n": ..., "re": [[...]], "im": [[...]]}."""
    a = check_square_matrix(a)
    re, im = _split_parts(a)
    payload = {"n": a.shape[0], "re": re, "im": im}
    with open(path, "w") as fh:
        fh.write(_json_dump(payload))
        fh.write("\n")


def read_matrix_json(path) -> np.ndarray:
    with open(path) as fh:
        payload = json.load(fh)
    try:
        n = int(payload["n"])
        a = np.asarray(payload["re"], dtype=float) + 1j * np.asarray(payload["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise RankRangeError(f"malformed matrix file {path}: {exc}") from exc
    if a.shape != (n, n):
        raise RankRangeError(f"matrix file {path} declares n={n} but holds shape {a.shape}")
    return check_square_matrix(a)


def write_array_json(path, a) -> None:
    """Rectangular complex array as {"rows", "cols", "re", "im"}."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise RankRangeError("expected a 2-d array")
    re, im = _split_parts(a)
    payload = {"rows": a.shape[0], "cols": a.shape[1], "re": re, "im": im}
    with open(path, "w") as fh:
        fh.write(_json_dump(payload))
        fh.write("\n")


def read_array_json(path) -> np.ndarray:
    with open(path) as fh:
        payload = json.load(fh)
    a = np.asarray(payload["re"], dtype=float) + 1j * np.asarray(payload["im"], dtype=float)
    if a.shape != (int(payload["rows"]), int(payload["cols"])):
        raise RankRangeError(f"array file {path} shape does not match its header")
    return a


def _format_complex(z: complex) -> str:
    return f"{_fmt(z.real)}{'+' if z.imag >= 0 or np.isnan(z.imag) else '-'}{_fmt(abs(z.imag))}i"


def _parse_complex(cell: str) -> complex:
    text = cell.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(text)
    except ValueError as exc:
        raise RankRangeError(f"cannot parse complex cell {cell!r}") from exc


def write_matrix_csv(path, a) -> None:
    """Square matrix as rows of a+bi cells."""
    a = check_square_matrix(a)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in a:
            writer.writerow([_format_complex(complex(z)) for z in row])


def read_matrix_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = [[_parse_complex(cell) for cell in row] for row in csv.reader(fh) if row]
    if not rows:
        raise RankRangeError(f"matrix file {path} is empty")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise RankRangeError(f"matrix file {path} has ragged rows")
    return check_square_matrix(np.array(rows, dtype=np.complex128))


def read_matrix(path) -> np.ndarray:
    """Dispatch on the file suffix, accepting .json and .csv."""
    text = str(path)
    if text.endswith(".json"):
        return read_matrix_json(path)
    if text.endswith(".csv"):
        return read_matrix_csv(path)
    raise RankRangeError(f"unknown matrix file suffix on {path}; use .json or .csv")


@dataclass(frozen=True, eq=False)
class RegionExport:
    """Serialization-friendly picture of a computed region.

    ``certificate`` is a plain dict with a "type" key: "empty" carries the
    generating angles and offsets, "witness" carries mu, residual and the
    isometry entries, "approximate" a reason string and "none" nothing.
    """

    kind: str
    vertices: np.ndarray
    angles: np.ndarray
    offsets: np.ndarray
    certificate: dict

    @classmethod
    def from_result(cls, result: RankRangeResult) -> "RegionExport":
        cert = result.certificate
        if isinstance(cert, EmptyCertificate):
            payload = {
                "type": "empty",
                "angles": np.asarray(cert.angles, dtype=float),
                "offsets": np.asarray(cert.offsets, dtype=float),
            }
        elif isinstance(cert, NonEmptyWitness):
            payload = {
                "type": "witness",
                "mu": complex(cert.mu),
                "residual": float(cert.residual),
                "isometry": np.asarray(cert.isometry.matrix, dtype=np.complex128),
            }
        elif isinstance(cert, Approximate):
            payload = {"type": "approximate", "reason": cert.reason}
        else:
            payload = {"type": "none"}
        return cls(
            kind=result.region.kind.value,
            vertices=np.asarray(result.region.vertices, dtype=np.complex128),
            angles=np.asarray(result.angles, dtype=float),
            offsets=np.asarray(result.offsets, dtype=float),
            certificate=payload,
        )

    @classmethod
    def from_region(cls, region: ConvexRegion, angles=None, offsets=None) -> "RegionExport":
        return cls(
            kind=region.kind.value,
            vertices=np.asarray(region.vertices, dtype=np.complex128),
            angles=np.asarray(angles if angles is not None else [], dtype=float),
            offsets=np.asarray(offsets if offsets is not None else [], dtype=float),
            certificate={"type": "none"},
        )

    def to_region(self) -> ConvexRegion:
        return ConvexRegion(RegionKind(self.kind), self.vertices)

    def same_as(self, other: "RegionExport") -> bool:
        """Exact field equality (bit-identical floats)."""
        if self.kind != other.kind:
            return False
        for mine, theirs in ((self.vertices, other.vertices), (self.angles, other.angles), (self.offsets, other.offsets)):
            if not np.array_equal(mine, theirs):
                return False
        a, b = self.certificate, other.certificate
        if set(a) != set(b):
            return False
        for key in a:
            va, vb = a[key], b[key]
            if isinstance(va, np.ndarray) or isinstance(vb, np.ndarray):
                if not np.array_equal(np.asarray(va), np.asarray(vb)):
                    return False
            elif va != vb:
                return False
        return True


def _certificate_to_json(cert: dict) -> dict:
    kind = cert["type"]
    if kind == "empty":
        return {"type": "empty", "angles": cert["angles"], "offsets": cert["offsets"]}
    if kind == "witness":
        iso = np.asarray(cert["isometry"])
        re, im = _split_parts(iso)
        return {
            "type": "witness",
            "mu": [cert["mu"].real, cert["mu"].imag],
            "residual": cert["residual"],
            "isometry": {"rows": iso.shape[0], "cols": iso.shape[1], "re": re, "im": im},
        }
    if kind == "approximate":
        return {"type": "approximate", "reason": cert.get("reason", "")}
    return {"type": "none"}


def _certificate_from_json(payload: dict) -> dict:
    kind = payload["type"]
    if kind == "empty":
        return {
            "type": "empty",
            "angles": np.asarray(payload["angles"], dtype=float),
            "offsets": np.asarray(payload["offsets"], dtype=float),
        }
    if kind == "witness":
        iso = payload["isometry"]
        matrix = np.asarray(iso["re"], dtype=float) + 1j * np.asarray(iso["im"], dtype=float)
        return {
            "type": "witness",
            "mu": complex(payload["mu"][0], payload["mu"][1]),
            "residual": float(payload["residual"]),
            "isometry": matrix,
        }
    if kind == "approximate":
        return {"type": "approximate", "reason": payload.get("reason", "")}
    return {"type": "none"}


def write_region_json(path, export: RegionExport) -> None:
    vx, vy = _split_parts(export.vertices)
    payload = {
        "kind": export.kind,
        "vertices": [[x, y] for x, y in zip(vx, vy)],
        "angles": export.angles,
        "offsets": export.offsets,
        "certificate": _certificate_to_json(export.certificate),
    }
    with open(path, "w") as fh:
        fh.write(_json_dump(payload))
        fh.write("\n")


def read_region_json(path) -> RegionExport:
    with open(path) as fh:
        payload = json.load(fh)
    verts = np.asarray(payload["vertices"], dtype=float).reshape(-1, 2)
    return RegionExport(
        kind=str(payload["kind"]),
        vertices=verts[:, 0] + 1j * verts[:, 1],
        angles=np.asarray(payload["angles"], dtype=float),
        offsets=np.asarray(payload["offsets"], dtype=float),
        certificate=_certificate_from_json(payload["certificate"]),
    )


def write_region_csv(path, export: RegionExport) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", export.kind])
        for z in export.vertices:
            writer.writerow(["vertex", _fmt(z.real), _fmt(z.imag)])
        for t, h in zip(export.angles, export.offsets):
            writer.writerow(["plane", _fmt(t), _fmt(h)])
        cert = export.certificate
        writer.writerow(["certificate", cert["type"]])
        if cert["type"] == "empty":
            for t, h in zip(cert["angles"], cert["offsets"]):
                writer.writerow(["cert_plane", _fmt(t), _fmt(h)])
        elif cert["type"] == "witness":
            writer.writerow(["cert_mu", _fmt(cert["mu"].real), _fmt(cert["mu"].imag)])
            writer.writerow(["cert_residual", _fmt(cert["residual"])])
            iso = np.asarray(cert["isometry"])
            writer.writerow(["cert_isometry_shape", iso.shape[0], iso.shape[1]])
            for i in range(iso.shape[0]):
                for j in range(iso.shape[1]):
                    z = complex(iso[i, j])
                    writer.writerow(["cert_isometry", i, j, _fmt(z.real), _fmt(z.imag)])
        elif cert["type"] == "approximate":
            writer.writerow(["cert_reason", cert.get("reason", "")])


def read_region_csv(path) -> RegionExport:
    kind = None
    vertices: list[complex] = []
    angles: list[float] = []
    offsets: list[float] = []
    cert: dict = {"type": "none"}
    cert_planes: list[tuple[float, float]] = []
    iso_shape = None
    iso_entries: list[tuple[int, int, complex]] = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            tag = row[0]
            if tag == "kind":
                kind = row[1]
            elif tag == "vertex":
                vertices.append(complex(float(row[1]), float(row[2])))
            elif tag == "plane":
                angles.append(float(row[1]))
                offsets.append(float(row[2]))
            elif tag == "certificate":
                cert = {"type": row[1]}
            elif tag == "cert_plane":
                cert_planes.append((float(row[1]), float(row[2])))
            elif tag == "cert_mu":
                cert["mu"] = complex(float(row[1]), float(row[2]))
            elif tag == "cert_residual":
                cert["residual"] = float(row[1])
            elif tag == "cert_isometry_shape":
                iso_shape = (int(row[1]), int(row[2]))
            elif tag == "cert_isometry":
                iso_entries.append((int(row[1]), int(row[2]), complex(float(row[3]), float(row[4]))))
            elif tag == "cert_reason":
                cert["reason"] = row[1] if len(row) > 1 else ""
    if kind is None:
        raise RankRangeError(f"region file {path} is missing its kind row")
    if cert["type"] == "empty":
        cert["angles"] = np.array([t for t, _ in cert_planes], dtype=float)
        cert["offsets"] = np.array([h for _, h in cert_planes], dtype=float)
    elif cert["type"] == "witness":
        if iso_shape is None:
            raise RankRangeError(f"region file {path} has a witness without an isometry shape")
        matrix = np.zeros(iso_shape, dtype=np.complex128)
        for i, j, z in iso_entries:
            matrix[i, j] = z
        cert["isometry"] = matrix
    elif cert["type"] == "approximate":
        cert.setdefault("reason", "")
    return RegionExport(
        kind=kind,
        vertices=np.asarray(vertices, dtype=np.complex128),
        angles=np.asarray(angles, dtype=float),
        offsets=np.asarray(offsets, dtype=float),
        certificate=cert,
    )


VIEWPORT = 800.0
MARGIN_FRACTION = 0.1


def write_region_svg(path, export: RegionExport, spectral_radius: float | None = None) -> None:
    """Draw the region with coordinate axes into a standalone SVG.

    The picture contains exactly one element with id "region" (a text label
    for empty regions).  The unit circle is added for scale whenever the
    spectral radius is supplied and at most 5.
    """
    draw_circle = spectral_radius is not None and spectral_radius <= 5.0
    anchors = [complex(v) for v in export.vertices]
    if draw_circle:
        anchors.extend([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j])
    if not anchors:
        anchors = [1 + 1j, -1 - 1j]
    xs = np.array([z.real for z in anchors])
    ys = np.array([z.imag for z in anchors])
    cx, cy = (xs.min() + xs.max()) / 2.0, (ys.min() + ys.max()) / 2.0
    span = max(xs.max() - xs.min(), ys.max() - ys.min(), 1e-6)
    inner = VIEWPORT * (1.0 - 2.0 * MARGIN_FRACTION)
    scale = inner / span

    def to_px(z: complex) -> tuple[float, float]:
        return (VIEWPORT / 2.0 + (z.real - cx) * scale, VIEWPORT / 2.0 - (z.imag - cy) * scale)

    def coords(z: complex) -> str:
        px, py = to_px(z)
        return f"{px:.4f},{py:.4f}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEWPORT:.0f}" height="{VIEWPORT:.0f}" '
        f'viewBox="0 0 {VIEWPORT:.0f} {VIEWPORT:.0f}">',
        f'<rect width="{VIEWPORT:.0f}" height="{VIEWPORT:.0f}" fill="white"/>',
    ]
    ox, oy = to_px(0.0 + 0.0j)
    lines.append(
        f'<line class="axis" x1="0" y1="{oy:.4f}" x2="{VIEWPORT:.0f}" y2="{oy:.4f}" stroke="#999" stroke-width="1"/>'
    )
    lines.append(
        f'<line class="axis" x1="{ox:.4f}" y1="0" x2="{ox:.4f}" y2="{VIEWPORT:.0f}" stroke="#999" stroke-width="1"/>'
    )
    if draw_circle:
        lines.append(
            f'<circle class="unit-circle" cx="{ox:.4f}" cy="{oy:.4f}" r="{scale:.4f}" '
            'fill="none" stroke="#bbb" stroke-dasharray="4 4"/>'
        )
    kind = export.kind
    if kind == "polygon":
        pts = " ".join(coords(complex(v)) for v in export.vertices)
        lines.append(f'<polygon id="region" points="{pts}" fill="#7fb3d5" fill-opacity="0.5" stroke="#1a5276"/>')
    elif kind == "segment":
        (x1, y1), (x2, y2) = to_px(complex(export.vertices[0])), to_px(complex(export.vertices[1]))
        lines.append(
            f'<line id="region" x1="{x1:.4f}" y1="{y1:.4f}" x2="{x2:.4f}" y2="{y2:.4f}" '
            'stroke="#1a5276" stroke-width="3"/>'
        )
    elif kind == "point":
        px, py = to_px(complex(export.vertices[0]))
        lines.append(f'<circle id="region" cx="{px:.4f}" cy="{py:.4f}" r="4" fill="#1a5276"/>')
    else:
        lines.append(
            f'<text id="region" x="{VIEWPORT / 2:.0f}" y="{VIEWPORT / 2:.0f}" text-anchor="middle" '
            'font-family="sans-serif">empty region</text>'
        )
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
