"""Profile tables, Poincare-ball embedding, assembly of global surfaces and
file output (CSV, JSON, OBJ)."""
import csv
import io
import json
import math
import os
import tempfile
from dataclasses import asdict, dataclass, is_dataclass

import numpy as np

from . import rot_profile as rp
from . import trans_profile as tp

PROFILE_COLUMNS = ("rho", "lambda", "lambda_dot", "lambda_ddot", "k_tan", "k_n", "residual")
TRANSLATION_COLUMNS = ("rho", "mu", "mu_dot", "mu_ddot", "k_tan", "k_n")
UNBOUNDED_EXTENT = 3.0


# -- sampling ---------------------------------------------------------------

def regularized_grid(lo, hi, samples, left_singular, right_singular):
    """``samples`` points on [lo, hi], uniform in a parameter that behaves
    like the u^2 substitution variable at vertical-tangent ends."""
    if int(samples) != samples or samples < 2:
        raise ValueError(f"samples must be an integer >= 2, got {samples}")
    s = np.linspace(0.0, 1.0, int(samples))
    if left_singular and right_singular:
        phi = np.sin(0.5 * np.pi * s) ** 2
    elif right_singular:
        phi = 1.0 - (1.0 - s) ** 2
    elif left_singular:
        phi = s**2
    else:
        phi = s
    out = lo + (hi - lo) * phi
    out[0], out[-1] = lo, hi
    return out


def profile_rho_grid(params, samples, domain=None, extent=UNBOUNDED_EXTENT):
    dom = domain or rp.profile_domain(params)
    hi = dom.rho_plus if dom.bounded else dom.rho_minus + extent
    return regularized_grid(dom.rho_minus, hi, samples, dom.left_sign != 0, dom.right_sign != 0)


def _safe(fn, *args):
    try:
        return fn(*args)
    except rp.SingularPointError:
        return (math.nan, math.nan)


def profile_table(params, samples, domain=None):
    """Columns of PROFILE_COLUMNS on the regularized grid."""
    dom = domain or rp.profile_domain(params)
    rho = profile_rho_grid(params, samples, dom)
    lam = rp.lambda_eval(params, rho, dom)
    ld = np.asarray(rp.lambda_dot(params, rho, dom), dtype=float)
    ldd = np.empty_like(rho)
    curv = np.empty((rho.size, 2))
    for i, x in enumerate(rho):
        if params.r > 1 and dom.rho_zero is not None and x == dom.rho_zero:
            ldd[i] = math.inf
        else:
            ldd[i] = rp.lambda_ddot(params, x, dom)
        curv[i] = _safe(rp.principal_curvatures, params, x, dom)
    res = np.asarray(rp.first_integral_residual(params, rho, domain=dom), dtype=float)
    return {"rho": rho, "lambda": np.asarray(lam), "lambda_dot": ld, "lambda_ddot": ldd,
            "k_tan": curv[:, 0], "k_n": curv[:, 1], "residual": res}


def translation_table(params, samples):
    hi = tp.trans_domain(params)
    rho = regularized_grid(params.lower, hi, samples, False, True)
    curv = np.array([tp.principal_curvatures(params, x) if x > params.lower or params.r == 1
                     else (0.0, math.inf) for x in rho])
    return {"rho": rho, "mu": np.asarray(tp.mu_eval(params, rho)),
            "mu_dot": np.asarray(tp.mu_dot(params, rho)),
            "mu_ddot": np.asarray(tp.mu_ddot(params, rho)),
            "k_tan": curv[:, 0], "k_n": curv[:, 1]}


# -- assembly ---------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """The profile graph shifted by ``offset``; ``mirror`` reflects it
    (t -> offset - lambda) and traverses it from rho_+ back to rho_-."""
    offset: float
    mirror: bool


@dataclass(frozen=True)
class AssemblyPlan:
    pieces: tuple
    periodic: bool
    period: float = 0.0
    closed: bool = False

    @property
    def junctions(self):
        """Junction rows where two pieces meet.  In a periodic plan the last
        piece also meets the first piece of the next period, so k periods
        carry 2k junctions; otherwise it is len(pieces) - 1."""
        if self.periodic:
            return len(self.pieces)
        return max(len(self.pieces) - 1, 0)


def assembly_plan(params, periods=1, domain=None):
    """Pieces prescribed by the structure results for the profile's case."""
    dom = domain or rp.profile_domain(params)
    if not dom.bounded:
        # annuli and graphs: the graph and its reflection across t = 0
        if dom.rho_minus > 0:
            return AssemblyPlan((Piece(0.0, True), Piece(0.0, False)), False)
        return AssemblyPlan((Piece(0.0, False),), False)
    lam_p = rp.lambda_plus(params, dom)
    if dom.rho_minus == 0 and dom.left_sign == 0 and params.d >= 0:
        # sphere / peaked sphere: reflect across t = lambda(rho_+)
        return AssemblyPlan((Piece(0.0, False), Piece(2.0 * lam_p, True)), False, closed=True)
    if int(periods) != periods or periods < 1:
        raise ValueError("periods must be a positive integer")
    pieces = []
    for k in range(int(periods)):
        base = 2.0 * lam_p * k
        pieces += [Piece(base, False), Piece(base + 2.0 * lam_p, True)]
    return AssemblyPlan(tuple(pieces), True, period=2.0 * lam_p)


def assemble_curve(plan, rho, lam):
    """Concatenate the pieces into one polyline in (rho, t), dropping the
    repeated junction point of consecutive pieces."""
    out_r, out_t, src = [], [], []
    idx = np.arange(rho.size)
    for j, piece in enumerate(plan.pieces):
        if piece.mirror:
            r_seq, t_seq, i_seq = rho[::-1], piece.offset - lam[::-1], idx[::-1]
        else:
            r_seq, t_seq, i_seq = rho, piece.offset + lam, idx
        if j > 0:
            r_seq, t_seq, i_seq = r_seq[1:], t_seq[1:], i_seq[1:]
        out_r.append(r_seq)
        out_t.append(t_seq)
        src.append(i_seq)
    return np.concatenate(out_r), np.concatenate(out_t), np.concatenate(src)


# -- mesh -------------------------------------------------------------------

@dataclass
class Mesh:
    vertices: np.ndarray        # (V, 3): ball-x, ball-y, t
    faces: list                 # lists of 0-based vertex indices
    singular: list              # 0-based indices of singular vertices

    def euler_characteristic(self):
        edges = set()
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                edges.add((min(a, b), max(a, b)))
        return len(self.vertices) - len(edges) + len(self.faces)

    def boundary_edges(self):
        count = {}
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                key = (min(a, b), max(a, b))
                count[key] = count.get(key, 0) + 1
        return [e for e, c in count.items() if c == 1]


def revolve(rho, t, azimuthal, singular_rows=()):
    """Surface of revolution of the polyline (rho_i, t_i) in the ball model.

    Rows with rho = 0 collapse to a single pole vertex.
    """
    if int(azimuthal) != azimuthal or azimuthal < 3:
        raise ValueError(f"azimuthal must be an integer >= 3, got {azimuthal}")
    if len(rho) < 2:
        raise ValueError("need at least two profile points")
    phi = 2.0 * np.pi * np.arange(azimuthal) / azimuthal
    verts, rows = [], []
    singular = []
    for i, (r_i, t_i) in enumerate(zip(rho, t)):
        start = len(verts)
        if r_i == 0.0:
            verts.append((0.0, 0.0, t_i))
            rows.append([start] * azimuthal)
        else:
            rad = math.tanh(0.5 * r_i)
            verts.extend((rad * math.cos(p), rad * math.sin(p), t_i) for p in phi)
            rows.append(list(range(start, start + azimuthal)))
        if i in singular_rows:
            singular.extend(sorted(set(rows[-1])))
    faces = []
    for lo_row, hi_row in zip(rows, rows[1:]):
        for j in range(azimuthal):
            k = (j + 1) % azimuthal
            quad = [lo_row[j], lo_row[k], hi_row[k], hi_row[j]]
            # drop collapsed corners at poles, keeping order
            face = []
            for v in quad:
                if not face or face[-1] != v:
                    face.append(v)
            if len(face) > 1 and face[0] == face[-1]:
                face.pop()
            if len(face) >= 3:
                faces.append(face)
    return Mesh(np.asarray(verts, dtype=float), faces, sorted(set(singular)))


def embed_profile(params, samples, azimuthal, periods=1):
    """Mesh of the assembled hypersurface for n = 2."""
    if params.n != 2:
        raise ValueError("surface export needs n = 2; use the profile curve for n > 2")
    dom = rp.profile_domain(params)
    rho = profile_rho_grid(params, samples, dom)
    if dom.rho_zero is not None and params.r > 1:
        rho = np.unique(np.append(rho, dom.rho_zero))
    lam = np.asarray(rp.lambda_eval(params, rho, dom))
    plan = assembly_plan(params, periods, dom)
    r_all, t_all, src = assemble_curve(plan, rho, lam)
    sing_src = set()
    if dom.left_flag in ("cusp", "cone"):
        sing_src.add(0)
    if dom.rho_zero is not None and params.r > 1:
        sing_src.add(int(np.searchsorted(rho, dom.rho_zero)))
    rows = {i for i, s in enumerate(src) if s in sing_src}
    mesh = revolve(r_all, t_all, azimuthal, rows)
    return mesh, plan


# -- io ---------------------------------------------------------------------

def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temp file and an atomic rename."""
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _jsonable(obj):
    if is_dataclass(obj):
        return _jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def to_json(obj):
    """JSON text; non-finite floats become null."""
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False)


def table_to_csv(table, columns):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in zip(*(table[c] for c in columns)):
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def csv_to_table(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    return {name: np.array([float(r[i]) for r in body]) for i, name in enumerate(header)}


def mesh_to_obj(mesh):
    lines = [f"v {x!r} {y!r} {z!r}" for x, y, z in mesh.vertices.tolist()]
    lines += ["f " + " ".join(str(i + 1) for i in f) for f in mesh.faces]
    return "\n".join(lines) + "\n"


def write_mesh(mesh, path):
    """OBJ file plus ``<path>.singular.json`` with 1-based singular vertex
    indices."""
    atomic_write(path, mesh_to_obj(mesh))
    side = {"index_base": 1, "singular_vertices": [i + 1 for i in mesh.singular]}
    atomic_write(str(path) + ".singular.json", json.dumps(side))
