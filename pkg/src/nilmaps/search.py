"""Enumerate or sample maps of a fixed shape and survey their nilpotent members.

A candidate is one coefficient choice per support slot.  Candidates are
numbered in mixed radix (last slot fastest), so an exhaustive run is a set of
disjoint index ranges that can be processed in any order and merged.

Nilpotency is decided exactly in two stages.  The characteristic
coefficients of JH are evaluated with numpy at a fixed list of points over a
prime field; a nonzero value anywhere proves the coefficient is a nonzero
polynomial, so those candidates are rejected.  The few survivors are decided
symbolically with ``is_nilpotent``.  Over Q the evaluation runs modulo a
large prime that does not divide any coefficient denominator, which keeps
the rejection sound.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import prod

import numpy as np

from .errors import CapExceeded, NilmapsError, ShapeMismatch
from .jacobian import is_nilpotent, jacobian_of
from .maps import OUTER_NAMES, SHAPES, PolyMap3, format_map, linear_dependence
from .normalform import classify, regenerate
from .poly import VARS, MultiPoly, PrimeField, parse_field, parse_poly

__all__ = [
    "SearchSpace", "SurveyReport", "Sampled", "run_survey", "random_map",
    "space_size", "candidate_map", "PRESETS", "preset", "DEFAULT_CAP",
]

DEFAULT_CAP = 10**8

# modulus used to filter spaces over Q
_Q_FILTER_PRIME = 1_000_003
_FIRST_POINTS = 16
_MAX_POINTS = 1024
_BATCH = 8192

COMPONENTS = ("u", "v", "h")


@dataclass(frozen=True)
class Sampled:
    n: int
    seed: int


def _parse_monomials(text, field, names):
    """'z^2, z, y' -> tuple of exponent triples, in the order given."""
    out = []
    for chunk in (text.split(",") if text.strip() else []):
        p = parse_poly(chunk, field, names)
        if len(p) != 1 or p.leading_term()[1] != field.one:
            raise ValueError(f"support entry {chunk.strip()!r} is not a monic monomial")
        mono = p.leading_monomial()
        if mono == (0, 0, 0):
            raise ValueError("constant monomials are excluded (maps fix the origin)")
        if mono in out:
            raise ValueError(f"repeated support monomial {chunk.strip()!r}")
        out.append(mono)
    return tuple(out)


@dataclass(frozen=True)
class SearchSpace:
    """A finite family of maps of one shape.

    ``supports`` lists the monomials of u, v, h (for shape B the monomials of
    the outer v(x, y, t)); ``required`` marks monomials whose coefficient must
    be nonzero.  ``coefficients`` is None for all of GF(p), else a tuple of
    field elements.
    """

    shape: str
    field: object
    supports: tuple
    required: tuple = ((), (), ())
    coefficients: tuple | None = None
    mode: object = "exhaustive"
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ShapeMismatch(f"unknown shape {self.shape!r}")
        if len(self.supports) != 3 or len(self.required) != 3:
            raise ValueError("supports and required need one entry per component")
        for comp, sup, req in zip(COMPONENTS, self.supports, self.required):
            if (0, 0, 0) in sup:
                raise ValueError(f"{comp}: constant monomials are excluded")
            if not set(req) <= set(sup):
                raise ValueError(f"{comp}: required monomials must belong to the support")
        u_sup, _, h_sup = self.supports
        if self.shape in ("A", "B", "C") and any(m[2] for m in h_sup):
            raise ShapeMismatch(f"shape {self.shape}: h support must be free of z")
        if self.shape == "A" and any(m[2] for m in u_sup):
            raise ShapeMismatch("shape A: u support must be free of z")
        if self.coefficients is None:
            if not isinstance(self.field, PrimeField):
                raise ValueError("spaces over Q need an explicit coefficient set")
        elif len(set(self.coefficients)) != len(self.coefficients):
            raise ValueError("coefficient set has repeated values")
        if self.mode != "exhaustive" and not isinstance(self.mode, Sampled):
            raise ValueError(f"mode must be 'exhaustive' or Sampled(n, seed), got {self.mode!r}")
        if self.mode == "exhaustive" and space_size(self) > self.cap:
            raise CapExceeded(space_size(self), self.cap)

    @classmethod
    def build(cls, shape, field, u="", v="", h="", required=None, coefficients=None,
              mode="exhaustive", cap=DEFAULT_CAP):
        """Construct from support strings such as ``u="z^2, z, y"``.

        ``required`` maps a component name to a string of monomials.
        """
        if isinstance(field, str):
            field = parse_field(field)
        names = [VARS, OUTER_NAMES if shape == "B" else VARS, VARS]
        supports = tuple(_parse_monomials(s, field, n) for s, n in zip((u, v, h), names))
        required = required or {}
        req = tuple(_parse_monomials(required.get(c, ""), field, n) for c, n in zip(COMPONENTS, names))
        if coefficients is not None:
            coefficients = tuple(field.convert(c) for c in coefficients)
        return cls(shape, field, supports, req, coefficients, mode, cap)

    def slots(self):
        """(component index, monomial, nonzero required) for every coefficient slot."""
        return [(i, m, m in self.required[i])
                for i, sup in enumerate(self.supports) for m in sup]

    def values(self):
        return tuple(self.field.elements()) if self.coefficients is None else self.coefficients

    def choices(self):
        """Per-slot tuples of admissible coefficients."""
        vals = self.values()
        nonzero = tuple(c for c in vals if c)
        return [nonzero if req else vals for _, _, req in self.slots()]

    def describe(self):
        names = [VARS, OUTER_NAMES if self.shape == "B" else VARS, VARS]
        out = {}
        for comp, sup, req, n in zip(COMPONENTS, self.supports, self.required, names):
            out[f"support_{comp}"] = ",".join(_fmt_mono(m, n, m in req) for m in sup)
        return out


def _fmt_mono(mono, names, required=False):
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
    s = "*".join(parts)
    return s + "!" if required else s


def space_size(space):
    return prod(len(c) for c in space.choices())


# ---------------------------------------------------------------------------
# candidates


def _decode(space, indices):
    """Mixed-radix digits for an array of candidate indices (last slot fastest)."""
    radices = [len(c) for c in space.choices()]
    idx = np.asarray(indices, dtype=np.int64).copy()
    digits = np.empty((idx.size, len(radices)), dtype=np.int64)
    for j in range(len(radices) - 1, -1, -1):
        digits[:, j] = idx % radices[j]
        idx //= radices[j]
    return digits


def _map_from_digits(space, row):
    f = space.field
    terms = [{}, {}, {}]
    for (comp, mono, _), ch, d in zip(space.slots(), space.choices(), row):
        c = ch[int(d)]
        if c:
            terms[comp][mono] = c
    u, v, h = (MultiPoly._raw(t, f) for t in terms)
    return PolyMap3(u, v, h, space.shape)


def candidate_map(space, index):
    """The map with the given mixed-radix index."""
    if not 0 <= index < space_size(space):
        raise IndexError(f"candidate index {index} out of range")
    return _map_from_digits(space, _decode(space, [index])[0])


def _sample_digits(space, n, seed):
    radices = np.array([len(c) for c in space.choices()], dtype=np.int64)
    rng = np.random.default_rng(seed)
    if radices.size == 0:
        return np.zeros((n, 0), dtype=np.int64)
    return rng.integers(0, radices, size=(n, radices.size))


def random_map(space, seed):
    """A uniformly drawn candidate; the first draw of a sampled survey with this seed."""
    return _map_from_digits(space, _sample_digits(space, 1, seed)[0])


# ---------------------------------------------------------------------------
# point evaluation over a prime field


class _Evaluator:
    """Vectorized values of JH at fixed points, modulo a prime q."""

    def __init__(self, space):
        f = space.field
        if isinstance(f, PrimeField):
            q = f.p
            if q >= 2**31:
                raise ValueError("point filter supports primes below 2^31")
        else:
            q = _Q_FILTER_PRIME
        self.q = q
        # coefficient tables reduced mod q, one per slot
        self.tables = []
        for ch in space.choices():
            vals = []
            for c in ch:
                if isinstance(f, PrimeField):
                    vals.append(int(c))
                else:
                    num, den = int(c.numerator), int(c.denominator)
                    if den % q == 0:
                        raise ValueError(f"coefficient {c} is not defined modulo {q}")
                    vals.append(num * pow(den, -1, q) % q)
            self.tables.append(np.array(vals, dtype=np.int64))
        self.shape = space.shape
        self.slots = space.slots()
        self.points = self._points(q)

    @staticmethod
    def _points(q):
        rng = np.random.default_rng(0)
        if q**3 <= _MAX_POINTS:
            grid = np.stack(np.meshgrid(*[np.arange(q)] * 3, indexing="ij"), -1).reshape(-1, 3)
            return grid[rng.permutation(len(grid))]
        return rng.integers(0, q, size=(_MAX_POINTS, 3))

    def _mono_tables(self, pts, comp):
        """Values of the monomials of one component and their partials at pts."""
        q = self.q
        monos = [m for c, m, _ in self.slots if c == comp]
        val = np.ones((len(monos), len(pts)), dtype=np.int64)
        der = np.zeros((3, len(monos), len(pts)), dtype=np.int64)
        for k, mono in enumerate(monos):
            for var in range(3):
                val[k] = val[k] * _powmod(pts[:, var], mono[var], q) % q
            for d in range(3):
                if mono[d] == 0:
                    continue
                acc = np.full(len(pts), mono[d] % q, dtype=np.int64)
                for var in range(3):
                    e = mono[var] - (var == d)
                    acc = acc * _powmod(pts[:, var], e, q) % q
                der[d, k] = acc
        return monos, val, der

    def char_values(self, coeffs, pts):
        """(c1, c2, c3) of JH at pts for a batch; coeffs is (batch, slots) mod q."""
        q = self.q
        comp_of = np.array([c for c, _, _ in self.slots], dtype=np.int64)
        J = [[None] * 3 for _ in range(3)]
        for comp in range(3):
            cols = np.nonzero(comp_of == comp)[0]
            C = coeffs[:, cols]
            monos, val, der = self._mono_tables(pts, comp)
            if comp == 1 and self.shape == "B":
                J[1] = self._outer_row(C, monos, pts, J[0], coeffs)
                continue
            for d in range(3):
                J[comp][d] = (C @ der[d]) % q
        return _char(J, q)

    def _outer_row(self, C, monos, pts, urow, coeffs):
        """Row of v(x, y, u) by the chain rule, with the outer slot evaluated at u."""
        q = self.q
        cols = np.array([i for i, (c, _, _) in enumerate(self.slots) if c == 0], dtype=np.int64)
        _, uval, _ = self._mono_tables(pts, 0)
        U = (coeffs[:, cols] @ uval) % q
        batch, npts = U.shape
        pow_cache = {0: np.ones_like(U)}

        def upow(e):
            if e not in pow_cache:
                pow_cache[e] = upow(e - 1) * U % q
            return pow_cache[e]

        vx = np.zeros((batch, npts), dtype=np.int64)
        vy = np.zeros_like(vx)
        vw = np.zeros_like(vx)
        for k, (a, b, c) in enumerate(monos):
            ck = C[:, k:k + 1]
            xa, yb = _powmod(pts[:, 0], a, q), _powmod(pts[:, 1], b, q)
            if a:
                vx = (vx + ck * (a * _powmod(pts[:, 0], a - 1, q) * yb % q) % q * upow(c)) % q
            if b:
                vy = (vy + ck * (b * _powmod(pts[:, 1], b - 1, q) * xa % q) % q * upow(c)) % q
            if c:
                vw = (vw + ck * (c * xa * yb % q) % q * upow(c - 1)) % q
        ux, uy, uz = urow
        return [(vx + vw * ux) % q, (vy + vw * uy) % q, vw * uz % q]


def _powmod(arr, e, q):
    out = np.ones_like(arr)
    for _ in range(e):
        out = out * arr % q
    return out


def _char(J, q):
    (a, b, c), (d, e, f), (g, h, i) = J
    c1 = (a + e + i) % q
    c2 = (a * e % q - b * d % q + a * i % q - c * g % q + e * i % q - f * h % q) % q
    c3 = (a * ((e * i - f * h) % q) % q
          - b * ((d * i - f * g) % q) % q
          + c * ((d * h - e * g) % q) % q) % q
    return c1, c2, c3


def _vanishing(ev, coeffs, pts):
    c1, c2, c3 = ev.char_values(coeffs, pts)
    return ~((c1 != 0) | (c2 != 0) | (c3 != 0)).any(axis=1)


def _survivors(ev, digits):
    """Row positions whose characteristic coefficients vanish at every point."""
    if digits.shape[1] == 0:
        return np.arange(digits.shape[0])
    coeffs = np.stack([ev.tables[j][digits[:, j]] for j in range(digits.shape[1])], axis=1)
    keep = np.nonzero(_vanishing(ev, coeffs, ev.points[:_FIRST_POINTS]))[0]
    if keep.size and len(ev.points) > _FIRST_POINTS:
        rest = _vanishing(ev, coeffs[keep], ev.points[_FIRST_POINTS:])
        keep = keep[rest]
    return keep


# ---------------------------------------------------------------------------
# reports


_COUNT_KEYS = ("examined", "nilpotent", "nilpotent_dependent",
               "nilpotent_independent_matched", "nilpotent_independent_unmatched")


@dataclass
class SurveyReport:
    """Counts plus the unmatched specimens as map files (in candidate order)."""

    counts: dict = dc_field(default_factory=lambda: dict.fromkeys(_COUNT_KEYS, 0))
    specimens: list = dc_field(default_factory=list)

    def merge(self, other):
        for k in _COUNT_KEYS:
            self.counts[k] += other.counts[k]
        self.specimens.extend(other.specimens)
        return self

    def partition_holds(self):
        c = self.counts
        return c["nilpotent"] == (c["nilpotent_dependent"] + c["nilpotent_independent_matched"]
                                  + c["nilpotent_independent_unmatched"])

    def __getattr__(self, name):
        if name in _COUNT_KEYS:
            return self.counts[name]
        raise AttributeError(name)

    def records(self):
        return [(k, self.counts[k]) for k in _COUNT_KEYS]

    def write_specimens(self, directory):
        """Write each unmatched specimen to ``directory/specimen_NNNN.map``; returns paths."""
        from pathlib import Path

        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        paths = []
        for k, (_, text) in enumerate(self.specimens, 1):
            path = d / f"specimen_{k:04d}.map"
            path.write_text(text)
            paths.append(path)
        return paths


def _judge(H):
    """Which partition bucket a nilpotent map falls in."""
    if linear_dependence(H) is not None:
        return "nilpotent_dependent"
    try:
        res = classify(H)
        if res.variant.startswith("NormalForm") and regenerate(res).same_map(H):
            return "nilpotent_independent_matched"
    except NilmapsError:
        pass
    return "nilpotent_independent_unmatched"


def _survey_digits(space, ev, digits, offsets):
    rep = SurveyReport()
    rep.counts["examined"] = len(digits)
    for pos in _survivors(ev, digits):
        H = _map_from_digits(space, digits[pos])
        if not is_nilpotent(jacobian_of(H)):
            continue
        rep.counts["nilpotent"] += 1
        bucket = _judge(H)
        rep.counts[bucket] += 1
        if bucket == "nilpotent_independent_unmatched":
            rep.specimens.append((int(offsets[pos]), format_map(H)))
    return rep


_EVALUATORS = {}


def _evaluator(space):
    ev = _EVALUATORS.get(space)
    if ev is None:
        ev = _EVALUATORS[space] = _Evaluator(space)
    return ev


def _range_job(args):
    space, start, stop = args
    idx = np.arange(start, stop, dtype=np.int64)
    return _survey_digits(space, _evaluator(space), _decode(space, idx), idx)


def _sample_job(args):
    space, start, stop = args
    digits = _sample_digits(space, space.mode.n, space.mode.seed)[start:stop]
    return _survey_digits(space, _evaluator(space), digits, np.arange(start, stop))


def run_survey(space, workers=1, batch=_BATCH):
    """Survey every candidate (or the sampled ones) of ``space``.

    The result does not depend on ``workers``: jobs are fixed index ranges
    merged in order.
    """
    if space.mode == "exhaustive":
        total = space_size(space)
        if total > space.cap:
            raise CapExceeded(total, space.cap)
        job = _range_job
    else:
        total = space.mode.n
        job = _sample_job
    ranges = [(space, s, min(s + batch, total)) for s in range(0, total, batch)]
    report = SurveyReport()
    if workers <= 1 or len(ranges) <= 1:
        parts = map(job, ranges)
        for part in parts:
            report.merge(part)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(job, ranges, chunksize=max(1, len(ranges) // (8 * workers))):
                report.merge(part)
    assert report.partition_holds(), "survey counts do not partition the nilpotent maps"
    return report


# ---------------------------------------------------------------------------
# documented spaces


def _shape_b_quadratic():
    # outer v quadratic in the slot (coefficient of t^2 nonzero); 6 * 7^7 candidates
    return SearchSpace.build(
        "B", "GF(7)", u="z, y", v="t^2, t, x, y", h="x, y",
        required={"v": "t^2"},
    )


def _shape_c_linear_v():
    # deg_z v = 1 and deg_z u = 2 enforced by the required monomials; 6^2 * 7^5 candidates
    return SearchSpace.build(
        "C", "GF(7)", u="z^2, z, y", v="z, x", h="x, y",
        required={"u": "z^2", "v": "z"},
    )


def _shape_c_linear_v_wide():
    # as above with a y term in v; 6^2 * 7^6 candidates
    return SearchSpace.build(
        "C", "GF(7)", u="z^2, z, y", v="z, x, y", h="x, y",
        required={"u": "z^2", "v": "z"},
    )


PRESETS = {
    "b-quadratic-outer": _shape_b_quadratic,
    "c-linear-v": _shape_c_linear_v,
    "c-linear-v-wide": _shape_c_linear_v_wide,
}


def preset(name, mode="exhaustive"):
    """One of the documented GF(7) survey spaces, optionally in sampled mode."""
    try:
        space = PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    if mode != "exhaustive":
        from dataclasses import replace
        space = replace(space, mode=mode)
    return space

