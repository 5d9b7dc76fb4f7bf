"""Density censuses: how many coefficient boxes are everywhere locally
soluble versus globally soluble within conditional bounds.

Local counts run certify() over every coefficient pair/triple, deduplicated
by the symmetry class of the equation (coordinate sign flips for odd degree,
argument swaps, global negation for the homogeneous shape) on top of the
per-prime residue-class verdict cache.  Global counts search within the
conditional height bounds and are therefore flagged: a pair not found within
bound B is only "no solution found", never a proof.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from multiprocessing import Pool
from typing import Iterable, Sequence, Union

from . import arith
from ._version import __version__
from .families import FamilyPair, FamilyTriple
from .globalsearch import (
    _ceil_root_scaled,
    coefficient_lattice,
    height_bound,
    lattice_points_in_box,
    pairs_on_line,
)
from .localsolve import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    FermatEquation,
    SolubilityCertificate,
    ThueEquation,
    certificate_to_jsonable,
    certify,
)

K3_DEFAULT_CAP = 500


@dataclass(frozen=True)
class CensusRow:
    H: int
    k: int
    loc_count: int
    glob_count: int
    glob_bound_B: int
    ratio: float
    conditional: bool

    def __post_init__(self) -> None:
        if self.glob_count > self.loc_count:
            raise ValueError("global count cannot exceed local count")


@dataclass(frozen=True)
class DyadicBox:
    """Ranges X < x <= 2X, Y < y <= 2Y, Z < b*y^k <= 2Z."""

    X: int
    Y: int
    Z: int
    k: int

    def __post_init__(self) -> None:
        if min(self.X, self.Y, self.Z) < 1:
            raise ValueError("box parameters must be positive")


def _signed_range(H: int) -> list[int]:
    return [t for t in range(-H, H + 1) if t]


def _thue_class_key(a: int, b: int, k: int) -> tuple[int, int]:
    if k % 2:
        return tuple(sorted((abs(a), abs(b))))
    return tuple(sorted((a, b)))


def _fermat_class_key(a: int, b: int, c: int, k: int) -> tuple[int, int, int]:
    if k % 2:
        return tuple(sorted((abs(a), abs(b), abs(c))))
    t = tuple(sorted((a, b, c)))
    return min(t, tuple(sorted((-a, -b, -c))))


def _classify_chunk(args) -> list[bool]:
    kind, k, keys, budget = args
    out = []
    for key in keys:
        eq = ThueEquation(*key, k) if kind == "T" else FermatEquation(*key, k)
        out.append(certify(eq, budget=budget).everywhere_soluble)
    return out


def _class_verdicts(kind: str, k: int, keys: list[tuple], budget: int, jobs: int) -> dict:
    if jobs <= 1 or len(keys) < 64:
        flags = _classify_chunk((kind, k, keys, budget))
        return dict(zip(keys, flags))
    chunks = [keys[i::jobs] for i in range(jobs)]
    with Pool(jobs) as pool:
        results = pool.map(_classify_chunk, [(kind, k, c, budget) for c in chunks])
    verdicts = {}
    for chunk, flags in zip(chunks, results):
        verdicts.update(zip(chunk, flags))
    return verdicts


def _first_index_at_least(values: Sequence[int], needle: int) -> int | None:
    for i, v in enumerate(values):
        if v >= needle:
            return i
    return None


def thue_census(
    k: int,
    H_list: Sequence[int],
    slack: Union[int, float, Fraction] = 4,
    coprime_only: bool = False,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    allow_large: bool = False,
) -> list[CensusRow]:
    """Per ascending H: count pairs 0 < |a|, |b| <= H whose equation
    a*x^k + b*y^k = 1 is everywhere locally soluble, and those with a
    solution found within the conditional bound B(H)."""
    H_list = list(H_list)
    if not H_list or any(h < 1 for h in H_list) or H_list != sorted(H_list):
        raise ValueError("H_list must be ascending positive integers")
    if k == 3 and max(H_list) > K3_DEFAULT_CAP and not allow_large:
        raise ValueError(
            f"k=3 global search is quadratic in H; H > {K3_DEFAULT_CAP} needs allow_large=True"
        )
    h_max = H_list[-1]
    coords = _signed_range(h_max)

    keys = sorted({_thue_class_key(a, b, k) for a in coords for b in coords})
    try:
        verdicts = _class_verdicts("T", k, keys, budget, jobs)
    except BudgetExceededError as exc:
        raise BudgetExceededError(exc.prime, exc.modulus, exc.budget) from exc

    loc_add = [0] * (h_max + 1)
    for a in coords:
        for b in coords:
            if coprime_only and gcd(abs(a), abs(b)) != 1:
                continue
            if verdicts[_thue_class_key(a, b, k)]:
                loc_add[max(abs(a), abs(b))] += 1

    bounds = [height_bound(k, h, slack).B for h in H_list]
    b_max = bounds[-1]
    glob_first: dict[tuple[int, int], int] = {}
    for x in range(-b_max, b_max + 1):
        for y in range(-b_max, b_max + 1):
            if x == 0 and y == 0:
                continue
            ix = _first_index_at_least(bounds, max(abs(x), abs(y)))
            if ix is None:
                continue
            for a, b in pairs_on_line(x, y, k, h_max):
                if coprime_only and gcd(abs(a), abs(b)) != 1:
                    continue
                ih = _first_index_at_least(H_list, max(abs(a), abs(b)))
                if ih is None:
                    continue
                idx = max(ix, ih)
                prev = glob_first.get((a, b))
                if prev is None or idx < prev:
                    glob_first[(a, b)] = idx

    glob_counts = [0] * len(H_list)
    for idx in glob_first.values():
        glob_counts[idx] += 1
    rows = []
    running_glob = 0
    loc_running = 0
    h_cursor = 0
    for i, h in enumerate(H_list):
        while h_cursor < h:
            h_cursor += 1
            loc_running += loc_add[h_cursor]
        running_glob += glob_counts[i]
        ratio = running_glob / loc_running if loc_running else 0.0
        rows.append(CensusRow(h, k, loc_running, running_glob, bounds[i], ratio, True))
    return rows


def fermat_glob_bound(k: int, H: int, slack: Union[int, float, Fraction]) -> int:
    """Conditional coordinate bound ceil(slack * H^(2/(k-3))) for k >= 4;
    the exponent is undefined at k = 3, where ceil(slack * H) stands in."""
    fr = Fraction(str(slack)) if isinstance(slack, float) else Fraction(slack)
    if fr < 1:
        raise ValueError("slack must be at least 1")
    if k <= 3:
        num = fr.numerator * H
        return -(-num // fr.denominator)
    return max(1, _ceil_root_scaled(fr.numerator, fr.denominator, H * H, k - 3))


def fermat_census(
    k: int,
    H_list: Sequence[int],
    slack: Union[int, float, Fraction] = 4,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> list[CensusRow]:
    """Per ascending H: count triples 0 < |a|, |b|, |c| <= H whose equation
    a*x^k + b*y^k + c*z^k = 0 is everywhere nontrivially locally soluble,
    and those with a nonzero solution found within the conditional bound."""
    H_list = list(H_list)
    if not H_list or any(h < 1 for h in H_list) or H_list != sorted(H_list):
        raise ValueError("H_list must be ascending positive integers")
    h_max = H_list[-1]
    coords = _signed_range(h_max)

    keys = sorted(
        {
            _fermat_class_key(a, b, c, k)
            for a in coords
            for b in coords
            for c in coords
        }
    )
    verdicts = _class_verdicts("F", k, keys, budget, jobs)

    loc_add = [0] * (h_max + 1)
    for a in coords:
        for b in coords:
            for c in coords:
                if verdicts[_fermat_class_key(a, b, c, k)]:
                    loc_add[max(abs(a), abs(b), abs(c))] += 1

    bounds = [fermat_glob_bound(k, h, slack) for h in H_list]
    b_max = bounds[-1]
    glob_first: dict[tuple[int, int, int], int] = {}
    seen_power_vectors = set()
    for x in range(-b_max, b_max + 1):
        for y in range(-b_max, b_max + 1):
            for z in range(-b_max, b_max + 1):
                if (x, y, z) == (0, 0, 0):
                    continue
                if gcd(gcd(abs(x), abs(y)), abs(z)) != 1:
                    continue
                head = next(t for t in (x, y, z) if t)
                if head < 0:
                    continue  # one representative per +- pair
                ix = _first_index_at_least(bounds, max(abs(x), abs(y), abs(z)))
                if ix is None:
                    continue
                key = (x, y, z)
                if key in seen_power_vectors:
                    continue
                seen_power_vectors.add(key)
                lat = coefficient_lattice(x, y, z, k)
                for a, b, c in lattice_points_in_box(lat, h_max):
                    if a == 0 or b == 0 or c == 0:
                        continue
                    ih = _first_index_at_least(H_list, max(abs(a), abs(b), abs(c)))
                    if ih is None:
                        continue
                    idx = max(ix, ih)
                    prev = glob_first.get((a, b, c))
                    if prev is None or idx < prev:
                        glob_first[(a, b, c)] = idx

    glob_counts = [0] * len(H_list)
    for idx in glob_first.values():
        glob_counts[idx] += 1
    rows = []
    running_glob = 0
    loc_running = 0
    h_cursor = 0
    for i, h in enumerate(H_list):
        while h_cursor < h:
            h_cursor += 1
            loc_running += loc_add[h_cursor]
        running_glob += glob_counts[i]
        ratio = running_glob / loc_running if loc_running else 0.0
        rows.append(CensusRow(h, k, loc_running, running_glob, bounds[i], ratio, True))
    return rows


def quadruple_count(box: DyadicBox) -> int:
    """Exact number of (a, b, x, y) in N^4 with a*x^k - b*y^k = 1 inside the
    dyadic box, counted through the linear congruence b*y^k = -1 (mod x^k)."""
    X, Y, Z, k = box.X, box.Y, box.Z, box.k
    count = 0
    for x in range(X + 1, 2 * X + 1):
        xk = x**k
        for y in range(Y + 1, 2 * Y + 1):
            yk = y**k
            blo = Z // yk + 1
            bhi = (2 * Z) // yk
            blo = max(blo, -(-(xk - 1) // yk))  # a >= 1 needs b*y^k >= x^k - 1
            if blo > bhi:
                continue
            if xk == 1:
                count += bhi - blo + 1
                continue
            if gcd(yk, xk) != 1:
                continue
            b0 = -pow(yk, -1, xk) % xk
            count += (bhi - b0) // xk - (blo - 1 - b0) // xk
    return count


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

Exportable = Union[
    Sequence[CensusRow],
    Sequence[FamilyPair],
    Sequence[FamilyTriple],
    SolubilityCertificate,
    Sequence[SolubilityCertificate],
]


def _census_csv_lines(rows: Iterable[CensusRow]) -> list[str]:
    lines = ["H,k,loc,glob,bound_B,ratio,conditional"]
    for r in rows:
        lines.append(
            f"{r.H},{r.k},{r.loc_count},{r.glob_count},{r.glob_bound_B},"
            f"{r.ratio:.6f},{str(r.conditional).lower()}"
        )
    return lines


def _pairs_csv_lines(pairs: Iterable[FamilyPair]) -> list[str]:
    lines = ["q,r,k,modulus,everywhere"]
    for p in pairs:
        lines.append(
            f"{p.q},{p.r},{p.k},{p.modulus},{str(p.certificate.everywhere_soluble).lower()}"
        )
    return lines


def _triples_csv_lines(triples: Iterable[FamilyTriple]) -> list[str]:
    lines = ["q,r,s,k,modulus,third_sign,everywhere"]
    for t in triples:
        lines.append(
            f"{t.q},{t.r},{t.s},{t.k},{t.modulus},{t.third_sign},"
            f"{str(t.certificate.everywhere_soluble).lower()}"
        )
    return lines


def _rows_jsonable(rows: Iterable[CensusRow]) -> list[dict]:
    return [
        {
            "H": r.H,
            "k": r.k,
            "loc": r.loc_count,
            "glob": r.glob_count,
            "bound_B": r.glob_bound_B,
            "ratio": round(r.ratio, 6),
            "conditional": r.conditional,
        }
        for r in rows
    ]


def _pair_jsonable(p: FamilyPair, with_certificates: bool) -> dict:
    out = {"q": p.q, "r": p.r, "k": p.k, "modulus": p.modulus}
    if with_certificates:
        out["certificate"] = certificate_to_jsonable(p.certificate)
    return out


def _triple_jsonable(t: FamilyTriple, with_certificates: bool) -> dict:
    out = {
        "q": t.q,
        "r": t.r,
        "s": t.s,
        "k": t.k,
        "modulus": t.modulus,
        "third_sign": t.third_sign,
    }
    if with_certificates:
        out["certificate"] = certificate_to_jsonable(t.certificate)
    return out


def export(
    items: Exportable,
    path: str,
    fmt: str = "csv",
    config: dict | None = None,
    with_certificates: bool = False,
) -> str:
    """Write census rows, family lists, or certificates to path.

    CSV output is byte-identical across runs for identical inputs; when a
    config mapping is supplied it is embedded as '#'-prefixed header lines
    (CSV) or a "config" field (JSON) together with the package version.
    """
    if isinstance(items, SolubilityCertificate):
        items = [items]
    items = list(items)
    if fmt not in ("csv", "json"):
        raise ValueError("format must be 'csv' or 'json'")

    kind = "census"
    if items and isinstance(items[0], FamilyPair):
        kind = "pairs"
    elif items and isinstance(items[0], FamilyTriple):
        kind = "triples"
    elif items and isinstance(items[0], SolubilityCertificate):
        kind = "certificates"

    try:
        if fmt == "csv":
            if kind == "census":
                lines = _census_csv_lines(items)
            elif kind == "pairs":
                lines = _pairs_csv_lines(items)
            elif kind == "triples":
                lines = _triples_csv_lines(items)
            else:
                raise ValueError("certificates only export as JSON")
            prefix = []
            if config is not None:
                prefix.append("# version: " + __version__)
                prefix.append("# config: " + json.dumps(config, sort_keys=True))
            text = "\n".join(prefix + lines) + "\n"
        else:
            if kind == "census":
                payload: object = _rows_jsonable(items)
            elif kind == "pairs":
                payload = [_pair_jsonable(p, with_certificates) for p in items]
            elif kind == "triples":
                payload = [_triple_jsonable(t, with_certificates) for t in items]
            else:
                payload = [certificate_to_jsonable(c) for c in items]
            doc: dict = {"version": __version__}
            if config is not None:
                doc["config"] = config
            doc[kind] = payload
            text = json.dumps(doc, indent=2) + "\n"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"export to {path!r} failed: {exc}") from exc
    return path


def write_plot_data(rows: Sequence[CensusRow], path: str) -> str:
    """Two-column (H, ratio) file for plotting."""
    with open(path, "w", encoding="utf-8") as fh:
        for r in rows:
            fh.write(f"{r.H} {r.ratio:.6f}\n")
    return path
