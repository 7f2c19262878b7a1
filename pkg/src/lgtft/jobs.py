"""Declarative batch jobs: parse, run, report, and diff.

Job files are JSON; polynomials appear as quoted strings in the text grammar
of the algebra core.  Reports are JSON with a schema_version field, printed
with sorted keys so identical computations produce identical bytes; the only
run-dependent field is the "timing" subtree, which diff_reports ignores.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .cache import Cache, null_cache
from .errors import DegenerateTraceError, LGError, ValidationError
from .groebner import GroebnerBasis
from .jacobi import JacobiAlgebra, residue_trace
from .koszul import check_vanishing_negative_degrees, koszul_cohomology
from .lgpair import LGPair, make_lg_pair
from .matfact import hom_cohomology, koszul_factorization, make_factorization
from .polymatrix import PolyMatrix
from .tft import build_tft_datum, verify_tft_datum

SCHEMA_VERSION = "1"
SECTIONS = ("jacobi", "koszul", "homs", "tft")


@dataclass
class JobSpec:
    """Validated description of one batch computation."""

    variables: list
    superpotential: str
    weights: Optional[list] = None
    branes: list = field(default_factory=list)  # (name, kind, payload)
    compute: tuple = SECTIONS
    hom_pairs: Optional[list] = None  # names, or None for all pairs
    degree_bound: Optional[int] = None
    koszul_bound: Optional[int] = None
    c_d: Optional[Fraction] = None
    bulk_scale: Fraction = Fraction(1)
    output: Optional[str] = None

    @classmethod
    def from_dict(cls, raw: dict) -> "JobSpec":
        if not isinstance(raw, dict):
            raise ValidationError("job file must contain a JSON object")
        known = {
            "variables",
            "superpotential",
            "weights",
            "branes",
            "compute",
            "hom_pairs",
            "degree_bound",
            "koszul_bound",
            "normalization",
            "output",
        }
        for key in raw:
            if key not in known:
                raise ValidationError(f"unknown job field {key!r}")
        variables = raw.get("variables")
        if (
            not isinstance(variables, list)
            or not variables
            or not all(isinstance(v, str) for v in variables)
        ):
            raise ValidationError("'variables' must be a non-empty list of names")
        superpotential = raw.get("superpotential")
        if not isinstance(superpotential, str):
            raise ValidationError("'superpotential' must be a polynomial string")
        weights = raw.get("weights")
        if weights is not None:
            if not isinstance(weights, list) or not all(
                isinstance(w, int) and w > 0 for w in weights
            ):
                raise ValidationError("'weights' must be positive integers")
        branes = []
        seen = set()
        for entry in raw.get("branes", []):
            if not isinstance(entry, dict) or "name" not in entry:
                raise ValidationError("each brane needs a 'name'")
            name = entry["name"]
            if name in seen:
                raise ValidationError(f"duplicate brane name {name!r}")
            seen.add(name)
            if "pairs" in entry:
                pairs = entry["pairs"]
                if not isinstance(pairs, list) or not all(
                    isinstance(p, list) and len(p) == 2 for p in pairs
                ):
                    raise ValidationError(
                        f"brane {name!r}: 'pairs' must be a list of [a, b]"
                    )
                branes.append((name, "pairs", pairs))
            elif "d01" in entry and "d10" in entry:
                payload = {
                    "d01": entry["d01"],
                    "d10": entry["d10"],
                    "weights0": entry.get("weights0"),
                    "weights1": entry.get("weights1"),
                }
                branes.append((name, "matrices", payload))
            else:
                raise ValidationError(
                    f"brane {name!r} needs either 'pairs' or 'd01'+'d10'"
                )
        compute = raw.get("compute", "all")
        if compute == "all":
            compute = SECTIONS
        elif isinstance(compute, str):
            compute = (compute,)
        elif isinstance(compute, list):
            compute = tuple(compute)
        else:
            raise ValidationError("'compute' must be a section name or list")
        for section in compute:
            if section not in SECTIONS:
                raise ValidationError(f"unknown compute section {section!r}")
        hom_pairs = raw.get("hom_pairs")
        if hom_pairs is not None:
            if not isinstance(hom_pairs, list):
                raise ValidationError("'hom_pairs' must be a list of name pairs")
            for pair in hom_pairs:
                if not (isinstance(pair, list) and len(pair) == 2):
                    raise ValidationError("'hom_pairs' entries must be [a, b]")
                for name in pair:
                    if name not in seen:
                        raise ValidationError(
                            f"hom_pairs references undefined brane {name!r}"
                        )
        normalization = raw.get("normalization", {})
        if not isinstance(normalization, dict):
            raise ValidationError("'normalization' must be an object")
        c_d = normalization.get("c_d")
        bulk_scale = normalization.get("bulk_scale", "1")
        try:
            c_d = Fraction(c_d) if c_d is not None else None
            bulk_scale = Fraction(bulk_scale)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad normalization constant: {exc}") from exc
        degree_bound = raw.get("degree_bound")
        koszul_bound = raw.get("koszul_bound")
        for label, value in (("degree_bound", degree_bound), ("koszul_bound", koszul_bound)):
            if value is not None and (not isinstance(value, int) or value < 0):
                raise ValidationError(f"'{label}' must be a non-negative integer")
        output = raw.get("output")
        if output is not None and not isinstance(output, str):
            raise ValidationError("'output' must be a path string")
        if ("tft" in compute or "homs" in compute) and not branes:
            raise ValidationError(
                "sections 'homs' and 'tft' require at least one brane"
            )
        return cls(
            variables=variables,
            superpotential=superpotential,
            weights=weights,
            branes=branes,
            compute=compute,
            hom_pairs=hom_pairs,
            degree_bound=degree_bound,
            koszul_bound=koszul_bound,
            c_d=c_d,
            bulk_scale=bulk_scale,
            output=output,
        )

    def echo(self) -> dict:
        return {
            "variables": list(self.variables),
            "superpotential": self.superpotential,
            "weights": list(self.weights) if self.weights else None,
            "branes": [
                {"name": name, "kind": kind} for name, kind, _ in self.branes
            ],
            "compute": list(self.compute),
            "hom_pairs": self.hom_pairs,
            "degree_bound": self.degree_bound,
            "koszul_bound": self.koszul_bound,
            "normalization": {
                "c_d": str(self.c_d) if self.c_d is not None else None,
                "bulk_scale": str(self.bulk_scale),
            },
        }


def load_job(path: str) -> JobSpec:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ValidationError(f"cannot read job file: {exc}") from exc
    except ValueError as exc:
        raise ValidationError(f"job file is not valid JSON: {exc}") from exc
    return JobSpec.from_dict(raw)


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def _build_lg(spec: JobSpec) -> LGPair:
    try:
        return make_lg_pair(spec.variables, spec.superpotential, spec.weights)
    except LGError as exc:
        raise ValidationError(str(exc)) from exc


def _build_branes(spec: JobSpec, lg: LGPair):
    named = []
    ring = lg.ring
    for name, kind, payload in spec.branes:
        if kind == "pairs":
            named.append((name, koszul_factorization(lg, payload)))
        else:
            d01 = PolyMatrix(
                ring, [[ring.parse(p) for p in row] for row in payload["d01"]]
            )
            d10 = PolyMatrix(
                ring, [[ring.parse(p) for p in row] for row in payload["d10"]]
            )
            named.append(
                (
                    name,
                    make_factorization(
                        lg,
                        d01,
                        d10,
                        payload.get("weights0"),
                        payload.get("weights1"),
                    ),
                )
            )
    return named


def _cached_groebner(cache: Cache, lg: LGPair) -> GroebnerBasis:
    generators = [p for p in lg.partials() if not p.is_zero()]
    key = [list(lg.ring.variables), "grevlex", sorted(str(g) for g in generators)]
    payload = cache.get("groebner", key)
    if payload is not None:
        try:
            basis = GroebnerBasis(
                lg.ring, [lg.ring.parse(g) for g in payload]
            )
            # corruption checks: Buchberger criterion, and the requested
            # generators must still reduce to zero against the cached basis
            basis.verify()
            if all(basis.contains(g) for g in generators):
                return basis
        except (AssertionError, LGError, ValueError):
            pass  # fall through and recompute
    basis = GroebnerBasis.compute(generators)
    cache.put("groebner", key, [str(g) for g in basis.generators])
    return basis


def _koszul_default_bound(lg: LGPair) -> int:
    if lg.weights is not None:
        return 2 * lg.weighted_degree + 4
    return 2 * lg.w.total_degree() + 4


def _run_jacobi(spec: JobSpec, lg: LGPair, cache: Cache) -> dict:
    gb = _cached_groebner(cache, lg)
    finite = gb.is_zero_dimensional()
    out = {
        "finite_critical_set": finite,
        "groebner_basis": [str(g) for g in gb.generators],
    }
    if not finite:
        out["milnor_number"] = None
        out["note"] = "critical set not finite; see the koszul section"
        return out
    algebra = JacobiAlgebra(lg, gb)
    out["milnor_number"] = algebra.dimension
    out["basis"] = [str(algebra.basis_poly(k)) for k in range(algebra.dimension)]
    if algebra.dimension:
        trace = residue_trace(algebra, lg, scale=spec.bulk_scale)
        out["trace"] = [str(v) for v in trace.values]
        out["gram"] = [
            [str(trace.gram.get(i, j)) for j in range(algebra.dimension)]
            for i in range(algebra.dimension)
        ]
    return out


def _run_koszul(spec: JobSpec, lg: LGPair, cache: Cache) -> dict:
    bound = (
        spec.koszul_bound
        if spec.koszul_bound is not None
        else (spec.degree_bound if spec.degree_bound is not None
              else _koszul_default_bound(lg))
    )
    key = [list(lg.key()), bound]
    payload = cache.get("koszul", key)
    if payload is None:
        table = koszul_cohomology(lg, bound)
        vanishing = check_vanishing_negative_degrees(lg, bound)
        payload = {
            "table": table.to_jsonable(),
            "vanishing": vanishing.to_jsonable(),
        }
        cache.put("koszul", key, payload)
    return payload


def _run_homs(spec: JobSpec, lg: LGPair, named, cache: Cache) -> dict:
    by_name = dict(named)
    if spec.hom_pairs is not None:
        pairs = [(a, b) for a, b in spec.hom_pairs]
    else:
        pairs = [(a, b) for a, _ in named for b, _ in named]
    out = {}
    for a, b in pairs:
        key = [
            list(lg.key()),
            list(by_name[a].key()[1:]),
            list(by_name[b].key()[1:]),
            spec.degree_bound,
        ]
        payload = cache.get("hom", key)
        if payload is None:
            hom = hom_cohomology(by_name[a], by_name[b], spec.degree_bound)
            payload = {
                "dims": {"even": hom.dim(0), "odd": hom.dim(1)},
                "by_degree": {
                    "even": {str(m): v for m, v in hom.dims_by_degree(0).items()},
                    "odd": {str(m): v for m, v in hom.dims_by_degree(1).items()},
                },
                "mode": "weighted" if hom.graded else "total_degree",
                "bound": hom.bound,
                "stabilized": hom.stabilized,
            }
            cache.put("hom", key, payload)
        out[f"{a}|{b}"] = payload
    return out


def _run_tft(spec: JobSpec, lg: LGPair, named) -> dict:
    datum = build_tft_datum(
        lg,
        named,
        degree_bound=spec.degree_bound,
        boundary_normalization=spec.c_d,
        bulk_scale=spec.bulk_scale,
    )
    report = verify_tft_datum(datum)
    payload = report.to_jsonable()
    payload["parity"] = datum.parity
    payload["c_d"] = str(datum.c_d)
    return payload


def run_job(spec: JobSpec, cache: Optional[Cache] = None) -> dict:
    """Execute every requested section and assemble the report."""
    if cache is None:
        cache = null_cache()
    started = time.time()
    lg = _build_lg(spec)
    branes = _build_branes(spec, lg)
    results = {}
    timing = {}
    for section in SECTIONS:
        if section not in spec.compute:
            continue
        section_start = time.time()
        if section == "jacobi":
            results["jacobi"] = _run_jacobi(spec, lg, cache)
        elif section == "koszul":
            results["koszul"] = _run_koszul(spec, lg, cache)
        elif section == "homs":
            results["homs"] = _run_homs(spec, lg, branes, cache)
        elif section == "tft":
            try:
                results["tft"] = _run_tft(spec, lg, branes)
            except DegenerateTraceError as exc:
                results["tft"] = {"skipped": str(exc)}
        timing[section] = round(time.time() - section_start, 6)
    timing["total"] = round(time.time() - started, 6)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "job": spec.echo(),
        "lg": {
            "variables": list(lg.ring.variables),
            "superpotential": str(lg.w),
            "weights": list(lg.weights) if lg.weights else None,
            "signature": lg.signature,
        },
        "branes": {
            name: {
                "rank0": obj.rank0,
                "rank1": obj.rank1,
                "graded": obj.graded,
            }
            for name, obj in branes
        },
        "results": results,
        "timing": timing,
    }
    return report


def report_to_text(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# diffing
# ---------------------------------------------------------------------------

_IGNORED_TOPLEVEL = ("timing",)


def diff_reports(r1: dict, r2: dict) -> dict:
    """Field-level diff ignoring timing; schema mismatches are flagged."""
    s1, s2 = r1.get("schema_version"), r2.get("schema_version")
    if s1 != s2:
        return {
            "schema_mismatch": {"left": s1, "right": s2},
            "entries": [],
        }
    entries = []

    def walk(path, left, right):
        if path and path[0] in _IGNORED_TOPLEVEL:
            return
        if isinstance(left, dict) and isinstance(right, dict):
            for key in sorted(set(left) | set(right)):
                walk(
                    path + [key],
                    left.get(key, "<absent>"),
                    right.get(key, "<absent>"),
                )
            return
        if isinstance(left, list) and isinstance(right, list):
            if len(left) != len(right):
                entries.append(
                    {
                        "path": ".".join(path),
                        "left": f"<{len(left)} items>",
                        "right": f"<{len(right)} items>",
                    }
                )
                return
            for k, (a, b) in enumerate(zip(left, right)):
                walk(path + [str(k)], a, b)
            return
        if left != right:
            entries.append(
                {"path": ".".join(path), "left": left, "right": right}
            )

    walk([], r1, r2)
    return {"schema_mismatch": None, "entries": entries}
