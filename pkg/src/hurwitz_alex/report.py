"""Reports: one key-value tree per command, rendered as text or JSON.

The JSON rendering is bit-exact for identical inputs: keys are sorted,
only strings, integers, booleans, null and lists appear, and no timing
is recorded (text output shows wall time separately).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .alexmod import AlexanderResult, cyclic_shift_matrix
from .cgroup import CPresentation, is_hurwitz_presentation
from .checks import Classification, PropertyReport
from .errors import NotRootsOfUnity
from .involution import InvolutionDecomposition, canonical_block, semidirect_stats
from .linalg import IntMatrix, charpoly
from .parsing import format_presentation
from .poly import Poly
from .realize import LayerRecord, RealizationCertificate

SIGN_CONVENTION = "det(h - t Id): leading coefficient (-1)^degree"
REPORT_VERSION = 1


@dataclass
class Report:
    command: str
    inputs: dict
    outputs: dict
    headline: list = field(default_factory=list)  # text-mode summary lines
    seconds: Optional[float] = None  # wall time, text mode only

    def tree(self) -> dict:
        return {"version": REPORT_VERSION, "command": self.command,
                "input": self.inputs, "output": self.outputs}

    def to_json(self) -> str:
        return json.dumps(self.tree(), indent=2, sort_keys=True, ensure_ascii=True) + "\n"

    def to_text(self) -> str:
        lines = list(self.headline)
        if lines:
            lines.append("")
        lines += _render(self.tree(), 0)
        if self.seconds is not None:
            lines.append(f"time: {self.seconds:.3f} s")
        return "\n".join(lines) + "\n"


def _render(node, depth: int) -> list:
    pad = "  " * depth
    out = []
    for key in sorted(node):
        val = node[key]
        if isinstance(val, dict):
            out.append(f"{pad}{key}:")
            out += _render(val, depth + 1)
        elif isinstance(val, str) and "\n" in val:
            out.append(f"{pad}{key}: |")
            out += [f"{pad}  {ln}" for ln in val.rstrip("\n").split("\n")]
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            out.append(f"{pad}{key}:")
            for i, item in enumerate(val):
                out.append(f"{pad}  [{i}]")
                out += _render(item, depth + 2)
        else:
            out.append(f"{pad}{key}: {_scalar(val)}")
    return out


def _scalar(val) -> str:
    if val is None:
        return "n/a"
    if isinstance(val, bool):
        return "yes" if val else "no"
    if isinstance(val, list):
        return json.dumps(val)
    return str(val)


# ---------------------------------------------------------------------------
# pieces


def poly_tree(p: Poly) -> dict:
    return {"text": str(p), "coefficients": [int(c) for c in p.coeffs]}


def matrix_rows(m: IntMatrix) -> list:
    return [list(r) for r in m.tolist()]


def presentation_tree(g: CPresentation) -> dict:
    return {"text": format_presentation(g), "generators": g.num_generators,
            "relations": len(g.relations), "name": g.name}


def properties_tree(rep: Optional[PropertyReport], note: str = "") -> dict:
    if rep is None:
        return {"evaluated": False, "note": note}
    return {"evaluated": True, "degree_d": rep.degree_d, "components_n": rep.components_n,
            "all_pass": rep.all_pass, "failures": rep.failures(),
            "verdicts": {k: {"holds": v.holds, "witness": v.witness}
                         for k, v in rep.verdicts.items()}}


def classification_tree(c: Classification) -> dict:
    return {"verdict": c.verdict, "reason": c.reason, "realizable": c.realizable,
            "data": {k: c.data[k] for k in c.data}}


def layer_tree(rec: LayerRecord) -> dict:
    return {"kind": rec.kind, "psi": str(rec.psi), "k": rec.k, "d": rec.d,
            "P": None if rec.P is None else str(rec.P),
            "w10": None if rec.w10 is None else str(rec.w10),
            "kernel_words": [str(w) for w in rec.kernel_words],
            "generators": rec.generators, "torsion": list(rec.torsion),
            "central_certificate": rec.central_certificate}


# ---------------------------------------------------------------------------
# command trees


def compute_outputs(g: CPresentation, res: AlexanderResult,
                    props: Optional[PropertyReport], props_note: str) -> dict:
    shift = cyclic_shift_matrix(g) if not res.is_zero else None
    syntactic = is_hurwitz_presentation(g)
    out = {
        "delta": "0" if res.is_zero else str(res.delta),
        "delta_zero": res.is_zero,
        "delta_coefficients": [] if res.is_zero else [int(c) for c in res.delta.coeffs],
        "convention": SIGN_CONVENTION,
        "components": res.components,
        "invariant_factors": [str(f) for f in res.invariant_factors],
        "free_rank": res.free_rank,
        "semisimple": res.semisimple,
        "module_generators": res.module_generators,
        "reduced_matrix": list(res.reduced_shape),
        "hurwitz": {"syntactic": syntactic,
                    "degree": g.num_generators if syntactic else None},
        "properties": properties_tree(props, props_note),
        "shift_matrix": None,
    }
    if shift is not None:
        out["shift_matrix"] = {"basis_column": shift.column,
                               "annihilator": str(shift.annihilator),
                               "matrix": matrix_rows(shift.matrix),
                               "charpoly": str(charpoly(shift.matrix))}
    return out


def compute_headline(res: AlexanderResult) -> list:
    if res.is_zero:
        return ["Delta == 0 (infinite-dimensional)"]
    return [f"Delta = {res.delta}", f"components = {res.components}"]


def certificate_tree(cert: RealizationCertificate) -> dict:
    return {
        "target": poly_tree(cert.target),
        "input_unit": {"t_power": cert.input_unit[0], "sign": cert.input_unit[1]},
        "mode": cert.mode,
        "presentation": presentation_tree(cert.presentation),
        "central_word": str(cert.central_word),
        "hurwitz": {"syntactic": is_hurwitz_presentation(cert.presentation),
                    "degree": cert.hurwitz_degree,
                    "note": "Hurwitz by construction: the central word is recorded, "
                            "its length is the degree"},
        "computed_delta": poly_tree(cert.computed_delta),
        "verified": cert.verified,
        "components": cert.components,
        "layers": [layer_tree(r) for r in cert.layers],
        "convention": SIGN_CONVENTION,
    }


def decomposition_tree(h: IntMatrix, dec: InvolutionDecomposition) -> dict:
    U = dec.basis
    ok = U.nrows == 0 or (abs(U.det()) == 1
                          and U.inverse() @ h @ U == canonical_block(*dec.counts))
    stats = semidirect_stats(*dec.counts)
    return {
        "counts": list(dec.counts),
        "basis": matrix_rows(U),
        "basis_convention": "columns; U^-1 h U is the block form",
        "canonical_block": matrix_rows(canonical_block(*dec.counts)),
        "conjugation_check": ok,
        "semidirect": {"abelianization": str(stats.abelianization),
                       "det_t_minus_h": str(stats.charpoly_t_minus_h),
                       "convention": "det(t Id - h)"},
    }


def safe_properties(fn, *args):
    """Run grku_properties, turning a non-cyclotomic Δ into a note."""
    try:
        return fn(*args), ""
    except NotRootsOfUnity as exc:
        return None, f"property (iii) fails outright: {exc}"
