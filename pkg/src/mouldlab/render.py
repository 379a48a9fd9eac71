"""Text, LaTeX and JSON forms of moulds, vimo tables and polynomials."""
from __future__ import annotations

import json
import re
from typing import Any, Dict

from .mould import BI, V, Mould, MouldError
from .ncpoly import NCPolynomial, c_view, f_Y, render_c, render_latex_xy, render_xy, render_y
from .textform import poly_to_json, render_latex, render_latex_poly, render_polynomial, render_rf, rf_from_json, rf_to_json

FORMATS = ("text", "json", "latex")


def mould_to_json(M: Mould) -> Dict[str, Any]:
    return {"flavor": M.flavor, "depthLimit": M.depth, "components": [rf_to_json(c) for c in M.comps]}


def mould_from_json(data: Dict[str, Any]) -> Mould:
    comps = [rf_from_json(c) for c in data["components"]]
    if len(comps) != int(data["depthLimit"]) + 1:
        raise MouldError("depthLimit does not match the component count")
    return Mould(comps, data["flavor"])


def _args(flavor: str, r: int, latex: bool) -> str:
    if r == 0:
        return "\\emptyset" if latex else ""
    fam = "v" if flavor == V else "u"
    if flavor == BI:
        if latex:
            return ",".join(f"{{u_{i}\\atop v_{i}}}" for i in range(1, r + 1))
        return ",".join(f"(u{i};v{i})" for i in range(1, r + 1))
    if latex:
        return ",".join(f"{fam}_{i}" for i in range(1, r + 1))
    return ",".join(f"{fam}{i}" for i in range(1, r + 1))


def render_mould(M: Mould, name: str = "M", fmt: str = "text", skip_zero: bool = False) -> str:
    if fmt == "json":
        return json.dumps(mould_to_json(M), sort_keys=True)
    if fmt == "latex":
        rows = []
        for r, c in enumerate(M.comps):
            if skip_zero and c.is_zero():
                continue
            rows.append(f"{name}({_args(M.flavor, r, True)})={_latex_short(render_latex(c))}")
        return "$$\\cases{" + "\\cr\n".join(rows) + "}$$"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for r, c in enumerate(M.comps):
        if skip_zero and c.is_zero():
            continue
        lines.append(f"{name}({_args(M.flavor, r, False)}) = {render_rf(c)}")
    return "\n".join(lines)


def _latex_short(s: str) -> str:
    # u_{1} -> u_1 for single-digit indices, the usual hand-written form
    return re.sub(r"([uvz])_\{(\d)\}", r"\1_\2", s)


def render_vimo(V_, name: str = "vimo", fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"depthLimit": V_.depth, "components": [poly_to_json(c) for c in V_.comps]},
                          sort_keys=True)
    lines = []
    for r, c in enumerate(V_.comps):
        zs = ",".join((f"z_{i}" if fmt == "latex" else f"z{i}") for i in range(r + 1))
        body = _latex_short(render_latex_poly(c)) if fmt == "latex" else render_polynomial(c)
        lines.append(f"{name}({zs})={body}" if fmt == "latex" else f"{name}({zs}) = {body}")
    if fmt == "latex":
        return "$$\\cases{" + "\\cr\n".join(lines) + "}$$"
    return "\n".join(lines)


def nc_to_json(f: NCPolynomial) -> Dict[str, Any]:
    return {"terms": [{"word": w, "coeff": str(f.terms[w])} for w in f.words()]}


def nc_from_json(data: Dict[str, Any]) -> NCPolynomial:
    return NCPolynomial({t["word"]: t["coeff"] for t in data["terms"]})


def render_nc(f: NCPolynomial, fmt: str = "text", alphabet: str = "xy") -> str:
    if fmt == "json":
        return json.dumps(nc_to_json(f), sort_keys=True)
    if fmt == "latex":
        return render_latex_xy(f)
    if alphabet == "y":
        return render_y(f_Y(f))
    if alphabet == "C":
        return render_c(c_view(f))
    return render_xy(f)
