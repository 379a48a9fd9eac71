"""Reading hand-typeset ``\\cases`` displays back into rational functions."""
import re

from mouldlab.textform import parse_rf


def tex_to_text(tex):
    s = tex.replace("\\over", "/")
    s = re.sub(r"\^\{(\d+)\}", r"^\1", s)
    s = re.sub(r"([uvz])_(?:\{(\d+)\}|(\d))", lambda m: m[1] + (m[2] or m[3]), s)
    s = re.sub(r"\s+", "", s.replace("{", "(").replace("}", ")"))
    return re.sub(r"(?<=[\d)])(?=[uvz(])", "*", s)


def tex_cases(tex):
    """Map each left-hand side of a ``\\cases`` display to its parsed right-hand side."""
    body = re.sub(r"\s+", "", tex)
    body = body.removeprefix("$$\\cases{").removesuffix("}$$").rstrip(",.")
    out = {}
    for line in body.split("\\cr"):
        lhs, rhs = line.split("=", 1)
        out[lhs] = parse_rf(tex_to_text(rhs.rstrip(",.")))
    return out
