"""Turn the displayed LaTeX rows into ring expressions."""
import json
import os
import re

HERE = os.path.dirname(__file__)


def load_rows():
    with open(os.path.join(HERE, "data", "reference_displayed.json")) as fh:
        return json.load(fh)["rows"]


def latex_to_expr(tex, misprint="subscript"):
    """``misprint`` picks how ``d_{-1}0`` is read: as d_{-10} or as d_{-1} * 0."""
    s = tex
    joined = r"dm\1\2" if misprint == "subscript" else r"dm\1 * \2"
    s = re.sub(r"d_\{-(\d+)\}(\d+)", joined, s)
    s = re.sub(r"d_\{-(\d+)\}", r" dm\1 ", s)
    s = re.sub(r"d_(\d)", r" d\1 ", s)
    s = s.replace("F_{-4}", " F4 ").replace("C_3", " C3 ").replace(r"\lambda", " lam ")
    s = re.sub(r"\^\{(\d+)\}", r"^\1", s)
    s = re.sub(r"\s*\^\s*", "^", s)
    terms = []
    for t in s.split("+"):
        parts = t.replace("*", " * ").split()
        toks = [p for p in parts if p != "*"]
        if toks:
            terms.append("*".join(toks))
    return " + ".join(terms)
