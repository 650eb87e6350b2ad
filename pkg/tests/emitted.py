"""Collect every expression string a JSON report emits."""

from fundform.parser import parse_expr


def expressions(obj, out=None):
    out = [] if out is None else out
    if isinstance(obj, dict):
        if "covectors" in obj and "coeff" in obj:
            out.append(obj["coeff"])
            out.extend(obj["covectors"])
        elif set(obj) >= {"m", "n", "k", "L"}:
            out.append(obj["L"])
        else:
            for key, v in obj.items():
                if key == "value" and isinstance(v, str) and v not in ("True", "False"):
                    out.append(v)
                else:
                    expressions(v, out)
    elif isinstance(obj, list):
        for v in obj:
            expressions(v, out)
    return out


def round_trips(text):
    return str(parse_expr(text)) == text
