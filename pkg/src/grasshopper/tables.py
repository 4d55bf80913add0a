"""Published reference values and their regeneration."""
from __future__ import annotations

from decimal import Decimal

from . import coeffs, modular, route

CK_EXACT = {
    1: 1,
    2: 2,
    3: 90,
    4: 586_656,
    5: 1_915_103_977_500,
    6: 7_886_133_184_567_796_056_800,
}

# four significant digits
CK_APPROX = {
    7: "8.587e34",
    8: "4.594e51",
    9: "2.060e72",
    10: "1.237e97",
}


def sci(value: int, digits: int = 4) -> str:
    """Round to ``digits`` significant digits, e.g. 85873... -> '8.587e34'."""
    if value == 0:
        return "0"
    mant, _, exp = format(Decimal(value), f".{digits - 1}e").partition("e")
    return f"{mant}e{int(exp)}"


def table2(max_k: int = 10) -> list[dict]:
    rows = []
    for k in range(1, max_k + 1):
        c = coeffs.ck(k)
        row = {"k": k, "value": c, "approx": sci(c)}
        if k in CK_EXACT:
            row["reference"] = str(CK_EXACT[k])
            row["match"] = c == CK_EXACT[k]
        elif k in CK_APPROX:
            row["reference"] = CK_APPROX[k]
            row["match"] = sci(c) == CK_APPROX[k]
        else:
            row["reference"] = None
            row["match"] = None
        rows.append(row)
    return rows


def table1(max_n: int = 20, sharp_n: int = 16) -> list[dict]:
    """Blockage of every extremal instance, and whether each single-mine
    removal (n <= sharp_n) yields a solvable instance inside the bound."""
    rows = []
    for n in range(2, max_n + 1):
        modes = (True,) if n % 2 == 0 else (True, False)
        for hops in modes:
            jumps, mines = route.extremal_instance(n, hops)
            row = {
                "n": n,
                "case": "even" if n % 2 == 0 else ("hops allowed" if hops else "hops prohibited"),
                "jumps": list(jumps.jumps),
                "mines": sorted(mines.mines),
                "blocked": route.is_blocked(jumps, mines),
            }
            if n <= sharp_n:
                ok = True
                for m in mines.mines:
                    fewer = mines.mines - {m}
                    ok &= len(fewer) <= route.theorem_bound(jumps)
                    ok &= route.find_safe_order(jumps, fewer) is not None
                row["sharp"] = ok
            rows.append(row)
    return rows


def factorization_rows() -> list[dict]:
    rows = []
    for k, claim in sorted(modular.PUBLISHED_FACTORIZATIONS.items()):
        rows.append({
            "k": k,
            "factors": [[p, e] for p, e in claim.factors],
            "verified": modular.verify_factorization(claim),
        })
    return rows
