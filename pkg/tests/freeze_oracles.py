"""Regenerate tests/data/oracle_values.json from the exhaustive oracles.

Run from the repository root: ``python3 tests/freeze_oracles.py``. The values
come only from detgen.oracles (bijection scans and plain subset enumeration),
never from the pruned engine they are used to test.
"""

import json
from pathlib import Path

from detgen.catalog import catalog_exprs, expr_order
from detgen.expr import build
from detgen.oracles import (brute_force_automorphisms, naive_automorphisms,
                            oracle_determining_number, oracle_generating_number)

OUT = Path(__file__).parent / "data" / "oracle_values.json"


def main() -> None:
    rows = []
    for e in catalog_exprs():
        if expr_order(e) > 24:
            continue
        g = build(e)
        a = oracle_determining_number(g)
        c = oracle_generating_number(g)
        row = {"expr": e, "order": g.order, "alpha": a.alpha, "alpha_witness": list(a.witness),
               "gamma": c.gamma, "gamma_witness": list(c.witness),
               "aut_order": len(naive_automorphisms(g))}
        if g.order <= 10:
            row["aut_bruteforce"] = len(brute_force_automorphisms(g))
        rows.append(row)
    OUT.write_text("[\n" + ",\n".join(json.dumps(r) for r in rows) + "\n]\n")
    print(f"wrote {len(rows)} groups to {OUT}")


if __name__ == "__main__":
    main()
