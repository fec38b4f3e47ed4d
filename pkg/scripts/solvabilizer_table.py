#!/usr/bin/env python3
"""Per-class solvabilizer and nilpotentizer sizes for a few groups, as a table.

    python scripts/solvabilizer_table.py A5 "SL2(5)" "A5 x C2"
"""

import argparse

from solvagraph.catalog import build
from solvagraph.group_core import conjugacy_classes
from solvagraph.solvabilizer import RelationMode, engine, is_closed


def table(spec: str) -> list[str]:
    G = build(spec)
    ct = conjugacy_classes(G)
    S = engine(G, RelationMode.SOLVABLE).matrix()
    N = engine(G, RelationMode.NILPOTENT).matrix()
    lines = [f"{G.label} (order {G.order}, {len(ct)} classes)",
             f"  {'rep':<22}{'ord':>5}{'class':>7}{'|C|':>6}{'|sol|':>7}{'sub?':>6}{'|nil|':>7}{'deg':>6}"]
    for c, r in enumerate(ct.representatives):
        sol = int(S[r].sum())
        lines.append(f"  {G.render(r):<22}{int(G.orders[r]):>5}{ct.class_sizes[c]:>7}"
                     f"{ct.centralizer_orders[c]:>6}{sol:>7}{'y' if is_closed(G, S[r]) else 'n':>6}"
                     f"{int(N[r].sum()):>7}{G.order - sol:>6}")
    return lines


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("specs", nargs="*", default=["A5", "S5", "SL2(5)", "PSL2(7)"])
    for spec in ap.parse_args().specs:
        print("\n".join(table(spec)))
        print()
