"""GL_3 with H = SL_2 acting on coordinates 1, 2 and fixing coordinate 0.

Each single root group gets stuck in a parabolic of H that no Levi can
rescue; together the two root groups are fine.

    python3 demos/sl_block_walkthrough.py
"""

from relcr import Verdict, check_relcr
from relcr.cocharacter import apply_limit
from relcr.corpus import sl_block_example
from relcr.relcr import restoring_element


def show(name, t, h):
    r = check_relcr(t, h, "search")
    print(f"{name}: {r.verdict.value} (search exhausted: {r.search_exhausted})")
    if r.verdict is Verdict.NOT_REL_CR:
        lam = r.destabilizer.cocharacter
        print(f"  destabilizing weights {lam.weights}")
        for x, y in zip(t.entries, apply_limit(lam, t).entries):
            print(f"  {x.tolist()} -> limit {y.tolist()}")
        if restoring_element(lam, t) is None:
            print("  no element of R_u(P) conjugates the tuple onto its limit")
    for note in r.notes:
        print(f"  note: {note}")


h, both, first, second = sl_block_example()
show("<I+E01, I+E02>", both, h)
show("<I+E01>", first, h)
show("<I+E02>", second, h)
