"""Semisimplify Jordan blocks J_k over GF(3) inside GL_k.

Each step picks a destabilizing cocharacter from a module witness, takes the
limit, and the centralizer grows until the tuple is completely reducible.

    python3 demos/jordan_semisimplify.py
"""

from relcr import GF, GeneratorTuple, HSpec, semisimplify
from relcr.corpus import jordan_block
from relcr.semisimplify import final_invariants

F = GF(3)
for k in range(2, 6):
    t = GeneratorTuple.make(F, "group", [jordan_block(F, k)])
    h = HSpec.full(k)
    tr = semisimplify(t, h)
    dims = [tr.steps[0].before_dim] + [s.after_dim for s in tr.steps]
    print(f"J_{k}: {len(tr.steps)} steps, dim C_H {' -> '.join(map(str, dims))}")
    for s in tr.steps:
        print(f"  condition ({s.condition}) weights {s.cocharacter.weights}")
    other = semisimplify(t, h, prefer="ii")
    same = final_invariants(tr, h) == final_invariants(other, h)
    print(f"  final is identity: {tr.final.is_trivial()}; other condition order agrees: {same}")
