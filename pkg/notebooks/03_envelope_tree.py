"""
Lower envelopes of unit arcs under deletion
===========================================

Disks whose centres lie above a cell reach into it from the top; inside the
cell the union of those disks is bounded below by the lower envelope of
their arcs.  The envelope tree keeps that envelope while arcs are deleted,
and a query point is covered exactly when it lies on or above it.
"""
import math
import random

from embst import EnvelopeTree, clip_arc
from embst.baseline import brute_lower_envelope
from embst.envelope import Arc

rng = random.Random(1)
arcs = []
while len(arcs) < 40:
    a = clip_arc(rng.uniform(-2, 3), rng.uniform(1, 3), 1.0, math.sqrt(2), pid=len(arcs))
    if isinstance(a, Arc):
        arcs.append(a)

tree = EnvelopeTree(arcs)
print("root envelope pieces:", [(a.id, round(l, 3), round(r, 3)) for a, l, r in tree.root_pieces()])

# %%
# Compare with a brute-force envelope at a few abscissae, then delete every
# arc currently on the envelope and let the arcs below the surface take over.
xs = [0.1, 0.4, 0.7, 0.95]
print(tree.evaluate(xs))
print(brute_lower_envelope(arcs, xs))
owners = {a.id for a, _, _ in tree.root_pieces()}
for pid in owners:
    tree.delete(pid)
print(f"after deleting {len(owners)} arcs:", tree.evaluate(xs))
print("brute force agrees:", tree.evaluate(xs) == brute_lower_envelope(arcs, xs))
print("pieces moved up so far:", tree.moved_up_counter)
