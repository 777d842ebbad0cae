"""Lower envelopes of radius-lambda circular arcs clipped to a grid cell.

Everything here works in a local frame: the query cell is the square
``[0, s] x [0, s]`` with its bottom edge removed (so it extends to
y = -inf), and every arc centre lies on or above the line ``y = s``.
Only the lower semicircle of such a circle can enter the cell, so each
clipped arc is the graph of a convex function of x over an interval.

The :class:`EnvelopeTree` keeps the lower envelope of a deletion-only set
of arcs.  Leaves are ordered by right endpoint along the cell boundary.
Every node keeps the part of its subtree's envelope that is not visible at
its parent (a doubly linked chain of pieces), together with the split
abscissa where its two child envelopes hand over.  Deleting an arc
restores the child envelopes top-down, recurses, and re-cuts bottom-up.
"""
import bisect
import math
from typing import NamedTuple

LEFT, TOP, RIGHT = 0, 1, 2

_FULL_MARGIN = 1e-12
_TIE_TOL = 1e-12


class BoundaryPos(NamedTuple):
    """Position on the three-edge cell boundary, ordered from its left end to its right end.

    ``offset`` is y on the left edge, x on the top edge and -y on the right
    edge, so tuple order is the counterclockwise "left of" order.
    """
    edge: int
    offset: float


class Arc:
    __slots__ = ("id", "cx", "cy", "lam", "lo", "hi", "left_end", "right_end",
                 "cell", "pos", "piece", "alive")

    def __init__(self, pid, cx, cy, lam, lo, hi, left_end, right_end, cell=None):
        self.id = pid
        self.cx = cx
        self.cy = cy
        self.lam = lam
        self.lo = lo
        self.hi = hi
        self.left_end = left_end
        self.right_end = right_end
        self.cell = cell
        self.pos = -1
        self.piece = None
        self.alive = True

    def y(self, x):
        d = x - self.cx
        r = self.lam * self.lam - d * d
        return self.cy - math.sqrt(r) if r > 0.0 else self.cy

    def contains(self, px, py):
        dx = px - self.cx
        dy = py - self.cy
        return math.sqrt(dx * dx + dy * dy) <= self.lam

    def __repr__(self):
        return f"Arc(id={self.id}, x=[{self.lo:.6g}, {self.hi:.6g}])"


EMPTY = "empty"
FULL = "full"


def clip_arc(qx, qy, side, lam, pid=None, cell=None):
    """Clip the circle of radius ``lam`` about local point (qx, qy) to the cell.

    Returns :data:`EMPTY`, :data:`FULL` or an :class:`Arc`.  ``FULL`` means
    the bounded square lies inside the disk, so every query in the cell is a
    hit.  Requires ``qy >= side`` (centre above the cell's top edge).
    """
    if qy < side:
        raise ValueError("arc centre must lie on or above the cell's top edge")
    h = qy - side
    w2 = lam * lam - h * h
    if w2 < 0.0:
        return EMPTY
    w = math.sqrt(w2)
    xa, xb = qx - w, qx + w
    lo, hi = max(0.0, xa), min(side, xb)
    if lo > hi:
        return EMPTY
    reach = lam * (1.0 - _FULL_MARGIN)
    if (math.hypot(qx, qy) <= reach and math.hypot(qx - side, qy) <= reach):
        return FULL
    arc = Arc(pid, qx, qy, lam, lo, hi, None, None, cell)
    arc.left_end = BoundaryPos(TOP, xa) if xa >= 0.0 else BoundaryPos(LEFT, arc.y(0.0))
    arc.right_end = BoundaryPos(TOP, xb) if xb <= side else BoundaryPos(RIGHT, -arc.y(side))
    return arc


def crossing_x(a, b, x0, x1):
    """Abscissa in [x0, x1] where lower arcs ``a`` and ``b`` cross.

    Equal-radius lower semicircles cross at most once; the crossing is the
    lower of the two circle intersection points.  Falls back to bisection
    when the closed form lands outside the bracket.
    """
    dx = b.cx - a.cx
    dy = b.cy - a.cy
    d2 = dx * dx + dy * dy
    if d2 > 0.0:
        lam = a.lam
        h2 = lam * lam - d2 / 4.0
        if h2 < 0.0 and h2 > -_TIE_TOL * lam * lam:
            h2 = 0.0
        if h2 >= 0.0:
            d = math.sqrt(d2)
            h = math.sqrt(h2)
            mx = (a.cx + b.cx) / 2.0
            # perpendicular (-dy, dx)/d; the lower point subtracts h*dx/d from y
            if dx >= 0.0:
                x = mx + h * dy / d
            else:
                x = mx - h * dy / d
            tol = _TIE_TOL * max(1.0, abs(x1 - x0))
            if x0 - tol <= x <= x1 + tol:
                return min(max(x, x0), x1)
    lo, hi = x0, x1
    s_lo = b.y(lo) - a.y(lo)
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if (b.y(mid) - a.y(mid) < 0.0) == (s_lo < 0.0):
            lo = mid
        else:
            hi = mid
    return hi


class _Piece:
    __slots__ = ("arc", "xl", "xr", "prev", "next", "home")

    def __init__(self, arc, xl, xr):
        self.arc = arc
        self.xl = xl
        self.xr = xr
        self.prev = None
        self.next = None
        self.home = None


class _Node:
    __slots__ = ("left", "right", "head", "tail", "xu", "xw", "split",
                 "u_xr", "w_xl", "lo", "hi", "arc", "on_path")

    def __init__(self, lo, hi):
        self.left = self.right = None
        self.head = self.tail = None
        self.xu = self.xw = None
        self.split = None
        self.u_xr = self.w_xl = None
        self.lo, self.hi = lo, hi
        self.arc = None
        self.on_path = False

    @property
    def x_pair(self):
        if self.xu is None and self.xw is None:
            return None
        return (self.xu.arc if self.xu else None, self.xw.arc if self.xw else None)

    def chain(self):
        out = []
        p = self.head
        while p is not None:
            out.append(p)
            p = p.next
        return out


def _concat(h1, t1, h2, t2):
    if h1 is None:
        return h2, t2
    if h2 is None:
        return h1, t1
    t1.next = h2
    h2.prev = t1
    return h1, t2


def _split_after(h, t, piece):
    """Split chain (h, t) right after ``piece``; ``None`` means before h."""
    if piece is None:
        return None, None, h, t
    nxt = piece.next
    if nxt is None:
        return h, t, None, None
    piece.next = None
    nxt.prev = None
    return h, piece, nxt, t


def _find_split(lh, lt, rh, a=None, b=None, x0=-math.inf):
    """Sweep two envelope chains for the point where the right one takes over.

    Returns ``(x_star, pu, pw)``: the handover abscissa, the last left piece
    starting before it and the right piece containing it.  ``x_star`` is the
    first x >= x0 where the right envelope is strictly lower than the left
    one (or defined where the left one is not).  Returns
    ``(inf, lt, None)`` when the right envelope is hidden entirely.
    """
    if a is None:
        a = lh
    if b is None:
        b = rh
    found = None
    while b is not None and found is None:
        x = b.xl if b.xl > x0 else x0
        if x > b.xr:
            b = b.next
            continue
        while True:
            while a is not None and a.xr <= x:
                a = a.next
            if a is None or a.xl > x:
                found = x
                break
            x1 = a.xr if a.xr < b.xr else b.xr
            ba, aa = b.arc, a.arc
            if ba.y(x) < aa.y(x):
                found = x
                break
            if ba.y(x1) < aa.y(x1):
                found = crossing_x(aa, ba, x, x1)
                break
            if x1 >= b.xr:
                break
            x = x1
        if found is None:
            b = b.next
    if found is None:
        return math.inf, lt, None
    cand = a if a is not None else lt
    while cand is not None and cand.xl >= found:
        cand = cand.prev
    return found, cand, b


class EnvelopeTree:
    """Deletion-only lower envelope of clipped arcs sharing one cell."""

    def __init__(self, arcs):
        arcs = sorted(arcs, key=lambda a: (a.right_end, a.id))
        self.arcs = arcs
        self.leaf_of = {}
        self.live_count = len(arcs)
        self.moved_up_counter = 0
        self.live_ids = {}
        for i, a in enumerate(arcs):
            a.pos = i
            a.alive = True
            self.live_ids[a.id] = a
        self.root = self._build(0, len(arcs) - 1) if arcs else None
        if self.root is not None:
            self.root.on_path = True

    # -- construction -------------------------------------------------

    def _build(self, lo, hi):
        v = _Node(lo, hi)
        if lo == hi:
            a = self.arcs[lo]
            p = _Piece(a, a.lo, a.hi)
            a.piece = p
            p.home = v
            v.arc = a
            v.head = v.tail = p
            self.leaf_of[a.id] = v
            return v
        mid = (lo + hi) // 2
        v.left = self._build(lo, mid)
        v.right = self._build(mid + 1, hi)
        self._merge(v, *_find_split(v.left.head, v.left.tail, v.right.head))
        p = v.head
        while p is not None:
            p.home = v
            p = p.next
        return v

    def _merge(self, v, x_star, pu, pw):
        u, w = v.left, v.right
        lup_h, lup_t, lhid_h, lhid_t = _split_after(u.head, u.tail, pu)
        if pw is None:
            rhid_h, rhid_t, rup_h, rup_t = w.head, w.tail, None, None
        else:
            rhid_h, rhid_t, rup_h, rup_t = _split_after(w.head, w.tail, pw.prev)
        if pu is not None:
            v.u_xr = pu.xr
            if pu.xr > x_star:
                pu.xr = x_star
        if pw is not None:
            v.w_xl = pw.xl
            if pw.xl < x_star:
                pw.xl = x_star
        v.head, v.tail = _concat(lup_h, lup_t, rup_h, rup_t)
        u.head, u.tail = lhid_h, lhid_t
        w.head, w.tail = rhid_h, rhid_t
        v.xu, v.xw, v.split = pu, pw, x_star

    def _restore(self, v):
        u, w = v.left, v.right
        pu, pw = v.xu, v.xw
        if pu is not None:
            lup_h, lup_t, rup_h, rup_t = _split_after(v.head, v.tail, pu)
            pu.xr = v.u_xr
        else:
            lup_h = lup_t = None
            rup_h, rup_t = v.head, v.tail
        if pw is not None:
            pw.xl = v.w_xl
        u.head, u.tail = _concat(lup_h, lup_t, u.head, u.tail)
        w.head, w.tail = _concat(w.head, w.tail, rup_h, rup_t)
        v.head = v.tail = None

    # -- queries ------------------------------------------------------

    def candidates(self, px):
        """Arcs that may own the envelope at abscissa ``px``.

        The first entry is the arc reached by descending on split points;
        arcs at splits within rounding distance of ``px`` follow.
        """
        v = self.root
        if v is None:
            return []
        near = []
        while v.arc is None:
            if v.left is not None and v.right is not None:
                sp = v.split
                if abs(px - sp) <= _TIE_TOL * (1.0 + abs(px)):
                    if v.xu is not None:
                        near.append(v.xu.arc)
                    if v.xw is not None:
                        near.append(v.xw.arc)
                v = v.left if px <= sp else v.right
            else:
                v = v.left if v.left is not None else v.right
        return [v.arc] + near

    def query(self, px, py):
        """Return the id of an arc centre within lambda of (px, py), else None."""
        for a in self.candidates(px):
            if a.contains(px, py):
                return a.id
        return None

    # -- deletion -----------------------------------------------------

    def delete(self, pid):
        """Delete the arc with centre id ``pid``; returns False if not live."""
        arc = self.live_ids.pop(pid, None)
        if arc is None:
            return False
        arc.alive = False
        self.live_count -= 1
        del self.leaf_of[pid]
        root = self.root
        if root.arc is arc:
            self.root = None
            return True
        if self._delete(root, arc):
            self.root = None
        return True

    def _delete(self, v, arc):
        """Remove ``arc`` below ``v``; ``v``'s chain holds the full U(v).

        Returns True if ``v`` is left without live arcs.
        """
        piece = arc.piece
        on_v = piece.home.on_path
        if on_v:
            pv, nv = piece.prev, piece.next
        u, w = v.left, v.right
        two = u is not None and w is not None
        if two:
            self._restore(v)
        else:
            c = u if u is not None else w
            c.head, c.tail = v.head, v.tail
            v.head = v.tail = None
        in_left = u is not None and u.lo <= arc.pos <= u.hi
        child, other = (u, w) if in_left else (w, u)

        hint = None
        if two:
            if piece is v.xw and not in_left and v.xu is not None:
                hint = (v.xu, piece.prev, v.split)
            elif piece is v.xu and in_left and v.xw is not None:
                b = v.xw
                x0 = piece.xl
                while b.prev is not None and b.xl > x0:
                    b = b.prev
                hint = (piece.prev, b, x0)

        if child.arc is arc:
            child_empty = True
        else:
            child.on_path = True
            child_empty = self._delete(child, arc)
            child.on_path = False

        if child_empty:
            if in_left:
                v.left = None
            else:
                v.right = None
            if other is None:
                return True
            v.head, v.tail = other.head, other.tail
            other.head = other.tail = None
            v.xu = v.xw = None
            v.split = None
        elif two:
            if piece is v.xu or piece is v.xw or v.xw is None:
                if hint is not None:
                    a0, b0, x0 = hint
                    res = _find_split(u.head, u.tail, w.head, a0, b0, x0)
                else:
                    res = _find_split(u.head, u.tail, w.head)
                self._merge(v, *res)
            else:
                self._merge(v, v.split, v.xu, v.xw)
        else:
            v.head, v.tail = child.head, child.tail
            child.head = child.tail = None

        if on_v:
            p = pv.next if pv is not None else v.head
            moved = 0
            while p is not None and p is not nv:
                if not p.home.on_path:
                    p.home = v
                    moved += 1
                p = p.next
            self.moved_up_counter += moved
        return False

    # -- inspection ---------------------------------------------------

    def root_pieces(self):
        """Root envelope as ``[(arc, xl, xr), ...]`` in left-to-right order."""
        if self.root is None:
            return []
        return [(p.arc, p.xl, p.xr) for p in self.root.chain()]

    def evaluate(self, xs):
        """Envelope height and owning arc id at each x (None where undefined)."""
        pieces = self.root_pieces()
        rights = [r for _, _, r in pieces]
        out = []
        for x in xs:
            hit = None
            j = bisect.bisect_left(rights, x)
            while j < len(pieces) and pieces[j][1] <= x:
                if pieces[j][2] >= x:
                    hit = pieces[j][0]
                    break
                j += 1
            out.append((hit.y(x), hit.id) if hit is not None else (math.inf, None))
        return out

    def nodes(self):
        out = []
        stack = [self.root] if self.root is not None else []
        while stack:
            v = stack.pop()
            out.append(v)
            for c in (v.left, v.right):
                if c is not None:
                    stack.append(c)
        return out

    def subtree_arcs(self, v):
        return [a for a in self.arcs[v.lo:v.hi + 1] if a.alive]

    def storage_counts(self):
        """Map arc id -> number of node chains holding a piece of it."""
        counts = {}
        for v in self.nodes():
            for p in v.chain():
                counts[p.arc.id] = counts.get(p.arc.id, 0) + 1
        return counts

    def __len__(self):
        return self.live_count


def build_envelope_tree(arcs):
    return EnvelopeTree(arcs)


def envelope_query(tree, p):
    return tree.query(p[0], p[1])


def envelope_delete(tree, arc_id):
    return tree.delete(arc_id)
