"""Sparse exact row reduction.

A Subspace is kept in canonical reduced row echelon form over an exact
field (rationals or CycScalar): one row per pivot, the pivot is the
smallest coordinate of its row with coefficient 1, and no row's support
meets another row's pivot.  The canonical form is unique for a given
subspace and coordinate order, so equality of subspaces is equality of
the row dictionaries.

Rows are sparse dicts {coordinate: scalar}.  The ideals handled here
have small colength, so after full reduction every tail is supported on
the few non-pivot coordinates; insertion and membership stay cheap even
when the subspace itself is nearly the whole ambient space.
"""


def axpy(y, x, c):
    """y += c*x in place on sparse dicts; drops cancelled entries."""
    for k, v in x.items():
        s = y.get(k)
        if s is None:
            y[k] = c * v
        else:
            s = s + c * v
            if s:
                y[k] = s
            else:
                del y[k]


def scale(x, c):
    return {k: c * v for k, v in x.items()}


class Subspace:
    __slots__ = ("rows", "_occ")

    def __init__(self):
        self.rows = {}
        self._occ = {}

    @classmethod
    def from_rows(cls, rows):
        self = cls()
        for r in rows:
            self.insert(r)
        return self

    @property
    def dim(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def copy(self):
        other = Subspace()
        other.rows = {p: dict(r) for p, r in self.rows.items()}
        other._occ = {c: set(s) for c, s in self._occ.items()}
        return other

    def reduce(self, vec):
        """Residual of vec modulo the subspace (vec is not mutated).

        Tails only contain coordinates above their pivot, so a single
        ascending elimination pass terminates.
        """
        r = {k: v for k, v in vec.items() if v}
        out = {}
        rows = self.rows
        while r:
            p = min(r)
            row = rows.get(p)
            if row is None:
                out[p] = r.pop(p)
            else:
                c = r.pop(p)
                for k, v in row.items():
                    if k == p:
                        continue
                    s = r.get(k)
                    if s is None:
                        r[k] = -c * v
                    else:
                        s = s - c * v
                        if s:
                            r[k] = s
                        else:
                            del r[k]
        return out

    def contains(self, vec):
        return not self.reduce(vec)

    def insert(self, vec):
        """Add vec to the span; returns the new pivot, or None if dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        p = min(r)
        inv = 1 / r[p]
        row = {k: v * inv for k, v in r.items()}
        occ = self._occ
        holders = occ.pop(p, None)
        if holders:
            for q in holders:
                row_q = self.rows[q]
                c = row_q.pop(p)
                for k, v in row.items():
                    if k == p:
                        continue
                    s = row_q.get(k)
                    if s is None:
                        row_q[k] = -c * v
                        occ.setdefault(k, set()).add(q)
                    else:
                        s = s - c * v
                        if s:
                            row_q[k] = s
                        else:
                            del row_q[k]
                            occ[k].discard(q)
        self.rows[p] = row
        for k in row:
            if k != p:
                occ.setdefault(k, set()).add(p)
        return p

    def extend(self, vecs):
        added = 0
        for v in vecs:
            if self.insert(v) is not None:
                added += 1
        return added

    def contains_subspace(self, other):
        if other.dim > self.dim:
            return False
        return all(self.contains(r) for r in other.rows.values())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.rows == other.rows

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def rows_sorted(self):
        return [(p, sorted(self.rows[p].items())) for p in sorted(self.rows)]

    def standard_coords(self, dimension):
        """Non-pivot coordinates: a basis of the quotient by this subspace."""
        return [i for i in range(dimension) if i not in self.rows]

    def __repr__(self):
        return f"Subspace(dim={self.dim})"


def intersect(u, w):
    """Intersection of two subspaces.

    Residues modulo w live on w's few non-pivot coordinates, so the
    elimination below runs on short vectors even for large u, w.
    """
    out = Subspace()
    elim = {}
    for p in sorted(u.rows):
        vec = dict(u.rows[p])
        res = w.reduce(vec)
        while res:
            q = min(res)
            hit = elim.get(q)
            if hit is None:
                inv = 1 / res[q]
                elim[q] = (scale(res, inv), scale(vec, inv))
                vec = None
                break
            c = -res[q]
            axpy(res, hit[0], c)
            axpy(vec, hit[1], c)
        if vec is not None and not res:
            out.insert(vec)
    return out
