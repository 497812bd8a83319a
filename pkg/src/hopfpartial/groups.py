"""Finite groups, subsets, and scalar 2-cocycle tables."""

from __future__ import annotations

from itertools import permutations, product

from .scalars import Cyclo


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by labels and a full multiplication table."""

    __slots__ = ("labels", "table", "order", "identity", "inv", "name")

    def __init__(self, labels, table, name="", check=True):
        self.labels = tuple(labels)
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.labels)
        self.name = name or "group"
        if check:
            self._check_axioms()
        self.identity = self._find_identity()
        self.inv = tuple(self._find_inverse(i) for i in range(self.order))

    def _check_axioms(self):
        n = len(self.labels)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise GroupError("multiplication table shape mismatch")
        for row in self.table:
            for v in row:
                if not 0 <= v < n:
                    raise GroupError("table entry out of range")
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                for k in range(n):
                    if self.table[ij][k] != self.table[i][self.table[j][k]]:
                        raise GroupError(
                            f"associativity fails at ({self.labels[i]},"
                            f"{self.labels[j]},{self.labels[k]})"
                        )

    def _find_identity(self):
        for e in range(self.order):
            if all(self.table[e][i] == i and self.table[i][e] == i for i in range(self.order)):
                return e
        raise GroupError("no identity element")

    def _find_inverse(self, i):
        e = self.identity
        for j in range(self.order):
            if self.table[i][j] == e and self.table[j][i] == e:
                return j
        raise GroupError(f"no inverse for {self.labels[i]}")

    def mult(self, i, j):
        return self.table[i][j]

    def inverse(self, i):
        return self.inv[i]

    def index_of(self, label):
        return self.labels.index(label)

    def regular_permutations(self):
        """Left regular embedding: for each g the permutation i -> g*i."""
        return [tuple(self.table[g][i] for i in range(self.order)) for g in range(self.order)]

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- constructors --------------------------------------------------------

    @staticmethod
    def trivial():
        return FiniteGroup(("e",), ((0,),), name="1")

    @staticmethod
    def cyclic(n):
        labels = ["e"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return FiniteGroup(labels, table, name=f"C{n}")

    @staticmethod
    def klein_four():
        labels = ("e", "a", "b", "ab")
        # indices behave like bit vectors under xor
        table = [[i ^ j for j in range(4)] for i in range(4)]
        return FiniteGroup(labels, table, name="klein4")

    @staticmethod
    def symmetric(n):
        elems = sorted(permutations(range(n)))
        index = {p: i for i, p in enumerate(elems)}
        table = [
            [index[tuple(p[q[i]] for i in range(n))] for q in elems]
            for p in elems
        ]
        labels = ["".join(str(x) for x in p) for p in elems]
        return FiniteGroup(labels, table, name=f"S{n}")

    @staticmethod
    def quaternion():
        # units {+-1, +-i, +-j, +-k} encoded as (symbol, sign)
        syms = ["1", "i", "j", "k"]
        rules = {
            ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
            ("i", "1"): ("i", 1), ("j", "1"): ("j", 1), ("k", "1"): ("k", 1),
            ("i", "i"): ("1", -1), ("j", "j"): ("1", -1), ("k", "k"): ("1", -1),
            ("i", "j"): ("k", 1), ("j", "i"): ("k", -1),
            ("j", "k"): ("i", 1), ("k", "j"): ("i", -1),
            ("k", "i"): ("j", 1), ("i", "k"): ("j", -1),
        }
        elems = [(s, sg) for s in syms for sg in (1, -1)]
        index = {e: i for i, e in enumerate(elems)}
        table = []
        for s1, g1 in elems:
            row = []
            for s2, g2 in elems:
                s, g = rules[(s1, s2)]
                row.append(index[(s, g * g1 * g2)])
            table.append(row)
        labels = [("" if g == 1 else "-") + s for s, g in elems]
        return FiniteGroup(labels, table, name="Q8")

    @staticmethod
    def direct_product(g1, g2):
        n1, n2 = g1.order, g2.order
        labels = [f"{a}|{b}" for a in g1.labels for b in g2.labels]
        table = []
        for i1 in range(n1):
            for i2 in range(n2):
                row = []
                for j1 in range(n1):
                    for j2 in range(n2):
                        row.append(g1.table[i1][j1] * n2 + g2.table[i2][j2])
                table.append(row)
        return FiniteGroup(labels, table, name=f"{g1.name}x{g2.name}")

    @staticmethod
    def preset(name):
        name = name.lower()
        if name in ("1", "trivial"):
            return FiniteGroup.trivial()
        if name == "z2":
            return FiniteGroup.cyclic(2)
        if name.startswith("z") and name[1:].isdigit():
            return FiniteGroup.cyclic(int(name[1:]))
        if name == "klein4":
            return FiniteGroup.klein_four()
        if name == "s3":
            return FiniteGroup.symmetric(3)
        if name == "s4":
            return FiniteGroup.symmetric(4)
        if name == "q8":
            return FiniteGroup.quaternion()
        raise GroupError(f"unknown group preset {name!r}")

    def to_json(self):
        return {"labels": list(self.labels), "table": [list(r) for r in self.table], "name": self.name}

    @staticmethod
    def from_json(obj):
        return FiniteGroup(obj["labels"], obj["table"], name=obj.get("name", ""))


class GroupSubset:
    """A nonempty subset of a group, with a computed is_subgroup flag."""

    __slots__ = ("group", "members", "is_subgroup")

    def __init__(self, group, members):
        members = tuple(sorted(set(members)))
        if not members:
            raise GroupError("subset must be nonempty")
        for m in members:
            if not 0 <= m < group.order:
                raise GroupError("subset member out of range")
        self.group = group
        self.members = members
        self.is_subgroup = self._closed()

    def _closed(self):
        s = set(self.members)
        if self.group.identity not in s:
            return False
        for i in s:
            if self.group.inv[i] not in s:
                return False
            for j in s:
                if self.group.table[i][j] not in s:
                    return False
        return True

    @staticmethod
    def from_labels(group, labels):
        return GroupSubset(group, [group.index_of(x) for x in labels])

    def __contains__(self, i):
        return i in set(self.members)

    def __repr__(self):
        names = ",".join(self.group.labels[i] for i in self.members)
        return f"GroupSubset({{{names}}}, subgroup={self.is_subgroup})"


class GroupCocycleTable:
    """Scalar table gamma: G x G -> k^*, with the 2-cocycle law checkable."""

    __slots__ = ("group", "values")

    def __init__(self, group, values):
        self.group = group
        self.values = {}
        n = group.order
        for i in range(n):
            for j in range(n):
                v = values[(i, j)]
                if v.is_zero():
                    raise GroupError("cocycle values must be nonzero")
                self.values[(i, j)] = v

    def __call__(self, i, j):
        return self.values[(i, j)]

    def cocycle_witness(self):
        """First (x,y,z) violating gamma(x,y)gamma(xy,z) = gamma(x,yz)gamma(y,z)."""
        g = self.group
        for x in range(g.order):
            for y in range(g.order):
                xy = g.table[x][y]
                gxy = self.values[(x, y)]
                for z in range(g.order):
                    lhs = gxy * self.values[(xy, z)]
                    rhs = self.values[(x, g.table[y][z])] * self.values[(y, z)]
                    if lhs != rhs:
                        return (x, y, z)
        return None

    def is_cocycle(self):
        return self.cocycle_witness() is None

    def is_normalized(self):
        e = self.group.identity
        one = Cyclo.one()
        return all(
            self.values[(g, e)] == one and self.values[(e, g)] == one
            for g in range(self.group.order)
        )

    def is_coboundary(self, root_order=None):
        """Exhaustive search for phi: G -> mu_K with gamma = d(phi).

        K defaults to 2|G|.  phi(identity) is pinned to 1 (forced whenever
        gamma is normalized), and assignments are scanned in lexicographic
        exponent order, so the result and any witness are reproducible.
        Returns (found, phi_exponents or None).
        """
        g = self.group
        n = g.order
        K = root_order or 2 * n
        roots = [Cyclo.zeta(K, k) for k in range(K)]
        e = g.identity
        others = [i for i in range(n) if i != e]
        for assign in product(range(K), repeat=len(others)):
            phi = [None] * n
            phi[e] = roots[0]
            for i, k in zip(others, assign):
                phi[i] = roots[k]
            ok = True
            for x in range(n):
                for y in range(n):
                    if self.values[(x, y)] * phi[g.table[x][y]] != phi[x] * phi[y]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                expo = [0] * n
                for i, k in zip(others, assign):
                    expo[i] = k
                return True, expo
        return False, None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def trivial(group):
        one = Cyclo.one()
        return GroupCocycleTable(group, {(i, j): one for i in range(group.order) for j in range(group.order)})

    @staticmethod
    def coboundary(group, phi_values):
        """d(phi)(g,s) = phi(g) phi(s) / phi(gs) for a given list of scalars."""
        vals = {}
        for i in range(group.order):
            for j in range(group.order):
                vals[(i, j)] = phi_values[i] * phi_values[j] / phi_values[group.table[i][j]]
        return GroupCocycleTable(group, vals)

    @staticmethod
    def klein_cocycle(group=None):
        """The non-coboundary Klein-four cocycle with values in {1,-1}.

        gamma(a,a)=gamma(a,ab)=gamma(b,a)=gamma(b,b)=gamma(ab,b)=gamma(ab,ab)=-1
        and gamma(a,b)=gamma(b,ab)=gamma(ab,a)=1, normalized on the identity.
        """
        group = group or FiniteGroup.klein_four()
        one = Cyclo.one()
        neg = Cyclo.zeta(2)
        idx = {lbl: group.index_of(lbl) for lbl in ("e", "a", "b", "ab")}
        vals = {}
        for i in range(4):
            for j in range(4):
                vals[(i, j)] = one
        for g, s in (("a", "a"), ("a", "ab"), ("b", "a"), ("b", "b"), ("ab", "b"), ("ab", "ab")):
            vals[(idx[g], idx[s])] = neg
        return GroupCocycleTable(group, vals)

    def to_json(self):
        return {
            "group": self.group.to_json(),
            "values": [[i, j, v.to_json()] for (i, j), v in sorted(self.values.items())],
        }

    @staticmethod
    def from_json(obj):
        group = FiniteGroup.from_json(obj["group"])
        vals = {(int(i), int(j)): Cyclo.from_json(v) for i, j, v in obj["values"]}
        return GroupCocycleTable(group, vals)
