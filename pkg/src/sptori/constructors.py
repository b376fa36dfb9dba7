"""Coordinate algebras: quantum tori, Cayley–Dickson doublings, octonion tori, Clifford tori."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import GradedAlgebra, Involution, ga_check_involution, ga_invert_hom, ga_check_kind, division_check
from .errors import InvalidCocycleError, NotAnInvolutionError, NotDivisionError, SpecMismatchError, SptoriError
from .foundations import GroupSpec, Q, ONE, qq, SubgroupDesc, subgroup_generated
from .linalg import axpy, scale


@dataclass(frozen=True)
class CocycleMatrix:
    q: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(tuple(qq(x) for x in row) for row in self.q))

    @property
    def n(self):
        return len(self.q)

    @classmethod
    def from_pairs(cls, n, entries):
        """Build from ``{(i, j): q_ij}`` for i < j (0-based); fills q_ji = 1/q_ij and q_ii = 1."""
        m = [[Q(1)] * n for _ in range(n)]
        for (i, j), v in entries.items():
            v = qq(v)
            m[i][j] = v
            m[j][i] = 1 / v
        return cls(tuple(tuple(r) for r in m))

    @classmethod
    def trivial(cls, n):
        return cls.from_pairs(n, {})

    def validate(self, spec: GroupSpec):
        n = self.n
        if n != spec.rank:
            raise SpecMismatchError(f"cocycle is {n}x{n} but the group has rank {spec.rank}")
        for i in range(n):
            if len(self.q[i]) != n:
                raise InvalidCocycleError("cocycle matrix is not square", witness=(i, None))
            if self.q[i][i] != 1:
                raise InvalidCocycleError(f"q[{i}][{i}] must be 1", witness=(i, None))
            for j in range(n):
                if self.q[i][j] == 0:
                    raise InvalidCocycleError(f"q[{i}][{j}] is zero", witness=(i, None))
                if self.q[j][i] * self.q[i][j] != 1:
                    raise InvalidCocycleError(f"q[{j}][{i}] is not the inverse of q[{i}][{j}]", witness=(i, j))
        for t, m in enumerate(spec.torsion):
            j = spec.free_rank + t
            for i in range(n):
                if self.q[i][j] ** m != 1:
                    raise InvalidCocycleError(
                        f"q[{i}][{j}]^{m} != 1: incompatible with the order-{m} torsion generator",
                        witness=(i, m),
                    )

    def to_list(self):
        return [[str(x) for x in row] for row in self.q]


def normal_order_cocycle(q, g, h):
    """Scalar tau(g, h) with t^g t^h = tau(g, h) t^(g+h) for normal-ordered monomials."""
    c = ONE
    n = len(g)
    for j in range(n):
        gj = g[j]
        if not gj:
            continue
        for i in range(j):
            e = gj * h[i]
            if e:
                c *= q[j][i] ** e
    return c


def _reversal_scalar(q, a):
    c = ONE
    n = len(a)
    for j in range(n):
        for i in range(j):
            e = a[j] * a[i]
            if e:
                c *= q[j][i] ** e
    return c


def _laurent_label(names):
    def label(g):
        parts = []
        for nm, e in zip(names, g):
            if e == 1:
                parts.append(nm)
            elif e:
                parts.append(f"{nm}^{e}")
        return "*".join(parts) or "1"
    return label


def quantum_torus(spec: GroupSpec, q: CocycleMatrix, name="quantum") -> GradedAlgebra:
    """Twisted group algebra with basis t^g (g a degree) and t^g t^h = tau(g,h) t^(g+h)."""
    if not isinstance(q, CocycleMatrix):
        q = CocycleMatrix(q)
    q.validate(spec)
    Qm = q.q

    def mul(a, b):
        return {spec.add(a, b): normal_order_cocycle(Qm, a, b)}

    names = [f"t{i + 1}" for i in range(spec.rank)]
    keys = spec.elements() if spec.is_finite else None
    alg = GradedAlgebra(
        spec, lambda k: k, mul, keys=keys,
        component=lambda g: [spec.reduce(g)],
        unit={spec.zero: ONE}, kind_claim="associative", name=name, label=_laurent_label(names),
        config={"kind": "quantum", "group": spec.to_dict(), "q": q.to_list()},
    )
    alg.cocycle = q
    return alg


def reversal_involution(qt: GradedAlgebra, signs=None, window=1) -> Involution:
    """sigma(t1^a1...tn^an) = (sn tn)^an ... (s1 t1)^a1, re-normal-ordered."""
    spec = qt.spec
    q = qt.cocycle.q
    n = spec.rank
    signs = tuple(signs) if signs is not None else (1,) * n
    if len(signs) != n or any(s not in (1, -1) for s in signs):
        raise NotAnInvolutionError(f"signs must be +-1, one per generator: {signs}")
    for t, m in enumerate(spec.torsion):
        j = spec.free_rank + t
        if signs[j] == -1 and m % 2:
            raise NotAnInvolutionError(
                f"sign -1 on a generator of odd order {m} is not well defined", witness=(j, m)
            )

    def image(a):
        c = _reversal_scalar(q, a)
        for s, e in zip(signs, a):
            if s == -1 and e % 2:
                c = -c
        return {a: c}

    sigma = Involution(qt, image, name="reversal")
    sigma.signs = signs
    rep = ga_check_involution(qt, sigma, None if qt.is_finite else window)
    if not rep.passed:
        bad = rep.failures()[0]
        raise NotAnInvolutionError(f"reversal map fails {bad.name}", witness=bad.witnesses[0])
    return sigma


def cayley_dickson_double(alg: GradedAlgebra, sigma: Involution, mu: dict, x_degree=None,
                          check_window=1, name=None):
    """Double ``alg`` by a central symmetric invertible homogeneous ``mu``.

    Keys become ``(k, 0)`` (the copy of alg) and ``(k, 1)`` (alg times the new
    generator x, with x^2 = mu).  Product:
    ``(a,b)(c,d) = (ac + mu d sigma(b), sigma(a) d + c b)``; involution
    ``(a,b) -> (sigma(a), -b)``.

    If ``x_degree`` is ``None`` the group gains a Z_2 slot (requires deg mu = 0).
    """
    spec = alg.spec
    win = None if alg.is_finite else check_window
    if not mu or not alg.is_homogeneous(mu):
        raise SptoriError("mu must be a nonzero homogeneous element")
    dmu = alg.degree_of(mu)
    for k in alg.test_keys(win):
        e = {k: ONE}
        if alg.mul(mu, e) != alg.mul(e, mu):
            raise SptoriError(f"mu is not central: fails against {alg.label(k)}", witness=k)
    if sigma(mu) != mu:
        raise SptoriError("mu must be sigma-symmetric")
    if ga_invert_hom(alg, "associative", mu) is None:
        raise SptoriError("mu is not invertible")

    if x_degree is None:
        if any(dmu):
            raise SpecMismatchError("mu has nonzero degree; pass x_degree with 2*x_degree = deg(mu)")
        new_spec = GroupSpec(spec.free_rank, spec.torsion + (2,))

        def lift(g):
            return tuple(g) + (0,)

        xdeg = new_spec.unit_vector(new_spec.rank - 1)

        def base_component(g):
            return alg.component(g[:-1]) if g[-1] == 0 else []
    else:
        xdeg = spec.reduce(x_degree)
        if spec.add(xdeg, xdeg) != dmu:
            raise SpecMismatchError(f"2*{xdeg} != deg(mu) = {dmu}")
        new_spec = spec

        def lift(g):
            return tuple(g)

        base_component = alg.component

    def degree(k):
        base, e = k
        g = lift(alg.degree(base))
        return new_spec.add(g, xdeg) if e else g

    def emb(v, e):
        return {(k, e): c for k, c in v.items()}

    def mul(x, y):
        (a, e1), (c, e2) = x, y
        A, C = {a: ONE}, {c: ONE}
        if not e1 and not e2:
            return emb(alg.mul_basis(a, c), 0)
        if not e1 and e2:
            return emb(alg.mul(sigma.image(a), C), 1)
        if e1 and not e2:
            return emb(alg.mul_basis(c, a), 1)
        return emb(alg.mul(mu, alg.mul(C, sigma.image(a))), 0)

    def component(g):
        g = new_spec.reduce(g)
        out = [(k, 0) for k in base_component(g)]
        out += [(k, 1) for k in base_component(new_spec.sub(g, xdeg))]
        return out

    keys = None
    if alg.is_finite:
        keys = [(k, 0) for k in alg.keys] + [(k, 1) for k in alg.keys]
    depth = getattr(alg, "cd_depth", 0) + 1
    xname = f"x{depth}"

    def label(k):
        base, e = k
        s = alg.label(base)
        if not e:
            return s
        return xname if s == "1" else f"({s})*{xname}"

    new = GradedAlgebra(new_spec, degree, mul, keys=keys, component=component,
                        unit=emb(alg.unit, 0), kind_claim="unconstrained",
                        name=name or f"CD({alg.name})", label=label)
    new.cd_depth = depth
    new.base = alg

    def sig_img(k):
        base, e = k
        if e:
            return {k: -ONE}
        return emb(sigma.image(base), 0)

    new_sigma = Involution(new, sig_img, name="standard")
    return new, new_sigma


def _laurent_base(n, window_scale):
    """Commutative Laurent ring in t1..tn graded by Z^n with t_i (i <= 3) in degree 2e_i."""
    spec = GroupSpec(n)

    def degree(e):
        return tuple(2 * x if i < 3 else x for i, x in enumerate(e))

    def component(g):
        if any(g[i] % 2 for i in range(3)):
            return []
        return [tuple(x // 2 if i < 3 else x for i, x in enumerate(g))]

    def mul(a, b):
        return {tuple(x + y for x, y in zip(a, b)): ONE}

    names = [f"t{i + 1}" for i in range(n)]
    base = GradedAlgebra(spec, degree, mul, component=component, unit={(0,) * n: ONE},
                         kind_claim="associative", name="laurent", label=_laurent_label(names))
    sigma = Involution(base, lambda k: {k: ONE}, name="identity")
    return base, sigma


def octonion_torus(n=3, spec: GroupSpec | None = None):
    """Three Cayley–Dickson doublings of Laurent polynomials by t1, t2, t3 (x_i^2 = t_i)."""
    if n < 3:
        raise SptoriError("the octonion torus needs n >= 3 generators")
    if spec is not None and (spec.free_rank != n or spec.torsion):
        raise SpecMismatchError(f"octonion torus on {n} generators is graded by Z^{n}")
    alg, sigma = _laurent_base(n, 2)
    gspec = GroupSpec(n)
    for i in range(3):
        ti = tuple(1 if j == i else 0 for j in range(n))
        mu = {ti: ONE}
        # mu is a key of the innermost ring; lift it through previous doublings
        for _ in range(i):
            mu = {(k, 0): c for k, c in mu.items()}
        alg, sigma = cayley_dickson_double(alg, sigma, mu, x_degree=gspec.unit_vector(i),
                                           name=f"O{n}" if i == 2 else None)
    alg.kind_claim = "alternative"
    alg.config = {"kind": "octonion", "n": n}
    return alg, sigma


def octonion_generator(alg, i):
    """Key of x_i (i = 1, 2, 3) in an octonion torus."""
    n = alg.spec.rank
    return alg.component(alg.spec.unit_vector(i - 1))[0]


@dataclass
class CliffordData:
    plus_subgroup: SubgroupDesc
    module_degrees: list
    form: dict = field(default_factory=dict)  # (i, j) -> coefficient; zeta(b_i,b_j) = c * t^(d_i+d_j)


def clifford_torus(spec: GroupSpec, data: CliffordData, torus=True, name="clifford"):
    """Jordan algebra A + B, A = Q[H] (H the plus subgroup), B = sum A b_i, b_i b_j = zeta(b_i, b_j)."""
    if not spec.is_finite:
        raise SptoriError("Clifford tori are implemented for finite grading groups")
    H = data.plus_subgroup
    Hel = H.elements()
    dm = [spec.reduce(d) for d in data.module_degrees]
    form = {}
    for (i, j), c in data.form.items():
        c = qq(c)
        if (j, i) in data.form and qq(data.form[(j, i)]) != c:
            raise SptoriError("zeta must be symmetric", witness=(i, j))
        form[(i, j)] = form[(j, i)] = c
    for (i, j), c in form.items():
        if c and not H.contains(spec.add(dm[i], dm[j])):
            raise SptoriError(
                f"zeta(b{i},b{j}) would have degree {spec.add(dm[i], dm[j])} outside the plus subgroup",
                witness=(i, j),
            )
    keys = [("A", h) for h in Hel] + [("B", h, i) for i in range(len(dm)) for h in Hel]

    def degree(k):
        if k[0] == "A":
            return k[1]
        return spec.add(k[1], dm[k[2]])

    def mul(x, y):
        if x[0] == "A" and y[0] == "A":
            return {("A", spec.add(x[1], y[1])): ONE}
        if x[0] == "A":
            return {("B", spec.add(x[1], y[1]), y[2]): ONE}
        if y[0] == "A":
            return {("B", spec.add(x[1], y[1]), x[2]): ONE}
        c = form.get((x[2], y[2]), 0)
        if not c:
            return {}
        h = spec.add(spec.add(x[1], y[1]), spec.add(dm[x[2]], dm[y[2]]))
        return {("A", h): c}

    def label(k):
        s = _laurent_label([f"t{i + 1}" for i in range(spec.rank)])(k[1])
        if k[0] == "A":
            return s
        return f"b{k[2] + 1}" if s == "1" else f"{s}*b{k[2] + 1}"

    alg = GradedAlgebra(spec, degree, mul, keys=keys, unit={("A", spec.zero): ONE},
                        kind_claim="jordan", name=name, label=label,
                        config={"kind": "clifford", "group": spec.to_dict(),
                                "plus_subgroup": [list(g) for g in H.generators],
                                "module": [list(d) for d in dm],
                                "form": [[i, j, str(c)] for (i, j), c in sorted(data.form.items())]})
    sigma = Involution(alg, lambda k: {k: ONE if k[0] == "A" else -ONE}, name="standard")
    if torus:
        ch = division_check(alg, "jordan")
        if ch.status != "pass":
            raise NotDivisionError("Clifford torus is not division graded", witness=ch.witnesses[:1])
    return alg, sigma
