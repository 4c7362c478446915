"""Positive definite binary quadratic forms and their class groups.

Forms a*x^2 + b*x*y + c*y^2 are stored as integer triples.  Proper
(SL_2) classes are named by the unique reduced representative with
|b| <= a <= c and b >= 0 whenever |b| = a or a = c; a GL_2 class is the
set {class, opposite class}.  Group structure is computed only for
primitive forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def content(self) -> int:
        return gcd(gcd(abs(self.a), abs(self.b)), abs(self.c))

    @property
    def is_primitive(self) -> bool:
        return self.content() == 1

    @property
    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc < 0

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def transform(self, m11: int, m12: int, m21: int, m22: int) -> "QuadForm":
        """Substitute (x, y) -> (m11 x + m12 y, m21 x + m22 y)."""
        a, b, c = self.a, self.b, self.c
        na = a * m11 * m11 + b * m11 * m21 + c * m21 * m21
        nc = a * m12 * m12 + b * m12 * m22 + c * m22 * m22
        nb = 2 * a * m11 * m12 + b * (m11 * m22 + m12 * m21) + 2 * c * m21 * m22
        return QuadForm(na, nb, nc)

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True


def opposite(q: QuadForm) -> QuadForm:
    return QuadForm(q.a, -q.b, q.c)


def reduce(q: QuadForm) -> QuadForm:
    """Gauss reduction to the canonical proper-class representative."""
    if not q.is_positive_definite:
        raise ValueError("form is not positive definite")
    a, b, c = q.a, q.b, q.c
    while True:
        if a > c:
            a, b, c = c, -b, a
            continue
        if b <= -a or b > a:
            # shift b into (-a, a], keeping the class
            nb = (b + a) % (2 * a) - a
            if nb == -a:
                nb = a
            c += (nb * nb - b * b) // (4 * a)
            b = nb
            continue
        break
    if b < 0 and (a == -b or a == c):
        b = -b
    out = QuadForm(a, b, c)
    assert out.disc == q.disc
    return out


@dataclass(frozen=True, order=True)
class FormClass:
    """Proper equivalence class, carried by its reduced representative."""

    form: QuadForm

    @classmethod
    def of(cls, q: QuadForm) -> "FormClass":
        return cls(reduce(q))

    @property
    def disc(self) -> int:
        return self.form.disc

    @property
    def is_primitive(self) -> bool:
        return self.form.is_primitive

    def opposite(self) -> "FormClass":
        return FormClass.of(opposite(self.form))

    def triple(self) -> tuple[int, int, int]:
        return (self.form.a, self.form.b, self.form.c)


def principal_form(disc: int) -> QuadForm:
    if disc % 4 == 0:
        return QuadForm(1, 0, -disc // 4)
    if disc % 4 == 1 or disc % 4 == -3:
        return QuadForm(1, 1, (1 - disc) // 4)
    raise ValueError("not a discriminant")


def _coprime_rep(q: QuadForm, m: int) -> QuadForm:
    """A properly equivalent form whose leading coefficient is prime to m.

    Walks primitive coordinate pairs in shells of growing sup-norm and takes
    the first hit, so the choice is deterministic.
    """
    if gcd(q.a, m) == 1:
        return q
    for shell in range(1, 64):
        for x in range(-shell, shell + 1):
            for y in range(-shell, shell + 1):
                if max(abs(x), abs(y)) != shell:
                    continue
                if gcd(x, y) != 1:
                    continue
                val = q(x, y)
                if val != 0 and gcd(val, m) == 1:
                    g, s, t = _ext_gcd(x, y)
                    # det [[x, -t], [y, s]] = x s + y t = 1
                    return q.transform(x, -t, y, s)
    raise ArithmeticError("no represented value coprime to target found")


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def compose(c1: FormClass, c2: FormClass) -> FormClass:
    """Gauss composition of proper classes of the same discriminant.

    The second form is first rebased so the leading coefficients are
    coprime; a middle coefficient congruent to both then exists by CRT and
    (a1*a2, B, (B^2-D)/(4*a1*a2)) represents the composed class.  The
    smallest admissible CRT lift is taken, so the computation is
    deterministic.
    """
    if c1.disc != c2.disc:
        raise ValueError("discriminants differ")
    if not (c1.is_primitive and c2.is_primitive):
        raise ValueError("composition needs primitive classes")
    f1 = c1.form
    f2 = _coprime_rep(c2.form, c1.form.a)
    a1, b1 = f1.a, f1.b
    a2, b2 = f2.a, f2.b
    assert gcd(a1, a2) == 1
    # solve B = b1 + 2 a1 t == b2 (mod 2 a2); b1, b2 share the parity of D
    g, inv, _ = _ext_gcd(a1 % a2 if a2 > 1 else 0, a2)
    if a2 == 1:
        t = 0
    else:
        assert g == 1
        t = (inv * ((b2 - b1) // 2)) % a2
    B = b1 + 2 * a1 * t
    D = c1.disc
    A = a1 * a2
    num = B * B - D
    assert num % (4 * A) == 0
    return FormClass.of(QuadForm(A, B, num // (4 * A)))


def gl2_class(c: FormClass) -> frozenset[FormClass]:
    return frozenset((c, c.opposite()))


@dataclass(frozen=True)
class ClassGroup:
    """Form class group of a negative discriminant, with composition table."""

    disc: int
    classes: tuple[FormClass, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.classes)

    def index_of(self, c: FormClass) -> int:
        try:
            return self._index()[c]
        except KeyError:
            raise ValueError(f"{c} is not a primitive class of disc {self.disc}")

    def _index(self) -> dict[FormClass, int]:
        d = getattr(self, "_index_cache", None)
        if d is None:
            d = {c: i for i, c in enumerate(self.classes)}
            object.__setattr__(self, "_index_cache", d)
        return d

    def inverse(self, i: int) -> int:
        row = self.table[i]
        return row.index(self.identity)

    def squares(self) -> tuple[int, ...]:
        return tuple(sorted({self.table[i][i] for i in range(self.order)}))

    def to_json_dict(self) -> dict:
        return {
            "disc": self.disc,
            "forms": [list(c.triple()) for c in self.classes],
            "table": [list(r) for r in self.table],
            "genera": [list(g) for g in genus_partition(self).genera],
        }


def class_group(disc: int) -> ClassGroup:
    """Enumerate reduced primitive forms of the discriminant and compose them."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("not a negative discriminant")
    forms = []
    amax = isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == -b or a == c):
                continue
            q = QuadForm(a, b, c)
            if q.is_primitive:
                forms.append(FormClass(q))
    forms.sort()
    table = tuple(
        tuple(forms.index(compose(ci, cj)) for cj in forms) for ci in forms
    )
    ident = forms.index(FormClass.of(principal_form(disc)))
    return ClassGroup(disc=disc, classes=tuple(forms), table=table, identity=ident)


@dataclass(frozen=True)
class GenusPartition:
    """Partition of a class group into cosets of its subgroup of squares."""

    group: ClassGroup
    genera: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.genera)

    def genus_of(self, i: int) -> int:
        for gi, coset in enumerate(self.genera):
            if i in coset:
                return gi
        raise ValueError("index outside group")

    def genus_of_class(self, c: FormClass) -> int:
        return self.genus_of(self.group.index_of(c))

    @property
    def principal_genus(self) -> int:
        return self.genus_of(self.group.identity)


def genus_partition(group: ClassGroup) -> GenusPartition:
    sq = set(group.squares())
    seen: set[int] = set()
    cosets = []
    for i in range(group.order):
        if i in seen:
            continue
        coset = tuple(sorted(group.table[i][j] for j in sq))
        seen.update(coset)
        cosets.append(coset)
    cosets.sort(key=lambda t: t[0])
    return GenusPartition(group=group, genera=tuple(cosets))
