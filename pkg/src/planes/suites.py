"""Named verification suites.

Each function returns a report dict {check, status, detail} and never
raises on a mathematical failure; exceptions are reserved for broken
inputs.  The registry at the bottom is what the CLI dispatches on.
"""

from __future__ import annotations

import numpy as np

from planes import klein, lattice, mds, qform, repnum
from planes.lattice import enumerate_planes, integer_kernel, orth_complement, plucker_of_basis


def _report(name: str, failures: list, detail: dict) -> dict:
    detail = dict(detail)
    detail["failures"] = failures
    return {"check": name,
            "status": "pass" if not failures else "fail",
            "detail": detail}


def check_r24(dmax: int = 500) -> dict:
    """Closed formula against both enumerations, d up to dmax."""
    lattice.warm_cache(dmax)
    repnum.warm_sphere_cache(dmax)
    failures = []
    for d in range(1, dmax + 1):
        formula = repnum.r24_formula(d)
        try:
            oracle = repnum.r24_oracle(d)
        except repnum.OracleMismatchError as exc:
            failures.append({"d": d, "plucker": exc.plucker_count,
                             "klein": exc.klein_count})
            continue
        if formula != oracle:
            failures.append({"d": d, "formula": formula, "oracle": oracle})
        admissible = d % 16 not in (0, 7, 12, 15)
        if admissible != (oracle > 0):
            failures.append({"d": d, "admissible": admissible, "count": oracle})
    return _report("r24", failures[:20], {"dmax": dmax, "checked": dmax})


def check_klein(nmax: int = 200) -> dict:
    """Plane-to-pair map is a bijection onto the characterized pair set."""
    repnum.warm_sphere_cache(nmax)
    failures = []
    for n in range(1, nmax + 1):
        planes = enumerate_planes(n)
        pairs = set(klein.pairs_for_norm(n))
        images = set()
        for plane in planes:
            kp = klein.klein_map(plane)
            t1, t2 = kp.a1.vec3(), kp.a2.vec3()
            if any((a - b) % 2 for a, b in zip(t1, t2)):
                failures.append({"n": n, "pair": [t1, t2], "why": "parity"})
            elif not klein.pair_primitive(t1, t2):
                failures.append({"n": n, "pair": [t1, t2], "why": "primitivity"})
            images.add((t1, t2))
        if len(images) != len(planes) or images != pairs:
            failures.append({"n": n, "planes": len(planes),
                             "distinct_images": len(images), "pairs": len(pairs)})
    return _report("klein", failures[:20], {"nmax": nmax})


def check_orth(nmax: int = 200) -> dict:
    """Coordinate-shuffle complement against the actual integer kernel."""
    failures = []
    for n in range(1, nmax + 1):
        for plane in enumerate_planes(n):
            u, v = plane.basis
            ker = integer_kernel([list(u), list(v)])
            direct = plucker_of_basis(ker[0], ker[1]).sign_normalized()
            formula = orth_complement(plane.plucker)
            comp = plane.orthogonal_complement()
            if direct.coords != formula.coords:
                failures.append({"n": n, "plucker": plane.plucker.coords,
                                 "kernel": direct.coords,
                                 "shuffle": formula.coords})
            if comp.disc != plane.disc:
                failures.append({"n": n, "disc": plane.disc,
                                 "complement_disc": comp.disc})
    return _report("orth", failures[:20], {"nmax": nmax})


def check_local_identity(order: int = 20) -> dict:
    return mds.verify_local_identity(order=order)


def check_p_local(fmax: int = 99) -> dict:
    """Divisor-sum and Euler-product square-part series, term by term."""
    sub = [mds.f_sum_check(d0, fmax) for d0 in (3, 11, 19)]
    failures = [r["detail"] for r in sub if r["status"] != "pass"]
    return _report("p-local", failures, {"fmax": fmax, "d0": [3, 11, 19]})


def _class_number(disc: int, cache: dict = {}) -> int:
    if disc not in cache:
        cache[disc] = qform.class_group(disc).order
    return cache[disc]


def check_class_number(dmax: int = 200) -> dict:
    """Three-squares counts against class numbers on both branches."""
    failures = []
    for d0 in range(4, dmax + 1):
        if not repnum.is_squarefree(d0):
            continue
        if d0 % 8 == 3:
            expected = 24 * _class_number(-d0)
        elif d0 % 4 in (1, 2):
            expected = 12 * _class_number(-4 * d0)
        else:
            continue
        if repnum.r3(d0) != expected:
            failures.append({"d0": d0, "r3": repnum.r3(d0),
                             "class_number_prediction": expected})
    return _report("class-number", failures, {"dmax": dmax, "min_d0": 4})


def check_l_value(dmax: int = 200) -> dict:
    failures = []
    worst = 0.0
    for d0 in range(11, dmax + 1, 8):
        if not repnum.is_squarefree(d0):
            continue
        rep = mds.l_value_check(d0)
        worst = max(worst, rep["detail"]["abs_diff"])
        if rep["status"] != "pass":
            failures.append(rep["detail"])
    return _report("l-value", failures, {"dmax": dmax, "worst_abs_diff": worst})


def check_gauss_genus(nmax: int = 200) -> dict:
    """All forms orthogonal to norm-n vectors land in a single genus."""
    failures = []
    for n in range(1, nmax + 1):
        if n % 4 not in (1, 2) or not repnum.is_squarefree(n):
            continue
        partition = qform.genus_partition(qform.class_group(-4 * n))
        genera = set()
        for v in repnum.sphere_points(n):
            cls = next(iter(klein.gauss_map(tuple(int(c) for c in v))))
            genera.add(partition.genus_of_class(cls))
        if len(genera) != 1:
            failures.append({"n": n, "distinct_genera": len(genera)})
    return _report("gauss-genus", failures, {"nmax": nmax})


def _legendre_grid_ok(plane, pair) -> bool:
    from planes.quaternion import Quaternion

    us = [Quaternion.from_vec4(b) for b in plane.basis]
    comp = plane.orthogonal_complement()
    ws = [Quaternion.from_vec4(b) for b in comp.basis]
    rng = np.arange(-3, 4)
    cc = np.stack(np.meshgrid(rng, rng, indexing="ij"), axis=-1).reshape(-1, 2)
    gram_l = np.array(plane.gram)
    gram_w = np.array(comp.gram)
    q_u = np.einsum("ia,ab,ib->i", cc, gram_l, cc)
    q_w = np.einsum("ia,ab,ib->i", cc, gram_w, cc)
    for which in (1, 2):
        gens = np.empty((2, 2, 3), dtype=np.int64)
        for a in range(2):
            for b in range(2):
                prod = us[a] * ws[b].conj() if which == 1 else us[a].conj() * ws[b]
                gens[a, b] = (prod.x1, prod.x2, prod.x3)
        vec = np.einsum("ia,jb,abk->ijk", cc, cc, gens)
        if not np.array_equal((vec ** 2).sum(axis=2), np.outer(q_u, q_w)):
            return False
    return True


def check_comp_ort(nmax: int = 150) -> dict:
    """Image lattices of the two multiplication maps, and the norm identity."""
    failures = []
    for n in range(5, nmax + 1, 4):
        if not repnum.is_squarefree(n):
            continue
        for plane in enumerate_planes(n):
            pair = klein.klein_map(plane)
            ok = True
            for which, a in ((1, pair.a1), (2, pair.a2)):
                img = klein.mu_image(plane, which)
                expected = klein.orthogonal_lattice_z3(a.vec3())
                expected = tuple(tuple(r) for r in lattice.row_hnf([list(r) for r in expected]))
                if img != expected:
                    failures.append({"n": n, "which": which,
                                     "image": img, "orthogonal": expected})
                    ok = False
            if ok and not _legendre_grid_ok(plane, pair):
                failures.append({"n": n, "plucker": plane.plucker.coords,
                                 "why": "norm identity on grid"})
    return _report("comp-ort", failures[:20], {"nmax": nmax})


def check_pair_genus(nmax: int = 150) -> dict:
    """Observed (plane form, complement form) pairs equal the genus rule."""
    failures = []
    for n in range(5, nmax + 1, 4):
        if not repnum.is_squarefree(n):
            continue
        group, partition, target = klein.genus_context(n)
        observed = set()
        for plane in enumerate_planes(n):
            c1 = qform.FormClass.of(qform.QuadForm(*plane.binary_form()))
            c2 = qform.FormClass.of(
                qform.QuadForm(*plane.orthogonal_complement().binary_form()))
            observed.add((c1, c2))
        predicted = {
            (c1, c2)
            for c1 in group.classes for c2 in group.classes
            if partition.genus_of_class(qform.compose(c1, c2)) == target
        }
        if observed != predicted:
            failures.append({"n": n, "observed": len(observed),
                             "predicted": len(predicted)})
    return _report("pair-genus", failures, {"nmax": nmax})


def check_genus_structure(nmax: int = 300) -> dict:
    """Genus count equals the index of the squares and is a power of two."""
    failures = []
    for n in range(1, nmax + 1):
        group = qform.class_group(-4 * n)
        partition = qform.genus_partition(group)
        count = partition.count
        index = group.order // len(group.squares())
        if count != index or count & (count - 1):
            failures.append({"n": n, "genera": count, "index": index})
    return _report("genus-structure", failures, {"nmax": nmax})


def check_global_identity(w: float = 4.0, dmax: int = 200,
                          prime_cutoff: int = 10 ** 4) -> dict:
    return mds.rs3_identity_numeric(w, dmax, prime_cutoff)


SUITES = {
    "r24": check_r24,
    "klein": check_klein,
    "orth": check_orth,
    "local-identity": check_local_identity,
    "p-local": check_p_local,
    "class-number": check_class_number,
    "l-value": check_l_value,
    "gauss-genus": check_gauss_genus,
    "comp-ort": check_comp_ort,
    "pair-genus": check_pair_genus,
    "genus-structure": check_genus_structure,
    "global-identity": check_global_identity,
}


def run_suite(name: str, **overrides) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](**overrides)


def run_all(**overrides) -> list[dict]:
    out = []
    for name, fn in SUITES.items():
        kwargs = {}
        if name == "r24" and "dmax" in overrides:
            kwargs["dmax"] = overrides["dmax"]
        out.append(fn(**kwargs))
    return out
