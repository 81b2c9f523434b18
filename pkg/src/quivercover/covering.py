"""The group machinery on module categories: twists, push-down, pull-up,
morphism lifting, and the covering-theoretic verifiers."""

from __future__ import annotations

from dataclasses import dataclass

from .cover import CoverCarrier
from .errors import ShapeMismatch, WindowTooSmall
from .field import Mat
from .homology import ext_dim, min_proj_resolution
from .knitting import list_indecomposables
from .modules import (
    FDModule,
    ModMorphism,
    decompose,
    hom_dim,
    is_indecomposable,
    is_isomorphic,
)
from .report import INDETERMINATE, NOT_APPLICABLE, VerificationReport


# ---------------------------------------------------------------------------
# twisting


def twist_module(M: FDModule, a) -> FDModule:
    """The twist: reindex the support by the action of a."""
    carrier = M.carrier
    if not carrier.is_cover:
        raise ShapeMismatch("twisting needs a covering carrier")
    if carrier.group.is_identity(a):
        return M
    dims = {}
    for x, d in M.dims.items():
        y = carrier.twist_object(a, x)
        if not carrier.in_box(y[1]):
            raise WindowTooSmall(f"twist by {a!r} moves support outside the window")
        dims[y] = d
    mats = {}
    for g, m in M.gen_mats.items():
        mats[carrier.twist_generator(a, g)] = m
    return FDModule(carrier, dims, mats, check_shapes=False)


def twist_morphism(f: ModMorphism, a) -> ModMorphism:
    carrier = f.src.carrier
    src = twist_module(f.src, a)
    tgt = twist_module(f.tgt, a)
    mats = {carrier.twist_object(a, x): m for x, m in f.mats.items()}
    return ModMorphism(src, tgt, mats)


def canonical_orbit_rep(M: FDModule) -> FDModule:
    """Twist so the minimal support shift is the identity (deterministic).

    Keeps orbit representatives away from the window border, so translate
    computations on representatives have room; falls back to the module
    itself when the normalizing twist does not fit."""
    carrier = M.carrier
    if not carrier.is_cover or M.is_zero():
        return M
    shifts = sorted({g for (_, g) in M.support})
    a = carrier.group.inv(shifts[0])
    if carrier.group.is_identity(a):
        return M
    try:
        return twist_module(M, a)
    except WindowTooSmall:
        return M


def orbit_representatives(modules: list) -> list:
    """Canonical twist-orbit representatives of a list of cover modules."""
    reps: list = []
    for M in modules:
        C = canonical_orbit_rep(M)
        if not any(twisted_iso(C, r) is not None for r in reps):
            reps.append(C)
    return reps


def twisted_iso(M: FDModule, N: FDModule):
    """Some a with ^aM ≅ N, or None.  Candidates come from support matching."""
    carrier = M.carrier
    group = carrier.group
    if M.total_dim != N.total_dim:
        return None
    candidates = set()
    for (v, g) in M.support:
        for (w, h) in N.support:
            if v == w:
                candidates.add(group.sub(h, g))
    for a in sorted(candidates):
        try:
            T = twist_module(M, a)
        except WindowTooSmall:
            continue
        if T.dims != N.dims:
            continue
        if is_isomorphic(T, N):
            return a
    return None


# ---------------------------------------------------------------------------
# push-down and pull-up


def _shift_blocks(cover: CoverCarrier, M: FDModule, v):
    """Ordered (shift, dim, offset) blocks of (push-down M)(v)."""
    blocks = []
    off = 0
    for g in cover.window.sorted_elements():
        d = M.dim((v, g))
        if d:
            blocks.append((g, d, off))
            off += d
    return blocks, off


def push_down(M: FDModule) -> FDModule:
    """Sum the module over every orbit of objects; lands over the base."""
    cover = M.carrier
    if not cover.is_cover:
        raise ShapeMismatch("push-down expects a covering module")
    pres = cover.base_presentation
    field = pres.field
    blocks = {}
    dims = {}
    for v in pres.vertices:
        b, total = _shift_blocks(cover, M, v)
        blocks[v] = b
        if total:
            dims[v] = total
    mats = {}
    for a in pres.arrows:
        dv, dw = dims.get(a.src, 0), dims.get(a.tgt, 0)
        if dv == 0 or dw == 0:
            continue
        m = field.zeros(dv, dw)
        col = {g: (d, off) for g, d, off in blocks[a.tgt]}
        for g, d, off in blocks[a.src]:
            h = cover.group.op(g, a.weight)
            if h in col:
                dcol, coff = col[h]
                m[off : off + d, coff : coff + dcol] = M.mat((a.name, g)).a
        mats[a.name] = Mat(field, m)
    return FDModule(pres, dims, mats, check_shapes=False)


def push_down_morphism(f: ModMorphism) -> ModMorphism:
    cover = f.src.carrier
    pres = cover.base_presentation
    field = pres.field
    PX = push_down(f.src)
    PY = push_down(f.tgt)
    mats = {}
    for v in pres.vertices:
        if not PX.dim(v) and not PY.dim(v):
            continue
        sb, _ = _shift_blocks(cover, f.src, v)
        tb, _ = _shift_blocks(cover, f.tgt, v)
        m = field.zeros(PY.dim(v), PX.dim(v))
        trow = {g: (d, off) for g, d, off in tb}
        for g, d, off in sb:
            if g in trow:
                dr, roff = trow[g]
                m[roff : roff + dr, off : off + d] = f.vertex((v, g)).a
        mats[v] = Mat(field, m)
    return ModMorphism(PX, PY, mats)


@dataclass
class PullUp:
    """Window truncation of the pull-up; barred from module computations
    unless the underlying group is finite (no truncation happened)."""

    cover: CoverCarrier
    dims: dict
    truncated: bool
    _gen_mats: dict

    def as_module(self) -> FDModule:
        if self.truncated:
            raise WindowTooSmall(
                "the pull-up of a base module is infinite-dimensional; the window "
                "truncation is not a module and cannot enter Hom/Ext computations"
            )
        return FDModule(self.cover, self.dims, self._gen_mats, check_shapes=False)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())


def pull_up(N: FDModule, cover: CoverCarrier) -> PullUp:
    """The composite with the covering projection, truncated to the window."""
    pres = cover.base_presentation
    if N.carrier is not pres:
        raise ShapeMismatch("pull-up expects a base module for this cover")
    dims = {}
    for (v, g) in cover.objects:
        if N.dim(v):
            dims[(v, g)] = N.dim(v)
    mats = {}
    for gen in cover.generators:
        name, g = gen
        a = pres.arrow(name)
        if N.dim(a.src) and N.dim(a.tgt):
            mats[gen] = N.mat(name)
    return PullUp(cover, dims, not cover.group.is_finite, mats)


# ---------------------------------------------------------------------------
# morphism lifting


@dataclass
class LiftingFamily:
    """Finitely many twists a with morphisms f_a: X -> ^aY assembling theta."""

    pairs: list  # (a, ModMorphism)

    def nonzero(self):
        return [(a, f) for a, f in self.pairs if not f.is_zero()]


def lift_morphism(theta: ModMorphism, X: FDModule, Y: FDModule) -> LiftingFamily:
    """Decompose a morphism of push-downs along the covering.

    theta: push_down(X) -> push_down(Y).  The block structure of theta is cut
    along the shift grading; each piece is verified to be a genuine morphism
    X -> ^aY and the assembly is verified to reproduce theta exactly.  A
    failure aborts: it would signal an internal inconsistency in the covering
    isomorphism.
    """
    cover = X.carrier
    group = cover.group
    pres = cover.base_presentation
    field = pres.field
    candidates = set()
    for v in pres.vertices:
        for g, _, _ in _shift_blocks(cover, X, v)[0]:
            for h, _, _ in _shift_blocks(cover, Y, v)[0]:
                candidates.add(group.sub(g, h))
    pairs = []
    for a in sorted(candidates):
        aY = twist_module(Y, a)  # (^aY)(v,g) = Y(v, g-a)
        mats = {}
        nonzero = False
        for v in pres.vertices:
            xb, _ = _shift_blocks(cover, X, v)
            yb = {g: (d, off) for g, d, off in _shift_blocks(cover, Y, v)[0]}
            for g, d, off in xb:
                h = group.sub(g, a)
                if h not in yb:
                    continue
                dr, roff = yb[h]
                block = Mat(field, theta.vertex(v).a[roff : roff + dr, off : off + d])
                if not block.is_zero():
                    nonzero = True
                mats[(v, g)] = block
        f = ModMorphism(X, aY, mats)
        if nonzero and not f.check():
            raise ShapeMismatch(
                "lifted block is not a morphism; covering data is inconsistent"
            )
        if nonzero:
            pairs.append((a, f))
    # reassemble and compare against theta
    for v in pres.vertices:
        xb, xdim = _shift_blocks(cover, X, v)
        yb, ydim = _shift_blocks(cover, Y, v)
        m = field.zeros(ydim, xdim)
        ylook = {g: (d, off) for g, d, off in yb}
        for a, f in pairs:
            for g, d, off in xb:
                h = group.sub(g, a)
                if h in ylook:
                    dr, roff = ylook[h]
                    m[roff : roff + dr, off : off + d] = f.vertex((v, g)).a
        if not (Mat(field, m) - theta.vertex(v)).is_zero():
            raise ShapeMismatch("lifting family does not reassemble the morphism")
    return LiftingFamily(pairs)


def hom_twist_sum(X: FDModule, Y: FDModule) -> tuple:
    """(sum over a of dim Hom(X, ^aY), contributing twist list)."""
    cover = X.carrier
    group = cover.group
    candidates = set()
    for (v, g) in X.support:
        for (w, h) in Y.support:
            if v == w:
                candidates.add(group.sub(g, h))
    total = 0
    used = []
    for a in sorted(candidates):
        aY = twist_module(Y, a)
        d = hom_dim(X, aY)
        if d:
            used.append(a)
        total += d
    return total, used


def ext_twist_sum(X: FDModule, Y: FDModule, i: int) -> tuple:
    """(sum over a of dim Ext^i(X, ^aY), contributing twist list).

    Twists are cut off by support arithmetic against the first i+2 terms of
    the minimal resolution of X (morphism spaces out of those terms are the
    only carriers of Ext classes)."""
    cover = X.carrier
    group = cover.group
    res = min_proj_resolution(X, i + 1)
    term_support = set()
    for t in res.terms:
        term_support.update(t.support)
    term_support.update(X.support)
    candidates = set()
    for (v, g) in term_support:
        for (w, h) in Y.support:
            if v == w:
                candidates.add(group.sub(g, h))
    total = 0
    used = []
    for a in sorted(candidates):
        aY = twist_module(Y, a)
        d = ext_dim(X, aY, i)
        if d:
            used.append(a)
        total += d
    return total, used


# ---------------------------------------------------------------------------
# verifiers


def _instance_descriptor(carrier, extra=None) -> dict:
    pres = carrier.base_presentation if carrier.is_cover else carrier
    doc = {
        "carrier": carrier.describe(),
    }
    if hasattr(pres, "vertices"):
        doc["vertices"] = list(pres.vertices)
    if extra:
        doc.update(extra)
    return doc


def verify_ext_iso(X: FDModule, Y: FDModule, i: int) -> VerificationReport:
    """dim Ext^i downstairs between push-downs equals the finite twist sum."""
    cover = X.carrier
    down = ext_dim(push_down(X), push_down(Y), i) if i else hom_dim(push_down(X), push_down(Y))
    if i == 0:
        up, used = hom_twist_sum(X, Y)
    else:
        up, used = ext_twist_sum(X, Y, i)
    group = cover.group
    return VerificationReport(
        claim="DILemma",
        instance=_instance_descriptor(
            cover,
            {
                "degree": i,
                "X_dims": sorted((str(k), v) for k, v in X.dims.items()),
                "Y_dims": sorted((str(k), v) for k, v in Y.dims.items()),
            },
        ),
        outcome=(down == up),
        witnesses=[{"downstairs": down, "upstairs_sum": up}],
        caps={"contributing_twists": [group.element_to_json(a) for a in used]},
    )


def verify_indecomposable_preservation(X: FDModule) -> VerificationReport:
    cover = X.carrier
    if not is_indecomposable(X):
        return VerificationReport(
            claim="Corres",
            instance=_instance_descriptor(cover),
            outcome=NOT_APPLICABLE,
            notes=["input is decomposable; the claim only covers indecomposables"],
        )
    parts = decompose(push_down(X))
    ok = len(parts) == 1 and parts[0][1] == 1
    return VerificationReport(
        claim="Corres",
        instance=_instance_descriptor(
            cover, {"X_dims": sorted((str(k), v) for k, v in X.dims.items())}
        ),
        outcome=ok,
        witnesses=[{"pushdown_summands": [(m.total_dim, mult) for m, mult in parts]}],
    )


def orbit_classes(cover: CoverCarrier, modules: list) -> list:
    """Group in-window indecomposables into twist-equivalence classes."""
    classes = []
    for M in modules:
        placed = False
        for entry in classes:
            if twisted_iso(M, entry[0]) is not None:
                entry.append(M)
                placed = True
                break
        if not placed:
            classes.append([M])
    return classes


def verify_orbit_bijection(cover: CoverCarrier, dimcap: int = 48, class_cap: int = 512) -> VerificationReport:
    """Twist-orbit classes upstairs biject with base indecomposables."""
    ups = list_indecomposables(cover, dimcap=dimcap, class_cap=class_cap)
    classes = orbit_classes(cover, ups)
    base = cover.base_presentation
    downs = list_indecomposables(base, dimcap=dimcap, class_cap=class_cap)
    matches = []
    used = set()
    ok = True
    for entry in classes:
        rep = entry[0]
        P = push_down(rep)
        parts = decompose(P)
        if len(parts) != 1 or parts[0][1] != 1:
            ok = False
            matches.append({"class_size": len(entry), "pushdown": "decomposable"})
            continue
        found = None
        for j, D in enumerate(downs):
            if j not in used and is_isomorphic(parts[0][0], D):
                found = j
                break
        if found is None:
            ok = False
            matches.append({"class_size": len(entry), "pushdown": "unmatched"})
        else:
            used.add(found)
            matches.append({"class_size": len(entry), "base_index": found})
    ok = ok and len(classes) == len(downs) and len(used) == len(downs)
    return VerificationReport(
        claim="Corres",
        instance=_instance_descriptor(cover, {"dimcap": dimcap}),
        outcome=ok,
        witnesses=[
            {
                "orbit_classes": len(classes),
                "base_indecomposables": len(downs),
                "matching": matches,
            }
        ],
        caps={"dimcap": dimcap, "class_cap": class_cap},
    )
