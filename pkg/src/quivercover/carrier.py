"""Finite k-linear categories presented by hom bases and structure constants.

Every algebra-like object in the package (a bound quiver presentation, a
finite window of its covering, the endomorphism category of a finite
subcategory) implements this interface.  Module theory, resolutions and all
verifiers are written once against it.

A carrier consists of:

* an ordered tuple of objects (hashable keys);
* for each ordered pair (x, y), an ordered basis of the hom space C(x, y),
  addressed by opaque labels;
* structure constants: composition of two basis elements expanded in the
  basis of the target hom space (left-to-right: f in C(x,y) followed by
  g in C(y,z) lands in C(x,z));
* a distinguished generating set of basis elements ("generators", the
  arrows of a quiver) such that every basis element is a word in them;
* validation relations: k-linear combinations of generator words that must
  act as zero on every module.

Right modules are contravariant functors: a generator g: x -> y acts on a
module M by a matrix M(g): M(y) -> M(x) of shape dims(x) x dims(y).
"""

from __future__ import annotations

from .errors import ShapeMismatch
from .field import Field, Mat


class Carrier:
    """Base class; subclasses fill the hom-basis and composition data."""

    field: Field

    # ---- interface to implement ------------------------------------------

    @property
    def objects(self) -> tuple:
        raise NotImplementedError

    def hom_labels(self, x, y) -> tuple:
        """Ordered basis labels of C(x, y)."""
        raise NotImplementedError

    def compose_labels(self, x, y, z, f, g) -> dict:
        """Expansion of f.g (f in C(x,y), g in C(y,z)) over hom_labels(x,z)."""
        raise NotImplementedError

    def identity_combo(self, x) -> dict:
        """The identity of C(x,x) expanded over hom_labels(x,x)."""
        raise NotImplementedError

    @property
    def generators(self) -> tuple:
        """Ordered generator keys."""
        raise NotImplementedError

    def gen_src(self, g):
        raise NotImplementedError

    def gen_tgt(self, g):
        raise NotImplementedError

    def gen_label(self, g):
        """The hom-basis label realizing generator g in C(src, tgt)."""
        raise NotImplementedError

    def label_word(self, x, y, label) -> tuple:
        """A generator word evaluating to the given basis element."""
        raise NotImplementedError

    def validation_relations(self):
        """Iterable of (src, tgt, [(coeff, generator word)]) that modules kill."""
        raise NotImplementedError

    def opposite(self) -> "Carrier":
        raise NotImplementedError

    def opposite_generator_key(self, g):
        """The key of the reversed generator in the opposite carrier."""
        return g

    def opposite_combo(self, x, y, combo: dict) -> dict:
        """Re-express an element of C(x,y) in the opposite carrier's basis of
        C^op(y,x).  Default: hom bases are shared (wrapper opposites)."""
        return combo

    def describe(self) -> str:
        return type(self).__name__

    # covering extras (overridden by carriers with a group action) ----------

    @property
    def is_cover(self) -> bool:
        return False

    def fundamental_domain(self) -> tuple:
        """Objects representing each orbit (all objects when no action)."""
        return self.objects

    # ---- derived helpers ---------------------------------------------------

    def hom_dim(self, x, y) -> int:
        return len(self.hom_labels(x, y))

    def object_index(self, x) -> int:
        return self._object_index_map()[x]

    def _object_index_map(self):
        cache = getattr(self, "_obj_idx", None)
        if cache is None:
            cache = {x: i for i, x in enumerate(self.objects)}
            self._obj_idx = cache
        return cache

    def has_object(self, x) -> bool:
        return x in self._object_index_map()

    def combo_to_vec(self, x, y, combo: dict) -> Mat:
        """Column vector of a hom-space combination over hom_labels(x,y)."""
        labels = self.hom_labels(x, y)
        index = {lab: i for i, lab in enumerate(labels)}
        v = Mat.zeros(self.field, len(labels), 1)
        for lab, c in combo.items():
            if c == 0:
                continue
            if lab not in index:
                raise ShapeMismatch(f"label {lab!r} not in C({x!r},{y!r})")
            v.a[index[lab], 0] = self.field.scalar(c)
        return v

    def compose_combos(self, x, y, z, fc: dict, gc: dict) -> dict:
        out: dict = {}
        for f, cf in fc.items():
            if cf == 0:
                continue
            for g, cg in gc.items():
                if cg == 0:
                    continue
                for lab, c in self.compose_labels(x, y, z, f, g).items():
                    out[lab] = self.field.scalar(out.get(lab, 0) + cf * cg * c)
        return {lab: c for lab, c in out.items() if c != 0}

    def left_mult_mat(self, g, x) -> Mat:
        """Matrix of C(tgt g, x) -> C(src g, x), q |-> g.q (columns in basis order)."""
        s, t = self.gen_src(g), self.gen_tgt(g)
        cols = self.hom_labels(t, x)
        rows = self.hom_labels(s, x)
        index = {lab: i for i, lab in enumerate(rows)}
        m = Mat.zeros(self.field, len(rows), len(cols))
        glab = self.gen_label(g)
        for j, q in enumerate(cols):
            for lab, c in self.compose_labels(s, t, x, glab, q).items():
                m.a[index[lab], j] = self.field.scalar(c)
        return m

    def right_mult_mat(self, x, g) -> Mat:
        """Matrix of C(x, src g) -> C(x, tgt g), q |-> q.g."""
        s, t = self.gen_src(g), self.gen_tgt(g)
        cols = self.hom_labels(x, s)
        rows = self.hom_labels(x, t)
        index = {lab: i for i, lab in enumerate(rows)}
        m = Mat.zeros(self.field, len(rows), len(cols))
        glab = self.gen_label(g)
        for j, q in enumerate(cols):
            for lab, c in self.compose_labels(x, s, t, q, glab).items():
                m.a[index[lab], j] = self.field.scalar(c)
        return m

    def generators_at_source(self, x) -> tuple:
        cache = getattr(self, "_gens_by_src", None)
        if cache is None:
            cache = {}
            for g in self.generators:
                cache.setdefault(self.gen_src(g), []).append(g)
            self._gens_by_src = cache
        return tuple(cache.get(x, ()))

    def generators_at_target(self, x) -> tuple:
        cache = getattr(self, "_gens_by_tgt", None)
        if cache is None:
            cache = {}
            for g in self.generators:
                cache.setdefault(self.gen_tgt(g), []).append(g)
            self._gens_by_tgt = cache
        return tuple(cache.get(x, ()))


class OppositeCarrier(Carrier):
    """The opposite category of any carrier, sharing labels and generator keys.

    C^op(x,y) uses the basis labels of C(y,x); generator keys are reused with
    source and target exchanged.
    """

    def __init__(self, base: Carrier):
        self.base = base
        self.field = base.field

    @property
    def objects(self) -> tuple:
        return self.base.objects

    def hom_labels(self, x, y) -> tuple:
        return self.base.hom_labels(y, x)

    def compose_labels(self, x, y, z, f, g):
        # f in C^op(x,y) = C(y,x), g in C^op(y,z) = C(z,y); f.g in C^op = g.f in C
        return self.base.compose_labels(z, y, x, g, f)

    def identity_combo(self, x):
        return self.base.identity_combo(x)

    @property
    def generators(self) -> tuple:
        return self.base.generators

    def gen_src(self, g):
        return self.base.gen_tgt(g)

    def gen_tgt(self, g):
        return self.base.gen_src(g)

    def gen_label(self, g):
        return self.base.gen_label(g)

    def label_word(self, x, y, label) -> tuple:
        return tuple(reversed(self.base.label_word(y, x, label)))

    def validation_relations(self):
        for src, tgt, terms in self.base.validation_relations():
            yield tgt, src, [(c, tuple(reversed(word))) for c, word in terms]

    def opposite(self) -> Carrier:
        return self.base

    def describe(self) -> str:
        return f"op({self.base.describe()})"

    @property
    def is_cover(self) -> bool:
        return self.base.is_cover

    def fundamental_domain(self) -> tuple:
        return self.base.fundamental_domain()

    def __getattr__(self, name):
        # covering extras (group, window, twist maps) delegate to the base
        if name in ("group", "window"):
            return getattr(self.base, name)
        raise AttributeError(name)

    def twist_object(self, a, x):
        return self.base.twist_object(a, x)

    def twist_generator(self, a, g):
        return self.base.twist_generator(a, g)
