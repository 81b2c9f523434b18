"""The endomorphism category of a finite collection of modules, as a carrier.

Objects are the listed modules; hom spaces are their computed hom bases with
the identity arranged as the first basis vector of each endomorphism space;
composition is expanded through exact linear solves.  Modules over this
carrier are exactly finitely presented functors on the subcategory, so the
whole resolution/Ext machinery applies to mod-U unchanged.
"""

from __future__ import annotations

from .carrier import Carrier, OppositeCarrier
from .errors import ShapeMismatch
from .field import Mat, hstack, rref
from .modules import (
    FDModule,
    ModMorphism,
    SubcategorySpec,
    hom_basis,
    identity_morphism,
    morphism_coords,
    validate_module,
)


class EndoCarrier(Carrier):
    """A finite k-category presented by hom bases of a module collection."""

    def __init__(self, modules: list, fundamental: list | None = None):
        if not modules:
            raise ShapeMismatch("endomorphism category needs at least one object")
        self.modules = list(modules)
        self.field = modules[0].carrier.field
        self._fundamental = tuple(fundamental) if fundamental is not None else None
        n = len(self.modules)
        self._objects = tuple(range(n))
        self._bases = {}
        for i, Mi in enumerate(self.modules):
            for j, Mj in enumerate(self.modules):
                basis = hom_basis(Mi, Mj)
                if i == j:
                    basis = self._identity_first(Mi, basis)
                self._bases[(i, j)] = basis
        gens = []
        for i in range(n):
            for j in range(n):
                for k in range(len(self._bases[(i, j)])):
                    if i == j and k == 0:
                        continue
                    gens.append((i, j, k))
        self._generators = tuple(gens)
        self._compose_cache = {}
        self._op = None

    def _identity_first(self, M: FDModule, basis: list) -> list:
        ident = identity_morphism(M)
        coords = morphism_coords(basis, ident)
        if coords is None:
            raise ShapeMismatch("identity not in its own endomorphism space")
        # keep the identity first, then a complement chosen from the basis
        field = self.field
        cols = [coords] + [
            Mat.from_rows(field, [[1 if t == k else 0] for t in range(len(basis))])
            for k in range(len(basis))
        ]
        aug = hstack(cols)
        _, pivots = rref(aug)
        chosen = [ident]
        for p in pivots:
            if p == 0:
                continue
            chosen.append(basis[p - 1])
        if len(chosen) != len(basis):
            raise ShapeMismatch("failed to rebase the endomorphism space")
        return chosen

    # -- Carrier interface ----------------------------------------------------

    @property
    def objects(self) -> tuple:
        return self._objects

    def hom_labels(self, x, y) -> tuple:
        return tuple((x, y, k) for k in range(len(self._bases[(x, y)])))

    def basis_morphism(self, label) -> ModMorphism:
        i, j, k = label
        return self._bases[(i, j)][k]

    def compose_labels(self, x, y, z, f, g):
        key = (f, g)
        if key in self._compose_cache:
            return self._compose_cache[key]
        comp = self.basis_morphism(g) @ self.basis_morphism(f)
        coords = morphism_coords(self._bases[(x, z)], comp)
        if coords is None:
            raise ShapeMismatch("composition left the hom space")
        combo = {}
        for k in range(coords.rows):
            c = coords.a[k, 0]
            if c != 0:
                combo[(x, z, k)] = c
        self._compose_cache[key] = combo
        return combo

    def identity_combo(self, x):
        return {(x, x, 0): self.field.scalar(1)}

    @property
    def generators(self) -> tuple:
        return self._generators

    def gen_src(self, g):
        return g[0]

    def gen_tgt(self, g):
        return g[1]

    def gen_label(self, g):
        return g

    def label_word(self, x, y, label) -> tuple:
        if label[0] == label[1] and label[2] == 0:
            return ()
        return (label,)

    def validation_relations(self):
        # the composition table: every composable generator pair must expand
        # into the chosen basis
        for f in self._generators:
            for g in self._generators:
                if f[1] != g[0]:
                    continue
                terms = [(self.field.scalar(1), (f, g))]
                for lab, c in self.compose_labels(f[0], f[1], g[1], f, g).items():
                    terms.append((self.field.neg_scalar(c), self.label_word(f[0], g[1], lab)))
                yield f[0], g[1], terms

    def opposite(self) -> Carrier:
        if self._op is None:
            self._op = OppositeCarrier(self)
        return self._op

    def fundamental_domain(self) -> tuple:
        """Objects whose homological data is trusted: for window-truncated
        functor categories of a covering, the caller marks the centered orbit
        representatives; by default every object."""
        if self._fundamental is not None:
            return self._fundamental
        return self._objects

    def describe(self) -> str:
        dims = [m.total_dim for m in self.modules]
        return f"endo({len(self.modules)} objects, module dims {dims})"


def endo_category(U: SubcategorySpec) -> EndoCarrier:
    """mod-U carrier of a subcategory given by its generator list."""
    return EndoCarrier(list(U.generators))


def phi_module(E: EndoCarrier, X: FDModule) -> FDModule:
    """The functor Hom(-, X) restricted to the subcategory, as an E-module."""
    bases = {j: hom_basis(E.modules[j], X) for j in E.objects}
    dims = {j: len(bases[j]) for j in E.objects}
    mats = {}
    for g in E.generators:
        i, j, k = g
        if not dims.get(i) or not dims.get(j):
            continue
        f = E.basis_morphism(g)
        cols = []
        for h in bases[j]:
            coords = morphism_coords(bases[i], h @ f)
            if coords is None:
                raise ShapeMismatch("precomposition left the hom space")
            cols.append(coords)
        mats[g] = hstack(cols)
    Phi = FDModule(E, dims, mats, check_shapes=False)
    validate_module(Phi)  # functoriality against the composition table
    return Phi
