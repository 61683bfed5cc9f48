"""Finitely presented Q-algebras and maps between them.

A RingPresentation is an ambient PolyRing together with relation generators;
the algebra it presents is ambient modulo that ideal.  Normal forms against a
cached reduced Groebner basis of the relations give canonical representatives,
so equality in the quotient is a normal-form comparison.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from . import engine
from .errors import InputError
from .poly import Polynomial, PolyRing, as_poly


class RingPresentation:
    """Q[vars] / (relations), with cached relation Groebner basis."""

    __slots__ = ("ambient", "relations", "_gb", "_key")

    def __init__(self, ambient: PolyRing, relations: Iterable = ()):
        self.ambient = ambient
        self.relations = tuple(as_poly(ambient, r) for r in relations)
        self._gb = None
        self._key = engine.pot_key(ambient.order)

    @staticmethod
    def free(names: Sequence, order=None) -> "RingPresentation":
        ring = PolyRing(tuple(names)) if order is None else PolyRing(tuple(names), order)
        return RingPresentation(ring)

    # -- normal forms ----------------------------------------------------

    def groebner(self) -> list:
        """Engine-level reduced basis of the relation ideal (cached)."""
        if self._gb is None:
            vecs = [engine.poly_to_vec(r) for r in self.relations if not r.is_zero()]
            self._gb = engine.buchberger(vecs, self._key, engine.ensure_budget(None))
        return self._gb

    def groebner_polys(self) -> list:
        return [engine.vec_to_row(v, 1, self.ambient)[0] for v in self.groebner()]

    def nf(self, p) -> Polynomial:
        p = as_poly(self.ambient, p)
        v = engine.normal_form(
            engine.poly_to_vec(p), self.groebner(), self._key, engine.ensure_budget(None)
        )
        return engine.vec_to_row(v, 1, self.ambient)[0]

    def is_zero(self, p) -> bool:
        return self.nf(p).is_zero()

    def is_trivial(self) -> bool:
        """True when 1 lies in the relation ideal, i.e. the algebra is 0."""
        gb = self.groebner()
        return any(len(v) == 1 and next(iter(v))[1] == (0,) * self.ambient.nvars for v in gb)

    def is_unit(self, p) -> bool:
        """Unit test by constant normal form; sound, not complete in general."""
        q = self.nf(p)
        return q.is_constant() and not q.is_zero() and not self.is_trivial()

    # -- construction helpers -------------------------------------------

    def parse(self, text: str) -> Polynomial:
        return self.ambient.parse(text)

    def quotient(self, extra: Iterable) -> "RingPresentation":
        extras = tuple(as_poly(self.ambient, e) for e in extra)
        return RingPresentation(self.ambient, self.relations + extras)

    def with_order(self, order) -> "RingPresentation":
        ring = self.ambient.with_order(order)
        return RingPresentation(ring, [p.rename(ring) for p in self.relations])

    def same_ideal(self, other: "RingPresentation") -> bool:
        if self.ambient.vars != other.ambient.vars:
            return False
        return all(other.is_zero(r.rename(other.ambient)) for r in self.relations) and all(
            self.is_zero(r.rename(self.ambient)) for r in other.relations
        )

    def __eq__(self, other):
        if not isinstance(other, RingPresentation):
            return NotImplemented
        return self.ambient == other.ambient and self.relations == other.relations

    def __repr__(self):
        if not self.relations:
            return repr(self.ambient)
        rels = ", ".join(str(r) for r in self.relations)
        return f"{self.ambient!r}/({rels})"


class RingMap:
    """A Q-algebra map between presented rings, given on ambient variables.

    Well-definedness (every source relation maps into the target's relation
    ideal) is checked at construction unless check=False is passed for maps
    already known to be consistent.
    """

    __slots__ = ("source", "target", "images")

    def __init__(self, source: RingPresentation, target: RingPresentation, images, check: bool = True):
        self.source = source
        self.target = target
        if isinstance(images, Mapping):
            vals = []
            for v in source.ambient.vars:
                if v not in images:
                    raise InputError(f"no image for source variable {v!r}")
                vals.append(as_poly(target.ambient, images[v]))
            extra = set(images) - set(source.ambient.vars)
            if extra:
                raise InputError(f"images given for unknown variables {sorted(extra)}")
            self.images = tuple(target.nf(p) for p in vals)
        else:
            vals = list(images)
            if len(vals) != source.ambient.nvars:
                raise InputError(
                    f"expected {source.ambient.nvars} images, got {len(vals)}"
                )
            self.images = tuple(target.nf(as_poly(target.ambient, p)) for p in vals)
        if check:
            for r in source.relations:
                if not self.target.is_zero(self._raw_apply(r)):
                    raise InputError(
                        f"map does not respect relation {r}: image {self._raw_apply(r)} "
                        "is nonzero in the target"
                    )

    def _raw_apply(self, p: Polynomial) -> Polynomial:
        by_name = dict(zip(self.source.ambient.vars, self.images))
        return p.substitute(self.target.ambient, by_name)

    def apply(self, p) -> Polynomial:
        """Image of p, in normal form in the target."""
        p = as_poly(self.source.ambient, p)
        return self.target.nf(self._raw_apply(p))

    def after(self, other: "RingMap") -> "RingMap":
        """self o other; other's target must present the same algebra as our source."""
        if other.target.ambient != self.source.ambient:
            raise InputError("composition mismatch")
        return RingMap(
            other.source, self.target, [self.apply(im) for im in other.images], check=False
        )

    @staticmethod
    def identity(ring: RingPresentation) -> "RingMap":
        return RingMap(ring, ring, list(ring.ambient.vars), check=False)

    def image_map(self) -> dict:
        return dict(zip(self.source.ambient.vars, self.images))

    def __repr__(self):
        parts = ", ".join(f"{v} -> {im}" for v, im in zip(self.source.ambient.vars, self.images))
        return f"RingMap({parts})"


def apply_ring_map(m: RingMap, p) -> Polynomial:
    """Functional form of RingMap.apply."""
    return m.apply(p)
