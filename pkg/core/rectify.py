# core/rectify.py

"""
Unit intervals and the homotopy toolkit built on them.

A left homotopy from f to g is a chain map H: a tensor I -> y with
H(1 tensor i0) = f and H(1 tensor i1) = g. The standard interval has basis
[0], [1] in degree 0 and e in degree 1 with d e = [1] - [0]; a chain
homotopy h (d h + h d = g - f) corresponds to x tensor e -> (-1)^|x| h(x).
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core import chain
from core.chain import ChainComplex, ChainHomotopy, ChainMap, TensorLayout, tensor, tensor_maps
from core.errors import DimensionMismatchError, ValidationError
from core.spectra import Spectrum, SpectrumMap, prolong_G_no_twist, tensor_K_twist

logger = logging.getLogger(__name__)


class UnitInterval:
    """A cylinder object for S with a contraction H: I tensor I -> I."""

    def __init__(self, complex: ChainComplex, i0: ChainMap, i1: ChainMap, pi: ChainMap, H: ChainMap,
                 validate: bool = True):
        self.complex = complex
        self.field = complex.field
        self.i0, self.i1, self.pi, self.H = i0, i1, pi, H
        if validate:
            self.check()

    def check(self) -> None:
        field = self.field
        s = chain.unit(field)
        ident_s = ChainMap.identity(s)
        ident = ChainMap.identity(self.complex)
        if self.pi.compose(self.i0) != ident_s or self.pi.compose(self.i1) != ident_s:
            raise ValidationError("pi does not retract both endpoints")
        if field.rank(np.hstack([self.i0.mat(0), self.i1.mat(0)])) != 2:
            raise ValidationError("the endpoints are not independent", degree=0)
        if not chain.is_quasi_iso(self.pi):
            raise ValidationError("pi is not a quasi-isomorphism")
        collapse = self.i0.compose(self.pi)
        identities = [
            (tensor_maps(ident, self.i0), collapse, "H(1 tensor i0) is not i0 pi"),
            (tensor_maps(self.i0, ident), collapse, "H(i0 tensor 1) is not i0 pi"),
            (tensor_maps(ident, self.i1), ident, "H(1 tensor i1) is not the identity"),
            (tensor_maps(self.i1, ident), ident, "H(i1 tensor 1) is not the identity"),
        ]
        for inclusion, expected, message in identities:
            if self.H.compose(inclusion) != expected:
                raise ValidationError(message)

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.complex.dims

    def __repr__(self) -> str:
        return f"UnitInterval(dims={list(self.complex.dims)})"


def standard_interval(field) -> UnitInterval:
    """[0], [1], e with d e = [1] - [0]; H is the min rule on endpoints."""
    field = chain.as_field(field)
    cplx = ChainComplex(field, [2, 1], [[[-1], [1]]])
    s = chain.unit(field)
    i0 = ChainMap(s, cplx, [[[1], [0]]])
    i1 = ChainMap(s, cplx, [[[0], [1]]])
    pi = ChainMap(cplx, s, [[[1, 1]], np.zeros((0, 1), dtype=np.int64)])
    # degree 0: [0][0], [0][1], [1][0], [1][1]; degree 1: [0]e, [1]e, e[0], e[1]
    H = ChainMap(tensor(cplx, cplx), cplx, [[[1, 1, 1, 0], [0, 0, 0, 1]], [[0, 1, 0, 1]],
                                           np.zeros((0, 1), dtype=np.int64)])
    return UnitInterval(cplx, i0, i1, pi, H)


def endpoints(homotopy: ChainMap, a: ChainComplex, interval: UnitInterval) -> Tuple[ChainMap, ChainMap]:
    """The restrictions of a left homotopy a tensor I -> y to the two ends."""
    ident = ChainMap.identity(a)
    ends = []
    for i in (interval.i0, interval.i1):
        m = homotopy.compose(tensor_maps(ident, i))
        ends.append(ChainMap(a, homotopy.target, m.mats, validate=False))
    return ends[0], ends[1]


def constant_homotopy(f: ChainMap, interval: UnitInterval) -> ChainMap:
    """f o (1 tensor pi)."""
    return f.compose(tensor_maps(ChainMap.identity(f.source), interval.pi))


def homotopy_to_interval(h: ChainHomotopy) -> ChainMap:
    """The left homotopy a tensor I -> x through the standard interval."""
    a, x = h.source, h.target
    field = a.field
    interval = standard_interval(field)
    src = tensor(a, interval.complex)
    lay = TensorLayout(a, interval.complex)
    mats = []
    for n in src.degrees():
        m = np.zeros((x.dim(n), src.dim(n)), dtype=np.int64)
        if a.dim(n):
            off = lay.offset(n, n)
            width = 2 * a.dim(n)
            m[:, off:off + width:2] = h.from_map.mat(n)
            m[:, off + 1:off + width:2] = h.to_map.mat(n)
        if n >= 1 and a.dim(n - 1):
            off = lay.offset(n, n - 1)
            sign = -1 if (n - 1) % 2 else 1
            m[:, off:off + a.dim(n - 1)] = sign * h.comp(n - 1)
        mats.append(m % field.p)
    return ChainMap(src, x, mats)


def interval_to_homotopy(H: ChainMap, a: ChainComplex) -> ChainHomotopy:
    """The chain homotopy carried by a left homotopy through the standard interval."""
    interval = standard_interval(a.field)
    if H.source != tensor(a, interval.complex):
        raise DimensionMismatchError("homotopy is not defined on a tensor the standard interval")
    f, g = endpoints(H, a, interval)
    lay = TensorLayout(a, interval.complex)
    comps = []
    for n in a.degrees():
        off = lay.offset(n + 1, n)
        sign = -1 if n % 2 else 1
        comps.append(sign * H.mat(n + 1)[:, off:off + a.dim(n)])
    return ChainHomotopy(f, g, comps)


# --- Symmetric objects ---

@dataclass
class SymmetryCertificate:
    """A homotopy K^3 tensor I -> K^3 from the cyclic permutation to the identity."""
    k: ChainComplex
    interval: UnitInterval
    homotopy: ChainMap
    cyclic: ChainMap

    def check(self) -> None:
        k3 = self.cyclic.source
        start, end = endpoints(self.homotopy, k3, self.interval)
        if start != ChainMap(k3, k3, self.cyclic.mats, validate=False):
            raise ValidationError("certificate does not start at the cyclic permutation")
        if end != ChainMap.identity(k3):
            raise ValidationError("certificate does not end at the identity")


def cyclic_permutation(k: ChainComplex) -> ChainMap:
    """x tensor y tensor z -> (+-) z tensor x tensor y on K^3."""
    return chain.rearrange([k, k, k], ((0, 1), 2), ((2, 0), 1))


def certify_symmetric(k: ChainComplex) -> Optional[SymmetryCertificate]:
    interval = standard_interval(k.field)
    cyc = cyclic_permutation(k)
    k3 = cyc.source
    cyc = ChainMap(k3, k3, cyc.mats, validate=False)
    ident = ChainMap.identity(k3)
    if cyc == ident:
        cert = SymmetryCertificate(k, interval, constant_homotopy(ident, interval), cyc)
    else:
        h = chain.find_homotopy(cyc, ident)
        if h is None:
            logger.info("no homotopy from the cyclic permutation to the identity on K^3 (K dims %s)",
                        list(k.dims))
            return None
        cert = SymmetryCertificate(k, interval, homotopy_to_interval(h), cyc)
    cert.check()
    return cert


# --- Mapping cylinders and amalgamation ---

@dataclass
class CylinderSquare:
    """b', q: b' -> b, r': a -> b', g': b' -> y and H': b' tensor I -> y from g q to g'."""
    complex: ChainComplex
    q: ChainMap
    r_prime: ChainMap
    g_prime: ChainMap
    homotopy: ChainMap
    interval: UnitInterval


def mapping_cylinder_square(f: ChainMap, r: ChainMap, s: ChainMap, g: ChainMap, homotopy: ChainMap,
                            interval: UnitInterval) -> CylinderSquare:
    """
    Replaces the square (f: a -> x, r: a -> b, s: x -> y, g: b -> y), which
    commutes up to the left homotopy from g r to s f, by a strictly commuting
    one through the mapping cylinder of r.
    """
    a, b = r.source, r.target
    start, end = endpoints(homotopy, a, interval)
    if start != g.compose(r):
        raise ValidationError("homotopy does not start at g r")
    if end != s.compose(f):
        raise ValidationError("homotopy does not end at s f")
    i_cplx = interval.complex
    ident_a, ident_i = ChainMap.identity(a), ChainMap.identity(i_cplx)
    cyl = tensor(a, i_cplx)
    to_cyl = [ChainMap(a, cyl, tensor_maps(ident_a, i).mats, validate=False) for i in (interval.i0, interval.i1)]
    po = chain.pushout(r, to_cyl[0])
    r_prime = po.right.compose(to_cyl[1])
    g_prime = chain.induced_from_pushout(po, g, homotopy)
    squash = ChainMap(cyl, a, tensor_maps(ident_a, interval.pi).mats, validate=False)
    q = chain.induced_from_pushout(po, ChainMap.identity(b), r.compose(squash))

    # b' tensor I is glued from b tensor I and (a tensor I) tensor I
    flat_b = ChainMap(tensor(b, i_cplx), b, tensor_maps(ChainMap.identity(b), interval.pi).mats, validate=False)
    contract = chain.associator(a, i_cplx, i_cplx)
    on_cyl = homotopy.compose(ChainMap(tensor(a, tensor(i_cplx, i_cplx)), cyl,
                                       tensor_maps(ident_a, interval.H).mats, validate=False)).compose(contract)
    new_homotopy = chain.factor_through_surjection(
        [tensor_maps(po.left, ident_i), tensor_maps(po.right, ident_i)],
        [g.compose(flat_b), on_cyl])

    out = CylinderSquare(po.complex, q, r_prime, g_prime, new_homotopy, interval)
    _check_cylinder_square(out, f, r, s, g)
    return out


def _check_cylinder_square(sq: CylinderSquare, f: ChainMap, r: ChainMap, s: ChainMap, g: ChainMap) -> None:
    if not chain.is_quasi_iso(sq.q):
        raise ValidationError("cylinder collapse is not a quasi-isomorphism")
    if sq.q.compose(sq.r_prime) != r:
        raise ValidationError("q r' differs from r")
    if sq.g_prime.compose(sq.r_prime) != s.compose(f):
        raise ValidationError("g' r' differs from s f")
    start, end = endpoints(sq.homotopy, sq.complex, sq.interval)
    if start != g.compose(sq.q) or end != sq.g_prime:
        raise ValidationError("new homotopy does not run from g q to g'")


def _amalgam(first: UnitInterval, second: UnitInterval) -> Tuple[UnitInterval, ChainMap, ChainMap]:
    """Glues i1 of ``first`` to i0 of ``second``; returns J with its two legs."""
    po = chain.pushout(first.i1, second.i0)
    j0, j1 = po.left, po.right
    c1, c2 = first.complex, second.complex
    pi = chain.induced_from_pushout(po, first.pi, second.pi)
    ident1 = ChainMap.identity(c1)

    def flatten(m: ChainMap, src: ChainComplex) -> ChainMap:
        return ChainMap(src, c1, m.mats, validate=False)

    # min rule: anything in the first interval lies below the second
    pieces = [
        (tensor_maps(j0, j0), j0.compose(first.H)),
        (tensor_maps(j0, j1), j0.compose(flatten(tensor_maps(ident1, second.pi), tensor(c1, c2)))),
        (tensor_maps(j1, j0), j0.compose(flatten(tensor_maps(second.pi, ident1), tensor(c2, c1)))),
        (tensor_maps(j1, j1), j1.compose(second.H)),
    ]
    H = chain.factor_through_surjection([p for p, _ in pieces], [v for _, v in pieces])
    return UnitInterval(po.complex, j0.compose(first.i0), j1.compose(second.i1), pi, H), j0, j1


def amalgamate(first: UnitInterval, second: UnitInterval) -> UnitInterval:
    return _amalgam(first, second)[0]


# --- Rectifying maps of spectra ---

@dataclass
class Rectification:
    """c with a level equivalence h: c -> a, a strict map g: c -> b, and g_n ~ f_n h_n."""
    spectrum: Spectrum
    h: SpectrumMap
    g: SpectrumMap
    homotopies: List[ChainMap]
    intervals: List[UnitInterval]


def rectify_spectrum_map(a: Spectrum, b: Spectrum, f: Sequence[ChainMap], homotopies: Sequence[ChainMap],
                         intervals: Optional[Sequence[UnitInterval]] = None) -> Rectification:
    """
    f_n: a_n -> b_n with left homotopies (a_n tensor K) tensor I_n -> b_{n+1}
    from f_{n+1} sigma_a to sigma_b (f_n tensor K). Builds c level by level
    through mapping cylinders, growing the interval by amalgamation.
    """
    if a.k != b.k:
        raise DimensionMismatchError("spectra use different K")
    top = max(a.tail_index, b.tail_index)
    if len(f) < top + 1:
        raise DimensionMismatchError(f"need maps through level {top}, got {len(f)}")
    if len(homotopies) < top:
        raise DimensionMismatchError(f"need homotopies through level {top - 1}, got {len(homotopies)}")
    field, k = a.field, a.k
    intervals = list(intervals) if intervals is not None else [standard_interval(field)] * top
    ident_k = ChainMap.identity(k)

    grown = standard_interval(field)
    levels = [a.level(0)]
    sigmas: List[ChainMap] = []
    h_comps = [ChainMap.identity(a.level(0))]
    g_comps = [f[0]]
    level_homotopies = [constant_homotopy(f[0], grown)]
    grown_list = [grown]
    for n in range(top):
        c_n, h_n, g_n = levels[n], h_comps[n], g_comps[n]
        src = tensor(c_n, k)
        i_n = intervals[n]
        r = a.sigma(n).compose(tensor_maps(h_n, ident_k))
        first = homotopies[n].compose(tensor_maps(tensor_maps(h_n, ident_k), ChainMap.identity(i_n.complex)))
        swap = chain.rearrange([c_n, k, grown.complex], ((0, 1), 2), ((0, 2), 1))
        second = b.sigma(n).compose(tensor_maps(level_homotopies[n], ident_k)).compose(swap)
        grown, j0, j1 = _amalgam(i_n, grown)
        ident_src = ChainMap.identity(src)
        glued = chain.factor_through_surjection([tensor_maps(ident_src, j0), tensor_maps(ident_src, j1)],
                                                [first, second])
        sq = mapping_cylinder_square(tensor_maps(g_n, ident_k), r, b.sigma(n), f[n + 1], glued, grown)
        levels.append(sq.complex)
        sigmas.append(sq.r_prime)
        h_comps.append(sq.q)
        g_comps.append(sq.g_prime)
        level_homotopies.append(sq.homotopy)
        grown_list.append(grown)
        logger.debug("rectified level %d: dims %s, interval dims %s", n + 1, list(sq.complex.dims),
                     list(grown.complex.dims))
    c = Spectrum(levels, sigmas, k=k)
    h = SpectrumMap(c, a, h_comps)
    g = SpectrumMap(c, b, g_comps)
    if not h.is_level_equivalence():
        raise ValidationError("rectification is not level equivalent to the source")
    logger.info("rectified a map through level %d", top)
    return Rectification(c, h, g, level_homotopies, grown_list)


@dataclass
class TensoringComparison:
    """FX with level equivalences to the untwisted and the twisted double tensoring."""
    spectrum: Spectrum
    to_no_twist: SpectrumMap
    to_twist: SpectrumMap
    rectification: Rectification


def compare_tensorings(x: Spectrum, cert: SymmetryCertificate) -> TensoringComparison:
    """
    Links X tensor K tensor K (twisted) and X tensor-bar K tensor-bar K by a
    zigzag of level equivalences. Their structure maps differ by the cyclic
    permutation of the three K's, and the certificate deforms it to the identity.
    """
    if cert.k != x.k:
        raise DimensionMismatchError("certificate is for a different K")
    k = x.k
    twisted = tensor_K_twist(tensor_K_twist(x))
    plain = prolong_G_no_twist(prolong_G_no_twist(x))
    top = max(twisted.tail_index, plain.tail_index)
    f = [ChainMap(twisted.level(n), plain.level(n), ChainMap.identity(twisted.level(n)).mats, validate=False)
         for n in range(top + 1)]
    ident_k = ChainMap.identity(k)
    i_cplx = cert.interval.complex
    homotopies = []
    for n in range(top):
        xn = x.level(n)
        into = chain.rearrange([xn, k, k, k, i_cplx], ((((0, 1), 2), 3), 4), (0, (((1, 2), 3), 4)))
        back = chain.rearrange([xn, k, k, k], (0, ((1, 2), 3)), (((0, 1), 2), 3))
        outer = tensor_maps(tensor_maps(x.sigma(n), ident_k), ident_k)
        homotopies.append(outer.compose(back).compose(tensor_maps(ChainMap.identity(xn), cert.homotopy))
                          .compose(into))
    rect = rectify_spectrum_map(twisted, plain, f, homotopies, [cert.interval] * top)
    if not rect.g.is_level_equivalence():
        raise ValidationError("comparison to the untwisted tensoring is not a level equivalence")
    return TensoringComparison(rect.spectrum, rect.g, rect.h, rect)
