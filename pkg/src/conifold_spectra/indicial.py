"""Tangential spectra of the cone operators and the three indicial sets.

From a link's (lambda, mu, kappa) data this module assembles the spectrum of
the tangential operator of the connection Laplacian on 1-forms (box_1) and
of the Lichnerowicz Laplacian (box_L), applying the degenerate-case drop
rules:

  * the constant function contributes nothing on the plus branch,
  * a Killing 1-form (mu = n-2) kills the shifted plus branch,
  * on the round sphere the Obata equality lambda_1 = n-1 kills the
    doubly-shifted plus branch.

Every drop is recorded with a machine-readable reason; nothing is silent.

The indicial roots of the Lichnerowicz Laplacian are then emitted with full
provenance (source eigenvalue, branch, shift) plus two flags: whether the
root survives the linearized Bianchi gauge, and whether its eigentensor is a
Lie derivative of the cone metric.  The gauge-compatible roots form E_B; the
gauge-compatible non-Lie-derivative ones (TT and direct scalar families
only) form the essential set E feeding the rate computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from .core import DEFAULT_EPSILON, Scalar, Weight, check_dimension, dual_weight, eta, xi_pair
from .errors import UnknownMultiplicity
from .links import LinkSpectrum, SpectrumMode


class Box1Family(str, Enum):
    ONE_FORM_SHIFT = "oneform-mu-shift"
    SCALAR_L1_PLUS = "scalar-lambda1-plus"
    SCALAR_L1_MINUS = "scalar-lambda1-minus"


class BoxLFamily(str, Enum):
    TT_KAPPA = "TT-kappa"
    MU_PLUS = "OneForm-mu-plus"
    MU_MINUS = "OneForm-mu-minus"
    LAMBDA_DIRECT = "Scalar-lambda-direct"
    LAMBDA2_PLUS = "Scalar-lambda2-plus"
    LAMBDA2_MINUS = "Scalar-lambda2-minus"
    SPECIAL_ZERO = "Special-zero"
    SPECIAL_2N = "Special-2n"


class DropReason(str, Enum):
    KILLING = "killing-plus-branch"
    OBATA = "obata-plus-branch"
    CONSTANT = "constant-function"


@dataclass(frozen=True)
class TangentialEigenvalue:
    """One eigenvalue of a tangential operator, with provenance.

    ``source_value`` is the generating link eigenvalue (a lambda, mu or
    kappa); ``value`` is the tangential eigenvalue it produces.  Dropped
    entries record the would-be value together with the reason.
    """

    value: Scalar
    family: object
    source_index: int
    source_value: Scalar
    dropped: bool = False
    drop_reason: Optional[DropReason] = None
    note: Optional[str] = None


@dataclass(frozen=True)
class IndicialRoot:
    """An indicial root of the Lichnerowicz Laplacian with provenance.

    ``branch`` is the xi-branch of the *source* eigenvalue and ``shift`` the
    additive shift applied to it, so the weight always satisfies
    weight == xi_branch(source eigenvalue input) + shift, where the input is
    kappa, mu+1 or lambda according to the family.
    """

    weight: Weight
    family: BoxLFamily
    source_index: int
    source_value: Scalar
    branch: str
    shift: int
    tangential_value: Scalar
    bianchi_compatible: bool
    lie_derivative: bool
    note: Optional[str] = None

    def sort_key(self):
        return (
            float(self.weight.real),
            float(self.weight.imag),
            self.family.value,
            self.source_index,
            self.shift,
        )


def _mu_indices(link: LinkSpectrum):
    """Pair mu entries with indices following the paper's convention.

    mu is counted from 0 exactly when the link has Killing fields (so that
    mu_0 = n-2), otherwise from 1.
    """
    start = 0 if link.has_killing_fields else 1
    return [
        (start + j, entry.value)
        for j, entry in enumerate(link.coclosed_one_form.entries)
    ]


def _positive_lambdas(link: LinkSpectrum):
    out = []
    for j, entry in enumerate(link.scalar.entries):
        if entry.value.is_zero():
            continue
        out.append((j, entry.value))
    return out


def box1_spectrum(link: LinkSpectrum, eps: float = DEFAULT_EPSILON) -> List[TangentialEigenvalue]:
    """spec(box_1): mu_i + 1, eta(xi_pm(lambda_i) - 1) and the radial n-1.

    The constant function only contributes through its minus branch, giving
    the eigenvalue n-1 with eigenspace spanned by dr; the plus branch is
    emitted as dropped.
    """
    check_dimension(link.n)
    n = link.n
    out: List[TangentialEigenvalue] = []
    for idx, mu in _mu_indices(link):
        out.append(TangentialEigenvalue(mu + 1, Box1Family.ONE_FORM_SHIFT, idx, mu))
    for idx, lam in _positive_lambdas(link):
        plus, minus = xi_pair(n, lam)
        out.append(
            TangentialEigenvalue(eta(n, plus - 1), Box1Family.SCALAR_L1_PLUS, idx, lam)
        )
        out.append(
            TangentialEigenvalue(eta(n, minus - 1), Box1Family.SCALAR_L1_MINUS, idx, lam)
        )
    zero = Scalar(0)
    out.append(
        TangentialEigenvalue(
            Scalar(n - 1),
            Box1Family.SCALAR_L1_MINUS,
            0,
            zero,
            note="eigenspace spanned by dr",
        )
    )
    out.append(
        TangentialEigenvalue(
            Scalar(3 - n),
            Box1Family.SCALAR_L1_PLUS,
            0,
            zero,
            dropped=True,
            drop_reason=DropReason.CONSTANT,
        )
    )
    return out


def boxL_spectrum(link: LinkSpectrum, eps: float = DEFAULT_EPSILON) -> List[TangentialEigenvalue]:
    """spec(box_L) with the Killing and Obata drop rules applied.

    Requires n >= 4 (link dimension at least 3).
    """
    check_dimension(link.n, minimum=4)
    n = link.n
    out: List[TangentialEigenvalue] = []
    for idx, kappa in enumerate(link.tt_einstein.entries, start=1):
        out.append(TangentialEigenvalue(kappa.value, BoxLFamily.TT_KAPPA, idx, kappa.value))
    for idx, mu in _mu_indices(link):
        plus, minus = xi_pair(n, mu + 1)
        plus_value = eta(n, plus - 1)
        is_killing = mu.compare_threshold(n - 2, eps) == 0
        if is_killing:
            out.append(
                TangentialEigenvalue(
                    plus_value,
                    BoxLFamily.MU_PLUS,
                    idx,
                    mu,
                    dropped=True,
                    drop_reason=DropReason.KILLING,
                )
            )
        else:
            out.append(TangentialEigenvalue(plus_value, BoxLFamily.MU_PLUS, idx, mu))
        out.append(TangentialEigenvalue(eta(n, minus - 1), BoxLFamily.MU_MINUS, idx, mu))
    for idx, lam in _positive_lambdas(link):
        out.append(TangentialEigenvalue(lam, BoxLFamily.LAMBDA_DIRECT, idx, lam))
        plus, minus = xi_pair(n, lam)
        plus_value = eta(n, plus - 2)
        at_obata = lam.compare_threshold(n - 1, eps) == 0
        if at_obata and link.is_round_sphere:
            out.append(
                TangentialEigenvalue(
                    plus_value,
                    BoxLFamily.LAMBDA2_PLUS,
                    idx,
                    lam,
                    dropped=True,
                    drop_reason=DropReason.OBATA,
                )
            )
        else:
            note = None
            if at_obata:
                note = (
                    "lambda = n-1 on a link not flagged as the round sphere: "
                    "eigentensor possibly vanishing"
                )
            out.append(
                TangentialEigenvalue(plus_value, BoxLFamily.LAMBDA2_PLUS, idx, lam, note=note)
            )
        out.append(TangentialEigenvalue(eta(n, minus - 2), BoxLFamily.LAMBDA2_MINUS, idx, lam))
    zero = Scalar(0)
    out.append(
        TangentialEigenvalue(zero, BoxLFamily.SPECIAL_ZERO, 0, zero, note="eigenspace alpha*g-bar")
    )
    out.append(
        TangentialEigenvalue(
            Scalar(2 * n),
            BoxLFamily.SPECIAL_2N,
            0,
            zero,
            note="eigenspace alpha*(trace-free g-hat)",
        )
    )
    out.append(
        TangentialEigenvalue(
            eta(n, xi_pair(n, zero)[0] - 2),
            BoxLFamily.LAMBDA2_PLUS,
            0,
            zero,
            dropped=True,
            drop_reason=DropReason.CONSTANT,
        )
    )
    return out


# Per family: (branch label, shift, bianchi-compatible) for the kept weight
# built from the source branch, and the same for its dual.  The dual of the
# plus construction carries the minus branch of the source and vice versa.
_NOT_LIE = {BoxLFamily.TT_KAPPA, BoxLFamily.LAMBDA_DIRECT}


def _roots_for(entry: TangentialEigenvalue, n: int) -> List[IndicialRoot]:
    fam = entry.family
    base = entry.source_value

    def root(weight, branch, shift, compatible, note=None):
        return IndicialRoot(
            weight=weight,
            family=fam,
            source_index=entry.source_index,
            source_value=base,
            branch=branch,
            shift=shift,
            tangential_value=entry.value,
            bianchi_compatible=compatible,
            lie_derivative=fam not in _NOT_LIE,
            note=note if note is not None else entry.note,
        )

    if fam is BoxLFamily.TT_KAPPA:
        plus, minus = xi_pair(n, base)
        return [root(plus, "+", 0, True), root(minus, "-", 0, True)]
    if fam is BoxLFamily.LAMBDA_DIRECT:
        plus, minus = xi_pair(n, base)
        return [root(plus, "+", 0, True), root(minus, "-", 0, True)]
    if fam is BoxLFamily.MU_PLUS:
        plus, _ = xi_pair(n, base + 1)
        kept = plus - 1
        return [root(kept, "+", -1, True), root(dual_weight(n, kept), "-", +1, False)]
    if fam is BoxLFamily.MU_MINUS:
        _, minus = xi_pair(n, base + 1)
        kept = minus - 1
        return [root(kept, "-", -1, True), root(dual_weight(n, kept), "+", +1, False)]
    if fam is BoxLFamily.LAMBDA2_PLUS:
        plus, _ = xi_pair(n, base)
        kept = plus - 2
        return [root(kept, "+", -2, True), root(dual_weight(n, kept), "-", +2, False)]
    if fam is BoxLFamily.LAMBDA2_MINUS:
        _, minus = xi_pair(n, base)
        kept = minus - 2
        return [root(kept, "-", -2, True), root(dual_weight(n, kept), "+", +2, False)]
    if fam is BoxLFamily.SPECIAL_ZERO:
        plus, minus = xi_pair(n, Scalar(0))
        return [root(plus, "+", 0, True), root(minus, "-", 0, False)]
    if fam is BoxLFamily.SPECIAL_2N:
        plus, minus = xi_pair(n, Scalar(2 * n))
        return [root(minus, "-", -2, True), root(plus, "+", +2, False)]
    raise AssertionError(f"unhandled family {fam}")


def indicial_set_full(link: LinkSpectrum, eps: float = DEFAULT_EPSILON) -> List[IndicialRoot]:
    """E_L: all indicial roots of the Lichnerowicz Laplacian on the cone."""
    roots: List[IndicialRoot] = []
    for entry in boxL_spectrum(link, eps):
        if entry.dropped:
            continue
        roots.extend(_roots_for(entry, link.n))
    roots.sort(key=IndicialRoot.sort_key)
    return roots


def indicial_set_bianchi(link: LinkSpectrum, eps: float = DEFAULT_EPSILON) -> List[IndicialRoot]:
    """E_B: the roots surviving the linearized Bianchi gauge."""
    return [r for r in indicial_set_full(link, eps) if r.bianchi_compatible]


def indicial_set_essential(link: LinkSpectrum, eps: float = DEFAULT_EPSILON) -> List[IndicialRoot]:
    """E: gauge-compatible roots not given by Lie derivatives.

    Exactly the TT and direct scalar families with positive eigenvalue.
    The zero root of the constant function is excluded (it corresponds to
    the Lie derivative of the metric along the radial field); the excluded
    variant with 0 adjoined is recorded by the report layer, not here.
    """
    return [
        r
        for r in indicial_set_full(link, eps)
        if r.bianchi_compatible and not r.lie_derivative
    ]


def eigenspace_dimension(entry: TangentialEigenvalue, link: LinkSpectrum) -> int:
    """Dimension of the box_L eigenspace contributed by one table entry.

    Scalar eigenvalues enter twice (the v and w parameters), so the direct
    scalar family counts double.  Raises UnknownMultiplicity for bounded
    lists or missing multiplicities.
    """
    fam = entry.family
    if fam in (BoxLFamily.SPECIAL_ZERO, BoxLFamily.SPECIAL_2N):
        return 1
    if fam is BoxLFamily.TT_KAPPA:
        source, factor = link.tt_einstein, 1
        position = entry.source_index - 1
    elif fam in (BoxLFamily.MU_PLUS, BoxLFamily.MU_MINUS):
        source, factor = link.coclosed_one_form, 1
        position = entry.source_index - (0 if link.has_killing_fields else 1)
    elif fam is BoxLFamily.LAMBDA_DIRECT:
        source, factor = link.scalar, 2
        position = entry.source_index
    else:
        source, factor = link.scalar, 1
        position = entry.source_index
    if source.mode is SpectrumMode.UPPER_BOUND:
        raise UnknownMultiplicity(
            "multiplicities are not invariant in upper-bound-set mode"
        )
    mult = source.multiplicity_of(position)
    if mult is None:
        raise UnknownMultiplicity(f"multiplicity unknown for {fam.value}[{entry.source_index}]")
    return factor * mult
