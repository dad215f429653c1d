"""Link spectral data: catalogs, ingestion and completeness bookkeeping.

A link is described by three eigenvalue lists: the scalar Laplace spectrum
(lambda, starting at lambda_0 = 0), the connection-Laplacian spectrum on
divergence-free 1-forms (mu, bounded below by n-2 with equality exactly for
Killing fields) and the Einstein-operator spectrum on transverse-traceless
tensors (kappa).  Each list carries a ``complete_below`` certificate: every
eigenvalue strictly below it is guaranteed to be listed.

Lists come in two modes.  ``exact`` means the entries are true eigenvalues.
``upper-bound-set`` means the list is only a superset constraint (the true
spectrum is a subset of the listed values), which is how sphere quotients
are described; every rate computed from such a list is a lower bound on the
order, never claimed optimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from .core import DEFAULT_EPSILON, Scalar, check_dimension
from .errors import (
    InsufficientSpectrum,
    InvariantViolation,
    SchemaError,
    UnsupportedDimension,
)


class SpectrumMode(str, Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper-bound-set"


class EndKind(str, Enum):
    AC = "AC"
    CS = "CS"


@dataclass(frozen=True)
class EigenvalueEntry:
    """One eigenvalue with an optional multiplicity (None = unknown).

    Multiplicities are reporting data only; no rate computation reads them.
    """

    value: Scalar
    multiplicity: Optional[int] = None

    def __post_init__(self):
        if self.multiplicity is not None and self.multiplicity < 1:
            raise InvariantViolation("multiplicity must be a positive integer")


@dataclass(frozen=True)
class SpectrumList:
    entries: Tuple[EigenvalueEntry, ...]
    complete_below: Scalar
    mode: SpectrumMode = SpectrumMode.EXACT

    def __post_init__(self):
        values = [e.value for e in self.entries]
        for a, b in zip(values, values[1:]):
            if not a < b:
                raise InvariantViolation("spectrum entries must be strictly increasing")

    def values(self) -> List[Scalar]:
        return [e.value for e in self.entries]

    def min_value(self) -> Scalar:
        if not self.entries:
            raise InvariantViolation("empty spectrum list")
        return self.entries[0].value

    def multiplicity_of(self, index: int) -> Optional[int]:
        return self.entries[index].multiplicity


@dataclass(frozen=True)
class LinkSpectrum:
    """Spectral data of one link (M-hat, g-hat) for a cone of dimension n."""

    n: int
    name: str
    scalar: SpectrumList
    coclosed_one_form: SpectrumList
    tt_einstein: SpectrumList
    has_killing_fields: bool
    is_round_sphere: bool = False
    ends: Tuple[EndKind, ...] = (EndKind.AC, EndKind.CS)

    def validate(self, validate_obata: bool = True, eps: float = DEFAULT_EPSILON) -> None:
        """Check the link invariants, raising InvariantViolation on failure."""
        check_dimension(self.n)
        lam = self.scalar
        if not lam.entries or not lam.entries[0].value.is_zero():
            raise InvariantViolation("scalar spectrum must start with lambda_0 = 0")
        mult0 = lam.entries[0].multiplicity
        if mult0 is not None and mult0 != 1:
            raise InvariantViolation("lambda_0 = 0 must have multiplicity 1")
        if validate_obata:
            for entry in lam.entries[1:]:
                if entry.value.compare_threshold(self.n - 1, eps) < 0:
                    raise InvariantViolation(
                        f"positive scalar eigenvalue {entry.value} violates the "
                        f"Lichnerowicz-Obata bound lambda >= n-1 = {self.n - 1}"
                    )
        floor = self.n - 2
        for entry in self.coclosed_one_form.entries:
            if entry.value.compare_threshold(floor, eps) < 0:
                raise InvariantViolation(
                    f"coclosed 1-form eigenvalue {entry.value} below n-2 = {floor}"
                )
        killing_listed = any(
            entry.value.compare_threshold(floor, eps) == 0
            for entry in self.coclosed_one_form.entries
        )
        if self.has_killing_fields and not killing_listed:
            raise InvariantViolation(
                "has_killing_fields requires n-2 in the coclosed 1-form list"
            )
        if (
            not self.has_killing_fields
            and killing_listed
            and self.coclosed_one_form.mode is SpectrumMode.EXACT
        ):
            raise InvariantViolation(
                "exact coclosed 1-form list contains n-2 but has_killing_fields is False"
            )

    def any_upper_bound_mode(self) -> bool:
        return any(
            lst.mode is SpectrumMode.UPPER_BOUND
            for lst in (self.scalar, self.coclosed_one_form, self.tt_einstein)
        )


def require_complete(spectrum: SpectrumList, threshold) -> None:
    """Certify that all eigenvalues below ``threshold`` are listed."""
    t = Scalar.wrap(threshold)
    if spectrum.complete_below < t:
        raise InsufficientSpectrum(
            f"spectrum certified complete below {spectrum.complete_below}, "
            f"but completeness below {t} is required",
            required=t,
        )


# ---------------------------------------------------------------------------
# built-in catalogs
# ---------------------------------------------------------------------------


def _harmonic_dim(n: int, i: int) -> int:
    """Dimension of the space of degree-i harmonic polynomials on R^n."""
    if i == 0:
        return 1
    return math.comb(n + i - 1, n - 1) - math.comb(n + i - 3, n - 1)


def sphere_link(n: int, include_muspec: bool = True, count: int = 8) -> LinkSpectrum:
    """The round sphere S^{n-1} with Ric = (n-2)g.

    lambda_i = i(i+n-2) with the classical harmonic-polynomial
    multiplicities, kappa_i = (i+1)(i+n-1).  The coclosed 1-form spectrum
    mu_k = (k+1)(k+n-3) - (n-2) is derived (not quoted) data and is only
    generated when ``include_muspec`` is set; its first entry is the Killing
    value n-2.
    """
    check_dimension(n, minimum=4)
    lam_entries = tuple(
        EigenvalueEntry(Scalar(i * (i + n - 2)), _harmonic_dim(n, i))
        for i in range(count + 1)
    )
    kappa_entries = tuple(
        EigenvalueEntry(Scalar((i + 1) * (i + n - 1)), None)
        for i in range(1, count + 1)
    )
    if include_muspec:
        mu_entries = tuple(
            EigenvalueEntry(Scalar((k + 1) * (k + n - 3) - (n - 2)), None)
            for k in range(1, count + 1)
        )
    else:
        mu_entries = (EigenvalueEntry(Scalar(n - 2), None),)
    return LinkSpectrum(
        n=n,
        name=f"round sphere S^{n - 1}",
        scalar=SpectrumList(lam_entries, lam_entries[-1].value),
        coclosed_one_form=SpectrumList(mu_entries, mu_entries[-1].value),
        tt_einstein=SpectrumList(kappa_entries, kappa_entries[-1].value),
        has_killing_fields=True,
        is_round_sphere=True,
    )


def sphere_quotient_link(
    n: int, gamma_nontrivial: bool = True, include_muspec: bool = True, count: int = 8
) -> LinkSpectrum:
    """A space form S^{n-1}/Gamma in upper-bound-set mode.

    The quotient spectra are subsets of the sphere spectra; when Gamma is
    nontrivial the equality case of Obata drops lambda_1 = n-1.  No invariant
    multiplicities are known, so all multiplicities are marked unknown.  The
    trivial quotient is the round sphere itself.
    """
    base = sphere_link(n, include_muspec=include_muspec, count=count)
    if not gamma_nontrivial:
        return base

    def bounded(lst: SpectrumList, drop=None) -> SpectrumList:
        entries = tuple(
            EigenvalueEntry(e.value, None)
            for e in lst.entries
            if drop is None or e.value != drop
        )
        return SpectrumList(entries, lst.complete_below, SpectrumMode.UPPER_BOUND)

    return LinkSpectrum(
        n=n,
        name=f"sphere quotient S^{n - 1}/Gamma",
        scalar=bounded(base.scalar, drop=Scalar(n - 1)),
        coclosed_one_form=bounded(base.coclosed_one_form),
        tt_einstein=bounded(base.tt_einstein),
        has_killing_fields=True,
        is_round_sphere=False,
    )


def product_einstein_example(n: int = 10) -> LinkSpectrum:
    """The 9-dimensional product-Einstein link, the resonance fixture.

    Its first TT-Einstein eigenvalue sits exactly at the resonance,
    kappa_1 = -16 = -(n-2)^2/4, and all other kappa are nonnegative; the
    cone over it is resonance-dominated.  The scalar and 1-form lists are
    placeholders in upper-bound-set mode.
    """
    if n != 10:
        raise UnsupportedDimension(
            "the product-Einstein resonance fixture exists only for n = 10"
        )
    kappa = SpectrumList(
        (
            EigenvalueEntry(Scalar(-16), None),
            EigenvalueEntry(Scalar(0), None),
        ),
        Scalar(1),
        SpectrumMode.EXACT,
    )
    lam = SpectrumList(
        (
            EigenvalueEntry(Scalar(0), 1),
            EigenvalueEntry(Scalar(9), None),
        ),
        Scalar(9),
        SpectrumMode.UPPER_BOUND,
    )
    mu = SpectrumList(
        (EigenvalueEntry(Scalar(8), None),),
        Scalar(8),
        SpectrumMode.UPPER_BOUND,
    )
    return LinkSpectrum(
        n=10,
        name="product-Einstein link (m=10 resonance example)",
        scalar=lam,
        coclosed_one_form=mu,
        tt_einstein=kappa,
        has_killing_fields=True,
        is_round_sphere=False,
        ends=(EndKind.AC,),
    )


BUILTIN_LINKS = ("sphere", "sphere-quotient", "product-einstein-10")


def builtin_link(
    name: str, n: Optional[int] = None, gamma_nontrivial: Optional[bool] = None
) -> LinkSpectrum:
    """Resolve a built-in link by name.

    The quotient switch also applies to the plain sphere (requesting a
    nontrivial group turns it into the space-form catalog entry); it
    defaults to trivial for "sphere" and nontrivial for "sphere-quotient".
    """
    dim = n if n is not None else 4
    if name == "sphere":
        if gamma_nontrivial:
            return sphere_quotient_link(dim, True)
        return sphere_link(dim)
    if name == "sphere-quotient":
        nontrivial = True if gamma_nontrivial is None else gamma_nontrivial
        return sphere_quotient_link(dim, nontrivial)
    if name == "product-einstein-10":
        return product_einstein_example(10 if n is None else n)
    raise SchemaError(f"unknown builtin link {name!r}; choose from {BUILTIN_LINKS}")


# ---------------------------------------------------------------------------
# structured-text ingestion
# ---------------------------------------------------------------------------

_SPECTRUM_KEYS = {"entries", "complete_below", "mode"}
_ENTRY_KEYS = {"value", "multiplicity"}
_TOP_KEYS = {
    "dim_cone",
    "name",
    "scalar",
    "coclosed_one_form",
    "tt_einstein",
    "has_killing_fields",
    "ends",
}


def _parse_number(value, where: str) -> Scalar:
    try:
        return Scalar.parse(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: bad number {value!r} ({exc})") from exc


def _parse_spectrum(doc, where: str) -> SpectrumList:
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected an object")
    unknown = set(doc) - _SPECTRUM_KEYS
    if unknown:
        raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")
    for key in _SPECTRUM_KEYS:
        if key not in doc:
            raise SchemaError(f"{where}: missing key {key!r}")
    raw_entries = doc["entries"]
    if not isinstance(raw_entries, list):
        raise SchemaError(f"{where}.entries: expected a list")
    entries = []
    for i, raw in enumerate(raw_entries):
        spot = f"{where}.entries[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{spot}: expected an object")
        unknown = set(raw) - _ENTRY_KEYS
        if unknown:
            raise SchemaError(f"{spot}: unknown keys {sorted(unknown)}")
        if "value" not in raw:
            raise SchemaError(f"{spot}: missing 'value'")
        mult = raw.get("multiplicity")
        if mult is not None and (isinstance(mult, bool) or not isinstance(mult, int)):
            raise SchemaError(f"{spot}: multiplicity must be an integer or null")
        try:
            entries.append(EigenvalueEntry(_parse_number(raw["value"], spot), mult))
        except InvariantViolation as exc:
            raise SchemaError(f"{spot}: {exc}") from exc
    mode_raw = doc["mode"]
    try:
        mode = SpectrumMode(mode_raw)
    except ValueError:
        raise SchemaError(f"{where}.mode: expected 'exact' or 'upper-bound-set'")
    complete_below = _parse_number(doc["complete_below"], f"{where}.complete_below")
    try:
        return SpectrumList(tuple(entries), complete_below, mode)
    except InvariantViolation:
        raise


def load_spectrum(
    document: dict,
    validate_obata: bool = True,
    eps: float = DEFAULT_EPSILON,
) -> LinkSpectrum:
    """Build a validated LinkSpectrum from a parsed interchange document.

    Numbers given as "p/q" strings are exact rationals; bare JSON numbers go
    to the float path.  Unknown keys are rejected.  ``has_killing_fields``
    is inferred from the 1-form list when absent.
    """
    if not isinstance(document, dict):
        raise SchemaError("spectrum document must be an object")
    unknown = set(document) - _TOP_KEYS
    if unknown:
        raise SchemaError(f"unknown top-level keys {sorted(unknown)}")
    for key in ("dim_cone", "name", "scalar", "coclosed_one_form", "tt_einstein", "ends"):
        if key not in document:
            raise SchemaError(f"missing top-level key {key!r}")
    n = document["dim_cone"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise SchemaError("dim_cone must be an integer")
    name = document["name"]
    if not isinstance(name, str):
        raise SchemaError("name must be a string")
    scalar = _parse_spectrum(document["scalar"], "scalar")
    one_form = _parse_spectrum(document["coclosed_one_form"], "coclosed_one_form")
    tt = _parse_spectrum(document["tt_einstein"], "tt_einstein")
    raw_ends = document["ends"]
    if not isinstance(raw_ends, list):
        raise SchemaError("ends must be a list")
    ends = []
    for i, raw in enumerate(raw_ends):
        if not isinstance(raw, dict) or set(raw) != {"kind"}:
            raise SchemaError(f"ends[{i}]: expected an object with a single 'kind' key")
        try:
            ends.append(EndKind(raw["kind"]))
        except ValueError:
            raise SchemaError(f"ends[{i}].kind: expected 'AC' or 'CS'")
    killing = document.get("has_killing_fields")
    if killing is None:
        killing = any(
            e.value.compare_threshold(n - 2, eps) == 0 for e in one_form.entries
        )
    elif not isinstance(killing, bool):
        raise SchemaError("has_killing_fields must be a boolean")
    link = LinkSpectrum(
        n=n,
        name=name,
        scalar=scalar,
        coclosed_one_form=one_form,
        tt_einstein=tt,
        has_killing_fields=killing,
        is_round_sphere=False,
        ends=tuple(ends),
    )
    link.validate(validate_obata=validate_obata, eps=eps)
    return link
