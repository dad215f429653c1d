"""Report assembly and rendering (text table, JSON, CSV).

Rendering conventions, fixed for reproducibility:

  * exact rationals render as "p/q" strings in JSON (and bare in text);
    float-path values render as JSON numbers and with a "~" prefix in text,
    so every numeric entry carries its arithmetic path;
  * CSV numeric cells use 17 significant digits via float conversion;
  * output is byte-deterministic for a given link and option set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .core import DEFAULT_EPSILON, Scalar, Weight
from .errors import EmptyRateSet, InsufficientSpectrum
from .indicial import (
    IndicialRoot,
    TangentialEigenvalue,
    box1_spectrum,
    boxL_spectrum,
    indicial_set_bianchi,
    indicial_set_essential,
    indicial_set_full,
)
from .links import LinkSpectrum
from .rates import (
    AdmMassReport,
    EndOrderReport,
    Rates,
    ResonanceAnalysis,
    StabilityReport,
    adm_mass_verdict,
    end_order,
    linear_stability,
    resonance_analysis,
    xi_rates,
)


def fmt_scalar(s: Scalar) -> str:
    if s.exact:
        return str(s.value)
    return "~" + format(float(s.value), ".17g")


def fmt_weight(w: Weight) -> str:
    if w.is_real:
        body = fmt_scalar(w.real)
    else:
        sign = "+" if float(w.imag) >= 0 else "-"
        body = f"({fmt_scalar(w.real)}{sign}{fmt_scalar(abs_scalar(w.imag))}i)"
    if w.log_factor:
        body += "*log(r)"
    return body


def abs_scalar(s: Scalar) -> Scalar:
    return -s if s < 0 else s


def scalar_json(s: Scalar):
    if s.exact:
        return str(s.value)
    return float(s.value)


def weight_json(w: Weight):
    return {"re": scalar_json(w.real), "im": scalar_json(w.imag), "log": w.log_factor}


def csv_number(s: Scalar) -> str:
    return format(float(s), ".17g")


@dataclass(frozen=True)
class ReportOptions:
    epsilon: float = DEFAULT_EPSILON
    max_roots: Optional[int] = None


@dataclass
class Report:
    link: LinkSpectrum
    options: ReportOptions
    box1: List[TangentialEigenvalue]
    boxL: List[TangentialEigenvalue]
    roots_full: List[IndicialRoot]
    roots_bianchi: List[IndicialRoot]
    roots_essential: List[IndicialRoot]
    rates: Optional[Rates]
    rate_error: Optional[str]
    resonance: ResonanceAnalysis
    stability: StabilityReport
    adm: AdmMassReport
    end_orders: List[EndOrderReport]
    warnings: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


_STANDING_NOTES = [
    "essential set emitted without the zero root; the variant adjoining 0 "
    "never changes the rates (both minima run over positive reals)",
    "E_plus filters by Re > 0 uniformly, equivalent to requiring kappa > 0 "
    "on the TT branch",
]


def build_report(link: LinkSpectrum, options: Optional[ReportOptions] = None) -> Report:
    opts = options or ReportOptions()
    eps = opts.epsilon
    box1 = box1_spectrum(link, eps)
    boxL = boxL_spectrum(link, eps)
    full = indicial_set_full(link, eps)
    bianchi = indicial_set_bianchi(link, eps)
    essential = indicial_set_essential(link, eps)
    resonance = resonance_analysis(link, eps)
    stability = linear_stability(link, eps)
    adm = adm_mass_verdict(link, eps)
    ends = [end_order(link, kind, eps) for kind in link.ends]
    rates: Optional[Rates] = None
    rate_error: Optional[str] = None
    try:
        rates = xi_rates(link, eps)
    except (InsufficientSpectrum, EmptyRateSet) as exc:
        rate_error = str(exc)

    warnings: List[str] = []
    if link.any_upper_bound_mode():
        warnings.append(
            "upper-bound-set inputs: computed orders are lower bounds, "
            "reported with '>='"
        )
    for entry in boxL:
        if entry.note and "possibly vanishing" in entry.note:
            warnings.append(entry.note)
    for value in resonance.coercions:
        warnings.append(
            f"float-path value {fmt_scalar(value)} within epsilon of the "
            "resonance threshold was coerced to exactly resonant"
        )
    warnings.extend(resonance.tangential_warnings)
    warnings.extend(stability.warnings)
    if rate_error:
        warnings.append(f"rates unavailable: {rate_error}")
    for label, lst in (
        ("scalar", link.scalar),
        ("coclosed_one_form", link.coclosed_one_form),
        ("tt_einstein", link.tt_einstein),
    ):
        warnings.append(
            f"completeness margin: {label} certified below "
            f"{fmt_scalar(lst.complete_below)}"
        )
    return Report(
        link=link,
        options=opts,
        box1=box1,
        boxL=boxL,
        roots_full=full,
        roots_bianchi=bianchi,
        roots_essential=essential,
        rates=rates,
        rate_error=rate_error,
        resonance=resonance,
        stability=stability,
        adm=adm,
        end_orders=ends,
        warnings=warnings,
        notes=list(_STANDING_NOTES),
    )


def end_order_line(r: EndOrderReport) -> str:
    if r.weak:
        return f"{r.end_kind.value}: weakly of order {fmt_scalar(r.order)} (log)"
    symbol = ">=" if r.bound_only else "="
    return f"{r.end_kind.value} order {symbol} {fmt_scalar(r.order)}"


def _root_row(root: IndicialRoot) -> str:
    flags = []
    if root.bianchi_compatible:
        flags.append("gauge")
    if not root.lie_derivative:
        flags.append("essential")
    return (
        f"{fmt_weight(root.weight):>14}  {root.family.value:<22} "
        f"i={root.source_index:<3} branch={root.branch} shift={root.shift:+d}  "
        f"[{','.join(flags) if flags else '-'}]"
    )


def _tangential_row(entry: TangentialEigenvalue) -> str:
    status = "dropped:" + entry.drop_reason.value if entry.dropped else "kept"
    fam = entry.family.value if hasattr(entry.family, "value") else str(entry.family)
    return f"{fmt_scalar(entry.value):>10}  {fam:<22} i={entry.source_index:<3} {status}"


def render_text(report: Report) -> str:
    link = report.link
    opts = report.options
    limit = opts.max_roots
    lines: List[str] = []
    lines.append(f"link: {link.name} (n={link.n})")
    modes = ", ".join(
        f"{label}={lst.mode.value}"
        for label, lst in (
            ("lambda", link.scalar),
            ("mu", link.coclosed_one_form),
            ("kappa", link.tt_einstein),
        )
    )
    lines.append(f"modes: {modes}")
    lines.append(
        f"killing fields: {'yes' if link.has_killing_fields else 'no'}; "
        f"round sphere: {'yes' if link.is_round_sphere else 'no'}"
    )
    lines.append(f"epsilon (float-path thresholds): {opts.epsilon:g}")
    lines.append("")
    lines.append("tangential spectrum of the 1-form operator:")
    for entry in report.box1:
        lines.append("  " + _tangential_row(entry))
    lines.append("tangential spectrum of the Lichnerowicz operator:")
    for entry in report.boxL:
        lines.append("  " + _tangential_row(entry))
    for title, roots in (
        ("E_L (all indicial roots)", report.roots_full),
        ("E_B (Bianchi-gauge roots)", report.roots_bianchi),
        ("E (essential roots)", report.roots_essential),
    ):
        lines.append("")
        shown = roots if limit is None else roots[:limit]
        lines.append(f"{title}: {len(roots)} roots" + ("" if shown is roots else f" (showing {len(shown)})"))
        for root in shown:
            lines.append("  " + _root_row(root))
    lines.append("")
    if report.rates is not None:
        xp, xm = report.rates.xi_plus, report.rates.xi_minus
        lines.append(
            f"rates: xi_plus = {fmt_scalar(xp.value)} "
            f"(witness {fmt_weight(xp.root.weight)} from {xp.root.family.value})"
            f", xi_minus = {fmt_scalar(xm.value)} "
            f"(witness {fmt_weight(xm.root.weight) if xm.root else 'resonance'}"
            f", part {xm.part})"
        )
    else:
        lines.append(f"rates: unavailable ({report.rate_error})")
    lines.append(
        "resonance-dominated: " + ("yes" if report.resonance.dominated else "no")
    )
    if report.stability.stable:
        lines.append("linear stability: stable")
    else:
        lines.append(
            f"linear stability: unstable (witness kappa = "
            f"{fmt_scalar(report.stability.witness)})"
        )
    lines.append(f"ADM mass: {report.adm.verdict} ({report.adm.reason})")
    for r in report.end_orders:
        lines.append(end_order_line(r))
    if report.warnings:
        lines.append("")
        lines.append("warnings:")
        for w in report.warnings:
            lines.append(f"  - {w}")
    if report.notes:
        lines.append("notes:")
        for nline in report.notes:
            lines.append(f"  - {nline}")
    return "\n".join(lines) + "\n"


def _tangential_json(entry: TangentialEigenvalue) -> Dict:
    fam = entry.family.value if hasattr(entry.family, "value") else str(entry.family)
    out = {
        "value": scalar_json(entry.value),
        "family": fam,
        "index": entry.source_index,
        "source": scalar_json(entry.source_value),
        "dropped": entry.dropped,
    }
    if entry.drop_reason is not None:
        out["drop_reason"] = entry.drop_reason.value
    if entry.note:
        out["note"] = entry.note
    return out


def _root_json(root: IndicialRoot) -> Dict:
    return {
        "weight": weight_json(root.weight),
        "family": root.family.value,
        "index": root.source_index,
        "source": scalar_json(root.source_value),
        "branch": root.branch,
        "shift": root.shift,
        "tangential": scalar_json(root.tangential_value),
        "bianchi_compatible": root.bianchi_compatible,
        "lie_derivative": root.lie_derivative,
    }


def report_dict(report: Report) -> Dict:
    link = report.link
    limit = report.options.max_roots

    def roots_block(roots):
        shown = roots if limit is None else roots[:limit]
        return {"count": len(roots), "roots": [_root_json(r) for r in shown]}

    rates_block = None
    if report.rates is not None:
        rates_block = {
            "xi_plus": scalar_json(report.rates.xi_plus.value),
            "xi_plus_witness": _root_json(report.rates.xi_plus.root),
            "xi_minus": scalar_json(report.rates.xi_minus.value),
            "xi_minus_part": report.rates.xi_minus.part,
        }
        if report.rates.xi_minus.root is not None:
            rates_block["xi_minus_witness"] = _root_json(report.rates.xi_minus.root)
    ends = []
    for r in report.end_orders:
        witness: object
        if isinstance(r.witness, Weight):
            witness = weight_json(r.witness)
        elif hasattr(r.witness, "root") and r.witness.root is not None:
            witness = _root_json(r.witness.root)
        else:
            witness = None
        ends.append(
            {
                "end": r.end_kind.value,
                "order": scalar_json(r.order),
                "weak_log": r.weak,
                "bound_only": r.bound_only,
                "witness": witness,
                "statement": end_order_line(r),
            }
        )
    return {
        "format": "conifold-spectra-report/1",
        "conventions": {
            "exact_values": "rendered as p/q strings",
            "float_values": "rendered as JSON numbers",
            "epsilon": report.options.epsilon,
        },
        "link": {
            "name": link.name,
            "dim_cone": link.n,
            "has_killing_fields": link.has_killing_fields,
            "is_round_sphere": link.is_round_sphere,
            "modes": {
                "scalar": link.scalar.mode.value,
                "coclosed_one_form": link.coclosed_one_form.mode.value,
                "tt_einstein": link.tt_einstein.mode.value,
            },
        },
        "tangential": {
            "one_form": [_tangential_json(e) for e in report.box1],
            "lichnerowicz": [_tangential_json(e) for e in report.boxL],
        },
        "indicial_sets": {
            "full": roots_block(report.roots_full),
            "bianchi": roots_block(report.roots_bianchi),
            "essential": roots_block(report.roots_essential),
        },
        "rates": rates_block,
        "rate_error": report.rate_error,
        "resonance_dominated": report.resonance.dominated,
        "linear_stability": {
            "stable": report.stability.stable,
            "witness": None
            if report.stability.witness is None
            else scalar_json(report.stability.witness),
            "boundary": [scalar_json(v) for v in report.stability.boundary],
        },
        "adm_mass": {"verdict": report.adm.verdict, "reason": report.adm.reason},
        "end_orders": ends,
        "warnings": report.warnings,
        "notes": report.notes,
    }


def render_json(report: Report) -> str:
    return json.dumps(report_dict(report), indent=2) + "\n"


def render_csv(report: Report) -> str:
    rows = [("section", "key", "value")]
    d = report_dict(report)
    rows.append(("link", "name", d["link"]["name"]))
    rows.append(("link", "dim_cone", str(d["link"]["dim_cone"])))
    if report.rates is not None:
        rows.append(("rates", "xi_plus", csv_number(report.rates.xi_plus.value)))
        rows.append(("rates", "xi_minus", csv_number(report.rates.xi_minus.value)))
    rows.append(("verdict", "resonance_dominated", str(report.resonance.dominated)))
    rows.append(("verdict", "stable", str(report.stability.stable)))
    rows.append(("verdict", "adm_mass", report.adm.verdict))
    for r in report.end_orders:
        rows.append(("end", r.end_kind.value, end_order_line(r)))
    limit = report.options.max_roots
    for name, roots in (
        ("EL", report.roots_full),
        ("EB", report.roots_bianchi),
        ("E", report.roots_essential),
    ):
        shown = roots if limit is None else roots[:limit]
        for i, root in enumerate(shown):
            rows.append(
                (
                    name,
                    str(i),
                    f"{fmt_weight(root.weight)}|{root.family.value}|{root.source_index}"
                    f"|{root.branch}|{root.shift:+d}",
                )
            )
    out = []
    for row in rows:
        out.append(",".join(_csv_escape(cell) for cell in row))
    return "\n".join(out) + "\n"


def _csv_escape(cell: str) -> str:
    if any(ch in cell for ch in ",\"\n"):
        return '"' + cell.replace('"', '""') + '"'
    return cell
