"""Report assembly and serialization.

Reports are plain dictionaries shaped by the committed report schema,
serialized either as canonical JSON (sorted keys, fixed separators, so
identical inputs give byte-identical output) or as a human-readable text
block.  Normal variables of each center are rendered capitalized inside the
projectivized section string to signal their projective-coordinate role;
this is a display convention only.
"""

from __future__ import annotations

import json

from . import __version__
from .geometry import Analysis, Scene, Verdict
from .scene_io import echo_input
from .sod import CenterShape, SodApplicabilityError, lefschetz, serre_vanishing_record, sod

REPORT_SCHEMA_ID = "strictsmooth-report/1"


def _capitalized(name: str) -> str:
    return name[0].upper() + name[1:] if name else name


def _section_names(scene: Scene, center) -> tuple:
    names = list(scene.names)
    for i in center.vanishing:
        names[i] = _capitalized(names[i])
    return tuple(names)


def _verdict_doc(v: Verdict, scene: Scene) -> dict:
    doc = {"status": v.status.value, "detail": v.detail}
    if v.witness is None:
        doc["witness"] = None
    else:
        names = v.witness_names or scene.names
        doc["witness"] = {
            "variables": list(names),
            "generators": [g.render(names) for g in v.witness.generators],
        }
    if v.chart is not None:
        center_name, variable = v.chart
        doc["chart"] = {"center": center_name, "variable": scene.names[variable]}
    else:
        doc["chart"] = None
    return doc


def _shapes(analysis: Analysis) -> list:
    return [
        CenterShape(a.center.name, a.center.codimension, a.multiplicity)
        for a in analysis.centers
    ]


def _lefschetz_section(analysis: Analysis) -> list:
    out = []
    for shape in _shapes(analysis):
        result = lefschetz(shape)
        entry = {"center": shape.name, "applicable": result.applicable}
        if result.applicable:
            entry["blocks"] = [
                {"index": b.index, "kind": b.kind, "twist": b.twist}
                for b in result.blocks
            ]
            entry["dual_blocks"] = [
                {"index": b.index, "kind": b.kind, "twist": b.twist}
                for b in result.dual_blocks
            ]
        else:
            entry["reason"] = result.reason
        out.append(entry)
    return out


def _sod_section(analysis: Analysis) -> dict:
    try:
        blocks = sod(_shapes(analysis))
    except SodApplicabilityError as exc:
        return {"applicable": False, "reason": str(exc)}
    rendered = []
    for b in blocks:
        if b.residual:
            rendered.append({"residual": True, "weakly_crepant": True})
        else:
            rendered.append({"center": b.center, "twist": b.twist})
    return {"applicable": True, "twist_order": "ascending", "blocks": rendered}


def _serre_section(analysis: Analysis) -> list:
    out = []
    for shape in _shapes(analysis):
        record = serre_vanishing_record(shape)
        out.append(
            {
                "center": record.center,
                "open_range": [record.lower, record.upper],
                "twists": list(record.twists),
            }
        )
    return out


def _center_section(analysis: Analysis) -> list:
    scene = analysis.scene
    out = []
    for a in analysis.centers:
        entry = {
            "name": a.center.name,
            "vanishing": [scene.names[i] for i in a.center.vanishing],
            "codimension": a.center.codimension,
            "multiplicity": a.multiplicity,
            "leading_form": a.leading_form.render(scene.names),
            "section": a.section.render(_section_names(scene, a.center)),
            "section_smooth": _verdict_doc(a.section_verdict, scene),
            "discrepancy": a.discrepancy,
            "lefschetz_applicable": a.lefschetz_applicable,
        }
        if a.base_locus is None:
            entry["base_locus"] = {
                "applicable": False,
                "reason": f"vanishing order is {a.multiplicity}, not 1",
            }
        else:
            tangent = a.center.tangent(scene.nvars)
            tangent_names = [scene.names[i] for i in tangent]
            entry["base_locus"] = {
                "applicable": True,
                "equations": [eq.render(tangent_names) for eq in a.base_locus.equations],
                "tangent_variables": tangent_names,
                "dimension": "empty" if a.base_locus.dimension is None else a.base_locus.dimension,
                "expected_dimension": a.base_locus.expected_dimension,
                "vacuously_smooth": a.base_locus.vacuous,
                "verdict": _verdict_doc(a.base_locus.verdict, scene),
            }
        out.append(entry)
    return out


def _divisor_section(analysis: Analysis) -> dict:
    ledger = analysis.ledger
    per_center = []
    for r in ledger.records:
        per_center.append(
            {
                "center": r.center,
                "codimension": r.codimension,
                "multiplicity": r.multiplicity,
                "discrepancy_formula": r.by_formula,
                "discrepancy_lattice": r.by_lattice,
                "agree": r.by_formula == r.by_lattice,
                "crepant": r.crepant,
                "class_identity": r.class_identity,
            }
        )
    return {
        "assumes_normal": ledger.assumes_normal,
        "strict_transform": ledger.strict_transform.as_dict(),
        "canonical": ledger.canonical.as_dict(),
        "per_center": per_center,
    }


def _charts_section(analysis: Analysis) -> list:
    scene = analysis.scene
    out = []
    for chart_list in analysis.charts:
        for ch in chart_list:
            substitution = {
                scene.names[i]: image.render(ch.names)
                for i, image in sorted(ch.substitution.items())
            }
            out.append(
                {
                    "center": ch.center.name,
                    "variable": scene.names[ch.variable],
                    "coordinates": list(ch.names),
                    "substitution": substitution,
                    "strict_transform": ch.strict_transform.render(ch.names),
                    "exceptional_exponent": ch.exceptional_exponent,
                }
            )
    return out


def build_report(analysis: Analysis, command: str = "analyze") -> dict:
    """Assemble the report document for one CLI command."""
    scene = analysis.scene
    report = {
        "schema": REPORT_SCHEMA_ID,
        "tool_version": __version__,
        "command": command,
        "input": echo_input(scene),
        "warnings": list(analysis.warnings),
    }
    if command == "charts":
        report["charts"] = _charts_section(analysis)
        return report
    if command == "oracle":
        report["verdicts"] = {"chart_oracle": _verdict_doc(analysis.oracle, scene)}
        report["charts"] = _charts_section(analysis)
        return report
    if command == "sod":
        report["centers"] = _center_section(analysis)
        report["lefschetz"] = _lefschetz_section(analysis)
        report["sod"] = _sod_section(analysis)
        report["serre_vanishing"] = _serre_section(analysis)
        return report

    base_route = analysis.base_locus_route
    if base_route is None:
        if analysis.centers:
            reason = "some center has vanishing order above 1"
        else:
            reason = "there are no centers"
        base_doc = {"applicable": False, "reason": reason}
    else:
        base_doc = _verdict_doc(base_route, scene)
    report.update(
        {
            "notes": list(analysis.notes),
            "centers": _center_section(analysis),
            "verdicts": {
                "singular_locus_in_centers": _verdict_doc(
                    analysis.singular_containment, scene
                ),
                "section_criterion": _verdict_doc(analysis.section_route, scene),
                "base_locus_criterion": base_doc,
                "chart_oracle": _verdict_doc(analysis.oracle, scene),
                "consistent": analysis.consistent,
            },
            "divisor_classes": _divisor_section(analysis),
            "charts": _charts_section(analysis),
            "lefschetz": _lefschetz_section(analysis),
            "sod": _sod_section(analysis),
            "serre_vanishing": _serre_section(analysis),
        }
    )
    return report


def render_structured(report: dict) -> str:
    """Canonical JSON: byte-identical for identical inputs and tool version."""
    return json.dumps(report, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _plain_verdict(doc) -> str:
    if "applicable" in doc and not doc["applicable"]:
        return f"not applicable ({doc['reason']})"
    text = doc["status"]
    if doc.get("detail"):
        text += f" ({doc['detail']})"
    return text


def render_plain(report: dict) -> str:
    """Human-readable rendering of the same report content."""
    lines = []
    push = lines.append
    push(f"strictsmooth {report['tool_version']} :: {report['command']}")
    inp = report["input"]
    push(f"variables: {', '.join(inp['variables'])}")
    push(f"hypersurface: {inp['hypersurface']}")
    fld = inp["field"]
    push(f"field: {fld['kind']}" + (f" p={fld['p']}" if fld["kind"] == "prime" else ""))
    for warning in report.get("warnings", []):
        push(f"warning: {warning}")
    for center in report.get("centers", []):
        push(f"center {center['name']}: vanishing {{{', '.join(center['vanishing'])}}}"
             f" d={center['codimension']} k={center['multiplicity']}"
             f" a={center['discrepancy']}")
        push(f"  leading form: {center['leading_form']}")
        push(f"  section: {center['section']}")
        if "section_smooth" in center:
            push(f"  exceptional divisor: {_plain_verdict(center['section_smooth'])}")
        base = center.get("base_locus")
        if base is not None:
            if base["applicable"]:
                push(
                    "  base locus: "
                    f"{_plain_verdict(base['verdict'])}, dimension {base['dimension']}"
                    f" (expected {base['expected_dimension']})"
                )
            else:
                push(f"  base locus: not applicable ({base['reason']})")
    verdicts = report.get("verdicts")
    if verdicts:
        for key in (
            "singular_locus_in_centers",
            "section_criterion",
            "base_locus_criterion",
            "chart_oracle",
        ):
            if key in verdicts:
                push(f"{key.replace('_', ' ')}: {_plain_verdict(verdicts[key])}")
        if "consistent" in verdicts:
            push(f"routes consistent: {'yes' if verdicts['consistent'] else 'NO'}")
    for note in report.get("notes", []):
        push(f"note: {note}")
    divisors = report.get("divisor_classes")
    if divisors:
        push(f"strict transform class: {divisors['strict_transform']}")
        push(f"canonical class: {divisors['canonical']} (assumes the hypersurface is normal)")
    for chart in report.get("charts", []):
        push(
            f"chart [{chart['center']} / {chart['variable']}]: "
            f"strict transform {chart['strict_transform']} "
            f"(exceptional exponent {chart['exceptional_exponent']})"
        )
    sod_doc = report.get("sod")
    if sod_doc:
        if sod_doc["applicable"]:
            rendered = []
            for b in sod_doc["blocks"]:
                if b.get("residual"):
                    rendered.append("residual (weakly crepant)")
                else:
                    rendered.append(f"({b['center']}, twist {b['twist']})")
            push("sod blocks: " + "; ".join(rendered))
        else:
            push(f"sod: not applicable ({sod_doc['reason']})")
    return "\n".join(lines) + "\n"


def summary_line(analysis: Analysis) -> str:
    parts = []
    for a in analysis.centers:
        parts.append(f"{a.center.name}: k={a.multiplicity} d={a.center.codimension}")
    routes = (
        f"section={analysis.section_route.status.value}"
        f" oracle={analysis.oracle.status.value}"
        f" consistent={'yes' if analysis.consistent else 'NO'}"
    )
    prefix = "; ".join(parts)
    return f"{prefix} | {routes}" if prefix else routes
