"""
Émission de l'arbre de résolution

Texte lisible (étapes, cartes, généalogie des diviseurs) ou JSON via les
documents pydantic. Sortie déterministe : cartes triées par (étape, id).
"""
from typing import Dict, List

from app.common.schemas import (
    CenterDocument,
    ExceptionalDocument,
    GammaDocument,
    NodeDocument,
    StageDocument,
    TDocument,
    TreeDocument,
)
from app.features.exactpoly import format_rational
from app.features.resolver import NodeStatus, ResolutionTree, StageSummary, TreeNode


# =============================================================================
# DOCUMENTS
# =============================================================================

def node_document(node: TreeNode) -> NodeDocument:
    chart = node.chart
    names = chart.ring.variable_names
    exceptionals = [
        ExceptionalDocument(
            label=d.label,
            var=names[d.coordinate_index],
            birth=d.birth_stage,
            mult=node.exponents.get(d.label) if node.exponents else None,
            center=d.center_text,
            replaces=d.replaces,
        )
        for d in sorted(chart.exceptionals, key=lambda d: d.label)
    ]
    return NodeDocument(
        id=node.id,
        parent=node.parent,
        stage=node.stage,
        vars=list(names),
        substitution=chart.substitution_text(),
        exceptionals=exceptionals,
        status=node.status_text(),
        center=node.center.text() if node.center is not None else None,
        trace=node.trace.text() if node.trace is not None else None,
        stop_stage=node.stop_stage,
    )


def stage_document(summary: StageSummary) -> StageDocument:
    gamma = summary.gamma
    return StageDocument(
        index=summary.index,
        label=summary.label,
        max_w_ord=format_rational(summary.max_w_ord) if summary.max_w_ord is not None else None,
        max_t=TDocument(w_ord=format_rational(summary.max_t.w_ord), n=summary.max_t.n)
        if summary.max_t is not None else None,
        gamma=GammaDocument(codim=gamma.g1, weight=format_rational(gamma.g2), labels=list(gamma.labels))
        if gamma is not None else None,
        fd=summary.trace.text(),
        centers=[CenterDocument(chart=chart_id, ideal=text) for chart_id, text in summary.centers],
    )


def tree_document(tree: ResolutionTree) -> TreeDocument:
    diagnostics = {}
    if tree.diagnostics.get("stop_stages"):
        diagnostics["stopStages"] = list(tree.diagnostics["stop_stages"])
    return TreeDocument(
        task=tree.task,
        threshold=tree.threshold,
        vars=list(tree.ring.variable_names),
        nodes=[node_document(node) for node in tree.sorted_nodes()],
        stages=[stage_document(summary) for summary in tree.stages],
        diagnostics=diagnostics,
    )


def emit_json(tree: ResolutionTree) -> str:
    return tree_document(tree).model_dump_json(by_alias=True, indent=2)


def parse_json(text: str) -> TreeDocument:
    """Relit une émission JSON."""
    return TreeDocument.model_validate_json(text)


# =============================================================================
# TEXTE
# =============================================================================

def _stage_line(summary: StageSummary, trace: bool) -> str:
    centers = ", ".join(f"{text} [chart {chart_id}]" for chart_id, text in summary.centers)
    if summary.gamma is not None and summary.max_t is None:
        head = f"stage {summary.index}: Γmax = {summary.gamma.text()}"
    else:
        head = f"stage {summary.index}: max w-ord = {format_rational(summary.max_w_ord)}, max t = {summary.max_t.text()}"
    line = f"{head} center {centers} -> H{summary.label}"
    if trace:
        line = f"{line}\n    fd = {summary.trace.text()}"
    return line


def _node_line(node: TreeNode) -> str:
    parent = "-" if node.parent is None else str(node.parent)
    parts = [
        f"  chart {node.id} (stage {node.stage}, parent {parent}, {node.chart.substitution_text()}): {node.status_text()}"
    ]
    if node.center is not None:
        parts.append(f"center {node.center.text()}")
    if node.exponents:
        parts.append("exponents " + " ".join(f"H{label}^{a}" for label, a in sorted(node.exponents.items())))
    if node.stop_stage is not None:
        parts.append(f"stop at stage {node.stop_stage}")
    if node.status == NodeStatus.HALTED and node.detail:
        parts.append(f"({node.detail})")
    return ", ".join(parts)


def _genealogy(tree: ResolutionTree) -> List[str]:
    seen: Dict[int, str] = {}
    for node in tree.sorted_nodes():
        names = node.chart.ring.variable_names
        for d in node.chart.exceptionals:
            if d.label in seen:
                continue
            if d.initial:
                text = f"  H{d.label}: initial, {{{names[d.coordinate_index]} = 0}}"
            else:
                text = f"  H{d.label}: born at stage {d.birth_stage} from center {d.center_text}"
                if d.replaces is not None:
                    text = f"{text}, replaces H{d.replaces}"
            seen[d.label] = text
    return [seen[label] for label in sorted(seen)]


def emit_text(tree: ResolutionTree, trace: bool = False) -> str:
    """Listing texte : étapes, cartes puis diviseurs."""
    lines = [
        f"task {tree.task}, b = {tree.threshold}, vars {' '.join(tree.ring.variable_names)}",
    ]
    lines.extend(_stage_line(summary, trace) for summary in tree.stages)
    lines.append("charts:")
    lines.extend(_node_line(node) for node in tree.sorted_nodes())
    genealogy = _genealogy(tree)
    if genealogy:
        lines.append("divisors:")
        lines.extend(genealogy)
    return "\n".join(lines) + "\n"


def emit_tree(tree: ResolutionTree, emit_format: str = "text", trace: bool = False) -> str:
    """
    Sérialise l'arbre.

    Args:
        tree: Arbre d'une exécution
        emit_format: "text" ou "json"
        trace: Ajoute la trace f^d complète de chaque étape (texte)
    """
    if emit_format == "json":
        return emit_json(tree) + "\n"
    return emit_text(tree, trace)
