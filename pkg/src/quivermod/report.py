"""Report rendering: delimited tables plus matplotlib figures.

Every CLI verb with a --report option lands here: tab-separated data
files next to PNG figures, written into the requested directory.
"""

from __future__ import annotations

import json
import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch


def _ensure(outdir):
    os.makedirs(outdir, exist_ok=True)
    return outdir


def write_tsv(path, header, rows):
    with open(path, "w") as fh:
        fh.write("\t".join(header) + "\n")
        for row in rows:
            fh.write("\t".join(str(v) for v in row) + "\n")


def _circle_layout(k, radius=1.0):
    return [(radius * math.cos(2 * math.pi * i / k - math.pi / 2),
             radius * math.sin(2 * math.pi * i / k - math.pi / 2))
            for i in range(k)]


def draw_modular_graph(mclass, path, title=None):
    """Render the modular graph: classes as nodes, edge orbits as arcs."""
    k = len(mclass.reps)
    pos = _circle_layout(max(k, 2))
    fig, ax = plt.subplots(figsize=(6, 6))
    seen_pairs = {}
    for orbit in mclass.edge_orbits():
        (c1, k1), (c2, k2) = orbit.sides
        if orbit.loop:
            x, y = pos[c1]
            r = 0.22
            cx, cy = x * (1 + r * 2.2), y * (1 + r * 2.2)
            circ = plt.Circle((cx, cy), r, fill=False, color="tab:gray")
            ax.add_patch(circ)
            ax.annotate(f"m{k1}|m{k2}", (cx, cy + r * 1.35),
                        ha="center", fontsize=8, color="tab:gray")
        else:
            bend = seen_pairs.get((c1, c2), 0)
            seen_pairs[(c1, c2)] = bend + 1
            rad = 0.0 if bend == 0 else (0.25 if bend % 2 else -0.25) * ((bend + 1) // 2)
            arrow = FancyArrowPatch(pos[c1], pos[c2], arrowstyle="-",
                                    connectionstyle=f"arc3,rad={rad}",
                                    color="tab:gray")
            ax.add_patch(arrow)
            mx = (pos[c1][0] + pos[c2][0]) / 2
            my = (pos[c1][1] + pos[c2][1]) / 2
            ax.annotate(f"m{k1}|m{k2}", (mx, my + 0.06 + 0.1 * rad),
                        ha="center", fontsize=8, color="tab:gray")
    for cid, (x, y) in enumerate(pos[:k]):
        ax.plot([x], [y], "o", markersize=22, color="tab:blue", zorder=3)
        ax.annotate(f"Q{cid}", (x, y), color="white", ha="center",
                    va="center", zorder=4, fontsize=10)
    counts = mclass.face_counts()
    face_note = ", ".join(f"{v} {k}s" for k, v in sorted(counts.items()))
    ax.set_title(title or f"modular graph ({len(mclass.edge_orbits())} edge orbits; {face_note})")
    ax.set_xlim(-1.8, 1.8)
    ax.set_ylim(-1.8, 1.8)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def draw_quiver(matrix, path, title=None):
    """Render one quiver with the arrow-multiplicity convention."""
    pos = _circle_layout(matrix.n)
    fig, ax = plt.subplots(figsize=(5, 5))
    for i in range(matrix.n):
        for j in range(matrix.n):
            count = matrix.arrow_count(i, j)
            if count == 0:
                continue
            for arc in range(min(count, 3)):
                rad = 0.0 if count == 1 else (arc - (min(count, 3) - 1) / 2) * 0.25
                arrow = FancyArrowPatch(
                    pos[i], pos[j], arrowstyle="-|>", mutation_scale=14,
                    connectionstyle=f"arc3,rad={rad}",
                    shrinkA=14, shrinkB=14, color="tab:gray")
                ax.add_patch(arrow)
            if count > 3:
                mx = (pos[i][0] + pos[j][0]) / 2
                my = (pos[i][1] + pos[j][1]) / 2
                ax.annotate(f"x{count}", (mx, my), fontsize=8, color="tab:red")
    for v, (x, y) in enumerate(pos):
        frozen = v in matrix.frozen
        color = "tab:gray" if frozen else "tab:blue"
        ax.plot([x], [y], "s" if frozen else "o", markersize=20, color=color, zorder=3)
        label = str(v) if matrix.weights[v] == 1 else f"{v}({matrix.weights[v]})"
        ax.annotate(label, (x, y), color="white", ha="center", va="center",
                    zorder=4, fontsize=9)
    ax.set_title(title or "quiver")
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def enumerate_report(mclass, outdir):
    _ensure(outdir)
    doc = mclass.to_document()
    with open(os.path.join(outdir, "class.json"), "w") as fh:
        json.dump(doc, fh, indent=2)
    with open(os.path.join(outdir, "modular_graph.dot"), "w") as fh:
        fh.write(mclass.to_dot() + "\n")
    write_tsv(os.path.join(outdir, "edge_orbits.tsv"),
              ["orbit", "class_a", "slot_a", "class_b", "slot_b", "loop"],
              [(i, *orbit.sides[0], *orbit.sides[1], orbit.loop)
               for i, orbit in enumerate(mclass.edge_orbits())])
    write_tsv(os.path.join(outdir, "face_orbits.tsv"),
              ["orbit", "base_class", "k", "l", "p", "h", "shape"],
              [(i, f.base, f.pair[0], f.pair[1], f.p, f.h, f.shape)
               for i, f in enumerate(mclass.face_orbits())])
    draw_modular_graph(mclass, os.path.join(outdir, "modular_graph.png"))
    draw_quiver(mclass.input_matrix, os.path.join(outdir, "input_quiver.png"),
                title="input quiver")
    return outdir


def presentation_text(pres, invariants=None):
    lines = ["# presentation derived from the modular graph",
             "# relators multiply left to right; the leftmost factor acts first",
             "", "[generators]"]
    for g in pres.generators:
        word = pres.expansions[g]
        lines.append(f"{g} = {word.format()}")
    lines.append("")
    lines.append("[relators]")
    for rel in pres.relators:
        lines.append(" ".join(f"{s}^{e}" if e != 1 else s for s, e in rel))
    if invariants is not None:
        lines.append("")
        lines.append(f"[abelianization]")
        lines.append(f"free_rank = {invariants.free_rank}")
        lines.append(f"torsion = {list(invariants.torsion)}")
        lines.append(f"group = {invariants.describe()}")
    return "\n".join(lines) + "\n"


def presentation_document(pres, invariants=None):
    doc = {
        "generators": list(pres.generators),
        "relators": [[[s, e] for s, e in rel] for rel in pres.relators],
        "expansions": {g: pres.expansions[g].format() for g in pres.generators},
        "meta": {k: v for k, v in pres.meta.items() if k != "contexts"},
    }
    if invariants is not None:
        doc["abelianization"] = {
            "free_rank": invariants.free_rank,
            "torsion": list(invariants.torsion),
            "description": invariants.describe(),
        }
    return doc


def present_report(mclass, pres, invariants, outdir):
    _ensure(outdir)
    with open(os.path.join(outdir, "presentation.txt"), "w") as fh:
        fh.write(presentation_text(pres, invariants))
    with open(os.path.join(outdir, "presentation.json"), "w") as fh:
        json.dump(presentation_document(pres, invariants), fh, indent=2)
    draw_modular_graph(mclass, os.path.join(outdir, "modular_graph.png"))
    return outdir


def verify_report(results, outdir):
    """results: list of dicts with name/trivial/mode/elapsed/lengths."""
    _ensure(outdir)
    write_tsv(os.path.join(outdir, "verdicts.tsv"),
              ["relation", "mode", "trivial", "word_length", "elapsed_s", "note"],
              [(r["name"], r["mode"], r["trivial"], r["word_length"],
                f"{r['elapsed']:.4f}", r.get("note", ""))
               for r in results])
    fig, ax = plt.subplots(figsize=(7, max(2.5, 0.35 * len(results))))
    names = [r["name"] for r in results]
    times = [r["elapsed"] for r in results]
    colors = ["tab:green" if r["trivial"] else "tab:red" for r in results]
    ax.barh(range(len(results)), times, color=colors)
    ax.set_yticks(range(len(results)))
    ax.set_yticklabels(names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title("relation verification (green = trivial loop)")
    fig.savefig(os.path.join(outdir, "verify_times.png"), dpi=150,
                bbox_inches="tight")
    plt.close(fig)
    return outdir


def abelianize_report(invariants, outdir):
    _ensure(outdir)
    write_tsv(os.path.join(outdir, "invariants.tsv"),
              ["free_rank", "torsion", "description"],
              [(invariants.free_rank, ",".join(map(str, invariants.torsion)),
                invariants.describe())])
    return outdir
