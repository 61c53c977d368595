"""Tables (CSV) and figures (PNG) summarising a seeded batch of computations."""
from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .constructions import default_group_zoo, random_instance, verify_figure1  # noqa: E402
from .duality import hitting, packing  # noqa: E402
from .gadget_lab import CatalogSet  # noqa: E402
from .groups import make_cyclic  # noqa: E402


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def corpus_rows(seed: int, count: int, n_vertices: int = 7):
    rows = []
    zoo = default_group_zoo()
    for i in range(count):
        group = zoo[i % len(zoo)]
        g = random_instance(group, n_vertices, 0.4, 0.3, 0.3, seed * 100_003 + i)
        rows.append((seed * 100_003 + i, group.spec["kind"] + str(group.order), g.n, len(g.edges),
                     packing(g)[0], hitting(g)[0]))
    return rows


def write_report(out_dir: str, seed: int = 0, corpus: int = 60, figure1_max: int = 1,
                 catalog_nmax: int = 3) -> list:
    """Write every table and figure into ``out_dir``; returns the file names."""
    os.makedirs(out_dir, exist_ok=True)
    written = []

    fig_rows = []
    for n in range(1, figure1_max + 1):
        r = verify_figure1(n)
        fig_rows.append((n, r.vertices, r.edges, int(r.two_disjoint_odd), r.hitting, r.packing,
                         int(r.top_row_blocks), int(r.passed)))
    _write_csv(os.path.join(out_dir, "figure1.csv"),
               ["n", "vertices", "edges", "two_disjoint_odd", "hitting", "packing",
                "top_row_blocks", "passed"], fig_rows)
    written.append("figure1.csv")

    rows = corpus_rows(seed, corpus)
    _write_csv(os.path.join(out_dir, "corpus.csv"),
               ["seed", "group", "vertices", "edges", "packing", "hitting"], rows)
    written.append("corpus.csv")

    cats = CatalogSet.build(make_cyclic(2), 1, catalog_nmax)
    table = cats.by_r[1].size_table()
    _write_csv(os.path.join(out_dir, "catalog.csv"), ["interface_flags", "size", "types"], table)
    written.append("catalog.csv")
    ft = cats.ftable(2)
    _write_csv(os.path.join(out_dir, "ftable.csv"), ["k", "h", "f"],
               [(k, ft.h_of_k.get(k, ""), f) for k, f in sorted(ft.f_of_k.items())])
    written.append("ftable.csv")

    fig, ax = plt.subplots(figsize=(4.5, 4))
    pk = [r[4] for r in rows]
    ht = [r[5] for r in rows]
    counts = {}
    for p, h in zip(pk, ht):
        counts[(p, h)] = counts.get((p, h), 0) + 1
    xs, ys, ss = zip(*[(p, h, 25 * c) for (p, h), c in sorted(counts.items())])
    ax.scatter(xs, ys, s=ss, alpha=0.6)
    top = max(max(pk), max(ht), 1)
    ax.plot([0, top], [0, top], lw=0.8, color="gray")
    ax.plot([0, top], [0, 2 * top], lw=0.8, ls="--", color="gray")
    ax.set_xlabel("congestion-2 packing")
    ax.set_ylabel("minimum hitting set")
    ax.set_title(f"{len(rows)} random instances")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "duality_scatter.png"), dpi=120)
    plt.close(fig)
    written.append("duality_scatter.png")

    fig, ax = plt.subplots(figsize=(5, 3.2))
    flags = sorted({t[0] for t in table})
    sizes = sorted({t[1] for t in table})
    width = 0.8 / max(len(sizes), 1)
    for j, size in enumerate(sizes):
        vals = [sum(c for f, s, c in table if f == fl and s == size) for fl in flags]
        ax.bar([i + j * width for i in range(len(flags))], vals, width, label=f"{size} vertices")
    ax.set_xticks([i + width * (len(sizes) - 1) / 2 for i in range(len(flags))])
    ax.set_xticklabels(flags)
    ax.set_xlabel("interface vertex in S / T")
    ax.set_ylabel("distinct types")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "catalog_sizes.png"), dpi=120)
    plt.close(fig)
    written.append("catalog_sizes.png")
    return written
