"""Matplotlib renderings for CLI reports.

Every figure is written next to a small CSV holding the plotted numbers,
so downstream tooling never has to scrape pixels.
"""

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _ensure_dir(directory):
    os.makedirs(directory, exist_ok=True)


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def betti_figure(betti, directory, stem, title):
    """Bar chart of Betti numbers plus a CSV of the same values."""
    _ensure_dir(directory)
    png = os.path.join(directory, f"{stem}.png")
    csv_path = os.path.join(directory, f"{stem}.csv")
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar(range(len(betti)), betti, color="#30678d")
    ax.set_xlabel("degree")
    ax.set_ylabel("rank")
    ax.set_title(title)
    ax.set_xticks(range(len(betti)))
    fig.tight_layout()
    fig.savefig(png, dpi=150)
    plt.close(fig)
    _write_csv(csv_path, ["degree", "rank"], list(enumerate(betti)))
    return [png, csv_path]


def grades_figure(grades, directory, stem, title):
    """Bar chart of incidence-algebra grade dimensions."""
    _ensure_dir(directory)
    png = os.path.join(directory, f"{stem}.png")
    csv_path = os.path.join(directory, f"{stem}.csv")
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar(range(len(grades)), grades, color="#d08633")
    ax.set_xlabel("grade")
    ax.set_ylabel("dimension")
    ax.set_title(title)
    ax.set_xticks(range(len(grades)))
    fig.tight_layout()
    fig.savefig(png, dpi=150)
    plt.close(fig)
    _write_csv(csv_path, ["grade", "dimension"], list(enumerate(grades)))
    return [png, csv_path]


def dag_figure(dag, directory, stem, title):
    """Layered drawing of a block DAG: height up the page, parent edges."""
    _ensure_dir(directory)
    png = os.path.join(directory, f"{stem}.png")
    csv_path = os.path.join(directory, f"{stem}.csv")
    poset = dag.to_poset()
    levels = {}
    for b in dag.blocks:
        levels.setdefault(poset.height(b), []).append(b)
    pos = {}
    for h, row in sorted(levels.items()):
        for i, b in enumerate(row):
            pos[b] = (i - (len(row) - 1) / 2.0, h)
    fig, ax = plt.subplots(figsize=(5, 4))
    for b, ps in dag.parents.items():
        for p in sorted(ps, key=str):
            ax.plot([pos[p][0], pos[b][0]], [pos[p][1], pos[b][1]],
                    color="#999999", zorder=1)
    xs = [pos[b][0] for b in dag.blocks]
    ys = [pos[b][1] for b in dag.blocks]
    ax.scatter(xs, ys, s=300, color="#30678d", zorder=2)
    for b in dag.blocks:
        ax.annotate(str(b), pos[b], ha="center", va="center",
                    color="white", fontsize=7, zorder=3)
    ax.set_title(title)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(png, dpi=150)
    plt.close(fig)
    _write_csv(csv_path, ["block", "height", "parents"],
               [(str(b), poset.height(b),
                 ";".join(sorted(map(str, dag.parents[b]))))
                for b in dag.blocks])
    return [png, csv_path]
