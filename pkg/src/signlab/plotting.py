"""Figure rendering for CLI reports.

Every curve-like report gets a companion PNG next to its delimited output.
Figures are presentation only; the CSV/JSON files remain the primary,
regression-stable artifacts.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_STYLE = {
    "figure.figsize": (5.0, 3.2),
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.marker": "o",
    "lines.markersize": 3.5,
}


def _col(rows, schema, name):
    i = schema.index(name)
    return [r[i] for r in rows]


def render_report(subcommand: str, schema: list, rows: list, path) -> bool:
    """Render the figure for a report; returns False when there is nothing
    sensible to draw (single-row or non-curve reports)."""
    if not rows:
        return False
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        try:
            if subcommand == "words":
                ks = _col(rows, schema, "k")
                ax.loglog(ks, _col(rows, schema, "raw_count"), label="raw")
                ax.loglog(
                    ks,
                    _col(rows, schema, "positive_density_count"),
                    label="positive density",
                )
                ax.set_xlabel("k")
                ax.set_ylabel("words of length k")
                ax.legend()
            elif subcommand in ("fourier", "periodic"):
                hs = _col(rows, schema, "H")
                ax.semilogx(hs, _col(rows, schema, "statistic"), base=2)
                ax.set_xlabel("H")
                ax.set_ylabel("local supremum statistic")
                ax.set_ylim(0, 1.05)
            elif subcommand == "vmv":
                ks = _col(rows, schema, "k")
                ax.loglog(ks, _col(rows, schema, "total"), label="total")
                ax.loglog(ks, _col(rows, schema, "diagonal"), label="diagonal")
                ax.set_xlabel("k")
                ax.set_ylabel("solutions")
                ax.legend()
            elif subcommand == "entropy":
                ps = _col(rows, schema, "p")
                ax.bar([str(p) for p in ps], _col(rows, schema, "mi_nats"))
                ax.set_xlabel("p")
                ax.set_ylabel("I(window; n mod p) [nats]")
            elif subcommand == "sieve":
                return False
            else:
                return False
            fig.tight_layout()
            fig.savefig(path, dpi=150)
        finally:
            plt.close(fig)
    return True
