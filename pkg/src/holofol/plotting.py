"""SVG projections of traced trajectories.

The plots are real projections of complex data and make no claim about the
complex curve itself; the generating command line is embedded in the SVG
metadata for reproducibility.
"""

from __future__ import annotations

from typing import List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_trace_svg(rows: Sequence[Sequence[str]], out_path: str, command_line: str):
    """Render the fixed-header trace CSV rows to an SVG file."""
    header, data = rows[0], rows[1:]
    idx = {name: k for k, name in enumerate(header)}
    cols = {name: [float(r[idx[name]]) for r in data] for name in header}
    t_abs = [abs(complex(a, b)) for a, b in zip(cols["t_re"], cols["t_im"])]
    x_abs = [abs(complex(a, b)) for a, b in zip(cols["x_re"], cols["x_im"])]
    y_abs = [abs(complex(a, b)) for a, b in zip(cols["y_re"], cols["y_im"])]

    fig, axes = plt.subplots(2, 2, figsize=(9, 7))
    ax = axes[0][0]
    ax.plot(t_abs, x_abs, label="|x|")
    ax.plot(t_abs, y_abs, label="|y|")
    ax.set_xlabel("|t|")
    ax.legend()
    ax.set_title("moduli along the trace")

    axes[0][1].plot(cols["x_re"], cols["x_im"], marker=".", markersize=2)
    axes[0][1].set_xlabel("Re x")
    axes[0][1].set_ylabel("Im x")
    axes[0][1].set_title("x-plane projection")

    axes[1][0].plot(cols["y_re"], cols["y_im"], marker=".", markersize=2)
    axes[1][0].set_xlabel("Re y")
    axes[1][0].set_ylabel("Im y")
    axes[1][0].set_title("y-plane projection")

    g_abs = [abs(complex(a, b)) for a, b in zip(cols["G_re"], cols["G_im"])]
    axes[1][1].plot(t_abs, g_abs)
    axes[1][1].set_xlabel("|t|")
    axes[1][1].set_ylabel("|G|")
    axes[1][1].set_title("conserved value")

    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata={"Description": command_line})
    plt.close(fig)
