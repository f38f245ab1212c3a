"""
SVG rendering of sweep results.
"""

import io

import matplotlib
from matplotlib.figure import Figure

from .codecs import Destination, write_output
from .core.exceptions import DomainError
from .core.experiment import SweepResult

# fixed ids and no timestamp: the same result always renders to the same bytes
SVG_RC = {"svg.hashsalt": "risfading", "svg.fonttype": "none"}


def build_figure(result: SweepResult) -> Figure:
    """Received power versus receiver distance, one line per strategy.

    The distance axis is logarithmic when the sweep spans at least a decade. A single
    point sweep is drawn with markers only.
    """
    if not len(result):
        raise DomainError("cannot plot an empty sweep result")
    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.add_subplot()
    d = result.distances
    single = len(d) == 1
    for strategy in result.strategies:
        dbm = [p for _, p in result.series(strategy)]
        if single:
            ax.plot(d, dbm, marker="o", linestyle="none", label=strategy.label)
        else:
            ax.plot(d, dbm, linewidth=1.2, label=strategy.label)
    if not single and d[-1] >= 10 * d[0]:
        ax.set_xscale("log")
    ax.set_xlabel("d2 (m)")
    ax.set_ylabel("Received power (dBm)")
    ax.set_title(result.name)
    ax.grid(True, which="both", linewidth=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def render_svg(result: SweepResult) -> bytes:
    fig = build_figure(result)
    buf = io.BytesIO()
    with matplotlib.rc_context(SVG_RC):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def emit_plot(result: SweepResult, destination: Destination) -> int:
    """Writes the SVG chart of `result` to a path (atomically) or a binary stream.
    Returns the number of bytes written.
    """
    return write_output(render_svg(result), destination)
