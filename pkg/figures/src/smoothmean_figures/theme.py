"""Single styling table so histogram bars and bound lines always match.

One fixed color per method id; every artist for a method (line, bars,
bound overlay) pulls from this table.
"""

METHOD_COLORS = {
    "mean": "#1f77b4",
    "med": "#ff7f0e",
    "mom": "#2ca02c",
    "mest": "#d62728",
    "mult_b": "#9467bd",
    "mult_bc": "#8c564b",
    "mult_g": "#e377c2",
    "mult_w": "#7f7f7f",
    "mult_s": "#bcbd22",
    "add_g": "#17becf",
    "add_w": "#aec7e8",
    "add_s": "#ffbb78",
}

MAX_DEVIATION_STYLE = {"color": "black", "linestyle": "--", "linewidth": 1.2}
LINE_WIDTH = 1.6
HIST_BINS = 40
