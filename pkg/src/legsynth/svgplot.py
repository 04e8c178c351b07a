"""Minimal SVG emitter for line and scatter plots.

Plots are built from polyline/circle primitives only, so outputs are
plain diff-able text with no plotting-toolkit dependency.
"""

import numpy as np

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#555555")


class SvgPlot:
    """Accumulates data series, then renders one SVG document."""

    def __init__(self, width=640, height=480, margin=50, title="",
                 equal_aspect=False):
        self.width = width
        self.height = height
        self.margin = margin
        self.title = title
        self.equal_aspect = equal_aspect
        self.series = []

    def add_line(self, xs, ys, label="", color=None):
        self.series.append(("line", np.asarray(xs, float),
                            np.asarray(ys, float), label, color))

    def add_scatter(self, xs, ys, label="", color=None, radius=3.0):
        self.series.append(("scatter", np.asarray(xs, float),
                            np.asarray(ys, float), label, color, radius))

    def _bounds(self):
        xs = np.concatenate([s[1] for s in self.series if len(s[1])])
        ys = np.concatenate([s[2] for s in self.series if len(s[2])])
        x0, x1 = float(xs.min()), float(xs.max())
        y0, y1 = float(ys.min()), float(ys.max())
        if x1 - x0 < 1e-12:
            x0, x1 = x0 - 0.5, x1 + 0.5
        if y1 - y0 < 1e-12:
            y0, y1 = y0 - 0.5, y1 + 0.5
        if self.equal_aspect:
            spanx, spany = x1 - x0, y1 - y0
            span = max(spanx, spany)
            cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
            x0, x1 = cx - span / 2, cx + span / 2
            y0, y1 = cy - span / 2, cy + span / 2
        return x0, x1, y0, y1

    def render(self, comment=None):
        if not self.series:
            raise ValueError("nothing to plot")
        x0, x1, y0, y1 = self._bounds()
        iw = self.width - 2 * self.margin
        ih = self.height - 2 * self.margin

        def tx(x):
            return self.margin + (x - x0) / (x1 - x0) * iw

        def ty(y):
            return self.height - self.margin - (y - y0) / (y1 - y0) * ih

        parts = [f'<svg xmlns="http://www.w3.org/2000/svg" '
                 f'width="{self.width}" height="{self.height}">']
        if comment:
            safe = comment.replace("--", "- -")
            parts.append(f"<!-- {safe} -->")
        parts.append(f'<rect width="{self.width}" height="{self.height}" '
                     f'fill="white"/>')
        parts.append(
            f'<rect x="{self.margin}" y="{self.margin}" width="{iw}" '
            f'height="{ih}" fill="none" stroke="#999"/>')
        if self.title:
            parts.append(f'<text x="{self.width / 2}" y="{self.margin - 15}" '
                         f'text-anchor="middle" font-size="14">'
                         f'{self.title}</text>')
        for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
            xv = x0 + tick * (x1 - x0)
            yv = y0 + tick * (y1 - y0)
            parts.append(f'<text x="{tx(xv):.1f}" y="{self.height - self.margin + 18}" '
                         f'text-anchor="middle" font-size="10">{xv:.4g}</text>')
            parts.append(f'<text x="{self.margin - 6}" y="{ty(yv):.1f}" '
                         f'text-anchor="end" font-size="10">{yv:.4g}</text>')

        legend_y = self.margin + 14
        for i, series in enumerate(self.series):
            kind, xs, ys, label = series[0], series[1], series[2], series[3]
            color = series[4] or _COLORS[i % len(_COLORS)]
            if kind == "line":
                points = " ".join(f"{tx(x):.2f},{ty(y):.2f}"
                                  for x, y in zip(xs, ys))
                parts.append(f'<polyline points="{points}" fill="none" '
                             f'stroke="{color}" stroke-width="1.5"/>')
            else:
                radius = series[5]
                for x, y in zip(xs, ys):
                    parts.append(f'<circle cx="{tx(x):.2f}" cy="{ty(y):.2f}" '
                                 f'r="{radius}" fill="{color}" '
                                 f'fill-opacity="0.7"/>')
            if label:
                parts.append(f'<rect x="{self.width - self.margin - 130}" '
                             f'y="{legend_y - 9}" width="12" height="12" '
                             f'fill="{color}"/>')
                parts.append(f'<text x="{self.width - self.margin - 112}" '
                             f'y="{legend_y + 2}" font-size="11">{label}</text>')
                legend_y += 18
        parts.append("</svg>")
        return "\n".join(parts) + "\n"

    def write(self, path, comment=None):
        with open(path, "w") as fh:
            fh.write(self.render(comment=comment))
