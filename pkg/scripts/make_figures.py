#!/usr/bin/env python3
"""Render demonstration figures as SVG files.

Produces three figures in the output directory:

  iterative_containment.svg   bounding circle and its first Hutchinson
                              iterates shrinking onto a rotated trifractal
  circum_vs_general.svg       circumcircle (red) against the general
                              bounding circle (blue) for a bifractal
  line_intersection.svg       a line through an attractor with the reported
                              intersection intervals marked on it
"""

import argparse
import cmath
import math
import os
import sys

from ifsbound import (
    Ball,
    CIRCUM_COLOR,
    GENERAL_COLOR,
    CircleOutline,
    IfsSystem,
    Line,
    LineSegment,
    PointCloud,
    Scene,
    Similitude2,
    best_bounding_ball,
    chaos_game,
    circumcircle_bifractal,
    circumcircle_trifractal,
    emit,
    general_bounding_ball,
    hutchinson_balls,
    intersect_line,
)

FADE = ("#9ecae1", "#6baed6", "#3182bd")


def rotated_trifractal():
    top = (1 + 1j * math.sqrt(3)) / 2
    phi = 0.42 * cmath.exp(1j * math.pi / 10)
    return IfsSystem(
        maps=(
            Similitude2(p=0, phi=phi),
            Similitude2(p=1, phi=phi),
            Similitude2(p=top, phi=phi),
        )
    )


def twisted_bifractal():
    return IfsSystem(
        maps=(
            Similitude2(p=0, phi=0.55 * cmath.exp(1j * 0.35)),
            Similitude2(p=1, phi=0.4 * cmath.exp(-1j * 0.5)),
        )
    )


def figure_iterative_containment(out_dir):
    ifs = rotated_trifractal()
    bound = general_bounding_ball(ifs).ball
    layers = [PointCloud(points=tuple(chaos_game(ifs, 20000, seed=11)), radius_px=0.8)]
    balls = [bound]
    for color in FADE:
        balls = hutchinson_balls(ifs, balls)
        layers.extend(CircleOutline(ball=b, color=color, width_px=0.8) for b in balls)
    layers.append(CircleOutline(ball=bound, color=GENERAL_COLOR, width_px=2.0))
    path = os.path.join(out_dir, "iterative_containment.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(Scene(layers=tuple(layers), canvas=(900, 900))))
    return path


def figure_circum_vs_general(out_dir):
    ifs = twisted_bifractal()
    circ = circumcircle_bifractal(ifs)
    gen = general_bounding_ball(ifs)
    layers = (
        PointCloud(points=tuple(chaos_game(ifs, 20000, seed=5)), radius_px=0.8),
        CircleOutline(ball=gen.ball, color=GENERAL_COLOR, width_px=2.0),
        CircleOutline(ball=circ.ball, color=CIRCUM_COLOR, width_px=2.0),
    )
    path = os.path.join(out_dir, "circum_vs_general.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(Scene(layers=layers, canvas=(900, 900))))
    print(
        f"  circumcircle r = {circ.ball.r:.6f}, general r = {gen.ball.r:.6f} "
        f"({'circumcircle' if circ.ball.r < gen.ball.r else 'general'} tighter)"
    )
    return path


def figure_line_intersection(out_dir):
    ifs = rotated_trifractal()
    anchor = chaos_game(ifs, 64, seed=3)[-1]
    line = Line(anchor, cmath.exp(1j * 0.3))
    result = intersect_line(ifs, line, eps=2e-3)
    bound = best_bounding_ball(ifs).ball
    marks = []
    for h in result.intervals:
        steps = max(2, int((h.t_hi - h.t_lo) / 1e-3))
        marks.extend(
            line.at(h.t_lo + (h.t_hi - h.t_lo) * i / steps) for i in range(steps + 1)
        )
    layers = (
        PointCloud(points=tuple(chaos_game(ifs, 20000, seed=11)), radius_px=0.8),
        CircleOutline(ball=bound, color=GENERAL_COLOR, width_px=1.2),
        LineSegment(line=line, color="#444444", width_px=1.2),
        PointCloud(points=tuple(marks), radius_px=2.0, color=CIRCUM_COLOR),
    )
    path = os.path.join(out_dir, "line_intersection.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(Scene(layers=layers, canvas=(900, 900))))
    print(f"  {len(result.intervals)} intersection intervals marked")
    return path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="figures")
    args = parser.parse_args(argv)
    os.makedirs(args.out_dir, exist_ok=True)
    for fig in (
        figure_iterative_containment,
        figure_circum_vs_general,
        figure_line_intersection,
    ):
        path = fig(args.out_dir)
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
