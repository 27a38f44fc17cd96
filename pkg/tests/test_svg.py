import re
from fractions import Fraction as F

from crosslab.constructions import blazek_koman
from crosslab.drawing import straight_line_drawing
from crosslab.svg import to_svg


def counts(text):
    return (
        len(re.findall(r'class="vertex"', text)),
        len(re.findall(r"<path ", text)),
        len(re.findall(r'class="crossing"', text)),
    )


def test_triangle():
    d = straight_line_drawing({1: (F(0), F(0)), 2: (F(4), F(0)), 3: (F(0), F(4))})
    assert counts(to_svg(d)) == (3, 3, 0)


def test_bk8():
    text = to_svg(blazek_koman(8)[1])
    assert counts(text) == (8, 28, 18)
    assert counts(to_svg(blazek_koman(8)[1], mark_crossings=False)) == (8, 28, 0)
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")


def test_deterministic():
    assert to_svg(blazek_koman(7)[1]) == to_svg(blazek_koman(7)[1])


def test_y_flipped():
    d = straight_line_drawing({1: (F(0), F(0)), 2: (F(4), F(0)), 3: (F(0), F(4))})
    text = to_svg(d)
    cy = {label: float(y) for y, label in re.findall(r'<text x="[^"]+" y="([^"]+)">(\d)</text>', text)}
    assert cy["3"] < cy["1"]
