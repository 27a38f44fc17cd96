import json

import pytest

from crosslab import io
from crosslab.constructions import blazek_koman, convex, harary_hill, random_cylindrical, random_two_page, realize
from crosslab.drawing import StructuralError, crossing_count
from crosslab.spherical import project_to_plane, random_spherical


def drawings():
    yield blazek_koman(7)[1]
    yield harary_hill(8)[1]
    yield convex(6)
    yield realize(random_two_page(7, 3))
    yield realize(random_cylindrical(7, 3))
    yield project_to_plane(random_spherical(6, 3)[0])


@pytest.mark.parametrize("d", list(drawings()), ids=lambda d: d.class_tag)
def test_round_trip_bytes(d):
    text = io.dumps(io.drawing_to_json(d, {"seed": 3}))
    back, meta = io.loads(text)
    assert meta == {"seed": 3}
    assert io.dumps(io.drawing_to_json(back, meta)) == text
    assert back.layout == d.layout
    assert crossing_count(back) == crossing_count(d)


def test_rationals_are_strings():
    obj = io.drawing_to_json(blazek_koman(5)[1])
    xs = [r["x"] for r in obj["vertices"]]
    assert all(isinstance(x, str) for x in xs)
    assert obj["class"] == "two-page"


def tampered(mutate):
    obj = json.loads(io.dumps(io.drawing_to_json(convex(4))))
    mutate(obj)
    return json.dumps(obj)


def test_duplicate_edge():
    with pytest.raises(StructuralError, match="duplicate edge"):
        io.loads(tampered(lambda o: o["edges"].append(dict(o["edges"][0]))))


def test_reversed_edge_duplicate():
    def dup(o):
        e = dict(o["edges"][0])
        e["u"], e["v"] = e["v"], e["u"]
        e["polyline"] = e["polyline"][::-1]
        o["edges"].append(e)

    with pytest.raises(StructuralError):
        io.loads(tampered(dup))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda o: o["edges"].pop(),
        lambda o: o.pop("vertices"),
        lambda o: o.update({"class": "hexagonal"}),
        lambda o: o["vertices"][0].update({"x": "1/0"}),
        lambda o: o["vertices"].append(dict(o["vertices"][0])),
        lambda o: o.update({"layout": {"spine": [1]}}),
    ],
)
def test_malformed(mutate):
    with pytest.raises(StructuralError):
        io.loads(tampered(mutate))


def test_not_json():
    with pytest.raises(StructuralError):
        io.loads("{nope")


def test_save_load(tmp_path):
    d = harary_hill(6)[1]
    p = tmp_path / "hh.json"
    io.save(p, d, {"note": "x"})
    back, meta = io.load(p)
    assert meta == {"note": "x"} and back.edges == d.edges
