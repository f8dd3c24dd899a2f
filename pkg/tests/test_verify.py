from expander_forge import graph as gm
from expander_forge.verify import verify_cycle, verify_path


def test_k5_cycle_chords():
    v = verify_cycle(gm.complete(5), [0, 1, 2, 3, 4])
    assert v.ok and v.length == 5 and v.chords == 5
    assert verify_cycle(gm.complete(5), [0, 1, 2, 3, 4, 0]) == v


def test_cycle_rejections():
    K5 = gm.complete(5)
    assert verify_cycle(K5, [0, 1, 1, 2]).reason == "RepeatedVertex"
    assert verify_cycle(gm.path(4), [0, 1, 2, 3]).reason == "NotAnEdge"
    assert verify_cycle(K5, [0, 1]).reason == "TooShort"
    assert verify_cycle(K5, [0, 1, 9]).reason == "OutOfRange"


def test_path():
    assert verify_path(gm.path(4), [0, 1, 2, 3]).ok
    assert verify_path(gm.path(4), [0, 2]).reason == "NotAnEdge"
    assert verify_path(gm.path(4), []).reason == "Empty"
