import random

import pytest

from nicehf.contact import (contact_class, contact_cycle_check, eh_is_boundary, giroux_stabilize_marked,
                            loss_class, marked_generator)
from nicehf.diagram import ContactMarking
from nicehf.errors import InvalidMarking, NotACycle
from nicehf.floer import is_nice
from nicehf.moves import finger_move

from _support import corpus, finger_moves_in, random_nice_finger_move


def test_tight():
    d = corpus("ob_tight_s3")
    assert contact_cycle_check(d)
    c = contact_class(d)
    assert c.nonzero and c.coordinates == (1,) and c.field == "F2"


def test_overtwisted():
    d = corpus("ob_ot_s3")
    assert contact_cycle_check(d)
    assert not contact_class(d).nonzero
    assert eh_is_boundary(d)


def test_non_cycle_marking():
    d = corpus("ob_ot_s3").with_contact(ContactMarking(("b",)))
    assert not contact_cycle_check(d)
    with pytest.raises(NotACycle):
        contact_class(d)


def test_s2xs1_trivial():
    c = contact_class(corpus("ob_s2xs1_trivial"))
    assert c.nonzero and c.spinc_index == 0


def test_marking_required():
    with pytest.raises(InvalidMarking):
        marked_generator(corpus("s3_g1"))
    with pytest.raises(InvalidMarking):
        giroux_stabilize_marked(corpus("s3_g1"), "R0")


def test_legendrian_unknot():
    a, b = corpus("legendrian_unknot"), corpus("legendrian_unknot_rev")
    la, lb = loss_class(a), loss_class(b)
    assert la.nonzero and lb.nonzero
    assert la.loss_oriented is True and lb.loss_oriented is False
    da, db = dict(la.alexander), dict(lb.alexander)
    assert da.keys() == db.keys()
    assert all(da[k] == -db[k] for k in da) and any(da.values())


def test_loss_overtwisted():
    assert not loss_class(corpus("loss_ot")).nonzero


@pytest.mark.parametrize("name,verdict", [("ob_tight_s3", True), ("ob_ot_s3", False),
                                          ("ob_s2xs1_trivial", True)])
def test_stable_under_stabilization_and_fingers(name, verdict):
    d = corpus(name)
    s = giroux_stabilize_marked(d, d.basepoint_z)
    assert contact_class(s).nonzero == verdict
    s2 = giroux_stabilize_marked(s, s.basepoint_z)
    assert contact_class(s2).nonzero == verdict
    rng = random.Random(name)
    f = d
    for _ in range(2):
        f = random_nice_finger_move(f, rng, keep=contact_cycle_check)
    assert f.contact == d.contact
    assert contact_class(f).nonzero == verdict


def test_finger_move_can_break_adaptation():
    """Nice finger moves on the tight diagram either keep EH a cycle or break it."""
    d = corpus("ob_tight_s3")
    moved = [finger_move(d, *m) for m in finger_moves_in(d, "R0")]
    moved = [f for f in moved if is_nice(f)]
    kept = [f for f in moved if contact_cycle_check(f)]
    broken = [f for f in moved if not contact_cycle_check(f)]
    assert kept and broken
    assert all(contact_class(f).nonzero for f in kept)
    with pytest.raises(NotACycle):
        contact_class(broken[0])
