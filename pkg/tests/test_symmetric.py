import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matchgates.generators import random_weight
from matchgates.numeric import ONE, ZERO, GaussianRational
from matchgates.signature import check_mgi, signature
from matchgates.symmetric import (
    NotRealizable,
    check_symmetric_realizable,
    collapse,
    dense,
    parity_gadget,
    realize_symmetric,
    triangle_cycle,
)

from conftest import nonzero_gaussians, rngs


def geometric(rng, k, kind=None):
    """Random accepted symmetric sequence of arity k."""
    kind = kind or rng.choice(["even", "odd", "top", "bottom"])
    z = [ZERO] * (k + 1)
    start = 0 if kind in ("even", "bottom") else 1
    if kind in ("top", "bottom"):
        # one extremal entry of the chosen parity
        slots = list(range(start, k + 1, 2)) or [start]
        pos = rng.choice([slots[0], slots[-1]])
        if pos <= k:
            z[pos] = random_weight(rng)
        return z
    c, r = random_weight(rng), random_weight(rng, zero_prob=0.1)
    for t, i in enumerate(range(start, k + 1, 2)):
        z[i] = c * r**t
    return z


def test_classifier_examples():
    cls = check_symmetric_realizable([1, 0, 1, 0, 1])
    assert cls.kind == "even" and cls.r == (ONE, ONE)
    assert not check_symmetric_realizable([1, 0, 0, 0, 1]).realizable
    b = GaussianRational(2, 1)
    cls = check_symmetric_realizable([0, 1, 0, b, 0, b * b])
    assert cls.kind == "odd"
    r1, r2 = cls.r
    assert r1 * b == r2 * b * b and (r1 or r2)
    assert check_symmetric_realizable([0, 0, 0]).kind == "zero"
    assert not check_symmetric_realizable([1, 1, 0]).realizable


def test_triangle_cycle_examples():
    g = triangle_cycle(4, 1, 1)
    assert len(g.nodes) == 8 and g.externals == (1, 2, 3, 4)
    sig = signature(g)
    assert all(v == (2 if bin(a).count("1") % 2 == 0 else 0) for a, v in enumerate(sig.values))
    x = GaussianRational(1, 1)
    sig = signature(triangle_cycle(4, x, 0))
    assert sig[0] == 2 * x**4 and not any(sig.values[1:])


def test_triangle_cycle_needs_three():
    with pytest.raises(ValueError):
        triangle_cycle(2, 1, 1)


@pytest.mark.parametrize("k", range(3, 9))
def test_triangle_cycle_closed_form(k):
    rng = random.Random(k)
    for _ in range(2):
        x, y = random_weight(rng), random_weight(rng)
        sig = signature(triangle_cycle(k, x, y))
        for a, v in enumerate(sig.values):
            w = bin(a).count("1")
            assert v == (2 * x ** (k - w) * y ** (w // 2) if w % 2 == 0 else 0)


def test_realize_symmetric_examples():
    g = realize_symmetric([1, 0, 1, 0, 1])
    assert collapse(signature(g)) == [1, 0, 1, 0, 1]
    assert len(g.nodes) == 10
    g = realize_symmetric([0, 1, 0, 1, 0])
    assert collapse(signature(g)) == [0, 1, 0, 1, 0]
    c = GaussianRational(-2, 3)
    g = realize_symmetric([c, 0, 0])
    assert list(signature(g).values) == [c, 0, 0, 0]


def test_realize_symmetric_rejects():
    with pytest.raises(NotRealizable):
        realize_symmetric([1, 0, 0, 0, 1])


@pytest.mark.parametrize("k", range(0, 7))
def test_realize_symmetric_round_trip(k):
    rng = random.Random(100 + k)
    kinds = ["even", "odd", "top", "bottom"]
    for n in range(12):
        z = geometric(rng, k, kinds[n % 4])
        g = realize_symmetric(z, verify=False)
        assert g.arity == k
        assert signature(g) == dense(z)


def test_parity_gadget_examples():
    assert list(signature(parity_gadget(2, "even")).values) == [1, 0, 0, 1]
    assert list(signature(parity_gadget(3, "even")).values) == [1, 0, 0, 1, 0, 1, 1, 0]
    assert list(signature(parity_gadget(3, "odd")).values) == [0, 1, 1, 0, 1, 0, 0, 1]
    with pytest.raises(ValueError):
        parity_gadget(0)


@pytest.mark.parametrize("t", range(1, 7))
def test_parity_gadgets(t):
    for parity, want in (("even", 0), ("odd", 1)):
        sig = signature(parity_gadget(t, parity))
        assert all(v == (1 if bin(a).count("1") % 2 == want else 0) for a, v in enumerate(sig.values))


@given(rngs, st.integers(0, 6))
def test_classifier_matches_mgi_on_geometric(rng, k):
    z = geometric(rng, k)
    assert check_symmetric_realizable(z).realizable
    assert check_mgi(dense(z)).ok


@given(rngs, st.integers(0, 6), nonzero_gaussians)
def test_classifier_matches_mgi_on_perturbed(rng, k, bump):
    z = geometric(rng, k)
    z[rng.randrange(k + 1)] += bump
    assert check_symmetric_realizable(z).realizable == check_mgi(dense(z)).ok


@given(rngs, st.integers(4, 8))
def test_accepted_even_sequences_satisfy_exchange(rng, k):
    z = geometric(rng, k, "even")
    for i in range(0, k + 1, 2):
        for j in range(i + 4, k + 1, 2):
            assert z[i] * z[j] == z[i + 2] * z[j - 2]


def test_collapse():
    assert collapse(dense([1, 2, 3])) == [1, 2, 3]
    sig = dense([1, 2, 3])
    values = list(sig.values)
    values[1] = ZERO
    from matchgates.signature import SignatureVector

    assert collapse(SignatureVector(2, values)) is None
