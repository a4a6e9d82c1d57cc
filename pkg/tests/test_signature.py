from itertools import combinations

from hypothesis import given
from hypothesis import strategies as st

from matchgates.generators import random_matchgate, random_skew
from matchgates.kasteleyn import delta_table, kasteleyn_orient, pfaffian_signature
from matchgates.numeric import GaussianRational
from matchgates.planegraph import PlaneGraph, as_bits, bits_to_index, preprocess
from matchgates.realize import crossover_gadget, generate_mgi_vector
from matchgates.signature import (
    SignatureVector,
    bitstring,
    check_mgi,
    check_parity,
    enumerate_perfect_matchings,
    flip,
    mgi_implies_parity_witness,
    mgi_residual,
    perfmatch,
    signature,
)
from matchgates.symmetric import triangle_cycle

from conftest import gaussians, rngs

W = GaussianRational(3, -2)


def single_edge(externals=()):
    return PlaneGraph([1, 2], {(1, 2): W}, {1: [2], 2: [1]}, (1, 2), externals)


def square():
    rot = {1: [2, 4], 2: [3, 1], 3: [4, 2], 4: [1, 3]}
    return PlaneGraph([1, 2, 3, 4], {(1, 2): 1, (2, 3): 1, (3, 4): 1, (1, 4): 1}, rot, (1, 4))


def k4():
    # 4 inside triangle 1-2-3
    edges = {(1, 2): 1, (2, 3): 1, (1, 3): 1, (1, 4): 1, (2, 4): 1, (3, 4): 1}
    rot = {1: [2, 4, 3], 2: [3, 4, 1], 3: [1, 4, 2], 4: [1, 2, 3]}
    return PlaneGraph(range(1, 5), edges, rot, (1, 3))


def triangle():
    return PlaneGraph([1, 2, 3], {(1, 2): 1, (2, 3): 1, (1, 3): 1}, {1: [2, 3], 2: [3, 1], 3: [1, 2]}, (1, 3))


def brute_perfmatch(g):
    nodes = list(g.nodes)
    total = GaussianRational(0)
    if len(nodes) % 2:
        return total
    for subset in combinations(sorted(g.edges), len(nodes) // 2):
        covered = [v for e in subset for v in e]
        if len(set(covered)) == len(nodes):
            term = GaussianRational(1)
            for e in subset:
                term = term * g.edges[e]
            total = total + term
    return total


def test_bit_conventions():
    assert bitstring(8, 4) == "1000"
    assert bitstring(0, 0) == ""
    assert flip(0, 1, 4) == 8 and flip(8, 1, 4) == 0 and flip(0, 4, 4) == 1
    s = SignatureVector(3, range(8))
    assert s["110"] == s[6] == 6


def test_enumeration_counts():
    assert len(enumerate_perfect_matchings(single_edge())) == 1
    assert len(enumerate_perfect_matchings(square())) == 2
    assert len(enumerate_perfect_matchings(k4())) == 3
    assert enumerate_perfect_matchings(triangle()) == []


def test_perfmatch_examples():
    assert perfmatch(single_edge()) == W
    assert perfmatch(triangle()) == 0
    assert perfmatch(crossover_gadget()) == 1
    assert perfmatch(PlaneGraph([], {}, {}, None)) == 1


def test_signature_examples():
    assert signature(crossover_gadget()).nonzero() == {"0000": 1, "0101": 1, "1010": 1, "1111": -1}
    assert list(signature(single_edge([1, 2])).values) == [W, 0, 0, 1]
    sig = signature(triangle_cycle(4, 1, 1))
    for a, v in enumerate(sig.values):
        assert v == (2 if bin(a).count("1") % 2 == 0 else 0)


def test_parity_examples():
    assert check_parity(signature(crossover_gadget()))
    assert check_parity(SignatureVector(3, [0] * 8))
    assert not check_parity(SignatureVector(2, [1, 1, 1, 1]))


def test_mgi_examples():
    assert check_mgi(signature(crossover_gadget())).ok
    bad = check_mgi(SignatureVector(2, [1, 1, 1, 1]))
    assert not bad.ok
    assert (bitstring(bad.alpha, 2), bitstring(bad.beta, 2)) == ("00", "01")
    assert bad.residual == -1
    assert "residual -1" in bad.describe()
    for k in range(4):
        for a in range(1 << k):
            single = [0] * (1 << k)
            single[a] = 5
            assert check_mgi(SignatureVector(k, single)).ok


def test_parity_witness_examples():
    w = mgi_implies_parity_witness(SignatureVector(2, [1, 1, 1, 1]))
    assert w is not None and not w.ok and w.residual != 0
    assert mgi_residual(SignatureVector(2, [1, 1, 1, 1]), w.alpha, w.beta) == w.residual
    assert mgi_implies_parity_witness(signature(crossover_gadget())) is None
    assert mgi_implies_parity_witness(SignatureVector(3, [0] * 8)) is None


@given(rngs, st.integers(1, 10))
def test_perfmatch_matches_brute_force(rng, n):
    g = random_matchgate(rng, n, 0)
    assert perfmatch(g) == brute_perfmatch(g)
    matchings = enumerate_perfect_matchings(g)
    assert len(set(matchings)) == len(matchings)


@given(rngs, st.integers(0, 5))
def test_signature_entries_are_perfmatch_of_subgraphs(rng, k):
    g = random_matchgate(rng, rng.randint(1, 10), k)
    sig = signature(g)
    assert len(sig.values) == 1 << k
    for a in range(1 << k):
        assert sig[a] == brute_perfmatch(g.remove_externals(a))


@given(rngs, st.integers(0, 5))
def test_pfaffian_oracle(rng, k):
    g = preprocess(random_matchgate(rng, rng.randint(1, 9), k))
    h = kasteleyn_orient(g)
    sig, pf = signature(g), pfaffian_signature(h)
    for a, d in enumerate(delta_table(h)):
        assert pf[a] == (0 if d is None else d * sig[a])


@given(rngs, st.integers(0, 5))
def test_mgi_holds_for_planar_matchgates(rng, k):
    sig = signature(random_matchgate(rng, rng.randint(1, 10), k))
    assert check_mgi(sig).ok
    assert check_parity(sig)
    assert mgi_implies_parity_witness(sig) is None


@given(rngs, st.integers(0, 6))
def test_mgi_holds_for_pfaffian_minor_vectors(rng, k):
    sig = generate_mgi_vector(random_skew(rng, k))
    assert check_mgi(sig).ok and check_parity(sig)


@given(rngs, st.integers(1, 4))
def test_check_mgi_is_exhaustive(rng, k):
    values = [GaussianRational(rng.randint(-1, 1)) for _ in range(1 << k)]
    sig = SignatureVector(k, values)
    brute = next(
        ((a, b) for a in range(1 << k) for b in range(1 << k) if mgi_residual(sig, a, b) != 0), None
    )
    result = check_mgi(sig)
    assert result.ok == (brute is None)
    if brute is not None:
        assert mgi_residual(sig, result.alpha, result.beta) == result.residual != 0


@given(rngs, st.integers(1, 5))
def test_parity_violation_has_a_witness(rng, k):
    values = [GaussianRational(0)] * (1 << k)
    evens = [a for a in range(1 << k) if bin(a).count("1") % 2 == 0]
    odds = [a for a in range(1 << k) if bin(a).count("1") % 2 == 1]
    for a in rng.sample(evens, rng.randint(1, len(evens))) + rng.sample(odds, rng.randint(1, len(odds))):
        values[a] = GaussianRational(rng.randint(1, 5), rng.randint(-2, 2))
    sig = SignatureVector(k, values)
    w = mgi_implies_parity_witness(sig)
    assert w is not None and not w.ok
    assert mgi_residual(sig, w.alpha, w.beta) == w.residual != 0
    assert not check_mgi(sig).ok


@given(rngs, st.integers(1, 5))
def test_cyclic_relabelling_rotates_the_index(rng, k):
    g = random_matchgate(rng, rng.randint(1, 9), k)
    sig = signature(g)
    shifted = signature(g.with_externals(g.externals[1:] + g.externals[:1]))
    for a in range(1 << k):
        bits = as_bits(a, k)
        assert shifted[a] == sig[bits_to_index(bits[-1:] + bits[:-1])]


@given(st.integers(0, 4).flatmap(lambda k: st.tuples(st.just(k), st.lists(gaussians, min_size=1 << k, max_size=1 << k))))
def test_nonzero_round_trip(case):
    k, values = case
    sig = SignatureVector(k, values)
    assert SignatureVector.from_entries(k, sig.nonzero()) == sig
