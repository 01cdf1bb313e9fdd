import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infosym import entropy as ent
from infosym import oracle
from infosym.bdd import Manager, TruthTable
from infosym.errors import ManagerMismatchError
from infosym.symmetry import (
    Member,
    PairClassification,
    SymmetryKind,
    Totality,
    check_e,
    check_ne,
    classify_pair,
    detect,
    detect_circuit,
    entropy_filter,
    group_summary,
    is_totally_symmetric,
    total_symmetry_candidate,
)

from conftest import PAIRS4, EPAIR3, MAJ3, build, random_tables

NE, E, M, NONE = SymmetryKind.NE, SymmetryKind.E, SymmetryKind.M, SymmetryKind.NONE


def pairs_of(report):
    return {(p.i, p.j): p.kind for p in report.symmetric_pairs()}


class TestExactChecks:
    def test_ne_pairs4(self, backend):
        f = build(PAIRS4, backend)
        assert check_ne(f, 2, 3)
        assert check_ne(f, 1, 4)
        # f(x1'x2) rows 4..7 = 0001, f(x1 x2') rows 8..11 = 1100
        assert not check_ne(f, 1, 2)

    def test_e_examples(self, backend):
        fe = build(EPAIR3, backend)
        assert check_e(fe, 1, 2)
        assert not check_e(fe, 2, 3)
        # f(x1 x4) rows 9,11,13,15 = 1000 = f(x1'x4') rows 0,2,4,6
        assert check_e(build(PAIRS4, backend), 1, 4)

    def test_same_variable_rejected(self):
        f = build(PAIRS4)
        for fn in (check_ne, check_e, classify_pair):
            with pytest.raises(ValueError):
                fn(f, 2, 2)

    def test_classify_examples(self, backend):
        f = build(PAIRS4, backend)
        assert classify_pair(f, 1, 4).kind is M
        # E fails for (x2, x3): f(x2 x3) = 0110, f(x2'x3') = 1111
        assert classify_pair(f, 2, 3).kind is NE
        assert classify_pair(f, 3, 2).i == 2
        mgr = Manager(4, backend=backend)
        c = classify_pair(mgr.var(3), 1, 2)
        assert c.kind is M and c.vacuous
        assert not classify_pair(mgr.var(3), 1, 3).vacuous

    def test_pair_ordering_enforced(self):
        with pytest.raises(ValueError):
            PairClassification(3, 1, NE)


class TestFilter:
    def test_pairs4_candidates(self, backend):
        flags = entropy_filter(build(PAIRS4, backend))
        assert {p for p, (ne, _) in flags.items() if ne} == {(2, 3), (1, 4)}

    def test_epair3_candidates_and_witness(self, backend):
        f = build(EPAIR3, backend)
        flags = entropy_filter(f)
        assert {p for p, (_, e) in flags.items() if e} == {(1, 2), (2, 3)}
        # necessary but not sufficient: (x2, x3') passes the filter, fails exactly
        assert flags[(2, 3)][1] and not check_e(f, 2, 3)
        assert check_e(f, 1, 2)

    def test_constant_passes_everything(self, backend):
        flags = entropy_filter(Manager(4, backend=backend).false)
        assert len(flags) == 6 and all(v == (True, True) for v in flags.values())

    def test_profile_argument(self):
        f = build(PAIRS4)
        assert entropy_filter(f, ent.profile(f)) == entropy_filter(f)

    def test_soundness_exhaustive_n3(self, backend):
        for k in range(256):
            t = TruthTable(3, tuple(int(c) for c in format(k, "08b")))
            flags = entropy_filter(Manager(3, backend=backend).from_truth_table(t))
            for (i, j), (fne, fe) in flags.items():
                assert fne or not oracle.tt_check_ne(t, i, j)
                assert fe or not oracle.tt_check_e(t, i, j)

    def test_soundness_random(self, backend):
        rng = random.Random(5)
        for _ in range(2000 if backend == "cython" else 500):
            n = rng.randint(2, 6)
            t = TruthTable(n, tuple(rng.getrandbits(1) for _ in range(1 << n)))
            flags = entropy_filter(Manager(n, backend=backend).from_truth_table(t))
            for (i, j), (fne, fe) in flags.items():
                assert fne or not oracle.tt_check_ne(t, i, j)
                assert fe or not oracle.tt_check_e(t, i, j)


class TestDetect:
    def test_pairs4(self, backend):
        rep = detect(build(PAIRS4, backend))
        assert pairs_of(rep) == {(2, 3): NE, (1, 4): M}
        assert rep.summary == ((2, 2),)
        assert rep.totally_symmetric is Totality.NO
        assert rep.profile is not None and rep.time_seconds >= 0

    def test_maj3(self, backend):
        rep = detect(build(MAJ3, backend))
        assert rep.totally_symmetric is Totality.YES_NE
        assert [g.size for g in rep.groups] == [3]
        assert rep.summary == ((3, 1),)

    def test_constant_one(self, backend):
        mgr = Manager(3, backend=backend)
        rep = detect(mgr.true)
        assert all(p.kind is M and p.vacuous for p in rep.pairs)
        assert rep.totally_symmetric is Totality.YES_NE
        # vacuous pairs only enter groups on request
        assert rep.summary == ()
        assert detect(mgr.true, include_vacuous=True).summary == ((3, 1),)

    def test_filter_off_identical(self, backend):
        for t in itertools.chain(random_tables(31, 4, 100), random_tables(32, 6, 100)):
            f = Manager(t.n, backend=backend).from_truth_table(t)
            assert detect(f, True) == detect(f, False)

    def test_oracle_agreement_small(self, backend):
        for n in range(0, 4):
            for k in range(1 << (1 << n)):
                t = TruthTable(n, tuple((k >> m) & 1 for m in range(1 << n)))
                f = Manager(n, backend=backend).from_truth_table(t)
                assert detect(f).verdicts() == oracle.tt_detect(t).verdicts()

    @pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
    def test_oracle_agreement_random(self, backend, n):
        for t in random_tables(100 + n, n, 200):
            f = Manager(n, backend=backend).from_truth_table(t)
            rep = detect(f)
            for p in rep.pairs:
                assert p.kind is oracle.tt_classify_pair(t, p.i, p.j)

    def test_structured_functions(self, backend):
        # random functions are rarely symmetric; build symmetric ones on purpose
        rng = random.Random(8)
        for _ in range(150):
            n = rng.randint(3, 7)
            weights = [rng.getrandbits(1) for _ in range(n + 1)]
            flip = [rng.random() < 0.3 for _ in range(n)]
            bits = tuple(weights[sum(((m >> (n - 1 - k)) & 1) ^ flip[k] for k in range(n))]
                         for m in range(1 << n))
            t = TruthTable(n, bits)
            f = Manager(n, backend=backend).from_truth_table(t)
            rep = detect(f)
            assert rep.verdicts() == oracle.tt_detect(t).verdicts()
            if len(set(weights)) > 1:
                assert rep.totally_symmetric is not Totality.NO

    def test_swap_closure(self, backend):
        for t in itertools.chain(random_tables(41, 5, 200), random_tables(42, 3, 200)):
            rep = detect(Manager(t.n, backend=backend).from_truth_table(t))
            kinds = {(p.i, p.j): p.kind for p in rep.pairs}
            for i, j, k in itertools.permutations(range(1, t.n + 1), 3):
                a, b = kinds[tuple(sorted((i, j)))], kinds[tuple(sorted((j, k)))]
                if a.ne and b.ne:
                    assert kinds[tuple(sorted((i, k)))].ne

    def test_output_complement(self, backend):
        for t in random_tables(43, 5, 100):
            mgr = Manager(t.n, backend=backend)
            f = mgr.from_truth_table(t)
            assert detect(f).verdicts() == detect(~f).verdicts()


def _relabel(t, sigma):
    """g(y) = f(x) with x_i = y_sigma(i)."""
    n = t.n
    bits = []
    for m in range(1 << n):
        y = [(m >> (n - k)) & 1 for k in range(1, n + 1)]
        x = [y[sigma[i] - 1] for i in range(n)]
        bits.append(t.bits[int("".join(map(str, x)) or "0", 2)])
    return TruthTable(n, tuple(bits))


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n),
    st.permutations(range(1, n + 1)),
    st.lists(st.integers(0, n + 1), min_size=n + 1, max_size=n + 1),
)))
def test_relabeling_equivariance(case):
    bits, sigma, weights = case
    n = len(sigma)
    # mix random tables with symmetric ones so that the pair set is not always empty
    if weights[0] % 2:
        bits = [weights[bin(m).count("1")] % 2 for m in range(1 << n)]
    t = TruthTable(n, tuple(bits))
    g = _relabel(t, list(sigma))
    rep_f = detect(Manager(n).from_truth_table(t))
    rep_g = detect(Manager(n).from_truth_table(g))
    mapped = {tuple(sorted((sigma[i - 1], sigma[j - 1]))): k for (i, j), k in pairs_of(rep_f).items()}
    assert mapped == pairs_of(rep_g)


class TestGroups:
    def test_pairs4(self):
        groups, summary = group_summary(detect(build(PAIRS4)).pairs)
        assert [(g.variables, g.kind) for g in groups] == [((1, 4), "M"), ((2, 3), "NE")]
        assert summary == ((2, 2),)

    def test_epair3(self):
        groups, summary = group_summary(detect(build(EPAIR3)).pairs)
        assert groups[0].members == (Member(1, "+"), Member(2, "-"))
        assert groups[0].kind == "E-mixed"
        assert summary == ((2, 1),)

    def test_empty(self):
        assert group_summary([]) == ((), ())

    def test_phase_conflict_split(self):
        pairs = [PairClassification(1, 2, NE), PairClassification(2, 3, E), PairClassification(1, 3, NE)]
        groups, summary = group_summary(pairs)
        assert [g.variables for g in groups] == [(1, 2)]
        assert summary == ((2, 1),)

    def test_missing_pair_split(self):
        pairs = [PairClassification(1, 2, NE), PairClassification(2, 3, NE), PairClassification(1, 3, NONE),
                 PairClassification(3, 4, NE), PairClassification(1, 4, NONE), PairClassification(2, 4, NONE)]
        groups, _ = group_summary(pairs)
        assert [g.variables for g in groups] == [(1, 2), (3, 4)]

    def test_m_group_phases(self):
        pairs = [PairClassification(1, 2, M), PairClassification(2, 3, E), PairClassification(1, 3, E)]
        (g,), _ = group_summary(pairs)
        assert g.kind == "M"
        assert g.members == (Member(1, "+"), Member(2, "+"), Member(3, "-"))

    def test_vacuous_excluded_by_default(self):
        pairs = [PairClassification(1, 2, M, vacuous=True)]
        assert group_summary(pairs) == ((), ())
        groups, summary = group_summary(pairs, include_vacuous=True)
        assert summary == ((2, 1),)

    def test_groups_disjoint_and_consistent(self):
        for t in itertools.chain(random_tables(51, 6, 200)):
            rep = detect(Manager(6).from_truth_table(t))
            seen = set()
            kinds = {(p.i, p.j): p.kind for p in rep.pairs}
            for g in rep.groups:
                assert not seen & set(g.variables)
                seen |= set(g.variables)
                for a, b in itertools.combinations(g.members, 2):
                    kind = kinds[(a.var, b.var)]
                    assert kind.ne if a.phase == b.phase else kind.e


class TestTotalSymmetry:
    def test_examples(self, backend):
        assert detect(build(MAJ3, backend)).totally_symmetric is Totality.YES_NE
        mgr = Manager(3, backend=backend)
        x1, x2, x3 = mgr.var(1), mgr.var(2), mgr.var(3)
        f = (x1 & x2) ^ (x1 & x3) ^ (x2 & x3)
        assert is_totally_symmetric(f, detect(f).pairs) is Totality.YES_NE
        fe = build(EPAIR3, backend)
        assert is_totally_symmetric(fe, detect(fe).pairs) is Totality.NO

    def test_mixed_polarity(self, backend):
        mgr = Manager(3, backend=backend)
        a, b, c = mgr.var(1), ~mgr.var(2), mgr.var(3)
        maj = (a & b) | (a & c) | (b & c)
        rep = detect(maj)
        assert rep.totally_symmetric is Totality.YES_MIXED
        assert rep.groups[0].members == (Member(1, "+"), Member(2, "-"), Member(3, "+"))
        f = build("0010", backend)  # x1 x2'
        assert detect(f).totally_symmetric is Totality.YES_MIXED

    def test_requires_full_cover(self):
        with pytest.raises(ValueError):
            is_totally_symmetric(None, [PairClassification(1, 2, NE)], n=3)

    def test_candidate_condition_is_necessary(self, backend):
        for t in itertools.chain(random_tables(61, 4, 300)):
            f = Manager(4, backend=backend).from_truth_table(t)
            rep = detect(f)
            if rep.totally_symmetric is not Totality.NO:
                assert total_symmetry_candidate(rep.profile)

    def test_equal_cofactor_entropies_not_required(self):
        # x1 AND x2 is totally symmetric yet H(f_x1') = 0 while H(f_x1) = 1
        mgr = Manager(2)
        f = mgr.var(1) & mgr.var(2)
        prof = ent.profile(f)
        assert (prof.row(1).h0, prof.row(1).h1) == (0.0, 1.0)
        assert detect(f).totally_symmetric is Totality.YES_NE
        assert total_symmetry_candidate(prof)


class TestCircuit:
    def test_identical_xor_outputs(self, backend):
        mgr = Manager(2, backend=backend)
        f = mgr.from_truth_table((0, 1, 1, 0))
        rep = detect_circuit([f, mgr.from_truth_table((0, 1, 1, 0))])
        assert pairs_of(rep) == {(1, 2): M}

    def test_xor_and(self, backend):
        mgr = Manager(2, backend=backend)
        rep = detect_circuit([mgr.var(1) ^ mgr.var(2), mgr.var(1) & mgr.var(2)])
        assert pairs_of(rep) == {(1, 2): NE}
        assert [pairs_of(o) for o in rep.outputs] == [{(1, 2): M}, {(1, 2): NE}]

    def test_projections(self, backend):
        mgr = Manager(2, backend=backend)
        assert pairs_of(detect_circuit([mgr.var(1), mgr.var(2)])) == {}

    def test_vacuous_outputs_pass(self, backend):
        mgr = Manager(3, backend=backend)
        rep = detect_circuit([mgr.var(1) & mgr.var(2), mgr.var(3)])
        assert pairs_of(rep)[(1, 2)] is NE
        assert not rep.pair(1, 2).vacuous

    def test_errors(self):
        with pytest.raises(ValueError):
            detect_circuit([])
        with pytest.raises(ManagerMismatchError):
            detect_circuit([Manager(2).var(1), Manager(2).var(1)])

    def test_filter_invariance(self, backend):
        rng = random.Random(71)
        for _ in range(60):
            mgr = Manager(5, backend=backend)
            outs = [mgr.from_truth_table([rng.getrandbits(1) for _ in range(32)]) for _ in range(3)]
            assert detect_circuit(outs, True) == detect_circuit(outs, False)
