import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folkit import (
    EMPTY_THEORY,
    FALSE,
    App,
    Atom,
    AtomicValuation,
    EvalError,
    Forall,
    Implies,
    Param,
    ParseError,
    SearchLimit,
    Signature,
    Structure,
    Theory,
    Var,
    count_structures,
    enumerate_structures,
    eval_formula,
    eval_term,
    find_countermodel,
    free_vars,
    herbrand_eval,
    induced_valuation_check,
    instantiate,
    is_axiom,
    min_rank,
    parse_model,
    print_model,
    shift_up,
    subst_formula,
    subst_term,
)
from strategies import (
    SIG3,
    SIG5,
    max_index,
    random_axiom_instance,
    random_env,
    random_formula,
    random_structure,
    random_substitution,
)

MOD2 = Signature({"plus": 2}, {"P": 1})
PLUS_TABLE = {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1", ("1", "1"): "0"}


def mod2_structure(p_elems=("0",)):
    return Structure.make(
        MOD2, ("0", "1"), {"plus": PLUS_TABLE}, {"P": {(m,) for m in p_elems}}
    )


class TestEvalTerm:
    def test_table_lookup(self):
        s = mod2_structure()
        assert eval_term(App("plus", (Var(1), Var(2))), s, ("1", "1")) == "0"

    def test_parameters_evaluate_to_themselves(self):
        s = mod2_structure()
        assert eval_term(Param("1"), s, ()) == "1"

    def test_env_too_short(self):
        with pytest.raises(EvalError):
            eval_term(Var(1), mod2_structure(), ())

    def test_parameter_outside_carrier(self):
        with pytest.raises(EvalError):
            eval_term(Param("9"), mod2_structure(), ())


class TestEvalFormula:
    def test_quantifier_needs_every_element(self):
        assert eval_formula(Forall(Atom("P", (Var(1),))), mod2_structure(("0",)), ()) is False
        assert eval_formula(Forall(Atom("P", (Var(1),))), mod2_structure(("0", "1")), ()) is True

    def test_falsum_is_false(self):
        assert eval_formula(FALSE, mod2_structure(), ()) is False

    def test_material_implication(self):
        s = mod2_structure(("0",))
        p0 = Atom("P", (Param("0"),))
        p1 = Atom("P", (Param("1"),))
        assert eval_formula(Implies(p1, p0), s, ()) is True
        assert eval_formula(Implies(p0, p1), s, ()) is False


class TestStructureInvariants:
    def test_carrier_must_be_nonempty(self):
        with pytest.raises(ValueError):
            Structure.make(MOD2, (), {"plus": {}}, {})

    def test_function_tables_must_be_total(self):
        bad = dict(PLUS_TABLE)
        del bad[("1", "1")]
        with pytest.raises(ValueError):
            Structure.make(MOD2, ("0", "1"), {"plus": bad}, {})

    def test_falsum_table_is_fixed(self):
        with pytest.raises(ValueError):
            Structure.make(MOD2, ("0", "1"), {"plus": PLUS_TABLE}, {"false": {()}})

    def test_equality_is_identity(self):
        s = random_structure(random.Random(0), SIG5, 2)
        assert s.pred_tables["eq"] == frozenset({("0", "0"), ("1", "1")})


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=150)
def test_semantic_substitution_lemma(seed):
    rng = random.Random(seed)
    structure = random_structure(rng, SIG3, rng.randint(1, 3))
    a = random_formula(rng, SIG3, 3, 3, params=structure.domain)
    sigma = random_substitution(rng, SIG3, 3, 3, params=structure.domain)
    rank = min_rank(a)
    need = max([max_index(sigma.entry(i)) for i in range(1, rank + 1)], default=0)
    env = random_env(rng, structure, need)
    env_image = tuple(eval_term(sigma.entry(i), structure, env) for i in range(1, rank + 1))
    assert eval_formula(subst_formula(a, sigma), structure, env) == eval_formula(
        a, structure, env_image
    )


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100)
def test_environment_locality(seed):
    rng = random.Random(seed)
    structure = random_structure(rng, SIG3, rng.randint(1, 3))
    a = random_formula(rng, SIG3, 3, 3, params=structure.domain)
    env = random_env(rng, structure, min_rank(a))
    padded = env + random_env(rng, structure, rng.randint(1, 3))
    assert eval_formula(a, structure, env) == eval_formula(a, structure, padded)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100)
def test_shift_coherence(seed):
    rng = random.Random(seed)
    structure = random_structure(rng, SIG3, rng.randint(1, 3))
    a = random_formula(rng, SIG3, 3, 3, params=structure.domain)
    env = random_env(rng, structure, min_rank(a))
    m = rng.choice(structure.domain)
    assert eval_formula(shift_up(a), structure, (m,) + env) == eval_formula(
        a, structure, env
    )


def test_equality_axioms_hold_in_every_structure():
    rng = random.Random(3)
    instances = [
        random_axiom_instance(rng, SIG5, schema, max_var=2, meta_depth=0)
        for schema in ("A7", "A8")
        for _ in range(10)
    ]
    for size in (1, 2):
        for structure in enumerate_structures(SIG5, size):
            for f in instances:
                env = tuple(structure.domain[0] for _ in range(min_rank(f)))
                assert eval_formula(f, structure, env)


class TestAudit:
    def test_random_batches_pass(self):
        rng = random.Random(9)
        for _ in range(20):
            structure = random_structure(rng, SIG5, rng.randint(1, 3))
            env = random_env(rng, structure, 2)
            samples = [
                random_formula(rng, SIG5, 2, 2, params=structure.domain)
                for _ in range(5)
            ]
            samples += [Forall(random_formula(rng, SIG5, 1, 2)), Implies(samples[0], samples[1])]
            terms = [Var(1), App("g", (Var(2),))]
            report = induced_valuation_check(structure, env, samples, terms)
            assert report.ok, report.summary()

    def test_reflexivity_instances_are_audited(self):
        structure = random_structure(random.Random(1), SIG5, 2)
        report = induced_valuation_check(
            structure, ("0",), [Forall(Atom("eq", (Var(1), Var(1))))], []
        )
        assert report.ok
        assert report.conditions[3].checked > 0

    def test_broken_quantifier_caught_by_instantiation(self):
        def broken(f, structure, env):
            ty = type(f)
            if ty is Atom:
                return tuple(eval_term(a, structure, env) for a in f.args) in structure.pred_tables[f.symbol]
            if ty is Implies:
                return (not broken(f.lhs, structure, env)) or broken(f.rhs, structure, env)
            return all(
                broken(f.body, structure, (m,) + tuple(env))
                for m in structure.domain[:-1]
            )

        structure = Structure.make(
            SIG5, ("0", "1"), {"g": {("0",): "0", ("1",): "0"}}, {"R": {("0", "0")}}
        )
        sample = Forall(Atom("R", (Var(1), Var(1))))
        report = induced_valuation_check(structure, (), [sample], [], eval_fn=broken)
        assert not report.conditions[2].ok
        assert not report.ok


SIG_P = Signature({}, {"P": 1})


class TestCountermodel:
    def test_smallest_refutation_golden(self):
        found = find_countermodel(EMPTY_THEORY, Forall(Atom("P", (Var(1),))), SIG_P, 1)
        assert found is not None
        structure, env = found
        assert structure.domain == ("0",)
        assert structure.pred_tables["P"] == frozenset()
        assert env == ()

    def test_axioms_have_no_countermodel(self):
        p1 = Atom("P", (Var(1),))
        instance = Implies(p1, Implies(Forall(p1), p1))
        assert is_axiom(instance, SIG_P) is not None
        assert find_countermodel(EMPTY_THEORY, instance, SIG_P, 2) is None

    def test_theory_instances_have_no_countermodel(self):
        sig = Signature({"zero": 0}, {"P": 1})
        theory = Theory("t", (("all", Forall(Atom("P", (Var(1),)))),))
        assert find_countermodel(theory, Atom("P", (App("zero"),)), sig, 2) is None

    def test_environment_search(self):
        # P(x1) is falsified by some environment in any structure where P
        # misses an element
        found = find_countermodel(EMPTY_THEORY, Atom("P", (Var(1),)), SIG_P, 1)
        assert found is not None
        structure, env = found
        assert env == ("0",)
        assert structure.pred_tables["P"] == frozenset()

    def test_deterministic_least_countermodel(self):
        first = find_countermodel(EMPTY_THEORY, Forall(Atom("P", (Var(1),))), SIG_P, 2)
        second = find_countermodel(EMPTY_THEORY, Forall(Atom("P", (Var(1),))), SIG_P, 2)
        assert first == second

    def test_ceiling_guard(self):
        with pytest.raises(SearchLimit):
            find_countermodel(EMPTY_THEORY, Forall(Atom("P", (Var(1),))), SIG_P, 1, ceiling=0)

    def test_parameters_rejected(self):
        with pytest.raises(ValueError):
            find_countermodel(EMPTY_THEORY, Atom("P", (Param("m"),)), SIG_P, 1)

    def test_count_structures(self):
        assert count_structures(SIG_P, 1) == 2
        assert count_structures(SIG5, 2) == 2**4 * 2**2
        assert sum(1 for _ in enumerate_structures(SIG5, 2)) == 64

    def test_enumeration_bit_order(self):
        # predicate bits before function entries, last tuple's bit fastest
        structures = list(enumerate_structures(SIG5, 2))
        assert structures[0].pred_tables["R"] == frozenset()
        assert structures[0].fn_tables["g"] == {("0",): "0", ("1",): "0"}
        assert structures[1].pred_tables["R"] == frozenset()
        assert structures[1].fn_tables["g"] == {("0",): "0", ("1",): "1"}
        # after the 4 function tables the next predicate bit flips, which
        # is the membership bit of the lexicographically last tuple
        assert structures[4].pred_tables["R"] == frozenset({("1", "1")})
        assert structures[4].fn_tables["g"] == {("0",): "0", ("1",): "0"}


SIG_C = Signature({"c": 0}, {"P": 1})
SIG_CD = Signature({"c": 0, "d": 0}, {"P": 1})


class TestHerbrand:
    def test_single_constant(self):
        e = AtomicValuation(frozenset({Atom("P", (App("c"),))}))
        assert herbrand_eval(e, Forall(Atom("P", (Var(1),))), SIG_C) is True

    def test_missing_instance(self):
        e = AtomicValuation(frozenset({Atom("P", (App("c"),))}))
        assert herbrand_eval(e, Forall(Atom("P", (Var(1),))), SIG_CD) is False

    def test_falsum_cannot_be_chosen(self):
        with pytest.raises(ValueError):
            AtomicValuation(frozenset({FALSE}))

    def test_atoms_must_be_closed(self):
        with pytest.raises(ValueError):
            AtomicValuation(frozenset({Atom("P", (Var(1),))}))

    def test_rejects_equality_and_real_functions(self):
        e = AtomicValuation(frozenset())
        with pytest.raises(EvalError):
            herbrand_eval(e, FALSE, Signature({"f": 1}, {"P": 1}))
        with pytest.raises(EvalError):
            herbrand_eval(e, FALSE, Signature({}, {"P": 1}, True))

    def test_empty_universe(self):
        e = AtomicValuation(frozenset())
        sig = Signature({}, {"P": 1})
        assert herbrand_eval(e, FALSE, sig) is False
        with pytest.raises(EvalError):
            herbrand_eval(e, Forall(Atom("P", (Var(1),))), sig)

    def test_material_structure(self):
        e = AtomicValuation(frozenset({Atom("P", (App("c"),))}))
        f = Implies(Atom("P", (App("c"),)), Atom("P", (App("d"),)))
        assert herbrand_eval(e, f, SIG_CD) is False

    def test_agrees_with_structure_semantics(self):
        # the two-constant Herbrand universe is the two-element structure
        # whose carrier is the constants themselves
        rng = random.Random(13)
        for _ in range(50):
            true_atoms = frozenset(
                Atom("P", (App(c),)) for c in ("c", "d") if rng.random() < 0.5
            )
            e = AtomicValuation(true_atoms)
            structure = Structure.make(
                SIG_CD,
                ("c", "d"),
                {"c": {(): "c"}, "d": {(): "d"}},
                {"P": {(c,) for c in ("c", "d") if Atom("P", (App(c),)) in true_atoms}},
            )
            f = random_formula(rng, SIG_CD, 3, 1)
            closed = subst_formula(f, instantiate(App("c")))
            while free_vars(closed):
                closed = subst_formula(closed, instantiate(App("c")))
            assert herbrand_eval(e, closed, SIG_CD) == eval_formula(closed, structure, ())


class TestModelFiles:
    def test_round_trip(self):
        structure = random_structure(random.Random(2), SIG5, 2)
        text = print_model(structure, ("0", "1"))
        parsed, env = parse_model(text, SIG5)
        assert parsed == structure and env == ("0", "1")

    def test_missing_domain(self):
        with pytest.raises(ParseError):
            parse_model("fn g: 0 -> 0\n", SIG5)

    def test_partial_table(self):
        with pytest.raises(ParseError):
            parse_model("domain 0 1\nfn g: 0 -> 0\n", SIG5)

    def test_env_outside_domain(self):
        structure = random_structure(random.Random(2), SIG5, 2)
        text = print_model(structure) + "env 7\n"
        with pytest.raises(ParseError):
            parse_model(text, SIG5)

    def test_zero_ary_function_lines(self):
        sig = Signature({"zero": 0}, {"P": 1})
        text = "domain 0 1\nfn zero: -> 1\npred P: 0\n"
        structure, env = parse_model(text, sig)
        assert structure.fn_tables["zero"][()] == "1"
        assert env is None
        assert print_model(structure) == "domain 0 1\nfn zero: -> 1\npred P: 0\n"
