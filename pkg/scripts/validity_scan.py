#!/usr/bin/env python3
"""Survey small formulas: axiomhood vs refutability at desk scale.

Enumerates every formula with at most two connectives over a one-predicate
signature, classifies each as an axiom instance, refuted (a countermodel
with at most three elements exists), or neither, and prints the tally.
Axioms must never land in the refuted bucket.
"""

from collections import Counter

from folkit import (
    EMPTY_THEORY,
    FALSE,
    Atom,
    Signature,
    Var,
    find_countermodel,
    is_axiom,
    print_formula,
)

SIG = Signature({}, {"P": 1})
ATOMS = [FALSE, Atom("P", (Var(1),)), Atom("P", (Var(2),))]


def enumerate_formulas(connectives: int):
    from folkit import Forall, Implies

    layers = [list(ATOMS)]
    for size in range(1, connectives + 1):
        layer = [Forall(f) for f in layers[size - 1]]
        for i in range(size):
            for lhs in layers[i]:
                for rhs in layers[size - 1 - i]:
                    layer.append(Implies(lhs, rhs))
        layers.append(layer)
    return [f for layer in layers for f in layer]


def main() -> None:
    tally = Counter()
    surprises = []
    formulas = enumerate_formulas(2)
    for f in formulas:
        tag = is_axiom(f, SIG)
        refutation = find_countermodel(EMPTY_THEORY, f, SIG, 3)
        if tag is not None:
            tally["axiom"] += 1
            if refutation is not None:
                surprises.append(f)
        elif refutation is not None:
            tally["refuted"] += 1
        else:
            tally["open at size 3"] += 1
    print(f"formulas surveyed: {len(formulas)}")
    for key in ("axiom", "refuted", "open at size 3"):
        print(f"  {key}: {tally[key]}")
    if surprises:
        print("REFUTED AXIOMS (soundness bugs!):")
        for f in surprises:
            print(" ", print_formula(f))
    else:
        print("no axiom instance was refuted, as it should be")


if __name__ == "__main__":
    main()
