#!/usr/bin/env python3
"""End-to-end arithmetic demo.

Builds the arithmetic theory, checks a small proof that zero is a right
identity at one, derives an induction instance, and then hunts for a
countermodel of a deliberately false sentence over a small carrier.
"""

from folkit import (
    EMPTY_THEORY,
    FALSE,
    App,
    Atom,
    ByAxiom,
    ByHyp,
    ByInd,
    ByMP,
    Implies,
    Proof,
    ProofLine,
    Var,
    arith_signature,
    arith_theory,
    check_proof,
    find_countermodel,
    induction_sentence,
    print_formula,
    print_model,
    print_proof,
)


def main() -> None:
    sig = arith_signature()
    theory = arith_theory()
    zero = App("zero")
    one = App("succ", (zero,))

    add_zero = theory.get("add_zero")
    target = Atom("eq", (App("plus", (one, zero)), one))
    proof = Proof((
        ProofLine(add_zero, ByHyp("add_zero")),
        ProofLine(Implies(add_zero, target), ByAxiom()),
        ProofLine(target, ByMP(1, 2)),
    ))
    print("proof that plus(succ(zero), zero) equals succ(zero):")
    print(print_proof(proof))
    verdict = check_proof(proof, theory, sig)
    print(f"checker verdict: {'ACCEPT' if verdict.ok else verdict}")

    body = Atom("eq", (App("plus", (zero, Var(1))), Var(1)))
    scheme = induction_sentence(body, 1)
    print("\ninduction instance for plus(zero, x1) = x1:")
    print(print_formula(scheme))
    ind_proof = Proof((ProofLine(scheme, ByInd(body, 1)),))
    verdict = check_proof(ind_proof, theory, sig)
    print(f"checker verdict: {'ACCEPT' if verdict.ok else verdict}")

    wrong = Atom("eq", (zero, one))
    print(f"\nsearching size <= 2 countermodels of {print_formula(wrong)} with no theory...")
    found = find_countermodel(EMPTY_THEORY, wrong, sig, 2, ceiling=10_000_000)
    if found is None:
        print("none found")
    else:
        structure, env = found
        print(print_model(structure, env), end="")

    # Asking to falsify the falsum is asking for a model of the theory
    # itself: an injective successor on a finite carrier is a bijection,
    # so zero would be a successor, and no small model can exist.
    print("\nsearching size <= 2 models of the base theory itself...")
    found = find_countermodel(theory, FALSE, sig, 2, ceiling=10_000_000)
    if found is None:
        print("none found: the successor sentences already force an infinite carrier")
    else:
        structure, env = found
        print(print_model(structure, env), end="")


if __name__ == "__main__":
    main()
