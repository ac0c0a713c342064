"""The three worked entry algebras: diagonals, Schur blocks and a nilpotent.

Each case study returns a report of named sub-claims, all decided exactly.
"""
from blocktoeplitz import INF, reshuffle
from blocktoeplitz.casestudies import diagonal_case, nilpotent_case, schur_case


def show(rep):
    print(rep.claim, "->", rep.verdict)
    for s in rep.subclaims:
        print(f"  {s.status:9s} {s.name}: {s.detail}")
    if rep.dims:
        print("  dims:", rep.dims)


# %% Reshuffling turns a diagonal-entry block Toeplitz matrix into d Toeplitz blocks.
print("reshuffle(2, 3) =", reshuffle(2, 3).mapping)

# %% Coordinatewise circulants sit inside one family F_(A,B).
show(diagonal_case(3, 3, [0, INF, "1+2i"]))

# %% Schur entries: the family exists but its (A, B) fail the kernel condition.
show(schur_case(3, 1, 2))

# %% A nilpotent generator: maximal commutative, yet no pair (A, B) describes it.
show(nilpotent_case(2))
