"""Exact objects on the smallest interesting sector: three classes, capacity two,
two sites, one particle each of classes 1 and 2."""
from multiasep.duality import duality_a, duality_matrix, normalized_measure
from multiasep.process import build_generator
from multiasep.verify import check_self_duality

gen = build_generator("asep", 3, 2, 2, (1, 1))
print("states:", [str(c) for c in gen.row_basis])
print("generator:")
for r in range(gen.shape[0]):
    print("  ", [str(gen[r, c]) for c in range(gen.shape[1])])

print("reversible measure:")
for c, p in zip(gen.row_basis, normalized_measure(gen.row_basis)):
    print(f"   {c}: {p.simplify()}")

D = duality_matrix(duality_a, gen.row_basis)
print("duality matrix nonzeros:", D.nnz())
rep = check_self_duality(3, 2, 2)
print("self-duality on the full space:", "PASS" if rep.passed else rep.counterexample)
