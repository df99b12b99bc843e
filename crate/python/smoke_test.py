"""Smoke test for the Python bindings: drives every exposed operation once
on the worked matrices and checks the known answers."""

import math
import sys

sys.path.insert(0, __file__.rsplit("/", 1)[0])

from spectral_range import (
    ComplexMatrix,
    NonnegMatrix,
    RowUniformMatrix,
    aevdd_scalings,
    camion_hoffman_decide,
    close_polygon,
    critical_graph,
    cycle_means,
    eta_describe,
    eta_realize,
    extremal_params,
    m_matrix_check,
    perron_root,
    perron_vector,
    realize_eigenvalue,
    sigma_describe,
    simple_sunflower,
    strict_visualizing_vector,
    sum_visualize,
    zero_in_sigma,
)

checks = 0


def check(label, ok):
    global checks
    checks += 1
    status = "ok" if ok else "FAIL"
    print(f"  {status}: {label}")
    if not ok:
        sys.exit(1)


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


B_ROWS = [
    [0, 8, 8, 0, 8],
    [2, 0, 0, 2, 2],
    [2, 0, 0, 0, 0],
    [0, 3, 0, 3, 3],
    [0, 3, 0, 0, 0],
]

print("matrix types")
dense = NonnegMatrix([[float(v) for v in row] for row in B_ROWS])
b = RowUniformMatrix(dense)
check("row values", b.row_values == [8.0, 2.0, 2.0, 3.0, 3.0])
check("aux of a preimage", b.uniform_split().aux().row_values == b.row_values)
check("round trip through support", RowUniformMatrix.from_support(5, b.support, b.row_values).support == b.support)
check("irreducible", b.is_irreducible())

print("cycle means and critical graphs")
mu, nu, has_cycle = cycle_means(b.dense())
check("mu = 4", close(mu, 4.0, 1e-12))
check("nu = sqrt(6)", close(nu, math.sqrt(6.0), 1e-12))
crit = critical_graph(b.dense(), "max")
check("critical edges", sorted(crit["edges"]) == [(1, 2), (1, 3), (2, 1), (3, 1)])

print("perron")
two = NonnegMatrix([[0.0, 8.0], [2.0, 0.0]])
check("perron root", close(perron_root(two), 4.0))
check("perron vector", perron_vector(two)[1] - 0.5 < 1e-9)

print("scalings")
x = strict_visualizing_vector(two)
check("visualizing ratio", close(x[0] / x[1], 2.0))
s = aevdd_scalings(b.uniform_split())
check("strict case", s["case"] == "strict" and s["nu"] < s["rho"] < s["mu"])
y = sum_visualize(two, 4.0)
check("sum visualization exists", len(y) == 2)

print("sunflowers")
upper, lower = extremal_params(b)
check("extremal params", close(upper, 4.0, 1e-12) and close(lower, math.sqrt(6.0), 1e-12))
s = simple_sunflower(b.dense(), [1, 2])
check("sunflower out-edges", s["out_edges"] == [2, 1, 1, 2, 2])

print("perron-root range")
eta = eta_describe(b)
check("open interval", not eta["lower_attained"] and not eta["upper_attained"])
realized, rho = eta_realize(b, 3.0)
check("realized perron root", close(rho, 3.0, 1e-6))
check(
    "realized aux",
    realized.aux().support == b.support
    and all(close(x, y, 1e-12) for x, y in zip(realized.aux().row_values, b.row_values)),
)
try:
    eta_realize(b, 4.0)
    check("unattained endpoint rejected", False)
except ValueError as e:
    check("unattained endpoint rejected", "infeasible" in str(e))

print("eigenvalue set")
sigma = sigma_describe(b)
check("open disk radius 4", sigma["disk"]["boundary"] == "open" and close(sigma["disk"]["radius"], 4.0, 1e-12))
member, witness = zero_in_sigma(b)
check("zero included", member and witness is not None)
mat, lam, vec = realize_eigenvalue(b, complex(0.0, 1.0))
check("realized eigenvalue", abs(lam - 1j) < 1e-7 and vec is not None)
check(
    "witness aux",
    mat.aux().support == b.support
    and all(close(x, y, 1e-12) for x, y in zip(mat.aux().row_values, b.row_values)),
)

print("camion-hoffman")
verdict = camion_hoffman_decide(NonnegMatrix([[2.0, 1.0], [1.0, 2.0]]))
check("regular anchor", verdict["regular"] and close(verdict["test_radius"], 0.5))
verdict = camion_hoffman_decide(NonnegMatrix([[1.0, 1.0], [1.0, 1.0]]))
check("singular anchor", not verdict["regular"] and verdict["witness"] is not None)
check("m-matrix agreement", m_matrix_check(NonnegMatrix([[2.0, 1.0], [1.0, 2.0]])))
c = close_polygon([3.0, 4.0, 5.0])
check("polygon closes", abs(sum(c)) < 1e-10 and close(abs(c[2]), 5.0, 1e-12))

print(f"\nall {checks} smoke checks passed")
