"""Independent floating-point oracle for the frozen test values.

Regenerate with:  python3 tests/oracle/derive.py > tests/frozen_values.hpp
"""

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

EPS = 1.0 / 3.0


def chars(n, max_weight):
    ws = [w for w in range(1 << n) if bin(w).count("1") <= max_weight]
    xs = range(1 << n)
    return np.array([[(-1) ** bin(w & x).count("1") for w in ws] for x in xs], dtype=float)


def best_error(table, n, degree):
    """min_p max_x |p(x) - f(x)| over degree-`degree` polynomials."""
    a = chars(n, degree)
    m = a.shape[1]
    f = np.array(table, dtype=float)
    # variables: coefficients (free), t
    c = np.zeros(m + 1)
    c[-1] = 1.0
    ones = np.ones((1 << n, 1))
    a_ub = np.vstack([np.hstack([a, -ones]), np.hstack([-a, -ones])])
    b_ub = np.concatenate([f, -f])
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * m + [(0, None)], method="highs")
    assert res.status == 0
    return res.fun


def approx_degree(table, n):
    for d in range(n + 1):
        err = best_error(table, n, d)
        if abs(err - EPS) < 1e-7:
            # The optimum of a small LP is a small-denominator rational; an
            # exact 1/3 meets the non-strict bound.
            assert Fraction(err).limit_denominator(1000) == Fraction(1, 3)
            return d
        if err < EPS:
            return d
    raise AssertionError


def table_of(n, pred):
    return [int(pred(x)) for x in range(1 << n)]


def popcount(x):
    return bin(x).count("1")


def johnson(k, p, s):
    subs = [sum(1 << e for e in c) for c in itertools.combinations(range(k), p)]
    return np.array([[1.0 if popcount(a & b) == s else 0.0 for b in subs] for a in subs])


def disj_rho(k):
    p = k // 3
    j0, j1 = johnson(k, p, 0), johnson(k, p, 1)
    mu0, mu1 = j0 / j0.sum(), j1 / j1.sum()
    m = j0.shape[0]
    s = np.linalg.norm((mu0 + mu1) / 2, 2) * m
    d = np.linalg.norm((mu0 - mu1) / 2, 2) * m
    return max(d, s - 1.0, 0.0)


def schedule(delta):
    if delta == 0:
        return 1
    levels = int(math.floor(math.log2(max(delta, 1)))) + 1
    r = 1
    while math.exp(-r / 18.0) > 1.0 / (3.0 * levels):
        r += 2
    return r


def main():
    out = []
    out.append("#pragma once")
    out.append("")
    out.append("// Generated by tests/oracle/derive.py (scipy HiGHS LP, numpy eigensolves).")
    out.append("")
    out.append("#include <array>")
    out.append("")
    out.append("namespace frozen {")
    out.append("")
    out.append("// deg_{1/3} of the function whose truth table is the bits of the index.")
    for n in (1, 2, 3):
        degs = [approx_degree([(t >> x) & 1 for x in range(1 << n)], n) for t in range(1 << (1 << n))]
        body = ", ".join(str(d) for d in degs)
        out.append(f"inline constexpr std::array<int, {len(degs)}> kDegreeArity{n} = {{{body}}};")
    named = {
        "kDegreeOr4": (4, lambda x: x != 0),
        "kDegreeAnd4": (4, lambda x: x == 15),
        "kDegreeParity4": (4, lambda x: popcount(x) % 2),
        "kDegreeParity5": (5, lambda x: popcount(x) % 2),
        "kDegreeMaj5": (5, lambda x: popcount(x) >= 3),
        "kDegreeOr6": (6, lambda x: x != 0),
    }
    out.append("")
    for name, (n, pred) in named.items():
        out.append(f"inline constexpr int {name} = {approx_degree(table_of(n, pred), n)};")
    out.append("")
    out.append("// rho of the DISJ pair for k = 3, 6, 9, 12.")
    rhos = ", ".join(repr(float(disj_rho(k))) for k in (3, 6, 9, 12))
    out.append(f"inline constexpr std::array<double, 4> kDisjRho = {{{rhos}}};")
    out.append("")
    out.append("// Repetition schedule r(Delta) for Delta = 0..64.")
    sched = ", ".join(str(schedule(d)) for d in range(65))
    out.append(f"inline constexpr std::array<int, 65> kSchedule = {{{sched}}};")
    out.append("")
    out.append("// ceil(6 sqrt(2) e / c) for c = 1, 1/2, 2, 32.6.")
    ks = ", ".join(str(math.ceil(6 * math.sqrt(2) * math.e / c)) for c in (1.0, 0.5, 2.0, 32.6))
    out.append(f"inline constexpr std::array<int, 4> kLargeCaseK = {{{ks}}};")
    out.append("")
    out.append("}  // namespace frozen")
    print("\n".join(out))


if __name__ == "__main__":
    main()
