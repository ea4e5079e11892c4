#!/usr/bin/env python3
"""High-precision reference values for the csgreen test suite.

Evaluates the special functions and the closed-form kernels with mpmath at
50 significant digits and writes the tables consumed by the Rust tests:

    crates/core/data/specfun_oracle.csv
    crates/core/data/kernel_oracle.csv

Run from the repository root:  python3 tools/oracle.py
The kernel expressions here were checked independently by differentiating
the displacement kernels numerically at 40 digits and assembling the
stresses from the constitutive law.
"""

import os

import mpmath as mp

mp.mp.dps = 50

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "crates", "core", "data")


def fmt(v):
    return mp.nstr(v, 25, min_fixed=0, max_fixed=0)


# ---------------------------------------------------------------- specfun


def brackets(x):
    x = mp.mpf(x)
    e = mp.exp(-x)
    k0 = mp.besselk(0, x)
    k1 = mp.besselk(1, x)
    return {
        "k0": k0,
        "k1": k1,
        "g1": k0 + 2 / x * k1 - 2 / x**2,
        "g2": k0 + k1 / x - 1 / x**2,
        "k1c": 1 - x * k1,
        "h1c": 1 - (1 + x) * e,
        "h1": (1 + x) * e,
        "h2": 1 - (1 + x + x**2) * e,
        "h3": 3 - (3 + 3 * x + x**2) * e,
        "h4": 15 - (15 + 15 * x + 6 * x**2 + x**3) * e,
    }


SPECFUN_COLS = ["k0", "k1", "g1", "g2", "k1c", "h1c", "h1", "h2", "h3", "h4"]


def write_specfun():
    n = 200
    lo, hi = mp.log(mp.mpf("1e-8")), mp.log(mp.mpf(600))
    xs = []
    for k in range(n):
        t = lo + (hi - lo) * k / (n - 1)
        # round to a double so the Rust side sees exactly the same argument
        xs.append(float(mp.exp(t)))
    xs[0], xs[-1] = 1e-8, 600.0
    with open(os.path.join(DATA, "specfun_oracle.csv"), "w") as f:
        f.write("x," + ",".join(SPECFUN_COLS) + "\n")
        for x in xs:
            b = brackets(x)
            f.write(repr(x) + "," + ",".join(fmt(b[c]) for c in SPECFUN_COLS) + "\n")


# ---------------------------------------------------------------- kernels


def d(a, b):
    return 1 if a == b else 0


def eps3(i, j, k):
    return (i - j) * (j - k) * (k - i) // 2


def eps2(a, b):
    return {(0, 1): 1, (1, 0): -1}.get((a, b), 0)


def exp_brackets(r, l):
    return brackets(r / l)


def force3d(mu, nu, l, X):
    r = mp.sqrt(sum(t * t for t in X))
    b = exp_brackets(r, l)
    R = range(3)
    U = [[1 / (16 * mp.pi * mu * (1 - nu)) / r * ((3 - 4 * nu) * d(i, q) + X[i] * X[q] / r**2)
          + 1 / (4 * mp.pi * mu) * l**2 / r**3 * (-b["h3"] * X[i] * X[q] / r**2 + b["h2"] * d(i, q))
          for q in R] for i in R]
    Om = [[-1 / (8 * mp.pi * mu) / r**2 * b["h1c"] * sum(eps3(i, p, q) * X[p] for p in R) / r
           for q in R] for i in R]
    S = [[[(-1 / (8 * mp.pi * (1 - nu)) / r**2
            * ((1 - 2 * nu) * (X[j] * d(i, q) + X[i] * d(j, q) - X[q] * d(i, j)) / r
               + 3 * X[i] * X[j] * X[q] / r**3)
            + 1 / (2 * mp.pi) * l**2 / r**4
            * (b["h4"] * X[i] * X[j] * X[q] / r**3
               - b["h3"] * (d(i, j) * X[q] + d(j, q) * X[i] + d(i, q) * X[j]) / r)
            + 1 / (2 * mp.pi) / r**2 * b["h1"] * X[i] * d(j, q) / r)
           for q in R] for i in R] for j in R]
    M = [[-1 / (2 * mp.pi) * l**2 / r**3 * b["h3"] * X[i] * X[q] / r**2
          + 1 / (2 * mp.pi) * l**2 / r**3 * b["h2"] * d(i, q)
          for q in R] for i in R]
    return U, Om, S, M


def couple3d(mu, nu, l, X):
    r = mp.sqrt(sum(t * t for t in X))
    b = exp_brackets(r, l)
    R = range(3)
    _, U, _, _ = force3d(mu, nu, l, X)
    Om = [[1 / (16 * mp.pi * mu) / r**3 * b["h3"] * (X[i] * X[q] / r**2 - d(i, q))
           + 1 / (8 * mp.pi * mu) / r**3 * b["h1c"] * d(i, q)
           for q in R] for i in R]
    P = 3 - b["h3"]
    S = [[[sum(1 / (8 * mp.pi) * 3 / r**3 * X[j] * X[p] / r**2 * eps3(i, p, q)
               + 1 / (8 * mp.pi) / r**3 * (3 - 2 * P) * X[i] * X[p] / r**2 * eps3(j, p, q)
               for p in R)
           - 1 / (4 * mp.pi) / r**3 * b["h1"] * eps3(i, j, q)
           for q in R] for i in R] for j in R]
    M = [[1 / (4 * mp.pi) / r**2 * b["h1"] * sum(eps3(i, p, q) * X[p] for p in R) / r
          for q in R] for i in R]
    return U, Om, S, M


def force2d(mu, nu, l, X):
    r = mp.sqrt(sum(t * t for t in X))
    b = exp_brackets(r, l)
    g1, g2, k1 = b["g1"], b["g2"], b["k1"]
    R = range(2)
    U = [[-1 / (8 * mp.pi * mu * (1 - nu)) * ((3 - 4 * nu) * mp.log(r) * d(a, p) - X[a] * X[p] / r**2)
          + 1 / (2 * mp.pi * mu) * g1 * X[a] * X[p] / r**2
          - 1 / (2 * mp.pi * mu) * g2 * d(a, p)
          for p in R] for a in R]
    Om = [1 / (4 * mp.pi * mu * l) * (k1 - l / r) * sum(eps2(a, p) * X[a] for a in R) / r for p in R]
    S = [[[-1 / (4 * mp.pi * (1 - nu) * r)
           * ((1 - 2 * nu) * (d(bb, p) * X[a] + d(a, p) * X[bb] - d(a, bb) * X[p]) / r
              + 2 * X[a] * X[bb] * X[p] / r**3)
           + 1 / (mp.pi * r) * g1
           * ((d(a, bb) * X[p] + d(bb, p) * X[a] + d(a, p) * X[bb]) / r - 4 * X[a] * X[bb] * X[p] / r**3)
           + 1 / (mp.pi * l) * k1 * (d(bb, p) * X[a] / r - X[a] * X[bb] * X[p] / r**3)
           for p in R] for a in R] for bb in R]
    M = [[1 / mp.pi * g1 * X[a] * X[p] / r**2 - 1 / mp.pi * g2 * d(a, p) for p in R] for a in R]
    return U, Om, S, M


def couple2d(mu, nu, l, X):
    r = mp.sqrt(sum(t * t for t in X))
    b = exp_brackets(r, l)
    g1, k0, k1 = b["g1"], b["k0"], b["k1"]
    R = range(2)
    U = [1 / (4 * mp.pi * mu * l) * (k1 - l / r) * sum(eps2(a, c) * X[c] for c in R) / r for a in R]
    Om = k0 / (8 * mp.pi * mu * l**2)
    S = [[-1 / (4 * mp.pi * l**2) * g1
          * sum(eps2(a, c) * X[c] * X[bb] + eps2(bb, c) * X[c] * X[a] for c in R) / r**2
          + 1 / (4 * mp.pi * l**2) * k0 * eps2(a, bb)
          for a in R] for bb in R]
    M = [1 / (2 * mp.pi * l) * k1 * sum(eps2(a, c) * X[c] for c in R) / r for a in R]
    return U, Om, S, M


def rows(name, kind, mu, nu, l, X, bundle):
    U, Om, S, M = bundle
    out = []
    pre = [kind, fmt(mu), fmt(nu), fmt(l)] + [repr(float(t)) for t in X] + ([""] if len(X) == 2 else [])

    def emit(label, v):
        out.append(",".join(pre + [label, fmt(v)]))

    n = len(X)
    R = range(n)
    if kind in ("force3d", "couple3d", "force2d"):
        for q in R:
            for i in R:
                emit(f"U_{i+1}{q+1}", U[i][q])
        if kind == "force2d":
            for q in R:
                emit(f"Omega_{q+1}", Om[q])
        else:
            for q in R:
                for i in R:
                    emit(f"Omega_{i+1}{q+1}", Om[i][q])
        for q in R:
            for j in R:
                for i in R:
                    emit(f"Sigma_{j+1}{i+1}{q+1}", S[j][i][q])
        for q in R:
            for i in R:
                emit(f"Mu_{i+1}{q+1}", M[i][q])
    else:
        for a in R:
            emit(f"U_{a+1}", U[a])
        emit("Omega", Om)
        for bb in R:
            for a in R:
                emit(f"Sigma_{bb+1}{a+1}", S[bb][a])
        for a in R:
            emit(f"Mu_{a+1}", M[a])
    return out


def write_kernels():
    mu = mp.mpf(1)
    cases = [
        ("force3d", "0.3", "0.1", ["1", "0", "0"]),
        ("force3d", "0.3", "0.1", ["0.3", "-0.2", "0.17"]),
        ("force3d", "0.25", "1", ["0.05", "0.02", "-0.03"]),
        ("force3d", "0", "0.2", ["2.5", "1.5", "-3"]),
        ("couple3d", "0.3", "0.2", ["0.3", "0.4", "0"]),
        ("couple3d", "0.3", "0.2", ["0.3", "-0.2", "0.17"]),
        ("couple3d", "0.49", "0.05", ["0.001", "0.002", "0.0005"]),
        ("couple3d", "0.1", "1", ["4", "-2", "1"]),
        ("force2d", "0.25", "0.1", ["1", "0"]),
        ("force2d", "0.25", "0.2", ["0.3", "-0.17"]),
        ("force2d", "0.3", "1", ["0.01", "0.02"]),
        ("force2d", "0.49", "0.05", ["1.5", "0.9"]),
        ("couple2d", "0.3", "0.2", ["0.3", "0.4"]),
        ("couple2d", "0.25", "0.2", ["0.3", "-0.17"]),
        ("couple2d", "0", "1", ["0.002", "-0.001"]),
        ("couple2d", "0.3", "0.05", ["2", "1"]),
    ]
    funcs = {"force3d": force3d, "couple3d": couple3d, "force2d": force2d, "couple2d": couple2d}
    lines = ["kind,mu,nu,l,x1,x2,x3,name,value"]
    for kind, nu, l, X in cases:
        Xm = [mp.mpf(t) for t in X]
        lines += rows(kind, kind, mu, mp.mpf(nu), mp.mpf(l), Xm, funcs[kind](mu, mp.mpf(nu), mp.mpf(l), Xm))
    with open(os.path.join(DATA, "kernel_oracle.csv"), "w") as f:
        f.write("\n".join(lines) + "\n")


def print_spot_values():
    print("K0(1)   =", fmt(mp.besselk(0, 1)))
    print("K1(1)   =", fmt(mp.besselk(1, 1)))
    for x in ("2", "1e-6"):
        b = brackets(mp.mpf(x))
        print(f"g1({x}) =", fmt(b["g1"]), f" g2({x}) =", fmt(b["g2"]))
    print("h3(1)   =", fmt(brackets(1)["h3"]))
    # analytic displacement gradient of the 3D force kernel at (1,0,0),
    # mu = 1, nu = 0.3, l = 0.1, by differentiating the closed form
    mu, nu, l = mp.mpf(1), mp.mpf("0.3"), mp.mpf("0.1")
    X0 = [mp.mpf(1), mp.mpf(0), mp.mpf(0)]
    for q in range(3):
        for i in range(3):
            g = [mp.diff(lambda a, b, c: force3d(mu, nu, l, [a, b, c])[0][i][q], tuple(X0),
                         tuple(1 if t == j else 0 for t in range(3))) for j in range(3)]
            print(f"dU_{i+1}{q+1}/dx_j =", [fmt(v) for v in g])


if __name__ == "__main__":
    os.makedirs(DATA, exist_ok=True)
    write_specfun()
    write_kernels()
    print_spot_values()
