#!/usr/bin/env python3
"""Simulate asymptotic quantiles of the Johansen trace and max-eigenvalue
statistics for a given deterministic case.

The null distribution is approximated the classical way: pure random walks
of dimension m (k = 1, no short-run dynamics) of length T, the Johansen
reduced-rank regression evaluated per replication, quantiles taken over
replications.  Used to produce the restricted-constant and restricted-trend
rows of data/critical_values.txt; the other three cases are checked against
the published MacKinnon-Haug-Michelis values to validate the simulator.

usage: gen_johansen_tables.py CASE DIM_MAX REPS T SEED
  CASE in {none, restricted_constant, unrestricted_constant,
           restricted_trend, unrestricted_trend}
"""
import sys

import numpy as np


def moments(x):
    return np.matmul(x.transpose(0, 2, 1), x)


def simulate(case, m, reps, T, rng, batch=400):
    trace = []
    maxeig = []
    t = np.arange(1, T + 1, dtype=float)
    drift = np.zeros(m)
    if case in ("unrestricted_constant", "restricted_trend", "unrestricted_trend"):
        drift[0] = 1.0
    done = 0
    while done < reps:
        b = min(batch, reps - done)
        e = rng.standard_normal((b, T, m))
        if case == "unrestricted_trend":
            # quadratic trend in levels along the first coordinate
            e[:, :, 0] += drift[0] * t / T * 10.0
        else:
            e += drift
        z = np.cumsum(e, axis=1)
        zlag = np.concatenate([np.zeros((b, 1, m)), z[:, :-1, :]], axis=1)
        ones = np.ones((b, T, 1))
        trend = np.broadcast_to(t.reshape(1, T, 1), (b, T, 1))
        if case == "none":
            z1, z2 = zlag, None
        elif case == "restricted_constant":
            z1, z2 = np.concatenate([zlag, ones], axis=2), None
        elif case == "unrestricted_constant":
            z1, z2 = zlag, ones
        elif case == "restricted_trend":
            z1, z2 = np.concatenate([zlag, trend], axis=2), ones
        elif case == "unrestricted_trend":
            z1, z2 = zlag, np.concatenate([ones, trend], axis=2)
        else:
            raise SystemExit("unknown case " + case)
        z0 = e
        if z2 is not None:
            q, _ = np.linalg.qr(z2)
            z0 = z0 - np.matmul(q, np.matmul(q.transpose(0, 2, 1), z0))
            z1 = z1 - np.matmul(q, np.matmul(q.transpose(0, 2, 1), z1))
        s00 = moments(z0) / T
        s11 = moments(z1) / T
        s01 = np.matmul(z0.transpose(0, 2, 1), z1) / T
        l = np.linalg.cholesky(s11)
        linv = np.linalg.inv(l)
        a = np.matmul(linv, np.matmul(s01.transpose(0, 2, 1),
                                       np.linalg.solve(s00, s01)))
        a = np.matmul(a, linv.transpose(0, 2, 1))
        a = 0.5 * (a + a.transpose(0, 2, 1))
        lam = np.sort(np.linalg.eigvalsh(a), axis=1)[:, ::-1][:, :m]
        lam = np.clip(lam, 0.0, 1.0 - 1e-12)
        stats = -T * np.log1p(-lam)
        trace.append(stats.sum(axis=1))
        maxeig.append(stats[:, 0])
        done += b
    return np.concatenate(trace), np.concatenate(maxeig)


def main():
    case = sys.argv[1]
    dim_max = int(sys.argv[2])
    reps = int(sys.argv[3])
    T = int(sys.argv[4])
    seed = int(sys.argv[5])
    rng = np.random.default_rng(seed)
    probs = [0.90, 0.95, 0.99]
    for m in range(1, dim_max + 1):
        tr, mx = simulate(case, m, reps, T, rng)
        qt = np.quantile(tr, probs)
        qm = np.quantile(mx, probs)
        print(f"trace {case} {m} " + " ".join(f"{v:.2f}" for v in qt))
        print(f"max_eigen {case} {m} " + " ".join(f"{v:.2f}" for v in qm))
        sys.stdout.flush()


if __name__ == "__main__":
    main()
