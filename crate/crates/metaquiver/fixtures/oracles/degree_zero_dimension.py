#!/usr/bin/env python3
"""Independent floating-point oracle for the degree-0 dimension golden value.

Group (m, r, s, t) = (21, 4, 3, 0) with the canonical cut C_1^(1).

Shares no code with the Rust crate. Differences in route:
  * projections onto split summands come from numerically inverting the eigenbasis, not a closed form;
  * relations use suffix derivatives (the crate uses prefix derivatives);
  * the ideal is spanned directly by every u*rho*v, ranked by SVD.

Usage: python3 degree_zero_dimension.py > ../golden_m21.json
"""
import itertools
import json
import sys

import numpy as np

M_, R_, S_, T_ = 21, 4, 3, 0
D_ = [0, 4, 7, 8, 9, 12, 13, 14, 17]
L_, K_ = 1, 1
TOL = 1e-9


def eps(n, k):
    return np.exp(2j * np.pi * k / n)


def perm_sign(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


m, r, s, t = M_, R_, S_, T_
F = sorted(i for i in range(m) if (r * i - i) % m == 0)
Dset = set(D_)
rp = [pow(r, k, m) for k in range(s)]


def orbit(i):
    return {(rp[k] * i) % m for k in range(s)}


def ul(i):
    (rep,) = orbit(i) & Dset
    return rep


def kappa(i):
    if i in F:
        return 0
    u = ul(i)
    return next(k for k in range(s) if (rp[k] * u) % m == i % m)


def induced_mats(i):
    a = np.diag([eps(m, rp[k] * i) for k in range(s)])
    b = np.zeros((s, s), dtype=complex)
    for k in range(s - 1):
        b[k + 1, k] = 1
    b[0, s - 1] = eps(m, t * i)
    return a, b


def lam(i, l):
    return eps(s * m, t * i) * eps(s, l)


# vertices: ("ind", i) or ("spl", i, l)
vertices = [("spl", i, l) for i in F for l in range(s)] + [("ind", i) for i in sorted(Dset - set(F))]
vidx = {v: n for n, v in enumerate(vertices)}


def dim(v):
    return s if v[0] == "ind" else 1


def rep_beta(v):
    if v[0] == "ind":
        return induced_mats(v[1])[1]
    return np.array([[lam(v[1], v[2])]])


VA, VB = induced_mats(1)


def beta_tensor(target):
    return np.kron(VB, rep_beta(target))


def basis_t(k, d):
    e = np.zeros(d, dtype=complex)
    e[k] = 1
    return e


def extend_from_generator(img0, target):
    """Induced source: columns beta^k v_i map to beta^k . img0."""
    bt = beta_tensor(target)
    cols = [img0]
    for _ in range(s - 1):
        cols.append(bt @ cols[-1])
    return np.stack(cols, axis=1)


def numeric_projection(j):
    """Coordinates of a T_j vector in the eigenbasis w^(0..s-1), normalised by w^(l) = sum lam^{s-1-k} beta^k v_j."""
    cols = []
    _, b = induced_mats(j)
    for l in range(s):
        w = np.zeros(s, dtype=complex)
        for k in range(s):
            w += lam(j, l) ** (s - 1 - k) * np.linalg.matrix_power(b, k)[:, 0]
        assert np.allclose(b @ w, lam(j, l) * w)
        cols.append(w)
    W = np.stack(cols, axis=1)
    return W, np.linalg.inv(W)


arrows = []  # (src vertex, tgt vertex, matrix, q-data for grading)


def tensor_vec(kv, tv):
    return np.kron(kv, tv)


for i in sorted(Dset):
    for p in range(s):
        tgt = (i - rp[p]) % m
        j = ul(tgt)
        if i not in F and j not in F:
            a = kappa(tgt)
            img = tensor_vec(np.linalg.matrix_power(VB, p)[:, 0], np.linalg.matrix_power(induced_mats(j)[1], a)[:, 0])
            mat = extend_from_generator(img, ("ind", j))
            arrows.append((("ind", i), ("ind", j), mat, (i, p)))
        elif i not in F and j in F:
            W, Winv = numeric_projection(j)
            for l in range(s):
                img = tensor_vec(np.linalg.matrix_power(VB, p)[:, 0], Winv[l : l + 1, 0])
                mat = extend_from_generator(img, ("spl", j, l))
                arrows.append((("ind", i), ("spl", j, l), mat, (i, p)))
        elif i in F:
            if tgt not in Dset:
                continue
            W, _ = numeric_projection(i)
            for l in range(s):
                wvec = W[:, l]
                # x^i_{p,0} on T_i extended from v_i -> beta^p v_1 (x) v_j, applied to w
                img0 = tensor_vec(np.linalg.matrix_power(VB, p)[:, 0], basis_t(0, s))
                full = extend_from_generator(img0, ("ind", tgt))
                arrows.append((("spl", i, l), ("ind", tgt), (full @ wvec).reshape(-1, 1), (i, p)))

# equivariance check
for (src, tgt, mat, _) in arrows:
    lhs = beta_tensor(tgt) @ mat
    rhs = mat @ rep_beta(src)
    assert np.allclose(lhs, rhs), (src, tgt)

out_arrows = {v: [] for v in vertices}
for n, (src, _, _, _) in enumerate(arrows):
    out_arrows[src].append(n)

# grading: cut C_k^(l) on the lattice, transported to Q_A, then along the orbit map.
sl = s * L_


def lattice_degree(i, q):
    """Degree of x^i_q in Q_A: lattice arrow at v = x*alpha_1 with eta(v) = i."""
    x = (-i) % m
    g = (K_ * x) % sl
    direction = q + 1 if q < s - 1 else 0
    step = K_ if direction != 0 else -(s - 1) * K_
    g2 = (g + step) % sl
    return 1 if g >= g2 else 0


def phi_arrow(i, q):
    """Orbit map on Q_A arrows: returns (ul(i), p)."""
    u = ul(i)
    tgt = (i - rp[q]) % m
    if u not in F:
        p = (q - kappa(i)) % s
    else:
        p = (q - kappa(tgt)) % s
    return (u, p)


tilde_deg = {}
for i in range(m):
    for q in range(s):
        key = phi_arrow(i, q)
        d = lattice_degree(i, q)
        assert tilde_deg.setdefault(key, d) == d, "orbit map not gradable"

degree = [tilde_deg[a[3]] for a in arrows]


def coefficient(path):
    src = arrows[path[0]][0]
    vec = basis_t(0, dim(src))
    vdims = 0
    for n in path:
        mat = arrows[n][2]
        vec = np.kron(np.eye(s ** vdims), mat) @ vec
        vdims += 1
    tgt = arrows[path[-1]][1]
    X = vec.reshape([s] * s + [dim(tgt)])
    y = np.zeros(dim(tgt), dtype=complex)
    for sigma in itertools.permutations(range(s)):
        y += perm_sign(sigma) * X[sigma]
    # twist is trivial here: det_V is the trivial representation
    assert src == tgt
    c = y[0]
    assert np.allclose(y, c * basis_t(0, dim(tgt))), "non-scalar"
    return c


omega = {}
for v in vertices:
    stack = [[n] for n in out_arrows[v]]
    while stack:
        pth = stack.pop()
        end = arrows[pth[-1]][1]
        if len(pth) == s:
            if end == v:
                c = coefficient(pth)
                if abs(c) > TOL:
                    omega[tuple(pth)] = c * dim(end)
            continue
        for n in out_arrows[end]:
            stack.append(pth + [n])

hom = {sum(degree[n] for n in pth) for pth in omega}
assert hom == {1}, hom

# suffix derivatives by degree-1 arrows give the degree-0 relations
relations = []
for x in range(len(arrows)):
    if degree[x] != 1:
        continue
    rel = {}
    for pth, c in omega.items():
        if pth[-1] == x:
            rest = pth[:-1]
            assert all(degree[n] == 0 for n in rest)
            rel[rest] = rel.get(rest, 0) + c
    rel = {k: v for k, v in rel.items() if abs(v) > TOL}
    if rel:
        relations.append(rel)

zero_arrows = [n for n in range(len(arrows)) if degree[n] == 0]
zero_out = {v: [n for n in out_arrows[v] if degree[n] == 0] for v in vertices}

paths = []  # (start, tuple)
for v in vertices:
    paths.append((v, ()))
    stack = [[n] for n in zero_out[v]]
    while stack:
        pth = stack.pop()
        assert len(pth) < sl, "degree-0 path too long"
        paths.append((v, tuple(pth)))
        end = arrows[pth[-1]][1]
        for n in zero_out[end]:
            stack.append(pth + [n])
pindex = {p: n for n, p in enumerate(paths)}


def start_of(word):
    return arrows[word[0]][0]


def end_of(word):
    return arrows[word[-1]][1]


rows = []
for rel in relations:
    some = next(iter(rel))
    a, b = start_of(some), end_of(some)
    us = [p for (v, p) in paths if (p == () and v == a) or (p and end_of(p) == a)]
    vs = [p for (v, p) in paths if (p == () and v == b) or (p and start_of(p) == b)]
    for u in us:
        for w in vs:
            row = np.zeros(len(paths), dtype=complex)
            ok = True
            for word, c in rel.items():
                full = tuple(u) + word + tuple(w)
                key = (start_of(full), full)
                if key not in pindex:
                    ok = False
                    break
                row[pindex[key]] += c
            if ok:
                rows.append(row)

rank = np.linalg.matrix_rank(np.array(rows), tol=1e-7) if rows else 0
dimension = len(paths) - rank

def label(n):
    (sv, tv, _, (i, p)) = arrows[n]
    if sv[0] == "spl":
        return "x^{(%d)%d}_{%d,0}" % (sv[2], sv[1], p)
    if tv[0] == "spl":
        return "x^{%d(%d)}_{%d,0}" % (i, tv[2], p)
    return "x^{%d}_{%d,%d}" % (i, p, kappa((i - rp[p]) % m))


report = {
    "version": 1,
    "group": [m, r, s, t],
    "cut": {"kind": "canonical", "l": L_, "k": K_},
    "qg_vertices": len(vertices),
    "qg_arrows": len(arrows),
    "degree_one_arrows": sum(degree),
    "support_size": len(omega),
    "degree_zero_relations": len(relations),
    "degree_zero_paths": len(paths),
    "dimension": int(dimension),
    "degree_one_labels": sorted(label(n) for n in range(len(arrows)) if degree[n] == 1),
}
json.dump(report, sys.stdout, indent=2)
sys.stdout.write("\n")
