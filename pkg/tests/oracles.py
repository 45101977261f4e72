"""Brute-force reference implementations, independent of the package code paths."""

import itertools
import math

import numpy as np


def adjacency_sets(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def clustering_bruteforce(n, edges):
    adj = adjacency_sets(n, edges)
    out = []
    for v in range(n):
        nb = sorted(adj[v])
        d = len(nb)
        if d < 2:
            out.append(0.0)
            continue
        t = sum(1 for a, b in itertools.combinations(nb, 2) if b in adj[a])
        out.append(2.0 * t / (d * (d - 1)))
    return out


def floyd_warshall(n, edges):
    inf = math.inf
    dist = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in edges:
        dist[u][v] = dist[v][u] = 1
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == inf:
                continue
            di = dist[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return dist


def path_lengths_bruteforce(n, edges):
    dist = floyd_warshall(n, edges)
    return sorted(int(dist[i][j]) for i in range(n) for j in range(n)
                  if i != j and dist[i][j] != math.inf)


def spectrum_bruteforce(n, edges):
    """Eigenvalues of the random-walk Laplacian I - D^-1 A (same spectrum as the
    symmetric form), isolated nodes contributing 0, via a general eigen-solver."""
    a = np.zeros((n, n))
    for u, v in edges:
        a[u, v] = a[v, u] = 1.0
    m = np.zeros((n, n))
    for i in range(n):
        d = a[i].sum()
        if d > 0:
            m[i, i] = 1.0
            for j in range(n):
                m[i, j] -= a[i, j] / d
    return np.sort(np.linalg.eigvals(m).real)


def modularity_bruteforce(n, edges, labels, resolution=1.0):
    a = np.zeros((n, n))
    for u, v in edges:
        a[u, v] = a[v, u] = 1.0
    k = a.sum(axis=1)
    two_m = k.sum()
    q = 0.0
    for i in range(n):
        for j in range(n):
            if labels[i] == labels[j]:
                q += a[i, j] - resolution * k[i] * k[j] / two_m
    return q / two_m


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def best_partition_bruteforce(n, edges, resolution=1.0):
    """(best modularity, number of communities) over every partition of the nodes."""
    a = np.zeros((n, n))
    for u, v in edges:
        a[u, v] = a[v, u] = 1.0
    k = a.sum(axis=1)
    two_m = k.sum()
    b = (a - resolution * np.outer(k, k) / two_m) / two_m
    best = (-math.inf, None)
    labels = np.zeros(n, dtype=int)
    for part in set_partitions(range(n)):
        for c, block in enumerate(part):
            labels[block] = c
        q = b[labels[:, None] == labels[None, :]].sum()
        if q > best[0] + 1e-12:
            best = (q, len(part))
    return best


def mmd_bruteforce(xs, ys, kernel):
    kxx = sum(kernel(a, b) for a in xs for b in xs) / (len(xs) ** 2)
    kyy = sum(kernel(a, b) for a in ys for b in ys) / (len(ys) ** 2)
    kxy = sum(kernel(a, b) for a in xs for b in ys) / (len(xs) * len(ys))
    return kxx + kyy - 2 * kxy
