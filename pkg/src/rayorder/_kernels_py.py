"""Pure-Python residue-ring kernel.

Residues of O/d are integer vectors in the order basis reduced against the
row Hermite form of d, so 0 <= x_i < d_ii. They are numbered in mixed radix.
"""

from __future__ import annotations

BACKEND = "python"


class ResidueArith:
    def __init__(self, table, hnf_rows, one_vec):
        self.n = n = len(hnf_rows)
        self.T = [[list(table[i][j]) for j in range(n)] for i in range(n)]
        self.H = [list(r) for r in hnf_rows]
        self.diag = [self.H[i][i] for i in range(n)]
        size = 1
        for d in self.diag:
            size *= d
        self.size = size
        radix = [1] * n
        for i in range(n - 2, -1, -1):
            radix[i] = radix[i + 1] * self.diag[i + 1]
        self.radix = radix
        self.one_vec = self.reduce(one_vec)
        self.one_idx = self.encode(self.one_vec)

    def reduce(self, v):
        v = list(v)
        n = self.n
        H = self.H
        for i in range(n):
            q = v[i] // H[i][i]
            if q:
                row = H[i]
                for j in range(i, n):
                    v[j] -= q * row[j]
        return v

    def encode(self, v):
        v = self.reduce(v)
        idx = 0
        for x, r in zip(v, self.radix):
            idx += x * r
        return idx

    def decode(self, idx):
        out = []
        for r, d in zip(self.radix, self.diag):
            q, idx = divmod(idx, r)
            out.append(q)
        return out

    def mul_vec(self, u, v):
        n = self.n
        T = self.T
        out = [0] * n
        for i in range(n):
            ui = u[i]
            if ui:
                Ti = T[i]
                for j in range(n):
                    c = ui * v[j]
                    if c:
                        row = Ti[j]
                        for k in range(n):
                            out[k] += c * row[k]
        return self.reduce(out)

    def mul_idx(self, a, b):
        return self.encode(self.mul_vec(self.decode(a), self.decode(b)))

    def pow_idx(self, a, e):
        out = list(self.one_vec)
        base = self.decode(a)
        while e:
            if e & 1:
                out = self.mul_vec(out, base)
            e >>= 1
            if e:
                base = self.mul_vec(base, base)
        return self.encode(out)

    def unit_mask(self, prime_hnfs):
        """bytearray with 1 at residues lying in none of the given prime ideals."""
        n = self.n
        mask = bytearray(self.size)
        primes = [[list(r) for r in P] for P in prime_hnfs]
        for idx in range(self.size):
            v = self.decode(idx)
            ok = 1
            for P in primes:
                w = list(v)
                inside = True
                for i in range(n):
                    p = P[i][i]
                    if w[i] % p:
                        inside = False
                        break
                    q = w[i] // p
                    if q:
                        row = P[i]
                        for j in range(i, n):
                            w[j] -= q * row[j]
                if inside:
                    ok = 0
                    break
            mask[idx] = ok
        return mask

    def group_table(self, elements):
        """Generators, relations and an exponent table for the group formed by `elements`."""
        one = self.one_idx
        target = len(elements)
        exps = {one: ()}
        gens = []
        relations = []
        for g in elements:
            if len(exps) == target:
                break
            if g in exps:
                continue
            r = len(gens)
            k = 1
            pw = g
            gv = self.decode(g)
            pv = gv
            while pw not in exps:
                pv = self.mul_vec(pv, gv)
                pw = self.encode(pv)
                k += 1
            base = exps[pw]
            rel = [-e for e in base] + [0] * (r - len(base)) + [k]
            relations = [row + [0] for row in relations]
            relations.append(rel)
            old = [(self.decode(h), v + (0,) * (r - len(v))) for h, v in exps.items()]
            exps = {self.encode(hv): v + (0,) for hv, v in old}
            cur = gv
            for j in range(1, k):
                for hv, v in old:
                    exps[self.encode(self.mul_vec(hv, cur))] = v + (j,)
                cur = self.mul_vec(cur, gv)
            gens.append(g)
        r = len(gens)
        exps = {h: v + (0,) * (r - len(v)) for h, v in exps.items()}
        return gens, relations, exps
