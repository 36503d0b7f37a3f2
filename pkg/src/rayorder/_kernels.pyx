# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled residue-ring kernel; same interface as _kernels_py."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

BACKEND = "cython"

ctypedef long long i64

cdef inline i64 floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and (a < 0):
        q -= 1
    return q


cdef class ResidueArith:
    cdef public int n
    cdef public object size
    cdef public list diag
    cdef public list one_vec
    cdef public object one_idx
    cdef list rows
    cdef i64* T
    cdef i64* H
    cdef i64* radix_c
    cdef i64 size_c

    def __cinit__(self, table, hnf_rows, one_vec):
        cdef int n = len(hnf_rows)
        cdef int i, j, k
        self.n = n
        self.T = <i64*> malloc(n * n * n * sizeof(i64))
        self.H = <i64*> malloc(n * n * sizeof(i64))
        self.radix_c = <i64*> malloc(n * sizeof(i64))
        for i in range(n):
            for j in range(n):
                self.H[i * n + j] = hnf_rows[i][j]
                for k in range(n):
                    self.T[(i * n + j) * n + k] = table[i][j][k]
        self.rows = [[int(x) for x in r] for r in hnf_rows]
        self.diag = [int(hnf_rows[i][i]) for i in range(n)]
        size = 1
        for d in self.diag:
            size *= d
        self.size = size
        self.size_c = size
        self.radix_c[n - 1] = 1
        for i in range(n - 2, -1, -1):
            self.radix_c[i] = self.radix_c[i + 1] * self.diag[i + 1]
        self.one_vec = self.reduce(one_vec)
        self.one_idx = self.encode(self.one_vec)

    def __dealloc__(self):
        free(self.T)
        free(self.H)
        free(self.radix_c)

    cdef void _reduce(self, i64* v) nogil:
        cdef int n = self.n
        cdef int i, j
        cdef i64 q
        for i in range(n):
            q = floordiv(v[i], self.H[i * n + i])
            if q != 0:
                for j in range(i, n):
                    v[j] -= q * self.H[i * n + j]

    cdef i64 _encode(self, i64* v) nogil:
        cdef i64 idx = 0
        cdef int i
        for i in range(self.n):
            idx += v[i] * self.radix_c[i]
        return idx

    cdef void _decode(self, i64 idx, i64* v) nogil:
        cdef int i
        for i in range(self.n):
            v[i] = idx / self.radix_c[i]
            idx = idx % self.radix_c[i]

    cdef void _mul(self, i64* u, i64* v, i64* out) nogil:
        cdef int n = self.n
        cdef int i, j, k
        cdef i64 c
        cdef i64* row
        for k in range(n):
            out[k] = 0
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                c = u[i] * v[j]
                if c == 0:
                    continue
                row = self.T + (i * n + j) * n
                for k in range(n):
                    out[k] += c * row[k]
        self._reduce(out)

    cdef i64 _mul_idx(self, i64 a, i64 b) nogil:
        cdef i64 u[16]
        cdef i64 v[16]
        cdef i64 w[16]
        self._decode(a, u)
        self._decode(b, v)
        self._mul(u, v, w)
        return self._encode(w)

    cdef list _narrow(self, v):
        # reduce arbitrary-size coordinates with Python ints before they reach C storage
        cdef int i, j
        v = [int(x) for x in v]
        for i in range(self.n):
            q = v[i] // self.diag[i]
            if q:
                row = self.rows[i]
                for j in range(i, self.n):
                    v[j] -= q * row[j]
        return v

    def reduce(self, v):
        cdef i64 w[16]
        cdef int i
        v = self._narrow(v)
        for i in range(self.n):
            w[i] = v[i]
        self._reduce(w)
        return [w[i] for i in range(self.n)]

    def encode(self, v):
        cdef i64 w[16]
        cdef int i
        v = self._narrow(v)
        for i in range(self.n):
            w[i] = v[i]
        self._reduce(w)
        return self._encode(w)

    def decode(self, idx):
        cdef i64 w[16]
        self._decode(idx, w)
        return [w[i] for i in range(self.n)]

    def mul_vec(self, u, v):
        cdef i64 a[16]
        cdef i64 b[16]
        cdef i64 w[16]
        cdef int i
        u = self._narrow(u)
        v = self._narrow(v)
        for i in range(self.n):
            a[i] = u[i]
            b[i] = v[i]
        self._mul(a, b, w)
        return [w[i] for i in range(self.n)]

    def mul_idx(self, a, b):
        return self._mul_idx(a, b)

    def pow_idx(self, a, e):
        cdef i64 out = self.one_idx
        cdef i64 base = a
        while e:
            if e & 1:
                out = self._mul_idx(out, base)
            e >>= 1
            if e:
                base = self._mul_idx(base, base)
        return out

    def unit_mask(self, prime_hnfs):
        cdef int n = self.n
        cdef int np_ = len(prime_hnfs)
        cdef i64* P = <i64*> malloc((np_ * n * n + 1) * sizeof(i64))
        cdef i64 w[16]
        cdef i64 idx, q
        cdef int t, i, j, inside, ok
        mask = bytearray(self.size_c)
        cdef unsigned char[:] mv = mask
        for t in range(np_):
            for i in range(n):
                for j in range(n):
                    P[(t * n + i) * n + j] = prime_hnfs[t][i][j]
        with nogil:
            for idx in range(self.size_c):
                ok = 1
                for t in range(np_):
                    self._decode(idx, w)
                    inside = 1
                    for i in range(n):
                        if w[i] % P[(t * n + i) * n + i] != 0:
                            inside = 0
                            break
                        q = w[i] / P[(t * n + i) * n + i]
                        if q != 0:
                            for j in range(i, n):
                                w[j] -= q * P[(t * n + i) * n + j]
                    if inside:
                        ok = 0
                        break
                mv[idx] = ok
        free(P)
        return mask

    def group_table(self, elements):
        cdef i64 N = self.size_c
        cdef int R = 64
        cdef int r, j, c
        cdef i64 g, pw, h, x, cur, t, k, nold, nH
        cdef i64 target = len(elements)
        cdef signed char* inH = <signed char*> malloc(N * sizeof(signed char))
        cdef int* exps = <int*> malloc(N * R * sizeof(int))
        cdef i64* Hl = <i64*> malloc((target + 1) * sizeof(i64))
        memset(inH, 0, N)
        gens = []
        relations = []
        inH[self.one_idx] = 1
        for c in range(R):
            exps[self.one_idx * R + c] = 0
        Hl[0] = self.one_idx
        nH = 1
        try:
            for gg in elements:
                if nH == target:
                    break
                g = gg
                if inH[g]:
                    continue
                r = len(gens)
                if r >= R:
                    raise OverflowError("too many generators")
                k = 1
                pw = g
                while not inH[pw]:
                    pw = self._mul_idx(pw, g)
                    k += 1
                rel = [-exps[pw * R + c] for c in range(r)] + [k]
                relations = [row + [0] for row in relations]
                relations.append(rel)
                for t in range(nH):
                    exps[Hl[t] * R + r] = 0
                nold = nH
                cur = g
                with nogil:
                    for j in range(1, k):
                        for t in range(nold):
                            h = Hl[t]
                            x = self._mul_idx(h, cur)
                            inH[x] = 1
                            for c in range(r):
                                exps[x * R + c] = exps[h * R + c]
                            exps[x * R + r] = j
                            Hl[nH] = x
                            nH += 1
                        cur = self._mul_idx(cur, g)
                gens.append(g)
            r = len(gens)
            table = {}
            for t in range(nH):
                h = Hl[t]
                table[h] = tuple(exps[h * R + c] for c in range(r))
        finally:
            free(inH)
            free(exps)
            free(Hl)
        return gens, relations, table
