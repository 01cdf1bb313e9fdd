"""Pure-Python ROBDD node store.

Fallback for the compiled ``_kernel`` extension; both expose the same
``Kernel`` class.  Nodes are dense integers: 0 and 1 are the terminals,
internal nodes start at 2.  Variables are numbered 1..nvars and the
terminals carry the sentinel variable ``nvars + 1``.
"""

AND, OR, XOR = 0, 1, 2

MAX_NODES = (1 << 28) - 1


class Kernel:
    backend = "python"

    def __init__(self, nvars):
        self.nvars = nvars
        term = nvars + 1
        self._var = [term, term]
        self._lo = [0, 1]
        self._hi = [0, 1]
        self._unique = {}
        self._apply_cache = {}
        self._restrict_cache = {}

    def __len__(self):
        return len(self._var)

    def var_of(self, u):
        return self._var[u]

    def low(self, u):
        return self._lo[u]

    def high(self, u):
        return self._hi[u]

    def mk(self, v, lo, hi):
        if lo == hi:
            return lo
        key = (v, lo, hi)
        u = self._unique.get(key)
        if u is not None:
            return u
        u = len(self._var)
        if u > MAX_NODES:
            raise MemoryError("BDD node table exhausted")
        self._var.append(v)
        self._lo.append(lo)
        self._hi.append(hi)
        self._unique[key] = u
        return u

    def apply(self, op, u, w):
        # terminal cases
        if op == AND:
            if u == 0 or w == 0:
                return 0
            if u == 1:
                return w
            if w == 1 or u == w:
                return u
        elif op == OR:
            if u == 1 or w == 1:
                return 1
            if u == 0:
                return w
            if w == 0 or u == w:
                return u
        elif op == XOR:
            if u == w:
                return 0
            if u == 0:
                return w
            if w == 0:
                return u
        else:
            raise ValueError(f"unknown operator code {op}")
        if u > w:
            u, w = w, u
        key = (op, u, w)
        r = self._apply_cache.get(key)
        if r is not None:
            return r
        var = self._var
        vu, vw = var[u], var[w]
        if vu == vw:
            v = vu
            r = self.mk(v, self.apply(op, self._lo[u], self._lo[w]),
                        self.apply(op, self._hi[u], self._hi[w]))
        elif vu < vw:
            v = vu
            r = self.mk(v, self.apply(op, self._lo[u], w),
                        self.apply(op, self._hi[u], w))
        else:
            v = vw
            r = self.mk(v, self.apply(op, u, self._lo[w]),
                        self.apply(op, u, self._hi[w]))
        self._apply_cache[key] = r
        return r

    def neg(self, u):
        return self.apply(XOR, u, 1)

    def restrict(self, u, v, b):
        if self._var[u] > v:
            return u
        key = (u, v, b)
        r = self._restrict_cache.get(key)
        if r is not None:
            return r
        vu = self._var[u]
        if vu == v:
            r = self._hi[u] if b else self._lo[u]
        else:
            r = self.mk(vu, self.restrict(self._lo[u], v, b),
                        self.restrict(self._hi[u], v, b))
        self._restrict_cache[key] = r
        return r

    def sat_count(self, u):
        """Number of satisfying assignments over all ``nvars`` variables."""
        cache = {}
        return self._sc(u, cache) << (self._var[u] - 1)

    def _sc(self, u, cache):
        # count over variables var(u) .. nvars
        if u < 2:
            return u
        r = cache.get(u)
        if r is not None:
            return r
        v = self._var[u]
        lo, hi = self._lo[u], self._hi[u]
        r = ((self._sc(lo, cache) << (self._var[lo] - v - 1))
             + (self._sc(hi, cache) << (self._var[hi] - v - 1)))
        cache[u] = r
        return r

    def support(self, u):
        seen = set()
        out = set()
        stack = [u]
        while stack:
            x = stack.pop()
            if x < 2 or x in seen:
                continue
            seen.add(x)
            out.add(self._var[x])
            stack.append(self._lo[x])
            stack.append(self._hi[x])
        return out

    def from_bits(self, bits):
        """Build a function from ``2**nvars`` truth bits, x_1 most significant."""
        n = self.nvars
        if len(bits) != 1 << n:
            raise ValueError("bit count does not match variable count")
        layer = [1 if b else 0 for b in bits]
        for v in range(n, 0, -1):
            mk = self.mk
            layer = [mk(v, layer[k], layer[k + 1]) for k in range(0, len(layer), 2)]
        return layer[0]

    def to_bits(self, u):
        out = bytearray(1 << self.nvars)
        self._expand(u, 1, 0, out)
        return bytes(out)

    def _expand(self, u, level, offset, out):
        # fill out[offset : offset + 2**(n-level+1)] with f restricted along the path
        n = self.nvars
        if u == 0:
            return
        if u == 1:
            width = 1 << (n - level + 1)
            out[offset:offset + width] = b"\x01" * width
            return
        half = 1 << (n - level)
        if self._var[u] == level:
            self._expand(self._lo[u], level + 1, offset, out)
            self._expand(self._hi[u], level + 1, offset + half, out)
        else:
            self._expand(u, level + 1, offset, out)
            self._expand(u, level + 1, offset + half, out)

    def cache_sizes(self):
        return len(self._unique), len(self._apply_cache), len(self._restrict_cache)

    def audit(self):
        """Return a list of structural violations (empty when healthy)."""
        problems = []
        seen = {}
        for u in range(2, len(self._var)):
            v, lo, hi = self._var[u], self._lo[u], self._hi[u]
            if lo == hi:
                problems.append(f"node {u}: redundant test on x{v}")
            if not (v < self._var[lo] and v < self._var[hi]):
                problems.append(f"node {u}: ordering violated below x{v}")
            if not 1 <= v <= self.nvars:
                problems.append(f"node {u}: variable x{v} out of range")
            key = (v, lo, hi)
            if key in seen:
                problems.append(f"nodes {seen[key]} and {u} are duplicates")
            seen[key] = u
            if self._unique.get(key) != u:
                problems.append(f"node {u}: missing from unique table")
        return problems
