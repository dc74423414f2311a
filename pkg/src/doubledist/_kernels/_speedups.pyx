# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure kernels in py.py; same signatures and results."""

from libc.stdlib cimport free, malloc
from libc.string cimport memset


cdef int* _ints(object seq, Py_ssize_t n) except NULL:
    cdef int* arr = <int*> malloc(n * sizeof(int) if n else sizeof(int))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        arr[i] = seq[i]
    return arr


def walk_components(pa, pb):
    cdef Py_ssize_t n = len(pa)
    cdef int* a = _ints(pa, n)
    cdef int* b = _ints(pb, n)
    cdef char* seen = <char*> malloc(n if n else 1)
    memset(seen, 0, n if n else 1)
    cycles = []
    paths = []
    cdef Py_ssize_t v
    cdef int cur, nxt, length, use_a
    try:
        for v in range(n):
            if seen[v]:
                continue
            if a[v] >= 0 and b[v] >= 0:
                continue
            seen[v] = 1
            if a[v] < 0 and b[v] < 0:
                paths.append(0)
                continue
            length = 0
            cur = <int> v
            use_a = 1 if a[v] >= 0 else 0
            while True:
                nxt = a[cur] if use_a else b[cur]
                if nxt < 0:
                    break
                length += 1
                cur = nxt
                seen[cur] = 1
                use_a = 1 - use_a
            paths.append(length)
        for v in range(n):
            if seen[v]:
                continue
            length = 0
            cur = <int> v
            use_a = 1
            while True:
                seen[cur] = 1
                cur = a[cur] if use_a else b[cur]
                length += 1
                use_a = 1 - use_a
                if cur == <int> v and use_a:
                    break
            cycles.append(length)
    finally:
        free(a)
        free(b)
        free(seen)
    return cycles, paths


def sigma2x_from_lengths(cycles, paths, kcap):
    cdef int total = 0
    cdef int cap = kcap
    cdef int c, p
    if cap < 0:
        total = 2 * len(cycles)
        for p in paths:
            if p % 2 == 0:
                total += 1
    else:
        for c in cycles:
            if c <= cap:
                total += 2
        for p in paths:
            if p % 2 == 0 and p <= cap - 2:
                total += 1
    return total


def best_resolution(sq_id, e_part, t_part, d_part, a_star, kcap, node_budget):
    cdef Py_ssize_t n = len(sq_id)
    cdef int* sq = _ints(sq_id, n)
    cdef int* ep = _ints(e_part, n)
    cdef int* tp = _ints(t_part, n)
    cdef int* dp = _ints(d_part, n)
    cdef int* pa = <int*> malloc(n * sizeof(int) if n else sizeof(int))
    cdef char* seen = <char*> malloc(n if n else 1)
    cdef int* sverts = <int*> malloc(n * sizeof(int) if n else sizeof(int))
    cdef Py_ssize_t n_sq_verts = 0
    cdef Py_ssize_t i
    cdef unsigned long long tau, total, best_tau = 0, explored = 0
    cdef unsigned long long budget = node_budget
    cdef int best = -1
    cdef int score, length, cur, use_a, nxt, v, cap, pcap
    cap = kcap
    pcap = cap - 2
    try:
        for i in range(n):
            pa[i] = -1
            if sq[i] >= 0:
                sverts[n_sq_verts] = <int> i
                n_sq_verts += 1
        total = 1ULL << a_star
        tau = 0
        while tau < total:
            if explored >= budget:
                break
            explored += 1
            for i in range(n_sq_verts):
                v = sverts[i]
                if (tau >> sq[v]) & 1:
                    pa[v] = tp[v]
                else:
                    pa[v] = ep[v]
            memset(seen, 0, n)
            score = 0
            for i in range(n):
                if seen[i]:
                    continue
                if pa[i] >= 0 and dp[i] >= 0:
                    continue
                seen[i] = 1
                if pa[i] < 0 and dp[i] < 0:
                    score += 1
                    continue
                length = 0
                cur = <int> i
                use_a = 1 if pa[i] >= 0 else 0
                while True:
                    nxt = pa[cur] if use_a else dp[cur]
                    if nxt < 0:
                        break
                    length += 1
                    cur = nxt
                    seen[cur] = 1
                    use_a = 1 - use_a
                if length % 2 == 0 and (cap < 0 or length <= pcap):
                    score += 1
            for i in range(n):
                if seen[i]:
                    continue
                length = 0
                cur = <int> i
                use_a = 1
                while True:
                    seen[cur] = 1
                    cur = pa[cur] if use_a else dp[cur]
                    length += 1
                    use_a = 1 - use_a
                    if cur == <int> i and use_a:
                        break
                if cap < 0 or length <= cap:
                    score += 2
            if score > best:
                best = score
                best_tau = tau
            tau += 1
    finally:
        free(sq)
        free(ep)
        free(tp)
        free(dp)
        free(pa)
        free(seen)
        free(sverts)
    return best, best_tau, explored


cdef class _Walker:
    """Shared backtracking state for the bounded alternating-walk searches."""

    cdef int* sq
    cdef int* ep
    cdef int* tp
    cdef int* dp
    cdef int* choice
    cdef char* in_path
    cdef int* frm
    cdef int* tried
    cdef int* set_sq
    cdef int* padd
    cdef int* path
    cdef Py_ssize_t n
    cdef int n_squares

    def __cinit__(self, sq_id, e_part, t_part, d_part, int max_depth):
        self.n = len(sq_id)
        self.sq = _ints(sq_id, self.n)
        self.ep = _ints(e_part, self.n)
        self.tp = _ints(t_part, self.n)
        self.dp = _ints(d_part, self.n)
        cdef Py_ssize_t i
        self.n_squares = 0
        for i in range(self.n):
            if self.sq[i] >= 0 and self.sq[i] + 1 > self.n_squares:
                self.n_squares = self.sq[i] + 1
        self.choice = <int*> malloc(
            self.n_squares * sizeof(int) if self.n_squares else sizeof(int)
        )
        for i in range(self.n_squares):
            self.choice[i] = -1
        self.in_path = <char*> malloc(self.n if self.n else 1)
        memset(self.in_path, 0, self.n if self.n else 1)
        self.frm = <int*> malloc((max_depth + 2) * sizeof(int))
        self.tried = <int*> malloc((max_depth + 2) * sizeof(int))
        self.set_sq = <int*> malloc((max_depth + 2) * sizeof(int))
        self.padd = <int*> malloc((max_depth + 2) * sizeof(int))
        self.path = <int*> malloc((2 * max_depth + 4) * sizeof(int))

    def __dealloc__(self):
        free(self.sq)
        free(self.ep)
        free(self.tp)
        free(self.dp)
        free(self.choice)
        free(self.in_path)
        free(self.frm)
        free(self.tried)
        free(self.set_sq)
        free(self.padd)
        free(self.path)


def alternating_cycles(sq_id, e_part, t_part, d_part, kcap):
    cdef int half = kcap // 2
    out = []
    if half <= 0:
        return out
    cdef _Walker w = _Walker(sq_id, e_part, t_part, d_part, half)
    cdef int s, depth, cur, bit, partner, d, sqi, forced, j
    for s in range(<int> w.n):
        if w.sq[s] < 0 or w.dp[s] < 0:
            continue
        depth = 0
        w.frm[0] = s
        w.tried[0] = 0
        w.set_sq[0] = -1
        w.padd[0] = -1
        w.in_path[s] = 1
        while depth >= 0:
            cur = w.frm[depth]
            # clear state left by a previous descend from this frame
            if w.padd[depth] >= 0:
                w.in_path[w.padd[depth]] = 0
                w.padd[depth] = -1
            if w.set_sq[depth] >= 0:
                w.choice[w.set_sq[depth]] = -1
                w.set_sq[depth] = -1
            if w.tried[depth] >= 2:
                w.in_path[cur] = 0
                depth -= 1
                continue
            bit = w.tried[depth]
            w.tried[depth] += 1
            sqi = w.sq[cur]
            forced = w.choice[sqi]
            if forced >= 0 and forced != bit:
                continue
            partner = w.tp[cur] if bit else w.ep[cur]
            if partner <= s or w.in_path[partner]:
                continue
            d = w.dp[partner]
            if d < 0:
                continue
            if d == s:
                w.path[2 * depth] = cur
                w.path[2 * depth + 1] = partner
                vlist = []
                for j in range(2 * depth + 2):
                    vlist.append(w.path[j])
                verts = tuple(vlist)
                ch = []
                if forced < 0:
                    ch.append((sqi, bit))
                for j in range(depth):
                    if w.set_sq[j] >= 0:
                        ch.append((w.set_sq[j], w.choice[w.set_sq[j]]))
                ch.sort()
                out.append((verts, tuple(ch)))
                continue
            if d < s or w.in_path[d] or depth + 1 >= half:
                continue
            w.path[2 * depth] = cur
            w.path[2 * depth + 1] = partner
            w.in_path[partner] = 1
            w.padd[depth] = partner
            if forced < 0:
                w.choice[sqi] = bit
                w.set_sq[depth] = sqi
            depth += 1
            w.frm[depth] = d
            w.tried[depth] = 0
            w.set_sq[depth] = -1
            w.padd[depth] = -1
            w.in_path[d] = 1
    return out


def alternating_even_paths(sq_id, e_part, t_part, d_part, kcap):
    out = []
    if kcap < 2:
        return out
    cdef int half = kcap // 2
    cdef _Walker w = _Walker(sq_id, e_part, t_part, d_part, half)
    cdef int s, depth, cur, bit, partner, d, sqi, forced, first, j
    for s in range(<int> w.n):
        if w.sq[s] >= 0 or w.dp[s] < 0:
            continue
        first = w.dp[s]
        if w.sq[first] < 0:
            continue
        depth = 0
        w.frm[0] = first
        w.tried[0] = 0
        w.set_sq[0] = -1
        w.padd[0] = -1
        w.in_path[s] = 1
        w.in_path[first] = 1
        w.path[0] = s
        while depth >= 0:
            cur = w.frm[depth]
            if w.padd[depth] >= 0:
                w.in_path[w.padd[depth]] = 0
                w.padd[depth] = -1
            if w.set_sq[depth] >= 0:
                w.choice[w.set_sq[depth]] = -1
                w.set_sq[depth] = -1
            if w.tried[depth] >= 2:
                w.in_path[cur] = 0
                depth -= 1
                continue
            bit = w.tried[depth]
            w.tried[depth] += 1
            sqi = w.sq[cur]
            forced = w.choice[sqi]
            if forced >= 0 and forced != bit:
                continue
            partner = w.tp[cur] if bit else w.ep[cur]
            if w.in_path[partner]:
                continue
            d = w.dp[partner]
            if d < 0:
                w.path[2 * depth + 1] = cur
                w.path[2 * depth + 2] = partner
                vlist = []
                for j in range(2 * depth + 3):
                    vlist.append(w.path[j])
                verts = tuple(vlist)
                ch = []
                if forced < 0:
                    ch.append((sqi, bit))
                for j in range(depth):
                    if w.set_sq[j] >= 0:
                        ch.append((w.set_sq[j], w.choice[w.set_sq[j]]))
                ch.sort()
                out.append((verts, tuple(ch)))
                continue
            if depth + 1 >= half or w.in_path[d] or w.sq[d] < 0:
                continue
            w.path[2 * depth + 1] = cur
            w.path[2 * depth + 2] = partner
            w.in_path[partner] = 1
            w.padd[depth] = partner
            if forced < 0:
                w.choice[sqi] = bit
                w.set_sq[depth] = sqi
            depth += 1
            w.frm[depth] = d
            w.tried[depth] = 0
            w.set_sq[depth] = -1
            w.padd[depth] = -1
            w.in_path[d] = 1
        w.in_path[s] = 0
    return out
