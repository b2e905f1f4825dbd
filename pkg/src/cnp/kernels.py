"""잔여 그래프 연결 요소 갱신과 CBNS 교환의 numba 커널

상태는 배열 묶음(튜플) 하나로 넘긴다. 순서는 `new_arrays` 참고.
    in_s          bool[n]    S 포함 여부
    comp          int64[n]   노드가 속한 요소 슬롯 (S 이면 -1)
    nxt           int64[n]   같은 요소 안 다음 노드 (끝이면 -1)
    head, tail    int64[n+1] 슬롯별 첫/마지막 노드
    csize, cid    int64[n+1] 슬롯별 크기와 공개 라벨
    active, apos  int64[n+1] 사용 중인 슬롯 목록과 목록 안 위치
    free          int64[n+1] 빈 슬롯 스택
    s_arr, s_pos  int64[n]   S 노드 목록과 목록 안 위치
    stamp         int64[n+1] 이웃 요소 중복 제거용 표식
    meta          int64[6]   목적값, |S|, 요소 수, 빈 슬롯 수, 다음 라벨, 표식 카운터

슬롯 번호는 재사용하지만 공개 라벨(cid)은 단조 증가한다.
cap == 0 이면 쌍 연결도, cap >= 1 이면 W = cap 인 초과 노드 수를 목적값으로 쓴다.
"""

import numpy as np
from numba import njit

OBJ = 0
S_COUNT = 1
N_COMP = 2
FREE_TOP = 3
NEXT_LABEL = 4
STAMP = 5

UNSEEN = -2


def new_arrays(n: int):
    """빈 상태 배열 묶음"""
    in_s = np.zeros(n, dtype=np.bool_)
    comp = np.full(n, UNSEEN, dtype=np.int64)
    nxt = np.full(n, -1, dtype=np.int64)
    head = np.full(n + 1, -1, dtype=np.int64)
    tail = np.full(n + 1, -1, dtype=np.int64)
    csize = np.zeros(n + 1, dtype=np.int64)
    cid = np.full(n + 1, -1, dtype=np.int64)
    active = np.zeros(n + 1, dtype=np.int64)
    apos = np.full(n + 1, -1, dtype=np.int64)
    free = np.arange(n, -1, -1, dtype=np.int64)
    s_arr = np.zeros(n, dtype=np.int64)
    s_pos = np.full(n, -1, dtype=np.int64)
    stamp = np.zeros(n + 1, dtype=np.int64)
    meta = np.zeros(6, dtype=np.int64)
    meta[FREE_TOP] = n + 1
    return (in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta)


def copy_arrays(st):
    return tuple(a.copy() for a in st)


@njit(inline="always")
def _value(size, cap):
    if cap == 0:
        return size * (size - 1) // 2
    return size - cap if size > cap else 0


@njit
def _open_slot(st):
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    meta[FREE_TOP] -= 1
    slot = free[meta[FREE_TOP]]
    head[slot] = -1
    tail[slot] = -1
    csize[slot] = 0
    cid[slot] = meta[NEXT_LABEL]
    meta[NEXT_LABEL] += 1
    apos[slot] = meta[N_COMP]
    active[meta[N_COMP]] = slot
    meta[N_COMP] += 1
    return slot


@njit
def _close_slot(st, slot):
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    pos = apos[slot]
    last = active[meta[N_COMP] - 1]
    active[pos] = last
    apos[last] = pos
    apos[slot] = -1
    meta[N_COMP] -= 1
    free[meta[FREE_TOP]] = slot
    meta[FREE_TOP] += 1


@njit
def _append(st, slot, u):
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    comp[u] = slot
    nxt[u] = -1
    if tail[slot] == -1:
        head[slot] = u
    else:
        nxt[tail[slot]] = u
    tail[slot] = u
    csize[slot] += 1


@njit
def _grow(indptr, indices, st, slot, start, old):
    """start 에서 시작해 comp == old 인 노드를 slot 으로 옮김. 요소 리스트를 큐로 사용."""
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    _append(st, slot, start)
    x = start
    while x != -1:
        for e in range(indptr[x], indptr[x + 1]):
            y = indices[e]
            if comp[y] == old:
                _append(st, slot, y)
        x = nxt[x]


@njit(cache=True)
def label_residual(indptr, indices, cap, st):
    """in_s 가 채워진 상태에서 잔여 그래프 전체에 라벨을 붙이고 목적값을 계산"""
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    n = comp.shape[0]
    for u in range(n):
        if in_s[u]:
            comp[u] = -1
    for u in range(n):
        if comp[u] != UNSEEN:
            continue
        slot = _open_slot(st)
        _grow(indptr, indices, st, slot, u, UNSEEN)
        meta[OBJ] += _value(csize[slot], cap)


@njit(cache=True)
def delta_reinsert(indptr, indices, cap, st, u):
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    meta[STAMP] += 1
    mark = meta[STAMP]
    merged = 1
    before = 0
    for e in range(indptr[u], indptr[u + 1]):
        c = comp[indices[e]]
        if c < 0 or stamp[c] == mark:
            continue
        stamp[c] = mark
        merged += csize[c]
        before += _value(csize[c], cap)
    return _value(merged, cap) - before


@njit(cache=True)
def move_to_s(indptr, indices, cap, st, v):
    """v 를 S 로 옮기고 v 가 있던 요소를 이웃에서 시작하는 탐색으로 다시 라벨링"""
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    before = meta[OBJ]
    old = comp[v]
    meta[OBJ] -= _value(csize[old], cap)
    comp[v] = -1
    in_s[v] = True
    s_arr[meta[S_COUNT]] = v
    s_pos[v] = meta[S_COUNT]
    meta[S_COUNT] += 1

    for e in range(indptr[v], indptr[v + 1]):
        start = indices[e]
        if comp[start] != old:
            continue
        slot = _open_slot(st)
        _grow(indptr, indices, st, slot, start, old)
        meta[OBJ] += _value(csize[slot], cap)
    _close_slot(st, old)
    return meta[OBJ] - before


@njit(cache=True)
def move_from_s(indptr, indices, cap, st, u):
    """u 를 잔여 그래프로 되돌리고 인접 요소를 가장 큰 요소(동률이면 라벨 최소)로 병합"""
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    before = meta[OBJ]
    pos = s_pos[u]
    last = s_arr[meta[S_COUNT] - 1]
    s_arr[pos] = last
    s_pos[last] = pos
    s_pos[u] = -1
    meta[S_COUNT] -= 1
    in_s[u] = False

    meta[STAMP] += 1
    mark = meta[STAMP]
    target = -1
    for e in range(indptr[u], indptr[u + 1]):
        c = comp[indices[e]]
        if c < 0 or stamp[c] == mark:
            continue
        stamp[c] = mark
        if (target == -1 or csize[c] > csize[target]
                or (csize[c] == csize[target] and cid[c] < cid[target])):
            target = c

    if target == -1:
        slot = _open_slot(st)
        _append(st, slot, u)
        meta[OBJ] += _value(1, cap)
        return meta[OBJ] - before

    meta[OBJ] -= _value(csize[target], cap)
    for e in range(indptr[u], indptr[u + 1]):
        c = comp[indices[e]]
        if c < 0 or c == target:
            continue
        meta[OBJ] -= _value(csize[c], cap)
        x = head[c]
        while x != -1:
            comp[x] = target
            x = nxt[x]
        nxt[tail[target]] = head[c]
        tail[target] = tail[c]
        csize[target] += csize[c]
        _close_slot(st, c)
    _append(st, target, u)
    meta[OBJ] += _value(csize[target], cap)
    return meta[OBJ] - before


@njit(cache=True)
def best_reinsertion(indptr, indices, cap, st, skip):
    """argmin_{w ∈ S, w != skip} delta_reinsert(w), 동률이면 id 최소. 후보가 없으면 -1."""
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    best = -1
    best_delta = 0
    for i in range(meta[S_COUNT]):
        w = s_arr[i]
        if w == skip:
            continue
        d = delta_reinsert(indptr, indices, cap, st, w)
        if best == -1 or d < best_delta or (d == best_delta and w < best):
            best = w
            best_delta = d
    return best


@njit(cache=True)
def pick_large(st):
    """크기가 L = (최대 + 최소) // 2 보다 큰 요소 중 하나를 균등하게 고름

    그런 요소가 없으면(모든 크기가 같으면) 최대 크기 요소 중에서 고른다.
    """
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    count = meta[N_COMP]
    lo = csize[active[0]]
    hi = lo
    for i in range(1, count):
        s = csize[active[i]]
        if s < lo:
            lo = s
        elif s > hi:
            hi = s
    threshold = (lo + hi) // 2
    eligible = 0
    for i in range(count):
        if csize[active[i]] > threshold:
            eligible += 1
    if eligible == 0:
        threshold = hi - 1
        eligible = count
    r = np.random.randint(0, eligible)
    for i in range(count):
        if csize[active[i]] > threshold:
            if r == 0:
                return active[i]
            r -= 1
    return active[count - 1]


@njit(cache=True)
def select_removal(degree, weights, st, slot):
    """요소에서 (가중치, 차수, -id) 최대 노드를 고르고 나머지 노드의 가중치를 1 올림"""
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    best = head[slot]
    x = nxt[best]
    while x != -1:
        if (weights[x] > weights[best]
                or (weights[x] == weights[best]
                    and (degree[x] > degree[best] or (degree[x] == degree[best] and x < best)))):
            best = x
        x = nxt[x]
    x = head[slot]
    while x != -1:
        weights[x] += 1
        x = nxt[x]
    weights[best] -= 1
    return best


@njit
def _random_member(st, slot):
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    r = np.random.randint(0, csize[slot])
    x = head[slot]
    while r > 0:
        x = nxt[x]
        r -= 1
    return x


@njit
def _exchange(indptr, indices, degree, cap, st, weights, weighting):
    slot = pick_large(st)
    if weighting:
        u = select_removal(degree, weights, st, slot)
    else:
        u = _random_member(st, slot)
    move_to_s(indptr, indices, cap, st, u)
    v = best_reinsertion(indptr, indices, cap, st, -1)
    if v == u:
        # 제자리 교환은 u 를 뺀 S 에서 되돌릴 노드를 고름
        v = best_reinsertion(indptr, indices, cap, st, u)
    move_from_s(indptr, indices, cap, st, v)
    weights[v] = 0
    return u, v


@njit(cache=True)
def exchange_once(indptr, indices, degree, cap, st, weights, weighting, seed):
    np.random.seed(seed)
    return _exchange(indptr, indices, degree, cap, st, weights, weighting)


@njit(cache=True)
def exchange_chunk(indptr, indices, degree, cap, st, weights, weighting, seed,
                   steps, max_iter, no_improve, best_objective, floor, best_nodes):
    """교환을 최대 steps 번 수행

    (수행 횟수, 연속 무개선 횟수, 최적 목적값, 마지막 개선 위치 또는 -1) 을 반환하고
    최적 상태의 S 를 best_nodes 에 기록한다.
    """
    in_s, comp, nxt, head, tail, csize, cid, active, apos, free, s_arr, s_pos, stamp, meta = st
    np.random.seed(seed)
    done = 0
    best_at = -1
    while done < steps and no_improve < max_iter and best_objective > floor:
        _exchange(indptr, indices, degree, cap, st, weights, weighting)
        done += 1
        if meta[OBJ] < best_objective:
            best_objective = meta[OBJ]
            best_at = done - 1
            no_improve = 0
            for i in range(meta[S_COUNT]):
                best_nodes[i] = s_arr[i]
        else:
            no_improve += 1
    return done, no_improve, best_objective, best_at


def fill_s(st, nodes) -> None:
    """빈 배열 묶음에 S 를 기록 (라벨링 전에 호출)"""
    in_s, s_arr, s_pos, meta = st[0], st[10], st[11], st[13]
    nodes = np.asarray(nodes, dtype=np.int64)
    in_s[nodes] = True
    s_arr[:nodes.size] = nodes
    s_pos[nodes] = np.arange(nodes.size)
    meta[S_COUNT] = nodes.size


_compiled = False


def warmup() -> None:
    """작은 그래프로 커널을 한 번씩 돌려 JIT 컴파일을 끝냄. 시간 예산을 시작하기 전에 호출."""
    global _compiled
    if _compiled:
        return
    # 0-1 간선과 고립 노드 2
    indptr = np.array([0, 1, 2, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int32)
    degree = np.diff(indptr)
    for a in (indptr, indices, degree):
        a.setflags(write=False)
    st = new_arrays(3)
    fill_s(st, [0])
    label_residual(indptr, indices, 0, st)
    delta_reinsert(indptr, indices, 0, st, 0)
    best_reinsertion(indptr, indices, 0, st, -1)
    weights = np.zeros(3, dtype=np.int64)
    select_removal(degree, weights, st, pick_large(st))
    move_to_s(indptr, indices, 0, st, 1)
    move_from_s(indptr, indices, 0, st, 1)
    exchange_once(indptr, indices, degree, 0, st, weights, True, 0)
    best_nodes = np.zeros(1, dtype=np.int64)
    exchange_chunk(indptr, indices, degree, 0, st, weights, True, 0, 1, 1, 0, int(st[13][OBJ]), -1,
                   best_nodes)
    _compiled = True
