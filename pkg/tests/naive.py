"""Definition-level brute force, deliberately quadratic and independent of
the vectorized oracles in arlab."""


def factors_at(buf: bytes, n: int) -> list[bytes]:
    return [buf[i:i + n] for i in range(len(buf) - n + 1)]


def nrc(buf: bytes, n: int) -> int:
    fs = factors_at(buf, n)
    best = 0
    for k in range(len(fs)):
        seen = set()
        j = k
        while j < len(fs) and fs[j] not in seen:
            seen.add(fs[j])
            j += 1
        best = max(best, j - k)
    return best


def inrc(buf: bytes, n: int) -> int:
    fs = factors_at(buf, n)
    seen = set()
    for j, f in enumerate(fs):
        if f in seen:
            return j
        seen.add(f)
    return len(fs)


def recurrence(buf: bytes, n: int) -> int:
    """Least m such that every complete length-m window holds all length-n factors."""
    fs = factors_at(buf, n)
    language = set(fs)
    m = n
    while True:
        ok = True
        # only windows whose start precedes the final occurrence of every factor
        last = {f: i for i, f in enumerate(fs)}
        limit = min(last.values())
        for s in range(limit + 1):
            if set(fs[s:s + m - n + 1]) != language:
                ok = False
                break
        if ok:
            return m
        m += 1


def return_words(buf: bytes, w: bytes) -> set[bytes]:
    occ = [i for i in range(len(buf) - len(w) + 1) if buf[i:i + len(w)] == w]
    return {buf[i:j] for i, j in zip(occ, occ[1:])}


def iterate_morphism(images: dict[int, bytes], seed: bytes, length: int) -> bytes:
    w = seed
    while len(w) < length:
        w = b"".join(images[c] for c in w)
    return w[:length]
