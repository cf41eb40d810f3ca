"""Dense linear algebra over a coefficient field (rows are lists)."""

__all__ = ["row_reduce", "rank", "nullspace", "pivot_minor"]


def row_reduce(rows, field):
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns, row_origin).

    ``row_origin[i]`` is the index of the input row whose pivot ended in row i.
    """
    p = field.p
    A = [[field(c) for c in r] for r in rows]
    m = len(A)
    n = len(A[0]) if A else 0
    origin = list(range(m))
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        origin[r], origin[piv] = origin[piv], origin[r]
        inv = field.inv(A[r][c])
        A[r] = [(a * inv) % p if p else a * inv for a in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                if p:
                    A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
                else:
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots, origin[:r]


def rank(rows, field):
    if not rows:
        return 0
    return len(row_reduce(rows, field)[1])


def nullspace(rows, ncols, field):
    """Basis of {v : rows * v = 0} as a list of vectors of length ncols."""
    if not rows:
        return [[field(1) if i == j else field(0) for i in range(ncols)] for j in range(ncols)]
    R, piv, _ = row_reduce(rows, field)
    p = field.p
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field(0)] * ncols
        v[f] = field(1)
        for row, c in zip(R, piv):
            v[c] = (-row[f]) % p if p else -row[f]
        basis.append(v)
    return basis


def pivot_minor(rows, field):
    """Row and column indices of a maximal nonsingular submatrix."""
    _, piv, origin = row_reduce(rows, field)
    return sorted(origin), piv
