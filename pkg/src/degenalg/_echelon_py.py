"""Pure-Python fraction-free (Bareiss) row echelon over the integers.

Same contract as the compiled _echelon module; selected at import time by
degenalg.linalg when the extension is unavailable or DEGENALG_PURE=1.
"""


def fraction_free_echelon(rows, ncols):
    """Reduce an integer matrix in place to Bareiss echelon form.

    rows: list of lists of Python ints (mutated).
    Returns (rank, pivots, sign) where pivots lists the pivot column of
    each of the first `rank` rows and sign tracks row swaps.  For a square
    matrix of full rank, sign * rows[rank-1][pivots[-1]] is the determinant.
    """
    nrows = len(rows)
    rank = 0
    sign = 1
    prev = 1
    pivots = []
    for col in range(ncols):
        piv_row = -1
        for i in range(rank, nrows):
            if rows[i][col] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != rank:
            rows[rank], rows[piv_row] = rows[piv_row], rows[rank]
            sign = -sign
        piv = rows[rank][col]
        pr = rows[rank]
        for i in range(rank + 1, nrows):
            ri = rows[i]
            f = ri[col]
            if f == 0:
                for j in range(col, ncols):
                    if ri[j] != 0:
                        ri[j] = (piv * ri[j]) // prev
            else:
                ri[col] = 0
                for j in range(col + 1, ncols):
                    ri[j] = (piv * ri[j] - f * pr[j]) // prev
        prev = piv
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return rank, pivots, sign
