# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled fraction-free (Bareiss) row echelon over the integers.

Arithmetic stays on arbitrary-precision Python ints; Cython removes the
interpreter overhead of the elimination loops.  Contract matches
degenalg._echelon_py.fraction_free_echelon.
"""


def fraction_free_echelon(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, i, j, piv_row
    cdef int sign = 1
    cdef object prev = 1
    cdef object piv, f, v
    cdef list pivots = []
    cdef list ri, pr
    for col in range(ncols):
        piv_row = -1
        for i in range(rank, nrows):
            ri = <list>rows[i]
            if ri[col] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != rank:
            rows[rank], rows[piv_row] = rows[piv_row], rows[rank]
            sign = -sign
        pr = <list>rows[rank]
        piv = pr[col]
        for i in range(rank + 1, nrows):
            ri = <list>rows[i]
            f = ri[col]
            if f == 0:
                for j in range(col, ncols):
                    v = ri[j]
                    if v != 0:
                        ri[j] = (piv * v) // prev
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
