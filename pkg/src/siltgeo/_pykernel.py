"""Pure-Python fraction-free Gauss-Jordan elimination on integer rows.

This is the reference implementation; ``_ckernel`` mirrors it on 64-bit
integers and raises ``OverflowError`` when an intermediate does not fit.
"""
from math import gcd


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(rows, ncols):
    """Reduce integer ``rows`` to echelon form with cleared pivot columns.

    Each returned row is primitive with a positive pivot entry, and every
    pivot column is zero outside its own row.  Dividing each row by its pivot
    entry therefore gives the reduced row echelon form.

    Returns:
        (rows, pivots): the nonzero reduced rows and their pivot columns.
    """
    work = [list(r) for r in rows if any(r)]
    pivots = []
    rank = 0
    nrows = len(work)
    for col in range(ncols):
        if rank == nrows:
            break
        best = -1
        best_abs = 0
        for i in range(rank, nrows):
            v = work[i][col]
            if v:
                av = -v if v < 0 else v
                if best < 0 or av < best_abs:
                    best, best_abs = i, av
                    if av == 1:
                        break
        if best < 0:
            continue
        work[rank], work[best] = work[best], work[rank]
        prow = work[rank]
        if prow[col] < 0:
            prow = [-x for x in prow]
        prow = _primitive(prow)
        work[rank] = prow
        p = prow[col]
        nz = [j for j in range(col, ncols) if prow[j]]
        for i in range(nrows):
            if i == rank:
                continue
            row = work[i]
            x = row[col]
            if not x:
                continue
            g = gcd(p, x)
            a, b = p // g, x // g
            if a != 1:
                row = [a * v for v in row]
            for j in nz:
                row[j] -= b * prow[j]
            work[i] = _primitive(row)
        pivots.append(col)
        rank += 1
    return work[:rank], pivots
