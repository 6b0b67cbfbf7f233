//! Exact dense linear algebra over any [`FieldElem`] domain.
//!
//! Plain Gaussian elimination with exact pivots; matrices at desk scale
//! (principality tests are at most a few hundred rows).

use super::field::FieldElem;

/// Reduce `rows` in place to row echelon form; returns pivot column indices.
pub fn row_echelon<K: FieldElem>(rows: &mut [Vec<K>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for j in c..ncols {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let t = rows[r][j].mul(&f);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

/// One nonzero kernel vector of the matrix (rows of equal length), or `None`
/// when the columns are independent.
pub fn kernel_vector<K: FieldElem>(rows: &[Vec<K>], zero: &K) -> Option<Vec<K>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    if ncols == 0 {
        return None;
    }
    let mut work: Vec<Vec<K>> = rows.to_vec();
    let pivots = row_echelon(&mut work);
    if pivots.len() == ncols {
        return None;
    }
    let free = (0..ncols).find(|c| !pivots.contains(c)).unwrap();
    let one = zero.one_like();
    let mut v = vec![zero.zero_like(); ncols];
    v[free] = one;
    for (i, &pc) in pivots.iter().enumerate() {
        if pc < free {
            v[pc] = work[i][free].neg();
        }
    }
    Some(v)
}

/// Solve `A x = b` exactly; `None` when inconsistent. Free variables are set
/// to zero.
pub fn solve<K: FieldElem>(a: &[Vec<K>], b: &[K], zero: &K) -> Option<Vec<K>> {
    let nrows = a.len();
    assert_eq!(nrows, b.len());
    let ncols = a.first().map_or(0, |r| r.len());
    let mut work: Vec<Vec<K>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_echelon(&mut work);
    // Inconsistent iff a pivot lands in the augmented column.
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![zero.zero_like(); ncols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = work[i][ncols].clone();
    }
    Some(x)
}

/// Determinant of a square matrix.
pub fn determinant<K: FieldElem>(m: &[Vec<K>], zero: &K) -> K {
    let n = m.len();
    if n == 0 {
        return zero.one_like();
    }
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut work: Vec<Vec<K>> = m.to_vec();
    let mut det = zero.one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return zero.zero_like();
        };
        if p != c {
            work.swap(c, p);
            det = det.neg();
        }
        det = det.mul(&work[c][c]);
        let inv = work[c][c].inv();
        for i in c + 1..n {
            if work[i][c].is_zero() {
                continue;
            }
            let f = work[i][c].mul(&inv);
            for j in c..n {
                let t = work[c][j].mul(&f);
                work[i][j] = work[i][j].sub(&t);
            }
        }
    }
    det
}
