//! Dense linear algebra over the prime field `Z/pZ`.

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a, p - 2, p)
}

/// Row-reduces in place to reduced echelon form; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + (p - factor) * pv % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<u64>], ncols: usize, p: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols, p).len()
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows.
pub fn nullspace(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[fc] % p) % p;
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for a square or tall `A` given by columns.
pub fn solve_columns(cols: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = cols.len();
    let rows_n = b.len();
    let mut aug: Vec<Vec<u64>> = (0..rows_n)
        .map(|i| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[i]).collect();
            row.push(b[i] % p);
            row
        })
        .collect();
    let pivots = rref(&mut aug, n + 1, p);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![0u64; n];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[n];
    }
    Some(x)
}

/// Canonical reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = vectors.to_vec();
    rref(&mut m, ncols, p);
    m
}

/// True iff `v` lies in the span of an echelon basis from [`span_basis`].
pub fn in_span(basis: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    let mut m = basis.to_vec();
    m.push(v.to_vec());
    rank(&m, v.len(), p) == basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_small_matrix() {
        // x + y + z = 0 over F_3
        let ns = nullspace(&[vec![1, 1, 1]], 3, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(v.iter().sum::<u64>() % 3, 0);
        }
    }

    #[test]
    fn solve_and_span() {
        // [[1,1],[0,1]] x = [1,1] over F_2 -> x = [0,1]
        let cols = vec![vec![1, 0], vec![1, 1]];
        assert_eq!(solve_columns(&cols, &[1, 1], 2), Some(vec![0, 1]));
        let singular = vec![vec![1, 1], vec![1, 1]];
        assert_eq!(solve_columns(&singular, &[1, 0], 2), None);
        let b = span_basis(&[vec![1, 2, 0], vec![2, 4, 0]], 3, 5);
        assert_eq!(b.len(), 1);
        assert!(in_span(&b, &[3, 1, 0], 5));
        assert!(!in_span(&b, &[0, 0, 1], 5));
    }
}
