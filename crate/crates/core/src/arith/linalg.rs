//! Exact Gaussian elimination over a [`Field`].

use super::field::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(rows: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].fis_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::fone().fdiv(&rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = v.fmul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].fis_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.fis_zero() {
                    *v = v.fsub(&factor.fmul(pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace `{v : rows * v = 0}`, one vector per free
/// column in ascending column order, each with a 1 at its free column.
pub fn nullspace<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let pivots = rref(&mut rows, ncols);
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    let free: Vec<usize> = (0..ncols)
        .filter(|c| {
            if pivot_iter.peek() == Some(&c) {
                pivot_iter.next();
                false
            } else {
                true
            }
        })
        .collect();
    for &f in &free {
        let mut v = vec![F::fzero(); ncols];
        v[f] = F::fone();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = rows[row][f].fneg();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::int;

    #[test]
    fn nullspace_of_rank_deficient() {
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
        ];
        let basis = nullspace(m.clone(), 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &m {
                let dot = row.iter().zip(v).fold(int(0), |a, (x, y)| a + x * y);
                assert_eq!(dot, int(0));
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let m = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert!(nullspace(m, 2).is_empty());
    }
}
