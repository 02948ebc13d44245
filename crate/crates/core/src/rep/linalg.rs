//! Exact linear algebra over a [`Field`]: row reduction, kernels and affine
//! solution sets.

use crate::coeff::Field;

/// Row echelon form of `rows` (each of length `ncols`) with every pivot
/// scaled to 1. Returns the pivot columns.
///
/// Pivots are chosen among the candidate rows with the fewest nonzero
/// entries, and updates skip zero entries, so sparse operator matrices stay
/// sparse.
pub fn echelon<F: Field>(rows: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let weight = |row: &Vec<F>| row[col..ncols].iter().filter(|x| !x.is_zero()).count();
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| weight(&rows[i]))
        else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].checked_inv().expect("pivot is nonzero");
        let support: Vec<usize> = (col..ncols).filter(|&j| !rows[r][j].is_zero()).collect();
        for &j in &support {
            rows[r][j] = rows[r][j].clone() * &inv;
        }
        for i in (r + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for &j in &support {
                let v = rows[i][j].clone() - &(factor.clone() * &rows[r][j]);
                rows[i][j] = v;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Row echelon form by fraction-free (Bareiss) updates; pivots are not
/// normalised. Returns the pivot columns.
pub fn echelon_fraction_free<F: Field>(rows: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = F::one();
    let mut r = 0;
    for col in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in (r + 1)..rows.len() {
            let factor = rows[i][col].clone();
            for j in col..ncols {
                let v = pivot.clone() * &rows[i][j] - &(factor.clone() * &rows[r][j]);
                rows[i][j] = v.checked_div(&prev).expect("previous pivot is nonzero");
            }
        }
        prev = pivot;
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of `{ x : A x = 0 }` for `A` given by rows.
pub fn nullspace<F: Field>(a: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut rows = a.to_vec();
    let pivots = echelon(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); ncols];
            x[f] = F::one();
            back_substitute(&rows, &pivots, &mut x, None);
            x
        })
        .collect()
}

/// Solves `A x = b`: a particular solution (free variables zero) and a
/// kernel basis, or `None` when the system is inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F], ncols: usize) -> Option<(Vec<F>, Vec<Vec<F>>)> {
    assert_eq!(a.len(), b.len());
    let mut rows: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut rows, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    let rhs: Vec<F> = rows.iter().map(|r| r[ncols].clone()).collect();
    back_substitute(&rows, &pivots, &mut x, Some(&rhs));
    Some((x, nullspace(a, ncols)))
}

fn back_substitute<F: Field>(rows: &[Vec<F>], pivots: &[usize], x: &mut [F], rhs: Option<&[F]>) {
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = match rhs {
            Some(b) => b[r].clone(),
            None => F::zero(),
        };
        for j in (pc + 1)..x.len() {
            if !x[j].is_zero() && !rows[r][j].is_zero() {
                acc = acc - &(rows[r][j].clone() * &x[j]);
            }
        }
        x[pc] = acc.checked_div(&rows[r][pc]).expect("pivot is nonzero");
    }
}

/// Rank of a matrix.
pub fn rank<F: Field>(a: &[Vec<F>], ncols: usize) -> usize {
    let mut rows = a.to_vec();
    echelon(&mut rows, ncols).len()
}
