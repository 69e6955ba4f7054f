//! Dense Gaussian elimination over a [`FieldSpec`].

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};

/// Reduces `rows` in place to reduced row echelon form and returns the pivot columns.
pub fn rref(spec: &FieldSpec, rows: &mut Vec<Vec<Fe>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = spec.inv(rows[r][c]).expect("pivot is nonzero");
        if inv != Fe::ONE {
            for x in rows[r].iter_mut().skip(c) {
                *x = spec.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = spec.neg(row[c]);
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = spec.add(*x, spec.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(spec: &FieldSpec, rows: &[Vec<Fe>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(spec, &mut m, ncols).len()
}

/// Basis of `{c : A c = 0}` for `A` given by rows of length `ncols`.
pub fn kernel(spec: &FieldSpec, rows: &[Vec<Fe>], ncols: usize) -> Vec<Vec<Fe>> {
    let mut m = rows.to_vec();
    let pivots = rref(spec, &mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Fe::ZERO; ncols];
            v[free] = Fe::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = spec.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Determinant of an `n × n` row-major matrix.
pub fn det(spec: &FieldSpec, entries: &[Fe], n: usize) -> Fe {
    let mut m: Vec<Vec<Fe>> = entries.chunks(n).map(<[Fe]>::to_vec).collect();
    let mut d = Fe::ONE;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Fe::ZERO;
        };
        if pr != c {
            m.swap(pr, c);
            d = spec.neg(d);
        }
        d = spec.mul(d, m[c][c]);
        let inv = spec.inv(m[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = spec.neg(spec.mul(m[i][c], inv));
            let (upper, lower) = m.split_at_mut(i);
            for (x, &y) in lower[0][c..].iter_mut().zip(&upper[c][c..]) {
                *x = spec.add(*x, spec.mul(f, y));
            }
        }
    }
    d
}

/// Inverse of an `n × n` row-major matrix.
pub fn inverse(spec: &FieldSpec, entries: &[Fe], n: usize) -> Result<Vec<Fe>> {
    let mut aug: Vec<Vec<Fe>> = entries
        .chunks(n)
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.to_vec();
            r.extend((0..n).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }));
            r
        })
        .collect();
    let pivots = rref(spec, &mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.into_iter().flat_map(|r| r.into_iter().skip(n)).collect())
}
