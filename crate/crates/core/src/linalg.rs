//! Small exact linear algebra over GF(q^2): reduced row echelon form,
//! nullspaces, and 4x4 determinants. Sizes here are tiny (at most 10
//! columns), so everything is straightforward Gaussian elimination.

use crate::field::{Elem, FieldSpec};

/// Reduces `rows` in place to reduced row echelon form and returns the rank.
/// Zero rows sink to the bottom. The result is the canonical RREF, so equal
/// row spaces produce identical matrices.
pub(crate) fn rref(f: &FieldSpec, rows: &mut [Vec<Elem>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let width = rows[0].len();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = f.inv(rows[rank][col]).expect("pivot is nonzero");
        for c in col..width {
            rows[rank][c] = f.mul(rows[rank][c], inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col];
                for c in col..width {
                    let sub = f.mul(factor, rows[rank][c]);
                    rows[r][c] = f.sub(rows[r][c], sub);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Basis of the right nullspace of the matrix, one vector per free column.
/// Vectors are returned in ascending free-column order.
pub(crate) fn nullspace(f: &FieldSpec, matrix: &[Vec<Elem>], width: usize) -> Vec<Vec<Elem>> {
    let mut rows: Vec<Vec<Elem>> = matrix.to_vec();
    let rank = rref(f, &mut rows);
    // Identify pivot columns.
    let mut pivot_col = vec![usize::MAX; rank];
    let mut is_pivot = vec![false; width];
    for r in 0..rank {
        let col = rows[r].iter().position(|c| !c.is_zero()).expect("nonzero row");
        pivot_col[r] = col;
        is_pivot[col] = true;
    }
    let mut basis = Vec::with_capacity(width - rank);
    for free in 0..width {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Elem::ZERO; width];
        v[free] = Elem::ONE;
        for r in 0..rank {
            v[pivot_col[r]] = f.neg(rows[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a 4x4 matrix by Gaussian elimination.
pub(crate) fn det4(f: &FieldSpec, m: &[[Elem; 4]; 4]) -> Elem {
    let mut rows = *m;
    let mut det = Elem::ONE;
    for col in 0..4 {
        let Some(pivot) = (col..4).find(|&r| !rows[r][col].is_zero()) else {
            return Elem::ZERO;
        };
        if pivot != col {
            rows.swap(col, pivot);
            det = f.neg(det);
        }
        det = f.mul(det, rows[col][col]);
        let inv = f.inv(rows[col][col]).expect("pivot is nonzero");
        for r in col + 1..4 {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = f.mul(rows[r][col], inv);
            for c in col..4 {
                let sub = f.mul(factor, rows[col][c]);
                rows[r][c] = f.sub(rows[r][c], sub);
            }
        }
    }
    det
}
