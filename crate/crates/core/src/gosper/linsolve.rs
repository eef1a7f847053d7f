//! Nullspaces of matrices over `Q[n]`.

use super::qn::QnFrac;
use crate::algebra::UPoly;

/// Row echelon form by Bareiss' fraction-free elimination. Every division
/// is exact, so entries stay polynomials and grow only like the minors
/// they are. Returns the pivot columns.
fn bareiss(m: &mut [Vec<UPoly>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut prev = UPoly::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let t = &(&m[r][col] * &m[i][j]) - &(&m[i][col] * &m[r][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            m[i][col] = UPoly::zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of `{ v : m v = 0 }` over `Q(n)`, one vector per non-pivot
/// column with that column set to 1 and the other free columns to 0.
pub(crate) fn nullspace(mut m: Vec<Vec<UPoly>>, cols: usize) -> Vec<(usize, Vec<QnFrac>)> {
    for row in m.iter_mut() {
        row.resize(cols, UPoly::zero());
    }
    let pivots = bareiss(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![QnFrac::zero(); cols];
        v[f] = QnFrac::one();
        for (row, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = QnFrac::zero();
            for j in pc + 1..cols {
                if !v[j].is_zero() && !m[row][j].is_zero() {
                    acc = &acc + &(&QnFrac::from_poly(m[row][j].clone()) * &v[j]);
                }
            }
            v[pc] = &(-&acc) / &QnFrac::from_poly(m[row][pc].clone());
        }
        basis.push((f, v));
    }
    basis
}
