//! Exact rank computation over the rationals.

use num_rational::Rational64;
use num_traits::Zero;

/// Rank of the matrix whose rows are `rows`, each of length `ncols`.
pub fn rank(mut rows: Vec<Vec<Rational64>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= inv;
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col];
            if factor.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(pivot_row) {
                if !p.is_zero() {
                    *x -= factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}
