//! Upper-triangular Toeplitz blocks, the shape of every block of a matrix
//! commuting with a nilpotent Jordan matrix.
//!
//! A `p x r` block is constant along diagonals and aligned with the top-right
//! corner: entry `(i, j)` depends only on `j - i` and vanishes when
//! `j - i < max(0, r - p)`. For square and tall blocks this is the usual
//! "zero below the main diagonal"; wide blocks have the form `[0 T]`.

use super::ExactMatrix;
use crate::error::{Error, Result};

pub fn is_ut_toeplitz(m: &ExactMatrix) -> bool {
    let (p, r) = (m.rows(), m.cols());
    let shift = r.saturating_sub(p) as isize;
    for i in 0..p {
        for j in 0..r {
            let d = j as isize - i as isize;
            let e = m.get(i, j);
            if d < shift {
                if !num_traits::Zero::is_zero(e) {
                    return false;
                }
            } else if i > 0 && j > 0 && e != m.get(i - 1, j - 1) {
                return false;
            }
        }
    }
    true
}

/// Checks `rk(CD) = max(rk C + rk D - r, 0)` for Toeplitz blocks `C: p x r`, `D: r x q`.
pub fn toeplitz_product_rank_check(c: &ExactMatrix, d: &ExactMatrix) -> Result<bool> {
    if c.cols() != d.rows() {
        return Err(Error::Shape(format!(
            "{}x{} times {}x{}",
            c.rows(),
            c.cols(),
            d.rows(),
            d.cols()
        )));
    }
    if !is_ut_toeplitz(c) || !is_ut_toeplitz(d) {
        return Err(Error::NotToeplitz);
    }
    let r = c.cols() as isize;
    let product = c.checked_mul(d)?.rank() as isize;
    let predicted = (c.rank() as isize + d.rank() as isize - r).max(0);
    Ok(product == predicted)
}
