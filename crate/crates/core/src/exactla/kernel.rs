//! Integer elimination kernels shared by the exact rank routines.
//!
//! Every kernel is generic over [`Exact`], which is implemented for `i128`
//! with checked arithmetic and for `BigInt`. A kernel returns `None` as soon
//! as any `i128` operation overflows; the caller then reruns it on `BigInt`.
//! Results are therefore exact in either case.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

pub(crate) trait Exact: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    /// Division known to be exact; panics on a nonzero remainder.
    fn div_exact(&self, other: &Self) -> Self;
    /// Nonnegative gcd, `None` when it does not fit.
    fn gcd(&self, other: &Self) -> Option<Self>;
    fn is_one(&self) -> bool;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        assert!(self % other == 0, "inexact division in integer kernel");
        self / other
    }
    fn gcd(&self, other: &Self) -> Option<Self> {
        let (mut a, mut b) = (self.unsigned_abs(), other.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        i128::try_from(a).ok()
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(Zero::is_zero(&r), "inexact division in integer kernel");
        q
    }
    fn gcd(&self, other: &Self) -> Option<Self> {
        Some(Integer::gcd(self, other))
    }
    fn is_one(&self) -> bool {
        self == &BigInt::from(1)
    }
}

/// Narrows big integers to `i128` when every entry fits.
pub(crate) fn narrow(values: &[BigInt]) -> Option<Vec<i128>> {
    values.iter().map(|v| v.to_i128()).collect()
}

/// Rank of a row-major `rows x cols` integer matrix by fraction-free
/// (Bareiss) elimination with column skipping.
pub(crate) fn bareiss_rank<T: Exact>(rows: usize, cols: usize, mut a: Vec<T>) -> Option<usize> {
    let mut prev: Option<T> = None;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let pivot = a[r * cols + c].clone();
        for i in (r + 1)..rows {
            let factor = a[i * cols + c].clone();
            for j in (c + 1)..cols {
                let lhs = pivot.mul(&a[i * cols + j])?;
                let rhs = factor.mul(&a[r * cols + j])?;
                let mut v = lhs.sub(&rhs)?;
                if let Some(d) = &prev {
                    v = v.div_exact(d);
                }
                a[i * cols + j] = v;
            }
            a[i * cols + c] = T::zero();
        }
        prev = Some(pivot);
        r += 1;
    }
    Some(r)
}

/// A subspace of `Q^n` spanned by primitive integer vectors in echelon form.
struct Echelon<T> {
    /// `(pivot, vector)` sorted by pivot; `vector[..pivot]` is zero.
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Exact> Echelon<T> {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    fn insert(&mut self, mut v: Vec<T>) -> Option<bool> {
        for (p, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let (bp, vp) = (b[*p].clone(), v[*p].clone());
            for k in 0..v.len() {
                if k < *p {
                    if !v[k].is_zero() {
                        v[k] = bp.mul(&v[k])?;
                    }
                    continue;
                }
                let lhs = bp.mul(&v[k])?;
                let rhs = vp.mul(&b[k])?;
                v[k] = lhs.sub(&rhs)?;
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return Some(false);
        };
        let mut g = T::zero();
        for x in &v[pivot..] {
            g = g.gcd(x)?;
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() {
            for x in &mut v[pivot..] {
                *x = x.div_exact(&g);
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        Some(true)
    }
}

fn apply<T: Exact>(n: usize, a: &[T], v: &[T]) -> Option<Vec<T>> {
    let mut out = vec![T::zero(); n];
    for i in 0..n {
        let mut acc = T::zero();
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let e = &a[i * n + j];
            if e.is_zero() {
                continue;
            }
            acc = acc.add(&e.mul(x)?)?;
        }
        out[i] = acc;
    }
    Some(out)
}

/// Ranks of `A, A^2, A^3, ...` for a square integer matrix.
///
/// Each image `A^k(Q^n)` is kept as a reduced echelon basis and mapped once
/// more by `A`, so coefficient growth stays bounded by the reduction rather
/// than compounding across powers. The sequence stops at the first zero rank
/// or as soon as two consecutive ranks agree (the image has stabilized).
pub(crate) fn power_ranks<T: Exact>(n: usize, a: &[T]) -> Option<Vec<usize>> {
    let mut image = Echelon::new();
    for j in 0..n {
        let col: Vec<T> = (0..n).map(|i| a[i * n + j].clone()).collect();
        image.insert(col)?;
    }
    let mut ranks = vec![image.dim()];
    while *ranks.last().unwrap() > 0 {
        let mut next = Echelon::new();
        for (_, v) in &image.rows {
            next.insert(apply(n, a, v)?)?;
        }
        let r = next.dim();
        let stalled = r == *ranks.last().unwrap();
        ranks.push(r);
        if stalled {
            break;
        }
        image = next;
    }
    Some(ranks)
}

/// Integer kernel runner: tries `i128` first, falls back to `BigInt`.
pub(crate) fn run<R>(
    values: &[BigInt],
    small: impl FnOnce(Vec<i128>) -> Option<R>,
    big: impl FnOnce(Vec<BigInt>) -> Option<R>,
) -> R {
    if let Some(v) = narrow(values) {
        if let Some(r) = small(v) {
            return r;
        }
    }
    big(values.to_vec()).expect("BigInt kernels never overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_small_examples() {
        assert_eq!(bareiss_rank::<i128>(2, 2, vec![1, 2, 2, 4]), Some(1));
        assert_eq!(bareiss_rank::<i128>(2, 3, vec![0, 1, 2, 0, 2, 5]), Some(2));
        assert_eq!(bareiss_rank::<i128>(3, 3, vec![0; 9]), Some(0));
    }

    #[test]
    fn overflow_is_detected_and_big_path_agrees() {
        let big = i128::MAX / 2;
        let a = vec![big, 3, 5, big];
        assert_eq!(bareiss_rank::<i128>(2, 2, a.clone()), None);
        let as_big: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(bareiss_rank(2, 2, as_big), Some(2));
    }

    #[test]
    fn power_ranks_of_a_jordan_block() {
        let n = 5;
        let mut a = vec![0i128; n * n];
        for i in 0..n - 1 {
            a[i * n + i + 1] = 1;
        }
        assert_eq!(power_ranks(n, &a), Some(vec![4, 3, 2, 1, 0]));
    }

    #[test]
    fn reduction_scales_the_whole_vector() {
        // A pivot of -1 below a leading entry used to flip only the tail.
        let a: Vec<i128> = vec![
            0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, -3, 0, 0, -1, -1, 0, -1,
            -3, 0, 0, -1, 0, 0, -1, 0, 0, 0,
        ];
        assert_eq!(power_ranks(6, &a), Some(vec![3, 1, 0]));
        assert_eq!(bareiss_rank(6, 6, a), Some(3));
    }

    #[test]
    fn power_ranks_stop_on_stabilization() {
        // diag(1, 0) plus a nilpotent corner never vanishes.
        let a = vec![1i128, 0, 0, 0];
        assert_eq!(power_ranks(2, &a), Some(vec![1, 1]));
    }
}
