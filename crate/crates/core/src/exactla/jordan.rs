use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{kernel, ExactMatrix};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// The nilpotent Jordan matrix `J_p = J_{p1} + ... + J_{pt}` (direct sum),
/// with ones on the superdiagonal inside each block.
pub fn build_jordan(p: &Partition) -> ExactMatrix {
    let n = p.n();
    let mut m = ExactMatrix::zeros(n, n);
    let mut offset = 0;
    for &size in p.parts() {
        for i in 0..size - 1 {
            m.set(offset + i, offset + i + 1, BigRational::one());
        }
        offset += size;
    }
    m
}

/// `superdiagonal[i]` is true when `J_p` has a one at `(i, i + 1)`.
fn superdiagonal(p: &Partition) -> Vec<bool> {
    let mut sup = Vec::with_capacity(p.n());
    for &size in p.parts() {
        sup.extend(std::iter::repeat_n(true, size - 1));
        sup.push(false);
    }
    sup
}

/// Exact test of `A J_p = J_p A`, without forming either product.
pub fn commutes_with_jordan(a: &ExactMatrix, p: &Partition) -> bool {
    let n = p.n();
    if a.rows() != n || a.cols() != n {
        return false;
    }
    let sup = superdiagonal(p);
    let zero = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            let aj = if j > 0 && sup[j - 1] { a.get(i, j - 1) } else { &zero };
            let ja = if sup[i] { a.get(i + 1, j) } else { &zero };
            if aj != ja {
                return false;
            }
        }
    }
    true
}

/// Ranks of `A, A^2, ...` up to the first zero (or until the rank stalls).
pub fn power_ranks(a: &ExactMatrix) -> Result<Vec<usize>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if let Some(small) = a.small_integer_entries() {
        if let Some(r) = kernel::power_ranks(n, &small) {
            return Ok(r);
        }
    }
    Ok(kernel::run(
        &a.integer_entries(),
        |v| kernel::power_ranks(n, &v),
        |v| kernel::power_ranks(n, &v),
    ))
}

fn shape_from_ranks(n: usize, ranks: &[usize]) -> Result<Partition> {
    let last = *ranks.last().unwrap();
    if last > 0 {
        return Err(Error::NotNilpotent {
            power: ranks.len(),
            rank: last,
        });
    }
    // Column lengths of the shape are the successive nullity increments.
    let mut columns = Vec::with_capacity(ranks.len());
    let mut prev = n;
    for &r in ranks {
        columns.push(prev - r);
        prev = r;
    }
    Ok(Partition::from_sorted(columns).conjugate())
}

/// Jordan type of a nilpotent matrix, from the nullities of its powers.
///
/// Nilpotency is verified, not assumed: if the rank sequence stalls at a
/// nonzero value the matrix is rejected with the power where it stalled.
pub fn jordan_type(a: &ExactMatrix) -> Result<Partition> {
    if a.rows() == 0 {
        return Err(Error::Precondition("empty matrix".into()));
    }
    let ranks = power_ranks(a)?;
    shape_from_ranks(a.rows(), &ranks)
}

/// Jordan type of a square integer matrix given row-major.
pub(crate) fn jordan_type_of_integers(n: usize, entries: Vec<i128>) -> Result<Partition> {
    let ranks = match kernel::power_ranks(n, &entries) {
        Some(r) => r,
        None => {
            let big: Vec<num_bigint::BigInt> = entries.into_iter().map(Into::into).collect();
            kernel::power_ranks(n, &big).expect("BigInt kernels never overflow")
        }
    };
    shape_from_ranks(n, &ranks)
}

fn column_matrix(vectors: &[Vec<BigRational>], n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

fn apply(a: &ExactMatrix, v: &[BigRational]) -> Vec<BigRational> {
    (0..a.rows())
        .map(|i| {
            v.iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (j, x)| acc + a.get(i, j) * x)
        })
        .collect()
}

/// A Jordan basis of a nilpotent matrix.
///
/// Returns `(P, shape)` with `P^{-1} A P = J_shape`. Chains are chosen top
/// down: at each height `k` the vectors already forced by longer chains are
/// kept, and new chain tops are taken from `ker A^k` until it is spanned
/// together with `ker A^{k-1}`.
pub fn jordan_basis(a: &ExactMatrix) -> Result<(ExactMatrix, Partition)> {
    let shape = jordan_type(a)?;
    let n = a.rows();
    let height = shape.first();
    let mut powers = vec![ExactMatrix::identity(n)];
    for k in 1..=height {
        powers.push(&powers[k - 1] * a);
    }

    // (top vector, chain length)
    let mut chains: Vec<(Vec<BigRational>, usize)> = Vec::new();
    for k in (1..=height).rev() {
        let lower = powers[k - 1].kernel_basis();
        let mut span: Vec<Vec<BigRational>> = lower.clone();
        for (top, len) in &chains {
            let mut v = top.clone();
            for _ in 0..(len - k) {
                v = apply(a, &v);
            }
            span.push(v);
        }
        let mut rank = column_matrix(&span, n).rank();
        for candidate in powers[k].kernel_basis() {
            span.push(candidate.clone());
            let r = column_matrix(&span, n).rank();
            if r > rank {
                rank = r;
                chains.push((candidate, k));
            } else {
                span.pop();
            }
        }
    }

    let mut columns = Vec::with_capacity(n);
    for (top, len) in &chains {
        let mut chain = vec![top.clone()];
        for _ in 1..*len {
            let next = apply(a, chain.last().unwrap());
            chain.push(next);
        }
        columns.extend(chain.into_iter().rev());
    }
    let p = column_matrix(&columns, n);
    debug_assert_eq!(
        Partition::new(chains.iter().map(|c| c.1).collect()).ok().as_ref(),
        Some(&shape)
    );
    Ok((p, shape))
}
