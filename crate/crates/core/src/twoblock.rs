//! The centralizer of a two-block Jordan matrix `J_(λ1, λ2)` in the basis
//! `M_i, K_k, L_l, N_i`, and the explicit nilpotent constructions built on it.
//!
//! With `n = λ1 + λ2` and zero-based indices:
//! - `M_i` is `J_{λ1}^i ⊕ 0` and `N_i` is `0 ⊕ J_{λ2}^i`;
//! - `K_k` has ones at `(r, λ1 + k + r)` for `r < λ2 - k` (top of block 12);
//! - `L_l` has ones at `(λ1 + r, λ1 - λ2 + l + r)` for `r < λ2 - l` (right of block 21).

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{build_jordan, commutes_with_jordan, jordan_basis, jordan_type, rat, ExactMatrix};
use crate::partitions::{almost_rect, Partition};

const EQ2_RETRIES: usize = 32;
const EQ2_BOUND: i64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    M,
    K,
    L,
    N,
}

impl Basis {
    fn letter(self) -> char {
        match self {
            Basis::M => 'M',
            Basis::K => 'K',
            Basis::L => 'L',
            Basis::N => 'N',
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TwoBlockElement {
    l1: usize,
    l2: usize,
    a: Vec<BigRational>,
    b: Vec<BigRational>,
    c: Vec<BigRational>,
    d: Vec<BigRational>,
}

fn leading(v: &[BigRational]) -> usize {
    v.iter().position(|x| !x.is_zero()).unwrap_or(v.len())
}

impl TwoBlockElement {
    pub fn zero(l1: usize, l2: usize) -> Result<Self> {
        if l2 == 0 || l1 < l2 {
            return Err(Error::Precondition(format!(
                "two-block shape needs λ1 >= λ2 >= 1, got ({l1},{l2})"
            )));
        }
        Ok(TwoBlockElement {
            l1,
            l2,
            a: vec![BigRational::zero(); l1],
            b: vec![BigRational::zero(); l2],
            c: vec![BigRational::zero(); l2],
            d: vec![BigRational::zero(); l2],
        })
    }

    /// A single basis matrix, e.g. `basis(5, 3, Basis::K, 0)` for `K_0`.
    pub fn basis(l1: usize, l2: usize, which: Basis, index: usize) -> Result<Self> {
        let mut x = Self::zero(l1, l2)?;
        x.set(which, index, BigRational::one())?;
        Ok(x)
    }

    pub fn lambda1(&self) -> usize {
        self.l1
    }

    pub fn lambda2(&self) -> usize {
        self.l2
    }

    pub fn n(&self) -> usize {
        self.l1 + self.l2
    }

    pub fn shape(&self) -> Partition {
        Partition::from_sorted(vec![self.l1, self.l2])
    }

    pub fn coefficients(&self, which: Basis) -> &[BigRational] {
        match which {
            Basis::M => &self.a,
            Basis::K => &self.b,
            Basis::L => &self.c,
            Basis::N => &self.d,
        }
    }

    fn coefficients_mut(&mut self, which: Basis) -> &mut Vec<BigRational> {
        match which {
            Basis::M => &mut self.a,
            Basis::K => &mut self.b,
            Basis::L => &mut self.c,
            Basis::N => &mut self.d,
        }
    }

    pub fn set(&mut self, which: Basis, index: usize, value: BigRational) -> Result<()> {
        let v = self.coefficients_mut(which);
        let len = v.len();
        let slot = v.get_mut(index).ok_or_else(|| {
            Error::Precondition(format!(
                "{}[{index}] out of range (length {len})",
                which.letter()
            ))
        })?;
        *slot = value;
        Ok(())
    }

    /// Adds `value` at `index`; indices past the end are dropped (they vanish).
    fn add_at(&mut self, which: Basis, index: usize, value: BigRational) {
        if let Some(slot) = self.coefficients_mut(which).get_mut(index) {
            *slot += value;
        }
    }

    /// Leading indices `(α, β, γ, δ)`, with `λ1` resp. `λ2` for an absent series.
    pub fn leading_indices(&self) -> (usize, usize, usize, usize) {
        (
            leading(&self.a),
            leading(&self.b),
            leading(&self.c),
            leading(&self.d),
        )
    }

    /// `a_0 = d_0 = 0`, and `b_0 c_0 = 0` when the blocks have equal size.
    pub fn is_nilpotent_form(&self) -> bool {
        self.a[0].is_zero()
            && self.d[0].is_zero()
            && (self.l1 != self.l2 || self.b[0].is_zero() || self.c[0].is_zero())
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let (l1, l2) = (self.l1, self.l2);
        let mut m = ExactMatrix::zeros(l1 + l2, l1 + l2);
        let mut put = |r: usize, c: usize, v: &BigRational| {
            let cur = m.get(r, c).clone();
            m.set(r, c, cur + v);
        };
        for (i, v) in self.a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for r in 0..l1 - i {
                put(r, r + i, v);
            }
        }
        for (i, v) in self.d.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for r in 0..l2 - i {
                put(l1 + r, l1 + r + i, v);
            }
        }
        for (k, v) in self.b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for r in 0..l2 - k {
                put(r, l1 + k + r, v);
            }
        }
        for (l, v) in self.c.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for r in 0..l2 - l {
                put(l1 + r, l1 - l2 + l + r, v);
            }
        }
        m
    }

    /// Upper bound `max(n - α - δ, 2λ2 - β - γ)` on the rank.
    pub fn rank_bound(&self) -> usize {
        let (alpha, beta, gamma, delta) = self.leading_indices();
        let first = self.n() - alpha - delta;
        let second = (2 * self.l2).saturating_sub(beta + gamma);
        first.max(second)
    }

    pub fn mul(&self, other: &TwoBlockElement) -> Result<TwoBlockElement> {
        if (self.l1, self.l2) != (other.l1, other.l2) {
            return Err(Error::Shape(format!(
                "two-block elements of shapes ({},{}) and ({},{})",
                self.l1, self.l2, other.l1, other.l2
            )));
        }
        let shift = self.l1 - self.l2;
        let mut out = TwoBlockElement::zero(self.l1, self.l2)?;
        let pairs = [
            (Basis::M, Basis::M, Basis::M, 0),
            (Basis::M, Basis::K, Basis::K, 0),
            (Basis::K, Basis::L, Basis::M, shift),
            (Basis::K, Basis::N, Basis::K, 0),
            (Basis::L, Basis::M, Basis::L, 0),
            (Basis::L, Basis::K, Basis::N, shift),
            (Basis::N, Basis::L, Basis::L, 0),
            (Basis::N, Basis::N, Basis::N, 0),
        ];
        for (left, right, target, offset) in pairs {
            for (i, x) in self.coefficients(left).iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in other.coefficients(right).iter().enumerate() {
                    if !y.is_zero() {
                        out.add_at(target, offset + i + j, x * y);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Parses whitespace-separated tokens `M[i]=q`, `K[i]=q`, `L[i]=q`, `N[i]=q`.
    pub fn parse_tokens<'a>(
        l1: usize,
        l2: usize,
        tokens: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let mut x = Self::zero(l1, l2)?;
        for token in tokens {
            let bad = || Error::ElementSyntax(token.to_string());
            let (lhs, value) = token.split_once('=').ok_or_else(bad)?;
            let which = match lhs.chars().next() {
                Some('M') => Basis::M,
                Some('K') => Basis::K,
                Some('L') => Basis::L,
                Some('N') => Basis::N,
                _ => return Err(bad()),
            };
            let index = lhs[1..]
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(bad)?;
            let value = BigRational::from_str(value.trim()).map_err(|_| bad())?;
            x.set(which, index, value).map_err(|_| bad())?;
        }
        Ok(x)
    }
}

impl fmt::Display for TwoBlockElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for which in [Basis::M, Basis::K, Basis::L, Basis::N] {
            for (i, v) in self.coefficients(which).iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{}[{i}]={v}", which.letter())?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TwoBlockElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}): {self}", self.l1, self.l2)
    }
}

/// A random element in nilpotent form: every coefficient is zero with
/// probability `zero_prob`, otherwise uniform in `[-bound, bound]`.
pub fn random_nilpotent_form(
    l1: usize,
    l2: usize,
    rng: &mut impl Rng,
    bound: i64,
    zero_prob: f64,
) -> Result<TwoBlockElement> {
    let mut x = TwoBlockElement::zero(l1, l2)?;
    for which in [Basis::M, Basis::K, Basis::L, Basis::N] {
        let start = usize::from(matches!(which, Basis::M | Basis::N));
        for i in start..x.coefficients(which).len() {
            if rng.gen_bool(zero_prob) {
                continue;
            }
            x.set(which, i, rat(rng.gen_range(-bound..=bound)))?;
        }
    }
    if l1 == l2 && !x.b[0].is_zero() && !x.c[0].is_zero() {
        let which = if rng.gen_bool(0.5) { Basis::K } else { Basis::L };
        x.set(which, 0, BigRational::zero())?;
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntidiagonalCase {
    A,
    B,
    C,
}

impl fmt::Display for AntidiagonalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AntidiagonalCase::A => "a",
            AntidiagonalCase::B => "b",
            AntidiagonalCase::C => "c",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Antidiagonal {
    pub element: TwoBlockElement,
    pub predicted: Partition,
    pub case: AntidiagonalCase,
    pub w: usize,
}

fn runs(runs: &[(usize, usize)]) -> Partition {
    let parts = runs
        .iter()
        .filter(|(value, _)| *value > 0)
        .flat_map(|&(value, count)| std::iter::repeat_n(value, count))
        .collect();
    Partition::from_sorted(parts)
}

fn check_antidiagonal(l1: usize, l2: usize, j: usize, l: usize) -> Result<()> {
    if l2 == 0 || l1 < l2 || j > l || l >= l2 {
        return Err(Error::Precondition(format!(
            "antidiagonal needs λ1 >= λ2 >= 1 and 0 <= j <= l < λ2, got ({l1},{l2}), j={j}, l={l}"
        )));
    }
    if l1 == l2 && j + l == 0 {
        return Err(Error::Precondition(
            "equal blocks with j = l = 0 leave the nilpotent form".into(),
        ));
    }
    Ok(())
}

/// Predicted Jordan type of `b K_j + c L_l` (both coefficients nonzero).
pub fn antidiagonal_prediction(
    l1: usize,
    l2: usize,
    j: usize,
    l: usize,
) -> Result<(Partition, AntidiagonalCase, usize)> {
    check_antidiagonal(l1, l2, j, l)?;
    let w = l1 - l2 + j + l;
    let n = l1 + l2;
    for k in 1..=n {
        let kw = k * w;
        if l2 <= kw && kw < l1 {
            let shape = runs(&[
                (2 * k + 1, l1 - kw),
                (2 * k, w + l2 - l1),
                (2 * k - 1, kw - l2),
            ]);
            return Ok((shape, AntidiagonalCase::A, w));
        }
        if l2 - l <= kw && kw < l2 - j {
            let shape = runs(&[
                (2 * k + 2, l2 - kw - j),
                (2 * k + 1, w + j - l),
                (2 * k, kw + l - l2),
            ]);
            return Ok((shape, AntidiagonalCase::B, w));
        }
        if kw >= l1 {
            break;
        }
    }
    Ok((almost_rect(n, w)?, AntidiagonalCase::C, w))
}

pub fn antidiagonal(
    l1: usize,
    l2: usize,
    j: usize,
    l: usize,
    bcoef: BigRational,
    ccoef: BigRational,
) -> Result<Antidiagonal> {
    if bcoef.is_zero() || ccoef.is_zero() {
        return Err(Error::Precondition("antidiagonal coefficients must be nonzero".into()));
    }
    let (predicted, case, w) = antidiagonal_prediction(l1, l2, j, l)?;
    let mut element = TwoBlockElement::zero(l1, l2)?;
    element.set(Basis::K, j, bcoef)?;
    element.set(Basis::L, l, ccoef)?;
    Ok(Antidiagonal {
        element,
        predicted,
        case,
        w,
    })
}

/// Predicted ranks of the blocks `(11, 12, 21, 22)` of `A^m` for
/// `A = b K_j + c L_l`, `m >= 1`.
pub fn antidiagonal_block_ranks(l1: usize, l2: usize, j: usize, l: usize, m: usize) -> [usize; 4] {
    let w = l1 - l2 + j + l;
    let cut = |base: usize, sub: usize| base.saturating_sub(sub);
    if m.is_multiple_of(2) {
        let mw = (m / 2) * w;
        [cut(l1, mw), 0, 0, cut(l2, mw)]
    } else {
        let mw = m.div_ceil(2) * w;
        [0, cut(l1 + l, mw), cut(l1 + j, mw), 0]
    }
}

/// A square-zero matrix of rank `a` commuting with `J_(λ1, λ2)`.
pub fn lemma_odd(l1: usize, l2: usize, a: usize) -> Result<ExactMatrix> {
    if l2 == 0 || l1 < l2 {
        return Err(Error::Precondition(format!(
            "two-block shape needs λ1 >= λ2 >= 1, got ({l1},{l2})"
        )));
    }
    let n = l1 + l2;
    if a > n / 2 {
        return Err(Error::Precondition(format!("rank {a} exceeds {}", n / 2)));
    }
    if a <= l1 / 2 + l2 / 2 {
        let a1 = a.min(l1 / 2);
        let a2 = a - a1;
        let j1 = build_jordan(&Partition::row(l1)).pow(l1 - a1)?;
        let j2 = build_jordan(&Partition::row(l2)).pow(l2 - a2)?;
        return Ok(j1.direct_sum(&j2));
    }
    // Only left: both parts odd and a = n / 2.
    if l1 == l2 {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..l1 {
            m.set(i, l1 + i, BigRational::one());
        }
        return Ok(m);
    }
    let (k1, k2) = (l1 / 2, l2 / 2);
    let mut x = TwoBlockElement::zero(l1, l2)?;
    x.set(Basis::M, k1, rat(1))?;
    x.set(Basis::K, k2, rat(1))?;
    x.set(Basis::L, k2, rat(-1))?;
    if k2 + 1 < l2 {
        x.set(Basis::N, k2 + 1, rat(1))?;
    }
    Ok(x.to_matrix())
}

/// A square-zero matrix of rank `a` commuting with `J_mu`.
///
/// Consecutive odd parts are paired and each pair is handled by
/// [`lemma_odd`]; even parts and a leftover odd part use powers of a single
/// block. Rank is handed out greedily up to each unit's capacity.
pub fn squarezero_partner(mu: &Partition, a: usize) -> Result<ExactMatrix> {
    let n = mu.n();
    if a > n / 2 {
        return Err(Error::Precondition(format!("rank {a} exceeds {}", n / 2)));
    }
    let parts = mu.parts();
    let mut units: Vec<Vec<usize>> = Vec::new();
    let mut pending_odd: Option<usize> = None;
    for (i, &p) in parts.iter().enumerate() {
        if p % 2 == 0 {
            units.push(vec![i]);
        } else if let Some(prev) = pending_odd.take() {
            units.push(vec![prev, i]);
        } else {
            pending_odd = Some(i);
        }
    }
    if let Some(i) = pending_odd {
        units.push(vec![i]);
    }

    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for &p in parts {
        offsets.push(acc);
        acc += p;
    }
    let mut out = ExactMatrix::zeros(n, n);
    let mut remaining = a;
    for unit in units {
        let size: usize = unit.iter().map(|&i| parts[i]).sum();
        let share = remaining.min(size / 2);
        remaining -= share;
        let (block, indices): (ExactMatrix, Vec<usize>) = match unit[..] {
            [i] => (
                build_jordan(&Partition::row(parts[i])).pow(parts[i] - share)?,
                (offsets[i]..offsets[i] + parts[i]).collect(),
            ),
            [i, k] => (
                lemma_odd(parts[i], parts[k], share)?,
                (offsets[i]..offsets[i] + parts[i])
                    .chain(offsets[k]..offsets[k] + parts[k])
                    .collect(),
            ),
            _ => unreachable!("units hold one or two parts"),
        };
        out.scatter(&indices, &indices, &block);
    }
    debug_assert_eq!(remaining, 0);
    Ok(out)
}

/// Square-zero matrices of rank `k` commuting with `J_lambda` and `J_mu`.
pub fn common_squarezero_witness(
    lambda: &Partition,
    mu: &Partition,
    k: usize,
) -> Result<(ExactMatrix, ExactMatrix)> {
    if lambda.n() != mu.n() {
        return Err(Error::SizeMismatch(lambda.n(), mu.n()));
    }
    Ok((squarezero_partner(lambda, k)?, squarezero_partner(mu, k)?))
}

/// A random element of `{Σ a_i M_i + Σ b_i K_i + Σ d_i N_i}` for `J_(lam, lam)`
/// with `a_1 b_0 d_1 != 0`, redrawn until its Jordan type is `(lam+1, lam-1)`.
pub fn lemma_eq2_element(lam: usize, seed: u64) -> Result<TwoBlockElement> {
    if lam < 2 {
        return Err(Error::Precondition(format!("lemma_eq2 needs lam >= 2, got {lam}")));
    }
    let target = Partition::from_sorted(vec![lam + 1, lam - 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |nonzero: bool| loop {
        let v = rng.gen_range(-EQ2_BOUND..=EQ2_BOUND);
        if v != 0 || !nonzero {
            return rat(v);
        }
    };
    for _ in 0..EQ2_RETRIES {
        let mut x = TwoBlockElement::zero(lam, lam)?;
        for i in 1..lam {
            x.set(Basis::M, i, draw(i == 1))?;
            x.set(Basis::N, i, draw(i == 1))?;
        }
        for i in 0..lam {
            x.set(Basis::K, i, draw(i == 0))?;
        }
        if jordan_type(&x.to_matrix())? == target {
            return Ok(x);
        }
    }
    Err(Error::RetriesExhausted {
        attempts: EQ2_RETRIES,
        seed,
    })
}

pub fn lemma_eq2(lam: usize, seed: u64) -> Result<ExactMatrix> {
    lemma_eq2_element(lam, seed).map(|x| x.to_matrix())
}

#[derive(Debug, Clone)]
pub struct MaxRankPartner {
    pub shape: Partition,
    pub witness: ExactMatrix,
}

/// Jordan types of maximal rank among nilpotents commuting with `J_(λ1, λ2)`,
/// each with a verified witness.
pub fn maxrank_partners(l1: usize, l2: usize) -> Result<Vec<MaxRankPartner>> {
    if l2 == 0 || l1 < l2 {
        return Err(Error::Precondition(format!(
            "two-block shape needs λ1 >= λ2 >= 1, got ({l1},{l2})"
        )));
    }
    let n = l1 + l2;
    let lambda = Partition::from_sorted(vec![l1, l2]);
    let j = build_jordan(&lambda);
    let mut out = Vec::new();
    match l1 - l2 {
        0 | 1 => {
            let mut x = TwoBlockElement::basis(l1, l2, Basis::K, 0)?;
            if l1 == l2 + 1 {
                x.set(Basis::L, 0, rat(1))?;
            } else if l2 >= 2 {
                x.set(Basis::L, 1, rat(1))?;
            }
            out.push(MaxRankPartner {
                shape: Partition::row(n),
                witness: x.to_matrix(),
            });
        }
        2 => {
            out.push(MaxRankPartner {
                shape: lambda.clone(),
                witness: j.clone(),
            });
            // A nilpotent C commuting with J_(m,m) of type λ; conjugating
            // J_(m,m) by a Jordan basis of C gives a partner of type (m,m).
            let m = l1 - 1;
            let c = lemma_eq2(m, 0)?;
            let (p, _) = jordan_basis(&c)?;
            let inv = p
                .inverse()
                .ok_or_else(|| Error::Verification("singular Jordan basis".into()))?;
            let witness = &(&inv * &build_jordan(&Partition::from_sorted(vec![m, m]))) * &p;
            out.push(MaxRankPartner {
                shape: Partition::from_sorted(vec![m, m]),
                witness,
            });
        }
        _ => out.push(MaxRankPartner {
            shape: lambda.clone(),
            witness: j.clone(),
        }),
    }
    for partner in &out {
        if !commutes_with_jordan(&partner.witness, &lambda) {
            return Err(Error::Verification(format!(
                "witness for {} does not commute with J_{lambda}",
                partner.shape
            )));
        }
        let found = jordan_type(&partner.witness)?;
        if found != partner.shape {
            return Err(Error::Verification(format!(
                "witness for {} has Jordan type {found}",
                partner.shape
            )));
        }
    }
    Ok(out)
}

/// Dense rank of each block `(11, 12, 21, 22)` of a two-block matrix.
pub fn block_ranks(m: &ExactMatrix, l1: usize) -> [usize; 4] {
    let n = m.rows();
    [
        m.block(0..l1, 0..l1).rank(),
        m.block(0..l1, l1..n).rank(),
        m.block(l1..n, 0..l1).rank(),
        m.block(l1..n, l1..n).rank(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate, parse};

    fn p(s: &str) -> Partition {
        parse(s).unwrap()
    }

    fn random_element(l1: usize, l2: usize, rng: &mut ChaCha8Rng) -> TwoBlockElement {
        let mut x = TwoBlockElement::zero(l1, l2).unwrap();
        for which in [Basis::M, Basis::K, Basis::L, Basis::N] {
            for i in 0..x.coefficients(which).len() {
                if rng.gen_bool(0.6) {
                    x.set(which, i, rat(rng.gen_range(-3..=3))).unwrap();
                }
            }
        }
        x
    }

    #[test]
    fn table_examples() {
        let k0 = TwoBlockElement::basis(5, 3, Basis::K, 0).unwrap();
        let l0 = TwoBlockElement::basis(5, 3, Basis::L, 0).unwrap();
        assert_eq!(k0.mul(&l0).unwrap(), TwoBlockElement::basis(5, 3, Basis::M, 2).unwrap());
        let m1 = TwoBlockElement::basis(5, 3, Basis::M, 1).unwrap();
        assert_eq!(m1.mul(&l0).unwrap(), TwoBlockElement::zero(5, 3).unwrap());
        let other = TwoBlockElement::zero(4, 3).unwrap();
        assert!(matches!(m1.mul(&other), Err(Error::Shape(_))));
    }

    #[test]
    fn dense_realization() {
        let m1 = TwoBlockElement::basis(4, 2, Basis::M, 1).unwrap();
        let expected = build_jordan(&Partition::row(4)).direct_sum(&ExactMatrix::zeros(2, 2));
        assert_eq!(m1.to_matrix(), expected);

        let k0 = TwoBlockElement::basis(3, 2, Basis::K, 0).unwrap().to_matrix();
        let mut ones = ExactMatrix::zeros(5, 5);
        ones.set(0, 3, rat(1));
        ones.set(1, 4, rat(1));
        assert_eq!(k0, ones);

        assert!(TwoBlockElement::zero(3, 3).unwrap().to_matrix().is_zero());
    }

    #[test]
    fn basis_spans_the_centralizer() {
        for l1 in 1..=7 {
            for l2 in 1..=l1 {
                let x = TwoBlockElement::zero(l1, l2).unwrap();
                let mut rows = Vec::new();
                for which in [Basis::M, Basis::K, Basis::L, Basis::N] {
                    for i in 0..x.coefficients(which).len() {
                        let m = TwoBlockElement::basis(l1, l2, which, i).unwrap().to_matrix();
                        rows.extend(m.entries().iter().cloned());
                    }
                }
                let n = l1 + l2;
                let span = ExactMatrix::from_entries(rows.len() / (n * n), n * n, rows).unwrap();
                let lambda = Partition::from_sorted(vec![l1, l2]);
                assert_eq!(span.rank(), span.rows(), "({l1},{l2})");
                assert_eq!(span.rank(), crate::commutant::commutator_nullity(&lambda), "({l1},{l2})");
            }
        }
    }

    #[test]
    fn homomorphism_and_commutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for l1 in 1..=8 {
            for l2 in 1..=l1 {
                let lambda = Partition::from_sorted(vec![l1, l2]);
                for _ in 0..60 {
                    let x = random_element(l1, l2, &mut rng);
                    let y = random_element(l1, l2, &mut rng);
                    let (mx, my) = (x.to_matrix(), y.to_matrix());
                    assert!(commutes_with_jordan(&mx, &lambda));
                    assert_eq!(x.mul(&y).unwrap().to_matrix(), &mx * &my, "{x:?} * {y:?}");
                }
            }
        }
    }

    #[test]
    fn square_matches_dense_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let x = random_nilpotent_form(4, 2, &mut rng, 5, 0.3).unwrap();
            let m = x.to_matrix();
            assert_eq!(x.mul(&x).unwrap().to_matrix(), &m * &m);
        }
    }

    #[test]
    fn rank_bound_examples_and_fuzz() {
        let mut x = TwoBlockElement::basis(4, 3, Basis::M, 1).unwrap();
        x.set(Basis::N, 1, rat(1)).unwrap();
        assert_eq!(x.rank_bound(), 5);
        assert_eq!(x.to_matrix().rank(), 5);

        let mut y = TwoBlockElement::basis(4, 4, Basis::K, 0).unwrap();
        y.set(Basis::L, 0, rat(1)).unwrap();
        assert_eq!(y.rank_bound(), 8);
        assert!(y.to_matrix().rank() <= 8);

        assert_eq!(TwoBlockElement::zero(5, 2).unwrap().rank_bound(), 0);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for l1 in 1..=6 {
            for l2 in 1..=l1 {
                for _ in 0..100 {
                    let x = random_element(l1, l2, &mut rng);
                    assert!(x.rank_bound() >= x.to_matrix().rank(), "{x:?}");
                }
            }
        }
    }

    #[test]
    fn token_round_trip() {
        let x = TwoBlockElement::parse_tokens(5, 3, "M[1]=2 K[0]=-1/2 N[2]=3".split(' ')).unwrap();
        assert_eq!(x.to_string(), "M[1]=2 K[0]=-1/2 N[2]=3");
        let y = TwoBlockElement::parse_tokens(5, 3, x.to_string().split(' ')).unwrap();
        assert_eq!(x, y);
        for bad in ["Q[1]=2", "M1=2", "M[9]=1", "K[0]=x", "K[0]"] {
            assert!(matches!(
                TwoBlockElement::parse_tokens(5, 3, [bad]),
                Err(Error::ElementSyntax(_))
            ));
        }
    }

    #[test]
    fn nilpotent_form_certification() {
        let mut x = TwoBlockElement::basis(3, 3, Basis::K, 0).unwrap();
        assert!(x.is_nilpotent_form());
        x.set(Basis::L, 0, rat(1)).unwrap();
        assert!(!x.is_nilpotent_form());
        let y = TwoBlockElement::basis(4, 3, Basis::M, 0).unwrap();
        assert!(!y.is_nilpotent_form());
    }

    #[test]
    fn antidiagonal_examples() {
        let r = antidiagonal(5, 3, 0, 1, rat(1), rat(1)).unwrap();
        assert_eq!((r.case, r.w, r.predicted.clone()), (AntidiagonalCase::A, 3, p("3,3,2")));
        assert_eq!(jordan_type(&r.element.to_matrix()).unwrap(), r.predicted);

        let r = antidiagonal(9, 8, 0, 4, rat(2), rat(-3)).unwrap();
        assert_eq!((r.case, r.w, r.predicted.clone()), (AntidiagonalCase::B, 5, p("4,4,4,3,2")));
        assert_eq!(jordan_type(&r.element.to_matrix()).unwrap(), r.predicted);

        // Case (b) holds whenever λ2 - l <= kw < λ2 - j; here its shape
        // coincides with P(11, 3).
        let r = antidiagonal(6, 5, 0, 2, rat(1), rat(1)).unwrap();
        assert_eq!((r.case, r.w, r.predicted.clone()), (AntidiagonalCase::B, 3, p("4,4,3")));
        assert_eq!(jordan_type(&r.element.to_matrix()).unwrap(), r.predicted);

        let r = antidiagonal(7, 5, 0, 2, rat(1), rat(1)).unwrap();
        assert_eq!((r.case, r.predicted.clone()), (AntidiagonalCase::B, p("4,3,3,2")));
        assert_eq!(jordan_type(&r.element.to_matrix()).unwrap(), r.predicted);

        let r = antidiagonal(4, 2, 1, 1, rat(1), rat(1)).unwrap();
        assert_eq!((r.case, r.predicted.clone()), (AntidiagonalCase::C, p("2,2,1,1")));
        assert_eq!(jordan_type(&r.element.to_matrix()).unwrap(), r.predicted);

        assert!(antidiagonal(4, 4, 0, 0, rat(1), rat(1)).is_err());
        assert!(antidiagonal(4, 3, 2, 1, rat(1), rat(1)).is_err());
        assert!(antidiagonal(4, 3, 0, 1, rat(0), rat(1)).is_err());
    }

    fn admissible(max_n: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for n in 2..=max_n {
            for l2 in 1..=n / 2 {
                let l1 = n - l2;
                for l in 0..l2 {
                    for j in 0..=l {
                        if l1 == l2 && j + l == 0 {
                            continue;
                        }
                        out.push((l1, l2, j, l));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn antidiagonal_prediction_and_block_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (l1, l2, j, l) in admissible(14) {
            let mut coef = || loop {
                let v = rng.gen_range(-5i64..=5);
                if v != 0 {
                    return rat(v);
                }
            };
            let r = antidiagonal(l1, l2, j, l, coef(), coef()).unwrap();
            let a = r.element.to_matrix();
            assert_eq!(jordan_type(&a).unwrap(), r.predicted, "({l1},{l2}) j={j} l={l}");
            let mut power = a.clone();
            for m in 1..=(l1 + l2) {
                assert_eq!(
                    block_ranks(&power, l1),
                    antidiagonal_block_ranks(l1, l2, j, l, m),
                    "({l1},{l2}) j={j} l={l} m={m}"
                );
                if power.is_zero() {
                    break;
                }
                power = &power * &a;
            }
        }
    }

    fn assert_square_zero(m: &ExactMatrix, lambda: &Partition, a: usize) {
        assert!(commutes_with_jordan(m, lambda), "{lambda} a={a}");
        assert!((m * m).is_zero(), "{lambda} a={a}");
        assert_eq!(m.rank(), a, "{lambda} a={a}");
    }

    #[test]
    fn lemma_odd_examples() {
        let m = lemma_odd(3, 3, 3).unwrap();
        assert_eq!(jordan_type(&m).unwrap(), p("2,2,2"));
        let m = lemma_odd(4, 2, 1).unwrap();
        let expected = build_jordan(&Partition::row(4))
            .pow(3)
            .unwrap()
            .direct_sum(&ExactMatrix::zeros(2, 2));
        assert_eq!(m, expected);
        assert_eq!(jordan_type(&m).unwrap(), p("2,1,1,1,1"));
        let m = lemma_odd(5, 3, 4).unwrap();
        assert_eq!(jordan_type(&m).unwrap(), p("2,2,2,2"));
        assert!(lemma_odd(5, 3, 5).is_err());
    }

    #[test]
    fn lemma_odd_exhaustive() {
        for n in 2..=12 {
            for l2 in 1..=n / 2 {
                let l1 = n - l2;
                let lambda = Partition::from_sorted(vec![l1, l2]);
                for a in 0..=n / 2 {
                    assert_square_zero(&lemma_odd(l1, l2, a).unwrap(), &lambda, a);
                }
            }
        }
    }

    #[test]
    fn squarezero_partner_exhaustive() {
        for n in 1..=10 {
            for mu in enumerate(n) {
                for a in 0..=n / 2 {
                    let m = squarezero_partner(&mu, a).unwrap();
                    assert_square_zero(&m, &mu, a);
                    assert_eq!(jordan_type(&m).unwrap(), Partition::square_zero(a, n - 2 * a));
                }
                assert!(squarezero_partner(&mu, n / 2 + 1).is_err());
            }
        }
        let row = squarezero_partner(&Partition::row(7), 3).unwrap();
        assert_eq!(row, build_jordan(&Partition::row(7)).pow(4).unwrap());
        let m = squarezero_partner(&p("3,3,3"), 4).unwrap();
        assert_square_zero(&m, &p("3,3,3"), 4);
    }

    #[test]
    fn common_witness_examples() {
        let (x, y) = common_squarezero_witness(&p("4,2"), &p("3,3"), 2).unwrap();
        assert_eq!(jordan_type(&x).unwrap(), p("2,2,1,1"));
        assert_eq!(jordan_type(&y).unwrap(), p("2,2,1,1"));
        let (x, y) = common_squarezero_witness(&p("4"), &p("4"), 0).unwrap();
        assert!(x.is_zero() && y.is_zero());
        assert!(common_squarezero_witness(&p("4"), &p("3"), 1).is_err());
    }

    #[test]
    fn lemma_eq2_shapes() {
        for lam in 2..=6 {
            let x = lemma_eq2_element(lam, lam as u64).unwrap();
            let m = x.to_matrix();
            let lambda = Partition::from_sorted(vec![lam, lam]);
            assert!(commutes_with_jordan(&m, &lambda));
            assert_eq!(
                jordan_type(&m).unwrap(),
                Partition::from_sorted(vec![lam + 1, lam - 1])
            );
            assert!(x.is_nilpotent_form());
        }
        assert!(lemma_eq2(1, 0).is_err());
    }

    #[test]
    fn maxrank_examples() {
        let shapes = |l1, l2| -> Vec<Partition> {
            maxrank_partners(l1, l2)
                .unwrap()
                .into_iter()
                .map(|m| m.shape)
                .collect()
        };
        assert_eq!(shapes(5, 4), vec![p("9")]);
        assert_eq!(shapes(6, 4), vec![p("6,4"), p("5,5")]);
        assert_eq!(shapes(7, 3), vec![p("7,3")]);
        assert_eq!(shapes(1, 1), vec![p("2")]);
        assert_eq!(shapes(3, 3), vec![p("6")]);
        assert_eq!(shapes(3, 1), vec![p("3,1"), p("2,2")]);
    }
}
