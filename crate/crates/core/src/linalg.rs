//! Exact linear algebra over the rationals.
//!
//! Everything here is tolerance-free: ranks come from fraction-free
//! (Bareiss) elimination over integer rows, and every other query is a
//! rational row reduction. List positions in the public API are 1-based,
//! matching how family indices are reported everywhere else.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar in canonical form.
pub type Rational = BigRational;

/// Builds a rational from a numerator and a nonzero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// A coordinate vector with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector {
    coords: Vec<Rational>,
}

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_integers<I>(coords: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        Self::new(
            coords
                .into_iter()
                .map(|c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zeros(dimension: usize) -> Self {
        Self::new(vec![Rational::zero(); dimension])
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `self - factor * other`, in place.
    fn sub_scaled(&mut self, factor: &Rational, other: &Self) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a -= factor * b;
        }
    }

    fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coords.iter().map(|c| c * factor).collect())
    }

    /// An integer row spanning the same line: the vector scaled by the lcm
    /// of its denominators.
    pub(crate) fn to_integer_row(&self) -> Vec<BigInt> {
        let lcm = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(c))?;
        }
        f.write_str(")")
    }
}

/// Coefficients `c_i` with `v = sum c_i * b_i` over an independent list
/// `b_1..b_n`. Keys are 1-based list positions; zero coefficients are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCoefficients {
    coefficients: BTreeMap<usize, Rational>,
}

impl ExpansionCoefficients {
    pub fn get(&self, position: usize) -> Option<&Rational> {
        self.coefficients.get(&position)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coefficients.iter().map(|(k, v)| (*k, v))
    }

    /// Positions carrying a nonzero coefficient; these are the legal
    /// exchange pivots.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| *k)
    }

    /// Recombines the coefficients with `basis`.
    pub fn recombine<'a, I>(&self, basis: I) -> Result<RationalVector>
    where
        I: IntoIterator<Item = &'a RationalVector>,
    {
        let basis: Vec<&RationalVector> = basis.into_iter().collect();
        if basis.len() != self.coefficients.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} basis vectors, got {}",
                self.coefficients.len(),
                basis.len()
            )));
        }
        let dim = common_dimension(basis.iter().copied())?.unwrap_or(0);
        let mut out = RationalVector::zeros(dim);
        for (b, c) in basis.iter().zip(self.coefficients.values()) {
            out.sub_scaled(&-c, b);
        }
        Ok(out)
    }
}

fn common_dimension<'a, I>(vectors: I) -> Result<Option<usize>>
where
    I: IntoIterator<Item = &'a RationalVector>,
{
    let mut dim = None;
    for v in vectors {
        match dim {
            None => dim = Some(v.dimension()),
            Some(d) if d != v.dimension() => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.dimension(),
                })
            }
            Some(_) => {}
        }
    }
    Ok(dim)
}

/// Rank of an integer matrix by fraction-free elimination. Every division
/// is exact: after step `r` each live entry is an `(r+1)`-minor of the input.
pub(crate) fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// `dim span` of the input over the rationals.
pub fn rank<'a, I>(vectors: I) -> Result<usize>
where
    I: IntoIterator<Item = &'a RationalVector>,
{
    let vectors: Vec<&RationalVector> = vectors.into_iter().collect();
    common_dimension(vectors.iter().copied())?;
    Ok(bareiss_rank(
        vectors.iter().map(|v| v.to_integer_row()).collect(),
    ))
}

pub fn is_independent<'a, I>(vectors: I) -> Result<bool>
where
    I: IntoIterator<Item = &'a RationalVector>,
{
    let vectors: Vec<&RationalVector> = vectors.into_iter().collect();
    Ok(rank(vectors.iter().copied())? == vectors.len())
}

pub fn in_span<'a, I>(v: &RationalVector, candidates: I) -> Result<bool>
where
    I: IntoIterator<Item = &'a RationalVector>,
{
    let candidates: Vec<&RationalVector> = candidates.into_iter().collect();
    let base = rank(candidates.iter().copied())?;
    let with = rank(candidates.iter().copied().chain(std::iter::once(v)))?;
    Ok(base == with)
}

pub fn span_equal<'a, A, B>(a: A, b: B) -> Result<bool>
where
    A: IntoIterator<Item = &'a RationalVector>,
    B: IntoIterator<Item = &'a RationalVector>,
{
    let a: Vec<&RationalVector> = a.into_iter().collect();
    let b: Vec<&RationalVector> = b.into_iter().collect();
    let ra = rank(a.iter().copied())?;
    let rb = rank(b.iter().copied())?;
    let rab = rank(a.iter().chain(b.iter()).copied())?;
    Ok(ra == rb && rb == rab)
}

/// Solves `v = sum c_i * b_i` for an independent list `b`.
pub fn expansion_coefficients<'a, I>(
    v: &RationalVector,
    independent: I,
) -> Result<ExpansionCoefficients>
where
    I: IntoIterator<Item = &'a RationalVector>,
{
    let basis: Vec<&RationalVector> = independent.into_iter().collect();
    common_dimension(basis.iter().copied().chain(std::iter::once(v)))?;
    let n = basis.len();
    let dim = v.dimension();

    // Augmented system: one row per coordinate, one column per basis vector.
    let mut m: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            basis
                .iter()
                .map(|b| b.coords[r].clone())
                .chain(std::iter::once(v.coords[r].clone()))
                .collect()
        })
        .collect();
    let pivots = rref(&mut m, n + 1);
    let basis_pivots = pivots.iter().filter(|&&c| c < n).count();
    if basis_pivots < n {
        return Err(Error::DependentSet);
    }
    if pivots.contains(&n) {
        return Err(Error::NotInSpan);
    }
    // Full column rank: pivot i sits in column i.
    let coefficients = (0..n).map(|i| (i + 1, m[i][n].clone())).collect();
    Ok(ExpansionCoefficients { coefficients })
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Projection onto the orthogonal complement of a span (standard dot
/// product), built once by exact Gram-Schmidt without normalisation.
#[derive(Clone, Debug)]
pub struct ComplementProjector {
    dimension: usize,
    orthogonal: Vec<(RationalVector, Rational)>,
}

impl ComplementProjector {
    pub fn new<'a, I>(spanning: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a RationalVector>,
    {
        let spanning: Vec<&RationalVector> = spanning.into_iter().collect();
        let dimension = common_dimension(spanning.iter().copied())?.unwrap_or(0);
        let mut projector = Self {
            dimension,
            orthogonal: Vec::new(),
        };
        for b in spanning {
            let u = projector.project_unchecked(b);
            if !u.is_zero() {
                let norm = u.dot(&u);
                projector.orthogonal.push((u, norm));
            }
        }
        Ok(projector)
    }

    /// Dimension of the subspace being projected out.
    pub fn rank(&self) -> usize {
        self.orthogonal.len()
    }

    pub fn project(&self, v: &RationalVector) -> Result<RationalVector> {
        if !self.orthogonal.is_empty() && v.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: v.dimension(),
            });
        }
        Ok(self.project_unchecked(v))
    }

    fn project_unchecked(&self, v: &RationalVector) -> RationalVector {
        let mut out = v.clone();
        for (q, norm) in &self.orthogonal {
            let c = v.dot(q) / norm;
            if !c.is_zero() {
                out.sub_scaled(&c, q);
            }
        }
        out
    }
}

/// `(I - P) v` where `P` is the orthogonal projection onto `span(spanning)`.
pub fn project_complement<'a, I>(v: &RationalVector, spanning: I) -> Result<RationalVector>
where
    I: IntoIterator<Item = &'a RationalVector>,
{
    let spanning: Vec<&RationalVector> = spanning.into_iter().collect();
    common_dimension(spanning.iter().copied().chain(std::iter::once(v)))?;
    ComplementProjector::new(spanning)?.project(v)
}

/// Incrementally maintained reduced echelon basis; the workhorse for span
/// membership in enumeration loops.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    dimension: usize,
    rows: Vec<(usize, RationalVector)>,
}

impl SpanBasis {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    fn residual(&self, v: &RationalVector) -> RationalVector {
        let mut out = v.clone();
        for (pivot, row) in &self.rows {
            let c = out.coords[*pivot].clone();
            if !c.is_zero() {
                out.sub_scaled(&c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        debug_assert_eq!(v.dimension(), self.dimension);
        self.residual(v).is_zero()
    }

    /// Adds `v` to the basis; returns false when it was already in the span.
    pub fn insert(&mut self, v: &RationalVector) -> bool {
        debug_assert_eq!(v.dimension(), self.dimension);
        let r = self.residual(v);
        let Some(pivot) = r.coords.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let row = r.scale(&r.coords[pivot].recip());
        for (_, other) in self.rows.iter_mut() {
            let c = other.coords[pivot].clone();
            if !c.is_zero() {
                other.sub_scaled(&c, &row);
            }
        }
        self.rows.push((pivot, row));
        true
    }
}
