//! Exact rational scalars, vectors and square matrices.
//!
//! Everything here is exact: `Rational` is an arbitrary-precision fraction kept
//! in lowest terms with a positive denominator, so structural equality is
//! numeric equality. Matrix entry `(i, j)` is the weight node `i` places on
//! node `j`'s previous value; indices are 0-based in the Rust API.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Rational = BigRational;

/// `p/q` from machine integers. Panics on a zero denominator.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"` or a bare integer `"p"`. The result is canonicalized.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(num).map_err(|_| format!("bad numerator in {s:?}"))?;
    let q = BigInt::from_str(den).map_err(|_| format!("bad denominator in {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(p, q))
}

/// Lowest-terms `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter for a single rational, as a string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        RatWire::deserialize(d).map(|w| w.0)
    }
}

/// Serde adapter for a list of rationals.
pub mod rational_vec_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let wires = Vec::<RatWire>::deserialize(d)?;
        Ok(wires.into_iter().map(|w| w.0).collect())
    }
}

/// Wire form of a rational: a `"p/q"` string, or a JSON integer on input.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RatWire(Rational);

impl Serialize for RatWire {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatWire {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = RatWire;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RatWire, E> {
                parse_rational(v).map(RatWire).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<RatWire, E> {
                Ok(RatWire(int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RatWire, E> {
                Ok(RatWire(Rational::from_integer(BigInt::from(v))))
            }
        }
        d.deserialize_any(V)
    }
}

/// State vector `x(t)` or weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector(#[serde(with = "rational_vec_str")] pub Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        RationalVector(vec![c; n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&p| int(p)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    /// True when every entry is equal (exactly). Empty vectors count as constant.
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn mean(&self) -> Rational {
        self.sum() / int(self.0.len() as i64)
    }
}

impl std::ops::Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<RatWire>>", into = "Vec<Vec<RatWire>>")]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl TryFrom<Vec<Vec<RatWire>>> for RationalMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<RatWire>>) -> Result<Self> {
        RationalMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|w| w.0).collect())
                .collect(),
        )
    }
}

impl From<RationalMatrix> for Vec<Vec<RatWire>> {
    fn from(m: RationalMatrix) -> Self {
        m.entries
            .chunks(m.n.max(1))
            .map(|row| row.iter().cloned().map(RatWire).collect())
            .collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix({})[", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Precondition("matrix order must be positive".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { n, entries })
    }

    /// Builds a matrix from `(numerator, denominator)` rows; handy for fixtures.
    pub fn from_fracs(rows: &[&[(i64, i64)]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// `(1/n) * 1 1^T`
    pub fn averaging(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![rat(1, n as i64); n * n],
        }
    }

    /// `1 v^T`: every row equals `v`.
    pub fn rank_one(v: &RationalVector) -> Self {
        let n = v.len();
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n {
            entries.extend(v.0.iter().cloned());
        }
        RationalMatrix { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    fn is_unit_row(&self, i: usize) -> bool {
        self.row(i)
            .iter()
            .enumerate()
            .all(|(j, a)| if j == i { a.is_one() } else { a.is_zero() })
    }

    fn row_times(&self, i: usize, rhs: &RationalMatrix) -> Vec<Rational> {
        let n = self.n;
        let mut out = vec![Rational::zero(); n];
        for (k, a) in self.row(i).iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(rhs.row(k)) {
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Exact product `self * rhs`.
    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            if self.is_unit_row(i) {
                entries.extend_from_slice(rhs.row(i));
            } else {
                entries.extend(self.row_times(i, rhs));
            }
        }
        Ok(RationalMatrix { n: self.n, entries })
    }

    /// `self <- lhs * self`, touching only the rows where `lhs` is not a unit row.
    fn left_mul_assign(&mut self, lhs: &RationalMatrix) -> Result<()> {
        if self.n != lhs.n {
            return Err(Error::DimensionMismatch {
                left: lhs.n,
                right: self.n,
            });
        }
        let updates: Vec<(usize, Vec<Rational>)> = (0..self.n)
            .filter(|&i| !lhs.is_unit_row(i))
            .map(|i| (i, lhs.row_times(i, self)))
            .collect();
        for (i, row) in updates {
            let n = self.n;
            self.entries[i * n..(i + 1) * n].clone_from_slice(&row);
        }
        Ok(())
    }

    /// `y = A x`
    pub fn apply(&self, x: &RationalVector) -> Result<RationalVector> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.len(),
            });
        }
        Ok(RationalVector(
            self.rows()
                .map(|row| {
                    row.iter()
                        .zip(&x.0)
                        .filter(|(a, _)| !a.is_zero())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }

    fn row_sum(&self, i: usize) -> Rational {
        self.row(i)
            .iter()
            .filter(|a| !a.is_zero())
            .fold(Rational::zero(), |acc, a| acc + a)
    }
}

pub fn mat_mul(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    a.mul(b)
}

/// Nonnegative with every row summing exactly to 1.
pub fn is_stochastic(a: &RationalMatrix) -> bool {
    a.entries.iter().all(|x| !x.is_negative()) && (0..a.n).all(|i| a.row_sum(i).is_one())
}

pub fn has_positive_diagonal(a: &RationalMatrix) -> bool {
    (0..a.n).all(|i| a.get(i, i).is_positive())
}

/// Every strictly positive off-diagonal `(i, j)` needs arc `(j, i)` in `g`.
/// Zero entries are always allowed.
pub fn is_consistent(a: &RationalMatrix, g: &Graph) -> Result<bool> {
    Ok(first_inconsistency(a, g)?.is_none())
}

/// First positive off-diagonal entry `(i, j)` (0-based) whose arc `(j, i)` is missing.
pub fn first_inconsistency(a: &RationalMatrix, g: &Graph) -> Result<Option<(usize, usize)>> {
    if a.n != g.n() {
        return Err(Error::DimensionMismatch {
            left: a.n,
            right: g.n(),
        });
    }
    for i in 0..a.n {
        for (j, x) in a.row(i).iter().enumerate() {
            if i != j && x.is_positive() && !g.has_arc(j + 1, i + 1) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Stochastic with identical rows, i.e. `1 v^T` with `v >= 0` summing to 1.
pub fn is_rank_one_stochastic(a: &RationalMatrix) -> bool {
    is_stochastic(a) && a.rows().all(|r| r == a.row(0))
}

/// Every entry exactly `1/n`.
pub fn is_average_matrix(a: &RationalMatrix) -> bool {
    let target = rat(1, a.n as i64);
    a.entries.iter().all(|x| *x == target)
}

/// Ordered `(A_1, ..., A_T)`, applied as `x(t) = A_t x(t-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SequenceWire")]
pub struct MatrixSequence {
    n: usize,
    matrices: Vec<RationalMatrix>,
}

#[derive(Deserialize)]
struct SequenceWire {
    n: usize,
    matrices: Vec<RationalMatrix>,
}

impl TryFrom<SequenceWire> for MatrixSequence {
    type Error = Error;
    fn try_from(w: SequenceWire) -> Result<Self> {
        MatrixSequence::new(w.n, w.matrices)
    }
}

impl MatrixSequence {
    pub fn new(n: usize, matrices: Vec<RationalMatrix>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition(
                "sequence order must be positive".into(),
            ));
        }
        if let Some(m) = matrices.iter().find(|m| m.order() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: m.order(),
            });
        }
        Ok(MatrixSequence { n, matrices })
    }

    pub fn empty(n: usize) -> Self {
        MatrixSequence {
            n,
            matrices: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[RationalMatrix] {
        &self.matrices
    }

    pub fn push(&mut self, m: RationalMatrix) -> Result<()> {
        if m.order() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: m.order(),
            });
        }
        self.matrices.push(m);
        Ok(())
    }

    pub fn extend(&mut self, other: MatrixSequence) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        self.matrices.extend(other.matrices);
        Ok(())
    }

    pub fn into_matrices(self) -> Vec<RationalMatrix> {
        self.matrices
    }
}

/// `A_T ... A_2 A_1`; later matrices multiply on the left. Empty gives the identity.
pub fn sequence_product(seq: &MatrixSequence) -> Result<RationalMatrix> {
    if let Some(p) = small::sequence_product(seq) {
        return Ok(p);
    }
    let mut acc = RationalMatrix::identity(seq.n);
    for m in &seq.matrices {
        acc.left_mul_assign(m)?;
    }
    Ok(acc)
}

/// Exact product over `Ratio<i64>`, abandoned (returning `None`) as soon as an
/// entry or an intermediate result does not fit.
mod small {
    use num_rational::Ratio;
    use num_traits::{CheckedAdd, CheckedMul, One, ToPrimitive, Zero};

    use super::{MatrixSequence, Rational, RationalMatrix};

    type Q = Ratio<i64>;
    type SparseRow = (usize, Vec<(usize, Q)>);

    fn narrow(r: &Rational) -> Option<Q> {
        Some(Q::new(r.numer().to_i64()?, r.denom().to_i64()?))
    }

    fn widen(q: &Q) -> Rational {
        Rational::new((*q.numer()).into(), (*q.denom()).into())
    }

    /// Non-unit rows of `a` as sparse `(row, [(column, weight)])` lists.
    fn sparse_rows(a: &RationalMatrix) -> Option<Vec<SparseRow>> {
        let mut rows = Vec::new();
        for i in 0..a.order() {
            if a.is_unit_row(i) {
                continue;
            }
            let mut row = Vec::new();
            for (k, v) in a.row(i).iter().enumerate() {
                if !v.is_zero() {
                    row.push((k, narrow(v)?));
                }
            }
            rows.push((i, row));
        }
        Some(rows)
    }

    pub(super) fn sequence_product(seq: &MatrixSequence) -> Option<RationalMatrix> {
        let n = seq.order();
        let mut acc = vec![Q::zero(); n * n];
        for i in 0..n {
            acc[i * n + i] = Q::one();
        }
        for a in seq.matrices() {
            let mut updates = Vec::new();
            for (i, row) in sparse_rows(a)? {
                let mut out = vec![Q::zero(); n];
                for (k, w) in &row {
                    for (o, b) in out.iter_mut().zip(&acc[k * n..(k + 1) * n]) {
                        if !b.is_zero() {
                            *o = o.checked_add(&w.checked_mul(b)?)?;
                        }
                    }
                }
                updates.push((i, out));
            }
            for (i, out) in updates {
                acc[i * n..(i + 1) * n].copy_from_slice(&out);
            }
        }
        let rows = acc
            .chunks(n.max(1))
            .take(n)
            .map(|r| r.iter().map(widen).collect())
            .collect();
        RationalMatrix::from_rows(rows).ok()
    }
}
