//! Exact linear algebra over the rationals.
//!
//! Matrices are dense grids of [`Scalar`]. Elimination clears denominators row
//! by row and then works fraction-free on integer rows, dividing every row by
//! its content after each update. The integer kernel runs on `i128` and is
//! restarted on `BigInt` the first time an operation would overflow, so the
//! results never depend on which path was taken.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Rational square root, if the argument is the square of a rational.
pub fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
    }

    /// Matrix whose columns are the given vectors (of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let red = rref(&aug);
        if red.pivots.iter().take(n).copied().ne(0..n) || red.rank < n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.matrix.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &QMatrix) -> Rref {
    let mut span = RowSpan::new(m.cols);
    for r in 0..m.rows {
        span.insert(m.row(r));
    }
    let (rows, pivots) = span.reduced_rows();
    let rank = rows.len();
    let mut out = QMatrix::zeros(m.rows, m.cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    Rref {
        matrix: out,
        pivots,
        rank,
    }
}

pub fn rank(m: &QMatrix) -> usize {
    let mut span = RowSpan::new(m.cols);
    for r in 0..m.rows {
        span.insert(m.row(r));
    }
    span.rank()
}

/// Basis of the right null space. Free columns are taken in increasing order
/// and each basis vector has a 1 in its own free column, 0 in the others.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Scalar>> {
    let red = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[f] = Scalar::one();
            for (k, &p) in red.pivots.iter().enumerate() {
                v[p] = -red.matrix.get(k, f).clone();
            }
            v
        })
        .collect()
}

/// One solution of `m·x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &QMatrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let mut aug = QMatrix::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let red = rref(&aug);
    if red.pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (k, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix.get(k, m.cols).clone();
    }
    Some(x)
}

/// Determinant by Bareiss elimination on the denominator-cleared matrix.
pub fn det(m: &QMatrix) -> Result<Scalar> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            let (row, l) = clear_denominators(m.row(r));
            scale *= l;
            row
        })
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !Zero::is_zero(&a[r][k])) else {
            return Ok(Scalar::zero());
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = <BigInt as Zero>::zero();
        }
        prev = a[k][k].clone();
    }
    let d = Scalar::new(a[n - 1][n - 1].clone() * sign, scale);
    Ok(d)
}

/// Multiplies a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row
        .iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect();
    (ints, l)
}

/// The primitive integer vector on the same line as `row`, leading entry positive.
pub fn primitive_row(row: &[Scalar]) -> Vec<Scalar> {
    let (mut ints, _) = clear_denominators(row);
    let g = ints.iter().fold(<BigInt as Zero>::zero(), |acc, x| Integer::gcd(&acc, x));
    if Zero::is_zero(&g) {
        return row.to_vec();
    }
    let sign = ints.iter().find(|x| !Zero::is_zero(*x)).is_some_and(Signed::is_negative);
    for x in &mut ints {
        *x = &*x / &g;
        if sign {
            *x = -&*x;
        }
    }
    ints.into_iter().map(Scalar::from_integer).collect()
}

// ---------------------------------------------------------------------------
// Integer elimination kernel

trait IntEntry: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn negated(&self) -> Option<Self>;
    fn gcd_with(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn exact_div(&self, d: &Self) -> Self;
    /// `a*b - c*d`, or `None` on overflow.
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl IntEntry for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd_with(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), other.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a as i128
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        // Inputs are kept well inside the range so that products stay checked.
        b.to_i128().filter(|x| x.unsigned_abs() < (1u128 << 100))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntEntry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd_with(&self, other: &Self) -> Self {
        self.gcd(other)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        Some(a * b - c * d)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn make_primitive<T: IntEntry>(v: &mut [T]) -> Option<()> {
    let mut g = T::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd_with(x);
            if g.is_unit() {
                break;
            }
        }
    }
    if !g.is_zero() && !g.is_unit() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.exact_div(&g);
            }
        }
    }
    if let Some(lead) = v.iter().find(|x| !x.is_zero()) {
        if lead.is_negative() {
            for x in v.iter_mut() {
                *x = x.negated()?;
            }
        }
    }
    Some(())
}

/// Replaces `target` by a primitive multiple of `target` with the pivot column cleared.
fn eliminate<T: IntEntry>(target: &[T], row: &[T], pivot: usize) -> Option<Vec<T>> {
    let a = &target[pivot];
    let p = &row[pivot];
    let g = p.gcd_with(a);
    let pf = p.exact_div(&g);
    let af = a.exact_div(&g);
    let zero = T::zero();
    let mut out = Vec::with_capacity(target.len());
    for (x, r) in target.iter().zip(row) {
        if r.is_zero() {
            if x.is_zero() {
                out.push(zero.clone());
            } else {
                out.push(T::mul_sub(&pf, x, &zero, &zero)?);
            }
        } else {
            out.push(T::mul_sub(&pf, x, &af, r)?);
        }
    }
    make_primitive(&mut out)?;
    Some(out)
}

#[derive(Clone, Debug)]
struct Echelon<T> {
    width: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: IntEntry> Echelon<T> {
    fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, mut v: Vec<T>) -> Option<Vec<T>> {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !v[pc].is_zero() {
                v = eliminate(&v, row, pc)?;
            }
        }
        Some(v)
    }

    /// Returns whether the span grew.
    fn insert(&mut self, v: Vec<T>) -> Option<bool> {
        debug_assert_eq!(v.len(), self.width);
        let mut v = self.reduce(v)?;
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return Some(false);
        };
        make_primitive(&mut v)?;
        let at = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(at, v);
        self.pivots.insert(at, pc);
        Some(true)
    }

    fn back_substitute(&mut self) -> Option<()> {
        for k in 0..self.rows.len() {
            let pc = self.pivots[k];
            for j in 0..k {
                if !self.rows[j][pc].is_zero() {
                    let new_row = eliminate(&self.rows[j], &self.rows[k], pc)?;
                    self.rows[j] = new_row;
                }
            }
        }
        Some(())
    }

    fn promote(&self) -> Echelon<BigInt> {
        Echelon {
            width: self.width,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(IntEntry::to_big).collect())
                .collect(),
            pivots: self.pivots.clone(),
        }
    }
}

#[derive(Clone, Debug)]
enum SpanRows {
    Small(Echelon<i128>),
    Big(Echelon<BigInt>),
}

/// Incrementally maintained row space of a set of rational vectors.
#[derive(Clone, Debug)]
pub struct RowSpan {
    rows: SpanRows,
}

impl RowSpan {
    pub fn new(width: usize) -> Self {
        Self {
            rows: SpanRows::Small(Echelon::new(width)),
        }
    }

    pub fn width(&self) -> usize {
        match &self.rows {
            SpanRows::Small(e) => e.width,
            SpanRows::Big(e) => e.width,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.rows {
            SpanRows::Small(e) => e.rows.len(),
            SpanRows::Big(e) => e.rows.len(),
        }
    }

    /// Adds a vector; returns `true` iff it was not already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let (ints, _) = clear_denominators(v);
        self.insert_integers(ints)
    }

    pub fn insert_integers(&mut self, v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.width(), "vector width");
        if let SpanRows::Small(e) = &mut self.rows {
            let small: Option<Vec<i128>> = v.iter().map(i128::from_big).collect();
            if let Some(small) = small {
                if let Some(grew) = e.insert(small) {
                    return grew;
                }
            }
            let big = e.promote();
            self.rows = SpanRows::Big(big);
        }
        match &mut self.rows {
            SpanRows::Big(e) => e.insert(v).expect("bigint arithmetic cannot overflow"),
            SpanRows::Small(_) => unreachable!(),
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut probe = self.clone();
        !probe.insert(v)
    }

    /// Fully reduced rows (pivot entries 1) and their pivot columns.
    pub fn reduced_rows(mut self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        if let SpanRows::Small(e) = &mut self.rows {
            if e.back_substitute().is_none() {
                let big = e.promote();
                self.rows = SpanRows::Big(big);
            }
        }
        let (rows, pivots): (Vec<Vec<BigInt>>, Vec<usize>) = match self.rows {
            SpanRows::Small(e) => (
                e.rows
                    .iter()
                    .map(|r| r.iter().map(IntEntry::to_big).collect())
                    .collect(),
                e.pivots,
            ),
            SpanRows::Big(mut e) => {
                e.back_substitute().expect("bigint arithmetic cannot overflow");
                (e.rows, e.pivots)
            }
        };
        let rows = rows
            .into_iter()
            .zip(&pivots)
            .map(|(r, &p)| {
                let lead = r[p].clone();
                r.into_iter()
                    .map(|x| Scalar::new(x, lead.clone()))
                    .collect()
            })
            .collect();
        (rows, pivots)
    }
}
