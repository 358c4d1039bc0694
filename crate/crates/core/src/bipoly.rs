//! Bihomogeneous polynomials in `R = k[s,t;u,v]`.
//!
//! `s, t` have bidegree (1,0) and `u, v` have bidegree (0,1). Monomials of a
//! fixed bidegree are ordered lexicographically on `(a_s, a_t, a_u, a_v)` with
//! larger exponents first, so `monomial_basis((2,1))` is
//! `[s²u, s²v, stu, stv, t²u, t²v]`. Every dense coefficient vector in the
//! crate uses this order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rational_sqrt, QMatrix, Scalar};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiDegree {
    pub m: u32,
    pub n: u32,
}

impl BiDegree {
    pub const fn new(m: u32, n: u32) -> Self {
        Self { m, n }
    }

    /// Componentwise partial order.
    pub fn leq(self, other: BiDegree) -> bool {
        self.m <= other.m && self.n <= other.n
    }

    pub fn checked_sub(self, other: BiDegree) -> Option<BiDegree> {
        Some(BiDegree::new(
            self.m.checked_sub(other.m)?,
            self.n.checked_sub(other.n)?,
        ))
    }

    /// `dim R_{m,n}`.
    pub fn dim(self) -> usize {
        (self.m as usize + 1) * (self.n as usize + 1)
    }

    pub fn total(self) -> u32 {
        self.m + self.n
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.m + o.m, self.n + o.n)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Exponents of `s, t, u, v`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiMonomial(pub [u32; 4]);

impl BiMonomial {
    pub const ONE: BiMonomial = BiMonomial([0; 4]);

    pub fn degree(&self) -> BiDegree {
        BiDegree::new(self.0[0] + self.0[1], self.0[2] + self.0[3])
    }

    pub fn mul(&self, o: &BiMonomial) -> BiMonomial {
        BiMonomial(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn divide(&self, o: &BiMonomial) -> Option<BiMonomial> {
        let mut e = [0; 4];
        for i in 0..4 {
            e[i] = self.0[i].checked_sub(o.0[i])?;
        }
        Some(BiMonomial(e))
    }

    /// Position in `monomial_basis(self.degree())`.
    pub fn basis_index(&self) -> usize {
        let d = self.degree();
        ((d.m - self.0[0]) * (d.n + 1) + (d.n - self.0[2])) as usize
    }

    pub fn fmt_with(&self, names: &[&str; 4]) -> String {
        let mut parts = Vec::new();
        for (e, name) in self.0.iter().zip(names) {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Canonical order: `a < b` iff `a` comes first in the monomial basis.
impl Ord for BiMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for BiMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&VARS))
    }
}

pub const VARS: [&str; 4] = ["s", "t", "u", "v"];
pub const DUAL_VARS: [&str; 4] = ["S", "T", "U", "V"];

pub fn monomial_basis(d: BiDegree) -> Vec<BiMonomial> {
    let mut out = Vec::with_capacity(d.dim());
    for a in (0..=d.m).rev() {
        for b in (0..=d.n).rev() {
            out.push(BiMonomial([a, d.m - a, b, d.n - b]));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    degree: BiDegree,
    terms: BTreeMap<BiMonomial, Scalar>,
}

impl BiPoly {
    pub fn zero(degree: BiDegree) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(BiMonomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn monomial(m: BiMonomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(BiMonomial(e), Scalar::one())
    }

    pub fn s() -> Self {
        Self::var(0)
    }
    pub fn t() -> Self {
        Self::var(1)
    }
    pub fn u() -> Self {
        Self::var(2)
    }
    pub fn v() -> Self {
        Self::var(3)
    }

    /// Builds a form of bidegree `degree` from `(coefficient, monomial)` pairs.
    /// Fails if some monomial has another bidegree.
    pub fn from_terms<I>(degree: BiDegree, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scalar, BiMonomial)>,
    {
        let mut p = Self::zero(degree);
        for (c, m) in terms {
            if m.degree() != degree {
                return Err(Error::NotBihomogeneous(format!(
                    "monomial {m} has bidegree {} but {degree} was expected",
                    m.degree()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Form whose coefficients in `monomial_basis(degree)` are `coeffs`.
    pub fn from_coeffs(degree: BiDegree, coeffs: &[Scalar]) -> Self {
        assert_eq!(coeffs.len(), degree.dim(), "coefficient vector length");
        let mut p = Self::zero(degree);
        for (m, c) in monomial_basis(degree).into_iter().zip(coeffs) {
            if !c.is_zero() {
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    pub fn coeffs(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.degree.dim()];
        for (m, c) in &self.terms {
            v[m.basis_index()] = c.clone();
        }
        v
    }

    pub fn degree(&self) -> BiDegree {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BiMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &BiMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// First term in canonical order.
    pub fn leading(&self) -> Option<(&BiMonomial, &Scalar)> {
        self.terms.iter().next()
    }

    fn add_term(&mut self, m: BiMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Scalar multiple whose leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// True iff `self = c·other` for a nonzero scalar `c`.
    pub fn is_scalar_multiple_of(&self, other: &BiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }

    pub fn try_add(&self, other: &BiPoly) -> Result<BiPoly> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Dimension(format!(
                "adding forms of bidegree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = if self.is_zero() {
            Self::zero(other.degree)
        } else {
            self.clone()
        };
        if self.is_zero() {
            out.terms = other.terms.clone();
            return Ok(out);
        }
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// Substitutes linear forms: `s ↦ st[0][0] s + st[0][1] t`,
    /// `t ↦ st[1][0] s + st[1][1] t`, and likewise for `u, v` with `uv`.
    pub fn linear_substitute(&self, st: &[[Scalar; 2]; 2], uv: &[[Scalar; 2]; 2]) -> BiPoly {
        let lin = |row: &[Scalar; 2], a: usize, b: usize| {
            let mut e1 = [0; 4];
            e1[a] = 1;
            let mut e2 = [0; 4];
            e2[b] = 1;
            BiPoly::monomial(BiMonomial(e1), row[0].clone())
                .try_add(&BiPoly::monomial(BiMonomial(e2), row[1].clone()))
                .expect("same bidegree")
        };
        let images = [lin(&st[0], 0, 1), lin(&st[1], 0, 1), lin(&uv[0], 2, 3), lin(&uv[1], 2, 3)];
        let mut out = BiPoly::zero(self.degree);
        for (m, c) in &self.terms {
            let mut term = BiPoly::constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                term = &term * &img.pow(m.0[i]);
            }
            out = out.try_add(&term).expect("substitution preserves bidegree");
        }
        out
    }

    /// Writes `self` of bidegree `(m,1)` as `q·u + r·v` with `q, r` of bidegree `(m,0)`.
    pub fn split_uv(&self) -> Result<(BiPoly, BiPoly)> {
        if self.degree.n != 1 {
            return Err(Error::Dimension(format!(
                "expected u,v-degree 1, got {}",
                self.degree
            )));
        }
        let d = BiDegree::new(self.degree.m, 0);
        let mut q = BiPoly::zero(d);
        let mut r = BiPoly::zero(d);
        for (m, c) in &self.terms {
            let e = m.0;
            let base = BiMonomial([e[0], e[1], 0, 0]);
            if e[2] == 1 {
                q.add_term(base, c.clone());
            } else {
                r.add_term(base, c.clone());
            }
        }
        Ok((q, r))
    }

    /// Evaluates at a point `(s, t, u, v)`.
    pub fn eval(&self, pt: &[Scalar; 4]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut x = c.clone();
            for i in 0..4 {
                for _ in 0..m.0[i] {
                    x *= &pt[i];
                }
            }
            acc += x;
        }
        acc
    }

    pub fn fmt_with(&self, names: &[&str; 4]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let is_one = *m == BiMonomial::ONE;
            if a.is_one() && !is_one {
                out.push_str(&m.fmt_with(names));
            } else if is_one {
                out.push_str(&a.to_string());
            } else {
                out.push_str(&format!("{a}*{}", m.fmt_with(names)));
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&VARS))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly{}[{}]", self.degree, self)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(self.degree + o.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        self.try_add(o).expect("bidegrees must agree")
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Scalar::one())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        self + &-o
    }
}

pub fn mul(f: &BiPoly, g: &BiPoly) -> BiPoly {
    f * g
}

/// Matrix of `g ↦ f·g` from `R_from` to `R_{from + deg f}` in canonical bases.
pub fn multiplication_matrix(f: &BiPoly, from: BiDegree) -> QMatrix {
    let target = from + f.degree();
    let src = monomial_basis(from);
    let mut m = QMatrix::zeros(target.dim(), src.len());
    for (j, mon) in src.iter().enumerate() {
        for (fm, c) in f.terms() {
            m.set(fm.mul(mon).basis_index(), j, c.clone());
        }
    }
    m
}

/// `h` with `f = g·h`.
pub fn divide_exact(f: &BiPoly, g: &BiPoly) -> Result<BiPoly> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let Some(hd) = f.degree().checked_sub(g.degree()) else {
        return Err(Error::NotDivisible);
    };
    if f.is_zero() {
        return Ok(BiPoly::zero(hd));
    }
    let m = multiplication_matrix(g, hd);
    let h = crate::exactla::solve(&m, &f.coeffs()).ok_or(Error::NotDivisible)?;
    Ok(BiPoly::from_coeffs(hd, &h))
}

// Univariate helpers; coefficient vectors run from degree 0 upwards.

pub(crate) fn upoly_trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn upoly_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let b = upoly_trim(b.to_vec());
    let mut r = upoly_trim(a.to_vec());
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() / &lb;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &q * bc;
        }
        r = upoly_trim(r);
    }
    r
}

pub(crate) fn upoly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut a = upoly_trim(a.to_vec());
    let mut b = upoly_trim(b.to_vec());
    while !b.is_empty() {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &l;
        }
    }
    a
}

pub(crate) fn upoly_eval(p: &[Scalar], x: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

/// Which pair of variables a binary form lives in.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BinaryVars {
    ST,
    UV,
}

impl BinaryVars {
    fn of(d: BiDegree) -> Option<BinaryVars> {
        match (d.m, d.n) {
            (_, 0) => Some(BinaryVars::ST),
            (0, _) => Some(BinaryVars::UV),
            _ => None,
        }
    }

    fn degree(self, d: u32) -> BiDegree {
        match self {
            BinaryVars::ST => BiDegree::new(d, 0),
            BinaryVars::UV => BiDegree::new(0, d),
        }
    }
}

/// Coefficients of a binary form, index `k` holding the coefficient of `x^(d-k) y^k`.
fn binary_coeffs(f: &BiPoly) -> Vec<Scalar> {
    f.coeffs()
}

fn binary_from_coeffs(vars: BinaryVars, c: &[Scalar]) -> BiPoly {
    BiPoly::from_coeffs(vars.degree(c.len() as u32 - 1), c)
}

/// Dehomogenizes at `y = 1` after removing the largest power of `y`;
/// returns `(y-exponent, polynomial in x from degree 0 upwards)`.
fn dehomogenize(c: &[Scalar]) -> (usize, Vec<Scalar>) {
    let e = c.iter().take_while(|x| x.is_zero()).count();
    (e, upoly_trim(c.iter().rev().cloned().collect()))
}

/// Monic gcd of two binary forms (both in `s,t` or both in `u,v`).
pub fn binary_form_gcd(f: &BiPoly, g: &BiPoly) -> Result<BiPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.is_zero() {
        return check_binary(g).map(|_| g.monic());
    }
    if g.is_zero() {
        return check_binary(f).map(|_| f.monic());
    }
    let vf = check_binary(f)?;
    let vg = check_binary(g)?;
    let vars = match (f.degree().total(), g.degree().total()) {
        (0, _) | (_, 0) => return Ok(BiPoly::one()),
        _ if vf != vg => return Ok(BiPoly::one()),
        _ => vf,
    };
    let (ef, pf) = dehomogenize(&binary_coeffs(f));
    let (eg, pg) = dehomogenize(&binary_coeffs(g));
    let h = upoly_gcd(&pf, &pg);
    let e = ef.min(eg);
    let r = h.len() - 1;
    let mut c = vec![Scalar::zero(); r + e + 1];
    for (i, hi) in h.iter().enumerate() {
        c[r + e - i] = hi.clone();
    }
    Ok(binary_from_coeffs(vars, &c).monic())
}

fn check_binary(f: &BiPoly) -> Result<BinaryVars> {
    BinaryVars::of(f.degree()).ok_or_else(|| {
        Error::Dimension(format!("{} is not a binary form", f.degree()))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticKind {
    SplitRational,
    DoubleRoot,
    IrrationalConjugatePair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFactorization {
    pub kind: QuadraticKind,
    pub discriminant: Scalar,
    /// Monic linear factors in canonical order; empty for an irrational pair.
    pub factors: Vec<BiPoly>,
}

/// Factors `q = a x² + b xy + c y²` over the rationals.
pub fn factor_binary_quadratic(q: &BiPoly) -> Result<QuadraticFactorization> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let vars = check_binary(q)?;
    if q.degree().total() != 2 {
        return Err(Error::Dimension(format!(
            "expected a binary quadratic, got bidegree {}",
            q.degree()
        )));
    }
    let c = q.coeffs();
    let (a, b, cc) = (&c[0], &c[1], &c[2]);
    let disc = b * b - Scalar::from_integer(4.into()) * a * cc;
    let linear = |x: Scalar, y: Scalar| binary_from_coeffs(vars, &[x, y]).monic();
    let one = Scalar::one();
    let zero = Scalar::zero();
    let mut factors = if a.is_zero() {
        vec![linear(zero.clone(), one.clone()), linear(b.clone(), cc.clone())]
    } else if let Some(r) = rational_sqrt(&disc) {
        let two_a = a * Scalar::from_integer(2.into());
        let r1 = (-b + &r) / &two_a;
        let r2 = (-b - &r) / &two_a;
        vec![linear(one.clone(), -r1), linear(one.clone(), -r2)]
    } else {
        Vec::new()
    };
    factors.sort_by(|x, y| x.leading().unwrap().0.cmp(y.leading().unwrap().0).then_with(|| {
        x.coeffs().cmp(&y.coeffs()).reverse()
    }));
    let kind = if disc.is_zero() {
        QuadraticKind::DoubleRoot
    } else if factors.is_empty() {
        QuadraticKind::IrrationalConjugatePair
    } else {
        QuadraticKind::SplitRational
    };
    Ok(QuadraticFactorization {
        kind,
        discriminant: disc,
        factors,
    })
}

/// Kernel of a set of forms of one bidegree, as coefficient vectors.
pub fn linear_relations(forms: &[BiPoly]) -> Vec<Vec<Scalar>> {
    let Some(d) = forms.first().map(BiPoly::degree) else {
        return Vec::new();
    };
    let cols: Vec<Vec<Scalar>> = forms.iter().map(BiPoly::coeffs).collect();
    kernel_basis(&QMatrix::from_columns(d.dim(), &cols))
}
