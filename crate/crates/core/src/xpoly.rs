//! Homogeneous polynomials in the coordinates `x0..x3` of the target `P^3`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::bipoly::{BiDegree, BiPoly};
use crate::error::{Error, Result};
use crate::exactla::{frac, QMatrix, Scalar};

/// Exponent vector of `x0..x3`, ordered so that larger tuples come first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct XMonomial(pub [u32; 4]);

impl XMonomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for XMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for XMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d`, in canonical order.
pub fn x_monomials(d: u32) -> Vec<XMonomial> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push(XMonomial([a, b, c, d - a - b - c]));
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XPoly {
    degree: u32,
    terms: BTreeMap<XMonomial, Scalar>,
}

impl XPoly {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(XMonomial([0; 4]), c)
    }

    pub fn monomial(m: XMonomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.degree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(XMonomial(e), Scalar::one())
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(c: &[Scalar]) -> Self {
        let mut p = Self::zero(1);
        for (i, ci) in c.iter().enumerate() {
            let mut e = [0; 4];
            e[i] = 1;
            p.add_term(XMonomial(e), ci.clone());
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Scalar, [u32; 4])>>(degree: u32, terms: I) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (c, e) in terms {
            let m = XMonomial(e);
            if m.degree() != degree {
                return Err(Error::Dimension(format!(
                    "x-monomial of degree {} in a form of degree {degree}",
                    m.degree()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Reads forms such as `x0*x1^2 - 3/2*x2^3`.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse {
            pos: 0,
            msg: msg.to_string(),
        };
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && !cur.ends_with('^') {
                if i > 0 {
                    pieces.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        pieces.push((neg, cur));
        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            let mut coeff = Scalar::one();
            let mut e = [0u32; 4];
            for f in piece.split('*') {
                if let Some(rest) = f.strip_prefix('x') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u32>().map_err(|_| err("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err("bad variable"))?;
                    if idx > 3 {
                        return Err(err("variable index out of range"));
                    }
                    e[idx] += pow;
                } else {
                    let c: Scalar = f.parse().map_err(|_| err("bad coefficient"))?;
                    coeff *= c;
                }
            }
            terms.push((if neg { -coeff } else { coeff }, e));
        }
        let degree = terms.first().map_or(0, |(_, e)| e.iter().sum());
        Self::from_terms(degree, terms)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: [u32; 4]) -> Scalar {
        self.terms.get(&XMonomial(e)).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, m: XMonomial, c: Scalar) {
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

    /// Scalar multiple whose first coefficient in canonical order is 1.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn is_scalar_multiple_of(&self, other: &XPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalized() == other.normalized()
    }

    /// `c` with `self = c·other`, if it exists.
    pub fn ratio_to(&self, other: &XPoly) -> Option<Scalar> {
        let (m, c) = other.terms.iter().next()?;
        let r = self.coefficient(m.0) / c;
        (&other.scale(&r) == self && !r.is_zero()).then_some(r)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Scalar::one()), |acc, _| &acc * self)
    }

    pub fn partial(&self, i: usize) -> XPoly {
        let mut out = XPoly::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.0;
            n[i] -= 1;
            out.add_term(XMonomial(n), c * Scalar::from_integer(e.into()));
        }
        out
    }

    pub fn partials(&self) -> [XPoly; 4] {
        std::array::from_fn(|i| self.partial(i))
    }

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

    /// `F(images[0], .., images[3])`; all images must share one bidegree.
    pub fn substitute(&self, images: &[BiPoly]) -> BiPoly {
        assert_eq!(images.len(), 4, "four images");
        let base = images
            .iter()
            .find(|p| !p.is_zero())
            .map_or(BiDegree::new(0, 0), BiPoly::degree);
        let target = BiDegree::new(base.m * self.degree, base.n * self.degree);
        let mut powers: Vec<Vec<BiPoly>> = images.iter().map(|p| vec![BiPoly::one(), p.clone()]).collect();
        let mut out = BiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = BiPoly::constant(c.clone());
            for i in 0..4 {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
            }
            if !term.is_zero() {
                out = &out + &term;
            }
        }
        out
    }

    /// Symmetric matrix `M` with `Q = x^T M x` for a quadric `Q`.
    pub fn quadric_matrix(&self) -> Result<QMatrix> {
        if self.degree != 2 {
            return Err(Error::Dimension(format!("degree {} form is not a quadric", self.degree)));
        }
        let mut m = QMatrix::zeros(4, 4);
        for (mon, c) in &self.terms {
            let idx: Vec<usize> = (0..4).flat_map(|i| std::iter::repeat_n(i, mon.0[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                m.set(i, i, c.clone());
            } else {
                let h = c * frac(1, 2);
                m.set(i, j, h.clone());
                m.set(j, i, h);
            }
        }
        Ok(m)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let vars: Vec<String> = (0..4)
                .filter(|&k| m.0[k] > 0)
                .map(|k| match m.0[k] {
                    1 => format!("x{k}"),
                    e => format!("x{k}^{e}"),
                })
                .collect();
            let a = c.abs();
            match (vars.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => f.write_str(&vars.join("*"))?,
                (false, false) => write!(f, "{a}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly[{self}]")
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, o: &XPoly) -> XPoly {
        if self.is_zero() {
            return o.clone();
        }
        assert!(o.is_zero() || o.degree == self.degree, "degrees must agree");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        self.scale(&-Scalar::one())
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, o: &XPoly) -> XPoly {
        self + &-o
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, o: &XPoly) -> XPoly {
        let mut out = XPoly::zero(self.degree + o.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(XMonomial(std::array::from_fn(|i| m1.0[i] + m2.0[i])), c1 * c2);
            }
        }
        out
    }
}

pub fn pullback(f: &XPoly, gens: &[BiPoly]) -> BiPoly {
    f.substitute(gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<XPoly>,
}

impl XPolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<XPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &XPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn permute_rows(&self, perm: &[usize]) -> XPolyMatrix {
        let entries = perm
            .iter()
            .flat_map(|&r| (0..self.cols).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        XPolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn xdet(m: &XPolyMatrix) -> Result<XPoly> {
    if m.rows != m.cols {
        return Err(Error::Dimension(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let rows: Vec<usize> = (0..m.rows).collect();
    let cols: Vec<usize> = (0..m.cols).collect();
    Ok(minor(m, &rows, &cols))
}

fn minor(m: &XPolyMatrix, rows: &[usize], cols: &[usize]) -> XPoly {
    match rows.len() {
        0 => XPoly::constant(Scalar::one()),
        1 => m.get(rows[0], cols[0]).clone(),
        _ => {
            let mut acc: Option<XPoly> = None;
            for (k, &c) in cols.iter().enumerate() {
                let e = m.get(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = e * &minor(m, &rows[1..], &rest);
                let term = if k % 2 == 1 { -&term } else { term };
                acc = Some(match acc {
                    Some(a) => &a + &term,
                    None => term,
                });
            }
            acc.unwrap_or_else(|| {
                let d = rows.iter().map(|&r| cols.iter().map(|&c| m.get(r, c).degree()).max().unwrap_or(0)).sum();
                XPoly::zero(d)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    fn x(i: usize) -> XPoly {
        XPoly::var(i)
    }

    #[test]
    fn diagonal_and_two_by_two() {
        let z = XPoly::zero(1);
        let diag = XPolyMatrix::new(
            4,
            4,
            (0..16).map(|k| if k % 5 == 0 { x(k / 5) } else { z.clone() }).collect(),
        )
        .unwrap();
        assert_eq!(xdet(&diag).unwrap(), XPoly::parse("x0*x1*x2*x3").unwrap());
        let m = XPolyMatrix::new(2, 2, vec![x(0), x(1), x(2), x(3)]).unwrap();
        assert_eq!(xdet(&m).unwrap(), XPoly::parse("x0*x3 - x1*x2").unwrap());
        assert!(xdet(&XPolyMatrix::new(1, 2, vec![x(0), x(1)]).unwrap()).is_err());
    }

    #[test]
    fn partial_derivatives() {
        let f = XPoly::parse("x0^2").unwrap();
        let d = f.partials();
        assert_eq!(d[0], XPoly::parse("2*x0").unwrap());
        assert!(d[1].is_zero() && d[2].is_zero() && d[3].is_zero());
        let d = XPoly::parse("x0*x1").unwrap().partials();
        assert_eq!(d[0], x(1));
        assert_eq!(d[1], x(0));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = XPoly::parse("x0*x1^2*x2 - x1^2*x2^2 + 2*x0*x1*x2*x3 - x0^2*x3^2").unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(XPoly::parse(&f.to_string()).unwrap(), f);
        assert_eq!(f.to_string(), "-x0^2*x3^2 + x0*x1^2*x2 + 2*x0*x1*x2*x3 - x1^2*x2^2");
        assert_eq!(f.normalized().coefficient([2, 0, 0, 2]), int(1));
    }

    #[test]
    fn quadric_matrix_of_segre_quadric() {
        let q = XPoly::parse("x0*x3 - x1*x2").unwrap();
        let m = q.quadric_matrix().unwrap();
        assert_eq!(crate::exactla::rank(&m), 4);
        assert_eq!(*m.get(0, 3), frac(1, 2));
        assert_eq!(*m.get(1, 2), frac(-1, 2));
    }

    #[test]
    fn monomials_of_degree_two() {
        let ms = x_monomials(2);
        assert_eq!(ms.len(), 10);
        assert_eq!(ms[0], XMonomial([2, 0, 0, 0]));
        assert_eq!(ms[9], XMonomial([0, 0, 0, 2]));
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }
}
