//! Ideals generated by four forms of bidegree (2,1), basepoints and Hilbert functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::bipoly::{binary_form_gcd, multiplication_matrix, upoly_eval, upoly_trim, BiDegree, BiPoly};
use crate::error::{Error, Result};
use crate::exactla::{clear_denominators, kernel_basis, rank, QMatrix, RowSpan, Scalar};

pub const GEN_DEGREE: BiDegree = BiDegree::new(2, 1);

/// `I = <p0, p1, p2, p3>` with linearly independent generators of bidegree (2,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<BiPoly>,
}

pub fn validate(gens: Vec<BiPoly>) -> Result<Ideal> {
    if gens.len() != 4 {
        return Err(Error::WrongGeneratorCount(gens.len()));
    }
    for (index, g) in gens.iter().enumerate() {
        if g.degree() != GEN_DEGREE {
            return Err(Error::WrongBidegree {
                index,
                found: g.degree().to_string(),
            });
        }
    }
    let r = rank(&coefficient_matrix(&gens));
    if r < 4 {
        return Err(Error::DependentGenerators(r));
    }
    Ok(Ideal { gens })
}

fn coefficient_matrix(gens: &[BiPoly]) -> QMatrix {
    QMatrix::from_rows(gens.iter().map(BiPoly::coeffs).collect()).expect("equal bidegrees")
}

impl Ideal {
    pub fn new(gens: Vec<BiPoly>) -> Result<Self> {
        validate(gens)
    }

    pub fn parse(texts: &[&str]) -> Result<Self> {
        let gens = texts
            .iter()
            .map(|t| crate::parse::parse_poly(t))
            .collect::<Result<Vec<_>>>()?;
        validate(gens)
    }

    pub fn gens(&self) -> &[BiPoly] {
        &self.gens
    }

    /// The 4×6 matrix of generator coefficients (rows = generators).
    pub fn coefficient_matrix(&self) -> QMatrix {
        coefficient_matrix(&self.gens)
    }

    /// Applies `p_i ↦ sum_j g[i][j] p_j(σ(s,t), τ(u,v))`.
    pub fn transformed(
        &self,
        g: &QMatrix,
        st: &[[Scalar; 2]; 2],
        uv: &[[Scalar; 2]; 2],
    ) -> Result<Ideal> {
        let subs: Vec<BiPoly> = self.gens.iter().map(|p| p.linear_substitute(st, uv)).collect();
        let gens = (0..4)
            .map(|i| {
                (0..4).fold(BiPoly::zero(GEN_DEGREE), |acc, j| &acc + &subs[j].scale(g.get(i, j)))
            })
            .collect();
        validate(gens)
    }

    /// Replaces the generators by another basis of the same span.
    pub fn rebased(&self, g: &QMatrix) -> Result<Ideal> {
        let one = Scalar::one();
        let zero = Scalar::zero();
        let id = [[one.clone(), zero.clone()], [zero, one]];
        self.transformed(g, &id, &id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Non-constant gcd of the six minors; its roots are the `(s:t)` coordinates of basepoints.
    Gcd(BiPoly),
    RankAtMostOneEverywhere,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Gcd(g) => write!(f, "{g}"),
            Witness::RankAtMostOneEverywhere => f.write_str("rank <= 1 everywhere"),
        }
    }
}

/// A basepoint `(a:b) x (c:d)` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basepoint {
    pub st: [Scalar; 2],
    pub uv: [Scalar; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasepointReport {
    pub free: bool,
    pub witness: Option<Witness>,
    /// Basepoints over rational `(s:t)` roots of the witness.
    pub rational_points: Vec<Basepoint>,
}

pub fn is_basepoint_free(ideal: &Ideal) -> BasepointReport {
    let split: Vec<(BiPoly, BiPoly)> = ideal
        .gens
        .iter()
        .map(|p| p.split_uv().expect("bidegree (2,1)"))
        .collect();
    let mut minors = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let (qi, ri) = &split[i];
            let (qj, rj) = &split[j];
            minors.push(&(qi * rj) - &(qj * ri));
        }
    }
    let nonzero: Vec<&BiPoly> = minors.iter().filter(|m| !m.is_zero()).collect();
    let witness = if nonzero.is_empty() {
        Witness::RankAtMostOneEverywhere
    } else {
        let g = nonzero[1..].iter().fold(nonzero[0].monic(), |acc, m| {
            binary_form_gcd(&acc, m).expect("binary quartics")
        });
        if g.degree().total() == 0 {
            return BasepointReport {
                free: true,
                witness: None,
                rational_points: Vec::new(),
            };
        }
        Witness::Gcd(g)
    };
    let roots = match &witness {
        Witness::Gcd(g) => rational_roots(g),
        Witness::RankAtMostOneEverywhere => Vec::new(),
    };
    let rational_points = roots
        .into_iter()
        .flat_map(|st| {
            let pt = |q: &BiPoly| q.eval(&[st[0].clone(), st[1].clone(), Scalar::zero(), Scalar::zero()]);
            let m = QMatrix::from_rows(split.iter().map(|(q, r)| vec![pt(q), pt(r)]).collect())
                .expect("4x2");
            kernel_basis(&m)
                .into_iter()
                .take(1)
                .map(move |k| Basepoint {
                    st: st.clone(),
                    uv: primitive_point(&[k[0].clone(), k[1].clone()]),
                })
        })
        .collect();
    BasepointReport {
        free: false,
        witness: Some(witness),
        rational_points,
    }
}

const ROOT_SEARCH_LIMIT: u64 = 1_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if d > ROOT_SEARCH_LIMIT {
            return None;
        }
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Scales a projective point to coprime integer coordinates with a positive leading entry.
pub fn primitive_point(p: &[Scalar; 2]) -> [Scalar; 2] {
    let (ints, _) = clear_denominators(p);
    let g = ints[0].gcd(&ints[1]);
    if g.is_zero() {
        return p.clone();
    }
    let lead = ints.iter().find(|x| !x.is_zero()).expect("nonzero point");
    let g = if lead.is_negative() { -g } else { g };
    [Scalar::from_integer(&ints[0] / &g), Scalar::from_integer(&ints[1] / &g)]
}

/// Rational roots `(a:b)` of a binary form, each listed once, in coprime integer coordinates.
pub fn rational_roots(f: &BiPoly) -> Vec<[Scalar; 2]> {
    let c = f.coeffs();
    let mut out = Vec::new();
    // coefficient k belongs to x^(d-k) y^k; y | f iff the x^d coefficient vanishes
    if c[0].is_zero() {
        out.push([Scalar::one(), Scalar::zero()]);
    }
    let poly = upoly_trim(c.iter().rev().cloned().collect());
    let (ints, _) = clear_denominators(&poly);
    let Some(low) = ints.iter().position(|x| !x.is_zero()) else {
        return out;
    };
    if low > 0 {
        out.push([Scalar::zero(), Scalar::one()]);
    }
    let ints = &ints[low..];
    let poly: Vec<Scalar> = ints.iter().map(|x| Scalar::from_integer(x.clone())).collect();
    if poly.len() < 2 {
        return out;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return out;
    };
    let mut found: Vec<Scalar> = Vec::new();
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let r = Scalar::new(p * sign, q.clone());
                if !found.contains(&r) && upoly_eval(&poly, &r).is_zero() {
                    found.push(r);
                }
            }
        }
    }
    found.sort();
    out.extend(found.into_iter().map(|r| primitive_point(&[r, Scalar::one()])));
    out
}

/// `dim (R/J)_d` for `J` generated by arbitrary bihomogeneous forms.
pub fn hilbert_function(gens: &[BiPoly], d: BiDegree) -> usize {
    let mut span = RowSpan::new(d.dim());
    for g in gens {
        let Some(from) = d.checked_sub(g.degree()) else {
            continue;
        };
        let m = multiplication_matrix(g, from);
        for c in 0..m.cols() {
            span.insert(&m.column(c));
            if span.rank() == d.dim() {
                return 0;
            }
        }
    }
    d.dim() - span.rank()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    pub imax: u32,
    pub jmax: u32,
    /// `values[i][j] = h_{i,j}`.
    pub values: Vec<Vec<usize>>,
}

impl HilbertTable {
    pub fn get(&self, i: u32, j: u32) -> usize {
        self.values[i as usize][j as usize]
    }
}

impl std::fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.values {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn hilbert_table(ideal: &Ideal, imax: u32, jmax: u32) -> HilbertTable {
    hilbert_table_of(&ideal.gens, imax, jmax)
}

pub fn hilbert_table_of(gens: &[BiPoly], imax: u32, jmax: u32) -> HilbertTable {
    let values = (0..=imax)
        .into_par_iter()
        .map(|i| {
            (0..=jmax)
                .map(|j| hilbert_function(gens, BiDegree::new(i, j)))
                .collect()
        })
        .collect();
    HilbertTable { imax, jmax, values }
}
