//! Sorting basepoint-free ideals into the six numerical types.
//!
//! The type is read off from the linear first syzygies: `n01` syzygies of
//! bidegree (0,1), `n10` of bidegree (1,0), and whether a minimal (0,2)
//! syzygy exists. Types 3/4 and 5a/5b are then separated by the common
//! factor `p` that a linear syzygy forces on part of the generators.

use std::fmt;

use num_traits::{One, Zero};

use crate::bipoly::{divide_exact, factor_binary_quadratic, BiDegree, BiPoly, QuadraticKind};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, solve, QMatrix, RowSpan, Scalar};
use crate::ideal::{is_basepoint_free, Ideal, GEN_DEGREE};
use crate::resolution::{minimal_syzygy_count, syzygies_in_bidegree, SyzygyVector};
use crate::xpoly::XPoly;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceType {
    T1,
    T2,
    T3,
    T4,
    T5a,
    T5b,
    T6,
}

impl SurfaceType {
    pub const ALL: [SurfaceType; 7] = [
        SurfaceType::T1,
        SurfaceType::T2,
        SurfaceType::T3,
        SurfaceType::T4,
        SurfaceType::T5a,
        SurfaceType::T5b,
        SurfaceType::T6,
    ];

    /// Numerical type, with 5a and 5b merged.
    pub fn number(self) -> u8 {
        match self {
            SurfaceType::T1 => 1,
            SurfaceType::T2 => 2,
            SurfaceType::T3 => 3,
            SurfaceType::T4 => 4,
            SurfaceType::T5a | SurfaceType::T5b => 5,
            SurfaceType::T6 => 6,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SurfaceType::T1 => "1",
            SurfaceType::T2 => "2",
            SurfaceType::T3 => "3",
            SurfaceType::T4 => "4",
            SurfaceType::T5a => "5a",
            SurfaceType::T5b => "5b",
            SurfaceType::T6 => "6",
        }
    }

    pub fn from_label(s: &str) -> Option<SurfaceType> {
        SurfaceType::ALL.into_iter().find(|t| t.label() == s)
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearForm {
    Rational(BiPoly),
    /// One of the two conjugate roots of `quadratic`, which has discriminant `discriminant`.
    ConjugateRoot { quadratic: BiPoly, discriminant: Scalar },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PrimeKind {
    MaximalIdeal,
    StPlusLinear,
    ExistenceOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDescriptor {
    pub kind: PrimeKind,
    pub linear_form: Option<LinearForm>,
}

impl fmt::Display for PrimeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.kind, &self.linear_form) {
            (PrimeKind::MaximalIdeal, _) => f.write_str("<s,t,u,v>"),
            (PrimeKind::ExistenceOnly, _) => f.write_str("<s,t,l(u,v)>"),
            (PrimeKind::StPlusLinear, Some(LinearForm::Rational(l))) => write!(f, "<s,t,{l}>"),
            (PrimeKind::StPlusLinear, Some(LinearForm::ConjugateRoot { quadratic, discriminant })) => {
                write!(f, "<s,t,L> with L a factor of {quadratic} (discriminant {discriminant})")
            }
            (PrimeKind::StPlusLinear, None) => f.write_str("<s,t,L(u,v)>"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeReport {
    pub numerical_type: SurfaceType,
    pub n01: usize,
    pub n10: usize,
    pub has02: bool,
    /// The linear syzygy used to extract `p`, if any.
    pub linear_syzygy: Option<SyzygyVector>,
    /// Bidegree (2,0) for Types 5/6, (1,1) for Types 3/4.
    pub p: Option<BiPoly>,
    pub q: Option<BiPoly>,
    pub q_discriminant: Option<Scalar>,
    pub embedded_primes: Vec<PrimeDescriptor>,
}

fn with_shifts(ideal: &Ideal) -> Vec<(BiPoly, BiDegree)> {
    ideal.gens().iter().map(|g| (g.clone(), GEN_DEGREE)).collect()
}

/// `Σ c_i p_i` where `c_i` is the coefficient of `var` in the syzygy's `i`-th (linear) coordinate.
fn contract(ideal: &Ideal, syz: &SyzygyVector, var: usize) -> BiPoly {
    let mut e = [0; 4];
    e[var] = 1;
    let mon = crate::bipoly::BiMonomial(e);
    ideal
        .gens()
        .iter()
        .zip(&syz.coords)
        .fold(BiPoly::zero(GEN_DEGREE), |acc, (g, c)| &acc + &g.scale(&c.coefficient(&mon)))
}

/// From a (0,1) syzygy `Σ (a_i u + b_i v) p_i = 0`: `Σ b_i p_i = u·p` with `p` of bidegree (2,0).
pub fn extract_p_from_01(ideal: &Ideal, syz: &SyzygyVector) -> Result<BiPoly> {
    divide_exact(&contract(ideal, syz, 3), &BiPoly::u())
}

/// From a (1,0) syzygy `Σ (a_i s + b_i t) p_i = 0`: `Σ b_i p_i = s·p` with `p` of bidegree (1,1).
pub fn extract_p_from_10(ideal: &Ideal, syz: &SyzygyVector) -> Result<BiPoly> {
    divide_exact(&contract(ideal, syz, 1), &BiPoly::s())
}

/// Whether a (1,1) form `a0 su + a1 sv + a2 tu + a3 tv` factors into linear forms.
pub fn is_decomposable_11(p: &BiPoly) -> bool {
    let a = p.coeffs();
    (&a[0] * &a[3] - &a[1] * &a[2]).is_zero()
}

pub fn classify(ideal: &Ideal) -> Result<TypeReport> {
    let bp = is_basepoint_free(ideal);
    if !bp.free {
        let w = bp.witness.map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::NotBasepointFree(w));
    }
    let gens = with_shifts(ideal);
    let syz01 = syzygies_in_bidegree(&gens, BiDegree::new(2, 2));
    let syz10 = syzygies_in_bidegree(&gens, BiDegree::new(3, 1));
    let (n01, n10) = (syz01.len(), syz10.len());
    let has02 = minimal_syzygy_count(ideal.gens(), BiDegree::new(2, 3)) > 0;
    let mut report = TypeReport {
        numerical_type: SurfaceType::T1,
        n01,
        n10,
        has02,
        linear_syzygy: None,
        p: None,
        q: None,
        q_discriminant: None,
        embedded_primes: Vec::new(),
    };
    match (n01, n10) {
        (2, 0) => {
            report.numerical_type = SurfaceType::T6;
            report.p = Some(extract_p_from_01(ideal, &syz01[0])?);
            report.linear_syzygy = Some(syz01[0].clone());
        }
        (1, 0) => {
            let p = extract_p_from_01(ideal, &syz01[0])?;
            let q = q_invariant(ideal, &p)?;
            let f = factor_binary_quadratic(&q)?;
            report.numerical_type = if f.kind == QuadraticKind::DoubleRoot {
                SurfaceType::T5b
            } else {
                SurfaceType::T5a
            };
            report.q_discriminant = Some(f.discriminant);
            report.q = Some(q);
            report.p = Some(p);
            report.linear_syzygy = Some(syz01[0].clone());
        }
        (0, 1) => {
            let p = extract_p_from_10(ideal, &syz10[0])?;
            report.numerical_type = if is_decomposable_11(&p) {
                SurfaceType::T4
            } else {
                SurfaceType::T3
            };
            report.p = Some(p);
            report.linear_syzygy = Some(syz10[0].clone());
        }
        (0, 0) => {
            report.numerical_type = if has02 { SurfaceType::T2 } else { SurfaceType::T1 };
        }
        _ => return Err(Error::ImpossibleSyzygyPattern { n01, n10 }),
    }
    report.p = report.p.map(|p| p.monic());
    report.embedded_primes = embedded_primes(&report)?;
    Ok(report)
}

/// Coordinates of a (2,1) form in the generator basis, if it lies in the span.
pub fn coordinates_in(ideal: &Ideal, f: &BiPoly) -> Option<Vec<Scalar>> {
    solve(&ideal.coefficient_matrix().transpose(), &f.coeffs())
}

/// Two generators completing `{pu, pv}` to a basis of the span, chosen greedily in order.
pub fn default_complement(ideal: &Ideal, p: &BiPoly) -> Result<[BiPoly; 2]> {
    let mut span = RowSpan::new(GEN_DEGREE.dim());
    for f in [p * &BiPoly::u(), p * &BiPoly::v()] {
        if coordinates_in(ideal, &f).is_none() {
            return Err(Error::Inconsistent(format!("{f} is not in the span of the generators")));
        }
        span.insert(&f.coeffs());
    }
    let chosen: Vec<BiPoly> = ideal
        .gens()
        .iter()
        .filter(|g| span.insert(&g.coeffs()))
        .cloned()
        .collect();
    match <[BiPoly; 2]>::try_from(chosen) {
        Ok(c) => Ok(c),
        Err(v) => Err(Error::Inconsistent(format!(
            "complement of dimension {} instead of 2",
            v.len()
        ))),
    }
}

pub fn q_invariant(ideal: &Ideal, p: &BiPoly) -> Result<BiPoly> {
    let c = default_complement(ideal, p)?;
    q_invariant_with(ideal, p, &c)
}

/// The determinant of the 2×2 matrix of (0,1)-forms obtained by reading the
/// complement modulo `p` in `R_{2,0}/<p> ⊗ R_{0,1}`, normalized to be monic.
pub fn q_invariant_with(ideal: &Ideal, p: &BiPoly, complement: &[BiPoly; 2]) -> Result<BiPoly> {
    if p.degree() != BiDegree::new(2, 0) || p.is_zero() {
        return Err(Error::Dimension(format!("p must be a nonzero (2,0) form, got {p:?}")));
    }
    let mut span = RowSpan::new(GEN_DEGREE.dim());
    for f in [p * &BiPoly::u(), p * &BiPoly::v()]
        .iter()
        .chain(complement.iter())
    {
        if coordinates_in(ideal, f).is_none() {
            return Err(Error::Inconsistent(format!("{f} is not in the span of the generators")));
        }
        if !span.insert(&f.coeffs()) {
            return Err(Error::Inconsistent("complement is not independent modulo pu, pv".into()));
        }
    }
    let pc = QMatrix::from_rows(vec![p.coeffs()]).expect("one row");
    let w = kernel_basis(&pc);
    let dot = |a: &[Scalar], b: &[Scalar]| a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y);
    let entry = |k: usize, f: &BiPoly| {
        let (fu, fv) = f.split_uv().expect("bidegree (2,1)");
        let cu = dot(&w[k], &fu.coeffs());
        let cv = dot(&w[k], &fv.coeffs());
        BiPoly::from_coeffs(BiDegree::new(0, 1), &[cu, cv])
    };
    let a = [
        [entry(0, &complement[0]), entry(0, &complement[1])],
        [entry(1, &complement[0]), entry(1, &complement[1])],
    ];
    let q = &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0]);
    if q.is_zero() {
        return Err(Error::QVanishes);
    }
    Ok(q.monic())
}

pub fn embedded_primes(report: &TypeReport) -> Result<Vec<PrimeDescriptor>> {
    let m = PrimeDescriptor {
        kind: PrimeKind::MaximalIdeal,
        linear_form: None,
    };
    let existence = PrimeDescriptor {
        kind: PrimeKind::ExistenceOnly,
        linear_form: None,
    };
    Ok(match report.numerical_type {
        SurfaceType::T1 | SurfaceType::T3 => vec![m],
        SurfaceType::T2 | SurfaceType::T4 => vec![m, existence],
        SurfaceType::T6 => Vec::new(),
        SurfaceType::T5a | SurfaceType::T5b => {
            let q = report.q.as_ref().ok_or(Error::QVanishes)?;
            let f = factor_binary_quadratic(q)?;
            match f.kind {
                QuadraticKind::DoubleRoot => vec![PrimeDescriptor {
                    kind: PrimeKind::StPlusLinear,
                    linear_form: Some(LinearForm::Rational(f.factors[0].clone())),
                }],
                QuadraticKind::SplitRational => f
                    .factors
                    .iter()
                    .map(|l| PrimeDescriptor {
                        kind: PrimeKind::StPlusLinear,
                        linear_form: Some(LinearForm::Rational(l.clone())),
                    })
                    .collect(),
                QuadraticKind::IrrationalConjugatePair => (0..2)
                    .map(|_| PrimeDescriptor {
                        kind: PrimeKind::StPlusLinear,
                        linear_form: Some(LinearForm::ConjugateRoot {
                            quadratic: q.clone(),
                            discriminant: f.discriminant.clone(),
                        }),
                    })
                    .collect(),
            }
        }
    })
}

/// True iff every partial derivative of `f` vanishes identically on the
/// curve `(a:b) ↦ (c_0(a,b), .., c_3(a,b))`, the `c_i` being forms in `s,t`.
pub fn verify_singular_component(f: &XPoly, curve: &[BiPoly; 4]) -> bool {
    if curve.iter().all(BiPoly::is_zero) {
        return false;
    }
    f.partials().iter().all(|d| d.substitute(curve).is_zero())
}

/// Parameterization `(a:b) ↦ a·k1 + b·k2` of the line spanned by two points.
pub fn line_through(k1: &[Scalar], k2: &[Scalar]) -> [BiPoly; 4] {
    std::array::from_fn(|i| {
        BiPoly::from_coeffs(BiDegree::new(1, 0), &[k1[i].clone(), k2[i].clone()])
    })
}

/// Generator basis in which the linear syzygy involves only the first two generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    /// Row `i` expresses the `i`-th adapted generator in the original generators.
    pub change: QMatrix,
    pub gens: Vec<BiPoly>,
}

pub fn adapted_basis(ideal: &Ideal, report: &TypeReport) -> Result<AdaptedBasis> {
    let lead: Vec<BiPoly> = match (report.numerical_type.number(), &report.p) {
        (5 | 6, Some(p)) => vec![p * &BiPoly::u(), p * &BiPoly::v()],
        (3 | 4, Some(p)) => vec![p * &BiPoly::s(), p * &BiPoly::t()],
        _ => Vec::new(),
    };
    let mut span = RowSpan::new(GEN_DEGREE.dim());
    let mut rows = Vec::new();
    let mut gens = Vec::new();
    for f in &lead {
        let c = coordinates_in(ideal, f)
            .ok_or_else(|| Error::Inconsistent(format!("{f} is not in the span of the generators")))?;
        span.insert(&f.coeffs());
        rows.push(c);
        gens.push(f.clone());
    }
    for (i, g) in ideal.gens().iter().enumerate() {
        if gens.len() == 4 {
            break;
        }
        if span.insert(&g.coeffs()) {
            let mut e = vec![Scalar::zero(); 4];
            e[i] = Scalar::one();
            rows.push(e);
            gens.push(g.clone());
        }
    }
    Ok(AdaptedBasis {
        change: QMatrix::from_rows(rows)?,
        gens,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLine {
    /// Indices `(i, j)` of the adapted coordinates cutting out the line.
    pub adapted: (usize, usize),
    /// The two defining linear forms in the original coordinates `x0..x3`.
    pub forms: [XPoly; 2],
}

impl fmt::Display for SingularLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({}, {})", self.forms[0], self.forms[1])
    }
}

/// Coordinate lines `V(x'_i, x'_j)` of the adapted basis along which `f` is singular.
pub fn singular_line_candidates(ideal: &Ideal, report: &TypeReport, f: &XPoly) -> Result<Vec<SingularLine>> {
    let basis = adapted_basis(ideal, report)?;
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let rows = QMatrix::from_rows(vec![basis.change.row(i).to_vec(), basis.change.row(j).to_vec()])?;
            let k = kernel_basis(&rows);
            let curve = line_through(&k[0], &k[1]);
            if verify_singular_component(f, &curve) {
                out.push(SingularLine {
                    adapted: (i, j),
                    forms: [
                        XPoly::linear(basis.change.row(i)).normalized(),
                        XPoly::linear(basis.change.row(j)).normalized(),
                    ],
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(t: &[&str]) -> Ideal {
        Ideal::parse(t).unwrap()
    }

    #[test]
    fn decomposable_bilinear_forms() {
        let p = crate::parse::parse_poly("s*u + s*v + t*u + t*v").unwrap();
        assert!(is_decomposable_11(&p));
        let p = crate::parse::parse_poly("s*u + t*v").unwrap();
        assert!(!is_decomposable_11(&p));
    }

    #[test]
    fn basepoints_are_rejected() {
        let i = ex(&["s^2*u", "s*t*u", "t^2*u", "s*t*v"]);
        assert!(matches!(classify(&i), Err(Error::NotBasepointFree(_))));
    }

    #[test]
    fn type_5a_data() {
        let i = ex(&["s^2*u", "s^2*v", "t^2*u", "t^2*v + s*t*v"]);
        let r = classify(&i).unwrap();
        assert_eq!(r.numerical_type, SurfaceType::T5a);
        assert!(r.p.as_ref().unwrap().is_scalar_multiple_of(&crate::parse::parse_poly("s^2").unwrap()));
        assert_eq!(r.q.as_ref().unwrap(), &crate::parse::parse_poly("u*v").unwrap());
        let shown: Vec<String> = r.embedded_primes.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["<s,t,u>", "<s,t,v>"]);
    }

    #[test]
    fn explicit_complement() {
        let i = ex(&["s^2*u", "s^2*v", "t^2*u", "t^2*v + s*t*v"]);
        let p = crate::parse::parse_poly("s^2").unwrap();
        let c = [
            crate::parse::parse_poly("t^2*u + s^2*v").unwrap(),
            crate::parse::parse_poly("t^2*v + s*t*v - 3*t^2*u").unwrap(),
        ];
        assert_eq!(q_invariant_with(&i, &p, &c).unwrap(), crate::parse::parse_poly("u*v").unwrap());
        let bad = [c[0].clone(), crate::parse::parse_poly("s^2*u").unwrap()];
        assert!(q_invariant_with(&i, &p, &bad).is_err());
    }
}
