//! The dual picture: the annihilator of `U` pulled back to the dual `P^1 x P^1`.
//!
//! Coordinates `X0..X5` on the dual of `R_{2,1}` are numbered after the basis
//! `s²u, stu, t²u, s²v, stv, t²v`. Under the apolar pairing the dual monomials
//! are `½S²U, STU, ½T²U, ½S²V, STV, ½T²V`; the coefficient pairing drops the
//! halves. The two annihilating forms pull back to (2,1) forms in `S,T,U,V`
//! whose common factor predicts the numerical type.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::bipoly::{
    divide_exact, factor_binary_quadratic, monomial_basis, multiplication_matrix, BiDegree, BiMonomial, BiPoly,
    QuadraticKind, DUAL_VARS,
};
use crate::classify::{is_decomposable_11, SurfaceType, TypeReport};
use crate::error::{Error, Result};
use crate::exactla::{frac, kernel_basis, QMatrix, Scalar};
use crate::ideal::{primitive_point, rational_roots, Ideal, GEN_DEGREE};

/// Position in `X0..X5` of each canonical basis monomial of `R_{2,1}`.
pub const CANONICAL_TO_DUAL: [usize; 6] = [0, 3, 1, 4, 2, 5];

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum DualPairing {
    #[default]
    Apolar,
    Coefficient,
}

/// Linear form `Σ c_k X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualForm(pub [Scalar; 6]);

impl DualForm {
    pub fn from_canonical(w: &[Scalar]) -> Self {
        let mut c: [Scalar; 6] = std::array::from_fn(|_| Scalar::zero());
        for (i, x) in w.iter().enumerate() {
            c[CANONICAL_TO_DUAL[i]] = x.clone();
        }
        DualForm(c)
    }

    pub fn to_canonical(&self) -> Vec<Scalar> {
        CANONICAL_TO_DUAL.iter().map(|&k| self.0[k].clone()).collect()
    }

    /// Value on a (2,1) form under the coefficient pairing.
    pub fn apply(&self, f: &BiPoly) -> Scalar {
        self.to_canonical()
            .iter()
            .zip(f.coeffs())
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }
}

impl fmt::Display for DualForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "X{k}")?;
            } else {
                write!(f, "{a}*X{k}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn u_perp(ideal: &Ideal) -> [DualForm; 2] {
    let k = kernel_basis(&ideal.coefficient_matrix());
    assert_eq!(k.len(), 2, "four independent generators leave a 2-dimensional annihilator");
    [DualForm::from_canonical(&k[0]), DualForm::from_canonical(&k[1])]
}

fn dual_weight(m: &BiMonomial, pairing: DualPairing) -> Scalar {
    match pairing {
        DualPairing::Apolar if m.0[0] == 2 || m.0[1] == 2 => frac(1, 2),
        _ => Scalar::one(),
    }
}

/// Pullback with the apolar weights.
pub fn pullback_dual(l: &DualForm) -> BiPoly {
    pullback_dual_with(l, DualPairing::Apolar)
}

/// Replaces each `X_k` by its dual monomial in `S,T,U,V`.
pub fn pullback_dual_with(l: &DualForm, pairing: DualPairing) -> BiPoly {
    let w = l.to_canonical();
    let coeffs: Vec<Scalar> = monomial_basis(GEN_DEGREE)
        .iter()
        .zip(&w)
        .map(|(m, c)| c * dual_weight(m, pairing))
        .collect();
    BiPoly::from_coeffs(GEN_DEGREE, &coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonFactor {
    /// Monic common factor.
    pub g: BiPoly,
    /// `f_i = g · h_i` up to one common scalar.
    pub residuals: [BiPoly; 2],
}

impl CommonFactor {
    pub fn degree(&self) -> BiDegree {
        self.g.degree()
    }
}

const FACTOR_DEGREES: [BiDegree; 4] = [
    BiDegree::new(0, 1),
    BiDegree::new(1, 0),
    BiDegree::new(1, 1),
    BiDegree::new(2, 0),
];

/// Nonzero `(h1, h2)` of bidegree `(2,1) - ab` with `f1 h2 = f2 h1`, if any.
fn cofactor_pair(f1: &BiPoly, f2: &BiPoly, ab: BiDegree) -> Option<[BiPoly; 2]> {
    let hd = f1.degree().checked_sub(ab)?;
    let m1 = multiplication_matrix(f1, hd);
    let m2 = multiplication_matrix(f2, hd);
    let n = hd.dim();
    // unknowns (h1, h2): -f2·h1 + f1·h2 = 0
    let mut m = QMatrix::zeros(m1.rows(), 2 * n);
    for r in 0..m1.rows() {
        for c in 0..n {
            m.set(r, c, -m2.get(r, c).clone());
            m.set(r, n + c, m1.get(r, c).clone());
        }
    }
    let k = kernel_basis(&m);
    let v = k.first()?;
    Some([
        BiPoly::from_coeffs(hd, &v[..n]),
        BiPoly::from_coeffs(hd, &v[n..]),
    ])
}

pub fn common_factor(f1: &BiPoly, f2: &BiPoly) -> Result<Option<CommonFactor>> {
    if f1.is_zero() || f2.is_zero() {
        return Err(Error::ZeroInput);
    }
    let feasible: Vec<(BiDegree, [BiPoly; 2])> = FACTOR_DEGREES
        .iter()
        .filter_map(|&ab| cofactor_pair(f1, f2, ab).map(|h| (ab, h)))
        .collect();
    let maximal = feasible
        .iter()
        .find(|(ab, _)| feasible.iter().all(|(other, _)| other == ab || !ab.leq(*other)));
    let Some((_, h)) = maximal else {
        return Ok(None);
    };
    let g = divide_exact(f1, &h[0])?;
    let scale = g.leading().expect("nonzero").1.clone();
    let residuals = [h[0].scale(&scale), h[1].scale(&scale)];
    Ok(Some(CommonFactor {
        g: g.monic(),
        residuals,
    }))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ResidualKind {
    DistinctRoots,
    DoubleRoot,
    Infinite,
}

impl fmt::Display for ResidualKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidualKind::DistinctRoots => "distinct-roots",
            ResidualKind::DoubleRoot => "double-root",
            ResidualKind::Infinite => "infinite",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualStructure {
    pub kind: ResidualKind,
    /// `a1 b2 - a2 b1` for `h_i = a_i U + b_i V`.
    pub resultant: BiPoly,
    pub discriminant: Option<Scalar>,
    /// Common zeros `(S:T) x (U:V)` with rational coordinates.
    pub points: Vec<([Scalar; 2], [Scalar; 2])>,
}

pub fn residual_root_structure(h1: &BiPoly, h2: &BiPoly) -> Result<ResidualStructure> {
    let bil = BiDegree::new(1, 1);
    if h1.degree() != bil || h2.degree() != bil {
        return Err(Error::Dimension("residuals must be (1,1) forms".into()));
    }
    let (a1, b1) = h1.split_uv()?;
    let (a2, b2) = h2.split_uv()?;
    let res = &(&a1 * &b2) - &(&a2 * &b1);
    let shared = !h1.is_zero() && !h2.is_zero() && common_factor_any(h1, h2);
    if res.is_zero() || shared || h1.is_zero() || h2.is_zero() {
        let discriminant = (!res.is_zero()).then(|| factor_binary_quadratic(&res).map(|f| f.discriminant)).transpose()?;
        return Ok(ResidualStructure {
            kind: ResidualKind::Infinite,
            resultant: res,
            discriminant,
            points: Vec::new(),
        });
    }
    let f = factor_binary_quadratic(&res)?;
    let kind = if f.kind == QuadraticKind::DoubleRoot {
        ResidualKind::DoubleRoot
    } else {
        ResidualKind::DistinctRoots
    };
    let mut points = Vec::new();
    for st in rational_roots(&res) {
        let pt = [st[0].clone(), st[1].clone(), Scalar::zero(), Scalar::zero()];
        let m = QMatrix::from_rows(vec![vec![a1.eval(&pt), b1.eval(&pt)], vec![a2.eval(&pt), b2.eval(&pt)]])?;
        if let Some(k) = kernel_basis(&m).first() {
            points.push((st, primitive_point(&[k[0].clone(), k[1].clone()])));
        }
    }
    Ok(ResidualStructure {
        kind,
        resultant: res,
        discriminant: Some(f.discriminant),
        points,
    })
}

/// Whether two forms of one bidegree share a non-constant factor.
fn common_factor_any(f1: &BiPoly, f2: &BiPoly) -> bool {
    let d = f1.degree();
    [BiDegree::new(1, 0), BiDegree::new(0, 1)]
        .iter()
        .any(|ab| ab.leq(d) && cofactor_pair(f1, f2, *ab).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prediction {
    NotBasepointFree,
    Types(Vec<SurfaceType>),
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::NotBasepointFree => f.write_str("not basepoint free"),
            Prediction::Types(ts) => {
                let labels: Vec<&str> = ts.iter().map(|t| t.label()).collect();
                write!(f, "{{{}}}", labels.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    pub pairing: DualPairing,
    pub uperp: [DualForm; 2],
    pub pullbacks: [BiPoly; 2],
    pub factor: Option<CommonFactor>,
    pub residual: Option<ResidualStructure>,
    pub predicted: Prediction,
}

impl DualReport {
    pub fn pullback_strings(&self) -> [String; 2] {
        [self.pullbacks[0].fmt_with(&DUAL_VARS), self.pullbacks[1].fmt_with(&DUAL_VARS)]
    }
}

/// Types compatible with the absence of a common factor.
fn no_factor_types(pairing: DualPairing) -> Vec<SurfaceType> {
    use SurfaceType::*;
    match pairing {
        DualPairing::Coefficient => vec![T1, T2, T4],
        DualPairing::Apolar => vec![T1, T2, T3, T4, T5a, T5b],
    }
}

pub fn predict(factor: Option<&CommonFactor>, residual: Option<&ResidualStructure>, pairing: DualPairing) -> Prediction {
    use SurfaceType::*;
    let Some(cf) = factor else {
        return Prediction::Types(no_factor_types(pairing));
    };
    let d = cf.degree();
    match (d.m, d.n) {
        (0, 1) => Prediction::NotBasepointFree,
        (1, 1) if is_decomposable_11(&cf.g) => Prediction::NotBasepointFree,
        (1, 1) => Prediction::Types(vec![T3]),
        (2, 0) => Prediction::Types(vec![T6]),
        (1, 0) => match residual.map(|r| r.kind) {
            Some(ResidualKind::DistinctRoots) => Prediction::Types(vec![T5a]),
            Some(ResidualKind::DoubleRoot) => Prediction::Types(vec![T5b]),
            _ => Prediction::NotBasepointFree,
        },
        _ => Prediction::NotBasepointFree,
    }
}

pub fn dual_report(ideal: &Ideal) -> Result<DualReport> {
    dual_report_with(ideal, DualPairing::Apolar)
}

pub fn dual_report_with(ideal: &Ideal, pairing: DualPairing) -> Result<DualReport> {
    let uperp = u_perp(ideal);
    let pullbacks = [
        pullback_dual_with(&uperp[0], pairing),
        pullback_dual_with(&uperp[1], pairing),
    ];
    let factor = common_factor(&pullbacks[0], &pullbacks[1])?;
    let residual = match &factor {
        Some(cf) if cf.degree() == BiDegree::new(1, 0) => {
            Some(residual_root_structure(&cf.residuals[0], &cf.residuals[1])?)
        }
        _ => None,
    };
    let predicted = predict(factor.as_ref(), residual.as_ref(), pairing);
    Ok(DualReport {
        pairing,
        uperp,
        pullbacks,
        factor,
        residual,
        predicted,
    })
}

/// Whether the dual prediction agrees with the syzygy classification.
pub fn cross_check(dual: &DualReport, report: &TypeReport) -> bool {
    match &dual.predicted {
        Prediction::NotBasepointFree => false,
        Prediction::Types(ts) => ts.contains(&report.numerical_type),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn dual(text: &str) -> BiPoly {
        parse_poly(&text.to_lowercase()).unwrap()
    }

    #[test]
    fn pullbacks_of_coordinates() {
        let mut x = std::array::from_fn(|_| Scalar::zero());
        x[1] = Scalar::one();
        assert_eq!(pullback_dual(&DualForm(x.clone())), dual("S*T*U"));
        x[1] = Scalar::zero();
        x[0] = Scalar::one();
        assert_eq!(pullback_dual(&DualForm(x.clone())), dual("1/2*S^2*U"));
        x[0] = Scalar::zero();
        x[4] = Scalar::one();
        x[5] = -Scalar::one();
        assert_eq!(pullback_dual(&DualForm(x)), dual("S*T*V - 1/2*T^2*V"));
    }

    #[test]
    fn example_common_factor() {
        let cf = common_factor(&dual("S*T*U"), &dual("S*T*V - 1/2*T^2*V")).unwrap().unwrap();
        assert_eq!(cf.g, dual("T"));
        assert_eq!(cf.residuals, [dual("S*U"), dual("S*V - 1/2*T*V")]);
        assert!(common_factor(&dual("S^2*U"), &dual("T^2*V")).unwrap().is_none());
    }

    #[test]
    fn example_residual_roots() {
        let r = residual_root_structure(&dual("S*U"), &dual("S*V - 1/2*T*V")).unwrap();
        assert_eq!(r.kind, ResidualKind::DistinctRoots);
        let pts: Vec<String> = r
            .points
            .iter()
            .map(|(a, b)| format!("({}:{})x({}:{})", a[0], a[1], b[0], b[1]))
            .collect();
        assert_eq!(pts, ["(0:1)x(1:0)", "(1:2)x(0:1)"]);
    }

    #[test]
    fn shared_factor_residuals_are_infinite() {
        let r = residual_root_structure(&dual("S*U"), &dual("T*U")).unwrap();
        assert_eq!(r.kind, ResidualKind::Infinite);
        let r = residual_root_structure(&dual("S*U"), &dual("S*V")).unwrap();
        assert_eq!(r.kind, ResidualKind::Infinite);
        assert_eq!(r.resultant, dual("S^2"));
    }
}
