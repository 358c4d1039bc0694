//! Implicit equations from the (1,1) strand of the syzygy module.
//!
//! The syzygies whose coordinates all lie in `R_{1,1}` form a 4-dimensional
//! space for basepoint-free input. Writing each one as a column of linear
//! forms in `x0..x3`, indexed by the monomials `su, sv, tu, tv`, gives a 4×4
//! matrix whose determinant vanishes on the image surface.

use crate::bipoly::{monomial_basis, BiDegree, BiPoly};
use crate::classify::{classify, SurfaceType};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, QMatrix, Scalar};
use crate::ideal::{Ideal, GEN_DEGREE};
use crate::resolution::{syzygies_in_bidegree, SyzygyVector};
use crate::xpoly::{x_monomials, xdet, XPoly, XPolyMatrix};

const MU: BiDegree = BiDegree::new(1, 1);

pub fn z1_basis_11(ideal: &Ideal) -> Result<Vec<SyzygyVector>> {
    let gens: Vec<(BiPoly, BiDegree)> = ideal.gens().iter().map(|g| (g.clone(), GEN_DEGREE)).collect();
    let syz = syzygies_in_bidegree(&gens, GEN_DEGREE + MU);
    if syz.len() != 4 {
        return Err(Error::UnexpectedZ1Dimension(syz.len()));
    }
    Ok(syz)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D1Matrix {
    /// Rows indexed by `[su, sv, tu, tv]`, one column per syzygy.
    pub matrix: XPolyMatrix,
    pub syzygies: Vec<SyzygyVector>,
}

/// Column `c` holds `Σ_i x_i · (coefficients of coordinate i of syzygy c)`.
pub fn d1_from_syzygies(syzygies: &[SyzygyVector]) -> Result<D1Matrix> {
    let rows = monomial_basis(MU);
    let mut entries = Vec::with_capacity(rows.len() * syzygies.len());
    for r in &rows {
        for syz in syzygies {
            let c: Vec<Scalar> = syz.coords.iter().map(|h| h.coefficient(r)).collect();
            entries.push(XPoly::linear(&c));
        }
    }
    Ok(D1Matrix {
        matrix: XPolyMatrix::new(rows.len(), syzygies.len(), entries)?,
        syzygies: syzygies.to_vec(),
    })
}

pub fn assemble_d1(ideal: &Ideal) -> Result<D1Matrix> {
    d1_from_syzygies(&z1_basis_11(ideal)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitResult {
    pub det: XPoly,
    /// The implicit equation, normalized so its first coefficient is 1.
    pub reduced: XPoly,
    /// `det = c · reduced^multiplicity`.
    pub multiplicity: u32,
    pub birational: bool,
}

pub fn implicit_equation(ideal: &Ideal) -> Result<ImplicitResult> {
    let ty = classify(ideal)?.numerical_type;
    implicit_equation_for(ideal, ty)
}

/// As [`implicit_equation`], reusing a known type.
pub fn implicit_equation_for(ideal: &Ideal, ty: SurfaceType) -> Result<ImplicitResult> {
    let det = xdet(&assemble_d1(ideal)?.matrix)?;
    if det.is_zero() {
        return Err(Error::DegenerateDeterminant);
    }
    if ty != SurfaceType::T6 {
        return Ok(ImplicitResult {
            reduced: det.normalized(),
            det,
            multiplicity: 1,
            birational: true,
        });
    }
    let quadrics = kernel_oracle(ideal, 2);
    if quadrics.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "expected one quadric through the image, found {}",
            quadrics.len()
        )));
    }
    let q = quadrics[0].normalized();
    if det.ratio_to(&q.pow(2)).is_none() {
        return Err(Error::Inconsistent("determinant is not a multiple of the squared quadric".into()));
    }
    Ok(ImplicitResult {
        det,
        reduced: q,
        multiplicity: 2,
        birational: false,
    })
}

/// Basis of the degree-`d` forms vanishing on the image, as the kernel of
/// `k[x]_d -> R_{2d,d}`, `F ↦ F(p0, .., p3)`.
pub fn kernel_oracle(ideal: &Ideal, d: u32) -> Vec<XPoly> {
    let mons = x_monomials(d);
    let target = BiDegree::new(2 * d, d);
    let cols: Vec<Vec<Scalar>> = mons
        .iter()
        .map(|m| {
            let f = XPoly::monomial(*m, Scalar::from_integer(1.into()));
            let img = f.substitute(ideal.gens());
            if img.is_zero() {
                vec![Scalar::from_integer(0.into()); target.dim()]
            } else {
                img.coeffs()
            }
        })
        .collect();
    let m = QMatrix::from_columns(target.dim(), &cols);
    kernel_basis(&m)
        .into_iter()
        .map(|v| {
            XPoly::from_terms(d, v.into_iter().zip(&mons).map(|(c, m)| (c, m.0)))
                .expect("degree-d monomials")
        })
        .collect()
}

/// Confirms the determinant against the evaluation kernel in the degree where
/// the image equation lives.
pub fn oracle_check(ideal: &Ideal, result: &ImplicitResult) -> Result<()> {
    let d = result.reduced.degree();
    let k = kernel_oracle(ideal, d);
    if k.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "evaluation kernel in degree {d} has dimension {}",
            k.len()
        )));
    }
    if !k[0].is_scalar_multiple_of(&result.reduced) {
        return Err(Error::Inconsistent("evaluation kernel disagrees with the determinant".into()));
    }
    if result.det.ratio_to(&result.reduced.pow(result.multiplicity)).is_none() {
        return Err(Error::Inconsistent("determinant is not a power of the reduced equation".into()));
    }
    Ok(())
}
