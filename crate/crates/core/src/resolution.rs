//! Syzygies and minimal bigraded free resolutions, one bidegree at a time.
//!
//! A free module is described by the shifts of its generators; a shift
//! `(a,b)` stands for the summand `R(-a,-b)`. Level 0 is `R` itself, level 1
//! holds the ideal generators, and the map from level `h+1` to level `h` is a
//! matrix of forms whose columns are the chosen minimal syzygies.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::bipoly::{monomial_basis, multiplication_matrix, BiDegree, BiPoly};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, primitive_row, rref, solve, QMatrix, RowSpan, Scalar};
use crate::ideal::{hilbert_function, Ideal};

pub const DEFAULT_WINDOW: BiDegree = BiDegree::new(6, 5);

/// Highest homological level a resolution over `k[s,t,u,v]` can reach.
const MAX_LEVEL: usize = 4;

/// An element of a free module in a single bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyVector {
    pub degree: BiDegree,
    /// One coordinate per generator of the source module; coordinate `c` has
    /// bidegree `degree - shift_c` (or is zero when that is negative).
    pub coords: Vec<BiPoly>,
}

/// Map between free modules; `columns[c][r]` is the entry in row `r`, column `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub target: Vec<BiDegree>,
    pub source: Vec<BiDegree>,
    pub columns: Vec<Vec<BiPoly>>,
}

impl Differential {
    pub fn entry(&self, r: usize, c: usize) -> &BiPoly {
        &self.columns[c][r]
    }

    /// `self ∘ next`, as a matrix of forms indexed by (row of self, column of next).
    pub fn compose(&self, next: &Differential) -> Vec<Vec<BiPoly>> {
        next.columns
            .iter()
            .map(|col| {
                (0..self.target.len())
                    .map(|r| {
                        let mut acc: Option<BiPoly> = None;
                        for (k, x) in col.iter().enumerate() {
                            let e = self.entry(r, k);
                            if x.is_zero() || e.is_zero() {
                                continue;
                            }
                            let term = e * x;
                            acc = Some(match acc {
                                Some(a) => &a + &term,
                                None => term,
                            });
                        }
                        acc.unwrap_or_else(|| BiPoly::zero(BiDegree::new(0, 0)))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Coordinates of the flattened domain `⊕_c R_{δ - shift_c}`.
struct Layout {
    blocks: Vec<Option<(BiDegree, usize)>>,
    dim: usize,
}

fn layout(shifts: &[BiDegree], delta: BiDegree) -> Layout {
    let mut off = 0;
    let blocks = shifts
        .iter()
        .map(|s| {
            delta.checked_sub(*s).map(|d| {
                let b = (d, off);
                off += d.dim();
                b
            })
        })
        .collect();
    Layout { blocks, dim: off }
}

fn map_matrix(d: &Differential, delta: BiDegree) -> (QMatrix, Layout) {
    let dom = layout(&d.source, delta);
    let cod = layout(&d.target, delta);
    let mut m = QMatrix::zeros(cod.dim, dom.dim);
    for (c, blk) in dom.blocks.iter().enumerate() {
        let Some((from, coff)) = blk else { continue };
        for (r, rblk) in cod.blocks.iter().enumerate() {
            let e = d.entry(r, c);
            if e.is_zero() {
                continue;
            }
            let (_, roff) = rblk.expect("entry degree fits");
            let mm = multiplication_matrix(e, *from);
            for i in 0..mm.rows() {
                for j in 0..mm.cols() {
                    let x = mm.get(i, j);
                    if !x.is_zero() {
                        m.set(roff + i, coff + j, x.clone());
                    }
                }
            }
        }
    }
    (m, dom)
}

fn unflatten(v: &[Scalar], lay: &Layout, delta: BiDegree) -> SyzygyVector {
    let coords = lay
        .blocks
        .iter()
        .map(|b| match b {
            Some((d, off)) => BiPoly::from_coeffs(*d, &v[*off..*off + d.dim()]),
            None => BiPoly::zero(BiDegree::new(0, 0)),
        })
        .collect();
    SyzygyVector {
        degree: delta,
        coords,
    }
}

/// Kernel of `⊕_c R_{δ - shift_c} -> R_δ`, `(h_c) ↦ Σ h_c g_c`.
pub fn syzygies_in_bidegree(gens: &[(BiPoly, BiDegree)], delta: BiDegree) -> Vec<SyzygyVector> {
    let d = Differential {
        target: vec![BiDegree::new(0, 0)],
        source: gens.iter().map(|(_, s)| *s).collect(),
        columns: gens.iter().map(|(g, _)| vec![g.clone()]).collect(),
    };
    module_syzygies(&d, delta)
}

/// Kernel basis with each vector scaled to a primitive integer vector.
fn integral_kernel(m: &QMatrix) -> Vec<Vec<Scalar>> {
    kernel_basis(m).iter().map(|v| primitive_row(v)).collect()
}

fn module_syzygies(d: &Differential, delta: BiDegree) -> Vec<SyzygyVector> {
    let (m, lay) = map_matrix(d, delta);
    integral_kernel(&m)
        .iter()
        .map(|v| unflatten(v, &lay, delta))
        .collect()
}

/// Bidegrees of the window in processing order: by `a+b`, then larger `a` first.
pub fn window_order(window: BiDegree) -> Vec<BiDegree> {
    let mut ds: Vec<BiDegree> = (0..=window.m)
        .flat_map(|a| (0..=window.n).map(move |b| BiDegree::new(a, b)))
        .collect();
    ds.sort_by_key(|d| (d.total(), std::cmp::Reverse(d.m)));
    ds
}

/// Moves a flat kernel vector from `δ'` to `δ' + deg(var)` by multiplying with variable `var`.
fn shift_by_var(v: &[Scalar], from: &Layout, to: &Layout, var: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); to.dim];
    for (fb, tb) in from.blocks.iter().zip(&to.blocks) {
        let (Some((fd, foff)), Some((_, toff))) = (fb, tb) else { continue };
        for (i, mon) in monomial_basis(*fd).iter().enumerate() {
            let x = &v[foff + i];
            if x.is_zero() {
                continue;
            }
            let mut e = mon.0;
            e[var] += 1;
            out[toff + crate::bipoly::BiMonomial(e).basis_index()] = x.clone();
        }
    }
    out
}

/// Bidegrees one step below `delta`, with the variables that lead back up.
fn lower_neighbours(delta: BiDegree) -> Vec<(BiDegree, [usize; 2])> {
    let mut out = Vec::new();
    if delta.m > 0 {
        out.push((BiDegree::new(delta.m - 1, delta.n), [0, 1]));
    }
    if delta.n > 0 {
        out.push((BiDegree::new(delta.m, delta.n - 1), [2, 3]));
    }
    out
}

/// Number of minimal syzygies on `gens` in the absolute bidegree `delta`.
pub fn minimal_syzygy_count(gens: &[BiPoly], delta: BiDegree) -> usize {
    let d = generator_row(gens);
    let (m, lay) = map_matrix(&d, delta);
    let mut span = RowSpan::new(lay.dim);
    for (prev, vars) in lower_neighbours(delta) {
        let (pm, play) = map_matrix(&d, prev);
        for k in kernel_basis(&pm) {
            for var in vars {
                span.insert(&shift_by_var(&k, &play, &lay, var));
            }
        }
    }
    let base = span.rank();
    for k in kernel_basis(&m) {
        span.insert(&k);
    }
    span.rank() - base
}

/// Minimal generators of the kernel of `d`, in processing order.
fn minimal_kernel_generators(d: &Differential, window: BiDegree) -> Result<Vec<SyzygyVector>> {
    let order = window_order(window);
    let kernels: Vec<(Vec<Vec<Scalar>>, Layout)> = order
        .par_iter()
        .map(|&delta| {
            let (m, lay) = map_matrix(d, delta);
            (integral_kernel(&m), lay)
        })
        .collect();
    let index: BTreeMap<BiDegree, usize> = order.iter().enumerate().map(|(i, d)| (*d, i)).collect();
    let mut out = Vec::new();
    for (i, &delta) in order.iter().enumerate() {
        let (kernel, lay) = &kernels[i];
        if kernel.is_empty() {
            continue;
        }
        let mut span = RowSpan::new(lay.dim);
        'fill: for (prev, vars) in lower_neighbours(delta) {
            let (pk, play) = &kernels[index[&prev]];
            for k in pk {
                for var in vars {
                    span.insert(&shift_by_var(k, play, lay, var));
                    // The shifted vectors lie in K(δ), so a full span leaves nothing new.
                    if span.rank() == kernel.len() {
                        break 'fill;
                    }
                }
            }
        }
        if span.rank() == kernel.len() {
            continue;
        }
        for k in kernel {
            if span.insert(k) {
                if delta.m == window.m || delta.n == window.n {
                    return Err(Error::WindowExhausted { window, at: delta });
                }
                out.push(unflatten(k, lay, delta));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSyzygies {
    /// Keyed by the bidegree of the syzygy coefficients (absolute degree minus (2,1)).
    pub counts: BTreeMap<BiDegree, usize>,
    pub representatives: Vec<SyzygyVector>,
}

impl MinimalSyzygies {
    pub fn count(&self, d: BiDegree) -> usize {
        self.counts.get(&d).copied().unwrap_or(0)
    }
}

pub fn minimal_first_syzygies(ideal: &Ideal, window: BiDegree) -> Result<MinimalSyzygies> {
    let d = generator_row(ideal.gens());
    let reps = minimal_kernel_generators(&d, window)?;
    let mut counts = BTreeMap::new();
    for r in &reps {
        let rel = r.degree.checked_sub(crate::ideal::GEN_DEGREE).expect("first syzygies lie above (2,1)");
        *counts.entry(rel).or_insert(0) += 1;
    }
    Ok(MinimalSyzygies {
        counts,
        representatives: reps,
    })
}

fn generator_row(gens: &[BiPoly]) -> Differential {
    Differential {
        target: vec![BiDegree::new(0, 0)],
        source: gens.iter().map(BiPoly::degree).collect(),
        columns: gens.iter().map(|g| vec![g.clone()]).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// `modules[h]` lists the shifts of the generators of `F_h`; `modules[0] = [(0,0)]`.
    pub modules: Vec<Vec<BiDegree>>,
    /// `differentials[h]` maps `F_{h+1}` to `F_h`.
    pub differentials: Vec<Differential>,
    pub window: BiDegree,
}

impl Resolution {
    /// Projective dimension of `R/I`.
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    /// Checks that consecutive differentials compose to zero.
    pub fn check_complex(&self) -> Result<()> {
        for (h, pair) in self.differentials.windows(2).enumerate() {
            let prod = pair[0].compose(&pair[1]);
            if prod.iter().flatten().any(|x| !x.is_zero()) {
                return Err(Error::Inconsistent(format!(
                    "d{} ∘ d{} is nonzero",
                    h + 1,
                    h + 2
                )));
            }
        }
        Ok(())
    }

    /// `HF(R/I, δ)` predicted by the alternating sum of the free modules.
    pub fn euler_hilbert(&self, delta: BiDegree) -> i64 {
        let mut total = 0i64;
        for (h, shifts) in self.modules.iter().enumerate() {
            let sign = if h % 2 == 0 { 1 } else { -1 };
            for s in shifts {
                if let Some(d) = delta.checked_sub(*s) {
                    total += sign * d.dim() as i64;
                }
            }
        }
        total
    }

    /// Compares the alternating sum with the Hilbert function on every bidegree of the window.
    pub fn check_euler(&self, gens: &[BiPoly]) -> Result<()> {
        for delta in window_order(self.window) {
            let hf = hilbert_function(gens, delta) as i64;
            let e = self.euler_hilbert(delta);
            if hf != e {
                return Err(Error::Inconsistent(format!(
                    "Hilbert function {hf} but alternating sum {e} at {delta}"
                )));
            }
        }
        Ok(())
    }
}

fn check_minimal_generators(gens: &[BiPoly]) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::NonMinimalGenerators);
        }
        let d = g.degree();
        let mut span = RowSpan::new(d.dim());
        for (j, h) in gens.iter().enumerate() {
            if j == i {
                continue;
            }
            let Some(from) = d.checked_sub(h.degree()) else { continue };
            let m = multiplication_matrix(h, from);
            for c in 0..m.cols() {
                span.insert(&m.column(c));
            }
        }
        if span.contains(&g.coeffs()) {
            return Err(Error::NonMinimalGenerators);
        }
    }
    Ok(())
}

/// Minimal free resolution of `R/J` for `J` generated minimally by bihomogeneous `gens`.
pub fn minimal_free_resolution(gens: &[BiPoly], window: BiDegree) -> Result<Resolution> {
    if gens.is_empty() {
        return Err(Error::ZeroInput);
    }
    check_minimal_generators(gens)?;
    let Some((echelon, change)) = echelon_basis(gens) else {
        return resolve_basis(gens, window);
    };
    // Resolve the sparser basis, then express the first syzygies in the original one.
    let mut res = resolve_basis(&echelon, window)?;
    res.differentials[0] = generator_row(gens);
    if let Some(d2) = res.differentials.get_mut(1) {
        for col in &mut d2.columns {
            let old = std::mem::take(col);
            *col = (0..gens.len())
                .map(|j| {
                    old.iter().enumerate().fold(BiPoly::zero(BiDegree::new(0, 0)), |acc, (i, h)| {
                        let c = change.get(i, j);
                        if c.is_zero() || h.is_zero() {
                            acc
                        } else {
                            &acc + &h.scale(c)
                        }
                    })
                })
                .collect();
        }
    }
    res.check_complex()?;
    Ok(res)
}

/// For generators of a single bidegree: primitive integer rows of the reduced
/// echelon form of their coefficients, and `G` with `echelon = G · gens`.
fn echelon_basis(gens: &[BiPoly]) -> Option<(Vec<BiPoly>, QMatrix)> {
    let d = gens[0].degree();
    if gens.iter().any(|g| g.degree() != d) {
        return None;
    }
    let coeffs: Vec<Vec<Scalar>> = gens.iter().map(BiPoly::coeffs).collect();
    let c = QMatrix::from_rows(coeffs).ok()?;
    let red = rref(&c);
    let ct = c.transpose();
    let mut rows = Vec::with_capacity(gens.len());
    let mut change = Vec::with_capacity(gens.len());
    for k in 0..red.rank {
        let row = primitive_row(red.matrix.row(k));
        change.push(solve(&ct, &row)?);
        rows.push(BiPoly::from_coeffs(d, &row));
    }
    Some((rows, QMatrix::from_rows(change).ok()?))
}

fn resolve_basis(gens: &[BiPoly], window: BiDegree) -> Result<Resolution> {
    let first = generator_row(gens);
    let mut modules = vec![vec![BiDegree::new(0, 0)], first.source.clone()];
    let mut differentials = vec![first];
    loop {
        let last = differentials.last().unwrap();
        let found = minimal_kernel_generators(last, window)?;
        if found.is_empty() {
            break;
        }
        if modules.len() > MAX_LEVEL {
            return Err(Error::Inconsistent(format!(
                "resolution longer than {MAX_LEVEL}"
            )));
        }
        let d = Differential {
            target: last.source.clone(),
            source: found.iter().map(|s| s.degree).collect(),
            columns: found.into_iter().map(|s| s.coords).collect(),
        };
        modules.push(d.source.clone());
        differentials.push(d);
    }
    let res = Resolution {
        modules,
        differentials,
        window,
    };
    res.check_complex()?;
    Ok(res)
}

pub fn resolve_ideal(ideal: &Ideal, window: BiDegree) -> Result<Resolution> {
    minimal_free_resolution(ideal.gens(), window)
}

/// Ranks of the free modules by homological level (from 1) and shift.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub levels: BTreeMap<usize, BTreeMap<BiDegree, usize>>,
}

impl BettiTable {
    pub fn from_levels(levels: &[&[(u32, u32, usize)]]) -> Self {
        let mut t = BettiTable::default();
        for (h, lv) in levels.iter().enumerate() {
            let entry = t.levels.entry(h + 1).or_default();
            for &(a, b, r) in lv.iter() {
                *entry.entry(BiDegree::new(a, b)).or_insert(0) += r;
            }
        }
        t
    }

    pub fn rank(&self, h: usize) -> usize {
        self.levels.get(&h).map_or(0, |l| l.values().sum())
    }

    pub fn get(&self, h: usize, d: BiDegree) -> usize {
        self.levels.get(&h).and_then(|l| l.get(&d)).copied().unwrap_or(0)
    }

    pub fn length(&self) -> usize {
        self.levels.keys().next_back().copied().unwrap_or(0)
    }

    /// `(-a,-b)^r ⊕ ...` for one level.
    pub fn level_string(&self, h: usize) -> String {
        let Some(l) = self.levels.get(&h) else {
            return "0".into();
        };
        l.iter()
            .map(|(d, r)| {
                if *r == 1 {
                    format!("(-{},-{})", d.m, d.n)
                } else {
                    format!("(-{},-{})^{r}", d.m, d.n)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.levels.keys().map(|&h| format!("F{h}: {}", self.level_string(h))).collect();
        f.write_str(&rows.join("\n"))
    }
}

pub fn betti_table(r: &Resolution) -> BettiTable {
    let mut t = BettiTable::default();
    for (h, shifts) in r.modules.iter().enumerate().skip(1) {
        let l = t.levels.entry(h).or_default();
        for s in shifts {
            *l.entry(*s).or_insert(0) += 1;
        }
    }
    t
}
