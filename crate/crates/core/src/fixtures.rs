//! Reference ideals with known invariants, used by tests and examples.

use crate::bipoly::BiPoly;
use crate::classify::SurfaceType;
use crate::ideal::Ideal;
use crate::parse::parse_poly;
use crate::resolution::BettiTable;

/// One example ideal per numerical type.
pub fn type_example_gens(ty: SurfaceType) -> [&'static str; 4] {
    match ty {
        SurfaceType::T1 => ["s^2*u + s*t*v", "t^2*u", "s^2*v + s*t*u", "t^2*v + s*t*v"],
        SurfaceType::T2 => ["s^2*u", "t^2*u", "s^2*v + s*t*u", "t^2*v + s*t*v"],
        SurfaceType::T3 => ["s^2*u + s*t*v", "t^2*u", "s^2*v", "t^2*v + s*t*u"],
        SurfaceType::T4 => ["s*t*v", "t^2*v", "s^2*v - t^2*u", "s^2*u"],
        SurfaceType::T5a => ["s^2*u", "s^2*v", "t^2*u", "t^2*v + s*t*v"],
        SurfaceType::T5b => ["s^2*u", "s^2*v", "t^2*u", "t^2*v + s*t*u"],
        SurfaceType::T6 => ["s^2*u", "s^2*v", "t^2*u", "t^2*v"],
    }
}

pub fn type_example(ty: SurfaceType) -> Ideal {
    Ideal::parse(&type_example_gens(ty)).expect("fixture ideals are valid")
}

/// The running example, a Type 5a ideal.
pub fn running_example() -> Ideal {
    type_example(SurfaceType::T5a)
}

/// Quartic cutting out the image of the running example.
pub const RUNNING_EXAMPLE_QUARTIC: &str = "x0*x1^2*x2 - x1^2*x2^2 + 2*x0*x1*x2*x3 - x0^2*x3^2";

/// Expected Betti table (level 1 = generators) for each numerical type.
pub fn expected_betti(ty: SurfaceType) -> BettiTable {
    let gens: &[(u32, u32, usize)] = &[(2, 1, 4)];
    match ty {
        SurfaceType::T1 => BettiTable::from_levels(&[
            gens,
            &[(2, 4, 1), (3, 2, 4), (4, 1, 2)],
            &[(3, 4, 2), (4, 2, 3)],
            &[(4, 4, 1)],
        ]),
        SurfaceType::T2 => BettiTable::from_levels(&[
            gens,
            &[(2, 3, 1), (3, 2, 4), (4, 1, 2)],
            &[(3, 3, 2), (4, 2, 3)],
            &[(4, 3, 1)],
        ]),
        SurfaceType::T3 => BettiTable::from_levels(&[
            gens,
            &[(2, 4, 1), (3, 1, 1), (3, 2, 2), (3, 3, 1), (4, 2, 1), (5, 1, 1)],
            &[(3, 4, 2), (4, 3, 2), (5, 2, 2)],
            &[(4, 4, 1), (5, 3, 1)],
        ]),
        SurfaceType::T4 => BettiTable::from_levels(&[
            gens,
            &[(2, 3, 1), (3, 1, 1), (3, 2, 2), (4, 2, 1), (5, 1, 1)],
            &[(3, 3, 1), (4, 3, 1), (5, 2, 2)],
            &[(5, 3, 1)],
        ]),
        SurfaceType::T5a | SurfaceType::T5b => BettiTable::from_levels(&[
            gens,
            &[(2, 2, 1), (3, 2, 2), (4, 1, 2)],
            &[(4, 2, 2)],
        ]),
        SurfaceType::T6 => BettiTable::from_levels(&[gens, &[(2, 2, 2), (4, 1, 2)], &[(4, 2, 1)]]),
    }
}

/// Expected `h_{i,j}` for `0 <= i <= 5`, `0 <= j <= 4`.
pub fn expected_hilbert(ty: SurfaceType) -> Vec<Vec<usize>> {
    let row2 = match ty.number() {
        1 | 3 => [3, 2, 1, 0, 0],
        2 | 4 => [3, 2, 1, 1, 1],
        5 => [3, 2, 2, 2, 2],
        _ => [3, 2, 3, 4, 5],
    };
    let row3 = if matches!(ty.number(), 3 | 4) {
        [4, 1, 0, 0, 0]
    } else {
        [4, 0, 0, 0, 0]
    };
    vec![
        vec![1, 2, 3, 4, 5],
        vec![2, 4, 6, 8, 10],
        row2.to_vec(),
        row3.to_vec(),
        vec![5, 0, 0, 0, 0],
        vec![6, 0, 0, 0, 0],
    ]
}

/// A monomial ideal together with the Betti table of its minimal resolution.
#[derive(Clone, Debug)]
pub struct MonomialFixture {
    pub name: &'static str,
    pub gens: &'static [&'static str],
    pub betti: BettiTable,
}

impl MonomialFixture {
    pub fn generators(&self) -> Vec<BiPoly> {
        self.gens.iter().map(|g| parse_poly(g).expect("fixture")).collect()
    }
}

pub fn monomial_fixtures() -> Vec<MonomialFixture> {
    vec![
        MonomialFixture {
            name: "G1",
            gens: &["s^2*u", "s^2*v", "s*t*u", "s*t*v", "t^2*u^2", "t^2*u*v", "t^3*u", "t^3*v", "t^2*v^3"],
            betti: BettiTable::from_levels(&[
                &[(2, 1, 4), (2, 2, 2), (2, 3, 1), (3, 1, 2)],
                &[(2, 2, 2), (2, 3, 1), (2, 4, 1), (3, 1, 2), (3, 2, 5), (3, 3, 2), (4, 1, 2)],
                &[(3, 2, 1), (3, 3, 2), (3, 4, 2), (4, 2, 3), (4, 3, 1)],
                &[(4, 3, 1), (4, 4, 1)],
            ]),
        },
        MonomialFixture {
            name: "G1'",
            gens: &["s^2*u", "s^2*v", "s*t*u", "t^2*u", "s*t*v^2", "s*t^2*v", "t^3*v", "t^2*v^3"],
            betti: BettiTable::from_levels(&[
                &[(2, 1, 4), (2, 2, 1), (2, 3, 1), (3, 1, 2)],
                &[(2, 2, 1), (2, 3, 1), (2, 4, 1), (3, 1, 2), (3, 2, 4), (3, 3, 2), (4, 1, 2)],
                &[(3, 3, 2), (3, 4, 2), (4, 2, 3), (4, 3, 1)],
                &[(4, 3, 1), (4, 4, 1)],
            ]),
        },
        MonomialFixture {
            name: "G2",
            gens: &["s^2*u", "s^2*v", "s*t*u", "s*t*v", "t^2*u^2", "t^2*u*v", "t^3*u", "t^3*v"],
            betti: BettiTable::from_levels(&[
                &[(2, 1, 4), (2, 2, 2), (3, 1, 2)],
                &[(2, 2, 2), (2, 3, 1), (3, 1, 2), (3, 2, 5), (4, 1, 2)],
                &[(3, 2, 1), (3, 3, 2), (4, 2, 3)],
                &[(4, 3, 1)],
            ]),
        },
        MonomialFixture {
            name: "G2'",
            gens: &["s^2*u", "s^2*v", "s*t*u", "t^2*u", "s*t*v^2", "s*t^2*v", "t^3*v"],
            betti: BettiTable::from_levels(&[
                &[(2, 1, 4), (2, 2, 1), (3, 1, 2)],
                &[(2, 2, 1), (2, 3, 1), (3, 1, 2), (3, 2, 4), (4, 1, 2)],
                &[(3, 3, 2), (4, 2, 3)],
                &[(4, 3, 1)],
            ]),
        },
    ]
}
