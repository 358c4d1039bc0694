mod common;

use bisurf_core::bipoly::{binary_form_gcd, divide_exact, multiplication_matrix, BiDegree, BiPoly};
use bisurf_core::dualscroll::common_factor;
use bisurf_core::exactla::{det, frac, int, kernel_basis, rank, rref, QMatrix, Scalar};
use bisurf_core::fixtures::type_example;
use bisurf_core::classify::SurfaceType;
use bisurf_core::ideal::hilbert_table;
use bisurf_core::parse::{parse_poly, serialize};
use bisurf_core::resolution::{minimal_free_resolution, DEFAULT_WINDOW};
use bisurf_core::xpoly::{pullback, x_monomials, xdet, XPolyMatrix};
use bisurf_core::XPoly;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => Just(int(0)),
        4 => (-4i64..=4).prop_map(int),
        2 => (-9i64..=9, 1i64..=4).prop_map(|(n, d)| frac(n, d)),
    ]
}

fn matrix(max: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(scalar(), c), r)
            .prop_map(|rows| QMatrix::from_rows(rows).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(scalar(), n), n)
            .prop_map(|rows| QMatrix::from_rows(rows).unwrap())
    })
}

fn form(d: BiDegree) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(scalar(), d.dim()).prop_map(move |c| BiPoly::from_coeffs(d, &c))
}

fn nonzero_form(d: BiDegree) -> impl Strategy<Value = BiPoly> {
    form(d).prop_filter("nonzero", |f| !f.is_zero())
}

fn bidegree() -> impl Strategy<Value = BiDegree> {
    (0u32..=2, 0u32..=2).prop_map(|(m, n)| BiDegree::new(m, n))
}

fn xform(d: u32) -> impl Strategy<Value = XPoly> {
    let mons = x_monomials(d);
    prop::collection::vec(scalar(), mons.len())
        .prop_map(move |c| XPoly::from_terms(d, c.into_iter().zip(&mons).map(|(c, m)| (c, m.0))).unwrap())
}

/// Permutation expansion, used as an independent determinant.
fn leibniz<T: Clone>(n: usize, entry: impl Fn(usize, usize) -> T, zero: T, mul: impl Fn(&T, &T) -> T, add: impl Fn(&T, &T, bool) -> T) -> T {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(vec![], true)];
        }
        let mut out = Vec::new();
        for (p, even) in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                let swaps = p.len() - pos;
                out.push((q, even == (swaps % 2 == 0)));
            }
        }
        out
    }
    let mut total = zero;
    for (p, even) in perms(n) {
        let mut term = entry(0, p[0]);
        for (i, &j) in p.iter().enumerate().skip(1) {
            term = mul(&term, &entry(i, j));
        }
        total = add(&total, &term, even);
    }
    total
}

fn scalar_leibniz(m: &QMatrix) -> Scalar {
    leibniz(
        m.rows(),
        |i, j| m.get(i, j).clone(),
        int(0),
        |a, b| a * b,
        |a, b, even| if even { a + b } else { a - b },
    )
}

/// Rank as the size of the largest nonvanishing minor, for small matrices.
fn minor_rank(m: &QMatrix) -> usize {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
        for s in &mut with {
            s.push(n - 1);
        }
        with.extend(subsets(n - 1, k));
        with
    }
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub = QMatrix::from_rows(rs.iter().map(|&r| cs.iter().map(|&c| m.get(r, c).clone()).collect()).collect()).unwrap();
                if !scalar_leibniz(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(m in matrix(6)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix(5)) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.rank, rank(&m.transpose()));
    }

    #[test]
    fn rank_matches_minors(m in matrix(4)) {
        prop_assert_eq!(rank(&m), minor_rank(&m));
    }

    #[test]
    fn det_matches_permutation_expansion(m in square(5)) {
        let d = det(&m).unwrap();
        prop_assert_eq!(&d, &scalar_leibniz(&m));
        prop_assert_eq!(d.is_zero(), rank(&m) < m.rows());
    }

    #[test]
    fn large_entries_survive_promotion(seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        use rand::Rng;
        let big = |rng: &mut rand::rngs::StdRng| Scalar::from_integer(BigInt::from(rng.gen_range(-1i64 << 62..1i64 << 62)));
        let rows: Vec<Vec<Scalar>> = (0..4).map(|_| (0..5).map(|_| big(&mut rng)).collect()).collect();
        let m = QMatrix::from_rows(rows).unwrap();
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        for v in kernel_basis(&m) {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn product_laws(
        (f, g, h, b) in (bidegree(), bidegree()).prop_flat_map(|(a, b)| {
            (form(a), form(b), form(BiDegree::new(1, 0)), Just(b))
        })
    ) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        let via_matrix = multiplication_matrix(&f, b).mul_vec(&g.coeffs());
        let prod = &f * &g;
        if prod.is_zero() {
            prop_assert!(via_matrix.iter().all(|x| x.is_zero()));
        } else {
            prop_assert_eq!(via_matrix, prod.coeffs());
        }
    }

    #[test]
    fn exact_division_round_trip(f in form(BiDegree::new(1, 2)), g in nonzero_form(BiDegree::new(2, 1))) {
        let q = divide_exact(&(&f * &g), &g).unwrap();
        prop_assert!(q.is_zero() == f.is_zero());
        if !f.is_zero() {
            prop_assert_eq!(q, f);
        }
    }

    #[test]
    fn binary_gcd_divides_both(
        f in nonzero_form(BiDegree::new(3, 0)),
        g in nonzero_form(BiDegree::new(2, 0)),
        c in nonzero_form(BiDegree::new(1, 0)),
    ) {
        let (fc, gc) = (&f * &c, &g * &c);
        let d = binary_form_gcd(&fc, &gc).unwrap();
        prop_assert!(divide_exact(&fc, &d).is_ok());
        prop_assert!(divide_exact(&gc, &d).is_ok());
        prop_assert!(divide_exact(&d, &c).is_ok());
    }

    #[test]
    fn serialize_round_trip(f in (0u32..=3, 0u32..=3).prop_flat_map(|(m, n)| form(BiDegree::new(m, n)))) {
        let text = serialize(&f);
        let back = parse_poly(&text).unwrap();
        if f.is_zero() {
            prop_assert!(back.is_zero());
        } else {
            prop_assert_eq!(back, f);
        }
    }

    #[test]
    fn euler_relation(f in xform(3)) {
        let sum = f.partials().iter().enumerate().fold(XPoly::zero(3), |acc, (i, p)| &acc + &(&XPoly::var(i) * p));
        prop_assert_eq!(sum, f.scale(&int(3)));
    }

    #[test]
    fn pullback_is_multiplicative(f in xform(1), g in xform(2)) {
        let gens = type_example(SurfaceType::T5a).gens().to_vec();
        let lhs = pullback(&(&f * &g), &gens);
        let rhs = &pullback(&f, &gens) * &pullback(&g, &gens);
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn xdet_matches_permutation_expansion(entries in prop::collection::vec(xform(1), 9)) {
        let m = XPolyMatrix::new(3, 3, entries.clone()).unwrap();
        let expected = leibniz(
            3,
            |i, j| entries[3 * i + j].clone(),
            XPoly::zero(3),
            |a, b| a * b,
            |a, b, even| if even { a + b } else { a - b },
        );
        prop_assert_eq!(xdet(&m).unwrap(), expected);
    }

    #[test]
    fn common_factor_is_recovered(
        g in nonzero_form(BiDegree::new(1, 0)),
        h1 in nonzero_form(BiDegree::new(1, 1)),
        h2 in nonzero_form(BiDegree::new(1, 1)),
    ) {
        prop_assume!(!h1.is_scalar_multiple_of(&h2));
        let (f1, f2) = (&g * &h1, &g * &h2);
        let cf = common_factor(&f1, &f2).unwrap().expect("factor exists");
        prop_assert!(divide_exact(&cf.g, &g).is_ok());
        prop_assert_eq!(&cf.g * &cf.residuals[0], f1);
        prop_assert_eq!(&cf.g * &cf.residuals[1], f2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn hilbert_table_is_invariant(seed in any::<u64>(), k in 0usize..7) {
        let ty = SurfaceType::ALL[k];
        let base = type_example(ty);
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let moved = common::random_transform(&mut rng, &base);
        prop_assert_eq!(hilbert_table(&moved, 5, 4).values, hilbert_table(&base, 5, 4).values);
    }

    #[test]
    fn resolutions_are_complexes(gens in prop::collection::vec(nonzero_form(BiDegree::new(2, 1)), 4)) {
        prop_assume!(rank(&QMatrix::from_rows(gens.iter().map(BiPoly::coeffs).collect()).unwrap()) == 4);
        let res = minimal_free_resolution(&gens, DEFAULT_WINDOW).unwrap();
        res.check_complex().unwrap();
        res.check_euler(&gens).unwrap();
    }
}

fn random_ideal_of(seed: u64, k: usize) -> bisurf_core::Ideal {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    common::random_transform(&mut rng, &type_example(SurfaceType::ALL[k]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kernel_basis_is_deterministic(m in matrix(5)) {
        prop_assert_eq!(kernel_basis(&m), kernel_basis(&m.clone()));
    }

    #[test]
    fn dimension_formula(m in 0u32..8, n in 0u32..8) {
        let d = BiDegree::new(m, n);
        prop_assert_eq!(d.dim(), ((m + 1) * (n + 1)) as usize);
        prop_assert_eq!(bisurf_core::bipoly::monomial_basis(d).len(), d.dim());
    }

    #[test]
    fn distributive(
        f in form(BiDegree::new(1, 1)),
        g in form(BiDegree::new(1, 0)),
        h in form(BiDegree::new(1, 0)),
    ) {
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn uperp_annihilates_span(seed in any::<u64>(), k in 0usize..7, c in prop::collection::vec(-5i64..=5, 4)) {
        let ideal = random_ideal_of(seed, k);
        let f = ideal.gens().iter().zip(&c).fold(BiPoly::zero(BiDegree::new(2, 1)), |acc, (g, x)| &acc + &g.scale(&int(*x)));
        for l in bisurf_core::dualscroll::u_perp(&ideal) {
            prop_assert!(l.apply(&f).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn classification_invariants(seed in any::<u64>(), k in 0usize..7) {
        use bisurf_core::resolution::{betti_table, minimal_syzygy_count, resolve_ideal};
        let ideal = random_ideal_of(seed, k);
        let r = bisurf_core::classify(&ideal).unwrap();
        prop_assert_eq!(r.numerical_type, SurfaceType::ALL[k]);
        prop_assert!(r.n01 == 0 || r.n10 == 0);
        prop_assert!(r.n10 <= 1);
        let has02 = minimal_syzygy_count(ideal.gens(), BiDegree::new(2, 3)) > 0;
        match r.numerical_type {
            SurfaceType::T4 => prop_assert!(has02),
            SurfaceType::T3 => prop_assert!(!has02),
            _ => {}
        }
        let res = resolve_ideal(&ideal, DEFAULT_WINDOW).unwrap();
        prop_assert!(res.length() <= 4);
        prop_assert_eq!(betti_table(&res), bisurf_core::fixtures::expected_betti(r.numerical_type));
    }

    #[test]
    fn determinant_is_basis_independent(seed in any::<u64>(), k in 0usize..7) {
        use bisurf_core::implicitize::{d1_from_syzygies, z1_basis_11};
        use bisurf_core::resolution::SyzygyVector;
        let ideal = random_ideal_of(seed, k);
        let syz = z1_basis_11(&ideal).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed ^ 0xd1);
        let g = common::unimodular(&mut rng, 4);
        let mixed: Vec<SyzygyVector> = (0..4)
            .map(|c| SyzygyVector {
                degree: syz[0].degree,
                coords: (0..4)
                    .map(|i| (0..4).fold(BiPoly::zero(BiDegree::new(1, 1)), |acc, j| &acc + &syz[j].coords[i].scale(&int(g[j][c]))))
                    .collect(),
            })
            .collect();
        let d0 = xdet(&d1_from_syzygies(&syz).unwrap().matrix).unwrap();
        let d1 = xdet(&d1_from_syzygies(&mixed).unwrap().matrix).unwrap();
        prop_assert!(d1.is_scalar_multiple_of(&d0));
        prop_assert!(pullback(&d0, ideal.gens()).is_zero());
    }
}
