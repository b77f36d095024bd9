use mpcode::code::{dual_by_exhaustion, span_by_coefficients};
use mpcode::mpc::{diag_scale_equal, MatrixProductCode};
use mpcode::props::{random_code, random_free_code, random_matrix, random_nonsingular};
use mpcode::skew::{principal_code_generator, SkewContext};
use mpcode::{Budget, Elem, Freeness, LinearCode, MapDef, RMatrix, Ring, RingMap};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f3x3() -> Ring {
    let f3 = Ring::galois(3, 1).unwrap();
    Ring::product(&[f3.clone(), f3]).unwrap()
}

fn small_rings() -> Vec<Ring> {
    vec![
        Ring::zmod(4).unwrap(),
        Ring::zmod(6).unwrap(),
        Ring::zmod(20).unwrap(),
        Ring::galois(2, 2).unwrap(),
        Ring::galois(2, 3).unwrap(),
        Ring::galois(3, 2).unwrap(),
        f3x3(),
        Ring::product(&[Ring::zmod(2).unwrap(), Ring::zmod(4).unwrap()]).unwrap(),
    ]
}

fn code_rings() -> Vec<Ring> {
    vec![
        Ring::zmod(4).unwrap(),
        Ring::zmod(20).unwrap(),
        Ring::galois(2, 2).unwrap(),
        f3x3(),
    ]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn ring_axioms_hold_exhaustively() {
    for r in small_rings() {
        assert!(r.size() <= 64);
        for a in r.elements() {
            assert_eq!(r.mul(r.one(), a), a, "{r}");
            assert_eq!(r.add(r.zero(), a), a, "{r}");
            for b in r.elements() {
                assert_eq!(r.mul(a, b), r.mul(b, a), "{r}");
                assert_eq!(r.add(a, b), r.add(b, a), "{r}");
            }
        }
    }
}

#[test]
fn inverses_agree_with_search() {
    for r in small_rings() {
        for a in r.elements() {
            let searched = r.elements().find(|&b| r.mul(a, b) == r.one());
            match r.inv(a) {
                Some(b) => assert_eq!(r.mul(a, b), r.one(), "{r}"),
                None => assert_eq!(searched, None, "{r}: {}", r.format(a)),
            }
        }
    }
}

#[test]
fn frobenius_has_order_k() {
    for (p, k) in [(2, 2), (2, 3), (3, 2)] {
        let r = Ring::galois(p, k).unwrap();
        let frob = RingMap::endomorphism(&r, &MapDef::Frobenius { power: 1 }).unwrap();
        for j in 1..k {
            assert!(!frob.pow(j).unwrap().is_identity());
        }
        assert!(frob.pow(k).unwrap().is_identity());
        // composites of a valid endomorphism validate again
        let table = frob.pow(k - 1).unwrap().table().to_vec();
        assert!(RingMap::endomorphism(&r, &MapDef::Table(table)).is_ok());
    }
}

#[test]
fn zero_derivation_validates_everywhere() {
    let gf4 = Ring::galois(2, 2).unwrap();
    let frob = RingMap::endomorphism(&gf4, &MapDef::Frobenius { power: 1 }).unwrap();
    for sigma in [RingMap::identity(&gf4), frob] {
        assert!(RingMap::derivation(&gf4, &sigma, &MapDef::Zero).is_ok());
    }
}

#[test]
fn full_rank_nonsingular_and_inverse_agree_on_all_2x2_over_z4() {
    let z4 = Ring::zmod(4).unwrap();
    let mut count = 0;
    for idx in 0..256u32 {
        let data: Vec<Elem> = (0..4).map(|i| z4.elem((idx >> (2 * i)) & 3).unwrap()).collect();
        let m = RMatrix::new(&z4, 2, 2, data).unwrap();
        let full = m.is_full_rank().unwrap();
        let ns = m.is_nonsingular().unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(full, ns, "{m}");
        assert_eq!(ns, inv.is_some(), "{m}");
        if let Some(inv) = inv {
            assert_eq!(m.mul(&inv).unwrap(), RMatrix::identity(&z4, 2));
            assert_eq!(inv.mul(&m).unwrap(), RMatrix::identity(&z4, 2));
            count += 1;
        }
    }
    // |GL_2(Z_4)| = 96
    assert_eq!(count, 96);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn full_rank_equivalence_sampled(seed in any::<u64>(), ri in 0usize..4, s in 1usize..=3) {
        let ring = &code_rings()[ri];
        let m = random_matrix(&mut rng(seed), ring, s, s);
        let ns = m.is_nonsingular().unwrap();
        prop_assert_eq!(m.is_full_rank().unwrap(), ns);
        prop_assert_eq!(m.inverse().unwrap().is_some(), ns);
    }

    #[test]
    fn structured_kernel_matches_exhaustive(seed in any::<u64>(), ri in 0usize..4, rows in 1usize..=3, cols in 1usize..=3) {
        let ring = &code_rings()[ri];
        let m = random_matrix(&mut rng(seed), ring, rows, cols);
        let structured = m.left_kernel();
        let exhaustive = m.left_kernel_exhaustive(&Budget::default()).unwrap();
        prop_assert!(structured.equals(&exhaustive).unwrap());
        prop_assert_eq!(structured.enumerate().unwrap(), exhaustive.enumerate().unwrap());
    }

    #[test]
    fn transpose_reverses_products(seed in any::<u64>(), ri in 0usize..4, a in 1usize..=3, b in 1usize..=3, c in 1usize..=3) {
        let ring = &code_rings()[ri];
        let mut g = rng(seed);
        let x = random_matrix(&mut g, ring, a, b);
        let y = random_matrix(&mut g, ring, b, c);
        prop_assert_eq!(
            x.mul(&y).unwrap().transpose(),
            y.transpose().mul(&x.transpose()).unwrap()
        );
    }

    #[test]
    fn dual_cardinality_and_biduality(seed in any::<u64>(), ri in 0usize..4, n in 1usize..=4) {
        let ring = &code_rings()[ri];
        let c = random_code(&mut rng(seed), ring, n, 3);
        let d = c.dual();
        let total = (ring.size() as u128).pow(n as u32);
        prop_assert_eq!(c.cardinality() * d.cardinality(), total);
        prop_assert!(d.dual().equals(&c).unwrap());
        // the enumerated span matches the coefficient oracle
        let mut oracle = span_by_coefficients(&c).unwrap();
        oracle.sort();
        prop_assert_eq!(c.enumerate().unwrap(), oracle);
        if total <= 1 << 16 {
            prop_assert_eq!(d.enumerate().unwrap(), dual_by_exhaustion(&c).unwrap());
        }
    }

    #[test]
    fn dual_of_free_code_is_free_of_complementary_rank(seed in any::<u64>(), ri in 0usize..4, n in 1usize..=4) {
        let ring = &code_rings()[ri];
        let c = random_free_code(&mut rng(seed), ring, n);
        let k = c.generators().len();
        prop_assert_eq!(c.freeness(), Freeness::Free { rank: k });
        prop_assert_eq!(c.dual().freeness(), Freeness::Free { rank: n - k });
    }

    #[test]
    fn distance_matches_coefficient_scan(seed in any::<u64>(), ri in 0usize..4, n in 1usize..=4) {
        let ring = &code_rings()[ri];
        let c = random_code(&mut rng(seed), ring, n, 2);
        let brute = span_by_coefficients(&c)
            .unwrap()
            .iter()
            .map(|w| mpcode::code::hamming_weight(w))
            .filter(|&w| w > 0)
            .min();
        match brute {
            Some(d) => prop_assert_eq!(c.min_distance().unwrap(), d),
            None => prop_assert!(c.min_distance().is_err()),
        }
    }

    #[test]
    fn self_dual_class_implies_equality_by_enumeration(seed in any::<u64>(), n in 1usize..=4) {
        let z4 = Ring::zmod(4).unwrap();
        let c = random_code(&mut rng(seed), &z4, n, 3);
        if c.duality().unwrap().self_dual {
            prop_assert_eq!(c.enumerate().unwrap(), dual_by_exhaustion(&c).unwrap());
        }
    }

    #[test]
    fn diagonal_scaling_preserves_the_code(seed in any::<u64>(), ri in 0usize..4, s in 1usize..=3, n in 1usize..=2) {
        let ring = &code_rings()[ri];
        let mut g = rng(seed);
        let inputs: Vec<LinearCode> = (0..s).map(|_| random_code(&mut g, ring, n, 2)).collect();
        let y = random_matrix(&mut g, ring, s, 3.max(s));
        let units: Vec<Elem> = (0..s)
            .map(|_| random_nonsingular(&mut g, ring, 1).get(0, 0))
            .collect();
        prop_assert!(diag_scale_equal(&inputs, &y, &units).unwrap());
    }

    #[test]
    fn identity_matrix_places_columns(seed in any::<u64>(), s in 1usize..=3, n in 1usize..=3) {
        let ring = f3x3();
        let mut g = rng(seed);
        let inputs: Vec<LinearCode> = (0..s).map(|_| random_code(&mut g, &ring, n, 2)).collect();
        let mpc = MatrixProductCode::build(inputs.clone(), RMatrix::identity(&ring, s)).unwrap();
        let cols: Vec<Vec<Elem>> = inputs.iter().map(|c| c.generators()[0].clone()).collect();
        prop_assert_eq!(mpc.codeword(&cols).unwrap(), cols.concat());
    }

    #[test]
    fn principal_codes_are_free_of_rank_k(seed in any::<u64>(), deg_g in 1usize..=3, deg_h in 1usize..=2) {
        // f = h g with both monic, so g right-divides f
        let gf4 = Ring::galois(2, 2).unwrap();
        let frob = RingMap::endomorphism(&gf4, &MapDef::Frobenius { power: 1 }).unwrap();
        let ctx = SkewContext::twisted(&gf4, frob).unwrap();
        let mut r = rng(seed);
        let mut monic = |d: usize| {
            let mut c = mpcode::props::random_vec(&mut r, &gf4, d);
            c.push(gf4.one());
            ctx.poly(c)
        };
        let g = monic(deg_g);
        let h = monic(deg_h);
        let f = h.mul(&g).unwrap();
        let code = principal_code_generator(&g, &f).unwrap();
        prop_assert_eq!(code.code().freeness(), Freeness::Free { rank: deg_h });
        prop_assert!(mpcode::golden::row_semantics_hold(&code).unwrap());
    }
}
