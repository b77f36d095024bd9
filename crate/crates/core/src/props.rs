//! Seeded randomized property suites.
//!
//! Every case draws from its own ChaCha stream derived from `(seed, suite,
//! case)`, so a reported counterexample can be replayed on its own and the
//! summaries are identical run to run.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{dual_by_exhaustion, Freeness, LinearCode};
use crate::error::Result;
use crate::linalg::{dot, RMatrix};
use crate::maps::{MapDef, RingMap};
use crate::mpc::{
    characterization_check, diag_scale_equal, distance_lower_bound, mpc_dual,
    quasi_orthogonal_units, sharpness_witness, MatrixProductCode, Sharpness,
};
use crate::ring::{Elem, Ring, RingSpec};
use crate::skew::{apply_tf, phi_coordinates, SkewContext, SkewPoly};

/// Outcome of one suite.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteSummary {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Named tallies (e.g. how often a witness was found).
    pub counters: BTreeMap<String, usize>,
    pub counterexamples: Vec<String>,
}

impl SuiteSummary {
    fn new(name: &str) -> Self {
        SuiteSummary {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn counter(&self, key: &str) -> usize {
        self.counters.get(key).copied().unwrap_or(0)
    }

    fn bump(&mut self, key: &str) {
        *self.counters.entry(key.to_string()).or_default() += 1;
    }

    fn fail(&mut self, case: usize, detail: String) {
        self.failures += 1;
        self.counterexamples.push(format!("case {case}: {detail}"));
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} passed",
            self.name,
            self.cases - self.failures,
            self.cases
        )?;
        for (k, v) in &self.counters {
            write!(f, ", {k}={v}")?;
        }
        for c in &self.counterexamples {
            write!(f, "\n  counterexample {c}")?;
        }
        Ok(())
    }
}

fn case_rng(seed: u64, suite: u64, case: usize) -> ChaCha8Rng {
    let mixed = seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(suite.wrapping_mul(0xD1B5_4A32_D192_ED03))
        .wrapping_add(case as u64);
    ChaCha8Rng::seed_from_u64(mixed)
}

fn f3x3() -> Ring {
    let f3 = Ring::galois(3, 1).expect("F3");
    Ring::product(&[f3.clone(), f3]).expect("F3 x F3")
}

/// `Z_4`, `Z_6`, `GF(4)`, `F_3 x F_3`.
pub fn bound_rings() -> Vec<Ring> {
    vec![
        Ring::zmod(4).expect("Z4"),
        Ring::zmod(6).expect("Z6"),
        Ring::galois(2, 2).expect("GF(4)"),
        f3x3(),
    ]
}

pub fn random_elem(rng: &mut ChaCha8Rng, ring: &Ring) -> Elem {
    ring.elem(rng.gen_range(0..ring.size())).expect("index in range")
}

pub fn random_vec(rng: &mut ChaCha8Rng, ring: &Ring, n: usize) -> Vec<Elem> {
    (0..n).map(|_| random_elem(rng, ring)).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, ring: &Ring, rows: usize, cols: usize) -> RMatrix {
    let data = (0..rows * cols).map(|_| random_elem(rng, ring)).collect();
    RMatrix::new(ring, rows, cols, data).expect("consistent shape")
}

/// Rejection-samples an `s x l` full-rank matrix.
pub fn random_full_rank(rng: &mut ChaCha8Rng, ring: &Ring, s: usize, l: usize) -> RMatrix {
    loop {
        let m = random_matrix(rng, ring, s, l);
        if m.is_full_rank().expect("s <= l") {
            return m;
        }
    }
}

pub fn random_nonsingular(rng: &mut ChaCha8Rng, ring: &Ring, s: usize) -> RMatrix {
    loop {
        let m = random_matrix(rng, ring, s, s);
        if m.is_nonsingular().expect("square") {
            return m;
        }
    }
}

/// A nonzero code spanned by one to `max_gens` random vectors.
pub fn random_code(rng: &mut ChaCha8Rng, ring: &Ring, n: usize, max_gens: usize) -> LinearCode {
    loop {
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<Vec<Elem>> = (0..k).map(|_| random_vec(rng, ring, n)).collect();
        if gens.iter().flatten().any(|e| !e.is_zero()) {
            return LinearCode::new(ring, n, gens).expect("consistent lengths");
        }
    }
}

/// A free code of random rank `1..=n`: leading rows of a random invertible
/// matrix.
pub fn random_free_code(rng: &mut ChaCha8Rng, ring: &Ring, n: usize) -> LinearCode {
    let k = rng.gen_range(1..=n);
    let m = random_nonsingular(rng, ring, n);
    LinearCode::new(ring, n, m.row_vecs().into_iter().take(k).collect()).expect("lengths")
}

fn fmt_vec(ring: &Ring, v: &[Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|&e| ring.format(e)).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_code(c: &LinearCode) -> String {
    let gens: Vec<String> = c.generators().iter().map(|g| fmt_vec(c.ring(), g)).collect();
    format!("<{}>", gens.join(" "))
}

fn fmt_instance(ring: &Ring, inputs: &[LinearCode], a: &RMatrix) -> String {
    let codes: Vec<String> = inputs.iter().map(fmt_code).collect();
    let rows: Vec<String> = a.row_vecs().iter().map(|r| fmt_vec(ring, r)).collect();
    format!("ring {ring}, inputs {}, A = [{}]", codes.join(", "), rows.join(", "))
}

/// Largest `|MPC|` the bound suite will enumerate.
pub const BOUND_SUITE_CAP: u128 = 60_000;

/// The distance bound, its sharpness condition, and `|MPC| = prod |C_i|`
/// on random full-rank instances with `n <= 4`, `s <= l <= 3`.
pub fn bound_suite(seed: u64, count: usize) -> SuiteSummary {
    let mut sum = SuiteSummary::new("distance bound");
    let rings = bound_rings();
    for case in 0..count {
        let mut rng = case_rng(seed, 1, case);
        let ring = &rings[case % rings.len()];
        let (inputs, a) = loop {
            let n = rng.gen_range(1..=4);
            let l = rng.gen_range(1..=3);
            let s = rng.gen_range(1..=l);
            let inputs: Vec<LinearCode> =
                (0..s).map(|_| random_code(&mut rng, ring, n, 2)).collect();
            let size = inputs
                .iter()
                .fold(1u128, |acc, c| acc.saturating_mul(c.cardinality()));
            if size <= BOUND_SUITE_CAP {
                break (inputs, random_full_rank(&mut rng, ring, s, l));
            }
        };
        sum.cases += 1;
        if let Err(e) = bound_case(&mut sum, case, ring, &inputs, &a) {
            sum.fail(case, format!("{e} on {}", fmt_instance(ring, &inputs, &a)));
        }
    }
    sum
}

fn bound_case(
    sum: &mut SuiteSummary,
    case: usize,
    ring: &Ring,
    inputs: &[LinearCode],
    a: &RMatrix,
) -> Result<()> {
    let bound = distance_lower_bound(inputs, a)?;
    let mpc = MatrixProductCode::build(inputs.to_vec(), a.clone())?;
    let words = mpc.realized().enumerate()?;
    let d = words
        .iter()
        .map(|w| crate::code::hamming_weight(w))
        .filter(|&w| w > 0)
        .min()
        .expect("full-rank image of nonzero inputs is nonzero");
    let sizes: Vec<usize> = inputs
        .iter()
        .map(|c| c.enumerate().map(|w| w.len()))
        .collect::<Result<_>>()?;
    let product: usize = sizes.iter().product();
    let label = || fmt_instance(ring, inputs, a);
    let failures_before = sum.failures;
    if d < bound {
        sum.fail(case, format!("distance {d} below bound {bound} on {}", label()));
    } else {
        sum.bump("bound holds");
        if d == bound {
            sum.bump("bound attained");
        }
    }
    if words.len() == product {
        sum.bump("cardinality verified");
    } else {
        sum.fail(
            case,
            format!("|MPC| = {} but prod |C_i| = {product} on {}", words.len(), label()),
        );
    }
    match sharpness_witness(inputs, a)? {
        Sharpness::Witness(_) => {
            sum.bump("witness found");
            if d == bound {
                sum.bump("witness tight");
            } else {
                sum.fail(case, format!("witness but distance {d} != bound {bound} on {}", label()));
            }
        }
        Sharpness::Absent => sum.bump("witness absent"),
        Sharpness::Inapplicable => sum.bump("not nested"),
    }
    if inputs.iter().all(LinearCode::is_free) {
        sum.bump("free inputs");
        let based: Vec<LinearCode> = inputs.iter().map(LinearCode::with_basis_generators).collect();
        let rank: usize = based.iter().map(|c| c.generators().len()).sum();
        let rebuilt = MatrixProductCode::build(based, a.clone())?;
        let kernel_trivial = rebuilt.generator_matrix().left_kernel().cardinality() == 1;
        if rebuilt.realized().freeness() != (Freeness::Free { rank }) || !kernel_trivial {
            sum.fail(case, format!("block generator not a basis of rank {rank} on {}", label()));
        }
    }
    // one failure per case at most in the tally
    if sum.failures > failures_before + 1 {
        sum.failures = failures_before + 1;
    }
    Ok(())
}

/// Largest ambient space `|R|^{nl}` scanned exhaustively by the dual suite.
pub const DUAL_SCAN_CAP: u128 = 1 << 18;

/// The dual formula for free inputs and non-singular square matrices.
/// The formula side is compared with the dual either by scanning the whole
/// ambient space or, when that is too large, by checking orthogonality of
/// every formula-side word plus `|C| |D| = |R|^{nl}`.
pub fn dual_suite(seed: u64, count: usize, rings: &[Ring]) -> SuiteSummary {
    let mut sum = SuiteSummary::new("dual formula");
    for case in 0..count {
        let mut rng = case_rng(seed, 2, case);
        let ring = &rings[case % rings.len()];
        let n = rng.gen_range(1..=3);
        let s = rng.gen_range(1..=3);
        let inputs: Vec<LinearCode> = (0..s).map(|_| random_free_code(&mut rng, ring, n)).collect();
        let a = random_nonsingular(&mut rng, ring, s);
        sum.cases += 1;
        match dual_case(&mut sum, &inputs, &a) {
            Ok(true) => {}
            Ok(false) => sum.fail(case, format!("formula differs on {}", fmt_instance(ring, &inputs, &a))),
            Err(e) => sum.fail(case, format!("{e} on {}", fmt_instance(ring, &inputs, &a))),
        }
    }
    sum
}

fn dual_case(sum: &mut SuiteSummary, inputs: &[LinearCode], a: &RMatrix) -> Result<bool> {
    let mpc = MatrixProductCode::build(inputs.to_vec(), a.clone())?;
    let formula = mpc_dual(inputs, a)?.realized().enumerate()?;
    let ring = a.ring();
    let len = mpc.realized().length() as u32;
    let ambient = (ring.size() as u128).pow(len);
    if ambient <= DUAL_SCAN_CAP {
        sum.bump("exhaustive scan");
        return Ok(dual_by_exhaustion(mpc.realized())? == formula);
    }
    sum.bump("orthogonality and count");
    let primal = mpc.realized().enumerate()?;
    let gens = mpc.realized().generators();
    let orthogonal = formula
        .iter()
        .all(|w| gens.iter().all(|g| dot(ring, g, w).is_zero()));
    Ok(orthogonal && primal.len() as u128 * formula.len() as u128 == ambient)
}

/// Quasi-orthogonal `s x s` matrices: all of them for `|R|^{s^2} <= 10^5`,
/// otherwise products `P D B` of a permutation, a unit diagonal and a block
/// diagonal of smaller ones.
pub fn quasi_orthogonal_pool(ring: &Ring, s: usize, rng: &mut ChaCha8Rng, extra: usize) -> Vec<RMatrix> {
    let q = ring.size() as u128;
    if q.pow((s * s) as u32) <= 100_000 {
        let mut out = Vec::new();
        let mut data = vec![ring.zero(); s * s];
        loop {
            let m = RMatrix::new(ring, s, s, data.clone()).expect("shape");
            if quasi_orthogonal_units(&m).expect("square").is_some() {
                out.push(m);
            }
            if !crate::linalg::next_tuple(&mut data, ring.size()) {
                return out;
            }
        }
    }
    let small1 = quasi_orthogonal_pool(ring, 1, rng, 0);
    let small2 = quasi_orthogonal_pool(ring, s.saturating_sub(1).max(1), rng, 0);
    let units: Vec<Elem> = ring.elements().filter(|&e| ring.is_unit(e)).collect();
    let mut out = Vec::with_capacity(extra);
    while out.len() < extra {
        let a = small1.choose(rng).expect("1x1 units");
        let b = small2.choose(rng).expect("smaller pool");
        let mut blocks = RMatrix::zero(ring, s, s);
        blocks.set(0, 0, a.get(0, 0));
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                blocks.set(i + 1, j + 1, b.get(i, j));
            }
        }
        let mut perm: Vec<usize> = (0..s).collect();
        perm.shuffle(rng);
        let mut p = RMatrix::zero(ring, s, s);
        for (i, &j) in perm.iter().enumerate() {
            p.set(i, j, ring.one());
        }
        let d = RMatrix::diag(ring, &(0..s).map(|_| *units.choose(rng).expect("1 is a unit")).collect::<Vec<_>>());
        let m = p.mul(&d).and_then(|pd| pd.mul(&blocks)).expect("square products");
        debug_assert!(quasi_orthogonal_units(&m).expect("square").is_some());
        out.push(m);
    }
    out
}

/// Codes known to be self-dual, used to make sure the suite exercises the
/// self-dual side of each equivalence.
fn self_dual_pool(ring: &Ring, n: usize) -> Vec<LinearCode> {
    let mut out = Vec::new();
    if *ring.spec() == RingSpec::IntegersMod(4) {
        // 2 Z_4 in every coordinate
        let two = ring.from_int(2);
        let gens = (0..n)
            .map(|i| (0..n).map(|j| if i == j { two } else { ring.zero() }).collect())
            .collect();
        out.push(LinearCode::new(ring, n, gens).expect("lengths"));
    }
    if n == 4 {
        if let Ok(ex) = crate::golden::swap_example() {
            if *ring == ex.ring {
                out.push(ex.code.code().clone());
            }
        }
    }
    out
}

/// The three equivalences for quasi-orthogonal matrices, each side computed
/// independently, plus the diagonal scaling identity.
pub fn self_dual_suite(seed: u64, count: usize, rings: &[Ring]) -> SuiteSummary {
    let mut sum = SuiteSummary::new("quasi-orthogonal characterization");
    let mut pools: BTreeMap<(usize, usize), Vec<RMatrix>> = BTreeMap::new();
    let mut pool_rng = case_rng(seed, 3, usize::MAX);
    for (ri, ring) in rings.iter().enumerate() {
        for s in 1..=3 {
            pools.insert((ri, s), quasi_orthogonal_pool(ring, s, &mut pool_rng, 64));
        }
    }
    for case in 0..count {
        let mut rng = case_rng(seed, 3, case);
        let ri = case % rings.len();
        let ring = &rings[ri];
        let n = *[1usize, 2, 4].choose(&mut rng).expect("nonempty");
        let s = if n == 4 { rng.gen_range(1..=2) } else { rng.gen_range(1..=3) };
        let known = self_dual_pool(ring, n);
        let inputs: Vec<LinearCode> = (0..s)
            .map(|_| match rng.gen_range(0..4) {
                0 if !known.is_empty() => known.choose(&mut rng).expect("nonempty").clone(),
                1 => LinearCode::full_space(ring, n),
                _ => random_code(&mut rng, ring, n, if n == 4 { 1 } else { 2 }),
            })
            .collect();
        let a = pools[&(ri, s)].choose(&mut rng).expect("pool is nonempty").clone();
        sum.cases += 1;
        match self_dual_case(&mut sum, &inputs, &a) {
            Ok(None) => {}
            Ok(Some(what)) => sum.fail(case, format!("{what} on {}", fmt_instance(ring, &inputs, &a))),
            Err(e) => sum.fail(case, format!("{e} on {}", fmt_instance(ring, &inputs, &a))),
        }
    }
    sum
}

fn self_dual_case(sum: &mut SuiteSummary, inputs: &[LinearCode], a: &RMatrix) -> Result<Option<String>> {
    let report = characterization_check(inputs, a)?;
    if report.mpc.self_dual {
        sum.bump("self-dual MPC");
    }
    if report.mpc.self_orthogonal {
        sum.bump("self-orthogonal MPC");
    }
    if report.mpc.lcd {
        sum.bump("LCD MPC");
    }
    if !report.self_dual_holds() {
        return Ok(Some("self-dual equivalence fails".into()));
    }
    if !report.self_orthogonal_holds() {
        return Ok(Some("self-orthogonal equivalence fails".into()));
    }
    if !report.lcd_holds() {
        return Ok(Some("LCD equivalence fails".into()));
    }
    if !diag_scale_equal(inputs, a, &report.units)? {
        return Ok(Some("diagonal scaling changed the code".into()));
    }
    Ok(None)
}

/// Contexts used by the skew suites, including nonzero derivations.
pub fn sample_contexts() -> Vec<(String, Arc<SkewContext>)> {
    let mut out = Vec::new();
    let mut push = |name: &str, ring: &Ring, sigma: RingMap, delta: MapDef| {
        let delta = RingMap::derivation(ring, &sigma, &delta).expect("valid derivation");
        out.push((name.to_string(), SkewContext::new(ring, sigma, delta).expect("context")));
    };
    let z4 = Ring::zmod(4).expect("Z4");
    push("Z_4, identity", &z4, RingMap::identity(&z4), MapDef::Zero);
    let z20 = Ring::zmod(20).expect("Z20");
    push("Z_20, identity", &z20, RingMap::identity(&z20), MapDef::Zero);
    let gf4 = Ring::galois(2, 2).expect("GF(4)");
    let frob = RingMap::endomorphism(&gf4, &MapDef::Frobenius { power: 1 }).expect("frobenius");
    let a = gf4.generator().expect("generator");
    push("GF(4), identity", &gf4, RingMap::identity(&gf4), MapDef::Zero);
    push("GF(4), frobenius", &gf4, frob.clone(), MapDef::Zero);
    push("GF(4), frobenius, inner a", &gf4, frob, MapDef::Inner { beta: a });
    let r = f3x3();
    let swap = RingMap::endomorphism(&r, &MapDef::Permutation(vec![1, 0])).expect("swap");
    push("F3 x F3, swap", &r, swap.clone(), MapDef::Zero);
    let beta = r.parse("(1,0)").expect("literal");
    push("F3 x F3, swap, inner (1,0)", &r, swap, MapDef::Inner { beta });
    out
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &Arc<SkewContext>, max_deg: usize) -> SkewPoly {
    let d = rng.gen_range(0..=max_deg);
    ctx.poly(random_vec(rng, ctx.ring(), d + 1))
}

fn random_monic(rng: &mut ChaCha8Rng, ctx: &Arc<SkewContext>, deg: usize) -> SkewPoly {
    let mut c = random_vec(rng, ctx.ring(), deg);
    c.push(ctx.ring().one());
    ctx.poly(c)
}

/// `right_divmod(q g + r, g) = (q, r)`, and the left-handed analogue when
/// sigma is invertible.
pub fn division_suite(seed: u64, count: usize) -> SuiteSummary {
    let mut sum = SuiteSummary::new("skew division round trip");
    let contexts = sample_contexts();
    for case in 0..count {
        let mut rng = case_rng(seed, 4, case);
        let (name, ctx) = &contexts[case % contexts.len()];
        let deg_g = rng.gen_range(1..=3);
        let g = random_monic(&mut rng, ctx, deg_g);
        let q = random_poly(&mut rng, ctx, 4);
        let r = ctx.poly(random_vec(&mut rng, ctx.ring(), deg_g));
        sum.cases += 1;
        let mut check = || -> Result<Option<String>> {
            let p = q.mul(&g)?.add(&r)?;
            let (q2, r2) = p.right_divmod(&g)?;
            if (&q2, &r2) != (&q, &r) {
                return Ok(Some(format!("right: got ({q2}, {r2})")));
            }
            if ctx.is_automorphism() {
                let p = g.mul(&q)?.add(&r)?;
                let (q2, r2) = p.left_divmod(&g)?;
                if (&q2, &r2) != (&q, &r) {
                    return Ok(Some(format!("left: got ({q2}, {r2})")));
                }
                sum.bump("left and right");
            }
            Ok(None)
        };
        match check() {
            Ok(None) => {}
            Ok(Some(msg)) => sum.fail(case, format!("{name}: q = {q}, g = {g}, r = {r}; {msg}")),
            Err(e) => sum.fail(case, format!("{name}: {e}")),
        }
    }
    sum
}

/// Ore associativity, left distributivity, and `T_f` iteration against
/// coordinates of `X^i p`.
pub fn ore_suite(seed: u64, count: usize) -> SuiteSummary {
    let mut sum = SuiteSummary::new("skew ring identities");
    let contexts = sample_contexts();
    for case in 0..count {
        let mut rng = case_rng(seed, 5, case);
        let (name, ctx) = &contexts[case % contexts.len()];
        let p = random_poly(&mut rng, ctx, 3);
        let q = random_poly(&mut rng, ctx, 3);
        let r = random_poly(&mut rng, ctx, 3);
        let deg_f = rng.gen_range(1..=4);
        let f = random_monic(&mut rng, ctx, deg_f);
        sum.cases += 1;
        let check = || -> Result<Option<&'static str>> {
            if p.mul(&q)?.mul(&r)? != p.mul(&q.mul(&r)?)? {
                return Ok(Some("associativity"));
            }
            if p.mul(&q.add(&r)?)? != p.mul(&q)?.add(&p.mul(&r)?)? {
                return Ok(Some("left distributivity"));
            }
            let x = ctx.x();
            let mut t = phi_coordinates(&p, &f)?;
            let mut shifted = p.clone();
            for _ in 0..3 {
                t = apply_tf(&t, &f)?;
                shifted = x.mul(&shifted)?;
                if t != phi_coordinates(&shifted, &f)? {
                    return Ok(Some("T_f iteration"));
                }
            }
            Ok(None)
        };
        match check() {
            Ok(None) => {}
            Ok(Some(what)) => sum.fail(case, format!("{name}: {what} fails for p = {p}, q = {q}, r = {r}, f = {f}")),
            Err(e) => sum.fail(case, format!("{name}: {e}")),
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summaries_are_deterministic() {
        assert_eq!(bound_suite(7, 8), bound_suite(7, 8));
        assert_eq!(division_suite(7, 20), division_suite(7, 20));
    }

    #[test]
    fn zero_cases_give_empty_summaries() {
        let s = bound_suite(0, 0);
        assert_eq!((s.cases, s.failures), (0, 0));
        assert!(s.counters.is_empty() && s.counterexamples.is_empty());
    }

    #[test]
    fn small_runs_pass() {
        assert!(bound_suite(1, 12).ok());
        let rings = [Ring::zmod(4).unwrap(), Ring::galois(2, 2).unwrap()];
        assert!(dual_suite(1, 6, &rings).ok());
        assert!(ore_suite(1, 14).ok());
    }

    #[test]
    fn pools_are_quasi_orthogonal() {
        let mut rng = case_rng(0, 0, 0);
        let z4 = Ring::zmod(4).unwrap();
        let pool = quasi_orthogonal_pool(&z4, 2, &mut rng, 0);
        // exhaustive for 2x2 over Z_4: contains the identity and the swap
        assert!(pool.contains(&RMatrix::identity(&z4, 2)));
        assert!(pool.contains(&RMatrix::from_ints(&z4, &[&[0, 1], &[1, 0]]).unwrap()));
        let big = quasi_orthogonal_pool(&f3x3(), 3, &mut rng, 10);
        assert_eq!(big.len(), 10);
        assert!(big.iter().all(|m| quasi_orthogonal_units(m).unwrap().is_some()));
    }

    #[test]
    fn summary_display_lists_counterexamples() {
        let mut s = SuiteSummary::new("demo");
        s.cases = 2;
        s.bump("x");
        s.fail(1, "broken".into());
        assert_eq!(s.to_string(), "demo: 1/2 passed, x=1\n  counterexample case 1: broken");
    }
}
