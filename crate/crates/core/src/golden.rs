//! Pinned worked examples: the fixtures that build them and a suite that
//! checks every displayed value.
//!
//! Each case is either `Golden` (expected values are fixed and must match)
//! or `Investigation` (the computed verdict is reported; the case passes
//! when the computation is exhaustive and internally consistent).

use std::sync::Arc;

use crate::code::{dual_by_exhaustion, LinearCode};
use crate::error::Result;
use crate::linalg::RMatrix;
use crate::maps::{MapDef, RingMap};
use crate::mpc::{
    self, characterization_check, distance_lower_bound, dual_formula_side, mpc_dual, row_codes,
    sharpness_witness, MatrixProductCode, Sharpness,
};
use crate::ring::{Elem, Ring};
use crate::skew::{
    build_skew_mpc, constacyclic_selfdual_criteria, parity_iterates, phi_coordinates,
    principal_code_generator, skew_mpc_dual, ConstacyclicReport, PrincipalSkewCode, SkewContext,
    SkewPoly,
};

/// `F3 x F3` with the swap automorphism, `alpha = (2,2)`, the pair
/// `g = X^2 + X + alpha`, `h = X^2 + alpha X + alpha` with `g h = X^4 + 1`,
/// and the orthogonal matrix used to combine two copies of the code of `g`.
#[derive(Debug, Clone)]
pub struct SwapExample {
    pub ring: Ring,
    pub ctx: Arc<SkewContext>,
    pub alpha: Elem,
    pub g: SkewPoly,
    pub h: SkewPoly,
    pub f: SkewPoly,
    pub code: PrincipalSkewCode,
    pub a: RMatrix,
}

pub fn swap_example() -> Result<SwapExample> {
    let f3 = Ring::galois(3, 1)?;
    let ring = Ring::product(&[f3.clone(), f3])?;
    let swap = RingMap::endomorphism(&ring, &MapDef::Permutation(vec![1, 0]))?;
    let ctx = SkewContext::twisted(&ring, swap)?;
    let alpha = ring.parse("(2,2)")?;
    let names = |s: &str| (s == "alpha").then_some(alpha);
    let g = ctx.parse_poly("X^2 + X + alpha", &names)?;
    let h = ctx.parse_poly("X^2 + alpha X + alpha", &names)?;
    let f = ctx.parse_poly("X^4 + 1", &names)?;
    let code = principal_code_generator(&g, &f)?.with_parity(&h)?;
    let a = RMatrix::parse(&ring, &[&["(1,0)", "(0,1)"], &["(0,2)", "(1,0)"]])?;
    Ok(SwapExample {
        ring,
        ctx,
        alpha,
        g,
        h,
        f,
        code,
        a,
    })
}

impl SwapExample {
    pub fn expected_generator(&self) -> Result<RMatrix> {
        RMatrix::parse(
            &self.ring,
            &[&["(2,2)", "1", "1", "0"], &["0", "(2,2)", "1", "1"]],
        )
    }

    pub fn expected_mpc_generator(&self) -> Result<RMatrix> {
        RMatrix::parse(
            &self.ring,
            &[
                &["(2,0)", "(1,0)", "(1,0)", "(0,0)", "(0,2)", "(0,1)", "(0,1)", "(0,0)"],
                &["(0,0)", "(2,0)", "(1,0)", "(1,0)", "(0,0)", "(0,2)", "(0,1)", "(0,1)"],
                &["(0,1)", "(0,2)", "(0,2)", "(0,0)", "(2,0)", "(1,0)", "(1,0)", "(0,0)"],
                &["(0,0)", "(0,1)", "(0,2)", "(0,2)", "(0,0)", "(2,0)", "(1,0)", "(1,0)"],
            ],
        )
    }

    pub fn mpc(&self) -> Result<MatrixProductCode> {
        build_skew_mpc(&[self.code.clone(), self.code.clone()], &self.a)
    }

    pub fn criteria(&self) -> Result<ConstacyclicReport> {
        // X^4 + 1 = X^4 - a with a = -1
        let a = self.ring.neg(self.ring.one());
        constacyclic_selfdual_criteria(&self.g, a, 4)
    }
}

/// Four principal codes of length 4 over `GF(4)`: `g1 = X^2 + alpha`,
/// `h1 = X^2 + alpha^2` under Frobenius with `f1 = X^4 + X^2 + 1`, and
/// `g2 = X + beta`, `h2 = X^3 + beta X^2 + beta^2 X + beta^3` under the
/// identity with `f2 = X^4 + beta^4`.
#[derive(Debug, Clone)]
pub struct Gf4Family {
    pub ring: Ring,
    pub alpha: Elem,
    pub beta: Elem,
    pub frobenius: Arc<SkewContext>,
    pub fixed: Arc<SkewContext>,
    pub f1: SkewPoly,
    pub g1: SkewPoly,
    pub h1: SkewPoly,
    pub f2: SkewPoly,
    pub g2: SkewPoly,
    pub h2: SkewPoly,
    /// Codes of `g1`, `h1`, `g2`, `h2`, each with its parity matrix.
    pub codes: Vec<PrincipalSkewCode>,
}

pub fn gf4_family(beta: Elem) -> Result<Gf4Family> {
    let ring = Ring::galois(2, 2)?;
    let alpha = ring
        .generator()
        .ok_or_else(|| crate::Error::InvalidRing("GF(4) has no named generator".into()))?;
    let frob = RingMap::endomorphism(&ring, &MapDef::Frobenius { power: 1 })?;
    let frobenius = SkewContext::twisted(&ring, frob)?;
    let fixed = SkewContext::twisted(&ring, RingMap::identity(&ring))?;
    let names = |s: &str| match s {
        "alpha" => Some(alpha),
        "beta" => Some(beta),
        _ => None,
    };
    let one = ring.one();
    let f1 = frobenius.parse_poly("X^4 + X^2 + 1", &names)?;
    let g1 = frobenius.parse_poly("X^2 + alpha", &names)?;
    let h1 = frobenius.poly(vec![ring.mul(alpha, alpha), ring.zero(), one]);
    let b2 = ring.mul(beta, beta);
    let b3 = ring.mul(b2, beta);
    let f2 = fixed.poly(vec![ring.mul(b2, b2), ring.zero(), ring.zero(), ring.zero(), one]);
    let g2 = fixed.parse_poly("X + beta", &names)?;
    let h2 = fixed.poly(vec![b3, b2, beta, one]);
    let codes = vec![
        principal_code_generator(&g1, &f1)?.with_parity(&h1)?,
        principal_code_generator(&h1, &f1)?.with_parity(&g1)?,
        principal_code_generator(&g2, &f2)?.with_parity(&h2)?,
        principal_code_generator(&h2, &f2)?.with_parity(&g2)?,
    ];
    Ok(Gf4Family {
        ring,
        alpha,
        beta,
        frobenius,
        fixed,
        f1,
        g1,
        h1,
        f2,
        g2,
        h2,
        codes,
    })
}

impl Gf4Family {
    /// The displayed `(G_j, H_j)` for `j = 1..4`.
    pub fn expected(&self) -> Result<Vec<(RMatrix, RMatrix)>> {
        let r = &self.ring;
        let (z, o, a, b) = (r.zero(), r.one(), self.alpha, self.beta);
        let a2 = r.mul(a, a);
        let b2 = r.mul(b, b);
        let b3 = r.mul(b2, b);
        let m = |rows: Vec<Vec<Elem>>| RMatrix::from_rows(r, &rows);
        Ok(vec![
            (
                m(vec![vec![a, z, o, z], vec![z, a2, z, o]])?,
                m(vec![vec![o, z, a, z], vec![z, o, z, a2]])?,
            ),
            (
                m(vec![vec![a2, z, o, z], vec![z, a, z, o]])?,
                m(vec![vec![o, z, a2, z], vec![z, o, z, a]])?,
            ),
            (
                m(vec![vec![b, o, z, z], vec![z, b, o, z], vec![z, z, b, o]])?,
                m(vec![vec![o, b, b2, b3]])?,
            ),
            (
                m(vec![vec![b3, b2, b, o]])?,
                m(vec![vec![o, b, z, z], vec![z, o, b, z], vec![z, z, o, b]])?,
            ),
        ])
    }

    /// The `(f, g, h)` triple behind code `j` (0-based).
    pub fn triple(&self, j: usize) -> (&SkewPoly, &SkewPoly, &SkewPoly) {
        match j {
            0 => (&self.f1, &self.g1, &self.h1),
            1 => (&self.f1, &self.h1, &self.g1),
            2 => (&self.f2, &self.g2, &self.h2),
            _ => (&self.f2, &self.h2, &self.g2),
        }
    }

    /// `[g1 h2] A` for a `2 x l` full-rank `a`.
    pub fn mixed_mpc(&self, a: &RMatrix) -> Result<MatrixProductCode> {
        build_skew_mpc(&[self.codes[0].clone(), self.codes[3].clone()], a)
    }

    pub fn default_mixing_matrix(&self) -> Result<RMatrix> {
        let r = &self.ring;
        let (z, o, a) = (r.zero(), r.one(), self.alpha);
        RMatrix::from_rows(r, &[vec![o, a, z], vec![z, o, a]])
    }
}

/// Two principal codes of length 4 over `Z_20` with `sigma = id` and
/// `f = X^4 - 1 = (X^2 - 1)(X^2 + 1)`, combined through `diag(3, 7)`.
#[derive(Debug, Clone)]
pub struct ScaledDualExample {
    pub ring: Ring,
    pub ctx: Arc<SkewContext>,
    pub codes: Vec<PrincipalSkewCode>,
    pub a: RMatrix,
}

pub fn scaled_dual_example() -> Result<ScaledDualExample> {
    let ring = Ring::zmod(20)?;
    let ctx = SkewContext::twisted(&ring, RingMap::identity(&ring))?;
    let none = |_: &str| None;
    let f = ctx.parse_poly("X^4 - 1", &none)?;
    let g1 = ctx.parse_poly("X^2 - 1", &none)?;
    let g2 = ctx.parse_poly("X^2 + 1", &none)?;
    let codes = vec![
        principal_code_generator(&g1, &f)?.with_parity(&g2)?,
        principal_code_generator(&g2, &f)?.with_parity(&g1)?,
    ];
    let a = RMatrix::from_ints(&ring, &[&[3, 0], &[0, 7]])?;
    Ok(ScaledDualExample { ring, ctx, codes, a })
}

/// Block-diagonal matrix with blocks `c_i M_i`.
pub fn block_diagonal(ring: &Ring, blocks: &[(Elem, &RMatrix)]) -> Result<RMatrix> {
    let rows: usize = blocks.iter().map(|(_, m)| m.rows()).sum();
    let cols: usize = blocks.iter().map(|(_, m)| m.cols()).sum();
    let mut out = RMatrix::zero(ring, rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for (c, m) in blocks {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(r0 + i, c0 + j, ring.mul(*c, m.get(i, j)));
            }
        }
        r0 += m.rows();
        c0 += m.cols();
    }
    Ok(out)
}

/// `Z_4`, `A = [[1,2,0],[0,2,1]]`, `C_1 = C_{L_2}` and `C_2 = C_{L_1}`.
#[derive(Debug, Clone)]
pub struct RowCodeExample {
    pub ring: Ring,
    pub a: RMatrix,
    pub inputs: Vec<LinearCode>,
}

pub fn row_code_example() -> Result<RowCodeExample> {
    let ring = Ring::zmod(4)?;
    let a = RMatrix::from_ints(&ring, &[&[1, 2, 0], &[0, 2, 1]])?;
    let family = row_codes(&a)?;
    let inputs = vec![family.codes[1].clone(), family.codes[0].clone()];
    Ok(RowCodeExample { ring, a, inputs })
}

/// `Z_20`, `C_1 = 10 Z_20`, `C_2 = 2 Z_20`, `A = diag(3, 7)`.
#[derive(Debug, Clone)]
pub struct NonFreeExample {
    pub ring: Ring,
    pub inputs: Vec<LinearCode>,
    pub a: RMatrix,
}

pub fn non_free_example() -> Result<NonFreeExample> {
    let ring = Ring::zmod(20)?;
    let inputs = vec![
        LinearCode::new(&ring, 1, vec![vec![ring.from_int(10)]])?,
        LinearCode::new(&ring, 1, vec![vec![ring.from_int(2)]])?,
    ];
    let a = RMatrix::from_ints(&ring, &[&[3, 0], &[0, 7]])?;
    Ok(NonFreeExample { ring, inputs, a })
}

/// What exhaustive enumeration says about the dual formula on non-free
/// inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonFreeDualVerdict {
    /// The checked dual construction refused the non-free inputs.
    pub refused: bool,
    pub primal_size: usize,
    /// `|([C_1 C_2] A)^perp|`, by scanning all of `R^{nl}`.
    pub dual_size: usize,
    /// `|[C_1^perp C_2^perp] (A^{-1})^T|`.
    pub formula_size: usize,
    pub ambient_size: u128,
    pub sides_coincide: bool,
    /// Whether `(8, 2)` lies in `[C_1 C_2] A`.
    pub probe_in_code: bool,
    /// Whether `(2, 0)` lies in the formula side.
    pub partner_in_formula: bool,
    /// `<(8,2), (2,0)>`.
    pub probe_product: Elem,
    /// The structured dual agrees with the scan.
    pub structured_agrees: bool,
}

impl NonFreeDualVerdict {
    /// Both sides pair with the primal code to `|R|^{nl}`, and the two
    /// dual computations agree.
    pub fn consistent(&self) -> bool {
        let p = self.primal_size as u128;
        p * self.dual_size as u128 == self.ambient_size
            && p * self.formula_size as u128 == self.ambient_size
            && self.structured_agrees
    }
}

pub fn non_free_dual_verdict(ex: &NonFreeExample) -> Result<NonFreeDualVerdict> {
    let ring = &ex.ring;
    let refused = mpc_dual(&ex.inputs, &ex.a).is_err();
    let code = MatrixProductCode::build(ex.inputs.clone(), ex.a.clone())?;
    let primal = code.realized().enumerate()?;
    let scanned = dual_by_exhaustion(code.realized())?;
    let structured = code.realized().dual().enumerate()?;
    let formula = dual_formula_side(&ex.inputs, &ex.a)?.realized().enumerate()?;
    let probe = vec![ring.from_int(8), ring.from_int(2)];
    let partner = vec![ring.from_int(2), ring.zero()];
    let probe_product = crate::linalg::dot(ring, &probe, &partner);
    let len = code.realized().length() as u32;
    Ok(NonFreeDualVerdict {
        refused,
        primal_size: primal.len(),
        dual_size: scanned.len(),
        formula_size: formula.len(),
        ambient_size: (ring.size() as u128).pow(len),
        sides_coincide: scanned == formula,
        probe_in_code: primal.contains(&probe),
        partner_in_formula: formula.contains(&partner),
        probe_product,
        structured_agrees: structured == scanned,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    Golden,
    Investigation,
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub name: &'static str,
    pub kind: CaseKind,
    pub passed: bool,
    /// Observations, plus a diff line for every mismatch.
    pub lines: Vec<String>,
}

/// Accumulates checks for one case.
struct Checker {
    ok: bool,
    lines: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            ok: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, label: &str, cond: bool) {
        if !cond {
            self.ok = false;
            self.lines.push(format!("mismatch: {label}"));
        }
    }

    fn note(&mut self, line: String) {
        self.lines.push(line);
    }

    fn matrix(&mut self, label: &str, expected: &RMatrix, got: &RMatrix) {
        if expected.rows() != got.rows() || expected.cols() != got.cols() {
            self.ok = false;
            self.lines.push(format!(
                "mismatch: {label} is {}x{}, expected {}x{}",
                got.rows(),
                got.cols(),
                expected.rows(),
                expected.cols()
            ));
            return;
        }
        for i in 0..expected.rows() {
            for j in 0..expected.cols() {
                if expected.get(i, j) != got.get(i, j) {
                    self.ok = false;
                    self.lines.push(format!(
                        "mismatch: {label}[{i}][{j}] = {}, expected {}",
                        got.format_entry(i, j),
                        expected.format_entry(i, j)
                    ));
                }
            }
        }
    }

    fn finish(self, name: &'static str, kind: CaseKind) -> CaseOutcome {
        CaseOutcome {
            name,
            kind,
            passed: self.ok,
            lines: self.lines,
        }
    }
}

fn run_case(
    name: &'static str,
    kind: CaseKind,
    body: impl FnOnce(&mut Checker) -> Result<()>,
) -> CaseOutcome {
    let mut c = Checker::new();
    if let Err(e) = body(&mut c) {
        c.ok = false;
        c.lines.push(format!("error: {e}"));
    }
    c.finish(name, kind)
}

/// Generator rows are the coordinates of `X^i g` and parity iterates the
/// coordinates of `X^i h`, both modulo `f`.
pub fn row_semantics_hold(code: &PrincipalSkewCode) -> Result<bool> {
    let ctx = code.f.context();
    let x = ctx.x();
    let mut shifted = code.g.clone();
    for i in 0..code.dimension() {
        if code.generator.row(i) != phi_coordinates(&shifted, &code.f)?.as_slice() {
            return Ok(false);
        }
        shifted = x.mul(&shifted)?;
    }
    if let Some(h) = &code.h {
        let iterates = parity_iterates(h, &code.f)?;
        let mut shifted = h.clone();
        for it in &iterates {
            if *it != phi_coordinates(&shifted, &code.f)? {
                return Ok(false);
            }
            shifted = x.mul(&shifted)?;
        }
    }
    Ok(true)
}

fn swap_product_case(c: &mut Checker) -> Result<()> {
    let ex = swap_example()?;
    let gh = ex.g.mul(&ex.h)?;
    c.note(format!("g h = {gh}"));
    c.check("g h = X^4 + 1", gh == ex.f);
    c.check("h g = X^4 + 1", ex.h.mul(&ex.g)? == ex.f);
    let (q, r) = ex.f.right_divmod(&ex.h)?;
    c.check("(X^4 + 1) right-divided by h gives g", q == ex.g && r.is_zero());
    let (q, r) = ex.f.left_divmod(&ex.g)?;
    c.check("(X^4 + 1) left-divided by g gives h", q == ex.h && r.is_zero());
    let star = ex.h.skew_reciprocal();
    let names = |s: &str| (s == "alpha").then_some(ex.alpha);
    c.note(format!("h* = {star}"));
    c.check(
        "h* = alpha X^2 + alpha X + 1",
        star == ex.ctx.parse_poly("alpha X^2 + alpha X + 1", &names)?,
    );
    let h0_inv = ex.ring.inv(ex.h.coeff(0)).unwrap_or(Elem::ZERO);
    let sigma2 = ex.ctx.sigma().pow(2)?;
    c.check(
        "g = sigma^2(h_0^-1) h*",
        star.scale_left(sigma2.apply(h0_inv)) == ex.g,
    );
    Ok(())
}

fn swap_generator_case(c: &mut Checker) -> Result<()> {
    let ex = swap_example()?;
    c.matrix("M", &ex.expected_generator()?, &ex.code.generator);
    let mpc = ex.mpc()?;
    c.matrix("G", &ex.expected_mpc_generator()?, &mpc.generator_matrix());
    let aat = ex.a.mul(&ex.a.transpose())?;
    c.check("A A^T = I", aat == RMatrix::identity(&ex.ring, 2));
    c.note(format!("det A = {}", ex.ring.format(ex.a.determinant()?)));
    c.check("det A = (1,1)", ex.a.determinant()? == ex.ring.one());
    Ok(())
}

fn swap_self_dual_case(c: &mut Checker) -> Result<()> {
    let ex = swap_example()?;
    let mpc = ex.mpc()?;
    let g = mpc.generator_matrix();
    c.check("G G^T = 0", g.mul(&g.transpose())?.is_zero());
    let code = mpc.realized();
    c.note(format!("MPC freeness: {:?}", code.freeness()));
    c.check("MPC free of rank 4", code.freeness() == crate::code::Freeness::Free { rank: 4 });
    c.check("MPC equals its dual", code.equals(&code.dual())?);
    let dual = mpc_dual(mpc.inputs(), mpc.matrix())?;
    c.check("dual formula gives the code back", dual.realized().equals(code)?);
    let report = characterization_check(mpc.inputs(), mpc.matrix())?;
    c.check("characterization holds", report.all_hold());
    let criteria = ex.criteria()?;
    c.note(format!(
        "cond1 = {}, cond2 per l = {:?}, direct = {}",
        criteria.cond1, criteria.cond2_per_l, criteria.direct
    ));
    c.check("cond1 holds", criteria.cond1);
    c.check("direct self-duality", criteria.direct);
    c.check("cond2 at l = 1 and l = 2", criteria.cond2_per_l[1] && criteria.cond2_per_l[2]);
    c.check("row semantics", row_semantics_hold(&ex.code)?);
    Ok(())
}

fn gf4_codes_case(c: &mut Checker, beta: Elem, range: std::ops::Range<usize>) -> Result<()> {
    let fam = gf4_family(beta)?;
    let expected = fam.expected()?;
    for j in range {
        let (f, g, h) = fam.triple(j);
        c.check(&format!("f = g h for code {}", j + 1), g.mul(h)? == *f);
        c.check(&format!("f = h g for code {}", j + 1), h.mul(g)? == *f);
        let code = &fam.codes[j];
        let (eg, eh) = &expected[j];
        c.matrix(&format!("G{}", j + 1), eg, &code.generator);
        let parity = code.parity.as_ref().expect("parity attached");
        c.matrix(&format!("H{}", j + 1), eh, parity);
        c.check(
            &format!("G{0} H{0}^T = 0", j + 1),
            code.generator.mul(&parity.transpose())?.is_zero(),
        );
        c.check(
            &format!("H{} spans the dual", j + 1),
            code.parity_code().expect("parity").equals(&code.code().dual())?,
        );
        c.check(&format!("row semantics for code {}", j + 1), row_semantics_hold(code)?);
    }
    Ok(())
}

fn gf4_mixed_case(c: &mut Checker) -> Result<()> {
    let fam = gf4_family(Ring::galois(2, 2)?.one())?;
    let a = fam.default_mixing_matrix()?;
    let mpc = fam.mixed_mpc(&a)?;
    let expected = a.block_rows(&[fam.codes[0].generator.clone(), fam.codes[3].generator.clone()])?;
    c.matrix("[g1 h2] A generator", &expected, &mpc.generator_matrix());
    let realized = mpc.realized();
    c.check(
        "free of rank 3",
        realized.freeness() == crate::code::Freeness::Free { rank: 3 },
    );
    c.check("|MPC| = |C1| |C4|", realized.cardinality() == 16 * 4);
    Ok(())
}

fn scaled_dual_case(c: &mut Checker) -> Result<()> {
    let ex = scaled_dual_example()?;
    let r = &ex.ring;
    let (g1, g2) = (&ex.codes[0].generator, &ex.codes[1].generator);
    let h1 = ex.codes[0].parity.as_ref().expect("parity");
    let h2 = ex.codes[1].parity.as_ref().expect("parity");
    let mpc = build_skew_mpc(&ex.codes, &ex.a)?;
    let g = mpc.generator_matrix();
    c.matrix("G", &block_diagonal(r, &[(r.from_int(3), g1), (r.from_int(7), g2)])?, &g);
    let dual = skew_mpc_dual(&ex.codes, &ex.a)?;
    let h = dual.generator_matrix();
    c.matrix("H", &block_diagonal(r, &[(r.from_int(7), h1), (r.from_int(3), h2)])?, &h);
    c.check("G H^T = 0", g.mul(&h.transpose())?.is_zero());
    c.check("H spans the dual", dual.realized().equals(&mpc.realized().dual())?);
    Ok(())
}

fn row_code_case(c: &mut Checker) -> Result<()> {
    let ex = row_code_example()?;
    let r = &ex.ring;
    let fam = row_codes(&ex.a)?;
    c.note(format!("D = {:?}", fam.distances));
    c.check("D1 = D2 = 1", fam.distances == vec![Some(1), Some(1)]);
    let v = |xs: &[i64]| xs.iter().map(|&x| r.from_int(x)).collect::<Vec<_>>();
    c.check(
        "minimum-weight words of C_L1",
        fam.codes[0].min_weight_words()? == vec![v(&[2, 0, 0])],
    );
    let mut words = fam.codes[1].min_weight_words()?;
    words.sort();
    let mut expected = vec![v(&[2, 0, 0]), v(&[0, 0, 2])];
    expected.sort();
    c.check("minimum-weight words of C_L2", words == expected);
    let bound = distance_lower_bound(&ex.inputs, &ex.a)?;
    let mpc = MatrixProductCode::build(ex.inputs.clone(), ex.a.clone())?;
    let d = mpc.realized().min_distance()?;
    c.note(format!("bound = {bound}, distance = {d}"));
    c.check("bound = 1", bound == 1);
    c.check("distance = 1", d == 1);
    let sharp = sharpness_witness(&ex.inputs, &ex.a)?;
    c.check("no sharpness witness", sharp == Sharpness::Absent);
    let word = mpc.codeword(&[v(&[0, 0, 0]), v(&[2, 0, 0])])?;
    c.check("weight-1 codeword present", mpc.realized().contains(&word)?);
    c.check(
        "codeword matrix",
        mpc.as_matrix(&word)? == RMatrix::from_ints(r, &[&[0, 0, 2], &[0, 0, 0], &[0, 0, 0]])?,
    );
    let x1 = v(&[2, 0, 0]);
    c.check(
        "x X products vanish",
        mpc::kron_mult(r, &x1, &x1).iter().all(|e| e.is_zero()),
    );
    Ok(())
}

fn non_free_case(c: &mut Checker) -> Result<()> {
    let ex = non_free_example()?;
    let v = non_free_dual_verdict(&ex)?;
    c.note(format!("checked dual construction refused: {}", v.refused));
    c.note(format!(
        "|code| = {}, |code^perp| = {}, |formula side| = {}, |R|^(nl) = {}",
        v.primal_size, v.dual_size, v.formula_size, v.ambient_size
    ));
    c.note(format!("sides coincide: {}", v.sides_coincide));
    c.note(format!("(8,2) in code: {}", v.probe_in_code));
    c.note(format!("(2,0) in formula side: {}", v.partner_in_formula));
    c.note(format!(
        "<(8,2),(2,0)> = {}",
        ex.ring.format(v.probe_product)
    ));
    c.check("refused without freeness", v.refused);
    c.check("cardinalities and dual computations consistent", v.consistent());
    Ok(())
}

/// Runs every pinned case.
pub fn verify_worked_examples() -> Vec<CaseOutcome> {
    use CaseKind::*;
    let gf4 = Ring::galois(2, 2).expect("GF(4)");
    let beta = gf4.one();
    vec![
        run_case("f3xf3-skew-product", Golden, swap_product_case),
        run_case("f3xf3-generator-matrices", Golden, swap_generator_case),
        run_case("f3xf3-self-dual-mpc", Golden, swap_self_dual_case),
        run_case("gf4-frobenius-codes", Golden, |c| gf4_codes_case(c, beta, 0..2)),
        run_case("gf4-fixed-codes", Golden, |c| gf4_codes_case(c, beta, 2..4)),
        run_case("gf4-mixed-mpc", Golden, gf4_mixed_case),
        run_case("z20-scaled-dual", Golden, scaled_dual_case),
        run_case("z4-row-codes", Golden, row_code_case),
        run_case("z20-non-free-dual", Investigation, non_free_case),
    ]
}
