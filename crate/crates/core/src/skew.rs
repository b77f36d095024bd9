//! Skew polynomials in `R[X; sigma, delta]` with `X a = sigma(a) X + delta(a)`,
//! and the principal codes they generate.
//!
//! Coefficients are stored in ascending order. For a monic `f` of degree `n`
//! the quotient `R[X; sigma, delta] / (f)_l` is identified with `R^n` through
//! the coordinates of the reduced representative, and multiplication by `X`
//! on the quotient is the map `t -> sigma(t) C_f + delta(t)`.

use std::fmt;
use std::sync::Arc;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::linalg::RMatrix;
use crate::maps::{MapDef, MapRole, RingMap};
use crate::mpc::MatrixProductCode;
use crate::ring::{split_top_level, Elem, Ring};

/// A ring with an endomorphism `sigma` and a `sigma`-derivation `delta`.
#[derive(Debug, Clone)]
pub struct SkewContext {
    ring: Ring,
    sigma: RingMap,
    delta: RingMap,
    sigma_inv: Option<RingMap>,
}

impl PartialEq for SkewContext {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.sigma == other.sigma && self.delta == other.delta
    }
}

impl Eq for SkewContext {}

impl SkewContext {
    pub fn new(ring: &Ring, sigma: RingMap, delta: RingMap) -> Result<Arc<SkewContext>> {
        if sigma.ring() != ring || delta.ring() != ring {
            return Err(Error::Precondition("sigma and delta must act on the context ring".into()));
        }
        if sigma.role() != MapRole::Endomorphism || delta.role() != MapRole::Derivation {
            return Err(Error::Precondition(
                "a context needs an endomorphism and a derivation".into(),
            ));
        }
        // delta has to be a derivation for this particular sigma
        let delta = RingMap::derivation(ring, &sigma, &MapDef::Table(delta.table().to_vec()))?;
        let sigma_inv = sigma.inverse();
        if let Some(inv) = &sigma_inv {
            debug_assert!(sigma.compose(inv)?.is_identity());
        }
        Ok(Arc::new(SkewContext {
            ring: ring.clone(),
            sigma,
            delta,
            sigma_inv,
        }))
    }

    /// `delta = 0`.
    pub fn twisted(ring: &Ring, sigma: RingMap) -> Result<Arc<SkewContext>> {
        SkewContext::new(ring, sigma, RingMap::zero_derivation(ring))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn sigma(&self) -> &RingMap {
        &self.sigma
    }

    pub fn delta(&self) -> &RingMap {
        &self.delta
    }

    pub fn sigma_inverse(&self) -> Option<&RingMap> {
        self.sigma_inv.as_ref()
    }

    pub fn is_automorphism(&self) -> bool {
        self.sigma_inv.is_some()
    }

    pub fn poly(self: &Arc<Self>, coeffs: Vec<Elem>) -> SkewPoly {
        let mut p = SkewPoly {
            ctx: Arc::clone(self),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn monomial(self: &Arc<Self>, c: Elem, degree: usize) -> SkewPoly {
        let mut coeffs = vec![self.ring.zero(); degree + 1];
        coeffs[degree] = c;
        self.poly(coeffs)
    }

    pub fn x(self: &Arc<Self>) -> SkewPoly {
        self.monomial(self.ring.one(), 1)
    }

    pub fn constant(self: &Arc<Self>, c: Elem) -> SkewPoly {
        self.poly(vec![c])
    }

    /// Parses human syntax such as `X^2 + X + (2,2)` or `X^4 - 1`.
    /// `resolve` maps constant names to elements; anything it does not
    /// recognise is read as a ring literal.
    pub fn parse_poly(
        self: &Arc<Self>,
        s: &str,
        resolve: &dyn Fn(&str) -> Option<Elem>,
    ) -> Result<SkewPoly> {
        let err = |reason: String| Error::Parse {
            what: "skew polynomial",
            input: s.to_string(),
            reason,
        };
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err("empty".into()));
        }
        let ring = &self.ring;
        let mut coeffs: Vec<Elem> = Vec::new();
        for (negative, term) in signed_terms(&text) {
            if term.is_empty() {
                return Err(err("empty term".into()));
            }
            let (coef_txt, degree) = match find_outside_parens(term, 'X') {
                Some(pos) => {
                    let tail = &term[pos + 1..];
                    let deg = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|e| e.parse::<usize>().ok())
                            .ok_or_else(|| err(format!("bad exponent in {term:?}")))?
                    };
                    (term[..pos].trim_end_matches('*'), deg)
                }
                None => (term, 0),
            };
            let mut c = if coef_txt.is_empty() {
                ring.one()
            } else if let Some(e) = resolve(coef_txt) {
                e
            } else {
                ring.parse(coef_txt)?
            };
            if negative {
                c = ring.neg(c);
            }
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, ring.zero());
            }
            coeffs[degree] = ring.add(coeffs[degree], c);
        }
        Ok(self.poly(coeffs))
    }

    /// `X p`, coefficientwise `delta(p_t) + sigma(p_{t-1})`.
    fn mul_x(&self, p: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        let mut out = vec![r.zero(); p.len() + 1];
        for (t, slot) in out.iter_mut().enumerate() {
            let d = p.get(t).map_or(r.zero(), |&c| self.delta.apply(c));
            let s = if t > 0 { self.sigma.apply(p[t - 1]) } else { r.zero() };
            *slot = r.add(d, s);
        }
        out
    }
}

fn signed_terms(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => {
                out.push((negative, &s[start..i]));
                negative = c == '-';
                start = i + 1;
            }
            '-' if i == 0 => {
                negative = true;
                start = 1;
            }
            _ => {}
        }
    }
    out.push((negative, &s[start..]));
    out
}

fn find_outside_parens(s: &str, target: char) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == target && depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct SkewPoly {
    ctx: Arc<SkewContext>,
    coeffs: Vec<Elem>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.coeffs == other.coeffs
    }
}

impl Eq for SkewPoly {}

impl SkewPoly {
    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn same_context(&self, other: &SkewPoly) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx
    }

    fn check_context(&self, other: &SkewPoly) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<Elem>) -> SkewPoly {
        self.ctx.poly(coeffs)
    }

    pub fn context(&self) -> &Arc<SkewContext> {
        &self.ctx
    }

    /// Ascending coefficients with no trailing zeros.
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.ctx.ring.one())
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_context(other)?;
        let r = &self.ctx.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(self.with_coeffs(
            (0..n).map(|i| r.add(self.coeff(i), other.coeff(i))).collect(),
        ))
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SkewPoly {
        let r = &self.ctx.ring;
        self.with_coeffs(self.coeffs.iter().map(|&c| r.neg(c)).collect())
    }

    /// `c * self` with the constant on the left.
    pub fn scale_left(&self, c: Elem) -> SkewPoly {
        let r = &self.ctx.ring;
        self.with_coeffs(self.coeffs.iter().map(|&x| r.mul(c, x)).collect())
    }

    /// Product under the Ore rule.
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.check_context(other)?;
        let r = &self.ctx.ring;
        if self.is_zero() || other.is_zero() {
            return Ok(self.with_coeffs(Vec::new()));
        }
        let mut acc = vec![r.zero(); self.coeffs.len() + other.coeffs.len()];
        let mut cur = other.coeffs.clone();
        for (i, &pi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                cur = self.ctx.mul_x(&cur);
            }
            if pi.is_zero() {
                continue;
            }
            for (a, &c) in acc.iter_mut().zip(&cur) {
                *a = r.add(*a, r.mul(pi, c));
            }
        }
        Ok(self.with_coeffs(acc))
    }

    /// `(q, r)` with `self = q g + r` and `deg r < deg g`, for monic `g`.
    pub fn right_divmod(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check_context(g)?;
        if !g.is_monic() {
            return Err(Error::NotMonic);
        }
        let ring = &self.ctx.ring;
        let d = g.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((self.with_coeffs(Vec::new()), self.clone()));
        }
        let steps = rem.len() - d;
        // X^j g for j < steps; each is monic of degree d + j
        let mut shifted = Vec::with_capacity(steps);
        let mut cur = g.coeffs.clone();
        for j in 0..steps {
            if j > 0 {
                cur = self.ctx.mul_x(&cur);
            }
            shifted.push(cur.clone());
        }
        let mut quot = vec![ring.zero(); steps];
        for m in (d..rem.len()).rev() {
            let c = rem[m];
            if c.is_zero() {
                continue;
            }
            let j = m - d;
            quot[j] = c;
            for (t, &x) in shifted[j].iter().enumerate() {
                rem[t] = ring.sub(rem[t], ring.mul(c, x));
            }
            debug_assert!(rem[m].is_zero());
        }
        rem.truncate(d);
        Ok((self.with_coeffs(quot), self.with_coeffs(rem)))
    }

    /// `(q, r)` with `self = g q + r` and `deg r < deg g`, for monic `g`.
    /// Needs `sigma` to be invertible.
    pub fn left_divmod(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.check_context(g)?;
        if !g.is_monic() {
            return Err(Error::NotMonic);
        }
        let sigma_inv = self.ctx.sigma_inv.as_ref().ok_or(Error::SigmaNotInvertible)?;
        let ring = &self.ctx.ring;
        let d = g.coeffs.len() - 1;
        let untwist = sigma_inv.pow(d as u32)?;
        let mut rem = self.clone();
        let mut quot = vec![ring.zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(m) = rem.degree().filter(|&m| m >= d) {
            let j = m - d;
            let c = untwist.apply(rem.coeffs[m]);
            quot[j] = ring.add(quot[j], c);
            let step = g.mul(&self.ctx.monomial(c, j))?;
            rem = rem.sub(&step)?;
            debug_assert!(rem.degree().is_none_or(|nd| nd < m));
        }
        Ok((self.with_coeffs(quot), rem))
    }

    /// `h*(X) = sum_i sigma^i(h_{k-i}) X^i` for `h` of degree `k`.
    pub fn skew_reciprocal(&self) -> SkewPoly {
        let Some(k) = self.degree() else {
            return self.clone();
        };
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut twist = RingMap::identity(&self.ctx.ring);
        for i in 0..=k {
            coeffs.push(twist.apply(self.coeffs[k - i]));
            twist = self.ctx.sigma.compose(&twist).expect("sigma is an endomorphism");
        }
        self.with_coeffs(coeffs)
    }

    pub fn format(&self) -> String {
        let ring = &self.ctx.ring;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut lit = ring.format(c);
            if lit.contains('+') || (lit.starts_with('-') && i > 0) {
                lit = format!("({lit})");
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            terms.push(if i == 0 {
                lit
            } else if c == ring.one() {
                mono
            } else {
                format!("{lit}{mono}")
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

fn require_monic(f: &SkewPoly) -> Result<usize> {
    match f.degree() {
        Some(n) if n >= 1 && f.is_monic() => Ok(n),
        _ => Err(Error::NotMonic),
    }
}

/// Companion matrix of a monic `f`: ones on the superdiagonal and last row
/// `(-a_0, ..., -a_{n-1})`.
pub fn companion_matrix(f: &SkewPoly) -> Result<RMatrix> {
    let n = require_monic(f)?;
    let ring = f.ctx.ring();
    let mut c = RMatrix::zero(ring, n, n);
    for i in 0..n - 1 {
        c.set(i, i + 1, ring.one());
    }
    for j in 0..n {
        c.set(n - 1, j, ring.neg(f.coeff(j)));
    }
    Ok(c)
}

/// `t -> (sigma(t_0), ..., sigma(t_{n-1})) C_f + (delta(t_0), ..., delta(t_{n-1}))`.
pub fn apply_tf(t: &[Elem], f: &SkewPoly) -> Result<Vec<Elem>> {
    let c = companion_matrix(f)?;
    if t.len() != c.rows() {
        return Err(Error::Shape(format!(
            "vector of length {} for a degree-{} modulus",
            t.len(),
            c.rows()
        )));
    }
    let ctx = &f.ctx;
    let ring = ctx.ring();
    let twisted: Vec<Elem> = t.iter().map(|&x| ctx.sigma.apply(x)).collect();
    Ok(c.left_apply(&twisted)?
        .into_iter()
        .zip(t)
        .map(|(u, &x)| ring.add(u, ctx.delta.apply(x)))
        .collect())
}

/// Coordinates of `p + (f)_l` in the basis `1, X, ..., X^{n-1}`.
pub fn phi_coordinates(p: &SkewPoly, f: &SkewPoly) -> Result<Vec<Elem>> {
    let n = require_monic(f)?;
    let (_, r) = p.right_divmod(f)?;
    Ok((0..n).map(|i| r.coeff(i)).collect())
}

/// A principal code `phi_f^{-1}((g)_l / (f)_l)` of length `deg f`.
#[derive(Debug, Clone)]
pub struct PrincipalSkewCode {
    pub f: SkewPoly,
    pub g: SkewPoly,
    pub h: Option<SkewPoly>,
    pub generator: RMatrix,
    pub parity: Option<RMatrix>,
    code: LinearCode,
}

impl PrincipalSkewCode {
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    /// Attaches `h` with `f = g h = h g` and builds the parity matrix.
    pub fn with_parity(mut self, h: &SkewPoly) -> Result<PrincipalSkewCode> {
        self.parity = Some(dual_parity_matrix(&self.g, h, &self.f)?);
        self.h = Some(h.clone());
        Ok(self)
    }

    /// Code spanned by the parity matrix rows.
    pub fn parity_code(&self) -> Option<LinearCode> {
        self.parity.as_ref().map(LinearCode::from_matrix)
    }
}

/// `k x n` generator matrix for the principal code of `g` modulo `f`,
/// built row by row from `g^(i)_t = delta(g^(i-1)_t) + sigma(g^(i-1)_{t-1})`.
pub fn principal_code_generator(g: &SkewPoly, f: &SkewPoly) -> Result<PrincipalSkewCode> {
    g.check_context(f)?;
    let n = require_monic(f)?;
    let r = g.degree().filter(|_| g.is_monic()).ok_or(Error::NotMonic)?;
    if r == 0 || r >= n {
        return Err(Error::Precondition(format!(
            "deg g = {r} must lie strictly between 0 and deg f = {n}"
        )));
    }
    let k = n - r;
    let (_, rem) = f.right_divmod(g)?;
    if !rem.is_zero() {
        return Err(Error::NotDivisible {
            divisor: g.format(),
            dividend: f.format(),
            side: "right",
        });
    }
    let ctx = &g.ctx;
    let ring = ctx.ring();
    let mut row: Vec<Elem> = (0..n).map(|t| g.coeff(t)).collect();
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        if i > 0 {
            let prev = row;
            row = (0..n)
                .map(|t| {
                    let d = ctx.delta.apply(prev[t]);
                    if t == 0 {
                        d
                    } else {
                        ring.add(d, ctx.sigma.apply(prev[t - 1]))
                    }
                })
                .collect();
        }
        rows.push(row.clone());
    }
    let generator = RMatrix::from_rows(ring, &rows)?;
    Ok(PrincipalSkewCode {
        f: f.clone(),
        g: g.clone(),
        h: None,
        code: LinearCode::from_matrix(&generator),
        generator,
        parity: None,
    })
}

/// `(n-k) x n` matrix whose rows generate the dual of the principal code of
/// `g`, given `f = g h = h g` with `deg h = k`. Entry `(r, c)` is the
/// coefficient `k + r` of the iterate `h^(c)`, where the iterates follow the
/// plain recurrence up to `i = n-k-1` and the `f`-reduced one afterwards.
pub fn dual_parity_matrix(g: &SkewPoly, h: &SkewPoly, f: &SkewPoly) -> Result<RMatrix> {
    g.check_context(f)?;
    h.check_context(f)?;
    let ctx = &f.ctx;
    if !ctx.is_automorphism() {
        return Err(Error::SigmaNotInvertible);
    }
    let n = require_monic(f)?;
    if g.mul(h)? != *f {
        return Err(Error::NotDivisible {
            divisor: g.format(),
            dividend: f.format(),
            side: "left (f = g h)",
        });
    }
    if h.mul(g)? != *f {
        return Err(Error::NotDivisible {
            divisor: g.format(),
            dividend: f.format(),
            side: "right (f = h g)",
        });
    }
    let k = h.degree().expect("h divides a nonzero f");
    let r = g.degree().expect("g divides a nonzero f");
    if k + r != n || k == 0 || r == 0 {
        return Err(Error::Precondition(format!(
            "deg g + deg h must equal deg f with both positive, got {r} + {k} vs {n}"
        )));
    }
    let iterates = parity_iterates(h, f)?;
    let rows: Vec<Vec<Elem>> = (0..n - k)
        .map(|row| iterates.iter().map(|it| it[k + row]).collect())
        .collect();
    RMatrix::from_rows(ctx.ring(), &rows)
}

/// The vectors `h^(0), ..., h^(n-1)` for `h` of degree `k < n`: plain
/// `X`-shifts while the degree stays below `n` (`i <= n-k-1`), reduced by
/// `f` afterwards.
pub fn parity_iterates(h: &SkewPoly, f: &SkewPoly) -> Result<Vec<Vec<Elem>>> {
    h.check_context(f)?;
    let n = require_monic(f)?;
    let k = match h.degree() {
        Some(k) if k < n => k,
        _ => {
            return Err(Error::Precondition(format!(
                "need a nonzero polynomial of degree below {n}"
            )))
        }
    };
    let ctx = &f.ctx;
    let ring = ctx.ring();
    let mut iterates = Vec::with_capacity(n);
    let mut cur: Vec<Elem> = (0..n).map(|t| h.coeff(t)).collect();
    iterates.push(cur.clone());
    for i in 1..n {
        let prev = cur;
        let reduce = i >= n - k;
        let top = ctx.sigma.apply(prev[n - 1]);
        cur = (0..n)
            .map(|t| {
                let mut v = ctx.delta.apply(prev[t]);
                if t > 0 {
                    v = ring.add(v, ctx.sigma.apply(prev[t - 1]));
                }
                if reduce {
                    v = ring.sub(v, ring.mul(f.coeff(t), top));
                }
                v
            })
            .collect();
        iterates.push(cur.clone());
    }
    Ok(iterates)
}

#[derive(Debug, Clone)]
pub struct ConstacyclicReport {
    /// `h` with `g h = X^n - sigma^{-k}(a)`.
    pub h: SkewPoly,
    pub cond1: bool,
    /// Literal coefficient sum for each `l` in `0..=k`.
    pub cond2_per_l: Vec<bool>,
    /// Self-duality of the code itself, by direct computation.
    pub direct: bool,
}

/// Evaluates both self-duality conditions for a constacyclic code
/// generated by a right divisor `g` of `X^n - a`, alongside the direct
/// self-duality verdict.
pub fn constacyclic_selfdual_criteria(g: &SkewPoly, a: Elem, n: usize) -> Result<ConstacyclicReport> {
    let ctx = g.ctx.clone();
    let ring = ctx.ring().clone();
    if !ctx.delta.is_zero() {
        return Err(Error::Precondition("delta must be zero".into()));
    }
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("length {n} must be even and positive")));
    }
    let k = n / 2;
    if !g.is_monic() || g.degree() != Some(k) {
        return Err(Error::Precondition(format!("g must be monic of degree {k}")));
    }
    if !ring.is_unit(g.coeff(0)) {
        return Err(Error::Precondition("g_0 must be a unit".into()));
    }
    let sigma_inv = ctx.sigma_inv.clone().ok_or(Error::SigmaNotInvertible)?;
    if !ring.is_unit(a) {
        return Err(Error::Precondition(format!("a = {} must be a unit", ring.format(a))));
    }
    let xn = ctx.monomial(ring.one(), n);
    let f = xn.sub(&ctx.constant(a))?;
    if !f.right_divmod(g)?.1.is_zero() {
        return Err(Error::NotDivisible {
            divisor: g.format(),
            dividend: f.format(),
            side: "right",
        });
    }
    let shifted = sigma_inv.pow(k as u32)?.apply(a);
    let f_shift = xn.sub(&ctx.constant(shifted))?;
    let (h, rem) = f_shift.left_divmod(g)?;
    if !rem.is_zero() {
        return Err(Error::NotDivisible {
            divisor: g.format(),
            dividend: f_shift.format(),
            side: "left",
        });
    }
    let sigma_k = ctx.sigma.pow(k as u32)?;
    let cond1 = match ring.inv(h.coeff(0)) {
        Some(h0_inv) => h.skew_reciprocal().scale_left(sigma_k.apply(h0_inv)) == *g,
        None => false,
    };
    let sigma_k1 = ctx.sigma.pow(k as u32 - 1)?;
    let cond2_per_l = (0..=k)
        .map(|l| {
            (0..=l)
                .fold(ring.zero(), |acc, i| {
                    ring.add(acc, ring.mul(sigma_k1.apply(g.coeff(i)), g.coeff(i + k - l)))
                })
                .is_zero()
        })
        .collect();
    let direct = principal_code_generator(g, &f)?.code().duality()?.self_dual;
    Ok(ConstacyclicReport {
        h,
        cond1,
        cond2_per_l,
        direct,
    })
}

/// `[g_1 ... g_s] A` for a full-rank `A`.
pub fn build_skew_mpc(codes: &[PrincipalSkewCode], a: &RMatrix) -> Result<MatrixProductCode> {
    if !a.is_full_rank()? {
        return Err(Error::Precondition("the matrix does not have full rank".into()));
    }
    MatrixProductCode::build(codes.iter().map(|c| c.code.clone()).collect(), a.clone())
}

/// The dual of `[g_1 ... g_s] A` assembled from the parity matrices, i.e.
/// `[H_1 ... H_s] (A^{-1})^T`, for a non-singular square `A`.
pub fn skew_mpc_dual(codes: &[PrincipalSkewCode], a: &RMatrix) -> Result<MatrixProductCode> {
    let parity = codes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.parity_code().ok_or_else(|| {
                Error::Precondition(format!("code {} has no parity matrix attached", i + 1))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if !a.is_square() {
        return Err(Error::Shape("a square matrix is required".into()));
    }
    let inv = a
        .inverse()?
        .ok_or_else(|| Error::Precondition("the matrix is singular".into()))?;
    MatrixProductCode::build(parity, inv.transpose())
}

/// Splits a ring literal list such as `[a, 1, 1]` (ascending).
pub fn parse_coefficients(
    ctx: &Arc<SkewContext>,
    list: &str,
    resolve: &dyn Fn(&str) -> Option<Elem>,
) -> Result<SkewPoly> {
    let t = list.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .unwrap_or(t);
    let coeffs = split_top_level(inner, ',')
        .into_iter()
        .map(|s| {
            let s = s.trim();
            resolve(s).map_or_else(|| ctx.ring().parse(s), Ok)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ctx.poly(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3x3_swap() -> (Arc<SkewContext>, Elem) {
        let f3 = Ring::galois(3, 1).unwrap();
        let r = Ring::product(&[f3.clone(), f3]).unwrap();
        let swap = RingMap::endomorphism(&r, &MapDef::Permutation(vec![1, 0])).unwrap();
        let alpha = r.parse("(2,2)").unwrap();
        (SkewContext::twisted(&r, swap).unwrap(), alpha)
    }

    fn gf4_frobenius() -> (Arc<SkewContext>, Elem) {
        let f4 = Ring::galois(2, 2).unwrap();
        let frob = RingMap::endomorphism(&f4, &MapDef::Frobenius { power: 1 }).unwrap();
        let a = f4.generator().unwrap();
        (SkewContext::twisted(&f4, frob).unwrap(), a)
    }

    #[test]
    fn ore_rule_on_x_times_constant() {
        let (ctx, alpha) = gf4_frobenius();
        let ring = ctx.ring().clone();
        let p = ctx.x().mul(&ctx.constant(alpha)).unwrap();
        assert_eq!(p.coeffs(), &[ring.zero(), ring.mul(alpha, alpha)]);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let (ctx, alpha) = f3x3_swap();
        let names = |s: &str| (s == "alpha").then_some(alpha);
        let p = ctx.parse_poly("X^2 + X + alpha", &names).unwrap();
        assert_eq!(p.coeffs(), &[alpha, ctx.ring().one(), ctx.ring().one()]);
        assert_eq!(p.format(), "X^2 + X + (2,2)");
        let q = ctx.parse_poly(&p.format(), &|_| None).unwrap();
        assert_eq!(p, q);
        let m = ctx.parse_poly("X^4 - 1", &|_| None).unwrap();
        assert_eq!(m.coeff(0), ctx.ring().neg(ctx.ring().one()));
        let listed = parse_coefficients(&ctx, "[alpha, 1, 1]", &names).unwrap();
        assert_eq!(listed.coeffs(), &[alpha, ctx.ring().one(), ctx.ring().one()]);
        assert!(ctx.parse_poly("X^ + 1", &|_| None).is_err());
    }

    #[test]
    fn gf_literals_inside_polynomials() {
        let (ctx, a) = gf4_frobenius();
        let ring = ctx.ring().clone();
        let p = ctx.parse_poly("(a+1)X^2 + aX + 1", &|_| None).unwrap();
        assert_eq!(p.coeffs(), &[ring.one(), a, ring.add(a, ring.one())]);
        assert_eq!(ctx.parse_poly(&p.format(), &|_| None).unwrap(), p);
    }

    #[test]
    fn divisor_must_be_monic() {
        let (ctx, alpha) = f3x3_swap();
        let p = ctx.monomial(ctx.ring().one(), 3);
        let g = ctx.monomial(alpha, 1);
        assert_eq!(p.right_divmod(&g).unwrap_err(), Error::NotMonic);
        assert_eq!(p.left_divmod(&g).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn self_division_gives_one() {
        let (ctx, alpha) = f3x3_swap();
        let p = ctx.poly(vec![alpha, alpha, ctx.ring().one()]);
        let (q, r) = p.right_divmod(&p).unwrap();
        assert_eq!(q, ctx.constant(ctx.ring().one()));
        assert!(r.is_zero());
        let (q, r) = p.left_divmod(&p).unwrap();
        assert_eq!(q, ctx.constant(ctx.ring().one()));
        assert!(r.is_zero());
    }

    #[test]
    fn left_division_needs_an_automorphism() {
        // x -> x^2 on Z_2 x Z_2 is the identity; use a non-bijective sigma on F3 x F3
        let f3 = Ring::galois(3, 1).unwrap();
        let r = Ring::product(&[f3.clone(), f3]).unwrap();
        let collapse: Vec<Elem> = r
            .elements()
            .map(|e| {
                let c = r.components(e);
                r.from_components(&[c[0], c[0]])
            })
            .collect();
        let sigma = RingMap::endomorphism(&r, &MapDef::Table(collapse)).unwrap();
        let ctx = SkewContext::twisted(&r, sigma).unwrap();
        assert!(!ctx.is_automorphism());
        let p = ctx.monomial(r.one(), 2);
        let g = ctx.x();
        assert_eq!(p.left_divmod(&g).unwrap_err(), Error::SigmaNotInvertible);
        assert!(p.right_divmod(&g).is_ok());
    }

    #[test]
    fn reciprocal_edge_cases() {
        let (ctx, alpha) = f3x3_swap();
        let c = ctx.constant(alpha);
        assert_eq!(c.skew_reciprocal(), c);
        let x2 = ctx.monomial(ctx.ring().one(), 2);
        assert_eq!(x2.skew_reciprocal(), ctx.constant(ctx.ring().one()));
    }

    #[test]
    fn companion_matrices_in_characteristic_two() {
        let (ctx, _) = gf4_frobenius();
        let one = ctx.ring().one();
        let zero = ctx.ring().zero();
        let f = ctx.parse_poly("X^4 + X^2 + 1", &|_| None).unwrap();
        let c = companion_matrix(&f).unwrap();
        assert_eq!(c.row(3), &[one, zero, one, zero]);
        assert_eq!(c.row(0), &[zero, one, zero, zero]);
        let g = ctx.parse_poly("X^4 + 1", &|_| None).unwrap();
        assert_eq!(companion_matrix(&g).unwrap().row(3), &[one, zero, zero, zero]);
        assert_eq!(companion_matrix(&ctx.constant(one)).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn tf_is_a_cyclic_shift_for_plain_cyclic_codes() {
        let z4 = Ring::zmod(4).unwrap();
        let ctx = SkewContext::twisted(&z4, RingMap::identity(&z4)).unwrap();
        let f = ctx.parse_poly("X^3 - 1", &|_| None).unwrap();
        let t = vec![Elem(1), Elem(2), Elem(3)];
        assert_eq!(apply_tf(&t, &f).unwrap(), vec![Elem(3), Elem(1), Elem(2)]);
        assert_eq!(apply_tf(&[Elem(0); 3], &f).unwrap(), vec![Elem(0); 3]);
        assert!(apply_tf(&t[..2], &f).is_err());
        let f2 = ctx.parse_poly("X^2 - 1", &|_| None).unwrap();
        assert_eq!(companion_matrix(&f2).unwrap().row(1), &[Elem(1), Elem(0)]);
    }

    #[test]
    fn generator_rejects_non_divisors() {
        let (ctx, alpha) = gf4_frobenius();
        let ring = ctx.ring().clone();
        let f = ctx.parse_poly("X^4 + X^2 + 1", &|_| None).unwrap();
        let g = ctx.poly(vec![ring.add(alpha, ring.one()), ring.one()]); // X + a^2
        assert!(matches!(
            principal_code_generator(&g, &f),
            Err(Error::NotDivisible { .. })
        ));
        assert!(matches!(
            principal_code_generator(&f, &f),
            Err(Error::Precondition(_))
        ));
    }
}
