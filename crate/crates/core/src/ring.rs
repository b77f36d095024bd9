//! Finite commutative rings with identity.
//!
//! Three families are supported: integers modulo `m`, Galois fields
//! `GF(p^k)` given by a monic irreducible modulus, and finite direct
//! products of other supported rings. Every element is encoded as an index
//! into a fixed enumeration of the ring, so [`Elem`] is `Copy` and equality
//! of elements is equality of indices.
//!
//! Galois field elements are coefficient vectors over the prime field in the
//! basis `1, a, a^2, ...` where `a` is the class of the indeterminate; the
//! index is `c_0 + c_1 p + c_2 p^2 + ...`. Product elements use mixed radix
//! with the first factor most significant, so enumeration order is the
//! lexicographic order of component tuples.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest ring accepted by [`Ring::new`].
pub const DEFAULT_MAX_RING_SIZE: u32 = 4096;

/// Rings at or below this size get full addition and multiplication tables.
const TABLE_THRESHOLD: u32 = 256;

/// Index of an element in its ring's enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Structural description of a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    IntegersMod(u32),
    /// `GF(p^k)`; `modulus` holds the `k + 1` ascending coefficients of a
    /// monic irreducible polynomial over `GF(p)`.
    GaloisField {
        p: u32,
        k: u32,
        modulus: Vec<u32>,
    },
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn size(&self) -> Option<u64> {
        match self {
            RingSpec::IntegersMod(m) => Some(*m as u64),
            RingSpec::GaloisField { p, k, .. } => (*p as u64).checked_pow(*k),
            RingSpec::Product(fs) => fs
                .iter()
                .try_fold(1u64, |acc, f| acc.checked_mul(f.size()?)),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::IntegersMod(m) => write!(f, "Z_{m}"),
            RingSpec::GaloisField { p, k: 1, .. } => write!(f, "GF({p})"),
            RingSpec::GaloisField { p, k, modulus } => {
                write!(f, "GF({p}^{k}; {})", format_gf_poly(modulus, *p, "a"))
            }
            RingSpec::Product(fs) => {
                for (i, factor) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    if matches!(factor, RingSpec::Product(_)) {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug)]
enum Kind {
    Zmod {
        m: u32,
    },
    Gf {
        p: u32,
        k: u32,
        modulus: Vec<u32>,
        exp: Vec<u32>,
        log: Vec<u32>,
    },
    Product {
        factors: Vec<Ring>,
        place: Vec<u32>,
    },
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

#[derive(Debug)]
struct RingInner {
    spec: RingSpec,
    size: u32,
    kind: Kind,
    tables: Option<Tables>,
}

/// A finite commutative ring with identity. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.spec.fmt(f)
    }
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        Ring::with_cap(spec, DEFAULT_MAX_RING_SIZE)
    }

    pub fn with_cap(spec: RingSpec, max_size: u32) -> Result<Ring> {
        let size = spec
            .size()
            .filter(|&s| s <= max_size as u64)
            .ok_or_else(|| {
                Error::InvalidRing(format!("{spec} exceeds the ring size cap of {max_size}"))
            })? as u32;
        let kind = match &spec {
            RingSpec::IntegersMod(m) => {
                if *m < 2 {
                    return Err(Error::InvalidRing(format!("Z_{m}: modulus must be at least 2")));
                }
                Kind::Zmod { m: *m }
            }
            RingSpec::GaloisField { p, k, modulus } => build_gf(*p, *k, modulus)?,
            RingSpec::Product(fs) => {
                if fs.len() < 2 {
                    return Err(Error::InvalidRing(
                        "a product ring needs at least two factors".into(),
                    ));
                }
                let factors = fs
                    .iter()
                    .map(|f| Ring::with_cap(f.clone(), max_size))
                    .collect::<Result<Vec<_>>>()?;
                let mut place = vec![1u32; factors.len()];
                for i in (0..factors.len() - 1).rev() {
                    place[i] = place[i + 1] * factors[i + 1].size();
                }
                Kind::Product { factors, place }
            }
        };
        let mut inner = RingInner {
            spec,
            size,
            kind,
            tables: None,
        };
        if size <= TABLE_THRESHOLD {
            let ring = Ring(Arc::new(inner));
            let n = size as usize;
            let mut add = vec![0; n * n];
            let mut mul = vec![0; n * n];
            let mut neg = vec![0; n];
            for a in 0..size {
                neg[a as usize] = ring.neg_raw(a);
                for b in 0..size {
                    add[a as usize * n + b as usize] = ring.add_raw(a, b);
                    mul[a as usize * n + b as usize] = ring.mul_raw(a, b);
                }
            }
            inner = Arc::try_unwrap(ring.0).expect("fresh ring has one owner");
            inner.tables = Some(Tables { add, mul, neg });
        }
        Ok(Ring(Arc::new(inner)))
    }

    pub fn zmod(m: u32) -> Result<Ring> {
        Ring::new(RingSpec::IntegersMod(m))
    }

    /// `GF(p^k)` with the lexicographically first monic irreducible modulus.
    pub fn galois(p: u32, k: u32) -> Result<Ring> {
        let modulus = first_irreducible(p, k)
            .ok_or_else(|| Error::InvalidRing(format!("no irreducible of degree {k} over GF({p})")))?;
        Ring::new(RingSpec::GaloisField { p, k, modulus })
    }

    pub fn product(factors: &[Ring]) -> Result<Ring> {
        Ring::new(RingSpec::Product(
            factors.iter().map(|f| f.spec().clone()).collect(),
        ))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        match &self.0.kind {
            Kind::Zmod { .. } | Kind::Gf { .. } => Elem(1),
            Kind::Product { factors, .. } => {
                self.from_components(&vec![Elem(1); factors.len()])
            }
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size()).map(Elem)
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.size() {
            Ok(Elem(index))
        } else {
            Err(Error::Parse {
                what: "element index",
                input: index.to_string(),
                reason: format!("{self} has {} elements", self.size()),
            })
        }
    }

    pub fn is_field(&self) -> bool {
        match &self.0.kind {
            Kind::Zmod { m } => is_prime(*m),
            Kind::Gf { .. } => true,
            Kind::Product { .. } => false,
        }
    }

    pub fn characteristic(&self) -> u32 {
        match &self.0.kind {
            Kind::Zmod { m } => *m,
            Kind::Gf { p, .. } => *p,
            Kind::Product { factors, .. } => factors
                .iter()
                .map(Ring::characteristic)
                .fold(1, |acc, c| acc / gcd(acc, c) * c),
        }
    }

    /// Factors of a product ring; empty for the other kinds.
    pub fn factors(&self) -> &[Ring] {
        match &self.0.kind {
            Kind::Product { factors, .. } => factors,
            _ => &[],
        }
    }

    pub fn components(&self, a: Elem) -> Vec<Elem> {
        match &self.0.kind {
            Kind::Product { factors, place } => factors
                .iter()
                .zip(place)
                .map(|(f, w)| Elem(a.0 / w % f.size()))
                .collect(),
            _ => vec![a],
        }
    }

    pub fn from_components(&self, parts: &[Elem]) -> Elem {
        match &self.0.kind {
            Kind::Product { place, .. } => {
                Elem(parts.iter().zip(place).map(|(e, w)| e.0 * w).sum())
            }
            _ => parts[0],
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.add[(a.0 * self.0.size + b.0) as usize]),
            None => Elem(self.add_raw(a.0, b.0)),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.mul[(a.0 * self.0.size + b.0) as usize]),
            None => Elem(self.mul_raw(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.neg[a.0 as usize]),
            None => Elem(self.neg_raw(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of the integer `i` under the canonical map `Z -> R`.
    pub fn from_int(&self, i: i64) -> Elem {
        match &self.0.kind {
            Kind::Zmod { m } => Elem(i.rem_euclid(*m as i64) as u32),
            Kind::Gf { p, .. } => Elem(i.rem_euclid(*p as i64) as u32),
            Kind::Product { factors, .. } => {
                let parts: Vec<Elem> = factors.iter().map(|f| f.from_int(i)).collect();
                self.from_components(&parts)
            }
        }
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        match &self.0.kind {
            Kind::Zmod { m } => mod_inverse(a.0, *m).map(Elem),
            Kind::Gf { exp, log, .. } => {
                if a.0 == 0 {
                    None
                } else {
                    let order = exp.len() as u32;
                    Some(Elem(exp[((order - log[a.0 as usize]) % order) as usize]))
                }
            }
            Kind::Product { factors, .. } => {
                let parts = self
                    .components(a)
                    .into_iter()
                    .zip(factors)
                    .map(|(c, f)| f.inv(c))
                    .collect::<Option<Vec<_>>>()?;
                Some(self.from_components(&parts))
            }
        }
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inv(a).is_some()
    }

    /// Some `q` with `a * q = b`, if one exists.
    pub fn div_exact(&self, b: Elem, a: Elem) -> Option<Elem> {
        match &self.0.kind {
            Kind::Zmod { m } => {
                let m = *m as u64;
                let g = gcd(a.0 as u64, m);
                if !(b.0 as u64).is_multiple_of(g) {
                    return None;
                }
                let m2 = m / g;
                if m2 == 1 {
                    return Some(Elem(0));
                }
                let inv = mod_inverse(((a.0 as u64 / g) % m2) as u32, m2 as u32)? as u64;
                Some(Elem(((b.0 as u64 / g) * inv % m2) as u32))
            }
            Kind::Gf { .. } => {
                if a.is_zero() {
                    b.is_zero().then_some(Elem(0))
                } else {
                    Some(self.mul(b, self.inv(a)?))
                }
            }
            Kind::Product { factors, .. } => {
                let parts = self
                    .components(b)
                    .into_iter()
                    .zip(self.components(a))
                    .zip(factors)
                    .map(|((bc, ac), f)| f.div_exact(bc, ac))
                    .collect::<Option<Vec<_>>>()?;
                Some(self.from_components(&parts))
            }
        }
    }

    /// Element `a` of `GF(p^k)` (the class of the indeterminate); `None`
    /// for other kinds or for prime fields.
    pub fn generator(&self) -> Option<Elem> {
        match &self.0.kind {
            Kind::Gf { p, k, .. } if *k >= 2 => Some(Elem(*p)),
            _ => None,
        }
    }

    pub fn format(&self, a: Elem) -> String {
        match &self.0.kind {
            Kind::Zmod { .. } => a.0.to_string(),
            Kind::Gf { p, k, .. } => {
                if *k == 1 {
                    a.0.to_string()
                } else {
                    format_gf_poly(&gf_digits(a.0, *p, *k), *p, "a")
                }
            }
            Kind::Product { factors, .. } => {
                let parts: Vec<String> = self
                    .components(a)
                    .into_iter()
                    .zip(factors)
                    .map(|(c, f)| f.format(c))
                    .collect();
                format!("({})", parts.join(","))
            }
        }
    }

    /// Parses an element literal: an integer for `Z_m` and prime fields, a
    /// polynomial in `a` such as `a^2+1` for extension fields, and a
    /// parenthesised tuple such as `(2,0)` for products.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::Parse {
            what: "ring element",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        match &self.0.kind {
            Kind::Zmod { .. } => {
                let i: i64 = strip_parens(&t).parse().map_err(|_| err("expected an integer"))?;
                Ok(self.from_int(i))
            }
            Kind::Gf { p, k, modulus, .. } => {
                let mut coeffs = parse_gf_poly(strip_parens(&t), *p).map_err(|r| err(&r))?;
                if coeffs.len() > *k as usize {
                    poly_rem(&mut coeffs, modulus, *p);
                }
                coeffs.resize(*k as usize, 0);
                Ok(Elem(gf_index(&coeffs, *p)))
            }
            Kind::Product { factors, .. } => {
                if let Ok(i) = t.parse::<i64>() {
                    return Ok(self.from_int(i));
                }
                let inner = t
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| err("expected a parenthesised tuple"))?;
                let parts = split_top_level(inner, ',');
                if parts.len() != factors.len() {
                    return Err(err(&format!("expected {} components", factors.len())));
                }
                let comps = parts
                    .iter()
                    .zip(factors)
                    .map(|(p, f)| f.parse(p))
                    .collect::<Result<Vec<_>>>()?;
                Ok(self.from_components(&comps))
            }
        }
    }

    pub fn element(&self, a: Elem) -> RingElement {
        RingElement {
            ring: self.clone(),
            elem: a,
        }
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        match &self.0.kind {
            Kind::Zmod { m } => ((a as u64 + b as u64) % *m as u64) as u32,
            Kind::Gf { p, k, .. } => {
                let (mut a, mut b) = (a, b);
                let mut out = 0;
                let mut w = 1;
                for _ in 0..*k {
                    out += ((a % p + b % p) % p) * w;
                    a /= p;
                    b /= p;
                    w *= p;
                }
                out
            }
            Kind::Product { factors, place } => factors
                .iter()
                .zip(place)
                .map(|(f, w)| f.add(Elem(a / w % f.size()), Elem(b / w % f.size())).0 * w)
                .sum(),
        }
    }

    fn neg_raw(&self, a: u32) -> u32 {
        match &self.0.kind {
            Kind::Zmod { m } => (*m - a) % *m,
            Kind::Gf { p, k, .. } => {
                let mut a = a;
                let mut out = 0;
                let mut w = 1;
                for _ in 0..*k {
                    out += ((p - a % p) % p) * w;
                    a /= p;
                    w *= p;
                }
                out
            }
            Kind::Product { factors, place } => factors
                .iter()
                .zip(place)
                .map(|(f, w)| f.neg(Elem(a / w % f.size())).0 * w)
                .sum(),
        }
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match &self.0.kind {
            Kind::Zmod { m } => ((a as u64 * b as u64) % *m as u64) as u32,
            Kind::Gf { exp, log, .. } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    let order = exp.len();
                    exp[(log[a as usize] as usize + log[b as usize] as usize) % order]
                }
            }
            Kind::Product { factors, place } => factors
                .iter()
                .zip(place)
                .map(|(f, w)| f.mul(Elem(a / w % f.size()), Elem(b / w % f.size())).0 * w)
                .sum(),
        }
    }

    /// Decomposition into local factors (`Z_{p^e}` or a Galois field),
    /// together with the projection and the idempotent embedding of each.
    pub(crate) fn local_factors(&self) -> Vec<LocalFactor> {
        match &self.0.kind {
            Kind::Zmod { m } => {
                let pp = prime_power_factors(*m);
                if pp.len() == 1 {
                    let (p, e) = pp[0];
                    return vec![LocalFactor::new(
                        self.clone(),
                        Elem(p % m),
                        e,
                        (0..*m).map(Elem).collect(),
                        (0..*m).map(Elem).collect(),
                    )];
                }
                pp.into_iter()
                    .map(|(p, e)| {
                        let q = p.pow(e);
                        let cof = *m / q;
                        let idem = (cof as u64 * mod_inverse(cof % q, q).expect("coprime") as u64
                            % *m as u64) as u32;
                        let local = Ring::zmod(q).expect("prime power modulus");
                        let proj = (0..*m).map(|x| Elem(x % q)).collect();
                        let embed = (0..q)
                            .map(|y| Elem((y as u64 * idem as u64 % *m as u64) as u32))
                            .collect();
                        LocalFactor::new(local, Elem(p % q), e, proj, embed)
                    })
                    .collect()
            }
            Kind::Gf { .. } => vec![LocalFactor::new(
                self.clone(),
                Elem(0),
                1,
                self.elements().collect(),
                self.elements().collect(),
            )],
            Kind::Product { factors, .. } => {
                let mut out = Vec::new();
                for (i, f) in factors.iter().enumerate() {
                    for lf in f.local_factors() {
                        let proj = self
                            .elements()
                            .map(|x| lf.proj[self.components(x)[i].0 as usize])
                            .collect();
                        let embed = lf
                            .embed
                            .iter()
                            .map(|&y| {
                                let mut parts = vec![Elem(0); factors.len()];
                                parts[i] = y;
                                self.from_components(&parts)
                            })
                            .collect();
                        out.push(LocalFactor::new(lf.ring, lf.uniformizer, lf.length, proj, embed));
                    }
                }
                out
            }
        }
    }
}

/// One factor of the decomposition of a ring into local rings. Each local
/// factor is a chain ring: its ideals are the powers of `uniformizer`, and
/// `uniformizer^length = 0`.
#[derive(Debug, Clone)]
pub(crate) struct LocalFactor {
    pub ring: Ring,
    pub uniformizer: Elem,
    pub length: u32,
    pub proj: Vec<Elem>,
    pub embed: Vec<Elem>,
    valuation: Vec<u32>,
}

impl LocalFactor {
    fn new(ring: Ring, uniformizer: Elem, length: u32, proj: Vec<Elem>, embed: Vec<Elem>) -> Self {
        let pis: Vec<Elem> = (0..=length).map(|v| ring.pow(uniformizer, v as u64)).collect();
        let valuation = ring
            .elements()
            .map(|x| {
                (0..=length)
                    .rev()
                    .find(|&v| ring.div_exact(x, pis[v as usize]).is_some())
                    .unwrap_or(0)
            })
            .collect();
        LocalFactor {
            ring,
            uniformizer,
            length,
            proj,
            embed,
            valuation,
        }
    }

    /// Largest `v` with `uniformizer^v | x`; `length` for zero.
    pub fn valuation(&self, x: Elem) -> u32 {
        self.valuation[x.0 as usize]
    }

    pub fn uniformizer_pow(&self, v: u32) -> Elem {
        self.ring.pow(self.uniformizer, v as u64)
    }

    /// Size of the residue field.
    pub fn residue_size(&self) -> u32 {
        let n = self.ring.size();
        (1..=n).find(|r| r.pow(self.length) == n).unwrap_or(n)
    }
}

/// An element bundled with its ring, for checked arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub ring: Ring,
    pub elem: Elem,
}

impl RingElement {
    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.ring.element(self.ring.add(self.elem, other.elem)))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.ring.element(self.ring.sub(self.elem, other.elem)))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.ring.element(self.ring.mul(self.elem, other.elem)))
    }

    pub fn neg(&self) -> RingElement {
        self.ring.element(self.ring.neg(self.elem))
    }

    pub fn inverse(&self) -> Option<RingElement> {
        self.ring.inv(self.elem).map(|e| self.ring.element(e))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(self.elem))
    }
}

fn build_gf(p: u32, k: u32, modulus: &[u32]) -> Result<Kind> {
    if !is_prime(p) {
        return Err(Error::InvalidRing(format!("GF: {p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidRing("GF: degree must be at least 1".into()));
    }
    if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
        return Err(Error::InvalidRing(format!(
            "GF({p}^{k}): modulus must be monic of degree {k} (ascending coefficients)"
        )));
    }
    if modulus.iter().any(|&c| c >= p) {
        return Err(Error::InvalidRing(format!(
            "GF({p}^{k}): modulus coefficients must lie in [0, {p})"
        )));
    }
    if !is_irreducible(modulus, p) {
        return Err(Error::InvalidRing(format!(
            "GF({p}^{k}): {} is reducible over GF({p})",
            format_gf_poly(modulus, p, "x")
        )));
    }
    let q = p.pow(k);
    let mul = |a: u32, b: u32| -> u32 {
        let prod = poly_mulmod(&gf_digits(a, p, k), &gf_digits(b, p, k), modulus, p);
        gf_index(&prod, p)
    };
    let mut exp = Vec::new();
    let mut log = vec![0u32; q as usize];
    for g in 1..q {
        let mut powers = vec![1u32];
        let mut x = g;
        while x != 1 {
            powers.push(x);
            x = mul(x, g);
        }
        if powers.len() as u32 == q - 1 {
            exp = powers;
            break;
        }
    }
    if q == 2 {
        exp = vec![1];
    }
    for (i, &x) in exp.iter().enumerate() {
        log[x as usize] = i as u32;
    }
    Ok(Kind::Gf {
        p,
        k,
        modulus: modulus.to_vec(),
        exp,
        log,
    })
}

fn gf_digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn gf_index(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, modulus, p);
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

/// Reduces `a` in place modulo the monic `modulus`.
fn poly_rem(a: &mut [u32], modulus: &[u32], p: u32) {
    let k = modulus.len() - 1;
    for top in (k..a.len()).rev() {
        let c = a[top];
        if c != 0 {
            for (j, &m) in modulus.iter().enumerate() {
                let idx = top - k + j;
                a[idx] = (a[idx] + (p - c) * m) % p;
            }
        }
    }
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        // every monic polynomial of degree d
        for idx in 0..p.pow(d as u32) {
            let mut divisor = gf_digits(idx, p, d as u32);
            divisor.push(1);
            let mut rem = modulus.to_vec();
            poly_rem(&mut rem, &divisor, p);
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn first_irreducible(p: u32, k: u32) -> Option<Vec<u32>> {
    if !is_prime(p) || k == 0 {
        return None;
    }
    (0..p.checked_pow(k)?).find_map(|idx| {
        let mut m = gf_digits(idx, p, k);
        m.push(1);
        is_irreducible(&m, p).then_some(m)
    })
}

fn format_gf_poly(coeffs: &[u32], _p: u32, var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn parse_gf_poly(s: &str, p: u32) -> std::result::Result<Vec<u32>, String> {
    if s.is_empty() {
        return Err("empty literal".into());
    }
    let mut coeffs: Vec<u32> = Vec::new();
    let mut rest = s;
    let mut sign = 1i64;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        let (coef, power) = match term.find('a') {
            None => (
                term.parse::<i64>().map_err(|_| format!("bad term {term:?}"))?,
                0usize,
            ),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let c = if c.is_empty() {
                    1
                } else {
                    c.parse::<i64>().map_err(|_| format!("bad coefficient {c:?}"))?
                };
                let tail = &term[pos + 1..];
                let e = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| format!("bad exponent in {term:?}"))?
                };
                (c, e)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = ((coeffs[power] as i64 + sign * coef).rem_euclid(p as i64)) as u32;
        if end == rest.len() {
            break;
        }
        sign = if rest.as_bytes()[end] == b'-' { -1 } else { 1 };
        rest = &rest[end + 1..];
    }
    Ok(coeffs)
}

fn strip_parens(s: &str) -> &str {
    let mut t = s;
    while t.starts_with('(') && t.ends_with(')') && split_top_level(&t[1..t.len() - 1], ',').len() == 1
    {
        t = &t[1..t.len() - 1];
    }
    t
}

/// Splits on `sep` outside any parentheses or brackets.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub(crate) fn gcd<T>(mut a: T, mut b: T) -> T
where
    T: Copy + PartialEq + Default + std::ops::Rem<Output = T>,
{
    while b != T::default() {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_inverse(a: u32, m: u32) -> Option<u32> {
    let (mut old_r, mut r) = (a as i64 % m as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1 || (m == 1)).then(|| old_s.rem_euclid(m as i64) as u32)
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_power_factors(mut m: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}
