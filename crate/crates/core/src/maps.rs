//! Ring endomorphisms and sigma-derivations, validated exhaustively.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapRole {
    Endomorphism,
    Derivation,
}

/// How a map is described before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapDef {
    Identity,
    /// `x -> x^(p^power)` on a Galois field of characteristic `p`.
    Frobenius { power: u32 },
    /// On a product ring, component `i` of the image is component `perm[i]`
    /// of the argument.
    Permutation(Vec<usize>),
    /// The zero map (only meaningful as a derivation).
    Zero,
    /// Inner derivation `a -> beta * (sigma(a) - a)`.
    Inner { beta: Elem },
    /// Explicit images, indexed by element enumeration order.
    Table(Vec<Elem>),
}

/// A validated endomorphism or sigma-derivation, stored as a value table.
#[derive(Debug, Clone)]
pub struct RingMap {
    ring: Ring,
    role: MapRole,
    table: Arc<Vec<Elem>>,
}

impl PartialEq for RingMap {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.role == other.role && self.table == other.table
    }
}

impl Eq for RingMap {}

impl RingMap {
    pub fn endomorphism(ring: &Ring, def: &MapDef) -> Result<RingMap> {
        let table = build_table(ring, def, None)?;
        validate_endomorphism(ring, &table)?;
        Ok(RingMap {
            ring: ring.clone(),
            role: MapRole::Endomorphism,
            table: Arc::new(table),
        })
    }

    /// A sigma-derivation: additive, `delta(1) = 0` and
    /// `delta(ab) = sigma(a) delta(b) + delta(a) b`.
    pub fn derivation(ring: &Ring, sigma: &RingMap, def: &MapDef) -> Result<RingMap> {
        if sigma.role != MapRole::Endomorphism || &sigma.ring != ring {
            return Err(Error::Precondition(
                "a derivation must be attached to an endomorphism of the same ring".into(),
            ));
        }
        let table = build_table(ring, def, Some(sigma))?;
        validate_derivation(ring, sigma, &table)?;
        Ok(RingMap {
            ring: ring.clone(),
            role: MapRole::Derivation,
            table: Arc::new(table),
        })
    }

    pub fn identity(ring: &Ring) -> RingMap {
        RingMap {
            ring: ring.clone(),
            role: MapRole::Endomorphism,
            table: Arc::new(ring.elements().collect()),
        }
    }

    pub fn zero_derivation(ring: &Ring) -> RingMap {
        RingMap {
            ring: ring.clone(),
            role: MapRole::Derivation,
            table: Arc::new(vec![ring.zero(); ring.size() as usize]),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn role(&self) -> MapRole {
        self.role
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a.index() as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, e)| e.index() as usize == i)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|e| e.is_zero())
    }

    /// `self ∘ other` for two endomorphisms.
    pub fn compose(&self, other: &RingMap) -> Result<RingMap> {
        if self.role != MapRole::Endomorphism || other.role != MapRole::Endomorphism {
            return Err(Error::Precondition("only endomorphisms compose".into()));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(RingMap {
            ring: self.ring.clone(),
            role: MapRole::Endomorphism,
            table: Arc::new(other.table.iter().map(|&a| self.apply(a)).collect()),
        })
    }

    /// `k`-fold composite of an endomorphism (`k = 0` gives the identity).
    pub fn pow(&self, k: u32) -> Result<RingMap> {
        let mut acc = RingMap::identity(&self.ring);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Inverse of a bijective endomorphism.
    pub fn inverse(&self) -> Option<RingMap> {
        if self.role != MapRole::Endomorphism {
            return None;
        }
        let mut inv = vec![None; self.table.len()];
        for (i, &img) in self.table.iter().enumerate() {
            let slot = &mut inv[img.index() as usize];
            if slot.is_some() {
                return None;
            }
            *slot = Some(Elem(i as u32));
        }
        Some(RingMap {
            ring: self.ring.clone(),
            role: MapRole::Endomorphism,
            table: Arc::new(inv.into_iter().collect::<Option<Vec<_>>>()?),
        })
    }
}

fn build_table(ring: &Ring, def: &MapDef, sigma: Option<&RingMap>) -> Result<Vec<Elem>> {
    let n = ring.size() as usize;
    Ok(match def {
        MapDef::Identity => ring.elements().collect(),
        MapDef::Zero => vec![ring.zero(); n],
        MapDef::Frobenius { power } => {
            let p = match ring.spec() {
                RingSpec::GaloisField { p, .. } => *p as u64,
                _ => {
                    return Err(Error::Precondition(
                        "the Frobenius map is defined here on Galois fields only".into(),
                    ))
                }
            };
            let e = p.pow(*power);
            ring.elements().map(|a| ring.pow(a, e)).collect()
        }
        MapDef::Permutation(perm) => {
            let factors = ring.factors();
            if factors.is_empty() || perm.len() != factors.len() {
                return Err(Error::Precondition(format!(
                    "a component permutation needs a product ring with {} factors",
                    perm.len()
                )));
            }
            let mut seen = vec![false; perm.len()];
            for (i, &src) in perm.iter().enumerate() {
                if src >= perm.len() || std::mem::replace(&mut seen[src], true) {
                    return Err(Error::Precondition(format!("{perm:?} is not a permutation")));
                }
                if factors[src] != factors[i] {
                    return Err(Error::Precondition(format!(
                        "factors {i} and {src} differ, cannot permute them"
                    )));
                }
            }
            ring.elements()
                .map(|a| {
                    let c = ring.components(a);
                    let moved: Vec<Elem> = perm.iter().map(|&src| c[src]).collect();
                    ring.from_components(&moved)
                })
                .collect()
        }
        MapDef::Inner { beta } => {
            let sigma = sigma.ok_or_else(|| {
                Error::Precondition("an inner derivation needs its sigma".into())
            })?;
            ring.elements()
                .map(|a| ring.mul(*beta, ring.sub(sigma.apply(a), a)))
                .collect()
        }
        MapDef::Table(values) => {
            if values.len() != n || values.iter().any(|v| v.index() >= ring.size()) {
                return Err(Error::Precondition(format!(
                    "a value table must list {n} elements of {ring}"
                )));
            }
            values.clone()
        }
    })
}

fn validate_endomorphism(ring: &Ring, t: &[Elem]) -> Result<()> {
    let f = |a: Elem| t[a.index() as usize];
    if f(ring.one()) != ring.one() {
        return Err(Error::AxiomViolation {
            axiom: "sigma(1) = 1",
            a: ring.format(ring.one()),
            b: ring.format(ring.one()),
        });
    }
    for a in ring.elements() {
        for b in ring.elements() {
            if f(ring.add(a, b)) != ring.add(f(a), f(b)) {
                return Err(violation(ring, "additivity", a, b));
            }
            if f(ring.mul(a, b)) != ring.mul(f(a), f(b)) {
                return Err(violation(ring, "multiplicativity", a, b));
            }
        }
    }
    Ok(())
}

fn validate_derivation(ring: &Ring, sigma: &RingMap, t: &[Elem]) -> Result<()> {
    let d = |a: Elem| t[a.index() as usize];
    if !d(ring.one()).is_zero() {
        return Err(Error::AxiomViolation {
            axiom: "delta(1) = 0",
            a: ring.format(ring.one()),
            b: ring.format(ring.one()),
        });
    }
    for a in ring.elements() {
        for b in ring.elements() {
            if d(ring.add(a, b)) != ring.add(d(a), d(b)) {
                return Err(violation(ring, "additivity", a, b));
            }
            let rhs = ring.add(ring.mul(sigma.apply(a), d(b)), ring.mul(d(a), b));
            if d(ring.mul(a, b)) != rhs {
                return Err(violation(ring, "sigma-Leibniz rule", a, b));
            }
        }
    }
    Ok(())
}

fn violation(ring: &Ring, axiom: &'static str, a: Elem, b: Elem) -> Error {
    Error::AxiomViolation {
        axiom,
        a: ring.format(a),
        b: ring.format(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3x3() -> Ring {
        let f3 = Ring::galois(3, 1).unwrap();
        Ring::product(&[f3.clone(), f3]).unwrap()
    }

    #[test]
    fn swap_is_an_automorphism_of_order_two() {
        let r = f3x3();
        let swap = RingMap::endomorphism(&r, &MapDef::Permutation(vec![1, 0])).unwrap();
        let x = r.parse("(1,2)").unwrap();
        assert_eq!(r.format(swap.apply(x)), "(2,1)");
        assert!(swap.pow(2).unwrap().is_identity());
        assert_eq!(swap.inverse().unwrap(), swap);
    }

    #[test]
    fn frobenius_on_gf4_squares_alpha() {
        let f4 = Ring::galois(2, 2).unwrap();
        let frob = RingMap::endomorphism(&f4, &MapDef::Frobenius { power: 1 }).unwrap();
        let a = f4.generator().unwrap();
        assert_eq!(frob.apply(a), f4.mul(a, a));
        assert!(frob.pow(2).unwrap().is_identity());
    }

    #[test]
    fn doubling_on_z4_is_rejected() {
        let z4 = Ring::zmod(4).unwrap();
        let table = z4.elements().map(|a| z4.add(a, a)).collect();
        let err = RingMap::endomorphism(&z4, &MapDef::Table(table)).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { axiom: "sigma(1) = 1", .. }));
    }

    #[test]
    fn broken_table_names_the_failing_pair() {
        let z4 = Ring::zmod(4).unwrap();
        // fixes 0 and 1 but is not additive
        let table = vec![Elem(0), Elem(1), Elem(3), Elem(2)];
        let err = RingMap::endomorphism(&z4, &MapDef::Table(table)).unwrap_err();
        assert_eq!(
            err,
            Error::AxiomViolation {
                axiom: "additivity",
                a: "1".into(),
                b: "1".into()
            }
        );
    }

    #[test]
    fn inner_derivation_satisfies_leibniz() {
        let f4 = Ring::galois(2, 2).unwrap();
        let frob = RingMap::endomorphism(&f4, &MapDef::Frobenius { power: 1 }).unwrap();
        let beta = f4.generator().unwrap();
        let d = RingMap::derivation(&f4, &frob, &MapDef::Inner { beta }).unwrap();
        assert!(!d.is_zero());
        // an inner derivation for sigma is not one for the identity
        let id = RingMap::identity(&f4);
        assert!(RingMap::derivation(&f4, &id, &MapDef::Table(d.table().to_vec())).is_err());
    }

    #[test]
    fn zero_derivation_validates_for_every_sigma() {
        let r = f3x3();
        for def in [MapDef::Identity, MapDef::Permutation(vec![1, 0])] {
            let sigma = RingMap::endomorphism(&r, &def).unwrap();
            assert!(RingMap::derivation(&r, &sigma, &MapDef::Zero).is_ok());
        }
    }
}
