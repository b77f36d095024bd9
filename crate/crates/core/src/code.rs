//! Linear codes over a finite commutative ring, given by generator rows.
//!
//! Generators may be dependent and the code need not be free. Structural
//! questions (cardinality, membership, freeness, dual) are answered from the
//! local diagonal reductions of the generator matrix; distance and the LCD
//! test enumerate codewords under a [`Budget`].
//!
//! All implemented rings are Frobenius, so `|C| * |C^perp| = |R|^n`.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{dot, local_forms_of, next_tuple, LocalForm, RMatrix};
use crate::ring::{Elem, Ring};

/// Enumeration caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest code that may be enumerated word by word.
    pub codewords: u64,
    /// Largest number of element operations for an exhaustive kernel scan.
    pub kernel_ops: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            codewords: 1_000_000,
            kernel_ops: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Freeness {
    Free { rank: usize },
    NotFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualityClass {
    SelfDual,
    SelfOrthogonalOnly,
    Lcd,
    None,
}

impl fmt::Display for DualityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualityClass::SelfDual => "self-dual",
            DualityClass::SelfOrthogonalOnly => "self-orthogonal",
            DualityClass::Lcd => "LCD",
            DualityClass::None => "none",
        })
    }
}

/// The three duality predicates, computed independently of each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualityProfile {
    pub self_orthogonal: bool,
    pub self_dual: bool,
    pub lcd: bool,
}

impl DualityProfile {
    /// Self-dual first, then LCD, then self-orthogonal. The zero code is
    /// both self-orthogonal and LCD and reports as LCD.
    pub fn class(&self) -> DualityClass {
        if self.self_dual {
            DualityClass::SelfDual
        } else if self.lcd {
            DualityClass::Lcd
        } else if self.self_orthogonal {
            DualityClass::SelfOrthogonalOnly
        } else {
            DualityClass::None
        }
    }
}

#[derive(Debug)]
pub struct LinearCode {
    ring: Ring,
    length: usize,
    generators: Vec<Vec<Elem>>,
    budget: Budget,
    forms: OnceLock<Vec<LocalForm>>,
    distance: OnceLock<usize>,
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        LinearCode {
            ring: self.ring.clone(),
            length: self.length,
            generators: self.generators.clone(),
            budget: self.budget,
            forms: self.forms.clone(),
            distance: self.distance.clone(),
        }
    }
}

impl LinearCode {
    pub fn new(ring: &Ring, length: usize, generators: Vec<Vec<Elem>>) -> Result<LinearCode> {
        for g in &generators {
            if g.len() != length {
                return Err(Error::Shape(format!(
                    "generator of length {} in a code of length {length}",
                    g.len()
                )));
            }
            if g.iter().any(|e| e.index() >= ring.size()) {
                return Err(Error::Shape(format!("generator entry outside {ring}")));
            }
        }
        Ok(LinearCode::new_unchecked(ring, length, generators))
    }

    pub(crate) fn new_unchecked(ring: &Ring, length: usize, generators: Vec<Vec<Elem>>) -> Self {
        LinearCode {
            ring: ring.clone(),
            length,
            generators,
            budget: Budget::default(),
            forms: OnceLock::new(),
            distance: OnceLock::new(),
        }
    }

    pub fn from_matrix(g: &RMatrix) -> LinearCode {
        LinearCode::new_unchecked(g.ring(), g.cols(), g.row_vecs())
    }

    pub fn zero(ring: &Ring, length: usize) -> LinearCode {
        LinearCode::new_unchecked(ring, length, Vec::new())
    }

    pub fn full_space(ring: &Ring, length: usize) -> LinearCode {
        LinearCode::from_matrix(&RMatrix::identity(ring, length))
    }

    pub fn with_budget(mut self, budget: Budget) -> LinearCode {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn generators(&self) -> &[Vec<Elem>] {
        &self.generators
    }

    pub fn generator_matrix(&self) -> RMatrix {
        if self.generators.is_empty() {
            return RMatrix::zero(&self.ring, 0, self.length);
        }
        RMatrix::from_rows(&self.ring, &self.generators).expect("generators share a length")
    }

    fn forms(&self) -> &[LocalForm] {
        self.forms.get_or_init(|| {
            local_forms_of(
                &self.ring,
                self.generators.len(),
                self.length,
                &self.generators.concat(),
            )
        })
    }

    pub fn cardinality(&self) -> u128 {
        self.forms()
            .iter()
            .fold(1u128, |acc, f| acc.saturating_mul(f.span_size()))
    }

    /// Free of rank `k` when the code has an `R`-basis with `k` elements.
    pub fn freeness(&self) -> Freeness {
        let mut ranks = self.forms().iter().map(LocalForm::free_rank);
        let Some(Some(first)) = ranks.next() else {
            return Freeness::NotFree;
        };
        if ranks.all(|r| r == Some(first)) {
            Freeness::Free { rank: first }
        } else {
            Freeness::NotFree
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self.freeness(), Freeness::Free { .. })
    }

    /// Whether the generator rows themselves are linearly independent.
    pub fn generators_independent(&self) -> bool {
        self.forms().iter().all(LocalForm::rows_independent)
    }

    /// An `R`-basis when the code is free.
    pub fn free_basis(&self) -> Option<Vec<Vec<Elem>>> {
        let Freeness::Free { rank } = self.freeness() else {
            return None;
        };
        let mut basis = vec![vec![self.ring.zero(); self.length]; rank];
        for form in self.forms() {
            for (b, red) in basis.iter_mut().zip(&form.reduced) {
                for (x, &y) in b.iter_mut().zip(red) {
                    *x = self.ring.add(*x, form.factor.embed[y.index() as usize]);
                }
            }
        }
        Some(basis)
    }

    /// The same code, regenerated by a basis when it is free.
    pub fn with_basis_generators(&self) -> LinearCode {
        match self.free_basis() {
            Some(b) => LinearCode::new_unchecked(&self.ring, self.length, b).with_budget(self.budget),
            None => self.clone(),
        }
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.length {
            return Err(Error::Shape(format!(
                "vector of length {} against a code of length {}",
                v.len(),
                self.length
            )));
        }
        Ok(self.forms().iter().all(|form| {
            let proj: Vec<Elem> = v.iter().map(|e| form.factor.proj[e.index() as usize]).collect();
            form.contains(&proj)
        }))
    }

    /// Same ring, same length and mutual containment of generators.
    pub fn equals(&self, other: &LinearCode) -> Result<bool> {
        self.compatible(other)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool> {
        self.compatible(other)?;
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn compatible(&self, other: &LinearCode) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        if self.length != other.length {
            return Err(Error::Shape(format!(
                "codes of length {} and {}",
                self.length, other.length
            )));
        }
        Ok(())
    }

    /// `C^perp`: the right kernel of the generator matrix.
    pub fn dual(&self) -> LinearCode {
        let gt = if self.generators.is_empty() {
            RMatrix::zero(&self.ring, self.length, 0)
        } else {
            self.generator_matrix().transpose()
        };
        gt.left_kernel().with_budget(self.budget)
    }

    /// All codewords, sorted in enumeration order.
    pub fn enumerate(&self) -> Result<Vec<Vec<Elem>>> {
        let mut words = self.word_set()?.into_words(self.length);
        words.sort_unstable();
        Ok(words)
    }

    fn word_set(&self) -> Result<WordSet> {
        let card = self.cardinality();
        if card > self.budget.codewords as u128 {
            return Err(Error::BudgetExceeded {
                needed: card,
                cap: self.budget.codewords,
            });
        }
        let mut set = WordSet::new(self.ring.size(), self.length);
        set.insert(&vec![self.ring.zero(); self.length]);
        for g in &self.generators {
            if set.contains(g) {
                continue;
            }
            // close the set under adding multiples of g
            let current = set.words(self.length);
            let multiples: Vec<Vec<Elem>> = self
                .ring
                .elements()
                .skip(1)
                .map(|c| g.iter().map(|&x| self.ring.mul(c, x)).collect())
                .collect();
            for w in &current {
                for m in &multiples {
                    let sum: Vec<Elem> = w.iter().zip(m).map(|(&a, &b)| self.ring.add(a, b)).collect();
                    set.insert(&sum);
                }
            }
        }
        Ok(set)
    }

    /// Minimum Hamming weight over nonzero codewords.
    pub fn min_distance(&self) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let d = self
            .word_set()?
            .words(self.length)
            .iter()
            .map(|w| hamming_weight(w))
            .filter(|&w| w > 0)
            .min()
            .ok_or(Error::UndefinedDistance)?;
        Ok(*self.distance.get_or_init(|| d))
    }

    /// Codewords of minimum weight, sorted.
    pub fn min_weight_words(&self) -> Result<Vec<Vec<Elem>>> {
        let d = self.min_distance()?;
        let mut words: Vec<Vec<Elem>> = self
            .word_set()?
            .words(self.length)
            .into_iter()
            .filter(|w| hamming_weight(w) == d)
            .collect();
        words.sort_unstable();
        Ok(words)
    }

    /// `G G^T = 0`.
    pub fn is_self_orthogonal(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators
                .iter()
                .all(|b| dot(&self.ring, a, b).is_zero())
        })
    }

    pub fn duality(&self) -> Result<DualityProfile> {
        let self_orthogonal = self.is_self_orthogonal();
        let dual = self.dual();
        let self_dual = self_orthogonal && self.cardinality() == dual.cardinality();
        let (small, big) = if self.cardinality() <= dual.cardinality() {
            (self, &dual)
        } else {
            (&dual, self)
        };
        let mut lcd = true;
        for w in small.word_set()?.words(self.length) {
            if w.iter().any(|e| !e.is_zero()) && big.contains(&w)? {
                lcd = false;
                break;
            }
        }
        Ok(DualityProfile {
            self_orthogonal,
            self_dual,
            lcd,
        })
    }

    pub fn duality_class(&self) -> Result<DualityClass> {
        Ok(self.duality()?.class())
    }
}

pub fn hamming_weight(v: &[Elem]) -> usize {
    v.iter().filter(|e| !e.is_zero()).count()
}

/// Every `x G` for `x` in `R^(#generators)`, deduplicated and sorted. This
/// is the direct definition of the span and serves as an oracle for
/// [`LinearCode::enumerate`].
pub fn span_by_coefficients(code: &LinearCode) -> Result<Vec<Vec<Elem>>> {
    let ring = code.ring();
    let k = code.generators().len();
    let total = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(ring.size() as u128));
    match total {
        Some(t) if t <= code.budget().kernel_ops as u128 => {}
        _ => {
            return Err(Error::BudgetExceeded {
                needed: total.unwrap_or(u128::MAX),
                cap: code.budget().kernel_ops,
            })
        }
    }
    let g = code.generators().concat();
    let mut x = vec![ring.zero(); k];
    let mut seen = HashSet::new();
    loop {
        seen.insert(crate::linalg::vec_mat(ring, &x, &g, code.length()));
        if !next_tuple(&mut x, ring.size()) {
            break;
        }
    }
    let mut words: Vec<Vec<Elem>> = seen.into_iter().collect();
    words.sort_unstable();
    Ok(words)
}

/// Dual code computed by scanning all of `R^n` against the generators.
pub fn dual_by_exhaustion(code: &LinearCode) -> Result<Vec<Vec<Elem>>> {
    let ring = code.ring();
    let n = code.length();
    let total = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(ring.size() as u128));
    let work = total.and_then(|t| t.checked_mul((n * code.generators().len()).max(1) as u128));
    match work {
        Some(w) if w <= code.budget().kernel_ops as u128 => {}
        _ => {
            return Err(Error::BudgetExceeded {
                needed: work.unwrap_or(u128::MAX),
                cap: code.budget().kernel_ops,
            })
        }
    }
    let mut y = vec![ring.zero(); n];
    let mut out = Vec::new();
    loop {
        if code.generators().iter().all(|g| dot(ring, g, &y).is_zero()) {
            out.push(y.clone());
        }
        if !next_tuple(&mut y, ring.size()) {
            break;
        }
    }
    Ok(out)
}

/// A set of words, packed into `u128` keys when they fit.
enum WordSet {
    Packed { bits: u32, set: HashSet<u128> },
    Plain(HashSet<Vec<Elem>>),
}

impl WordSet {
    fn new(q: u32, length: usize) -> WordSet {
        let bits = 32 - (q.max(2) - 1).leading_zeros();
        if bits as usize * length <= 128 {
            WordSet::Packed {
                bits,
                set: HashSet::new(),
            }
        } else {
            WordSet::Plain(HashSet::new())
        }
    }

    fn insert(&mut self, w: &[Elem]) {
        match self {
            WordSet::Packed { bits, set } => {
                set.insert(pack(w, *bits));
            }
            WordSet::Plain(set) => {
                set.insert(w.to_vec());
            }
        }
    }

    fn contains(&self, w: &[Elem]) -> bool {
        match self {
            WordSet::Packed { bits, set } => set.contains(&pack(w, *bits)),
            WordSet::Plain(set) => set.contains(w),
        }
    }

    fn words(&self, length: usize) -> Vec<Vec<Elem>> {
        match self {
            WordSet::Packed { bits, set } => set.iter().map(|&k| unpack(k, *bits, length)).collect(),
            WordSet::Plain(set) => set.iter().cloned().collect(),
        }
    }

    fn into_words(self, length: usize) -> Vec<Vec<Elem>> {
        match self {
            WordSet::Plain(set) => set.into_iter().collect(),
            packed => packed.words(length),
        }
    }
}

fn pack(w: &[Elem], bits: u32) -> u128 {
    w.iter().fold(0u128, |acc, e| (acc << bits) | e.index() as u128)
}

fn unpack(mut key: u128, bits: u32, length: usize) -> Vec<Elem> {
    let mask = (1u128 << bits) - 1;
    let mut out = vec![Elem(0); length];
    for slot in out.iter_mut().rev() {
        *slot = Elem((key & mask) as u32);
        key >>= bits;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32) -> Ring {
        Ring::zmod(m).unwrap()
    }

    fn ints(ring: &Ring, rows: &[&[i64]]) -> Vec<Vec<Elem>> {
        rows.iter()
            .map(|r| r.iter().map(|&i| ring.from_int(i)).collect())
            .collect()
    }

    #[test]
    fn ten_z20_is_not_free_and_its_dual_is_two_z20() {
        let z20 = z(20);
        let c1 = LinearCode::new(&z20, 1, ints(&z20, &[&[10]])).unwrap();
        assert_eq!(c1.enumerate().unwrap(), ints(&z20, &[&[0], &[10]]));
        assert_eq!(c1.freeness(), Freeness::NotFree);
        let c2 = LinearCode::new(&z20, 1, ints(&z20, &[&[2]])).unwrap();
        assert!(c1.dual().equals(&c2).unwrap());
        assert!(c2.dual().equals(&c1).unwrap());
        assert!(!c1.equals(&c2).unwrap());
        let profile = c1.duality().unwrap();
        assert!(profile.self_orthogonal && !profile.self_dual && !profile.lcd);
        assert_eq!(profile.class(), DualityClass::SelfOrthogonalOnly);
    }

    #[test]
    fn zero_code_and_full_space() {
        let z4 = z(4);
        let zero = LinearCode::zero(&z4, 3);
        assert_eq!(zero.enumerate().unwrap().len(), 1);
        assert_eq!(zero.min_distance(), Err(Error::UndefinedDistance));
        assert!(zero.dual().equals(&LinearCode::full_space(&z4, 3)).unwrap());
        let full = LinearCode::full_space(&z4, 3);
        assert_eq!(full.min_distance().unwrap(), 1);
        assert_eq!(full.freeness(), Freeness::Free { rank: 3 });
        assert_eq!(full.duality_class().unwrap(), DualityClass::Lcd);
    }

    #[test]
    fn z4_row_codes_weights() {
        let z4 = z(4);
        let cl1 = LinearCode::new(&z4, 3, ints(&z4, &[&[1, 2, 0]])).unwrap();
        assert_eq!(cl1.enumerate().unwrap().len(), 4);
        assert_eq!(cl1.min_distance().unwrap(), 1);
        assert_eq!(cl1.min_weight_words().unwrap(), ints(&z4, &[&[2, 0, 0]]));
        let cl2 = LinearCode::new(&z4, 3, ints(&z4, &[&[1, 2, 0], &[0, 2, 1]])).unwrap();
        assert_eq!(
            cl2.min_weight_words().unwrap(),
            ints(&z4, &[&[0, 0, 2], &[2, 0, 0]])
        );
        let swapped = LinearCode::new(&z4, 3, ints(&z4, &[&[0, 2, 1], &[1, 2, 0]])).unwrap();
        assert!(cl2.equals(&swapped).unwrap());
    }

    #[test]
    fn dependent_generators_can_still_be_free() {
        let z4 = z(4);
        let c = LinearCode::new(&z4, 2, ints(&z4, &[&[1, 1], &[2, 2], &[3, 3]])).unwrap();
        assert_eq!(c.freeness(), Freeness::Free { rank: 1 });
        assert!(!c.generators_independent());
        let basis = c.free_basis().unwrap();
        assert_eq!(basis.len(), 1);
        assert!(LinearCode::new(&z4, 2, basis).unwrap().equals(&c).unwrap());
    }

    #[test]
    fn mixed_local_ranks_are_not_free() {
        // 3 Z6 is Z2-torsion: rank 1 mod 2, rank 0 mod 3
        let z6 = z(6);
        let c = LinearCode::new(&z6, 1, ints(&z6, &[&[3]])).unwrap();
        assert_eq!(c.freeness(), Freeness::NotFree);
        assert_eq!(c.cardinality(), 2);
        assert_eq!(c.cardinality() * c.dual().cardinality(), 6);
    }

    #[test]
    fn wrong_length_generator_is_rejected() {
        let z4 = z(4);
        assert!(LinearCode::new(&z4, 3, ints(&z4, &[&[1, 2]])).is_err());
    }

    #[test]
    fn enumeration_respects_budget() {
        let z4 = z(4);
        let c = LinearCode::full_space(&z4, 8).with_budget(Budget {
            codewords: 100,
            kernel_ops: 100,
        });
        assert!(matches!(c.enumerate(), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn long_words_fall_back_to_plain_sets() {
        let r = Ring::galois(2, 12).unwrap(); // 12 bits per symbol
        let g = vec![vec![r.one(); 11]];
        let c = LinearCode::new(&r, 11, g).unwrap();
        assert_eq!(c.enumerate().unwrap().len(), 4096);
        assert_eq!(c.min_distance().unwrap(), 11);
    }
}
