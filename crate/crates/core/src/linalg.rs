//! Dense matrices over a finite commutative ring.
//!
//! Kernels, row-space membership and row-space cardinality go through a
//! diagonal reduction computed separately in each local factor of the ring
//! (see [`LocalForm`]). Every local factor is a chain ring, so an entry of
//! minimal valuation divides every other entry and elimination never needs
//! division by a non-unit.

use std::fmt;

use crate::code::{Budget, LinearCode};
use crate::error::{Error, Result};
use crate::ring::{Elem, LocalFactor, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl RMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, data: Vec<Elem>) -> Result<RMatrix> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|e| e.index() >= ring.size()) {
            return Err(Error::Shape(format!("entry outside {ring}")));
        }
        Ok(RMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(ring: &Ring, rows: &[Vec<Elem>]) -> Result<RMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        RMatrix::new(ring, rows.len(), cols, rows.concat())
    }

    /// Builds a matrix from integer entries mapped through `Z -> R`.
    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Result<RMatrix> {
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&i| ring.from_int(i)).collect())
            .collect();
        RMatrix::from_rows(ring, &rows)
    }

    /// Parses rows of element literals.
    pub fn parse(ring: &Ring, rows: &[&[&str]]) -> Result<RMatrix> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RMatrix::from_rows(ring, &rows)
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> RMatrix {
        RMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> RMatrix {
        RMatrix::diag(ring, &vec![ring.one(); n])
    }

    pub fn diag(ring: &Ring, entries: &[Elem]) -> RMatrix {
        let n = entries.len();
        let mut m = RMatrix::zero(ring, n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> RMatrix {
        let mut t = RMatrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = RMatrix::zero(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = r.add(out.get(i, j), r.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Elem) -> RMatrix {
        RMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| self.ring.mul(c, e)).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.rows {
            return Err(Error::Shape(format!(
                "vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        Ok(vec_mat(&self.ring, x, &self.data, self.cols))
    }

    fn same_ring(&self, other: &RMatrix) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "square matrix required, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Determinant by cofactor (Laplace) expansion along successive rows,
    /// memoised over column subsets. Uses no division.
    pub fn determinant(&self) -> Result<Elem> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.ring.one());
        }
        if n > 20 {
            return Err(Error::Shape(format!("{n}x{n} is too large for cofactor expansion")));
        }
        let r = &self.ring;
        // minor[mask] = det of rows (n - |mask|).. restricted to columns in mask
        let mut minor = vec![r.zero(); 1 << n];
        minor[0] = r.one();
        for mask in 1usize..(1 << n) {
            let size = mask.count_ones() as usize;
            let row = n - size;
            let mut acc = r.zero();
            let mut sign_pos = 0;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let term = r.mul(self.get(row, col), minor[mask & !(1 << col)]);
                acc = if sign_pos % 2 == 0 {
                    r.add(acc, term)
                } else {
                    r.sub(acc, term)
                };
                sign_pos += 1;
            }
            minor[mask] = acc;
        }
        Ok(minor[(1 << n) - 1])
    }

    /// Non-singular means square with a unit determinant.
    pub fn is_nonsingular(&self) -> Result<bool> {
        Ok(self.ring.is_unit(self.determinant()?))
    }

    /// Inverse as adjugate times the inverse determinant.
    pub fn inverse(&self) -> Result<Option<RMatrix>> {
        let det = self.determinant()?;
        let Some(det_inv) = self.ring.inv(det) else {
            return Ok(None);
        };
        let n = self.rows;
        let r = &self.ring;
        let mut inv = RMatrix::zero(r, n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.without(i, j).determinant()?;
                let cof = if (i + j) % 2 == 0 { minor } else { r.neg(minor) };
                inv.set(j, i, r.mul(cof, det_inv));
            }
        }
        Ok(Some(inv))
    }

    fn without(&self, row: usize, col: usize) -> RMatrix {
        let data = (0..self.rows)
            .filter(|&i| i != row)
            .flat_map(|i| {
                (0..self.cols)
                    .filter(move |&j| j != col)
                    .map(move |j| self.get(i, j))
            })
            .collect();
        RMatrix {
            ring: self.ring.clone(),
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// `{x : x A = 0}` as a code of length `rows`.
    pub fn left_kernel(&self) -> LinearCode {
        let mut gens = Vec::new();
        for form in local_forms(self) {
            for y in form.kernel_generators() {
                gens.push(y.iter().map(|&e| form.factor.embed[e.index() as usize]).collect());
            }
        }
        LinearCode::new_unchecked(&self.ring, self.rows, gens)
    }

    /// The same kernel by scanning all of `R^rows`. Generators are the
    /// nonzero solutions in enumeration order.
    pub fn left_kernel_exhaustive(&self, budget: &Budget) -> Result<LinearCode> {
        let q = self.ring.size() as u128;
        let total = (0..self.rows).try_fold(1u128, |acc, _| acc.checked_mul(q));
        let work = total.and_then(|t| t.checked_mul((self.rows * self.cols).max(1) as u128));
        match work {
            Some(w) if w <= budget.kernel_ops as u128 => {}
            _ => {
                return Err(Error::BudgetExceeded {
                    needed: work.unwrap_or(u128::MAX),
                    cap: budget.kernel_ops,
                })
            }
        }
        let mut gens = Vec::new();
        let mut x = vec![self.ring.zero(); self.rows];
        while next_tuple(&mut x, self.ring.size()) {
            if vec_mat(&self.ring, &x, &self.data, self.cols)
                .iter()
                .all(|e| e.is_zero())
            {
                gens.push(x.clone());
            }
        }
        Ok(LinearCode::new_unchecked(&self.ring, self.rows, gens))
    }

    /// Rows linearly independent, i.e. a trivial left kernel.
    pub fn is_full_rank(&self) -> Result<bool> {
        if self.rows > self.cols {
            return Err(Error::Shape(format!(
                "full rank is defined here for s <= l, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(local_forms(self).iter().all(|f| f.rows_independent()))
    }

    /// Block matrix with block `(i, j)` equal to `self[i][j] * blocks[i]`.
    pub fn block_rows(&self, blocks: &[RMatrix]) -> Result<RMatrix> {
        if blocks.len() != self.rows {
            return Err(Error::Shape(format!(
                "{} blocks for {} matrix rows",
                blocks.len(),
                self.rows
            )));
        }
        let n = blocks.first().map_or(0, |b| b.cols);
        let mut rows = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            self.same_ring(b)?;
            if b.cols != n {
                return Err(Error::Shape("blocks of unequal width".into()));
            }
            for g in 0..b.rows {
                let mut row = Vec::with_capacity(n * self.cols);
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    row.extend(b.row(g).iter().map(|&e| self.ring.mul(a, e)));
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Ok(RMatrix::zero(&self.ring, 0, n * self.cols));
        }
        RMatrix::from_rows(&self.ring, &rows)
    }

    pub fn format_entry(&self, i: usize, j: usize) -> String {
        self.ring.format(self.get(i, j))
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.format_entry(i, j)).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

pub(crate) fn vec_mat(ring: &Ring, x: &[Elem], data: &[Elem], cols: usize) -> Vec<Elem> {
    let mut out = vec![ring.zero(); cols];
    for (i, &xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (o, &a) in out.iter_mut().zip(&data[i * cols..(i + 1) * cols]) {
            *o = ring.add(*o, ring.mul(xi, a));
        }
    }
    out
}

pub(crate) fn dot(ring: &Ring, x: &[Elem], y: &[Elem]) -> Elem {
    x.iter()
        .zip(y)
        .fold(ring.zero(), |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
}

/// Advances `x` to the next tuple in enumeration order; false after the last.
pub(crate) fn next_tuple(x: &mut [Elem], q: u32) -> bool {
    for slot in x.iter_mut().rev() {
        if slot.index() + 1 < q {
            *slot = Elem(slot.index() + 1);
            return true;
        }
        *slot = Elem(0);
    }
    false
}

/// Diagonal reduction `P M Q = D` of a matrix projected into one local
/// factor, with `P` and `Q` invertible and `D` diagonal.
#[derive(Debug, Clone)]
pub(crate) struct LocalForm {
    pub factor: LocalFactor,
    pub rows: usize,
    pub cols: usize,
    /// r x r, row-major
    pub p: Vec<Vec<Elem>>,
    /// c x c, row-major
    pub q: Vec<Vec<Elem>>,
    /// nonzero diagonal entries of D, in order
    pub pivots: Vec<Elem>,
    /// rows of `P M`
    pub reduced: Vec<Vec<Elem>>,
}

pub(crate) fn local_forms(m: &RMatrix) -> Vec<LocalForm> {
    local_forms_of(&m.ring, m.rows, m.cols, &m.data)
}

pub(crate) fn local_forms_of(ring: &Ring, rows: usize, cols: usize, data: &[Elem]) -> Vec<LocalForm> {
    ring.local_factors()
        .into_iter()
        .map(|lf| {
            let proj: Vec<Vec<Elem>> = (0..rows)
                .map(|i| {
                    data[i * cols..(i + 1) * cols]
                        .iter()
                        .map(|e| lf.proj[e.index() as usize])
                        .collect()
                })
                .collect();
            LocalForm::compute(lf, proj, cols)
        })
        .collect()
}

impl LocalForm {
    fn compute(factor: LocalFactor, m: Vec<Vec<Elem>>, cols: usize) -> LocalForm {
        let r = factor.ring.clone();
        let rows = m.len();
        let mut a = m.clone();
        let mut p: Vec<Vec<Elem>> = (0..rows)
            .map(|i| (0..rows).map(|j| if i == j { r.one() } else { r.zero() }).collect())
            .collect();
        let mut q: Vec<Vec<Elem>> = (0..cols)
            .map(|i| (0..cols).map(|j| if i == j { r.one() } else { r.zero() }).collect())
            .collect();
        let mut pivots = Vec::new();
        for t in 0..rows.min(cols) {
            let mut best: Option<(u32, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &e) in row.iter().enumerate().skip(t) {
                    if e.is_zero() {
                        continue;
                    }
                    let v = factor.valuation(e);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            a.swap(t, pi);
            p.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in q.iter_mut() {
                row.swap(t, pj);
            }
            let piv = a[t][t];
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let f = r.div_exact(a[i][t], piv).expect("minimal valuation pivot divides");
                for j in 0..cols {
                    a[i][j] = r.sub(a[i][j], r.mul(f, a[t][j]));
                }
                for j in 0..rows {
                    p[i][j] = r.sub(p[i][j], r.mul(f, p[t][j]));
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let f = r.div_exact(a[t][j], piv).expect("minimal valuation pivot divides");
                // column t is zero below the pivot, so only row t changes in `a`
                a[t][j] = r.sub(a[t][j], r.mul(f, piv));
                for row in q.iter_mut() {
                    row[j] = r.sub(row[j], r.mul(f, row[t]));
                }
            }
            pivots.push(piv);
        }
        let reduced = p
            .iter()
            .map(|prow| {
                let mut out = vec![r.zero(); cols];
                for (k, &c) in prow.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, &x) in out.iter_mut().zip(&m[k]) {
                        *o = r.add(*o, r.mul(c, x));
                    }
                }
                out
            })
            .collect();
        LocalForm {
            factor,
            rows,
            cols,
            p,
            q,
            pivots,
            reduced,
        }
    }

    /// Generators of the left kernel, as vectors over the local ring.
    pub fn kernel_generators(&self) -> Vec<Vec<Elem>> {
        let r = &self.factor.ring;
        let mut out = Vec::new();
        for i in 0..self.rows {
            let coeff = match self.pivots.get(i) {
                None => r.one(),
                Some(&d) => {
                    let v = self.factor.valuation(d);
                    if v == 0 {
                        continue;
                    }
                    self.factor.uniformizer_pow(self.factor.length - v)
                }
            };
            out.push(self.p[i].iter().map(|&x| r.mul(coeff, x)).collect());
        }
        out
    }

    pub fn rows_independent(&self) -> bool {
        self.pivots.len() == self.rows
            && self.pivots.iter().all(|&d| self.factor.valuation(d) == 0)
    }

    /// Number of unit pivots when every pivot is a unit; `None` otherwise.
    pub fn free_rank(&self) -> Option<usize> {
        self.pivots
            .iter()
            .all(|&d| self.factor.valuation(d) == 0)
            .then_some(self.pivots.len())
    }

    /// Size of the row space.
    pub fn span_size(&self) -> u128 {
        let kappa = self.factor.residue_size() as u128;
        self.pivots
            .iter()
            .map(|&d| kappa.pow(self.factor.length - self.factor.valuation(d)))
            .fold(1u128, |acc, x| acc.saturating_mul(x))
    }

    /// Whether the projected vector `v` lies in the row space.
    pub fn contains(&self, v: &[Elem]) -> bool {
        let r = &self.factor.ring;
        let w: Vec<Elem> = (0..self.cols)
            .map(|j| {
                v.iter()
                    .zip(&self.q)
                    .fold(r.zero(), |acc, (&x, qrow)| r.add(acc, r.mul(x, qrow[j])))
            })
            .collect();
        w.iter().enumerate().all(|(i, &wi)| match self.pivots.get(i) {
            Some(&d) => r.div_exact(wi, d).is_some(),
            None => wi.is_zero(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32) -> Ring {
        Ring::zmod(m).unwrap()
    }

    #[test]
    fn determinant_examples() {
        let z20 = z(20);
        let a = RMatrix::from_ints(&z20, &[&[3, 0], &[0, 7]]).unwrap();
        assert_eq!(a.determinant().unwrap(), z20.one());
        let z4 = z(4);
        let b = RMatrix::from_ints(&z4, &[&[1, 2], &[0, 2]]).unwrap();
        assert_eq!(b.determinant().unwrap(), Elem(2));
        assert!(!b.is_nonsingular().unwrap());
        assert_eq!(b.inverse().unwrap(), None);
        let c = RMatrix::from_ints(&z(7), &[&[2, 0, 1], &[1, 3, 0], &[4, 1, 5]]).unwrap();
        // 2(15-0) - 0 + 1(1-12) = 30 - 11 = 19 = 5 mod 7
        assert_eq!(c.determinant().unwrap(), Elem(5));
    }

    #[test]
    fn non_square_determinant_is_an_error() {
        let m = RMatrix::zero(&z(4), 2, 3);
        assert!(matches!(m.determinant(), Err(Error::Shape(_))));
    }

    #[test]
    fn inverse_of_diag_3_7_over_z20() {
        let z20 = z(20);
        let a = RMatrix::from_ints(&z20, &[&[3, 0], &[0, 7]]).unwrap();
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(inv, RMatrix::from_ints(&z20, &[&[7, 0], &[0, 3]]).unwrap());
        assert_eq!(a.mul(&inv).unwrap(), RMatrix::identity(&z20, 2));
        let id = RMatrix::identity(&z20, 3);
        assert_eq!(id.inverse().unwrap().unwrap(), id);
    }

    #[test]
    fn kernel_of_single_ten_is_even_residues() {
        let z20 = z(20);
        let m = RMatrix::from_ints(&z20, &[&[10]]).unwrap();
        let k = m.left_kernel();
        assert_eq!(k.cardinality(), 10);
        let words = k.enumerate().unwrap();
        let expected: Vec<Vec<Elem>> = (0..10).map(|i| vec![Elem(2 * i)]).collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn z4_remark_matrix_has_full_rank() {
        let z4 = z(4);
        let a = RMatrix::from_ints(&z4, &[&[1, 2, 0], &[0, 2, 1]]).unwrap();
        assert!(a.is_full_rank().unwrap());
        assert_eq!(a.left_kernel().cardinality(), 1);
        let two = RMatrix::from_ints(&z4, &[&[2]]).unwrap();
        assert!(!two.is_full_rank().unwrap());
        let tall = RMatrix::zero(&z4, 3, 2);
        assert!(tall.is_full_rank().is_err());
        assert_eq!(RMatrix::identity(&z4, 3).left_kernel().cardinality(), 1);
    }

    #[test]
    fn structured_kernel_matches_exhaustive_on_all_small_z4_matrices() {
        let z4 = z(4);
        let budget = Budget::default();
        let mut data = vec![Elem(0); 6];
        loop {
            let m = RMatrix::new(&z4, 3, 2, data.clone()).unwrap();
            let fast = m.left_kernel();
            let slow = m.left_kernel_exhaustive(&budget).unwrap();
            assert!(fast.equals(&slow).unwrap(), "{m}");
            if !next_tuple(&mut data, 4) {
                break;
            }
        }
    }

    #[test]
    fn transpose_reverses_products() {
        let z6 = z(6);
        let a = RMatrix::from_ints(&z6, &[&[1, 2, 3], &[4, 5, 0]]).unwrap();
        let b = RMatrix::from_ints(&z6, &[&[2, 1], &[0, 3], &[5, 5]]).unwrap();
        assert_eq!(
            a.mul(&b).unwrap().transpose(),
            b.transpose().mul(&a.transpose()).unwrap()
        );
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn exhaustive_kernel_respects_budget() {
        let z4 = z(4);
        let m = RMatrix::zero(&z4, 12, 12);
        let tiny = Budget {
            codewords: 10,
            kernel_ops: 1000,
        };
        assert!(matches!(
            m.left_kernel_exhaustive(&tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
