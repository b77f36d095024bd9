//! Matrix-product codes `[C_1 ... C_s] A`.
//!
//! A codeword `(c_1 ... c_s) A` is an `n x l` matrix whose column `t` is
//! `sum_i a_{it} c_i`. It is flattened column block by column block, i.e. as
//! the element `(sum_i a_{i1} c_i, ..., sum_i a_{il} c_i)` of `(R^n)^l`.
//! Under this flattening the realized code is generated by the block rows
//! `(a_{i1} g, ..., a_{il} g)` for each generator `g` of `C_i`, and
//! [`kron_mult`] lands in the same coordinates.

use crate::code::{DualityProfile, LinearCode};
use crate::error::{Error, Result};
use crate::linalg::RMatrix;
use crate::ring::{Elem, Ring};

#[derive(Debug, Clone)]
pub struct MatrixProductCode {
    inputs: Vec<LinearCode>,
    matrix: RMatrix,
    realized: LinearCode,
}

impl MatrixProductCode {
    /// Neither freeness of the inputs nor full rank of `a` is required.
    pub fn build(inputs: Vec<LinearCode>, a: RMatrix) -> Result<MatrixProductCode> {
        let n = check_inputs(&inputs, &a)?;
        if a.rows() > a.cols() {
            return Err(Error::Shape(format!(
                "matrix-product codes need s <= l, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let blocks: Vec<RMatrix> = inputs.iter().map(LinearCode::generator_matrix).collect();
        let g = a.block_rows(&blocks)?;
        let budget = inputs[0].budget();
        let realized = LinearCode::new(a.ring(), n * a.cols(), g.row_vecs())?.with_budget(budget);
        Ok(MatrixProductCode {
            inputs,
            matrix: a,
            realized,
        })
    }

    pub fn inputs(&self) -> &[LinearCode] {
        &self.inputs
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn realized(&self) -> &LinearCode {
        &self.realized
    }

    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }

    pub fn input_length(&self) -> usize {
        self.inputs[0].length()
    }

    /// Stacked block rows; for free inputs given by bases and a full-rank
    /// matrix this is a generating matrix.
    pub fn generator_matrix(&self) -> RMatrix {
        self.realized.generator_matrix()
    }

    /// `(c_1 ... c_s) A`, flattened.
    pub fn codeword(&self, columns: &[Vec<Elem>]) -> Result<Vec<Elem>> {
        let n = self.input_length();
        if columns.len() != self.matrix.rows() || columns.iter().any(|c| c.len() != n) {
            return Err(Error::Shape(format!(
                "expected {} columns of length {n}",
                self.matrix.rows()
            )));
        }
        let r = self.ring();
        let mut out = Vec::with_capacity(n * self.matrix.cols());
        for t in 0..self.matrix.cols() {
            for row in 0..n {
                let v = columns.iter().enumerate().fold(r.zero(), |acc, (i, c)| {
                    r.add(acc, r.mul(c[row], self.matrix.get(i, t)))
                });
                out.push(v);
            }
        }
        Ok(out)
    }

    /// A flattened codeword viewed as its `n x l` matrix.
    pub fn as_matrix(&self, word: &[Elem]) -> Result<RMatrix> {
        let n = self.input_length();
        let l = self.matrix.cols();
        if word.len() != n * l {
            return Err(Error::Shape(format!("word of length {} is not {n}x{l}", word.len())));
        }
        let data = (0..n)
            .flat_map(|row| (0..l).map(move |t| word[t * n + row]))
            .collect();
        RMatrix::new(self.ring(), n, l, data)
    }
}

fn check_inputs(inputs: &[LinearCode], a: &RMatrix) -> Result<usize> {
    let first = inputs
        .first()
        .ok_or_else(|| Error::Shape("at least one input code is needed".into()))?;
    if inputs.len() != a.rows() {
        return Err(Error::Shape(format!(
            "{} input codes for a matrix with {} rows",
            inputs.len(),
            a.rows()
        )));
    }
    for c in inputs {
        if c.ring() != a.ring() {
            return Err(Error::RingMismatch {
                left: c.ring().to_string(),
                right: a.ring().to_string(),
            });
        }
        if c.length() != first.length() {
            return Err(Error::Shape("input codes of different lengths".into()));
        }
    }
    Ok(first.length())
}

/// The nested row codes `C_{L_1} ⊆ ... ⊆ C_{L_s}` of a matrix, where
/// `C_{L_i}` is spanned by the first `i` rows.
#[derive(Debug, Clone)]
pub struct RowCodeFamily {
    pub codes: Vec<LinearCode>,
    /// `None` for a zero row code.
    pub distances: Vec<Option<usize>>,
}

pub fn row_codes(a: &RMatrix) -> Result<RowCodeFamily> {
    let mut codes = Vec::with_capacity(a.rows());
    let mut distances = Vec::with_capacity(a.rows());
    for i in 1..=a.rows() {
        let code = LinearCode::new(a.ring(), a.cols(), (0..i).map(|r| a.row(r).to_vec()).collect())?;
        distances.push(match code.min_distance() {
            Ok(d) => Some(d),
            Err(Error::UndefinedDistance) => None,
            Err(e) => return Err(e),
        });
        codes.push(code);
    }
    Ok(RowCodeFamily { codes, distances })
}

fn require_full_rank(a: &RMatrix) -> Result<()> {
    if a.is_full_rank()? {
        Ok(())
    } else {
        Err(Error::Precondition("the matrix does not have full rank".into()))
    }
}

fn optional_distance(c: &LinearCode) -> Result<Option<usize>> {
    match c.min_distance() {
        Ok(d) => Ok(Some(d)),
        Err(Error::UndefinedDistance) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `min_i d_i D_i` for a full-rank `a`. Zero input codes contribute no
/// term.
pub fn distance_lower_bound(inputs: &[LinearCode], a: &RMatrix) -> Result<usize> {
    check_inputs(inputs, a)?;
    require_full_rank(a)?;
    let family = row_codes(a)?;
    let mut bound = None;
    for (c, big_d) in inputs.iter().zip(&family.distances) {
        if let Some(d) = optional_distance(c)? {
            let big_d = big_d.expect("full-rank rows are nonzero");
            bound = Some(bound.map_or(d * big_d, |b: usize| b.min(d * big_d)));
        }
    }
    bound.ok_or(Error::UndefinedDistance)
}

/// `UV = (u_1 v_1, ..., u_1 v_n, ..., u_l v_1, ..., u_l v_n)`.
pub fn kron_mult(ring: &Ring, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
    u.iter()
        .flat_map(|&ui| v.iter().map(move |&vj| ring.mul(ui, vj)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessWitness {
    /// Index (0-based) attaining the bound.
    pub index: usize,
    pub bound: usize,
    /// Minimum-weight `x_i ∈ C_i`.
    pub x: Vec<Vec<Elem>>,
    /// Minimum-weight `X_i ∈ C_{L_i}` with `X_i x_i != 0`.
    pub big_x: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sharpness {
    /// The inputs are not nested `C_s ⊆ ... ⊆ C_1`.
    Inapplicable,
    /// Some index has no pair of minimum-weight words with nonzero product.
    Absent,
    Witness(SharpnessWitness),
}

/// Searches the sufficient condition for the distance bound to be attained.
pub fn sharpness_witness(inputs: &[LinearCode], a: &RMatrix) -> Result<Sharpness> {
    check_inputs(inputs, a)?;
    require_full_rank(a)?;
    for pair in inputs.windows(2) {
        if !pair[1].is_subcode_of(&pair[0])? {
            return Ok(Sharpness::Inapplicable);
        }
    }
    let family = row_codes(a)?;
    let ring = a.ring();
    let mut xs = Vec::new();
    let mut big_xs = Vec::new();
    let mut best: Option<(usize, usize)> = None;
    for (i, c) in inputs.iter().enumerate() {
        let Some(d) = optional_distance(c)? else {
            return Ok(Sharpness::Absent);
        };
        let small = c.min_weight_words()?;
        let big = family.codes[i].min_weight_words()?;
        let found = small.iter().find_map(|x| {
            big.iter()
                .find(|bx| kron_mult(ring, bx, x).iter().any(|e| !e.is_zero()))
                .map(|bx| (x.clone(), bx.clone()))
        });
        let Some((x, bx)) = found else {
            return Ok(Sharpness::Absent);
        };
        let term = d * family.distances[i].expect("full-rank rows are nonzero");
        if best.is_none_or(|(b, _)| term < b) {
            best = Some((term, i));
        }
        xs.push(x);
        big_xs.push(bx);
    }
    let (bound, index) = best.expect("at least one input");
    Ok(Sharpness::Witness(SharpnessWitness {
        index,
        bound,
        x: xs,
        big_x: big_xs,
    }))
}

fn inverse_transpose(a: &RMatrix) -> Result<RMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "a square matrix is required, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let inv = a
        .inverse()?
        .ok_or_else(|| Error::Precondition("the matrix is singular (det is not a unit)".into()))?;
    Ok(inv.transpose())
}

/// `[C_1^perp ... C_s^perp] (A^{-1})^T` for free inputs and a non-singular
/// square `a`; this is the dual of `[C_1 ... C_s] A`.
pub fn mpc_dual(inputs: &[LinearCode], a: &RMatrix) -> Result<MatrixProductCode> {
    for (i, c) in inputs.iter().enumerate() {
        if !c.is_free() {
            return Err(Error::Precondition(format!(
                "input code {} is not free; the dual formula is only asserted for free inputs",
                i + 1
            )));
        }
    }
    dual_formula_side(inputs, a)
}

/// The right-hand side of the dual formula, built without the freeness
/// check. Used to examine what happens for non-free inputs.
pub fn dual_formula_side(inputs: &[LinearCode], a: &RMatrix) -> Result<MatrixProductCode> {
    check_inputs(inputs, a)?;
    let b = inverse_transpose(a)?;
    let duals = inputs
        .iter()
        .map(|c| c.dual().with_basis_generators())
        .collect();
    MatrixProductCode::build(duals, b)
}

/// `(r_1, ..., r_s)` when `A A^T = Diag(r_1, ..., r_s)` with every `r_i` a
/// unit.
pub fn quasi_orthogonal_units(a: &RMatrix) -> Result<Option<Vec<Elem>>> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "quasi-orthogonality needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let g = a.mul(&a.transpose())?;
    let ring = a.ring();
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            if i != j && !g.get(i, j).is_zero() {
                return Ok(None);
            }
        }
        if !ring.is_unit(g.get(i, i)) {
            return Ok(None);
        }
    }
    Ok(Some((0..g.rows()).map(|i| g.get(i, i)).collect()))
}

/// Compares `[C_1 ... C_s] (Diag(r) Y)` with `[C_1 ... C_s] Y`.
pub fn diag_scale_equal(inputs: &[LinearCode], y: &RMatrix, units: &[Elem]) -> Result<bool> {
    let ring = y.ring();
    if units.len() != y.rows() {
        return Err(Error::Shape(format!(
            "{} scale factors for {} rows",
            units.len(),
            y.rows()
        )));
    }
    if let Some(bad) = units.iter().find(|&&u| !ring.is_unit(u)) {
        return Err(Error::Precondition(format!(
            "scale factor {} is not a unit",
            ring.format(*bad)
        )));
    }
    let x = RMatrix::diag(ring, units).mul(y)?;
    let scaled = MatrixProductCode::build(inputs.to_vec(), x)?;
    let plain = MatrixProductCode::build(inputs.to_vec(), y.clone())?;
    scaled.realized().equals(plain.realized())
}

#[derive(Debug, Clone)]
pub struct CharacterizationReport {
    pub units: Vec<Elem>,
    pub mpc: DualityProfile,
    pub inputs: Vec<DualityProfile>,
}

impl CharacterizationReport {
    pub fn self_dual_holds(&self) -> bool {
        self.mpc.self_dual == self.inputs.iter().all(|p| p.self_dual)
    }

    pub fn self_orthogonal_holds(&self) -> bool {
        self.mpc.self_orthogonal == self.inputs.iter().all(|p| p.self_orthogonal)
    }

    pub fn lcd_holds(&self) -> bool {
        self.mpc.lcd == self.inputs.iter().all(|p| p.lcd)
    }

    pub fn all_hold(&self) -> bool {
        self.self_dual_holds() && self.self_orthogonal_holds() && self.lcd_holds()
    }
}

/// Computes the duality profile of the product code and of every input for
/// a quasi-orthogonal `a`, so the three biconditionals can be read off.
pub fn characterization_check(inputs: &[LinearCode], a: &RMatrix) -> Result<CharacterizationReport> {
    check_inputs(inputs, a)?;
    let units = quasi_orthogonal_units(a)?
        .ok_or_else(|| Error::Precondition("the matrix is not quasi-orthogonal".into()))?;
    let mpc = MatrixProductCode::build(inputs.to_vec(), a.clone())?;
    Ok(CharacterizationReport {
        units,
        mpc: mpc.realized().duality()?,
        inputs: inputs.iter().map(LinearCode::duality).collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Freeness;

    fn z(m: u32) -> Ring {
        Ring::zmod(m).unwrap()
    }

    fn code(ring: &Ring, n: usize, rows: &[&[i64]]) -> LinearCode {
        let gens = rows
            .iter()
            .map(|r| r.iter().map(|&i| ring.from_int(i)).collect())
            .collect();
        LinearCode::new(ring, n, gens).unwrap()
    }

    #[test]
    fn identity_matrix_places_columns_side_by_side() {
        let z4 = z(4);
        let c1 = code(&z4, 2, &[&[1, 1]]);
        let c2 = code(&z4, 2, &[&[0, 2]]);
        let mpc = MatrixProductCode::build(vec![c1, c2], RMatrix::identity(&z4, 2)).unwrap();
        let w = mpc
            .codeword(&[vec![Elem(1), Elem(1)], vec![Elem(0), Elem(2)]])
            .unwrap();
        assert_eq!(w, vec![Elem(1), Elem(1), Elem(0), Elem(2)]);
        assert!(mpc.realized().contains(&w).unwrap());
        let m = mpc.as_matrix(&w).unwrap();
        assert_eq!(m, RMatrix::from_ints(&z4, &[&[1, 0], &[1, 2]]).unwrap());
    }

    #[test]
    fn kron_mult_examples() {
        let z4 = z(4);
        let u = vec![Elem(1), Elem(0), Elem(0)];
        let v = vec![Elem(3), Elem(2)];
        assert_eq!(
            kron_mult(&z4, &u, &v),
            vec![Elem(3), Elem(2), Elem(0), Elem(0), Elem(0), Elem(0)]
        );
        let u = vec![Elem(2), Elem(0), Elem(0)];
        let v = vec![Elem(2), Elem(2), Elem(0)];
        assert!(kron_mult(&z4, &u, &v).iter().all(|e| e.is_zero()));
    }

    #[test]
    fn single_input_bound_is_its_distance() {
        let f3 = Ring::galois(3, 1).unwrap();
        let c = code(&f3, 3, &[&[1, 1, 1]]);
        let a = RMatrix::identity(&f3, 1);
        assert_eq!(distance_lower_bound(std::slice::from_ref(&c), &a).unwrap(), 3);
        match sharpness_witness(&[c], &a).unwrap() {
            Sharpness::Witness(w) => {
                assert_eq!(w.bound, 3);
                assert_eq!(w.big_x, vec![vec![Elem(1)]]);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn bound_rejects_rank_deficient_matrix() {
        let z4 = z(4);
        let c = code(&z4, 2, &[&[1, 1]]);
        let a = RMatrix::from_ints(&z4, &[&[2, 0], &[0, 1]]).unwrap();
        assert!(matches!(
            distance_lower_bound(&[c.clone(), c], &a),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn non_nested_inputs_make_sharpness_inapplicable() {
        let f2 = Ring::galois(2, 1).unwrap();
        let c1 = code(&f2, 2, &[&[1, 0]]);
        let c2 = code(&f2, 2, &[&[0, 1]]);
        let a = RMatrix::identity(&f2, 2);
        assert_eq!(sharpness_witness(&[c1, c2], &a).unwrap(), Sharpness::Inapplicable);
    }

    #[test]
    fn dual_refuses_non_free_inputs() {
        let z20 = z(20);
        let c1 = code(&z20, 1, &[&[10]]);
        let c2 = code(&z20, 1, &[&[2]]);
        let a = RMatrix::from_ints(&z20, &[&[3, 0], &[0, 7]]).unwrap();
        assert!(matches!(
            mpc_dual(&[c1.clone(), c2.clone()], &a),
            Err(Error::Precondition(_))
        ));
        assert!(dual_formula_side(&[c1, c2], &a).is_ok());
    }

    #[test]
    fn dual_with_identity_is_input_duals() {
        let z4 = z(4);
        let c1 = code(&z4, 3, &[&[1, 2, 0]]);
        let c2 = code(&z4, 3, &[&[1, 1, 1], &[0, 1, 3]]);
        let id = RMatrix::identity(&z4, 2);
        let d = mpc_dual(&[c1.clone(), c2.clone()], &id).unwrap();
        let expected =
            MatrixProductCode::build(vec![c1.dual(), c2.dual()], id.clone()).unwrap();
        assert!(d.realized().equals(expected.realized()).unwrap());
        let primal = MatrixProductCode::build(vec![c1, c2], id).unwrap();
        assert!(d.realized().equals(&primal.realized().dual()).unwrap());
        assert_eq!(d.realized().freeness(), Freeness::Free { rank: 3 });
    }

    #[test]
    fn quasi_orthogonal_examples() {
        let z20 = z(20);
        let a = RMatrix::from_ints(&z20, &[&[3, 0], &[0, 7]]).unwrap();
        assert_eq!(quasi_orthogonal_units(&a).unwrap(), Some(vec![Elem(9), Elem(9)]));
        let z4 = z(4);
        let b = RMatrix::from_ints(&z4, &[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(quasi_orthogonal_units(&b).unwrap(), None);
        assert!(quasi_orthogonal_units(&RMatrix::zero(&z4, 1, 2)).is_err());
    }

    #[test]
    fn diagonal_scaling_by_units_keeps_the_code() {
        let z20 = z(20);
        let c1 = code(&z20, 2, &[&[1, 5]]);
        let c2 = code(&z20, 2, &[&[4, 2]]);
        let y = RMatrix::identity(&z20, 2);
        assert!(diag_scale_equal(&[c1.clone(), c2.clone()], &y, &[Elem(3), Elem(7)]).unwrap());
        assert!(diag_scale_equal(&[c1.clone(), c2.clone()], &y, &[Elem(1), Elem(1)]).unwrap());
        assert!(matches!(
            diag_scale_equal(&[c1, c2], &y, &[Elem(2), Elem(1)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn full_space_inputs_give_lcd_product() {
        let z4 = z(4);
        let full = LinearCode::full_space(&z4, 2);
        let a = RMatrix::from_ints(&z4, &[&[1, 2], &[2, 1]]).unwrap();
        let report = characterization_check(&[full.clone(), full], &a).unwrap();
        assert!(report.mpc.lcd && report.all_hold());
    }
}
