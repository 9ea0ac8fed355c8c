//! Dense matrices over a [`Field`] with exact Gauss–Jordan elimination.

use super::modular;
use super::number_field::{Elem, Field};
use super::scalar::Scalar;
use super::FieldError;
use crate::par::{self, Exec};

/// Smaller matrices skip the modular route; exact elimination is cheap there.
const MODULAR_MIN_ENTRIES: usize = 256;

/// Bits allowed per entry before exact elimination hands over to the
/// modular route.
const EXACT_BIT_BUDGET: u64 = 64;

/// Below this many elementary updates per pivot the row loop stays sequential.
const PAR_MIN_WORK: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Scalar>]) -> Result<Matrix, FieldError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(FieldError::Shape(format!(
                    "ragged rows: expected {cols} entries, got {}",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(FieldError::FieldMismatch);
                }
                data.push(s.elem().clone());
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor from small integer rows.
    pub fn from_int_rows(field: &Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| field.from_int(x))
            })
            .collect();
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub(crate) fn from_elems(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        Scalar::from_elem(self.field.clone(), self.data[r * self.cols + c].clone())
    }

    pub fn set(&mut self, r: usize, c: usize, value: &Scalar) -> Result<(), FieldError> {
        if value.field() != &self.field {
            return Err(FieldError::FieldMismatch);
        }
        self.data[r * self.cols + c] = value.elem().clone();
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.data[r * self.cols + c].clone());
            }
        }
        Matrix::from_elems(&self.field, self.cols, self.rows, data)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        if v.iter().any(|s| s.field() != &self.field) {
            return Err(FieldError::FieldMismatch);
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (c, s) in v.iter().enumerate() {
                    let a = &self.data[r * self.cols + c];
                    if !f.is_zero(a) && !s.is_zero() {
                        acc = f.add(&acc, &f.mul(a, s.elem()));
                    }
                }
                Scalar::from_elem(f.clone(), acc)
            })
            .collect())
    }

    fn row_vecs(&self) -> Vec<Vec<Elem>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[Elem]>::to_vec).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank_with(Exec::default())
    }

    pub fn rank_with(&self, exec: Exec) -> usize {
        rank_elems(&self.field, self.row_vecs(), self.cols, exec)
    }

    /// Basis of the right null space; its size is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.kernel_basis_with(Exec::default())
    }

    pub fn kernel_basis_with(&self, exec: Exec) -> Vec<Vec<Scalar>> {
        kernel_elems(&self.field, self.row_vecs(), self.cols, exec)
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .map(|e| Scalar::from_elem(self.field.clone(), e))
                    .collect()
            })
            .collect()
    }
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Kernel basis over raw elements, for callers that assemble rows themselves.
/// The basis is the one read off the reduced row echelon form.
///
/// Larger matrices are first reduced exactly with a cap on the size of the
/// numbers; if they grow past it the modular route takes over.
pub(crate) fn kernel_elems(field: &Field, rows: Vec<Vec<Elem>>, cols: usize, exec: Exec) -> Vec<Vec<Elem>> {
    if rows.len() * cols >= MODULAR_MIN_ENTRIES {
        if let Some(k) = exact_kernel(field, rows.clone(), cols, exec, Some(EXACT_BIT_BUDGET)) {
            return k;
        }
        if let Some(k) = modular::kernel(field, &rows, cols, exec) {
            return k;
        }
    }
    exact_kernel(field, rows, cols, exec, None).expect("no budget")
}

fn exact_kernel(
    field: &Field,
    mut rows: Vec<Vec<Elem>>,
    cols: usize,
    exec: Exec,
    budget: Option<u64>,
) -> Option<Vec<Vec<Elem>>> {
    let pivots = eliminate(field, &mut rows, cols, true, exec, budget)?;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(&rows[r][free]);
            }
            v
        })
        .collect();
    Some(kernel)
}

pub(crate) fn rank_elems(field: &Field, rows: Vec<Vec<Elem>>, cols: usize, exec: Exec) -> usize {
    if rows.len() * cols >= MODULAR_MIN_ENTRIES {
        if let Some(p) = eliminate(field, &mut rows.clone(), cols, false, exec, Some(EXACT_BIT_BUDGET)) {
            return p.len();
        }
        if let Some(r) = modular::rank(field, &rows, cols, exec) {
            return r;
        }
    }
    let mut rows = rows;
    eliminate(field, &mut rows, cols, false, exec, None).expect("no budget").len()
}

fn bits(e: &Elem) -> u64 {
    e.iter().map(|q| q.numer().bits().max(q.denom().bits())).max().unwrap_or(0)
}

/// Row reduction in place. Pivot = first nonzero entry in the column; pivot
/// rows are normalised to 1. With `full` the result is reduced row echelon
/// form, otherwise only entries below each pivot are cleared. Returns the
/// pivot columns; pivot row `i` is `rows[i]`. Gives up once an entry of a
/// pivot row needs more than `budget` bits.
fn eliminate(
    field: &Field,
    rows: &mut [Vec<Elem>],
    cols: usize,
    full: bool,
    exec: Exec,
    budget: Option<u64>,
) -> Option<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        let support: Vec<usize> = {
            let prow = &mut rows[rank];
            for e in prow[col..].iter_mut() {
                if !field.is_zero(e) {
                    *e = field.mul(e, &inv);
                }
            }
            (col + 1..cols).filter(|&j| !field.is_zero(&prow[j])).collect()
        };
        if let Some(limit) = budget {
            if support.iter().any(|&j| bits(&rows[rank][j]) > limit) {
                return None;
            }
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row exists");
        let pivot_row: &Vec<Elem> = pivot_row;
        let update = |row: &mut Vec<Elem>| {
            if field.is_zero(&row[col]) {
                return;
            }
            let factor = std::mem::replace(&mut row[col], field.zero());
            for &j in &support {
                field.sub_mul_assign(&mut row[j], &factor, &pivot_row[j]);
            }
        };
        let work = (below.len() + if full { head.len() } else { 0 }) * (support.len() + 1);
        let exec = if work >= PAR_MIN_WORK { exec } else { Exec::Sequential };
        par::for_each_mut(exec, below, update);
        if full {
            par::for_each_mut(exec, head, update);
        }
        pivots.push(col);
        rank += 1;
    }
    Some(pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rational_from_int;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = Matrix::identity(&q(), 3);
        assert!(m.kernel_basis().is_empty());
        assert_eq!(Matrix::identity(&q(), 4).rank(), 4);
    }

    #[test]
    fn zero_matrix() {
        let m = Matrix::zeros(&q(), 2, 3);
        assert_eq!(m.kernel_basis().len(), 3);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn two_by_three_kernel() {
        let f = q();
        let m = Matrix::from_int_rows(&f, &[&[1, 1, 0], &[0, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        // proportional to (1, -1, 1)
        let expected = [1, -1, 1].map(|x| Scalar::from_int(&f, x));
        let scale = v[0].div(&expected[0]).unwrap();
        for (a, b) in v.iter().zip(&expected) {
            assert_eq!(a, &b.mul(&scale).unwrap());
        }
        assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::from_int_rows(&q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::zeros(&q(), 0, 4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 4);
        let m = Matrix::zeros(&q(), 3, 0);
        assert_eq!(m.rank(), 0);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn omega_matrix() {
        let f = crate::field::make_field(&[1, 1, 1].map(rational_from_int)).unwrap();
        let w = Scalar::generator(&f);
        let w2 = w.mul(&w).unwrap();
        let one = Scalar::one(&f);
        // rows (1, ω) and (ω², 1) are proportional: ω²·(1, ω) = (ω², 1)
        let m = Matrix::from_rows(&f, &[vec![one.clone(), w.clone()], vec![w2, one]]).unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Scalar::is_zero));
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_transpose(rows in arb_matrix()) {
            let f = q();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = Matrix::from_int_rows(&f, &refs);
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
            prop_assert_eq!(m.rank_with(Exec::Sequential), m.rank_with(Exec::Parallel));
        }
    }

    /// `u * v` for random `u` (rows × inner) and `v` (inner × cols) with
    /// entries `a + b ω`, so the rank is at most `inner`.
    fn low_rank(f: &Field, seed: &[(i64, i64)], rows: usize, inner: usize, cols: usize) -> Vec<Vec<Elem>> {
        let w = f.generator();
        let mut it = seed.iter().cycle();
        let mut entry = || {
            let (a, b) = *it.next().unwrap();
            f.add(&f.from_int(a), &f.scale(&w, &rational_from_int(b)))
        };
        let u: Vec<Vec<Elem>> = (0..rows).map(|_| (0..inner).map(|_| entry()).collect()).collect();
        let v: Vec<Vec<Elem>> = (0..inner).map(|_| (0..cols).map(|_| entry()).collect()).collect();
        (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| (0..inner).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&u[i][k], &v[k][j]))))
                    .collect()
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn modular_route_matches_exact_elimination(
            seed in prop::collection::vec((-40i64..=40, -40i64..=40), 7..40),
            rows in 12usize..20,
            inner in 1usize..14,
            cols in 22usize..30,
            omega in any::<bool>(),
        ) {
            let f = if omega { crate::arrangement::catalog::eisenstein_field() } else { q() };
            let m = low_rank(&f, &seed, rows, inner, cols);
            let exact_rank = eliminate(&f, &mut m.clone(), cols, false, Exec::Sequential, None).unwrap().len();
            prop_assert_eq!(rank_elems(&f, m.clone(), cols, Exec::Sequential), exact_rank);
            let exact = exact_kernel(&f, m.clone(), cols, Exec::Sequential, None).unwrap();
            prop_assert_eq!(modular::kernel(&f, &m, cols, Exec::Sequential), Some(exact));
        }
    }
}
