//! Exact Gaussian elimination over a [`Field`].
//!
//! Subspaces are stored in reduced row echelon form, which makes equality,
//! membership and coordinate extraction cheap and canonical.

use crate::field::Field;

pub type Vector<F> = Vec<<F as Field>::Elem>;

/// A subspace of `F^n` held as an RREF basis ordered by pivot column.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            s.rows.push(unit_vector(field, ambient, i));
            s.pivots.push(i);
        }
        s
    }

    pub fn span<I: IntoIterator<Item = Vector<F>>>(field: &F, ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating every pivot of the basis.
    pub fn reduce(&self, mut v: Vector<F>) -> Vector<F> {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector<F>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length must match ambient dimension");
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(q) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[q]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[q]) {
                continue;
            }
            let c = row[q].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < q);
        self.pivots.insert(at, q);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vector<F>> {
        let coords: Vector<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recombined = self.combine(&coords);
        (recombined.as_slice() == v).then_some(coords)
    }

    /// `sum_i coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            for (x, r) in out.iter_mut().zip(row) {
                *x = f.add(x, &f.mul(c, r));
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        // Solve sum a_i u_i - sum b_j w_j = 0 and map the a-part back.
        let f = &self.field;
        let k = self.dim();
        let m = other.dim();
        let mut equations = Vec::with_capacity(self.ambient);
        for coord in 0..self.ambient {
            let mut eq = Vec::with_capacity(k + m);
            eq.extend(self.rows.iter().map(|u| u[coord].clone()));
            eq.extend(other.rows.iter().map(|w| f.neg(&w[coord])));
            equations.push(eq);
        }
        let kernel = nullspace(f, &equations, k + m);
        Subspace::span(f, self.ambient, kernel.into_iter().map(|sol| self.combine(&sol[..k])))
    }
}

pub fn unit_vector<F: Field>(field: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn is_zero_vector<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

/// In-place RREF of `rows` (each of width `ncols`); zero rows are dropped. Returns pivot columns.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vector<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(&rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : equations * x = 0}` with `nvars` unknowns.
pub fn nullspace<F: Field>(field: &F, equations: &[Vector<F>], nvars: usize) -> Vec<Vector<F>> {
    let mut rows: Vec<Vector<F>> = equations
        .iter()
        .filter(|e| !is_zero_vector(field, e))
        .cloned()
        .collect();
    let pivots = rref(field, &mut rows, nvars);
    let mut basis = Vec::new();
    for free in (0..nvars).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); nvars];
        v[free] = field.one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `a * x = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(field: &F, a: &[Vector<F>], b: &[F::Elem], nvars: usize) -> Option<Vector<F>> {
    let mut rows: Vec<Vector<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut rows, nvars + 1);
    if pivots.contains(&nvars) {
        return None;
    }
    let mut x = vec![field.zero(); nvars];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[nvars].clone();
    }
    Some(x)
}

pub fn rank<F: Field>(field: &F, rows: &[Vector<F>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn nullspace_of_simple_system() {
        let f = f3();
        // x + y + z = 0 over F_3
        let ns = nullspace(&f, &[vec![1, 1, 1]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(f.add(&f.add(&v[0], &v[1]), &v[2]), 0);
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = Rationals;
        let one = f.one();
        let two = f.from_i64(2);
        let a = vec![vec![one.clone(), one.clone()], vec![two.clone(), two.clone()]];
        assert!(solve(&f, &a, &[one.clone(), one.clone()], 2).is_none());
        let x = solve(&f, &a, &[one.clone(), two.clone()], 2).unwrap();
        assert_eq!(f.add(&x[0], &x[1]), one);
    }

    #[test]
    fn intersection_of_planes() {
        let f = f3();
        let u = Subspace::span(&f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(&f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let i = u.intersection(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 2, 0]));
        assert_eq!(u.sum(&w).dim(), 3);
    }

    #[test]
    fn coordinates_reject_outside_vectors() {
        let f = f3();
        let u = Subspace::span(&f, 3, vec![vec![1, 1, 0]]);
        assert_eq!(u.coordinates(&[2, 2, 0]), Some(vec![2]));
        assert_eq!(u.coordinates(&[1, 0, 0]), None);
    }

    proptest! {
        #[test]
        fn rref_span_is_order_independent(vs in prop::collection::vec(prop::collection::vec(0u32..5, 4), 0..6)) {
            let f = PrimeField::new(5).unwrap();
            let a = Subspace::span(&f, 4, vs.clone());
            let b = Subspace::span(&f, 4, vs.iter().rev().cloned());
            prop_assert_eq!(&a, &b);
            for v in &vs {
                prop_assert!(a.contains(v));
            }
            prop_assert_eq!(a.dim(), rank(&f, &vs, 4));
        }

        #[test]
        fn nullspace_vectors_solve_the_system(eqs in prop::collection::vec(prop::collection::vec(0u32..3, 5), 0..5)) {
            let f = f3();
            let ns = nullspace(&f, &eqs, 5);
            prop_assert_eq!(ns.len() + rank(&f, &eqs, 5), 5);
            for v in &ns {
                for e in &eqs {
                    let dot = e.iter().zip(v).fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
                    prop_assert_eq!(dot, 0);
                }
            }
        }
    }
}
