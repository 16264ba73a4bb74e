//! Finite-dimensional algebras given by structure constants.
//!
//! This is the substrate for every brute-force oracle: commutants, centers,
//! associativity, ideal closures and field tests only look at the table.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_zero_vector, nullspace, unit_vector, Subspace, Vector};

/// Sparse product of two basis elements.
pub type SparseRow<E> = Vec<(usize, E)>;

#[derive(Clone, Debug)]
pub struct StructureAlgebra<F: Field> {
    field: F,
    dim: usize,
    labels: Vec<String>,
    /// `products[i * dim + j] = b_i b_j`, sorted by basis index, zeros pruned.
    products: Vec<SparseRow<F::Elem>>,
}

impl<F: Field> StructureAlgebra<F> {
    pub fn new(field: F, labels: Vec<String>, products: Vec<SparseRow<F::Elem>>) -> Result<Self> {
        let dim = labels.len();
        if products.len() != dim * dim {
            return Err(Error::SizeMismatch { left: dim * dim, right: products.len() });
        }
        let products = products
            .into_iter()
            .map(|mut row| {
                row.retain(|(_, c)| !field.is_zero(c));
                row.sort_by_key(|(k, _)| *k);
                row
            })
            .collect();
        Ok(StructureAlgebra { field, dim, labels, products })
    }

    /// Builds the table by multiplying basis vectors with `mul`.
    pub fn from_fn(field: F, labels: Vec<String>, mul: impl Fn(usize, usize) -> Vector<F>) -> Self {
        let dim = labels.len();
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = mul(i, j);
                products.push(v.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).collect());
            }
        }
        StructureAlgebra { field, dim, labels, products }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseRow<F::Elem> {
        &self.products[i * self.dim + j]
    }

    pub fn zero(&self) -> Vector<F> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vector<F> {
        unit_vector(&self.field, self.dim, i)
    }

    pub fn mul(&self, u: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, a) in u.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in self.product(i, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&ab, c));
                }
            }
        }
        out
    }

    /// `b_i v`.
    pub fn left_basis_mul(&self, i: usize, v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero();
        for (j, b) in v.iter().enumerate() {
            if f.is_zero(b) {
                continue;
            }
            for (k, c) in self.product(i, j) {
                out[*k] = f.add(&out[*k], &f.mul(b, c));
            }
        }
        out
    }

    /// `v b_i`.
    pub fn right_basis_mul(&self, v: &[F::Elem], i: usize) -> Vector<F> {
        let f = &self.field;
        let mut out = self.zero();
        for (j, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (k, c) in self.product(j, i) {
                out[*k] = f.add(&out[*k], &f.mul(a, c));
            }
        }
        out
    }

    pub fn commutator(&self, u: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        self.mul(u, v).iter().zip(self.mul(v, u)).map(|(a, b)| f.sub(a, &b)).collect()
    }

    /// First basis triple with `(b_i b_j) b_k ≠ b_i (b_j b_k)`, in index order.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        (0..d * d).into_par_iter().find_map_first(|ij| {
            let (i, j) = (ij / d, ij % d);
            let bij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
            (0..d).find_map(|k| {
                let lhs = self.right_basis_mul(&bij, k);
                let rhs = self.left_basis_mul(i, &self.product_vector(j, k));
                (lhs != rhs).then_some((i, j, k))
            })
        })
    }

    fn product_vector(&self, i: usize, j: usize) -> Vector<F> {
        let mut out = self.zero();
        for (k, c) in self.product(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    /// The unit element, if the algebra has one.
    pub fn identity(&self) -> Option<Vector<F>> {
        // Solve e b_j = b_j and b_j e = b_j for all j.
        let f = &self.field;
        let d = self.dim;
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                let left: Vector<F> = (0..d).map(|i| coefficient(self.product(i, j), k, f)).collect();
                let right: Vector<F> = (0..d).map(|i| coefficient(self.product(j, i), k, f)).collect();
                let target = if j == k { f.one() } else { f.zero() };
                rows.push(left);
                rhs.push(target.clone());
                rows.push(right);
                rhs.push(target);
            }
        }
        crate::linalg::solve(f, &rows, &rhs, d)
    }

    /// `{z : z v = v z for every v in gens}`.
    pub fn commutant(&self, gens: &[Vector<F>]) -> Subspace<F> {
        let f = &self.field;
        let d = self.dim;
        let columns: Vec<Vec<F::Elem>> = (0..d)
            .map(|k| {
                let bk = self.basis_vector(k);
                gens.iter().flat_map(|v| self.commutator(&bk, v)).collect()
            })
            .collect();
        let equations = transpose(f, &columns, gens.len() * d);
        Subspace::span(f, d, nullspace(f, &equations, d))
    }

    /// Center by brute force: the commutant of the whole basis.
    pub fn center(&self) -> Subspace<F> {
        let basis: Vec<Vector<F>> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
        self.commutant(&basis)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Structure constants of a subalgebra in the RREF basis of `sub`.
    pub fn subalgebra(&self, sub: &Subspace<F>, label: &str) -> Result<StructureAlgebra<F>> {
        let basis = sub.basis();
        let m = basis.len();
        let mut products = Vec::with_capacity(m * m);
        for a in basis {
            for b in basis {
                let ab = self.mul(a, b);
                let coords = sub.coordinates(&ab).ok_or_else(|| {
                    Error::disagreement("subalgebra closure", format!("{label} is not closed under multiplication"))
                })?;
                products.push(coords.into_iter().enumerate().filter(|(_, c)| !self.field.is_zero(c)).collect());
            }
        }
        let labels = (0..m).map(|i| format!("{label}[{i}]")).collect();
        StructureAlgebra::new(self.field.clone(), labels, products)
    }

    /// `{dim, labels, sc}` with `sc` listing nonzero products `[i, j, [[k, c], ...]]`.
    pub fn to_json(&self) -> Value {
        let mut sc = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row = self.product(i, j);
                if row.is_empty() {
                    continue;
                }
                let terms: Vec<Value> = row.iter().map(|(k, c)| json!([k, self.field.to_json(c)])).collect();
                sc.push(json!([i, j, terms]));
            }
        }
        json!({"dim": self.dim, "labels": self.labels, "sc": sc})
    }

    pub fn is_zero(&self, v: &[F::Elem]) -> bool {
        is_zero_vector(&self.field, v)
    }
}

fn coefficient<F: Field>(row: &SparseRow<F::Elem>, k: usize, f: &F) -> F::Elem {
    row.iter().find(|(i, _)| *i == k).map(|(_, c)| c.clone()).unwrap_or_else(|| f.zero())
}

/// Rows of the matrix whose columns are given; all-zero rows are dropped.
pub(crate) fn transpose<F: Field>(f: &F, columns: &[Vec<F::Elem>], nrows: usize) -> Vec<Vec<F::Elem>> {
    (0..nrows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect::<Vec<_>>())
        .filter(|row| !is_zero_vector(f, row))
        .collect()
}
