//! The partial crossed product `R *_w G = ⊕_g D_g δ_g`.
//!
//! Basis: `e_x δ_g` for `x ∈ S_g`, in `(g, x)` order. Centralizer and center are
//! computed twice, from the coefficient conditions and as commutants in the
//! structure-constant algebra; any difference is reported as a disagreement.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{transpose, StructureAlgebra};
use crate::dynamics::PointSet;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{nullspace, Subspace, Vector};
use crate::ring::{IdealHandle, RingElement};
use crate::twisted::TwistedAction;

/// `Σ a_g δ_g` with zero coefficients pruned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPElement<F: Field> {
    pub coeffs: BTreeMap<usize, RingElement<F>>,
}

impl<F: Field> CPElement<F> {
    pub fn zero() -> Self {
        CPElement { coeffs: BTreeMap::new() }
    }

    /// `{g : a_g ≠ 0}`.
    pub fn supp(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityReport {
    pub holds: bool,
    pub triples_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutativityCheck {
    pub commutative: bool,
    pub group_abelian: bool,
    pub cocycle_symmetric: bool,
    pub alpha_identity: bool,
    /// `gh = hg` for every pair with `S_g ∩ S_gh ≠ ∅`.
    pub abelian_on_support: bool,
}

impl CommutativityCheck {
    /// G abelian, w symmetric and every α_g the identity.
    pub fn characterization(&self) -> bool {
        self.group_abelian && self.cocycle_symmetric && self.alpha_identity
    }

    /// The characterization with commutation required only where `w_{g,h} ≠ 0`.
    /// Differs from [`Self::characterization`] only when some products vanish,
    /// e.g. a non-abelian group with every `D_g = 0` for `g ≠ e`.
    pub fn support_characterization(&self) -> bool {
        self.abelian_on_support && self.cocycle_symmetric && self.alpha_identity
    }
}

pub struct CrossedProduct<'a, F: Field> {
    action: &'a TwistedAction<F>,
    /// `offsets[g]` is the index of the first basis element over `g`.
    offsets: Vec<usize>,
    basis: Vec<(usize, usize)>,
}

impl<'a, F: Field> CrossedProduct<'a, F> {
    pub fn new(action: &'a TwistedAction<F>) -> Self {
        let mut offsets = Vec::with_capacity(action.group().order());
        let mut basis = Vec::new();
        for g in action.group().elements() {
            offsets.push(basis.len());
            basis.extend(action.support(g).iter().map(|&x| (g, x)));
        }
        CrossedProduct { action, offsets, basis }
    }

    pub fn action(&self) -> &TwistedAction<F> {
        self.action
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn labels(&self) -> Vec<String> {
        let g = self.action.group();
        self.basis.iter().map(|&(h, x)| format!("e{x}d{}", g.label(h))).collect()
    }

    pub fn index_of(&self, g: usize, x: usize) -> Option<usize> {
        let s = self.action.support(g);
        s.contains(&x).then(|| self.offsets[g] + s.range(..x).count())
    }

    fn field(&self) -> &F {
        self.action.field()
    }

    /// Checks `a_g ∈ D_g` and prunes zeros.
    pub fn element(&self, coeffs: BTreeMap<usize, RingElement<F>>) -> Result<CPElement<F>> {
        let ring = self.action.ring();
        let mut out = BTreeMap::new();
        for (g, a) in coeffs {
            if g >= self.action.group().order() {
                return Err(Error::IndexOutOfRange { index: g, order: self.action.group().order() });
            }
            if a.len() != ring.size() {
                return Err(Error::SizeMismatch { left: ring.size(), right: a.len() });
            }
            if let Some(x) = ring.support(&a).into_iter().find(|x| !self.action.support(g).contains(x)) {
                return Err(Error::CoefficientOutsideIdeal { g, point: x });
            }
            if !ring.is_zero(&a) {
                out.insert(g, a);
            }
        }
        Ok(CPElement { coeffs: out })
    }

    /// `r δ_e`.
    pub fn from_ring(&self, r: &RingElement<F>) -> CPElement<F> {
        self.element(BTreeMap::from([(self.action.group().identity(), r.clone())])).expect("D_e = R")
    }

    /// `1_R δ_e`.
    pub fn one(&self) -> CPElement<F> {
        self.from_ring(&self.action.ring().one())
    }

    pub fn basis_element(&self, i: usize) -> CPElement<F> {
        let (g, x) = self.basis[i];
        CPElement { coeffs: BTreeMap::from([(g, self.action.ring().point(x))]) }
    }

    pub fn to_vector(&self, u: &CPElement<F>) -> Vector<F> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim()];
        for (&g, a) in &u.coeffs {
            for &x in self.action.support(g) {
                v[self.offsets[g] + self.action.support(g).range(..x).count()] = a.coeffs[x].clone();
            }
        }
        v
    }

    pub fn from_vector(&self, v: &[F::Elem]) -> CPElement<F> {
        let ring = self.action.ring();
        let mut coeffs: BTreeMap<usize, RingElement<F>> = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if self.field().is_zero(c) {
                continue;
            }
            let (g, x) = self.basis[i];
            coeffs.entry(g).or_insert_with(|| ring.zero()).coeffs[x] = c.clone();
        }
        CPElement { coeffs }
    }

    pub fn add(&self, u: &CPElement<F>, v: &CPElement<F>) -> CPElement<F> {
        let ring = self.action.ring();
        let mut coeffs = u.coeffs.clone();
        for (&g, b) in &v.coeffs {
            let sum = match coeffs.get(&g) {
                Some(a) => ring.add(a, b).expect("same ring"),
                None => b.clone(),
            };
            if ring.is_zero(&sum) {
                coeffs.remove(&g);
            } else {
                coeffs.insert(g, sum);
            }
        }
        CPElement { coeffs }
    }

    pub fn sub(&self, u: &CPElement<F>, v: &CPElement<F>) -> CPElement<F> {
        let ring = self.action.ring();
        let minus_one = self.field().neg(&self.field().one());
        let neg = CPElement { coeffs: v.coeffs.iter().map(|(&g, b)| (g, ring.scale(&minus_one, b))).collect() };
        self.add(u, &neg)
    }

    fn check(&self, u: &CPElement<F>) -> Result<()> {
        let f = self.field();
        for (&g, a) in &u.coeffs {
            if !IdealHandle::new(self.action.support(g).clone()).contains(f, a) {
                let x = self.action.ring().support(a).into_iter().find(|x| !self.action.support(g).contains(x));
                return Err(Error::CoefficientOutsideIdeal { g, point: x.unwrap_or(0) });
            }
        }
        Ok(())
    }

    /// `(a_g δ_g)(b_h δ_h) = α_g(α_g⁻¹(a_g) b_h) w_{g,h} δ_{gh}`, extended bilinearly.
    pub fn mul(&self, u: &CPElement<F>, v: &CPElement<F>) -> Result<CPElement<F>> {
        self.check(u)?;
        self.check(v)?;
        let a_ = self.action;
        let ring = a_.ring();
        let grp = a_.group();
        let mut out = CPElement::zero();
        for (&g, a) in &u.coeffs {
            let pulled = a_.alpha_inv(g, a);
            for (&h, b) in &v.coeffs {
                let inner = ring.mul(&pulled, b).expect("same ring");
                let c = ring.mul(&a_.alpha(g, &inner), a_.w(g, h)).expect("same ring");
                let gh = grp.mul(g, h);
                if let Some(x) = ring.support(&c).into_iter().find(|x| !a_.support(gh).contains(x)) {
                    return Err(Error::CoefficientOutsideIdeal { g: gh, point: x });
                }
                out = self.add(&out, &CPElement { coeffs: BTreeMap::from([(gh, c)]) });
            }
        }
        Ok(out)
    }

    pub fn structure_algebra(&self) -> StructureAlgebra<F> {
        let basis: Vec<CPElement<F>> = (0..self.dim()).map(|i| self.basis_element(i)).collect();
        StructureAlgebra::from_fn(self.field().clone(), self.labels(), |i, j| {
            self.to_vector(&self.mul(&basis[i], &basis[j]).expect("basis elements are well formed"))
        })
    }

    /// `(uv)w = u(vw)` over all basis triples.
    pub fn verify_associativity(&self) -> AssociativityReport {
        let d = self.dim();
        let basis: Vec<CPElement<F>> = (0..d).map(|i| self.basis_element(i)).collect();
        let witness = (0..d * d).into_par_iter().find_map_first(|ij| {
            let (i, j) = (ij / d, ij % d);
            let uv = self.mul(&basis[i], &basis[j]).ok()?;
            (0..d).find_map(|k| {
                let lhs = self.mul(&uv, &basis[k]);
                let rhs = self.mul(&basis[j], &basis[k]).and_then(|vw| self.mul(&basis[i], &vw));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => None,
                    _ => Some((i, j, k)),
                }
            })
        });
        let labels = self.labels();
        AssociativityReport {
            holds: witness.is_none(),
            triples_checked: (d as u64).pow(3),
            witness: witness.map(|(i, j, k)| [labels[i].clone(), labels[j].clone(), labels[k].clone()]),
        }
    }

    /// `1_R δ_e` is a two-sided identity on the basis.
    pub fn identity_holds(&self) -> bool {
        let one = self.one();
        (0..self.dim()).all(|i| {
            let b = self.basis_element(i);
            self.mul(&one, &b).ok() == Some(b.clone()) && self.mul(&b, &one).ok() == Some(b)
        })
    }

    /// `E(Σ a_g δ_g) = a_e`.
    pub fn project_e(&self, u: &CPElement<F>) -> RingElement<F> {
        u.coeffs.get(&self.action.group().identity()).cloned().unwrap_or_else(|| self.action.ring().zero())
    }

    /// `T_g(u) = u (1_g δ_g)`.
    pub fn op_t(&self, u: &CPElement<F>, g: usize) -> Result<CPElement<F>> {
        let unit = CPElement { coeffs: BTreeMap::from([(g, self.action.unit(g))]) };
        self.mul(u, &self.element(unit.coeffs)?)
    }

    /// `K_r(u) = (r δ_e) u − u (r δ_e)`.
    pub fn op_k(&self, u: &CPElement<F>, r: &RingElement<F>) -> Result<CPElement<F>> {
        let rd = self.from_ring(r);
        Ok(self.sub(&self.mul(&rd, u)?, &self.mul(u, &rd)?))
    }

    /// Kernel of a linear map given by its values on the basis.
    fn kernel(&self, residual: impl Fn(&CPElement<F>) -> Vec<F::Elem> + Sync) -> Subspace<F> {
        let f = self.field();
        let columns: Vec<Vec<F::Elem>> = (0..self.dim()).map(|i| residual(&self.basis_element(i))).collect();
        let nrows = columns.first().map_or(0, |c| c.len());
        Subspace::span(f, self.dim(), nullspace(f, &transpose(f, &columns, nrows), self.dim()))
    }

    /// `a_g α_g(r 1_{g⁻¹}) − r a_g` for every g and every point idempotent r.
    fn centralizer_residual(&self, u: &CPElement<F>) -> Vec<F::Elem> {
        let a_ = self.action;
        let ring = a_.ring();
        let grp = a_.group();
        let mut out = Vec::new();
        for g in grp.elements() {
            let a_g = u.coeffs.get(&g).cloned().unwrap_or_else(|| ring.zero());
            for y in 0..ring.size() {
                let r = ring.point(y);
                let moved = a_.alpha(g, &ring.mul(&r, &a_.unit(grp.inv(g))).expect("same ring"));
                let lhs = ring.mul(&a_g, &moved).expect("same ring");
                let rhs = ring.mul(&r, &a_g).expect("same ring");
                out.extend(ring.sub(&lhs, &rhs).expect("same ring").coeffs);
            }
        }
        out
    }

    /// `C(R)` from the coefficient conditions.
    pub fn centralizer_formula(&self) -> Subspace<F> {
        self.kernel(|u| self.centralizer_residual(u))
    }

    /// Vectors of `e_y δ_e`.
    pub fn ring_basis(&self) -> Vec<Vector<F>> {
        (0..self.action.size()).map(|y| self.to_vector(&self.from_ring(&self.action.ring().point(y)))).collect()
    }

    pub fn ring_subspace(&self) -> Subspace<F> {
        Subspace::span(self.field(), self.dim(), self.ring_basis())
    }

    /// `C(R)`, cross-checked against the commutant of `R` in the structure algebra.
    pub fn centralizer(&self, alg: &StructureAlgebra<F>) -> Result<Subspace<F>> {
        let formula = self.centralizer_formula();
        let brute = alg.commutant(&self.ring_basis());
        if formula != brute {
            return Err(Error::disagreement(
                "centralizer",
                format!("coefficient conditions give dimension {}, commutant gives {}", formula.dim(), brute.dim()),
            ));
        }
        Ok(formula)
    }

    /// `R = C(R)`.
    pub fn is_maximal_commutative(&self, centralizer: &Subspace<F>) -> bool {
        *centralizer == self.ring_subspace()
    }

    /// Both families of center conditions: the centralizer conditions and
    /// `r_{ts⁻¹} w_{ts⁻¹,s} = α_s(r_{s⁻¹t} 1_{s⁻¹}) w_{s,s⁻¹t}`.
    fn center_residual(&self, u: &CPElement<F>) -> Vec<F::Elem> {
        let a_ = self.action;
        let ring = a_.ring();
        let grp = a_.group();
        let coeff = |g: usize| u.coeffs.get(&g).cloned().unwrap_or_else(|| ring.zero());
        let mut out = self.centralizer_residual(u);
        for s in grp.elements() {
            let sinv = grp.inv(s);
            for t in grp.elements() {
                let left_idx = grp.mul(t, sinv);
                let right_idx = grp.mul(sinv, t);
                let lhs = ring.mul(&coeff(left_idx), a_.w(left_idx, s)).expect("same ring");
                let moved = a_.alpha(s, &ring.mul(&coeff(right_idx), &a_.unit(sinv)).expect("same ring"));
                let rhs = ring.mul(&moved, a_.w(s, right_idx)).expect("same ring");
                out.extend(ring.sub(&lhs, &rhs).expect("same ring").coeffs);
            }
        }
        out
    }

    pub fn center_formula(&self) -> Subspace<F> {
        self.kernel(|u| self.center_residual(u))
    }

    /// `Z(R *_w G)`, cross-checked against the brute-force center.
    pub fn center(&self, alg: &StructureAlgebra<F>) -> Result<Subspace<F>> {
        let formula = self.center_formula();
        let brute = alg.center();
        if formula != brute {
            return Err(Error::disagreement(
                "center",
                format!("coefficient conditions give dimension {}, brute force gives {}", formula.dim(), brute.dim()),
            ));
        }
        Ok(formula)
    }

    /// Direct pairwise check, cross-checked against [`CommutativityCheck::support_characterization`].
    pub fn commutativity(&self, alg: &StructureAlgebra<F>) -> Result<CommutativityCheck> {
        let direct = alg.is_commutative();
        let a_ = self.action;
        let grp = a_.group();
        let abelian_on_support = grp.elements().all(|g| {
            grp.elements().all(|h| {
                let gh = grp.mul(g, h);
                gh == grp.mul(h, g) || a_.support(g).is_disjoint(a_.support(gh))
            })
        });
        let check = CommutativityCheck {
            commutative: direct,
            group_abelian: grp.is_abelian(),
            cocycle_symmetric: a_.is_symmetric(),
            alpha_identity: a_.all_alpha_identity(),
            abelian_on_support,
        };
        let structural = check.support_characterization();
        if structural != direct {
            return Err(Error::disagreement(
                "commutativity",
                format!("pairwise check says {direct}, characterization says {structural}"),
            ));
        }
        Ok(check)
    }

    /// `Sep^g = {x ∈ X_g : α_{g⁻¹}(x) ≠ x}` and `Per^g = X_g \ Sep^g`.
    pub fn sep_per(&self, g: usize) -> (PointSet, PointSet) {
        let a_ = self.action;
        let ginv = a_.group().inv(g);
        a_.support(g).iter().partition(|&&x| a_.sigma(ginv).point(x) != Some(x))
    }

    /// The commutant of `C(X)`: spanned by `e_x δ_g` with `x ∈ Per^g`.
    pub fn commutant_cx(&self) -> Subspace<F> {
        let mut vectors = Vec::new();
        for g in self.action.group().elements() {
            let (_, per) = self.sep_per(g);
            for x in per {
                let mut v = vec![self.field().zero(); self.dim()];
                v[self.index_of(g, x).expect("x ∈ S_g")] = self.field().one();
                vectors.push(v);
            }
        }
        Subspace::span(self.field(), self.dim(), vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::tests::{dyn_h, ex_e, set};
    use crate::dynamics::PartialSystem;
    use crate::field::PrimeField;
    use crate::twisted::tests::{c6_on_three, ex_d, f, identity_action, swap_action};

    fn ex_c() -> TwistedAction<PrimeField> {
        c6_on_three(f(5)).restrict(&set(&[1])).unwrap().0
    }

    #[test]
    fn identity_and_associativity() {
        for a in [swap_action(3), ex_d(), ex_c(), TwistedAction::lift(&ex_e(), f(3)).unwrap()] {
            let cp = CrossedProduct::new(&a);
            assert!(cp.identity_holds());
            let report = cp.verify_associativity();
            assert!(report.holds);
            assert_eq!(report.triples_checked, (cp.dim() as u64).pow(3));
            assert!(cp.structure_algebra().associativity_witness().is_none());
        }
        assert_eq!(CrossedProduct::new(&swap_action(3)).verify_associativity().triples_checked, 64);
    }

    #[test]
    fn corrupted_cocycle_fails_associativity() {
        let mut a = ex_d();
        a.set_cocycle_value(2, 1, 0, 2).unwrap();
        let report = CrossedProduct::new(&a).verify_associativity();
        assert!(!report.holds);
        assert!(report.witness.is_some());
    }

    #[test]
    fn ex_d_anticommutes() {
        let a = ex_d();
        let cp = CrossedProduct::new(&a);
        let d10 = cp.basis_element(cp.index_of(2, 0).unwrap());
        let d01 = cp.basis_element(cp.index_of(1, 0).unwrap());
        let d11 = cp.basis_element(cp.index_of(3, 0).unwrap());
        assert_eq!(cp.mul(&d10, &d01).unwrap(), d11);
        let minus = cp.sub(&CPElement::zero(), &d11);
        assert_eq!(cp.mul(&d01, &d10).unwrap(), minus);
    }

    #[test]
    fn ex_e_product() {
        let a = TwistedAction::lift(&ex_e(), f(3)).unwrap();
        let cp = CrossedProduct::new(&a);
        let u = cp.basis_element(cp.index_of(1, 1).unwrap());
        let v = cp.basis_element(cp.index_of(2, 0).unwrap());
        assert_eq!(cp.mul(&u, &v).unwrap(), cp.from_ring(&a.ring().point(1)));
    }

    #[test]
    fn coefficient_outside_ideal() {
        let a = TwistedAction::lift(&ex_e(), f(3)).unwrap();
        let cp = CrossedProduct::new(&a);
        let bad = cp.element(BTreeMap::from([(1, a.ring().point(0))]));
        assert!(matches!(bad, Err(Error::CoefficientOutsideIdeal { g: 1, point: 0 })));
    }

    #[test]
    fn operators() {
        let a = swap_action(3);
        let cp = CrossedProduct::new(&a);
        assert_eq!(cp.project_e(&cp.one()), a.ring().one());
        let u = CPElement { coeffs: BTreeMap::from([(1, a.unit(1))]) };
        let r = a.ring().from_i64(&[1, 0]).unwrap();
        let k = cp.op_k(&u, &r).unwrap();
        // a (r 1_g − α_g(r 1_g⁻¹)) = (1, −1) = (1, 2) in F_3 at δ_g
        assert_eq!(k.coeffs.get(&1).unwrap().coeffs, vec![1, 2]);
        assert!(cp.project_e(&k).coeffs.iter().all(|c| *c == 0));
        let diag = cp.from_ring(&a.ring().from_i64(&[2, 1]).unwrap());
        assert_eq!(cp.op_k(&diag, &r).unwrap(), CPElement::zero());
        assert_eq!(cp.op_t(&cp.one(), 1).unwrap(), u);
    }

    #[test]
    fn centralizers() {
        let a = swap_action(3);
        let cp = CrossedProduct::new(&a);
        let alg = cp.structure_algebra();
        let c = cp.centralizer(&alg).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(cp.is_maximal_commutative(&c));

        let id = identity_action(3, 2, 2);
        let cp = CrossedProduct::new(&id);
        let c = cp.centralizer(&cp.structure_algebra()).unwrap();
        assert_eq!(c.dim(), 4);
        assert!(!cp.is_maximal_commutative(&c));

        let a = ex_c();
        let cp = CrossedProduct::new(&a);
        let c = cp.centralizer(&cp.structure_algebra()).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(!cp.is_maximal_commutative(&c));

        let a = TwistedAction::lift(&ex_e(), f(3)).unwrap();
        let cp = CrossedProduct::new(&a);
        assert!(cp.is_maximal_commutative(&cp.centralizer(&cp.structure_algebra()).unwrap()));
    }

    #[test]
    fn centers() {
        let cases: Vec<(TwistedAction<PrimeField>, usize)> = vec![
            (swap_action(3), 1),
            (ex_c(), 2),
            (ex_d(), 1),
            (TwistedAction::lift(&ex_e(), f(3)).unwrap(), 1),
        ];
        for (a, dim) in cases {
            let cp = CrossedProduct::new(&a);
            assert_eq!(cp.center(&cp.structure_algebra()).unwrap().dim(), dim);
        }
    }

    #[test]
    fn commutativity() {
        let a = ex_c();
        let cp = CrossedProduct::new(&a);
        assert!(cp.commutativity(&cp.structure_algebra()).unwrap().commutative);
        let a = swap_action(3);
        let cp = CrossedProduct::new(&a);
        let c = cp.commutativity(&cp.structure_algebra()).unwrap();
        assert!(!c.commutative && !c.alpha_identity);
        let a = ex_d();
        let cp = CrossedProduct::new(&a);
        let c = cp.commutativity(&cp.structure_algebra()).unwrap();
        assert!(!c.commutative && !c.cocycle_symmetric);
    }

    #[test]
    fn commutative_over_a_nonabelian_group() {
        // S3 acting only through D_e: the algebra is R itself
        let g = crate::group::GroupDescriptor::symmetric(3).build().unwrap();
        let mut domains = vec![set(&[]); 6];
        domains[0] = set(&[0]);
        let mut maps = vec![BTreeMap::new(); 6];
        maps[0].insert(0, 0);
        let sys = PartialSystem::new(g, 1, domains, maps).unwrap();
        let a = TwistedAction::lift(&sys, f(2)).unwrap();
        let cp = CrossedProduct::new(&a);
        let c = cp.commutativity(&cp.structure_algebra()).unwrap();
        assert!(c.commutative && c.abelian_on_support && !c.group_abelian);
        assert!(c.support_characterization() && !c.characterization());
    }

    #[test]
    fn commutant_of_functions() {
        let a = swap_action(3);
        let cp = CrossedProduct::new(&a);
        assert_eq!(cp.sep_per(1), (set(&[0, 1]), set(&[])));
        assert_eq!(cp.commutant_cx(), cp.ring_subspace());

        let id = identity_action(3, 2, 2);
        let cp = CrossedProduct::new(&id);
        assert_eq!(cp.sep_per(1).1, set(&[0, 1]));
        assert!(cp.commutant_cx().is_full());

        let h = TwistedAction::lift(&dyn_h(), f(3)).unwrap();
        let cp = CrossedProduct::new(&h);
        assert_eq!(cp.sep_per(1).0, set(&[0, 1]));
        assert_eq!(cp.commutant_cx(), cp.centralizer(&cp.structure_algebra()).unwrap());
        assert_eq!(cp.commutant_cx(), cp.ring_subspace());
    }

    #[test]
    fn vector_round_trip() {
        let a = ex_c();
        let cp = CrossedProduct::new(&a);
        for i in 0..cp.dim() {
            let b = cp.basis_element(i);
            assert_eq!(cp.from_vector(&cp.to_vector(&b)), b);
        }
    }
}
