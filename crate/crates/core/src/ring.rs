//! The split ring `K^X`: functions from a finite point set to a field.
//!
//! Ideals are exactly the `e_S K^X` for subsets `S`, and K-algebra
//! isomorphisms between such ideals are induced by point bijections.

use std::collections::BTreeMap;

use crate::dynamics::PointSet;
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement<F: Field> {
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> RingElement<F> {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, x: usize) -> &F::Elem {
        &self.coeffs[x]
    }
}

/// The ideal `e_S R`, identified with its support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealHandle {
    pub support: PointSet,
}

impl IdealHandle {
    pub fn new(support: PointSet) -> Self {
        IdealHandle { support }
    }

    pub fn contains<F: Field>(&self, field: &F, a: &RingElement<F>) -> bool {
        a.coeffs.iter().enumerate().all(|(x, c)| field.is_zero(c) || self.support.contains(&x))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitRing<F: Field> {
    field: F,
    size: usize,
}

impl<F: Field> SplitRing<F> {
    pub fn new(field: F, size: usize) -> Self {
        SplitRing { field, size }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn element(&self, coeffs: Vec<F::Elem>) -> Result<RingElement<F>> {
        if coeffs.len() != self.size {
            return Err(Error::SizeMismatch { left: self.size, right: coeffs.len() });
        }
        Ok(RingElement { coeffs })
    }

    pub fn from_i64(&self, values: &[i64]) -> Result<RingElement<F>> {
        self.element(values.iter().map(|&v| self.field.from_i64(v)).collect())
    }

    pub fn zero(&self) -> RingElement<F> {
        RingElement { coeffs: vec![self.field.zero(); self.size] }
    }

    pub fn one(&self) -> RingElement<F> {
        RingElement { coeffs: vec![self.field.one(); self.size] }
    }

    /// The idempotent `e_S`.
    pub fn idempotent(&self, support: &PointSet) -> RingElement<F> {
        let f = &self.field;
        RingElement {
            coeffs: (0..self.size).map(|x| if support.contains(&x) { f.one() } else { f.zero() }).collect(),
        }
    }

    pub fn point(&self, x: usize) -> RingElement<F> {
        self.idempotent(&PointSet::from([x]))
    }

    fn check(&self, a: &RingElement<F>) -> Result<()> {
        if a.len() != self.size {
            return Err(Error::SizeMismatch { left: self.size, right: a.len() });
        }
        Ok(())
    }

    fn zip(&self, a: &RingElement<F>, b: &RingElement<F>, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Result<RingElement<F>> {
        self.check(a)?;
        self.check(b)?;
        Ok(RingElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| op(x, y)).collect() })
    }

    pub fn add(&self, a: &RingElement<F>, b: &RingElement<F>) -> Result<RingElement<F>> {
        self.zip(a, b, |x, y| self.field.add(x, y))
    }

    pub fn sub(&self, a: &RingElement<F>, b: &RingElement<F>) -> Result<RingElement<F>> {
        self.zip(a, b, |x, y| self.field.sub(x, y))
    }

    pub fn mul(&self, a: &RingElement<F>, b: &RingElement<F>) -> Result<RingElement<F>> {
        self.zip(a, b, |x, y| self.field.mul(x, y))
    }

    pub fn scale(&self, c: &F::Elem, a: &RingElement<F>) -> RingElement<F> {
        RingElement { coeffs: a.coeffs.iter().map(|x| self.field.mul(c, x)).collect() }
    }

    pub fn is_zero(&self, a: &RingElement<F>) -> bool {
        a.coeffs.iter().all(|x| self.field.is_zero(x))
    }

    /// `Supp(a) = {x : a(x) ≠ 0}`.
    pub fn support(&self, a: &RingElement<F>) -> PointSet {
        a.coeffs.iter().enumerate().filter(|(_, c)| !self.field.is_zero(c)).map(|(x, _)| x).collect()
    }

    /// `ann(a) = e_{X \ Supp(a)} R`.
    pub fn annihilator(&self, a: &RingElement<F>) -> IdealHandle {
        IdealHandle::new(a.coeffs.iter().enumerate().filter(|(_, c)| self.field.is_zero(c)).map(|(x, _)| x).collect())
    }

    pub fn full_ideal(&self) -> IdealHandle {
        IdealHandle::new((0..self.size).collect())
    }

    /// Unit of `R`, or of `e_S R` when a carrier is given.
    pub fn is_unit(&self, a: &RingElement<F>, carrier: Option<&IdealHandle>) -> bool {
        self.invert(a, carrier).is_ok()
    }

    pub fn invert(&self, a: &RingElement<F>, carrier: Option<&IdealHandle>) -> Result<RingElement<F>> {
        self.check(a)?;
        let full = self.full_ideal();
        let carrier = carrier.unwrap_or(&full);
        let f = &self.field;
        let mut coeffs = Vec::with_capacity(self.size);
        for (x, c) in a.coeffs.iter().enumerate() {
            if carrier.support.contains(&x) {
                coeffs.push(f.inv(c).ok_or(Error::NotAUnit)?);
            } else if f.is_zero(c) {
                coeffs.push(f.zero());
            } else {
                return Err(Error::NotAUnit);
            }
        }
        Ok(RingElement { coeffs })
    }
}

/// A bijection `σ: S → T` of point sets, acting on functions by `f ↦ f ∘ σ⁻¹` on `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointIso {
    map: BTreeMap<usize, usize>,
}

impl PointIso {
    pub fn new(map: BTreeMap<usize, usize>) -> Result<Self> {
        let targets: PointSet = map.values().copied().collect();
        if targets.len() != map.len() {
            return Err(Error::NotBijective(format!("{map:?} is not injective")));
        }
        Ok(PointIso { map })
    }

    /// `σ` as a bijection between given sets; fails unless it is exactly `S → T`.
    pub fn between(map: BTreeMap<usize, usize>, source: &PointSet, target: &PointSet) -> Result<Self> {
        let iso = Self::new(map)?;
        if &iso.source() != source || &iso.target() != target {
            return Err(Error::NotBijective(format!(
                "map has domain {:?} and image {:?}, expected {source:?} -> {target:?}",
                iso.source(),
                iso.target()
            )));
        }
        Ok(iso)
    }

    pub fn identity(support: &PointSet) -> Self {
        PointIso { map: support.iter().map(|&x| (x, x)).collect() }
    }

    pub fn source(&self) -> PointSet {
        self.map.keys().copied().collect()
    }

    pub fn target(&self) -> PointSet {
        self.map.values().copied().collect()
    }

    pub fn as_map(&self) -> &BTreeMap<usize, usize> {
        &self.map
    }

    pub fn point(&self, x: usize) -> Option<usize> {
        self.map.get(&x).copied()
    }

    pub fn inverse(&self) -> Self {
        PointIso { map: self.map.iter().map(|(&x, &y)| (y, x)).collect() }
    }

    /// `self ∘ other`, defined where `other` lands in the source of `self`.
    pub fn compose(&self, other: &PointIso) -> PointIso {
        PointIso {
            map: other.map.iter().filter_map(|(&x, &y)| self.point(y).map(|z| (x, z))).collect(),
        }
    }

    /// The ring map `e_S R → e_T R`; coordinates of `a` off `S` are ignored.
    pub fn apply<F: Field>(&self, ring: &SplitRing<F>, a: &RingElement<F>) -> RingElement<F> {
        let mut out = ring.zero();
        for (&x, &y) in &self.map {
            out.coeffs[y] = a.coeffs[x].clone();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{all_subsets, tests::set};
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn ring(p: u32, n: usize) -> SplitRing<PrimeField> {
        SplitRing::new(PrimeField::new(p).unwrap(), n)
    }

    #[test]
    fn pointwise_arithmetic() {
        let r = ring(3, 2);
        let a = r.from_i64(&[1, 2]).unwrap();
        let b = r.from_i64(&[2, 2]).unwrap();
        assert_eq!(r.mul(&a, &b).unwrap(), r.from_i64(&[2, 1]).unwrap());
        assert_eq!(r.mul(&a, &r.one()).unwrap(), a);
        let s = set(&[0]);
        let t = set(&[0, 1]);
        assert_eq!(r.mul(&r.idempotent(&s), &r.idempotent(&t)).unwrap(), r.idempotent(&(&s & &t)));
        assert!(matches!(r.add(&a, &ring(3, 3).one()), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn annihilators() {
        let r = ring(3, 3);
        assert_eq!(r.annihilator(&r.from_i64(&[1, 0, 2]).unwrap()).support, set(&[1]));
        assert_eq!(r.annihilator(&r.zero()), r.full_ideal());
        assert!(r.annihilator(&r.from_i64(&[1, 2, 1]).unwrap()).support.is_empty());
    }

    #[test]
    fn units() {
        let r = ring(5, 2);
        let a = r.from_i64(&[2, 3]).unwrap();
        assert_eq!(r.invert(&a, None).unwrap(), r.from_i64(&[3, 2]).unwrap());
        let e0 = r.idempotent(&set(&[0]));
        assert!(!r.is_unit(&e0, None));
        let carrier = IdealHandle::new(set(&[0]));
        assert_eq!(r.invert(&e0, Some(&carrier)).unwrap(), e0);
        let r3 = ring(3, 2);
        assert!(matches!(r3.invert(&r3.from_i64(&[1, 0]).unwrap(), None), Err(Error::NotAUnit)));
    }

    #[test]
    fn induced_isomorphisms() {
        let r = ring(3, 2);
        let a = r.from_i64(&[1, 2]).unwrap();
        let id = PointIso::identity(&set(&[0, 1]));
        assert_eq!(id.apply(&r, &a), a);
        let swap = PointIso::new(BTreeMap::from([(0, 1), (1, 0)])).unwrap();
        assert_eq!(swap.apply(&r, &a), r.from_i64(&[2, 1]).unwrap());
        // σ_1: {0} → {1}, σ_2: {1} → {0} from the restricted C3 rotation
        let s1 = PointIso::between(BTreeMap::from([(0, 1)]), &set(&[0]), &set(&[1])).unwrap();
        let s2 = PointIso::between(BTreeMap::from([(1, 0)]), &set(&[1]), &set(&[0])).unwrap();
        assert_eq!(s1.compose(&s2), PointIso::identity(&set(&[1])));
        assert_eq!(s1.inverse(), s2);
        assert!(matches!(PointIso::new(BTreeMap::from([(0, 1), (1, 1)])), Err(Error::NotBijective(_))));
        assert!(PointIso::between(BTreeMap::from([(0, 0)]), &set(&[0]), &set(&[1])).is_err());
    }

    #[test]
    fn ideals_are_supports() {
        // Every subspace closed under multiplication by R is spanned by point
        // idempotents: check via closure of each element of F_2^3.
        let r = ring(2, 3);
        for mask in 0u32..8 {
            let a = r.element((0..3).map(|i| mask >> i & 1).collect()).unwrap();
            let generated: PointSet = all_subsets(3)
                .map(|s| r.mul(&r.idempotent(&s), &a).unwrap())
                .flat_map(|b| r.support(&b))
                .collect();
            assert_eq!(generated, r.support(&a));
        }
    }

    proptest! {
        #[test]
        fn annihilator_is_exact(a in prop::collection::vec(0u32..3, 4), b in prop::collection::vec(0u32..3, 4)) {
            let r = ring(3, 4);
            let a = r.element(a).unwrap();
            let b = r.element(b).unwrap();
            let ann = r.annihilator(&a);
            prop_assert!(r.is_zero(&r.mul(&r.idempotent(&ann.support), &a).unwrap()));
            if r.is_zero(&r.mul(&b, &a).unwrap()) {
                prop_assert!(ann.contains(r.field(), &b));
            }
        }

        #[test]
        fn induced_iso_is_multiplicative(perm in Just(vec![2usize, 0, 3, 1]).prop_shuffle(),
                                         a in prop::collection::vec(0u32..5, 4),
                                         b in prop::collection::vec(0u32..5, 4)) {
            let r = ring(5, 4);
            let iso = PointIso::new(perm.into_iter().enumerate().collect()).unwrap();
            let (a, b) = (r.element(a).unwrap(), r.element(b).unwrap());
            let ab = r.mul(&a, &b).unwrap();
            prop_assert_eq!(iso.apply(&r, &ab), r.mul(&iso.apply(&r, &a), &iso.apply(&r, &b)).unwrap());
            prop_assert_eq!(iso.apply(&r, &r.one()), r.one());
            prop_assert_eq!(iso.inverse().apply(&r, &iso.apply(&r, &a)), a);
        }
    }
}
