//! Twisted partial actions of a finite group on `K^X`.
//!
//! `D_g = e_{S_g} R`, `α_g` is induced by a point bijection `σ_g: S_{g⁻¹} → S_g`
//! and `w_{g,h}` is a unit of `D_g D_{gh}`, stored as a ring element supported
//! on `S_g ∩ S_{gh}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::transpose;
use crate::dynamics::{all_subsets, PartialSystem, PointSet, MAX_SUBSET_POINTS};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::linalg::{nullspace, Subspace};
use crate::ring::{IdealHandle, PointIso, RingElement, SplitRing};
use crate::validation::ValidationReport;

/// Explicit cocycle values: `(g, h) ↦ {x ↦ w_{g,h}(x)}`; absent entries mean 1.
pub type CocycleTable<E> = BTreeMap<(usize, usize), BTreeMap<usize, E>>;

#[derive(Clone, Debug)]
pub struct TwistedAction<F: Field> {
    group: FiniteGroup,
    ring: SplitRing<F>,
    supports: Vec<PointSet>,
    sigmas: Vec<PointIso>,
    /// `cocycle[g * |G| + h] = w_{g,h}`.
    cocycle: Vec<RingElement<F>>,
}

impl<F: Field> TwistedAction<F> {
    /// Structural checks only; the axioms are checked by [`TwistedAction::validate`].
    pub fn new(
        group: FiniteGroup,
        ring: SplitRing<F>,
        supports: Vec<PointSet>,
        sigmas: Vec<BTreeMap<usize, usize>>,
        cocycle: &CocycleTable<F::Elem>,
    ) -> Result<Self> {
        let order = group.order();
        let n = ring.size();
        if supports.len() != order || sigmas.len() != order {
            return Err(Error::SizeMismatch { left: order, right: supports.len().min(sigmas.len()) });
        }
        for s in &supports {
            if let Some(&p) = s.iter().find(|&&p| p >= n) {
                return Err(Error::PointOutOfRange { point: p, size: n });
            }
        }
        let mut isos = Vec::with_capacity(order);
        for (g, map) in sigmas.into_iter().enumerate() {
            if let Some((&x, &y)) = map.iter().find(|(&x, &y)| x >= n || y >= n) {
                return Err(Error::MalformedBijection { g, detail: format!("{x} -> {y} leaves the space") });
            }
            let iso = PointIso::new(map).map_err(|e| Error::MalformedBijection { g, detail: e.to_string() })?;
            if iso.source() != supports[group.inv(g)] {
                return Err(Error::MalformedBijection {
                    g,
                    detail: format!("defined on {:?} instead of S_g^-1 = {:?}", iso.source(), supports[group.inv(g)]),
                });
            }
            isos.push(iso);
        }
        for &(g, h) in cocycle.keys() {
            if g >= order || h >= order {
                return Err(Error::IndexOutOfRange { index: g.max(h), order });
            }
        }
        let f = ring.field().clone();
        let mut values = Vec::with_capacity(order * order);
        for g in 0..order {
            for h in 0..order {
                let carrier = &supports[g] & &supports[group.mul(g, h)];
                let explicit = cocycle.get(&(g, h));
                let mut w = ring.zero();
                for &x in &carrier {
                    w.coeffs[x] = explicit.and_then(|m| m.get(&x)).cloned().unwrap_or_else(|| f.one());
                    if f.is_zero(&w.coeffs[x]) {
                        return Err(Error::MalformedCocycle { g, h, point: x, detail: "value is zero".into() });
                    }
                }
                if let Some(m) = explicit {
                    if let Some((&x, _)) = m.iter().find(|(x, v)| !carrier.contains(x) && !f.is_zero(v)) {
                        return Err(Error::MalformedCocycle {
                            g,
                            h,
                            point: x,
                            detail: "value given outside S_g ∩ S_gh".into(),
                        });
                    }
                }
                values.push(w);
            }
        }
        Ok(TwistedAction { group, ring, supports, sigmas: isos, cocycle: values })
    }

    /// Lifts a valid partial system to `C(X)` with the trivial cocycle.
    pub fn lift(system: &PartialSystem, field: F) -> Result<Self> {
        let report = system.validate();
        if !report.valid {
            return Err(Error::InvalidSystem(Box::new(report)));
        }
        TwistedAction::new(
            system.group().clone(),
            SplitRing::new(field, system.size()),
            system.domains().to_vec(),
            system.maps().to_vec(),
            &BTreeMap::new(),
        )
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ring(&self) -> &SplitRing<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn size(&self) -> usize {
        self.ring.size()
    }

    pub fn support(&self, g: usize) -> &PointSet {
        &self.supports[g]
    }

    pub fn supports(&self) -> &[PointSet] {
        &self.supports
    }

    pub fn sigma(&self, g: usize) -> &PointIso {
        &self.sigmas[g]
    }

    /// `1_g = e_{S_g}`.
    pub fn unit(&self, g: usize) -> RingElement<F> {
        self.ring.idempotent(&self.supports[g])
    }

    pub fn w(&self, g: usize, h: usize) -> &RingElement<F> {
        &self.cocycle[g * self.group.order() + h]
    }

    /// Replaces one cocycle value without re-validating the axioms.
    pub fn set_cocycle_value(&mut self, g: usize, h: usize, x: usize, value: F::Elem) -> Result<()> {
        let carrier = &self.supports[g] & &self.supports[self.group.mul(g, h)];
        if !carrier.contains(&x) {
            return Err(Error::MalformedCocycle { g, h, point: x, detail: "point outside S_g ∩ S_gh".into() });
        }
        if self.field().is_zero(&value) {
            return Err(Error::MalformedCocycle { g, h, point: x, detail: "value is zero".into() });
        }
        let idx = g * self.group.order() + h;
        self.cocycle[idx].coeffs[x] = value;
        Ok(())
    }

    /// Explicit table of every cocycle value that differs from 1.
    pub fn cocycle_table(&self) -> CocycleTable<F::Elem> {
        let f = self.field();
        let mut out = BTreeMap::new();
        for g in self.group.elements() {
            for h in self.group.elements() {
                let carrier = &self.supports[g] & &self.supports[self.group.mul(g, h)];
                let w = self.w(g, h);
                let entries: BTreeMap<usize, F::Elem> =
                    carrier.iter().filter(|&&x| !f.is_one(&w.coeffs[x])).map(|&x| (x, w.coeffs[x].clone())).collect();
                if !entries.is_empty() {
                    out.insert((g, h), entries);
                }
            }
        }
        out
    }

    pub fn has_trivial_cocycle(&self) -> bool {
        self.cocycle_table().is_empty()
    }

    /// `α_g(a)` for `a ∈ D_{g⁻¹}`; coordinates of `a` outside `S_{g⁻¹}` are ignored.
    pub fn alpha(&self, g: usize, a: &RingElement<F>) -> RingElement<F> {
        self.sigmas[g].apply(&self.ring, a)
    }

    /// `α_g⁻¹(a)` for `a ∈ D_g`.
    pub fn alpha_inv(&self, g: usize, a: &RingElement<F>) -> RingElement<F> {
        self.sigmas[g].inverse().apply(&self.ring, a)
    }

    fn mul(&self, a: &RingElement<F>, b: &RingElement<F>) -> RingElement<F> {
        self.ring.mul(a, b).expect("same ring")
    }

    /// Checks axioms (ii)-(vi) on point idempotents; (i) holds in any commutative split ring.
    pub fn validate(&self) -> ValidationReport {
        let g_ = &self.group;
        let r = &self.ring;
        let f = self.field();
        let mut report = ValidationReport::new();
        report.vacuous.push("i".into());
        let e = g_.identity();
        if self.supports[e].len() != r.size() {
            report.fail("ii", e, None, None, None, "D_e is not R");
        }
        if let Some((&x, _)) = self.sigmas[e].as_map().iter().find(|(x, y)| x != y) {
            report.fail("ii", e, None, None, Some(x), "alpha_e is not the identity");
        }
        for g in g_.elements() {
            let ginv = g_.inv(g);
            for h in g_.elements() {
                let lhs = self.sigmas[g].target_of(&(&self.supports[ginv] & &self.supports[h]));
                let rhs = &self.supports[g] & &self.supports[g_.mul(g, h)];
                if lhs != rhs {
                    let point = lhs.symmetric_difference(&rhs).next().copied();
                    report.fail("iii", g, Some(h), None, point, format!("alpha_g(D_g^-1 D_h) has support {lhs:?}, expected {rhs:?}"));
                }
            }
        }
        for g in g_.elements() {
            for h in g_.elements() {
                let gh = g_.mul(g, h);
                let carrier = &self.supports[g] & &self.supports[gh];
                let w = self.w(g, h);
                let Ok(w_inv) = r.invert(w, Some(&IdealHandle::new(carrier))) else {
                    report.fail("iv", g, Some(h), None, None, "w_{g,h} is not a unit of D_g D_gh");
                    continue;
                };
                let domain = &self.supports[g_.inv(h)] & &self.supports[g_.inv(gh)];
                for &x in &domain {
                    let a = r.point(x);
                    let inner = self.alpha(h, &a);
                    if !IdealHandle::new(self.supports[g_.inv(g)].clone()).contains(f, &inner) {
                        report.fail("iv", g, Some(h), None, Some(x), "alpha_h(a) leaves D_g^-1");
                        continue;
                    }
                    let lhs = self.alpha(g, &inner);
                    let rhs = self.mul(&self.mul(w, &self.alpha(gh, &a)), &w_inv);
                    if lhs != rhs {
                        report.fail("iv", g, Some(h), None, Some(x), "alpha_g alpha_h != w alpha_gh w^-1");
                    }
                }
            }
        }
        for g in g_.elements() {
            let unit = self.unit(g);
            if self.w(g, e) != &unit {
                report.fail("v", g, Some(e), None, None, "w_{g,e} != 1_g");
            }
            if self.w(e, g) != &unit {
                report.fail("v", e, Some(g), None, None, "w_{e,g} != 1_g");
            }
        }
        for g in g_.elements() {
            let ginv = g_.inv(g);
            for h in g_.elements() {
                let gh = g_.mul(g, h);
                for t in g_.elements() {
                    let ht = g_.mul(h, t);
                    let carrier = &(&self.supports[ginv] & &self.supports[h]) & &self.supports[ht];
                    for &x in &carrier {
                        let a = r.point(x);
                        let lhs = self.mul(&self.alpha(g, &self.mul(&a, self.w(h, t))), self.w(g, ht));
                        let rhs = self.mul(&self.mul(&self.alpha(g, &a), self.w(g, h)), self.w(gh, t));
                        if lhs != rhs {
                            report.fail(
                                "vi",
                                g,
                                Some(h),
                                Some(t),
                                Some(x),
                                format!("alpha_g(a w_h,t) w_g,ht = {:?} but alpha_g(a) w_g,h w_gh,t = {:?}", lhs.coeffs, rhs.coeffs),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// `D_g D_{gh} = D_h D_{hg}` and `w_{g,h} = w_{h,g}` for all pairs.
    pub fn is_symmetric(&self) -> bool {
        let g_ = &self.group;
        g_.elements().all(|g| {
            g_.elements().all(|h| {
                let a = &self.supports[g] & &self.supports[g_.mul(g, h)];
                let b = &self.supports[h] & &self.supports[g_.mul(h, g)];
                a == b && self.w(g, h) == self.w(h, g)
            })
        })
    }

    /// Every `α_g` is the identity of `D_g` (so in particular `S_g = S_{g⁻¹}`).
    pub fn all_alpha_identity(&self) -> bool {
        self.group.elements().all(|g| {
            self.sigmas[g].source() == self.supports[g] && self.sigmas[g].as_map().iter().all(|(x, y)| x == y)
        })
    }

    /// Basis of `R^α = {r : α_g(r 1_{g⁻¹}) = r 1_g for all g}` in RREF.
    pub fn invariants_subring(&self) -> Vec<RingElement<F>> {
        let n = self.size();
        let f = self.field();
        let columns: Vec<Vec<F::Elem>> = (0..n)
            .map(|x| {
                let r = self.ring.point(x);
                let mut col = Vec::with_capacity(self.group.order() * n);
                for g in self.group.elements() {
                    let lhs = self.alpha(g, &self.mul(&r, &self.unit(self.group.inv(g))));
                    let rhs = self.mul(&r, &self.unit(g));
                    col.extend(self.ring.sub(&lhs, &rhs).expect("same ring").coeffs);
                }
                col
            })
            .collect();
        let equations = transpose(f, &columns, self.group.order() * n);
        let kernel = nullspace(f, &equations, n);
        Subspace::span(f, n, kernel).basis().iter().map(|v| RingElement { coeffs: v.clone() }).collect()
    }

    /// `σ_g(S_I ∩ S_{g⁻¹}) ⊆ S_I ∩ S_g` for every g.
    pub fn is_invariant_ideal(&self, ideal: &IdealHandle) -> bool {
        self.group.elements().all(|g| {
            let dom = &ideal.support & &self.supports[self.group.inv(g)];
            let img = self.sigmas[g].target_of(&dom);
            img.is_subset(&(&ideal.support & &self.supports[g]))
        })
    }

    /// All invariant ideals, by support bitmask order.
    pub fn alpha_invariant_ideals(&self) -> Result<Vec<IdealHandle>> {
        let n = self.size();
        if n > MAX_SUBSET_POINTS {
            return Err(Error::capacity("invariant ideal enumeration", 1u128 << n.min(127), 1u128 << MAX_SUBSET_POINTS));
        }
        Ok(all_subsets(n).map(IdealHandle::new).filter(|i| self.is_invariant_ideal(i)).collect())
    }

    /// Smallest invariant support containing `x`.
    pub fn invariant_closure(&self, x: usize) -> PointSet {
        let mut closure = PointSet::from([x]);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for g in self.group.elements() {
                if let Some(z) = self.sigmas[g].point(y) {
                    if closure.insert(z) {
                        stack.push(z);
                    }
                }
            }
        }
        closure
    }

    /// The only invariant ideals are 0 and R.
    pub fn is_alpha_simple(&self) -> bool {
        let n = self.size();
        n > 0 && (0..n).all(|x| self.invariant_closure(x).len() == n)
    }

    /// A proper nonzero invariant ideal, smallest first point.
    pub fn proper_invariant_ideal(&self) -> Option<IdealHandle> {
        (0..self.size())
            .map(|x| self.invariant_closure(x))
            .find(|c| c.len() != self.size())
            .map(IdealHandle::new)
    }
}

impl PointIso {
    /// Image of the part of `set` inside the source.
    pub fn target_of(&self, set: &PointSet) -> PointSet {
        set.iter().filter_map(|&x| self.point(x)).collect()
    }
}

/// A twisted global action of `G` on `K^Y` by point permutations.
#[derive(Clone, Debug)]
pub struct GlobalTwistedAction<F: Field> {
    group: FiniteGroup,
    ring: SplitRing<F>,
    betas: Vec<Vec<usize>>,
    /// `u[g * |G| + h] = u_{g,h}`, a unit of `T`.
    u: Vec<RingElement<F>>,
}

impl<F: Field> GlobalTwistedAction<F> {
    /// `u` may be empty for the trivial cocycle.
    pub fn new(group: FiniteGroup, ring: SplitRing<F>, betas: Vec<Vec<usize>>, u: Vec<RingElement<F>>) -> Result<Self> {
        let order = group.order();
        if betas.len() != order {
            return Err(Error::SizeMismatch { left: order, right: betas.len() });
        }
        let u = if u.is_empty() { vec![ring.one(); order * order] } else { u };
        if u.len() != order * order {
            return Err(Error::SizeMismatch { left: order * order, right: u.len() });
        }
        for (g, b) in betas.iter().enumerate() {
            let img: PointSet = b.iter().copied().collect();
            if b.len() != ring.size() || img.len() != ring.size() || img.iter().any(|&y| y >= ring.size()) {
                return Err(Error::MalformedBijection { g, detail: "beta_g is not a permutation".into() });
            }
        }
        Ok(GlobalTwistedAction { group, ring, betas, u })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ring(&self) -> &SplitRing<F> {
        &self.ring
    }

    pub fn beta(&self, g: usize) -> &[usize] {
        &self.betas[g]
    }

    pub fn u(&self, g: usize, h: usize) -> &RingElement<F> {
        &self.u[g * self.group.order() + h]
    }

    fn apply(&self, g: usize, a: &RingElement<F>) -> RingElement<F> {
        let mut out = self.ring.zero();
        for (x, &y) in self.betas[g].iter().enumerate() {
            out.coeffs[y] = a.coeffs[x].clone();
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let g_ = &self.group;
        let r = &self.ring;
        let mut report = ValidationReport::new();
        let e = g_.identity();
        if self.betas[e].iter().enumerate().any(|(x, &y)| x != y) {
            report.fail("beta_e", e, None, None, None, "beta_e is not the identity");
        }
        for g in g_.elements() {
            for h in g_.elements() {
                let gh = g_.mul(g, h);
                if (0..r.size()).any(|x| self.betas[g][self.betas[h][x]] != self.betas[gh][x]) {
                    report.fail("beta", g, Some(h), None, None, "beta_g beta_h != beta_gh");
                }
                if !r.is_unit(self.u(g, h), None) {
                    report.fail("unit", g, Some(h), None, None, "u_{g,h} is not a unit");
                }
            }
            if self.u(g, e) != &r.one() || self.u(e, g) != &r.one() {
                report.fail("normalized", g, Some(e), None, None, "u_{g,e} or u_{e,g} differs from 1");
            }
        }
        for g in g_.elements() {
            for h in g_.elements() {
                let gh = g_.mul(g, h);
                for t in g_.elements() {
                    let lhs = r.mul(self.u(g, h), self.u(gh, t)).expect("same ring");
                    let rhs = r.mul(&self.apply(g, self.u(h, t)), self.u(g, g_.mul(h, t))).expect("same ring");
                    if lhs != rhs {
                        let point = (0..r.size()).find(|&x| lhs.coeffs[x] != rhs.coeffs[x]);
                        report.fail("cocycle", g, Some(h), Some(t), point, "u_g,h u_gh,t != beta_g(u_h,t) u_g,ht");
                    }
                }
            }
        }
        report
    }

    /// Restriction to `e_S T`; points of `S` are relabelled `0..|S|` in increasing
    /// order and the returned embedding maps them back.
    pub fn restrict(&self, subset: &PointSet) -> Result<(TwistedAction<F>, Vec<usize>)> {
        let report = self.validate();
        if !report.valid {
            return Err(Error::InvalidAction(Box::new(report)));
        }
        if let Some(&p) = subset.iter().find(|&&p| p >= self.ring.size()) {
            return Err(Error::PointOutOfRange { point: p, size: self.ring.size() });
        }
        let embed: Vec<usize> = subset.iter().copied().collect();
        let local: BTreeMap<usize, usize> = embed.iter().enumerate().map(|(i, &y)| (y, i)).collect();
        let g_ = &self.group;
        let t_ring = &self.ring;
        let e_s = t_ring.idempotent(subset);
        let beta_s: Vec<RingElement<F>> = g_.elements().map(|g| self.apply(g, &e_s)).collect();
        // S_g = S ∩ β_g(S), read off from 1_g = 1_R β_g(1_R)
        let supports_t: Vec<PointSet> =
            beta_s.iter().map(|b| t_ring.support(&t_ring.mul(&e_s, b).expect("same ring"))).collect();
        let supports: Vec<PointSet> = supports_t.iter().map(|s| s.iter().map(|y| local[y]).collect()).collect();
        let sigmas: Vec<BTreeMap<usize, usize>> = g_
            .elements()
            .map(|g| supports_t[g_.inv(g)].iter().map(|&y| (local[&y], local[&self.betas[g][y]])).collect())
            .collect();
        let mut cocycle = CocycleTable::new();
        for g in g_.elements() {
            for h in g_.elements() {
                // w_{g,h} = u_{g,h} 1_R β_g(1_R) β_{gh}(1_R)
                let gh = g_.mul(g, h);
                let w = [&e_s, &beta_s[g], &beta_s[gh]]
                    .into_iter()
                    .fold(self.u(g, h).clone(), |acc, x| t_ring.mul(&acc, x).expect("same ring"));
                let entries: BTreeMap<usize, F::Elem> =
                    t_ring.support(&w).into_iter().map(|y| (local[&y], w.coeffs[y].clone())).collect();
                cocycle.insert((g, h), entries);
            }
        }
        let action = TwistedAction::new(
            g_.clone(),
            SplitRing::new(t_ring.field().clone(), subset.len()),
            supports,
            sigmas,
            &cocycle,
        )?;
        let report = action.validate();
        if !report.valid {
            return Err(Error::InvalidAction(Box::new(report)));
        }
        Ok((action, embed))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub condition: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeReport {
    pub holds: bool,
    pub conditions: Vec<ConditionCheck>,
}

impl EnvelopeReport {
    pub fn condition(&self, name: &str) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| c.condition == name)
    }
}

/// Checks conditions (i')-(v') for `B` as an enveloping action of `A` along the
/// point embedding `phi: X → Y` (which induces `φ: K^X → K^Y`).
pub fn verify_ring_envelope<F: Field>(a: &TwistedAction<F>, b: &GlobalTwistedAction<F>, phi: &[usize]) -> EnvelopeReport {
    let g_ = a.group();
    let m = b.ring().size();
    let mut checks = Vec::new();
    let mut push = |name: &str, witness: Option<String>| {
        checks.push(ConditionCheck { condition: name.into(), holds: witness.is_none(), witness });
    };

    let image: PointSet = phi.iter().copied().collect();
    let injective = phi.len() == a.size() && image.len() == phi.len() && image.iter().all(|&y| y < m);
    push(
        "i'",
        (!injective).then(|| format!("embedding {phi:?} is not an injective map into {m} points")),
    );
    if !injective || g_.order() != b.group().order() {
        for name in ["ii'", "iii'", "iv'", "v'"] {
            push(name, Some("embedding unusable".into()));
        }
        return EnvelopeReport { holds: false, conditions: checks };
    }
    let beta_image = |g: usize| -> PointSet { image.iter().map(|&y| b.beta(g)[y]).collect() };

    let covered: PointSet = g_.elements().flat_map(beta_image).collect();
    push("ii'", (0..m).find(|y| !covered.contains(y)).map(|y| format!("point {y} is outside every beta_g(R)")));

    let mut bad = None;
    for g in g_.elements() {
        let lhs: PointSet = a.support(g).iter().map(|&x| phi[x]).collect();
        let rhs: PointSet = &image & &beta_image(g);
        if lhs != rhs {
            bad = Some(format!("g={g}: phi(D_g) has support {lhs:?}, R ∩ beta_g(R) has {rhs:?}"));
            break;
        }
    }
    push("iii'", bad);

    let mut bad = None;
    'iv: for g in g_.elements() {
        for (&x, &y) in a.sigma(g).as_map() {
            if phi[y] != b.beta(g)[phi[x]] {
                bad = Some(format!("g={g}, x={x}: phi(alpha_g(e_x)) != beta_g(phi(e_x))"));
                break 'iv;
            }
        }
    }
    push("iv'", bad);

    let mut bad = None;
    'v: for g in g_.elements() {
        for h in g_.elements() {
            let carrier = a.support(g) & a.support(g_.mul(g, h));
            for &x in &carrier {
                if a.w(g, h).coeffs[x] != b.u(g, h).coeffs[phi[x]] {
                    bad = Some(format!("g={g}, h={h}, x={x}: a w_g,h != a u_g,h"));
                    break 'v;
                }
            }
        }
    }
    push("v'", bad);

    let holds = checks.iter().all(|c| c.holds);
    EnvelopeReport { holds, conditions: checks }
}
