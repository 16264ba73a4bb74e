//! Finite discrete partial dynamical systems and their enveloping actions.
//!
//! Every subset of a finite Hausdorff space is open, so "open" and "closed"
//! are vacuous here, closures are identities and an empty interior means empty.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::validation::ValidationReport;

pub type PointSet = BTreeSet<usize>;

/// Largest space whose subsets are enumerated exhaustively.
pub const MAX_SUBSET_POINTS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSystem {
    group: FiniteGroup,
    size: usize,
    domains: Vec<PointSet>,
    maps: Vec<BTreeMap<usize, usize>>,
}

impl PartialSystem {
    /// Structural checks only; the axioms are checked by [`PartialSystem::validate`].
    ///
    /// `maps[g]` must be an injective map defined exactly on `domains[g⁻¹]`.
    pub fn new(
        group: FiniteGroup,
        size: usize,
        domains: Vec<PointSet>,
        maps: Vec<BTreeMap<usize, usize>>,
    ) -> Result<Self> {
        let order = group.order();
        if domains.len() != order || maps.len() != order {
            return Err(Error::SizeMismatch { left: order, right: domains.len().min(maps.len()) });
        }
        for dom in &domains {
            if let Some(&p) = dom.iter().find(|&&p| p >= size) {
                return Err(Error::PointOutOfRange { point: p, size });
            }
        }
        for (g, map) in maps.iter().enumerate() {
            let mut seen = PointSet::new();
            for (&x, &y) in map {
                if x >= size || y >= size {
                    return Err(Error::MalformedMap { g, detail: format!("{x} -> {y} leaves the space") });
                }
                if !seen.insert(y) {
                    return Err(Error::MalformedMap { g, detail: format!("point {y} is hit twice") });
                }
            }
            let keys: PointSet = map.keys().copied().collect();
            if keys != domains[group.inv(g)] {
                return Err(Error::DomainMismatch { g });
            }
        }
        Ok(PartialSystem { group, size, domains, maps })
    }

    /// A global action given by one permutation of the points per group element.
    pub fn global(group: FiniteGroup, size: usize, perms: &[Vec<usize>]) -> Result<Self> {
        let full: PointSet = (0..size).collect();
        let domains = vec![full; group.order()];
        let maps = perms.iter().map(|p| p.iter().copied().enumerate().collect()).collect();
        Self::new(group, size, domains, maps)
    }

    /// Every element acts as the identity on all of X.
    pub fn trivial(group: FiniteGroup, size: usize) -> Self {
        let id: Vec<usize> = (0..size).collect();
        let perms = vec![id; group.order()];
        Self::global(group, size, &perms).expect("identity maps are well formed")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self, g: usize) -> &PointSet {
        &self.domains[g]
    }

    pub fn domains(&self) -> &[PointSet] {
        &self.domains
    }

    pub fn map(&self, g: usize) -> &BTreeMap<usize, usize> {
        &self.maps[g]
    }

    pub fn maps(&self) -> &[BTreeMap<usize, usize>] {
        &self.maps
    }

    /// `α_g(x)` when `x ∈ X_{g⁻¹}`.
    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> Option<usize> {
        self.maps[g].get(&x).copied()
    }

    fn image(&self, g: usize, set: &PointSet) -> PointSet {
        set.iter().filter_map(|&x| self.apply(g, x)).collect()
    }

    /// Checks axioms (i)-(iii) pointwise. Axiom (iv) holds in the discrete
    /// topology and is recorded as vacuous.
    pub fn validate(&self) -> ValidationReport {
        let g = &self.group;
        let mut report = ValidationReport::new();
        report.vacuous.push("iv".into());
        let e = g.identity();
        if self.domains[e].len() != self.size {
            report.fail("i", e, None, None, None, "X_e is not all of X");
        }
        for (&x, &y) in &self.maps[e] {
            if x != y {
                report.fail("i", e, None, None, Some(x), format!("alpha_e moves {x} to {y}"));
            }
        }
        for t in g.elements() {
            let inv_t = g.inv(t);
            for s in g.elements() {
                let lhs: PointSet = self.image(t, &(&self.domains[inv_t] & &self.domains[s]));
                let rhs: PointSet = &self.domains[t] & &self.domains[g.mul(t, s)];
                if lhs != rhs {
                    let point = lhs.symmetric_difference(&rhs).next().copied();
                    report.fail(
                        "ii",
                        t,
                        Some(s),
                        None,
                        point,
                        format!("alpha_t(X_t^-1 ∩ X_s) = {lhs:?} but X_t ∩ X_ts = {rhs:?}"),
                    );
                }
            }
        }
        for t in g.elements() {
            for s in g.elements() {
                let ts = g.mul(t, s);
                for (&x, &y) in &self.maps[s] {
                    let Some(z) = self.apply(t, y) else { continue };
                    match self.apply(ts, x) {
                        Some(w) if w == z => {}
                        Some(w) => report.fail(
                            "iii",
                            t,
                            Some(s),
                            None,
                            Some(x),
                            format!("alpha_t(alpha_s(x)) = {z} but alpha_ts(x) = {w}"),
                        ),
                        None => report.fail(
                            "iii",
                            t,
                            Some(s),
                            None,
                            Some(x),
                            "alpha_ts is undefined at x",
                        ),
                    }
                }
            }
        }
        report
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x >= self.size {
            return Err(Error::PointOutOfRange { point: x, size: self.size });
        }
        Ok(())
    }

    /// `{α_t(x) : x ∈ X_{t⁻¹}}`.
    pub fn partial_orbit(&self, x: usize) -> Result<PointSet> {
        self.check_point(x)?;
        Ok(self.group.elements().filter_map(|t| self.apply(t, x)).collect())
    }

    fn orbit_unchecked(&self, x: usize) -> PointSet {
        self.group.elements().filter_map(|t| self.apply(t, x)).collect()
    }

    /// Some point has a dense (here: full) orbit.
    pub fn is_transitive(&self) -> bool {
        (0..self.size).any(|x| self.orbit_unchecked(x).len() == self.size)
    }

    /// For all nonempty open `U`, `V` some `α_g(U ∩ X_{g⁻¹})` meets `V`.
    /// Singletons are a sufficient family in the discrete topology.
    pub fn transitivity_criterion(&self) -> bool {
        (0..self.size).all(|u| {
            (0..self.size).all(|v| self.group.elements().any(|g| self.apply(g, u) == Some(v)))
        })
    }

    /// Every orbit is dense.
    pub fn is_minimal(&self) -> bool {
        (0..self.size).all(|x| self.orbit_unchecked(x).len() == self.size)
    }

    /// `α_g(Y ∩ X_{g⁻¹}) = Y ∩ X_g` for every g.
    pub fn is_invariant_subset(&self, y: &PointSet) -> bool {
        self.group.elements().all(|g| {
            let dom = &self.domains[self.group.inv(g)];
            self.image(g, &(y & dom)) == (y & &self.domains[g])
        })
    }

    /// All invariant subsets in bitmask order.
    pub fn invariant_subsets(&self) -> Result<Vec<PointSet>> {
        if self.size > MAX_SUBSET_POINTS {
            return Err(Error::capacity(
                "invariant subset enumeration",
                1u128 << self.size.min(127),
                1u128 << MAX_SUBSET_POINTS,
            ));
        }
        Ok(all_subsets(self.size).filter(|y| self.is_invariant_subset(y)).collect())
    }

    /// No invariant subsets besides ∅ and X.
    pub fn has_trivial_invariant_subsets(&self) -> Result<bool> {
        Ok(self.invariant_subsets()?.len() == if self.size == 0 { 1 } else { 2 })
    }

    /// `θ_g = {x ∈ X_{g⁻¹} : α_g(x) = x}`.
    pub fn fixed_set(&self, g: usize) -> PointSet {
        self.maps[g].iter().filter(|(x, y)| x == y).map(|(&x, _)| x).collect()
    }

    /// Every `θ_g` with `g ≠ e` is empty.
    pub fn is_topologically_free(&self) -> bool {
        self.group.elements().skip(1).all(|g| self.fixed_set(g).is_empty())
    }

    pub fn periodic_points(&self) -> PointSet {
        self.group.elements().skip(1).flat_map(|g| self.fixed_set(g)).collect()
    }

    /// Quotient of `G × X` by `(t,x) ~ (s,y) ⇔ x ∈ X_{t⁻¹s}, α_{s⁻¹t}(x) = y`.
    pub fn globalize(&self) -> Result<EnvelopingSystem> {
        let report = self.validate();
        if !report.valid {
            return Err(Error::InvalidSystem(Box::new(report)));
        }
        let g = &self.group;
        let n = self.size;
        let order = g.order();
        let idx = |t: usize, x: usize| t * n + x;
        let mut uf = UnionFind::new(order * n);
        for t in g.elements() {
            // k = t⁻¹s runs over G; x ∈ X_k and y = α_{k⁻¹}(x)
            for k in g.elements() {
                let s = g.mul(t, k);
                let kinv = g.inv(k);
                for &x in &self.domains[k] {
                    let y = self.apply(kinv, x).expect("domain of alpha_k^-1 is X_k");
                    uf.union(idx(t, x), idx(s, y));
                }
            }
        }
        // Canonical class ids: order of the smallest representative.
        let mut class_of_root = BTreeMap::new();
        let mut classes = vec![vec![0usize; n]; order];
        for t in g.elements() {
            for x in 0..n {
                let root = uf.find(idx(t, x));
                let next = class_of_root.len();
                classes[t][x] = *class_of_root.entry(root).or_insert(next);
            }
        }
        let count = class_of_root.len();
        let mut invalid = ValidationReport::new();
        // The closure must not relate more pairs than the pairwise rule does.
        for t in g.elements() {
            for x in 0..n {
                for s in g.elements() {
                    for y in 0..n {
                        if classes[t][x] != classes[s][y] {
                            continue;
                        }
                        let k = g.mul(g.inv(s), t);
                        if self.apply(k, x) != Some(y) {
                            invalid.fail(
                                "equivalence",
                                t,
                                Some(s),
                                None,
                                Some(x),
                                format!("({t},{x}) and ({s},{y}) are identified by closure only"),
                            );
                        }
                    }
                }
            }
        }
        if !invalid.valid {
            return Err(Error::InvalidSystem(Box::new(invalid)));
        }
        let mut beta = vec![vec![usize::MAX; count]; order];
        for a in g.elements() {
            for t in g.elements() {
                for x in 0..n {
                    let from = classes[t][x];
                    let to = classes[g.mul(a, t)][x];
                    if beta[a][from] != usize::MAX && beta[a][from] != to {
                        invalid.fail("beta", a, None, Some(t), Some(x), "beta is not well defined");
                    }
                    beta[a][from] = to;
                }
            }
        }
        let embed: Vec<usize> = (0..n).map(|x| classes[g.identity()][x]).collect();
        let env = EnvelopingSystem { size: count, beta, embed, classes };
        env.check_against(self, &mut invalid);
        if !invalid.valid {
            return Err(Error::InvalidSystem(Box::new(invalid)));
        }
        Ok(env)
    }

    /// Transitivity of the partial system against that of its envelope.
    pub fn transitivity_transfer(&self) -> Result<TransitivityTransfer> {
        let env = self.globalize()?;
        let partial = self.is_transitive();
        let enveloping = env.is_transitive();
        let witness = (0..self.size).find(|&x| self.orbit_unchecked(x).len() != self.size);
        if partial != enveloping {
            return Err(Error::disagreement(
                "transitivity transfer",
                format!("partial system transitive = {partial}, envelope transitive = {enveloping}"),
            ));
        }
        Ok(TransitivityTransfer {
            partial,
            enveloping,
            non_dense_point: witness,
            enveloping_orbits: env.orbits().len(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityTransfer {
    pub partial: bool,
    pub enveloping: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_dense_point: Option<usize>,
    pub enveloping_orbits: usize,
}

/// The global action `β` on `Xe = (G × X)/~`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopingSystem {
    pub size: usize,
    /// `beta[g][c]` is the class `β_g(c)`.
    pub beta: Vec<Vec<usize>>,
    /// `embed[x] = [e, x]`.
    pub embed: Vec<usize>,
    /// `classes[t][x] = [t, x]`.
    pub classes: Vec<Vec<usize>>,
}

impl EnvelopingSystem {
    fn check_against(&self, p: &PartialSystem, report: &mut ValidationReport) {
        let g = p.group();
        let id: Vec<usize> = (0..self.size).collect();
        if self.beta[g.identity()] != id {
            report.fail("beta", g.identity(), None, None, None, "beta_e is not the identity");
        }
        for a in g.elements() {
            let img: PointSet = self.beta[a].iter().copied().collect();
            if img.len() != self.size {
                report.fail("beta", a, None, None, None, "beta_g is not a bijection");
            }
            for b in g.elements() {
                let ab = g.mul(a, b);
                if (0..self.size).any(|c| self.beta[a][self.beta[b][c]] != self.beta[ab][c]) {
                    report.fail("beta", a, Some(b), None, None, "beta_g beta_h != beta_gh");
                }
            }
            for (&x, &y) in p.map(a) {
                if self.embed[y] != self.beta[a][self.embed[x]] {
                    report.fail("embed", a, None, None, Some(x), "i(alpha_g(x)) != beta_g(i(x))");
                }
            }
        }
        let distinct: PointSet = self.embed.iter().copied().collect();
        if distinct.len() != self.embed.len() {
            report.fail("embed", g.identity(), None, None, None, "embedding is not injective");
        }
        let covered: PointSet =
            g.elements().flat_map(|a| self.embed.iter().map(move |&c| self.beta[a][c])).collect();
        if covered.len() != self.size {
            report.fail("embed", g.identity(), None, None, None, "Xe is not the union of beta_g(X)");
        }
        if self.size > g.order() * p.size() {
            report.fail("embed", g.identity(), None, None, None, "too many classes");
        }
    }

    /// β-orbits as sorted class lists, ordered by smallest member.
    pub fn orbits(&self) -> Vec<PointSet> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for c in 0..self.size {
            if seen[c] {
                continue;
            }
            let orbit: PointSet = self.beta.iter().map(|b| b[c]).collect();
            for &d in &orbit {
                seen[d] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.size == 0 || self.orbits().len() == 1
    }
}

/// Subsets of `{0..n}` in bitmask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = PointSet> {
    (0u64..1u64 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so the representative is the least pair
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
