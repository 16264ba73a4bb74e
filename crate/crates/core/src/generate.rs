//! Instance generators.
//!
//! Exhaustive mode lists every valid partial action of the given groups on a
//! few points with the trivial cocycle. Random mode restricts global actions
//! on coset spaces to random subsets, optionally twisted by a coboundary times
//! a bilinear sign, so every emitted instance is valid by construction (and is
//! re-validated anyway).

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{all_subsets, PartialSystem, PointSet};
use crate::error::{Error, Result};
use crate::field::{AnyField, Field, FieldDescriptor};
use crate::group::{FiniteGroup, GroupDescriptor};
use crate::instance::Instance;
use crate::ring::{RingElement, SplitRing};
use crate::twisted::GlobalTwistedAction;

/// Candidate bound for exhaustive enumeration.
pub const DEFAULT_EXHAUSTIVE_CAP: u128 = 1 << 22;

/// Groups used when none are requested.
pub fn default_groups() -> Vec<GroupDescriptor> {
    let mut out: Vec<GroupDescriptor> = (1..=6).map(GroupDescriptor::cyclic).collect();
    out.push(GroupDescriptor::product(vec![GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(2)]));
    out.push(GroupDescriptor::symmetric(3));
    out
}

fn group_name(desc: &GroupDescriptor) -> String {
    match desc {
        GroupDescriptor::Table { mul } if mul.len() == 6 => "S3".into(),
        GroupDescriptor::Table { mul } if mul.len() == 24 => "S4".into(),
        other => other.short_name(),
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every injective map between equal-sized subsets of `0..n`.
fn partial_bijections(n: usize) -> Vec<BTreeMap<usize, usize>> {
    let mut out = Vec::new();
    for a in all_subsets(n) {
        let src: Vec<usize> = a.iter().copied().collect();
        for b in all_subsets(n).filter(|b| b.len() == a.len()) {
            let tgt: Vec<usize> = b.iter().copied().collect();
            for p in permutations_of(&tgt) {
                out.push(src.iter().copied().zip(p).collect());
            }
        }
    }
    out
}

fn partial_involutions(n: usize) -> Vec<BTreeMap<usize, usize>> {
    partial_bijections(n)
        .into_iter()
        .filter(|m| m.keys().eq(m.values().copied().collect::<PointSet>().iter()) && m.iter().all(|(x, y)| m[y] == *x))
        .collect()
}

/// All valid partial actions of `group` on `n` points, in odometer order over
/// the choice for each inverse pair.
pub fn exhaustive_systems(group: &FiniteGroup, n: usize, cap: u128) -> Result<Vec<PartialSystem>> {
    let e = group.identity();
    // one representative per pair {g, g⁻¹}; involutions get involutive choices
    let reps: Vec<usize> = group.elements().filter(|&g| g != e && g <= group.inv(g)).collect();
    let bij = partial_bijections(n);
    let inv = partial_involutions(n);
    let choices: Vec<&Vec<BTreeMap<usize, usize>>> = reps.iter().map(|&g| if group.inv(g) == g { &inv } else { &bij }).collect();
    let total = choices.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::capacity("exhaustive partial action candidates", total, cap));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; reps.len()];
    loop {
        let mut maps = vec![BTreeMap::new(); group.order()];
        maps[e] = (0..n).map(|x| (x, x)).collect();
        for (k, &g) in reps.iter().enumerate() {
            let m = &choices[k][idx[k]];
            maps[group.inv(g)] = m.iter().map(|(&x, &y)| (y, x)).collect();
            maps[g] = m.clone();
        }
        // X_g is the image of α_g
        let domains: Vec<PointSet> = maps.iter().map(|m| m.values().copied().collect()).collect();
        if let Ok(sys) = PartialSystem::new(group.clone(), n, domains, maps) {
            if sys.validate().valid {
                out.push(sys);
            }
        }
        let mut pos = 0;
        while pos < idx.len() {
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == idx.len() {
            break;
        }
    }
    Ok(out)
}

/// Exhaustive corpus with trivial cocycle, named `<group>-n<size>-<k>`.
pub fn exhaustive(groups: &[GroupDescriptor], sizes: &[usize], field: FieldDescriptor, cap: u128) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for desc in groups {
        let group = desc.build()?;
        for &n in sizes {
            for (k, sys) in exhaustive_systems(&group, n, cap)?.into_iter().enumerate() {
                out.push(Instance {
                    name: format!("{}-n{n}-{k:04}", group_name(desc)),
                    field,
                    group_descriptor: desc.clone(),
                    group: group.clone(),
                    space: n,
                    domains: sys.domains().to_vec(),
                    maps: sys.maps().to_vec(),
                    supports: None,
                    sigmas: None,
                    cocycle: BTreeMap::new(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RandomParams {
    pub groups: Vec<GroupDescriptor>,
    /// Upper bound on `|X|` of the emitted partial action.
    pub max_points: usize,
    /// Upper bound on the size of the global space being restricted.
    pub max_global: usize,
    pub field: FieldDescriptor,
    pub count: usize,
    pub seed: u64,
    /// Emit nontrivial cocycles.
    pub twisted: bool,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            groups: default_groups(),
            max_points: 3,
            max_global: 8,
            field: FieldDescriptor::Fp { p: 3 },
            count: 10,
            seed: 0,
            twisted: false,
        }
    }
}

/// Left action of `G` on the cosets `xH`; cosets are numbered by smallest representative.
fn coset_action(group: &FiniteGroup, a: usize) -> Vec<Vec<usize>> {
    let h = group.cyclic_subgroup(a);
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut count = 0;
    for x in group.elements() {
        if coset_of[x] == usize::MAX {
            for &y in &h {
                coset_of[group.mul(x, y)] = count;
            }
            count += 1;
        }
    }
    let reps: Vec<usize> = (0..count).map(|c| coset_of.iter().position(|&k| k == c).expect("nonempty coset")).collect();
    group.elements().map(|g| reps.iter().map(|&x| coset_of[group.mul(g, x)]).collect()).collect()
}

/// Disjoint union of one to three coset spaces, within `max_global` points.
fn random_global_action(group: &FiniteGroup, max_global: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut betas: Vec<Vec<usize>> = vec![Vec::new(); group.order()];
    let orbits = rng.random_range(1..=3);
    for _ in 0..orbits {
        let a = rng.random_range(0..group.order());
        let orbit = coset_action(group, a);
        let offset = betas[0].len();
        if offset > 0 && offset + orbit[0].len() > max_global {
            continue;
        }
        for (g, perm) in orbit.into_iter().enumerate() {
            betas[g].extend(perm.into_iter().map(|y| y + offset));
        }
    }
    betas
}

/// Small nonzero scalars used for random units.
fn unit_pool<F: Field>(f: &F) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = [1, 2, -1, 3, -2].iter().map(|&v| f.from_i64(v)).filter(|c| !f.is_zero(c)).collect();
    out.sort();
    out.dedup();
    out
}

/// `u_{g,h} = f_g β_g(f_h) f_{gh}⁻¹`, times `(-1)^{c_i(g) c_j(h)}` when `sign` names two even cyclic factors.
fn random_cocycle<F: Field>(
    group: &FiniteGroup,
    ring: &SplitRing<F>,
    betas: &[Vec<usize>],
    sign: Option<(usize, usize)>,
    rng: &mut ChaCha8Rng,
) -> Vec<RingElement<F>> {
    let f = ring.field();
    let pool = unit_pool(f);
    let n = ring.size();
    let mut fs: Vec<RingElement<F>> = group
        .elements()
        .map(|_| RingElement { coeffs: (0..n).map(|_| pool.choose(rng).expect("nonempty pool").clone()).collect() })
        .collect();
    fs[group.identity()] = ring.one();
    let moved = |g: usize, a: &RingElement<F>| {
        let mut out = ring.zero();
        for (x, &y) in betas[g].iter().enumerate() {
            out.coeffs[y] = a.coeffs[x].clone();
        }
        out
    };
    let mut u = Vec::with_capacity(group.order() * group.order());
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            let inv = ring.invert(&fs[gh], None).expect("units");
            let mut w = ring.mul(&ring.mul(&fs[g], &moved(g, &fs[h])).expect("same ring"), &inv).expect("same ring");
            if let Some((i, j)) = sign {
                let (cg, ch) = (group.coordinates(g).expect("product"), group.coordinates(h).expect("product"));
                if cg[i] % 2 == 1 && ch[j] % 2 == 1 {
                    w = ring.scale(&f.neg(&f.one()), &w);
                }
            }
            u.push(w);
        }
    }
    u
}

fn random_one<F: Field>(field: F, desc: &GroupDescriptor, params: &RandomParams, name: String, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let group = desc.build()?;
    let betas = random_global_action(&group, params.max_global.max(1), rng);
    let size = betas[0].len();
    let ring = SplitRing::new(field, size);
    let u = if params.twisted {
        let even: Vec<usize> = group.cyclic_factors().map(|fs| (0..fs.len()).filter(|&i| fs[i] % 2 == 0).collect()).unwrap_or_default();
        let sign = (even.len() >= 2 && rng.random_bool(0.5)).then(|| (even[0], even[1]));
        random_cocycle(&group, &ring, &betas, sign, rng)
    } else {
        Vec::new()
    };
    let global = GlobalTwistedAction::new(group, ring, betas, u)?;
    let mut points: Vec<usize> = (0..size).collect();
    points.shuffle(rng);
    let k = rng.random_range(1..=params.max_points.clamp(1, size));
    let subset: PointSet = points[..k].iter().copied().collect();
    let (action, _) = global.restrict(&subset)?;
    Instance::from_action(name, desc.clone(), &action)
}

/// Deterministic stream of `count` valid instances for a seed.
pub fn random(params: &RandomParams) -> Result<Vec<Instance>> {
    if params.groups.is_empty() {
        return Err(Error::capacity("random generation with no groups", 1, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let field = params.field.build()?;
    (0..params.count)
        .map(|k| {
            let desc = params.groups.choose(&mut rng).expect("nonempty").clone();
            let name = format!("rand-{}-{}-{k:04}", params.seed, group_name(&desc));
            match &field {
                AnyField::Prime(f) => random_one(*f, &desc, params, name, &mut rng),
                AnyField::Rational(f) => random_one(*f, &desc, params, name, &mut rng),
            }
        })
        .collect()
}
