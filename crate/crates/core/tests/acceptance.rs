//! Acceptance suite. Prints one PASS/FAIL line per criterion:
//!
//! ```text
//! cargo test -p pcross-core --test acceptance -- --nocapture
//! ```
//!
//! The oracles here do not go through the library's structure algebra or
//! linear algebra. The product of two basis elements of `R *_w G` is a single
//! scaled basis element, so the whole algebra is rebuilt from the action data
//! as a monomial table and reduced mod p by hand.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;
use std::time::{Duration, Instant};

use pcross::crossed::CrossedProduct;
use pcross::dynamics::PartialSystem;
use pcross::generate::{self, RandomParams, DEFAULT_EXHAUSTIVE_CAP};
use pcross::linalg::Subspace;
use pcross::report::{analyze, to_json_string};
use pcross::simplicity::{decide_with, dynamics_simplicity_report, is_field, AlgebraFacts, DEFAULT_ORACLE_CAP};
use pcross::twisted::TwistedAction;
use pcross::{FieldDescriptor, GroupDescriptor, Instance, OracleConfig, PrimeField};
use rayon::prelude::*;

const FIXTURES: [&str; 7] = ["ex-a", "ex-b", "ex-c", "ex-d", "ex-e", "dyn-f", "dyn-h"];
/// Criteria that fail for mathematical reasons. The four-condition
/// commutativity statement needs `gh = hg` only where `D_g D_gh != 0`; the
/// corpus contains commutative algebras over S3 that refute the literal form.
const KNOWN_FAILURES: &[usize] = &[4];
/// Largest `p^d` the test-side oracle enumerates.
const TEST_ORACLE_CAP: u64 = 1 << 14;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// corpora

fn fixture(name: &str) -> Instance {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"));
    Instance::from_path(&path).unwrap()
}

fn prime(inst: &Instance) -> PrimeField {
    match inst.field {
        FieldDescriptor::Fp { p } => PrimeField::new(p).unwrap(),
        ref other => panic!("{} is over {other:?}", inst.name),
    }
}

fn action(inst: &Instance) -> TwistedAction<PrimeField> {
    inst.action(prime(inst)).unwrap()
}

fn groups(names: &[&str]) -> Vec<GroupDescriptor> {
    names.iter().map(|n| n.parse().unwrap()).collect()
}

fn exhaustive(names: &[&str], sizes: &[usize], p: u32) -> Vec<Instance> {
    generate::exhaustive(&groups(names), sizes, FieldDescriptor::Fp { p }, DEFAULT_EXHAUSTIVE_CAP).unwrap()
}

fn full_corpus() -> Vec<Instance> {
    generate::exhaustive(&generate::default_groups(), &[1, 2, 3], FieldDescriptor::Fp { p: 2 }, DEFAULT_EXHAUSTIVE_CAP)
        .unwrap()
}

fn random_twisted(p: u32, count: usize, seed: u64) -> Vec<Instance> {
    generate::random(&RandomParams {
        groups: generate::default_groups(),
        max_points: 3,
        field: FieldDescriptor::Fp { p },
        count,
        seed,
        twisted: true,
        ..Default::default()
    })
    .unwrap()
}

// ---------------------------------------------------------------------------
// test-side algebra over F_p

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a as u64 * b as u64) % p as u64 == 1).expect("nonzero residue")
}

/// Row-echelon basis of a subspace of F_p^n with normalized pivots.
#[derive(Clone)]
struct Echelon {
    p: u32,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    fn new(p: u32) -> Self {
        Echelon { p, rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        let p = self.p as u64;
        for (piv, row) in &self.rows {
            let c = v[*piv] as u64;
            if c != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = ((*a as u64 + (p - c) * *b as u64) % p) as u32;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<u32>) -> bool {
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|&c| c != 0) else { return false };
        let s = inv_mod(r[piv], self.p) as u64;
        for a in r.iter_mut() {
            *a = ((*a as u64 * s) % self.p as u64) as u32;
        }
        // keep earlier rows reduced against the new pivot
        let p = self.p as u64;
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv] as u64;
            if c != 0 {
                for (a, b) in row.iter_mut().zip(&r) {
                    *a = ((*a as u64 + (p - c) * *b as u64) % p) as u32;
                }
            }
        }
        self.rows.push((piv, r));
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn of(p: u32, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut e = Echelon::new(p);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    fn canonical(&self) -> Vec<Vec<u32>> {
        let mut rows: Vec<_> = self.rows.clone();
        rows.sort_by_key(|(piv, _)| *piv);
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

fn intersection_dim(p: u32, a: &[Vec<u32>], b: &[Vec<u32>]) -> usize {
    let ea = Echelon::of(p, a.iter().cloned()).dim();
    let eb = Echelon::of(p, b.iter().cloned()).dim();
    let sum = Echelon::of(p, a.iter().chain(b).cloned()).dim();
    ea + eb - sum
}

fn same_space(p: u32, a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    let da = Echelon::of(p, a.iter().cloned()).dim();
    da == Echelon::of(p, b.iter().cloned()).dim() && da == Echelon::of(p, a.iter().chain(b).cloned()).dim()
}

/// Null space of the matrix whose rows are `rows`, by Gauss-Jordan mod p.
fn nullspace(p: u32, rows: Vec<Vec<u32>>, ncols: usize) -> Vec<Vec<u32>> {
    let e = Echelon::of(p, rows);
    let pivots: BTreeSet<usize> = e.rows.iter().map(|(piv, _)| *piv).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u32; ncols];
            v[free] = 1;
            for (piv, row) in &e.rows {
                v[*piv] = (p - row[free]) % p;
            }
            v
        })
        .collect()
}

/// `(e_x δ_g)(e_y δ_h) = [σ_g(y) = x] w_{g,h}(x) e_x δ_{gh}`.
struct Table {
    p: u32,
    d: usize,
    basis: Vec<(usize, usize)>,
    prod: Vec<Option<(usize, u32)>>,
}

impl Table {
    fn build(a: &TwistedAction<PrimeField>) -> Table {
        let grp = a.group();
        let basis: Vec<(usize, usize)> = grp.elements().flat_map(|g| a.support(g).iter().map(move |&x| (g, x))).collect();
        let index: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let d = basis.len();
        let mut prod = vec![None; d * d];
        for (i, &(g, x)) in basis.iter().enumerate() {
            for (j, &(h, y)) in basis.iter().enumerate() {
                if a.sigma(g).point(y) == Some(x) {
                    let gh = grp.mul(g, h);
                    let k = *index.get(&(gh, x)).expect("product lands in S_gh");
                    prod[i * d + j] = Some((k, *a.w(g, h).get(x)));
                }
            }
        }
        Table { p: a.field().modulus(), d, basis, prod }
    }

    fn mul(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u64; self.d];
        for (i, &a) in u.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in v.iter().enumerate().filter(|(_, &b)| b != 0) {
                if let Some((k, c)) = self.prod[i * self.d + j] {
                    out[k] = (out[k] + a as u64 * b as u64 % p * c as u64) % p;
                }
            }
        }
        out.into_iter().map(|c| c as u32).collect()
    }

    fn unit(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.d];
        v[i] = 1;
        v
    }

    fn is_associative(&self) -> bool {
        let d = self.d;
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let (bi, bj, bk) = (self.unit(i), self.unit(j), self.unit(k));
                    self.mul(&self.mul(&bi, &bj), &bk) == self.mul(&bi, &self.mul(&bj, &bk))
                })
            })
        })
    }

    fn is_commutative(&self) -> bool {
        (0..self.d).all(|i| (0..i).all(|j| self.prod[i * self.d + j] == self.prod[j * self.d + i]))
    }

    /// `{z : z v = v z for every v in gens}`.
    fn commutant(&self, gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let d = self.d;
        let p = self.p;
        let mut rows = Vec::new();
        for v in gens {
            // column i holds b_i v - v b_i
            let cols: Vec<Vec<u32>> = (0..d)
                .map(|i| {
                    let l = self.mul(&self.unit(i), v);
                    let r = self.mul(v, &self.unit(i));
                    l.iter().zip(&r).map(|(a, b)| (a + p - b) % p).collect()
                })
                .collect();
            rows.extend((0..d).map(|k| cols.iter().map(|c| c[k]).collect::<Vec<u32>>()));
        }
        nullspace(p, rows, d)
    }

    fn ring_basis(&self) -> Vec<Vec<u32>> {
        // the identity of G has index 0 and comes first in the basis
        (0..self.d).filter(|&i| self.basis[i].0 == 0).map(|i| self.unit(i)).collect()
    }

    fn center(&self) -> Vec<Vec<u32>> {
        let all: Vec<Vec<u32>> = (0..self.d).map(|i| self.unit(i)).collect();
        self.commutant(&all)
    }

    /// Two-sided ideal generated by `z`: the span closed under multiplication
    /// by basis elements on both sides.
    fn ideal(&self, z: Vec<u32>) -> Echelon {
        let mut e = Echelon::new(self.p);
        if !e.insert(z.clone()) {
            return e;
        }
        let mut stack = vec![z];
        while let Some(v) = stack.pop() {
            for i in 0..self.d {
                let b = self.unit(i);
                for w in [self.mul(&b, &v), self.mul(&v, &b)] {
                    let r = e.reduce(w);
                    if r.iter().any(|&c| c != 0) {
                        e.insert(r.clone());
                        stack.push(r);
                    }
                }
            }
        }
        e
    }

    fn space_size(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.d as u32)
    }

    /// Every nonzero vector, `None` if the space is over the test cap.
    fn nonzero_vectors(&self, projective: bool) -> Option<Vec<Vec<u32>>> {
        let total = self.space_size().filter(|&t| t <= TEST_ORACLE_CAP)?;
        let mut out = Vec::new();
        for n in 1..total {
            let mut v = vec![0; self.d];
            let mut m = n;
            for c in v.iter_mut() {
                *c = (m % self.p as u64) as u32;
                m /= self.p as u64;
            }
            if !projective || v.iter().find(|&&c| c != 0) == Some(&1) {
                out.push(v);
            }
        }
        Some(out)
    }

    fn is_simple(&self) -> Option<bool> {
        if self.d == 0 {
            return Some(false);
        }
        let zs = self.nonzero_vectors(true)?;
        Some(zs.into_par_iter().all(|z| self.ideal(z).dim() == self.d))
    }
}

fn basis_of(s: &Subspace<PrimeField>) -> Vec<Vec<u32>> {
    s.basis().to_vec()
}

// ---------------------------------------------------------------------------
// test-side dynamics

fn orbit(sys: &PartialSystem, x: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([x]);
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in sys.group().elements() {
            if let Some(z) = sys.apply(g, y) {
                if seen.insert(z) {
                    stack.push(z);
                }
            }
        }
    }
    seen
}

fn orbit_count(sys: &PartialSystem) -> usize {
    let orbits: BTreeSet<BTreeSet<usize>> = (0..sys.size()).map(|x| orbit(sys, x)).collect();
    orbits.len()
}

fn only_trivial_invariant_subsets(sys: &PartialSystem) -> bool {
    let n = sys.size();
    (1u32..(1 << n) - 1).all(|mask| {
        let y: BTreeSet<usize> = (0..n).filter(|x| mask >> x & 1 == 1).collect();
        !y.iter().all(|&x| sys.group().elements().all(|g| sys.apply(g, x).is_none_or(|z| y.contains(&z))))
    })
}

fn top_free(sys: &PartialSystem) -> bool {
    let e = sys.group().identity();
    sys.group().elements().filter(|&g| g != e).all(|g| (0..sys.size()).all(|x| sys.apply(g, x) != Some(x)))
}

// ---------------------------------------------------------------------------
// criteria

fn associativity() -> Outcome {
    let start = Instant::now();
    let mut corpus: Vec<Instance> = FIXTURES.iter().map(|n| fixture(n)).collect();
    corpus.extend(random_twisted(2, 500, 11));
    corpus.extend(random_twisted(3, 500, 12));
    let twisted = corpus.iter().filter(|i| !i.cocycle.is_empty()).count();
    let bad: Vec<String> = corpus
        .par_iter()
        .filter_map(|inst| {
            let a = action(inst);
            let report = CrossedProduct::new(&a).verify_associativity();
            (!report.holds || !Table::build(&a).is_associative()).then(|| inst.name.clone())
        })
        .collect();
    ensure(bad.is_empty(), || format!("not associative: {bad:?}"))?;
    ensure(corpus.len() >= 1007, || "corpus too small".into())?;

    let mut broken = action(&fixture("ex-d"));
    broken.set_cocycle_value(2, 1, 0, 2).unwrap();
    let report = CrossedProduct::new(&broken).verify_associativity();
    let witness = report.witness.clone().ok_or("corrupted EX-D passed")?;
    ensure(!Table::build(&broken).is_associative(), || "test table accepts corrupted EX-D".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} instances ({twisted} with nontrivial cocycle), corrupted EX-D fails at {witness:?}, {:.1}s",
        corpus.len(),
        elapsed.as_secs_f64()
    ))
}

fn maximal_commutative_route() -> Outcome {
    let corpus = exhaustive(&["C2", "C3"], &[1, 2], 2);
    let mut checked = 0;
    for inst in &corpus {
        let a = action(inst);
        ensure(a.has_trivial_cocycle(), || format!("{} is twisted", inst.name))?;
        let cp = CrossedProduct::new(&a);
        let facts = AlgebraFacts::compute(&cp).map_err(|e| e.to_string())?;
        let t = Table::build(&a);
        let mc = t.commutant(&t.ring_basis()).len() == a.size();
        ensure(mc == facts.maximal_commutative, || format!("{}: maximal commutativity differs", inst.name))?;
        if mc {
            let simple = t.is_simple().ok_or_else(|| format!("{}: over the test cap", inst.name))?;
            ensure(simple == facts.alpha_simple, || {
                format!("{}: oracle {simple}, alpha-simple {}", inst.name, facts.alpha_simple)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{} instances, {checked} maximal commutative, 0 exceptions", corpus.len()))
}

fn abelian_center_field() -> Outcome {
    let mut corpus: Vec<Instance> = FIXTURES.iter().map(|n| fixture(n)).collect();
    corpus.extend(full_corpus());
    corpus.extend(random_twisted(3, 300, 21));
    corpus.extend(random_twisted(5, 100, 22));
    let results: Vec<Result<Option<bool>, String>> = corpus
        .par_iter()
        .map(|inst| {
            let a = action(inst);
            if !a.group().is_abelian() {
                return Ok(None);
            }
            let t = Table::build(&a);
            let Some(simple) = t.is_simple() else { return Ok(None) };
            let cp = CrossedProduct::new(&a);
            let facts = AlgebraFacts::compute(&cp).map_err(|e| format!("{}: {e}", inst.name))?;
            let z = facts.alg.subalgebra(&facts.center, "z").map_err(|e| e.to_string())?;
            let field = is_field(&z, DEFAULT_ORACLE_CAP).map_err(|e| format!("{}: {e}", inst.name))?.is_field;
            ensure(simple == (field && facts.alpha_simple), || {
                format!("{}: oracle {simple}, field {field}, alpha-simple {}", inst.name, facts.alpha_simple)
            })?;
            let verdict = decide_with(&cp, &facts, &OracleConfig::default()).map_err(|e| e.to_string())?;
            ensure(verdict.simple == simple, || format!("{}: engine says {}", inst.name, verdict.simple))?;
            Ok(Some(simple))
        })
        .collect();
    let mut checked = 0;
    let mut simple = 0;
    for r in results {
        if let Some(s) = r? {
            checked += 1;
            simple += s as usize;
        }
    }
    let probe = |name: &str| {
        let a = action(&fixture(name));
        let t = Table::build(&a);
        (t.is_simple().unwrap(), t.center().len())
    };
    ensure(probe("ex-c") == (false, 2), || format!("EX-C gives {:?}", probe("ex-c")))?;
    ensure(probe("ex-d") == (true, 1), || format!("EX-D gives {:?}", probe("ex-d")))?;
    Ok(format!("{checked} abelian instances ({simple} simple), EX-C not simple with 2-dim center, EX-D simple"))
}

fn commutativity() -> Outcome {
    let mut corpus: Vec<Instance> = FIXTURES.iter().map(|n| fixture(n)).collect();
    corpus.extend(full_corpus());
    corpus.extend(random_twisted(3, 500, 31));
    // (commutative, literal characterization agrees)
    let results: Vec<(bool, bool)> = corpus
        .par_iter()
        .map(|inst| {
            let a = action(inst);
            let grp = a.group();
            let direct = Table::build(&a).is_commutative();
            let local = a.is_symmetric() && a.all_alpha_identity();
            let literal = grp.is_abelian() && local;
            let on_support = grp.elements().all(|g| {
                grp.elements().all(|h| {
                    let gh = grp.mul(g, h);
                    gh == grp.mul(h, g) || a.support(g).is_disjoint(a.support(gh))
                })
            });
            // a mismatch here is a bug rather than a gap in the characterization
            assert_eq!(direct, on_support && local, "{}: support characterization", inst.name);
            let cp = CrossedProduct::new(&a);
            let check = cp.commutativity(&cp.structure_algebra()).unwrap_or_else(|e| panic!("{}: {e}", inst.name));
            assert_eq!(check.commutative, direct, "{}: library commutativity", inst.name);
            assert_eq!(check.characterization(), literal, "{}: library characterization", inst.name);
            (direct, literal == direct)
        })
        .collect();
    let (mut yes, mut exceptions) = (0, Vec::new());
    for (inst, r) in corpus.iter().zip(results) {
        let (c, agrees) = r;
        yes += c as usize;
        if !agrees {
            exceptions.push(inst.name.as_str());
        }
    }
    let summary = format!("{} instances, {yes} commutative", corpus.len());
    ensure(exceptions.is_empty(), || {
        format!(
            "{summary}; the four-condition form misses {} commutative instances over non-abelian groups \
             whose non-commuting pairs all have D_g D_gh = 0 (first {:?}); \
             requiring gh = hg only where D_g D_gh != 0 agrees everywhere",
            exceptions.len(),
            exceptions.first().unwrap()
        )
    })?;
    Ok(format!("{summary}, both directions agree"))
}

fn center_formula() -> Outcome {
    let mut corpus: Vec<Instance> = FIXTURES.iter().map(|n| fixture(n)).collect();
    corpus.extend(full_corpus());
    corpus.extend(random_twisted(3, 300, 41));
    let checked: Vec<Result<bool, String>> = corpus
        .par_iter()
        .map(|inst| {
            let a = action(inst);
            let t = Table::build(&a);
            if t.d > 10 {
                return Ok(false);
            }
            let cp = CrossedProduct::new(&a);
            let formula = basis_of(&cp.center_formula());
            ensure(same_space(t.p, &formula, &t.center()), || format!("{}: center differs", inst.name))?;
            Ok(true)
        })
        .collect();
    let mut n = 0;
    for c in checked {
        n += c? as usize;
    }
    for (name, dim) in [("ex-a", 1), ("ex-c", 2), ("ex-d", 1), ("ex-e", 1)] {
        let a = action(&fixture(name));
        let got = CrossedProduct::new(&a).center_formula().dim();
        ensure(got == dim && Table::build(&a).center().len() == dim, || format!("{name}: center dim {got}"))?;
    }
    Ok(format!("{n} instances with d <= 10, fixture dims A=1 C=2 D=1 E=1"))
}

fn ideals_meet_centralizer() -> Outcome {
    let mut corpus = full_corpus();
    corpus.extend(random_twisted(2, 200, 51));
    corpus.extend(FIXTURES.iter().filter_map(|n| fixture(n).with_field(FieldDescriptor::Fp { p: 2 }).ok()));
    // every nonzero ideal contains a principal one, so principal ideals suffice
    let results: Vec<Result<(usize, usize), String>> = corpus
        .par_iter()
        .map(|inst| {
            let a = action(inst);
            let t = Table::build(&a);
            if t.d > 8 {
                return Ok((0, 0));
            }
            let cp = CrossedProduct::new(&a);
            let facts = AlgebraFacts::compute(&cp).map_err(|e| format!("{}: {e}", inst.name))?;
            let centralizer = basis_of(&facts.centralizer);
            let center = basis_of(&facts.center);
            let with_center = facts.alpha_simple && a.group().is_abelian();
            let mut ideals = BTreeSet::new();
            for z in t.nonzero_vectors(false).expect("2^8 is under the cap") {
                let ideal = t.ideal(z).canonical();
                if !ideals.insert(ideal.clone()) {
                    continue;
                }
                ensure(intersection_dim(2, &ideal, &centralizer) > 0, || {
                    format!("{}: an ideal misses the centralizer", inst.name)
                })?;
                if with_center {
                    ensure(intersection_dim(2, &ideal, &center) > 0, || {
                        format!("{}: an ideal misses the center", inst.name)
                    })?;
                }
            }
            Ok((1, ideals.len()))
        })
        .collect();
    let (mut n, mut ideals) = (0, 0);
    for r in results {
        let (a, b) = r?;
        n += a;
        ideals += b;
    }
    Ok(format!("{n} instances over F_2 with d <= 8, {ideals} distinct principal ideals"))
}

fn dynamics_equivalences() -> Outcome {
    let mut n = 0;
    let mut minimal = 0;
    for desc in generate::default_groups() {
        let group = desc.build().unwrap();
        for size in 1..=3 {
            for sys in generate::exhaustive_systems(&group, size, DEFAULT_EXHAUSTIVE_CAP).unwrap() {
                let transitive = orbit(&sys, 0).len() == size;
                ensure(sys.is_transitive() == transitive && sys.transitivity_criterion() == transitive, || {
                    format!("transitivity differs on {} on {size} points", desc.short_name())
                })?;
                let trivial = only_trivial_invariant_subsets(&sys);
                ensure(sys.is_minimal() == trivial && sys.has_trivial_invariant_subsets().unwrap() == trivial, || {
                    format!("minimality differs on {} on {size} points", desc.short_name())
                })?;
                let tt = sys.transitivity_transfer().map_err(|e| e.to_string())?;
                ensure(tt.partial == transitive && tt.enveloping == transitive, || "transfer differs".into())?;
                ensure(tt.enveloping_orbits == orbit_count(&sys), || "envelope orbit count differs".into())?;
                n += 1;
                minimal += trivial as usize;
            }
        }
    }
    let env = fixture("ex-e").system().unwrap().globalize().unwrap();
    let b = &env.beta[1];
    let three_cycle = env.size == 3 && (0..3).all(|c| b[c] != c && b[b[b[c]]] == c);
    ensure(three_cycle, || format!("EX-E envelope has {} points, beta_1 = {b:?}", env.size))?;
    Ok(format!("{n} systems ({minimal} minimal), EX-E envelope is a 3-cycle on 3 points"))
}

fn commutant_theorem() -> Outcome {
    let corpus = full_corpus();
    let results: Vec<Result<bool, String>> = corpus
        .par_iter()
        .map(|inst| {
            let a = action(inst);
            let sys = inst.system().unwrap();
            let cp = CrossedProduct::new(&a);
            let alg = cp.structure_algebra();
            let cx = cp.commutant_cx();
            let centralizer = cp.centralizer(&alg).map_err(|e| format!("{}: {e}", inst.name))?;
            ensure(cx == centralizer, || format!("{}: commutant of C(X) differs from C(R)", inst.name))?;
            let t = Table::build(&a);
            ensure(same_space(2, &basis_of(&cx), &t.commutant(&t.ring_basis())), || {
                format!("{}: test-side commutant differs", inst.name)
            })?;
            let equal = cx == cp.ring_subspace();
            let free = top_free(&sys);
            ensure(equal == free, || format!("{}: C(X) = A is {equal}, topologically free is {free}", inst.name))?;
            Ok(free)
        })
        .collect();
    let mut free = 0;
    for r in results {
        free += r? as usize;
    }
    Ok(format!("{} lifted instances, {free} topologically free", corpus.len()))
}

fn dynamics_report() -> Outcome {
    let config = OracleConfig::default();
    let e = fixture("ex-e");
    let r = dynamics_simplicity_report(&e.system().unwrap(), prime(&e), &config).map_err(|e| e.to_string())?;
    ensure(r.condition_i && r.condition_ii && r.condition_iii, || "EX-E conditions not all true".into())?;
    let f = fixture("dyn-f");
    let r = dynamics_simplicity_report(&f.system().unwrap(), prime(&f), &config).map_err(|e| e.to_string())?;
    ensure(r.condition_i && !r.condition_ii && r.finite_gap, || "DYN-F does not show the gap".into())?;
    let dyn_f_simple = r.condition_iii;

    let corpus = full_corpus();
    let results: Vec<Result<(bool, bool), String>> = corpus
        .par_iter()
        .map(|inst| {
            let sys = inst.system().unwrap();
            let r = dynamics_simplicity_report(&sys, PrimeField::new(2).unwrap(), &config)
                .map_err(|e| format!("{}: {e}", inst.name))?;
            ensure(!(r.condition_ii && !r.condition_iii), || format!("{}: (ii) without (iii)", inst.name))?;
            ensure(!(r.condition_iii && !r.alpha_simple), || format!("{}: (iii) without alpha-simple", inst.name))?;
            let tested = match Table::build(&action(inst)).is_simple() {
                Some(s) => {
                    ensure(s == r.condition_iii, || format!("{}: test oracle says {s}", inst.name))?;
                    true
                }
                None => false,
            };
            Ok((r.finite_gap, tested))
        })
        .collect();
    let (mut gaps, mut tested) = (0, 0);
    for r in results {
        let (g, t) = r?;
        gaps += g as usize;
        tested += t as usize;
    }
    ensure(gaps > 0, || "no finite-space gap in the corpus".into())?;
    Ok(format!(
        "EX-E (i)(ii)(iii), DYN-F gap with (iii) {dyn_f_simple}, {} systems ({tested} against the test oracle, {gaps} gaps)",
        corpus.len()
    ))
}

fn determinism() -> Outcome {
    let render = || -> Vec<String> {
        FIXTURES
            .par_iter()
            .map(|n| {
                let r = analyze(&fixture(n), &OracleConfig::default()).unwrap();
                to_json_string(&r) + &r.to_text()
            })
            .collect()
    };
    let first = render();
    let second = render();
    ensure(first == second, || "analyze output differs between runs".into())?;
    Ok(format!("{} fixtures, byte-identical across runs", first.len()))
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: [Criterion; 10] = [
        ("associativity", associativity),
        ("maximal commutative route", maximal_commutative_route),
        ("abelian center-field route", abelian_center_field),
        ("commutativity characterization", commutativity),
        ("center formula", center_formula),
        ("ideals meet the centralizer", ideals_meet_centralizer),
        ("dynamics equivalences", dynamics_equivalences),
        ("commutant of C(X)", commutant_theorem),
        ("dynamics and simplicity", dynamics_report),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    let total = start.elapsed();
    println!("total {:.1}s", total.as_secs_f64());
    assert!(total < Duration::from_secs(300), "suite took {total:?}");
    assert_eq!(failed, KNOWN_FAILURES, "failed criteria differ from the known failures");
}
