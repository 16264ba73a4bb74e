//! Simplicity decisions for `R *_w G`.
//!
//! Structural routes decide from maximal commutativity, the center and the
//! centralizer of `R`; the brute-force oracle enumerates ideal closures over
//! a finite base field. Both run whenever the oracle is affordable and any
//! disagreement is an error.

use std::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{transpose, StructureAlgebra};
use crate::crossed::CrossedProduct;
use crate::dynamics::PartialSystem;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{nullspace, rank, Subspace, Vector};
use crate::poly::Poly;
use crate::twisted::TwistedAction;

pub const DEFAULT_ORACLE_CAP: u128 = 1 << 20;

/// Random samples tried by the partial oracle once the cap is exceeded.
const PARTIAL_SAMPLES: usize = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Run the full oracle when `p^d` fits under the cap.
    #[default]
    Auto,
    /// Always run; sample when over the cap.
    Force,
    Off,
}

impl FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(OracleMode::Auto),
            "force" => Ok(OracleMode::Force),
            "off" => Ok(OracleMode::Off),
            other => Err(Error::Parse {
                field: Some("oracle".into()),
                line: 0,
                column: 0,
                message: format!("expected auto, force or off, found `{other}`"),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub mode: OracleMode,
    pub cap: u128,
    /// Seed for the sampled partial oracle.
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { mode: OracleMode::Auto, cap: DEFAULT_ORACLE_CAP, seed: 0 }
    }
}

/// Smallest two-sided ideal containing `z`.
pub fn ideal_closure<F: Field>(alg: &StructureAlgebra<F>, z: &[F::Elem]) -> Subspace<F> {
    closure_until(alg, z, alg.dim() + 1)
}

/// Ideal closure that stops as soon as the dimension reaches `stop`.
fn closure_until<F: Field>(alg: &StructureAlgebra<F>, z: &[F::Elem], stop: usize) -> Subspace<F> {
    let f = alg.field();
    let d = alg.dim();
    let mut ideal = Subspace::zero(f, d);
    let mut queue = vec![z.to_vec()];
    while let Some(v) = queue.pop() {
        if !ideal.insert(v.clone()) {
            continue;
        }
        if ideal.dim() >= stop {
            break;
        }
        for i in 0..d {
            queue.push(alg.left_basis_mul(i, &v));
            queue.push(alg.right_basis_mul(&v, i));
        }
    }
    ideal
}

fn generates_everything<F: Field>(alg: &StructureAlgebra<F>, z: &[F::Elem]) -> bool {
    closure_until(alg, z, alg.dim()).dim() == alg.dim()
}

/// `p^d`, or `None` over an infinite field or on overflow.
pub fn space_size<F: Field>(field: &F, dim: usize) -> Option<u128> {
    let q = field.size()? as u128;
    q.checked_pow(u32::try_from(dim).ok()?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict<E> {
    pub simple: bool,
    /// False when only a sample of the space was examined.
    pub complete: bool,
    pub checked: u128,
    /// First element whose closure is a proper ideal.
    pub witness: Option<Vec<E>>,
}

/// Brute-force simplicity: every nonzero element must generate the whole algebra.
///
/// Enumerates one representative per line (leading coordinate 1) ordered by
/// leading position, then by the remaining coordinates in base-p order. Over
/// the cap, `strict` fails and otherwise a flagged sample is examined.
pub fn is_simple_oracle<F: Field>(alg: &StructureAlgebra<F>, cap: u128, strict: bool, seed: u64) -> Result<OracleVerdict<F::Elem>> {
    let f = alg.field();
    let elems = f.elements().ok_or_else(|| Error::InvalidField("the simplicity oracle needs a finite field".into()))?;
    let d = alg.dim();
    if d == 0 {
        return Ok(OracleVerdict { simple: false, complete: true, checked: 0, witness: None });
    }
    let p = elems.len() as u64;
    match space_size(f, d) {
        Some(total) if total <= cap => {
            // block l holds vectors with zeros before l and 1 at l
            let blocks: Vec<u64> = (0..d).map(|l| p.pow((d - 1 - l) as u32)).collect();
            let count: u64 = blocks.iter().sum();
            let decode = |mut k: u64| -> Vector<F> {
                let mut l = 0;
                while k >= blocks[l] {
                    k -= blocks[l];
                    l += 1;
                }
                let mut v = vec![f.zero(); d];
                v[l] = f.one();
                for slot in v[l + 1..].iter_mut().rev() {
                    *slot = elems[(k % p) as usize].clone();
                    k /= p;
                }
                v
            };
            let witness = (0..count).into_par_iter().find_map_first(|k| {
                let v = decode(k);
                (!generates_everything(alg, &v)).then_some(v)
            });
            Ok(OracleVerdict { simple: witness.is_none(), complete: true, checked: count as u128, witness })
        }
        total => {
            let total = total.unwrap_or(u128::MAX);
            if strict {
                return Err(Error::capacity("simplicity oracle enumeration", total, cap));
            }
            let mut candidates: Vec<Vector<F>> = (0..d).map(|i| alg.basis_vector(i)).collect();
            for i in 0..d {
                for j in i + 1..d {
                    let mut v = alg.basis_vector(i);
                    v[j] = f.one();
                    candidates.push(v);
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..PARTIAL_SAMPLES {
                candidates.push((0..d).map(|_| elems[rng.random_range(0..elems.len())].clone()).collect());
            }
            candidates.retain(|v| !alg.is_zero(v));
            let checked = candidates.len() as u128;
            let witness = candidates.into_par_iter().find_map_first(|v| (!generates_everything(alg, &v)).then_some(v));
            Ok(OracleVerdict { simple: witness.is_none(), complete: false, checked, witness })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `e_Y δ_e` for a proper invariant support `Y`.
    InvariantIdeal,
    CentralIdempotent,
    CentralNilpotent,
    /// First element found by the oracle with a proper closure.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTest<E> {
    pub is_field: bool,
    /// Nilpotent or idempotent in the coordinates of the tested algebra.
    pub witness: Option<(WitnessKind, Vec<E>)>,
}

/// Whether a commutative unital algebra is a field.
///
/// Over F_p the Frobenius map decides: its kernel is zero exactly for reduced
/// algebras, and then its fixed space counts the simple factors. Over Q the
/// trace form detects nilpotents and a primitive element reduces the question
/// to irreducibility of its minimal polynomial. When `p^d` fits under `cap`
/// the F_p answer is cross-checked by testing every nonzero element for
/// invertibility.
pub fn is_field<F: Field>(alg: &StructureAlgebra<F>, cap: u128) -> Result<FieldTest<F::Elem>> {
    if !alg.is_commutative() {
        return Err(Error::disagreement("field test", "input algebra is not commutative"));
    }
    let d = alg.dim();
    if d == 0 {
        return Ok(FieldTest { is_field: false, witness: None });
    }
    let one = alg
        .identity()
        .ok_or_else(|| Error::disagreement("field test", "commutative algebra without a unit"))?;
    let test = if alg.field().characteristic() > 0 {
        field_test_fp(alg, &one)?
    } else {
        field_test_q(alg, &one, cap)?
    };
    if let Some((kind, w)) = &test.witness {
        let ok = match kind {
            WitnessKind::CentralNilpotent => !alg.is_zero(w) && power(alg, &one, w, d as u64 + 1).iter().all(|c| alg.field().is_zero(c)),
            _ => &alg.mul(w, w) == w && !alg.is_zero(w) && *w != one,
        };
        if !ok {
            return Err(Error::disagreement("field test", format!("{kind:?} witness fails its defining equation")));
        }
    }
    if alg.field().size().is_some() && space_size(alg.field(), d).is_some_and(|t| t <= cap) {
        let by_units = every_nonzero_invertible(alg)?;
        if by_units != test.is_field {
            return Err(Error::disagreement(
                "field test",
                format!("Frobenius test says {}, unit enumeration says {by_units}", test.is_field),
            ));
        }
    }
    Ok(test)
}

fn power<F: Field>(alg: &StructureAlgebra<F>, one: &[F::Elem], z: &[F::Elem], mut e: u64) -> Vector<F> {
    let mut acc = one.to_vec();
    let mut base = z.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = alg.mul(&acc, &base);
        }
        base = alg.mul(&base, &base);
        e >>= 1;
    }
    acc
}

/// Matrix of `v ↦ z v` as rows.
fn left_mult_matrix<F: Field>(alg: &StructureAlgebra<F>, z: &[F::Elem]) -> Vec<Vector<F>> {
    let d = alg.dim();
    let columns: Vec<Vector<F>> = (0..d).map(|j| alg.mul(z, &alg.basis_vector(j))).collect();
    (0..d).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()
}

fn every_nonzero_invertible<F: Field>(alg: &StructureAlgebra<F>) -> Result<bool> {
    let f = alg.field();
    let elems = f.elements().expect("finite field");
    let d = alg.dim();
    let p = elems.len() as u64;
    let total = p.pow(d as u32);
    // scalars preserve invertibility, so nonzero scalings are skipped by starting at 1
    let bad = (1..total).into_par_iter().find_any(|&k| {
        let mut k = k;
        let v: Vector<F> = (0..d)
            .map(|_| {
                let c = elems[(k % p) as usize].clone();
                k /= p;
                c
            })
            .collect();
        rank(f, &left_mult_matrix(alg, &v), d) < d
    });
    Ok(bad.is_none())
}

fn kernel_of<F: Field>(f: &F, columns: &[Vector<F>], d: usize) -> Subspace<F> {
    Subspace::span(f, d, nullspace(f, &transpose(f, columns, d), d))
}

fn field_test_fp<F: Field>(alg: &StructureAlgebra<F>, one: &[F::Elem]) -> Result<FieldTest<F::Elem>> {
    let f = alg.field();
    let d = alg.dim();
    let p = f.characteristic();
    let frob: Vec<Vector<F>> = (0..d).map(|i| power(alg, one, &alg.basis_vector(i), p)).collect();
    let nil = kernel_of(f, &frob, d);
    if let Some(z) = nil.basis().first() {
        return Ok(FieldTest { is_field: false, witness: Some((WitnessKind::CentralNilpotent, z.clone())) });
    }
    let shifted: Vec<Vector<F>> = frob
        .iter()
        .enumerate()
        .map(|(i, col)| col.iter().enumerate().map(|(k, c)| if k == i { f.sub(c, &f.one()) } else { c.clone() }).collect())
        .collect();
    let fixed = kernel_of(f, &shifted, d);
    if fixed.dim() == 1 {
        return Ok(FieldTest { is_field: true, witness: None });
    }
    // z has F_p-valued coordinates in each factor and is not constant; (z - c)^(p-1)
    // is the indicator of the factors where z differs from c
    let scalars = Subspace::span(f, d, [one.to_vec()]);
    let z = fixed.basis().iter().find(|v| !scalars.contains(v)).expect("fixed space larger than the scalars");
    for c in f.elements().into_iter().flatten() {
        let shifted: Vector<F> = z.iter().zip(one).map(|(a, u)| f.sub(a, &f.mul(&c, u))).collect();
        let e = power(alg, one, &shifted, p - 1);
        if !alg.is_zero(&e) && e != one {
            return Ok(FieldTest { is_field: false, witness: Some((WitnessKind::CentralIdempotent, e)) });
        }
    }
    Err(Error::disagreement("field test", "no idempotent found in a split fixed space"))
}

fn field_test_q<F: Field>(alg: &StructureAlgebra<F>, one: &[F::Elem], cap: u128) -> Result<FieldTest<F::Elem>> {
    let f = alg.field();
    let d = alg.dim();
    let trace = |v: &[F::Elem]| -> F::Elem {
        let m = left_mult_matrix(alg, v);
        (0..d).fold(f.zero(), |acc, i| f.add(&acc, &m[i][i]))
    };
    let gram: Vec<Vector<F>> = (0..d)
        .map(|i| (0..d).map(|j| trace(&alg.mul(&alg.basis_vector(i), &alg.basis_vector(j)))).collect())
        .collect();
    if let Some(z) = nullspace(f, &gram, d).into_iter().next() {
        return Ok(FieldTest { is_field: false, witness: Some((WitnessKind::CentralNilpotent, z)) });
    }
    if d == 1 {
        return Ok(FieldTest { is_field: true, witness: None });
    }
    // a reduced algebra is generated by z_c = Σ c^i b_i for all but finitely many c
    let tries = (d * d * d + 1) as i64;
    for c in 1..=tries {
        let z: Vector<F> = (0..d).map(|i| f.pow(&f.from_i64(c), i as u64)).collect();
        let minpoly = minimal_polynomial(alg, one, &z);
        if minpoly.degree() != Some(d) {
            continue;
        }
        return match minpoly.find_factor(cap)? {
            None => Ok(FieldTest { is_field: true, witness: None }),
            Some(g) => {
                let (h, r) = minpoly.div_rem(&g);
                debug_assert!(r.is_zero());
                let (_, s, _) = Poly::ext_gcd(&g, &h);
                let e = eval_poly(alg, one, &z, &s.mul(&g))?;
                Ok(FieldTest { is_field: false, witness: Some((WitnessKind::CentralIdempotent, e)) })
            }
        };
    }
    Err(Error::capacity("primitive element search in the field test", tries as u128 + 1, tries as u128))
}

/// Monic minimal polynomial of `z` from the first linear dependency among its powers.
fn minimal_polynomial<F: Field>(alg: &StructureAlgebra<F>, one: &[F::Elem], z: &[F::Elem]) -> Poly {
    let f = alg.field();
    let d = alg.dim();
    let mut powers: Vec<Vector<F>> = vec![one.to_vec()];
    loop {
        let next = alg.mul(powers.last().expect("nonempty"), z);
        let k = powers.len();
        // solve Σ a_i z^i = z^k
        let rows: Vec<Vector<F>> = (0..d).map(|r| powers.iter().map(|v| v[r].clone()).collect()).collect();
        if let Some(a) = crate::linalg::solve(f, &rows, &next, k) {
            let mut coeffs: Vec<BigRational> = a.iter().map(|c| -f.to_rational(c)).collect();
            coeffs.push(BigRational::from_integer(1.into()));
            return Poly::new(coeffs);
        }
        powers.push(next);
    }
}

fn eval_poly<F: Field>(alg: &StructureAlgebra<F>, one: &[F::Elem], z: &[F::Elem], p: &Poly) -> Result<Vector<F>> {
    let f = alg.field();
    let mut acc = alg.zero();
    for c in p.0.iter().rev() {
        let c = f.from_rational(c)?;
        acc = alg.mul(&acc, z);
        acc = acc.iter().zip(one).map(|(a, u)| f.add(a, &f.mul(&c, u))).collect();
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// `R` is maximal commutative: simple iff alpha-simple.
    MaximalCommutative,
    /// `G` abelian: simple iff the center is a field and `R` is alpha-simple.
    AbelianCenterField,
    /// The centralizer of `R` is simple: simple iff alpha-simple.
    CentralizerSimple,
    OracleOnly,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::MaximalCommutative => "maximal-commutative",
            Route::AbelianCenterField => "abelian-center-field",
            Route::CentralizerSimple => "centralizer-simple",
            Route::OracleOnly => "oracle-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityWitness {
    pub kind: WitnessKind,
    /// Coordinates in the crossed-product basis.
    pub element: Vec<Value>,
    /// Dimension of the ideal it generates.
    pub ideal_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub simple: bool,
    pub complete: bool,
    pub checked: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub route: Route,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SimplicityWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    /// Field test on the center, evaluated whenever `G` is abelian.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_is_field: Option<bool>,
    /// Oracle verdict on the centralizer subalgebra, when it was needed and affordable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centralizer_simple: Option<bool>,
}

/// Everything the routes need, computed once per action.
pub struct AlgebraFacts<F: Field> {
    pub alg: StructureAlgebra<F>,
    pub centralizer: Subspace<F>,
    pub center: Subspace<F>,
    pub maximal_commutative: bool,
    pub alpha_simple: bool,
}

impl<F: Field> AlgebraFacts<F> {
    pub fn compute(cp: &CrossedProduct<'_, F>) -> Result<Self> {
        let alg = cp.structure_algebra();
        let centralizer = cp.centralizer(&alg)?;
        let center = cp.center(&alg)?;
        let maximal_commutative = cp.is_maximal_commutative(&centralizer);
        let alpha_simple = cp.action().is_alpha_simple();
        Ok(AlgebraFacts { alg, centralizer, center, maximal_commutative, alpha_simple })
    }
}

fn oracle_affordable<F: Field>(field: &F, dim: usize, cap: u128) -> bool {
    space_size(field, dim).is_some_and(|t| t <= cap)
}

pub fn decide_simplicity<F: Field>(action: &TwistedAction<F>, config: &OracleConfig) -> Result<SimplicityVerdict> {
    let cp = CrossedProduct::new(action);
    let facts = AlgebraFacts::compute(&cp)?;
    decide_with(&cp, &facts, config)
}

pub fn decide_with<F: Field>(cp: &CrossedProduct<'_, F>, facts: &AlgebraFacts<F>, config: &OracleConfig) -> Result<SimplicityVerdict> {
    let action = cp.action();
    let alg = &facts.alg;
    let f = alg.field();
    let d = alg.dim();
    let finite = f.size().is_some();
    if config.mode == OracleMode::Force && !finite {
        return Err(Error::InvalidField("the oracle cannot be forced over an infinite field".into()));
    }

    let oracle = match config.mode {
        OracleMode::Off => None,
        OracleMode::Auto if !finite || !oracle_affordable(f, d, config.cap) => None,
        OracleMode::Auto => Some(is_simple_oracle(alg, config.cap, true, config.seed)?),
        OracleMode::Force => Some(is_simple_oracle(alg, config.cap, false, config.seed)?),
    };

    let abelian = action.group().is_abelian();
    let center_test = if abelian {
        let z = alg.subalgebra(&facts.center, "Z")?;
        Some(is_field(&z, config.cap)?)
    } else {
        None
    };
    let center_is_field = center_test.as_ref().map(|t| t.is_field);

    let mut centralizer_simple = None;
    let route = if facts.maximal_commutative {
        Some((Route::MaximalCommutative, facts.alpha_simple))
    } else if let Some(zf) = center_is_field {
        Some((Route::AbelianCenterField, facts.alpha_simple && zf))
    } else if config.mode != OracleMode::Off && finite && oracle_affordable(f, facts.centralizer.dim(), config.cap) {
        let c = alg.subalgebra(&facts.centralizer, "C")?;
        let simple = is_simple_oracle(&c, config.cap, true, config.seed)?.simple;
        centralizer_simple = Some(simple);
        simple.then_some((Route::CentralizerSimple, facts.alpha_simple))
    } else {
        None
    };

    // the two abelian-group criteria must agree whenever both apply
    if let (Some((Route::MaximalCommutative, s)), Some(zf)) = (route, center_is_field) {
        if s != (facts.alpha_simple && zf) {
            return Err(Error::disagreement(
                "maximal-commutative vs abelian-center-field",
                format!("alpha-simplicity gives {s}, center field test gives {zf}"),
            ));
        }
    }

    let (route, simple) = match (route, &oracle) {
        (Some(r), _) => r,
        (None, Some(o)) if o.complete || !o.simple => (Route::OracleOnly, o.simple),
        (None, _) => {
            let total = space_size(f, d).unwrap_or(u128::MAX);
            let cap = if config.mode == OracleMode::Off { 0 } else { config.cap };
            return Err(Error::capacity("simplicity oracle (no structural route applies)", total, cap));
        }
    };

    if simple && !facts.alpha_simple {
        return Err(Error::disagreement("simple implies alpha-simple", format!("route {} says simple", route.as_str())));
    }

    let oracle_agreement = match &oracle {
        Some(o) if o.complete || !o.simple => {
            if o.simple != simple {
                return Err(Error::disagreement(
                    "route vs oracle",
                    format!("route {} says simple = {simple}, oracle says {}", route.as_str(), o.simple),
                ));
            }
            Some(true)
        }
        _ => None,
    };

    let witness = if simple {
        None
    } else {
        let raw = if !facts.alpha_simple {
            let ideal = action.proper_invariant_ideal().expect("not alpha-simple");
            let e = cp.from_ring(&action.ring().idempotent(&ideal.support));
            Some((WitnessKind::InvariantIdeal, cp.to_vector(&e)))
        } else if let Some((kind, w)) = center_test.as_ref().and_then(|t| t.witness.clone()) {
            Some((kind, facts.center.combine(&w)))
        } else {
            oracle.as_ref().and_then(|o| o.witness.clone()).map(|w| (WitnessKind::Oracle, w))
        };
        match raw {
            Some((kind, v)) => {
                let ideal_dim = ideal_closure(alg, &v).dim();
                if ideal_dim == 0 || ideal_dim == d {
                    return Err(Error::disagreement(
                        "non-simplicity witness",
                        format!("{kind:?} witness generates an ideal of dimension {ideal_dim} out of {d}"),
                    ));
                }
                Some(SimplicityWitness { kind, element: v.iter().map(|c| f.to_json(c)).collect(), ideal_dim })
            }
            None => None,
        }
    };

    Ok(SimplicityVerdict {
        simple,
        route,
        witness,
        oracle_agreement,
        oracle: oracle.map(|o| OracleSummary { simple: o.simple, complete: o.complete, checked: o.checked }),
        center_is_field,
        centralizer_simple,
    })
}

/// Minimality, maximal commutativity with alpha-simplicity, and simplicity of
/// `C(X) * G` for a partial system, with the implications that hold for
/// finite `X` enforced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamicsSimplicityReport {
    pub minimal: bool,
    pub topologically_free: bool,
    pub maximal_commutative: bool,
    pub alpha_simple: bool,
    /// The system is minimal.
    pub condition_i: bool,
    /// `C(X)` is maximal commutative and alpha-simple.
    pub condition_ii: bool,
    /// `C(X) * G` is simple.
    pub condition_iii: bool,
    /// Minimal without (ii): possible only because `X` is finite.
    pub finite_gap: bool,
    pub verdict: SimplicityVerdict,
}

impl DynamicsSimplicityReport {
    /// Assembles the report for the lift of `system` from already computed facts.
    pub fn from_parts<F: Field>(system: &PartialSystem, facts: &AlgebraFacts<F>, verdict: SimplicityVerdict) -> Result<Self> {
        let minimal = system.is_minimal();
        if minimal != facts.alpha_simple {
            return Err(Error::disagreement(
                "minimal iff alpha-simple",
                format!("minimal = {minimal}, alpha-simple = {}", facts.alpha_simple),
            ));
        }
        let condition_i = minimal;
        let condition_ii = facts.maximal_commutative && facts.alpha_simple;
        let condition_iii = verdict.simple;
        let implications = [
            (condition_ii && !condition_iii, "(ii) implies (iii)"),
            (condition_iii && !facts.alpha_simple, "(iii) implies alpha-simple"),
            (condition_iii && !condition_i, "(iii) implies (i)"),
        ];
        if let Some((_, name)) = implications.iter().find(|(broken, _)| *broken) {
            return Err(Error::disagreement(
                *name,
                format!("(i) = {condition_i}, (ii) = {condition_ii}, (iii) = {condition_iii}"),
            ));
        }
        Ok(DynamicsSimplicityReport {
            minimal,
            topologically_free: system.is_topologically_free(),
            maximal_commutative: facts.maximal_commutative,
            alpha_simple: facts.alpha_simple,
            condition_i,
            condition_ii,
            condition_iii,
            finite_gap: condition_i && !condition_ii,
            verdict,
        })
    }
}

pub fn dynamics_simplicity_report<F: Field>(
    system: &PartialSystem,
    field: F,
    config: &OracleConfig,
) -> Result<DynamicsSimplicityReport> {
    let action = TwistedAction::lift(system, field)?;
    let cp = CrossedProduct::new(&action);
    let facts = AlgebraFacts::compute(&cp)?;
    let verdict = decide_with(&cp, &facts, config)?;
    DynamicsSimplicityReport::from_parts(system, &facts, verdict)
}
