//! Dense univariate polynomials over Q, just enough for the field test in
//! characteristic zero: division, extended gcd and irreducibility by
//! Kronecker's interpolation method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<BigRational>);

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn one() -> Self {
        Poly(vec![BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        let lead = d.lead().clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().expect("nonempty") / &lead;
            for (i, di) in d.0.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            q[k] = c;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        self.scale(&self.lead().recip())
    }

    /// `(g, s, t)` with `g = s·a + t·b` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly(Vec::new()));
        let (mut t0, mut t1) = (Poly(Vec::new()), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    fn primitive(&self) -> Vec<BigInt> {
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// A nontrivial factor, or `None` when irreducible over Q.
    ///
    /// `cap` bounds the number of interpolation candidates tried.
    pub fn find_factor(&self, cap: u128) -> Result<Option<Poly>> {
        let n = self.degree().expect("nonzero polynomial");
        if n <= 1 {
            return Ok(None);
        }
        let f = self.primitive();
        let fq = Poly::new(f.iter().cloned().map(BigRational::from_integer).collect());
        let eval_int = |a: i64| -> BigInt {
            f.iter().rev().fold(BigInt::zero(), |acc, c| acc * BigInt::from(a) + c)
        };
        // candidate evaluation points ordered by |f(a)| so divisor sets stay small
        let mut points: Vec<(BigInt, i64)> = Vec::new();
        for a in -12i64..=12 {
            let v = eval_int(a);
            if v.is_zero() {
                let lin = Poly::from_ints(&[-a, 1]);
                return Ok(Some(lin));
            }
            points.push((v.abs(), a));
        }
        points.sort();
        for s in 1..=n / 2 {
            let chosen = &points[..=s];
            let divisor_sets: Vec<Vec<BigInt>> = chosen
                .iter()
                .map(|(v, _)| divisors(v).map(|ds| ds.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::capacity("integer factorization in the field test", u128::MAX, cap))?;
            let combos = divisor_sets.iter().try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128));
            match combos {
                Some(c) if c <= cap => {}
                other => return Err(Error::capacity("Kronecker interpolation candidates", other.unwrap_or(u128::MAX), cap)),
            }
            let xs: Vec<BigRational> = chosen.iter().map(|(_, a)| BigRational::from_integer((*a).into())).collect();
            let mut idx = vec![0usize; s + 1];
            loop {
                let ys: Vec<BigRational> =
                    idx.iter().enumerate().map(|(i, &k)| BigRational::from_integer(divisor_sets[i][k].clone())).collect();
                let g = interpolate(&xs, &ys);
                if g.degree() == Some(s) && g.0.iter().all(|c| c.is_integer()) {
                    let (_, r) = fq.div_rem(&g);
                    if r.is_zero() {
                        return Ok(Some(g));
                    }
                }
                // odometer over divisor choices
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < divisor_sets[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == idx.len() {
                    break;
                }
            }
        }
        Ok(None)
    }
}

fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Poly {
    let mut out = Poly(Vec::new());
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::one();
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::new(vec![-xj.clone(), BigRational::one()]));
                denom *= xi - xj;
            }
        }
        out = out.add(&basis.scale(&(yi / denom)));
    }
    out
}

/// Positive divisors by trial division; `None` when the number is too large to factor this way.
fn divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let n = v.to_u64().filter(|&n| n <= 1 << 40)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}
