//! Finite groups as validated multiplication tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on group order; everything downstream enumerates over `G`.
pub const DEFAULT_GROUP_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub usize);

impl GroupElement {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `{"kind":"cyclic","n":6}`, `{"kind":"product","factors":[...]}` or
/// `{"kind":"table","mul":[[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDescriptor {
    Cyclic { n: usize },
    Product { factors: Vec<GroupDescriptor> },
    Table { mul: Vec<Vec<usize>> },
}

impl GroupDescriptor {
    pub fn cyclic(n: usize) -> Self {
        GroupDescriptor::Cyclic { n }
    }

    pub fn product(factors: Vec<GroupDescriptor>) -> Self {
        GroupDescriptor::Product { factors }
    }

    /// Table of the symmetric group on `n` letters (`n <= 4`), permutations in
    /// lexicographic order so the identity comes first; composition is `(a*b)(i) = a(b(i))`.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=4).contains(&n), "symmetric group helper supports n <= 4");
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&(0..n).map(|i| a[b[i]]).collect()))
                    .collect()
            })
            .collect();
        GroupDescriptor::Table { mul }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        FiniteGroup::from_descriptor(self, DEFAULT_GROUP_CAP)
    }

    pub fn short_name(&self) -> String {
        match self {
            GroupDescriptor::Cyclic { n } => format!("C{n}"),
            GroupDescriptor::Product { factors } => {
                factors.iter().map(|f| f.short_name()).collect::<Vec<_>>().join("x")
            }
            GroupDescriptor::Table { mul } => format!("T{}", mul.len()),
        }
    }
}

impl std::str::FromStr for GroupDescriptor {
    type Err = Error;

    /// `C6`, `C2xC2`, `V4` or `S3`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let bad = || Error::Parse { field: Some("group".into()), line: 0, column: 0, message: format!("unrecognized group `{s}`") };
        let one = |part: &str| -> Result<GroupDescriptor> {
            if part == "V4" || part == "KLEIN" {
                return Ok(GroupDescriptor::product(vec![GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(2)]));
            }
            if let Some(n) = part.strip_prefix('S') {
                let n: usize = n.parse().map_err(|_| bad())?;
                return if (1..=4).contains(&n) { Ok(GroupDescriptor::symmetric(n)) } else { Err(bad()) };
            }
            let n: usize = part.strip_prefix('C').and_then(|n| n.parse().ok()).filter(|&n| n > 0).ok_or_else(bad)?;
            Ok(GroupDescriptor::cyclic(n))
        };
        let parts: Vec<&str> = t.split(['X', '*']).collect();
        if parts.len() == 1 {
            one(parts[0])
        } else {
            Ok(GroupDescriptor::product(parts.into_iter().map(one).collect::<Result<_>>()?))
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    labels: Vec<String>,
    /// Orders of cyclic factors when the group is a product of cyclic groups
    /// indexed in mixed radix (first factor most significant).
    cyclic_factors: Option<Vec<usize>>,
    abelian: bool,
}

impl FiniteGroup {
    pub fn from_descriptor(desc: &GroupDescriptor, cap: usize) -> Result<Self> {
        let (table, labels, factors) = build_table(desc)?;
        let order = table.len();
        if order > cap {
            return Err(Error::GroupTooLarge { order, cap });
        }
        let mut g = Self::from_table(table)?;
        if let Some(labels) = labels {
            g.labels = labels;
        }
        g.cyclic_factors = factors;
        Ok(g)
    }

    /// Validates an explicit table. Element 0 must be the identity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotLatinSquare { row: r, col: row.len().min(n) });
            }
            let mut seen = vec![false; n];
            for (c, &v) in row.iter().enumerate() {
                if v >= n || seen[v] {
                    return Err(Error::NotLatinSquare { row: r, col: c });
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for (r, row) in table.iter().enumerate() {
                if seen[row[c]] {
                    return Err(Error::NotLatinSquare { row: r, col: c });
                }
                seen[row[c]] = true;
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::NotLatinSquare { row: 0, col: a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NonAssociativeTable { a, b, c });
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("Latin square has an inverse"))
            .collect();
        let abelian = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
        let labels = (0..n).map(|i| if i == 0 { "e".to_string() } else { i.to_string() }).collect();
        Ok(FiniteGroup { table, inverse, labels, cyclic_factors: None, abelian })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_descriptor(&GroupDescriptor::cyclic(n), DEFAULT_GROUP_CAP)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Table lookup without range checks; callers iterate over `elements()`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn checked_mul(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement(self.table[a.0][b.0]))
    }

    pub fn checked_inv(&self, a: GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(self.inverse[a.0]))
    }

    fn check(&self, a: GroupElement) -> Result<()> {
        if a.0 >= self.order() {
            return Err(Error::IndexOutOfRange { index: a.0, order: self.order() });
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cyclic_factors(&self) -> Option<&[usize]> {
        self.cyclic_factors.as_deref()
    }

    /// Mixed-radix coordinates of `a` for products of cyclic groups.
    pub fn coordinates(&self, a: usize) -> Option<Vec<usize>> {
        let factors = self.cyclic_factors.as_ref()?;
        let mut rest = a;
        let mut coords = vec![0; factors.len()];
        for (i, &m) in factors.iter().enumerate().rev() {
            coords[i] = rest % m;
            rest /= m;
        }
        Some(coords)
    }

    /// Resolves an element written either as an index or as its label.
    pub fn parse_element(&self, s: &str) -> Option<usize> {
        let s = s.trim();
        if let Ok(i) = s.parse::<usize>() {
            return (i < self.order()).then_some(i);
        }
        self.labels.iter().position(|l| l == s)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The cyclic subgroup generated by `a`, sorted.
    pub fn cyclic_subgroup(&self, a: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = a;
        while x != 0 {
            out.push(x);
            x = self.mul(x, a);
        }
        out.sort_unstable();
        out
    }
}

type TableParts = (Vec<Vec<usize>>, Option<Vec<String>>, Option<Vec<usize>>);

fn build_table(desc: &GroupDescriptor) -> Result<TableParts> {
    match desc {
        GroupDescriptor::Cyclic { n } => {
            if *n == 0 {
                return Err(Error::EmptyGroup);
            }
            let table = (0..*n).map(|a| (0..*n).map(|b| (a + b) % n).collect()).collect();
            Ok((table, None, Some(vec![*n])))
        }
        GroupDescriptor::Table { mul } => Ok((mul.clone(), None, None)),
        GroupDescriptor::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::EmptyGroup);
            }
            let parts: Vec<FiniteGroup> = factors
                .iter()
                .map(|f| FiniteGroup::from_descriptor(f, usize::MAX))
                .collect::<Result<_>>()?;
            let orders: Vec<usize> = parts.iter().map(|g| g.order()).collect();
            let total: usize = orders.iter().product();
            let decode = |mut a: usize| {
                let mut coords = vec![0; orders.len()];
                for i in (0..orders.len()).rev() {
                    coords[i] = a % orders[i];
                    a /= orders[i];
                }
                coords
            };
            let encode = |coords: &[usize]| coords.iter().zip(&orders).fold(0, |acc, (c, m)| acc * m + c);
            let table = (0..total)
                .map(|a| {
                    let ca = decode(a);
                    (0..total)
                        .map(|b| {
                            let cb = decode(b);
                            let prod: Vec<usize> =
                                parts.iter().enumerate().map(|(i, g)| g.mul(ca[i], cb[i])).collect();
                            encode(&prod)
                        })
                        .collect()
                })
                .collect();
            let labels = (0..total)
                .map(|a| {
                    let c = decode(a);
                    format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                })
                .collect();
            let cyclic = parts
                .iter()
                .map(|g| g.cyclic_factors.clone())
                .collect::<Option<Vec<_>>>()
                .map(|v| v.concat());
            Ok((table, Some(labels), cyclic))
        }
    }
}
