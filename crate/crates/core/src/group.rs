//! Finite abelian groups as direct sums of cyclic groups.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `⊕_k ℤ/m_k`, with elements addressed by a single index.
///
/// The index of `(r_1, …, r_t)` is the mixed-radix number with `r_1` most
/// significant, so for a cyclic group the index is the residue itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&m) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidModulus(m));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    /// The zero group (no cyclic factors).
    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn residues(&self, x: usize) -> Vec<u64> {
        let mut x = x as u64;
        let mut out = vec![0; self.factors.len()];
        for (slot, &m) in out.iter_mut().zip(&self.factors).rev() {
            *slot = x % m;
            x /= m;
        }
        out
    }

    /// Residue of `x` in the `k`-th cyclic factor.
    pub fn component(&self, x: usize, k: usize) -> u64 {
        let below: u64 = self.factors[k + 1..].iter().product();
        (x as u64 / below) % self.factors[k]
    }

    pub fn from_residues(&self, residues: &[u64]) -> usize {
        debug_assert_eq!(residues.len(), self.factors.len());
        residues
            .iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (&r, &m)| acc * m + r % m) as usize
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        if self.factors.len() == 1 {
            let m = self.factors[0] as usize;
            return (x + y) % m;
        }
        let (rx, ry) = (self.residues(x), self.residues(y));
        let sum: Vec<u64> = rx
            .iter()
            .zip(&ry)
            .zip(&self.factors)
            .map(|((a, b), m)| (a + b) % m)
            .collect();
        self.from_residues(&sum)
    }

    pub fn neg(&self, x: usize) -> usize {
        let r: Vec<u64> = self
            .residues(x)
            .iter()
            .zip(&self.factors)
            .map(|(&a, &m)| (m - a) % m)
            .collect();
        self.from_residues(&r)
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `k·x` for an integer `k` (negative allowed).
    pub fn scale(&self, k: i64, x: usize) -> usize {
        let r: Vec<u64> = self
            .residues(x)
            .iter()
            .zip(&self.factors)
            .map(|(&a, &m)| (k.rem_euclid(m as i64) as u64 * a) % m)
            .collect();
        self.from_residues(&r)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order() as usize
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

/// Parse `Z/m1+Z/m2+...` (whitespace-insensitive).
pub fn parse_group_spec(text: &str) -> Result<FiniteAbelianGroup> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::UnsupportedCoefficients("empty group spec".into()));
    }
    let mut factors = Vec::new();
    for part in compact.split('+') {
        let rest = part
            .strip_prefix("Z/")
            .or_else(|| part.strip_prefix("z/"))
            .ok_or_else(|| {
                if part == "Z" || part == "z" {
                    Error::UnsupportedCoefficients(
                        "infinite coefficient group Z is not supported; use Z/m".into(),
                    )
                } else {
                    Error::UnsupportedCoefficients(format!("malformed summand `{part}` in `{text}`"))
                }
            })?;
        let m: u64 = rest.parse().map_err(|_| {
            Error::UnsupportedCoefficients(format!("malformed modulus `{rest}` in `{text}`"))
        })?;
        if m < 2 {
            return Err(Error::UnsupportedCoefficients(format!(
                "modulus must be at least 2, got {m}"
            )));
        }
        factors.push(m);
    }
    FiniteAbelianGroup::new(factors)
}

fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Canonical invariant factors `d_1 | d_2 | …` of `⊕ ℤ/c_i`, ones dropped.
///
/// A zero entry stands for an infinite cyclic summand and is kept at the end.
pub fn normalize_invariants(cyclic_orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    let mut free = 0;
    for &c in cyclic_orders {
        if c == 0 {
            free += 1;
            continue;
        }
        for (p, e) in prime_powers(c) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        // largest exponents go to the last (largest) invariant factor
        for (slot, e) in out.iter_mut().rev().zip(exps) {
            *slot *= p.pow(e);
        }
    }
    out.extend(std::iter::repeat(0).take(free));
    out
}

/// Order of the finite group with the given invariant factors.
pub fn group_order(invariants: &[u64]) -> u64 {
    invariants.iter().product()
}
