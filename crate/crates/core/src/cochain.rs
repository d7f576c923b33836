//! Cochains `A^{×k} → Γ` stored as value tables.

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::structure::LinearCycleSet;
use crate::tuples::{FormalSum, TupleSpace};

/// A map `A^{×k} → Γ`; `values[i]` is the Γ-index of the value on the `i`-th
/// tuple in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cochain {
    pub degree: usize,
    #[serde(skip)]
    order: usize,
    pub values: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCochain {
    degree: usize,
    values: Vec<usize>,
}

impl<'de> Deserialize<'de> for Cochain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCochain::deserialize(d)?;
        Cochain::from_flat(raw.degree, raw.values).map_err(serde::de::Error::custom)
    }
}

impl Cochain {
    pub fn zero(order: usize, degree: usize) -> Self {
        Cochain {
            degree,
            order,
            values: vec![0; TupleSpace::new(order, degree).len()],
        }
    }

    pub fn from_fn(order: usize, degree: usize, f: impl Fn(&[usize]) -> usize) -> Self {
        let space = TupleSpace::new(order, degree);
        Cochain {
            degree,
            order,
            values: space.iter().map(|t| f(&t)).collect(),
        }
    }

    pub fn new(order: usize, degree: usize, values: Vec<usize>) -> Result<Self> {
        let expected = TupleSpace::new(order, degree).len();
        if values.len() != expected {
            return Err(Error::Shape(format!(
                "a degree-{degree} cochain on an order-{order} structure has {expected} values, got {}",
                values.len()
            )));
        }
        Ok(Cochain { degree, order, values })
    }

    /// Infer the base order from the table length.
    pub fn from_flat(degree: usize, values: Vec<usize>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Degree("cochains have degree at least 1".into()));
        }
        let len = values.len();
        let order = (1..=len)
            .find(|&n| TupleSpace::new(n, degree).len() >= len)
            .filter(|&n| TupleSpace::new(n, degree).len() == len)
            .ok_or_else(|| {
                Error::Shape(format!("{len} values is not a power |A|^{degree}"))
            })?;
        Ok(Cochain { degree, order, values })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn space(&self) -> TupleSpace {
        TupleSpace::new(self.order, self.degree)
    }

    pub fn get(&self, tuple: &[usize]) -> usize {
        self.values[self.space().index(tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], value: usize) {
        let i = self.space().index(tuple);
        self.values[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Check sizes against a base and coefficient group.
    pub fn check_shape(&self, base: &LinearCycleSet, coeffs: &FiniteAbelianGroup) -> Result<()> {
        if self.order != base.order() {
            return Err(Error::Shape(format!(
                "cochain is defined on an order-{} structure, expected {}",
                self.order,
                base.order()
            )));
        }
        if let Some(&bad) = self.values.iter().find(|&&v| v as u64 >= coeffs.order()) {
            return Err(Error::Shape(format!("value {bad} is not an element of {coeffs}")));
        }
        Ok(())
    }

    /// Evaluate on a formal sum of tuples.
    pub fn evaluate(&self, coeffs: &FiniteAbelianGroup, sum: &FormalSum) -> usize {
        sum.iter().fold(coeffs.zero(), |acc, (t, c)| coeffs.add(acc, coeffs.scale(*c, self.get(t))))
    }

    pub fn add(&self, coeffs: &FiniteAbelianGroup, other: &Cochain) -> Cochain {
        self.zip(other, |x, y| coeffs.add(x, y))
    }

    pub fn sub(&self, coeffs: &FiniteAbelianGroup, other: &Cochain) -> Cochain {
        self.zip(other, |x, y| coeffs.sub(x, y))
    }

    fn zip(&self, other: &Cochain, op: impl Fn(usize, usize) -> usize) -> Cochain {
        assert_eq!((self.order, self.degree), (other.order, other.degree));
        Cochain {
            degree: self.degree,
            order: self.order,
            values: self.values.iter().zip(&other.values).map(|(&x, &y)| op(x, y)).collect(),
        }
    }

    /// First tuple `(…, a, a')` violating additivity in the last argument.
    pub fn linearity_witness(&self, base: &LinearCycleSet, coeffs: &FiniteAbelianGroup) -> Option<Vec<usize>> {
        let n = self.order;
        let prefix = TupleSpace::new(n, self.degree - 1);
        for p in prefix.iter() {
            for a in 0..n {
                for b in 0..n {
                    let mut t = p.clone();
                    t.push(base.add(a, b));
                    let lhs = self.get(&t);
                    *t.last_mut().unwrap() = a;
                    let fa = self.get(&t);
                    *t.last_mut().unwrap() = b;
                    let fb = self.get(&t);
                    if lhs != coeffs.add(fa, fb) {
                        let mut w = p.clone();
                        w.extend([a, b]);
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    /// First tuple with a zero coordinate on which the cochain is nonzero.
    pub fn degenerate_witness(&self, zero: usize) -> Option<Vec<usize>> {
        self.space()
            .iter()
            .find(|t| t.contains(&zero) && self.get(t) != 0)
    }

    /// Residues of the values in the `k`-th cyclic factor of `coeffs`.
    pub fn component(&self, coeffs: &FiniteAbelianGroup, k: usize) -> Vec<u64> {
        self.values.iter().map(|&v| coeffs.component(v, k)).collect()
    }

    /// Assemble from per-factor residue vectors.
    pub fn from_components(order: usize, degree: usize, coeffs: &FiniteAbelianGroup, parts: &[Vec<u64>]) -> Cochain {
        let len = TupleSpace::new(order, degree).len();
        let values = (0..len)
            .map(|i| {
                let r: Vec<u64> = parts.iter().map(|p| p[i]).collect();
                coeffs.from_residues(&r)
            })
            .collect();
        Cochain { degree, order, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::z4_lcs;

    #[test]
    fn json_round_trip() {
        let c = Cochain::from_fn(2, 2, |t| t[0] * t[1]);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"degree":2,"values":[0,0,0,1]}"#);
        let back: Cochain = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Cochain>(r#"{"degree":2,"values":[0,0,0]}"#).is_err());
    }

    #[test]
    fn linearity() {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let a = z4_lcs();
        let phi = [0, 1, 1, 0];
        let f = Cochain::from_fn(4, 2, |t| (t[1] % 2) * phi[t[0]]);
        assert_eq!(f.linearity_witness(&a, &g), None);
        let bad = Cochain::from_fn(4, 2, |t| usize::from(t[1] == 1));
        assert!(bad.linearity_witness(&a, &g).is_some());
        assert_eq!(f.degenerate_witness(0), None);
    }
}
