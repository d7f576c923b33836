//! Axiom checks for operation tables, collecting every failure.

use std::fmt;

use serde::Serialize;

use super::BinaryTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddNeutral,
    AddInverse,
    LeftTranslationBijective,
    CycleSetCondition,
    LeftDistributive,
    Compatibility,
    DotZero,
    ZeroDot,
    CircleAssociative,
    CircleNeutral,
    CircleInverse,
    BraceCondition,
}

impl Axiom {
    pub fn statement(self) -> &'static str {
        match self {
            Axiom::AddAssociative => "(a+b)+c = a+(b+c)",
            Axiom::AddCommutative => "a+b = b+a",
            Axiom::AddNeutral => "some e has e+a = a for all a",
            Axiom::AddInverse => "every a has some b with a+b = 0",
            Axiom::LeftTranslationBijective => "b ↦ a·b is a bijection",
            Axiom::CycleSetCondition => "(a·b)·(a·c) = (b·a)·(b·c)",
            Axiom::LeftDistributive => "a·(b+c) = a·b + a·c",
            Axiom::Compatibility => "(a+b)·c = (a·b)·(a·c)",
            Axiom::DotZero => "a·0 = 0",
            Axiom::ZeroDot => "0·a = a",
            Axiom::CircleAssociative => "(a∘b)∘c = a∘(b∘c)",
            Axiom::CircleNeutral => "0∘a = a∘0 = a for the additive neutral 0",
            Axiom::CircleInverse => "every a has some b with a∘b = b∘a = 0",
            Axiom::BraceCondition => "a∘(b+c) + a = a∘b + a∘c",
        }
    }
}

/// One violated axiom: the first witness in lexicographic order and the
/// number of failing instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn fails(&self, axiom: Axiom) -> bool {
        self.violation(axiom).is_some()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "{:?} ({}) fails at {:?} ({} instance{})",
                v.axiom,
                v.axiom.statement(),
                v.witness,
                v.count,
                if v.count == 1 { "" } else { "s" }
            )?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Collector {
    violations: Vec<Violation>,
}

impl Collector {
    /// Count failures of `holds` over `(0..n)^arity` in lexicographic order.
    fn check(&mut self, axiom: Axiom, n: usize, arity: usize, holds: impl Fn(&[usize]) -> bool) {
        let mut first = None;
        let mut count = 0u64;
        let mut t = vec![0usize; arity];
        let total = n.pow(arity as u32);
        for _ in 0..total {
            if !holds(&t) {
                count += 1;
                if first.is_none() {
                    first = Some(t.clone());
                }
            }
            for slot in t.iter_mut().rev() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
        if let Some(witness) = first {
            self.violations.push(Violation {
                axiom,
                witness,
                count,
            });
        }
    }

    fn push(&mut self, axiom: Axiom, witness: Vec<usize>, count: u64) {
        self.violations.push(Violation {
            axiom,
            witness,
            count,
        });
    }

    fn finish(self) -> ValidationReport {
        ValidationReport {
            valid: self.violations.is_empty(),
            violations: self.violations,
        }
    }
}

fn same_order(a: &BinaryTable, b: &BinaryTable) -> Result<usize> {
    if a.order() != b.order() {
        return Err(Error::MalformedTable(format!(
            "tables have orders {} and {}",
            a.order(),
            b.order()
        )));
    }
    Ok(a.order())
}

/// Abelian group checks; returns the neutral element if there is one.
fn check_abelian(c: &mut Collector, add: &BinaryTable) -> Option<usize> {
    let n = add.order();
    c.check(Axiom::AddAssociative, n, 3, |t| {
        add.get(add.get(t[0], t[1]), t[2]) == add.get(t[0], add.get(t[1], t[2]))
    });
    c.check(Axiom::AddCommutative, n, 2, |t| add.get(t[0], t[1]) == add.get(t[1], t[0]));
    let zero = (0..n).find(|&e| (0..n).all(|x| add.get(e, x) == x && add.get(x, e) == x));
    match zero {
        Some(z) => c.check(Axiom::AddInverse, n, 1, |t| (0..n).any(|b| add.get(t[0], b) == z)),
        None => c.push(Axiom::AddNeutral, Vec::new(), 1),
    }
    zero
}

/// Check `(add, dot)` against the linear cycle set axioms.
pub fn validate_lcs(add: &BinaryTable, dot: &BinaryTable) -> Result<ValidationReport> {
    let n = same_order(add, dot)?;
    let mut c = Collector::default();
    let zero = check_abelian(&mut c, add);
    c.check(Axiom::LeftTranslationBijective, n, 1, |t| {
        let mut seen = vec![false; n];
        dot.row(t[0]).iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    });
    let d = |a, b| dot.get(a, b);
    let s = |a, b| add.get(a, b);
    c.check(Axiom::CycleSetCondition, n, 3, |t| {
        let (a, b, x) = (t[0], t[1], t[2]);
        d(d(a, b), d(a, x)) == d(d(b, a), d(b, x))
    });
    c.check(Axiom::LeftDistributive, n, 3, |t| {
        let (a, b, x) = (t[0], t[1], t[2]);
        d(a, s(b, x)) == s(d(a, b), d(a, x))
    });
    c.check(Axiom::Compatibility, n, 3, |t| {
        let (a, b, x) = (t[0], t[1], t[2]);
        d(s(a, b), x) == d(d(a, b), d(a, x))
    });
    if let Some(z) = zero {
        c.check(Axiom::DotZero, n, 1, |t| d(t[0], z) == z);
        c.check(Axiom::ZeroDot, n, 1, |t| d(z, t[0]) == t[0]);
    }
    Ok(c.finish())
}

/// Check `(add, circle)` against the brace axioms.
pub fn validate_brace(add: &BinaryTable, circle: &BinaryTable) -> Result<ValidationReport> {
    let n = same_order(add, circle)?;
    let mut c = Collector::default();
    let zero = check_abelian(&mut c, add);
    let o = |a, b| circle.get(a, b);
    let s = |a, b| add.get(a, b);
    c.check(Axiom::CircleAssociative, n, 3, |t| o(o(t[0], t[1]), t[2]) == o(t[0], o(t[1], t[2])));
    if let Some(z) = zero {
        c.check(Axiom::CircleNeutral, n, 1, |t| o(z, t[0]) == t[0] && o(t[0], z) == t[0]);
        c.check(Axiom::CircleInverse, n, 1, |t| {
            (0..n).any(|b| o(t[0], b) == z && o(b, t[0]) == z)
        });
    }
    c.check(Axiom::BraceCondition, n, 3, |t| {
        let (a, b, x) = (t[0], t[1], t[2]);
        s(o(a, s(b, x)), a) == s(o(a, b), o(a, x))
    });
    Ok(c.finish())
}

/// Short-circuiting version of [`validate_lcs`] for large sweeps.
pub fn is_lcs(add: &BinaryTable, dot: &BinaryTable) -> bool {
    let n = add.order();
    if dot.order() != n {
        return false;
    }
    let zero = match (0..n).find(|&e| (0..n).all(|x| add.get(e, x) == x)) {
        Some(z) => z,
        None => return false,
    };
    for a in 0..n {
        let mut seen = vec![false; n];
        for b in 0..n {
            if add.get(a, b) != add.get(b, a) || std::mem::replace(&mut seen[dot.get(a, b)], true) {
                return false;
            }
        }
        if !(0..n).any(|b| add.get(a, b) == zero) {
            return false;
        }
    }
    for a in 0..n {
        for b in 0..n {
            let s = add.get(a, b);
            let ab = dot.get(a, b);
            let ba = dot.get(b, a);
            for c in 0..n {
                let ac = dot.get(a, c);
                if add.get(s, c) != add.get(a, add.get(b, c))
                    || dot.get(a, add.get(b, c)) != add.get(ab, ac)
                    || dot.get(s, c) != dot.get(ab, ac)
                    || dot.get(ab, ac) != dot.get(ba, dot.get(b, c))
                {
                    return false;
                }
            }
        }
    }
    true
}
