//! Finite linear cycle sets and braces given by operation tables.

mod builtin;
pub mod enumerate;
mod file;
mod validate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builtin::{builtin_structure, trivial_lcs, z4_brace, z4_lcs};
pub use file::{load_structure, StructureFile, StructureKind};
pub use validate::{is_lcs, validate_brace, validate_lcs, Axiom, ValidationReport, Violation};

/// An `n × n` table with entries in `0..n`; `get(i, j)` is `op(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct BinaryTable {
    order: usize,
    cells: Vec<usize>,
}

impl BinaryTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= order) {
                return Err(Error::MalformedTable(format!(
                    "entry {bad} in row {i} is out of range 0..{order}"
                )));
            }
            cells.extend(row);
        }
        Ok(BinaryTable { order, cells })
    }

    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                let v = op(i, j);
                assert!(v < order, "table entry {v} out of range");
                cells.push(v);
            }
        }
        BinaryTable { order, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: usize) {
        assert!(value < self.order);
        self.cells[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.cells[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order.max(1)).take(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Table of the same operation after relabelling `x ↦ perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> BinaryTable {
        let mut cells = vec![0; self.cells.len()];
        for i in 0..self.order {
            for j in 0..self.order {
                cells[perm[i] * self.order + perm[j]] = perm[self.get(i, j)];
            }
        }
        BinaryTable {
            order: self.order,
            cells,
        }
    }
}

impl TryFrom<Vec<Vec<usize>>> for BinaryTable {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        BinaryTable::from_rows(rows)
    }
}

impl From<BinaryTable> for Vec<Vec<usize>> {
    fn from(t: BinaryTable) -> Self {
        t.rows()
    }
}

/// Abelian group `(A, +)` with a compatible cycle set operation `·`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCycleSet {
    add: BinaryTable,
    dot: BinaryTable,
    zero: usize,
    neg: Vec<usize>,
}

impl LinearCycleSet {
    /// Validate the tables; an invalid pair yields [`Error::Invalid`].
    pub fn new(add: BinaryTable, dot: BinaryTable) -> Result<Self> {
        let report = validate_lcs(&add, &dot)?;
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        Ok(Self::assume_valid(add, dot))
    }

    /// Wrap tables already known to satisfy every axiom.
    pub(crate) fn assume_valid(add: BinaryTable, dot: BinaryTable) -> Self {
        let n = add.order();
        let zero = (0..n)
            .find(|&e| (0..n).all(|x| add.get(e, x) == x))
            .expect("valid additive table has a neutral element");
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add.get(a, b) == zero).expect("inverse exists"))
            .collect();
        LinearCycleSet { add, dot, zero, neg }
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn dot(&self, a: usize, b: usize) -> usize {
        self.dot.get(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// The unique `c` with `a·c = b`.
    pub fn dot_inverse(&self, a: usize, b: usize) -> usize {
        self.dot
            .row(a)
            .iter()
            .position(|&x| x == b)
            .expect("left translations are bijective")
    }

    pub fn add_table(&self) -> &BinaryTable {
        &self.add
    }

    pub fn dot_table(&self) -> &BinaryTable {
        &self.dot
    }

    /// Whether `a·b = b` for all `a, b`.
    pub fn is_trivial_action(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.dot(a, b) == b))
    }

    /// Relabelled copy, `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> LinearCycleSet {
        Self::assume_valid(self.add.relabel(perm), self.dot.relabel(perm))
    }

    /// Permutation moving the neutral element to index 0 (a transposition).
    pub fn zero_first_permutation(&self) -> Vec<usize> {
        zero_first(self.order(), self.zero)
    }
}

/// Abelian group `(A, +)` with a second group law `∘` satisfying the brace axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Brace {
    add: BinaryTable,
    circle: BinaryTable,
    zero: usize,
    neg: Vec<usize>,
    inv: Vec<usize>,
}

impl Brace {
    pub fn new(add: BinaryTable, circle: BinaryTable) -> Result<Self> {
        let report = validate_brace(&add, &circle)?;
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        Ok(Self::assume_valid(add, circle))
    }

    pub(crate) fn assume_valid(add: BinaryTable, circle: BinaryTable) -> Self {
        let n = add.order();
        let zero = (0..n)
            .find(|&e| (0..n).all(|x| add.get(e, x) == x))
            .expect("neutral element");
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| add.get(a, b) == zero).expect("inverse"))
            .collect();
        let inv = (0..n)
            .map(|a| (0..n).find(|&b| circle.get(a, b) == zero).expect("circle inverse"))
            .collect();
        Brace {
            add,
            circle,
            zero,
            neg,
            inv,
        }
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn circle(&self, a: usize, b: usize) -> usize {
        self.circle.get(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Inverse for `∘`.
    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn add_table(&self) -> &BinaryTable {
        &self.add
    }

    pub fn circle_table(&self) -> &BinaryTable {
        &self.circle
    }

    pub fn relabel(&self, perm: &[usize]) -> Brace {
        Self::assume_valid(self.add.relabel(perm), self.circle.relabel(perm))
    }

    pub fn zero_first_permutation(&self) -> Vec<usize> {
        zero_first(self.order(), self.zero)
    }
}

fn zero_first(order: usize, zero: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..order).collect();
    perm.swap(0, zero);
    perm
}

/// `a·b = a⁻¹ ∘ (a + b)`.
pub fn brace_to_lcs(brace: &Brace) -> LinearCycleSet {
    let n = brace.order();
    let dot = BinaryTable::from_fn(n, |a, b| brace.circle(brace.inverse(a), brace.add(a, b)));
    LinearCycleSet::assume_valid(brace.add_table().clone(), dot)
}

/// `a∘b = a + a∗b`, where `a∗·` inverts the left translation `a·`.
pub fn lcs_to_brace(lcs: &LinearCycleSet) -> Brace {
    let n = lcs.order();
    let circle = BinaryTable::from_fn(n, |a, b| lcs.add(a, lcs.dot_inverse(a, b)));
    Brace::assume_valid(lcs.add_table().clone(), circle)
}

/// A structure loaded from a file or the builtin corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Lcs(LinearCycleSet),
    Brace(Brace),
}

impl Structure {
    pub fn to_lcs(&self) -> LinearCycleSet {
        match self {
            Structure::Lcs(l) => l.clone(),
            Structure::Brace(b) => brace_to_lcs(b),
        }
    }

    pub fn to_brace(&self) -> Brace {
        match self {
            Structure::Lcs(l) => lcs_to_brace(l),
            Structure::Brace(b) => b.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Structure::Lcs(l) => l.order(),
            Structure::Brace(b) => b.order(),
        }
    }

    /// Swap to the other presentation.
    pub fn converted(&self) -> Structure {
        match self {
            Structure::Lcs(l) => Structure::Brace(lcs_to_brace(l)),
            Structure::Brace(b) => Structure::Lcs(brace_to_lcs(b)),
        }
    }
}
