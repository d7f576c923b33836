//! Enumeration of all linear cycle sets of a small order with neutral element 0.
//!
//! Left translations of a linear cycle set are additive automorphisms and
//! `0·a = a`, so a structure is an abelian group table together with a choice
//! of automorphism for each nonzero row; the remaining axioms are filtered.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::{validate_lcs, BinaryTable, LinearCycleSet};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::FiniteAbelianGroup;

/// Largest number of dot tables tried per additive table.
pub const DOT_CANDIDATE_LIMIT: u128 = 50_000_000;

/// Invariant-factor chains `d_1 | d_2 | …` with product `n`.
fn invariant_chains(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in 2..=rest {
            if rest % d != 0 || d % min != 0 {
                continue;
            }
            // later factors are multiples of d, so d must divide what remains
            let after = rest / d;
            if after != 1 && after % d != 0 {
                continue;
            }
            prefix.push(d);
            go(after, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// All abelian group tables on `0..n` with neutral element 0, sorted.
pub fn abelian_group_tables(n: usize) -> Vec<BinaryTable> {
    assert!(n >= 1);
    let mut tables = BTreeSet::new();
    for chain in invariant_chains(n as u64) {
        let g = FiniteAbelianGroup::new(chain).expect("factors ≥ 2");
        let base = BinaryTable::from_fn(n, |a, b| g.add(a, b));
        for perm in (1..n).permutations(n - 1) {
            let mut full = vec![0];
            full.extend(perm);
            tables.insert(base.relabel(&full).rows());
        }
    }
    tables
        .into_iter()
        .map(|rows| BinaryTable::from_rows(rows).expect("well formed"))
        .collect()
}

/// Additive automorphisms of `add`, as permutations of `0..n`.
pub fn automorphisms(add: &BinaryTable) -> Vec<Vec<usize>> {
    let n = add.order();
    (1..n)
        .permutations(n - 1)
        .map(|perm| {
            let mut full = vec![0];
            full.extend(perm);
            full
        })
        .filter(|p| (0..n).all(|a| (0..n).all(|b| p[add.get(a, b)] == add.get(p[a], p[b]))))
        .collect()
}

/// Every linear cycle set of order `n` whose neutral element is 0, sorted by
/// `(add, dot)` tables.
pub fn enumerate_lcs(n: usize, exec: Execution) -> Result<Vec<LinearCycleSet>> {
    if n == 0 {
        return Err(Error::Parameter("order must be positive".into()));
    }
    let mut out = Vec::new();
    for add in abelian_group_tables(n) {
        let auts = automorphisms(&add);
        let rows = n - 1;
        let candidates = (auts.len() as u128).pow(rows as u32);
        if candidates > DOT_CANDIDATE_LIMIT {
            return Err(Error::Budget {
                what: format!("dot candidates at order {n}"),
                needed: candidates,
                limit: DOT_CANDIDATE_LIMIT,
                hint: "",
            });
        }
        let k = auts.len() as u64;
        let found = exec.filter_map(0..candidates as u64, |mut idx| {
            let mut cells = Vec::with_capacity(n * n);
            cells.extend(0..n);
            for _ in 0..rows {
                cells.extend_from_slice(&auts[(idx % k) as usize]);
                idx /= k;
            }
            let dot = BinaryTable { order: n, cells };
            satisfies_remaining(&add, &dot).then_some(dot)
        });
        out.extend(found.into_iter().map(|dot| LinearCycleSet::assume_valid(add.clone(), dot)));
    }
    out.sort_by(|a, b| {
        (a.add_table().rows(), a.dot_table().rows()).cmp(&(b.add_table().rows(), b.dot_table().rows()))
    });
    Ok(out)
}

fn satisfies_remaining(add: &BinaryTable, dot: &BinaryTable) -> bool {
    let n = add.order();
    for a in 0..n {
        for b in 0..n {
            let s = add.get(a, b);
            let ab = dot.get(a, b);
            let ba = dot.get(b, a);
            for c in 0..n {
                let ac = dot.get(a, c);
                if dot.get(ab, ac) != dot.get(ba, dot.get(b, c)) || dot.get(s, c) != dot.get(ab, ac) {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive search over all `n^{n²}` table pairs (neutral element anywhere),
/// normalized so the neutral element is 0 and deduplicated. Only feasible for
/// `n ≤ 3`.
pub fn exhaustive_lcs(n: usize, exec: Execution) -> Result<Vec<LinearCycleSet>> {
    if n == 0 || n > 3 {
        return Err(Error::Parameter(format!(
            "exhaustive table search supports orders 1..=3, got {n}"
        )));
    }
    let tables = (n as u64).pow((n * n) as u32);
    let decode = |mut idx: u64| {
        let cells = (0..n * n)
            .map(|_| {
                let v = (idx % n as u64) as usize;
                idx /= n as u64;
                v
            })
            .collect();
        BinaryTable { order: n, cells }
    };
    let adds = exec.filter_map(0..tables, |i| {
        let add = decode(i);
        let dummy = BinaryTable::from_fn(n, |_, b| b);
        validate_lcs(&add, &dummy).ok().filter(|r| r.is_valid()).map(|_| add)
    });
    let mut seen = BTreeSet::new();
    for add in adds {
        let found = exec.filter_map(0..tables, |j| {
            let dot = decode(j);
            validate_lcs(&add, &dot).ok().filter(|r| r.is_valid()).map(|_| dot)
        });
        for dot in found {
            let l = LinearCycleSet::assume_valid(add.clone(), dot);
            let l = l.relabel(&l.zero_first_permutation());
            seen.insert((l.add_table().rows(), l.dot_table().rows()));
        }
    }
    Ok(seen
        .into_iter()
        .map(|(a, d)| {
            LinearCycleSet::assume_valid(
                BinaryTable::from_rows(a).expect("well formed"),
                BinaryTable::from_rows(d).expect("well formed"),
            )
        })
        .collect())
}
