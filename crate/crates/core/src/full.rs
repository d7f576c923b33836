//! The shuffle bicomplex of a linear cycle set and the cohomology of its
//! total cochain complex.
//!
//! Bidegree `(i, j)` has `i ≥ 0`, `j ≥ 1` and free basis `A^{×(i+j)}`. Within
//! total degree `n` the blocks are ordered by decreasing `i`, so a 2-cochain
//! is the pair `(f, g)` with `f ∈ C^{1,1}` and `g ∈ C^{0,2}`.

use itertools::Itertools;
use num_traits::Zero;

use crate::budget::Budget;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::matrix::IntegerMatrix;
use crate::modular::{kernel_mod_m, subquotient, CyclicDecomposition};
use crate::reduced::{
    factorwise, linearity_relations, matrix_from_terms, merged_invariants, outside_span, reduced_boundary_matrix,
    reduced_boundary_terms, sign, IdentityCheck,
};
use crate::structure::{BinaryTable, LinearCycleSet};
use crate::tuples::{FormalSum, TupleSpace};

/// Signed terms of `Σ_{σ ∈ Sh_{r,j−r}} (−1)^σ (a_1, …, a_i, a_{i+σ⁻¹(1)}, …, a_{i+σ⁻¹(j)})`.
pub fn partial_shuffle_terms(i: usize, r: usize, t: &[usize]) -> FormalSum {
    let j = t.len() - i;
    (0..j)
        .combinations(r)
        .map(|first| {
            // σ sends 1..r onto `first` and r+1..j onto the rest, both increasingly
            let mut inverse = vec![0; j];
            let mut rest = 0;
            for p in 0..j {
                inverse[p] = match first.iter().position(|&q| q == p) {
                    Some(k) => k,
                    None => {
                        rest += 1;
                        r + rest - 1
                    }
                };
            }
            let inversions: usize = first.iter().enumerate().map(|(k, &q)| q - k).sum();
            let mut tuple = t[..i].to_vec();
            tuple.extend(inverse.iter().map(|&s| t[i + s]));
            (tuple, sign(inversions))
        })
        .collect()
}

/// One partial-shuffle sum per tuple of `A^{×(i+j)}`, in lexicographic order.
pub fn partial_shuffles(i: usize, j: usize, r: usize, order: usize) -> Result<Vec<FormalSum>> {
    if r == 0 || r >= j {
        return Err(Error::Parameter(format!("shuffle split r = {r} needs 1 ≤ r ≤ j−1 with j = {j}")));
    }
    Ok(TupleSpace::new(order, i + j).iter().map(|t| partial_shuffle_terms(i, r, &t)).collect())
}

/// All partial shuffles at `(i, j)` as columns of `ℤ^{|A|^{i+j}}`.
pub fn shuffle_generators(order: usize, i: usize, j: usize) -> IntegerMatrix {
    let space = TupleSpace::new(order, i + j);
    let mut columns = Vec::new();
    for r in 1..j {
        for t in space.iter() {
            let col = space.linearize(&partial_shuffle_terms(i, r, &t));
            if !col.is_empty() {
                columns.push(col);
            }
        }
    }
    IntegerMatrix::from_sparse_columns(space.len(), &columns)
}

fn degenerate_columns(order: usize, n: usize, zero: usize) -> IntegerMatrix {
    let space = TupleSpace::new(order, n);
    let columns: Vec<_> = space
        .iter()
        .enumerate()
        .filter(|(_, t)| t.contains(&zero))
        .map(|(k, _)| vec![(k, 1)])
        .collect();
    IntegerMatrix::from_sparse_columns(space.len(), &columns)
}

/// Rows: the partial shuffles at `(i, j)`, plus the degenerate tuples when
/// normalizing. `C^{i,j}` is the kernel of this matrix.
pub fn shuffle_constraint_matrix(lcs: &LinearCycleSet, i: usize, j: usize, normalized: bool) -> Result<IntegerMatrix> {
    check_position(i, j)?;
    let mut gens = shuffle_generators(lcs.order(), i, j);
    if normalized {
        gens = gens.hstack(&degenerate_columns(lcs.order(), i + j, lcs.zero()))?;
    }
    Ok(gens.transpose())
}

fn check_position(i: usize, j: usize) -> Result<()> {
    if j == 0 {
        return Err(Error::Parameter(format!("bidegree ({i},{j}) needs j ≥ 1")));
    }
    Ok(())
}

fn merge(t: &[usize], k: usize, lcs: &LinearCycleSet) -> Vec<usize> {
    // ∂_{n;k}, 1 ≤ k ≤ n−1
    let mut out = t[..k - 1].to_vec();
    out.push(lcs.add(t[k - 1], t[k]));
    out.extend_from_slice(&t[k + 1..]);
    out
}

fn omit(t: &[usize], k: usize) -> Vec<usize> {
    // ∂'_{n;k}, 1 ≤ k ≤ n
    let mut out = t[..k - 1].to_vec();
    out.extend_from_slice(&t[k..]);
    out
}

/// Terms of `∂^h_{i,j}(a_1, …, a_{i+j})`.
pub fn dh_terms(lcs: &LinearCycleSet, i: usize, t: &[usize]) -> FormalSum {
    let mut out = vec![(t[1..].iter().map(|&b| lcs.dot(t[0], b)).collect(), 1)];
    for k in 1..i {
        out.push((merge(t, k, lcs), sign(k)));
    }
    out.push((omit(t, i), sign(i)));
    out
}

/// Terms of `∂^v_{i,j}(a_1, …, a_{i+j})`.
pub fn dv_terms(lcs: &LinearCycleSet, i: usize, t: &[usize]) -> FormalSum {
    let j = t.len() - i;
    let mut out = vec![(omit(t, i + 1), -1)];
    for k in 1..j {
        out.push((merge(t, i + k, lcs), -sign(k)));
    }
    out.push((omit(t, i + j), -sign(j)));
    out
}

/// `∂^h_{i,j}: A^{×(i+j)} → A^{×(i+j−1)}`, defined for `i ≥ 1`, `j ≥ 1`.
pub fn dh_matrix(lcs: &LinearCycleSet, i: usize, j: usize) -> Result<IntegerMatrix> {
    if i < 1 || j < 1 {
        return Err(Error::Parameter(format!("∂^h is defined for i ≥ 1, j ≥ 1, got ({i},{j})")));
    }
    Ok(matrix_from_terms(lcs.order(), i + j, |t| dh_terms(lcs, i, t)))
}

/// `∂^v_{i,j}: A^{×(i+j)} → A^{×(i+j−1)}`, defined for `i ≥ 0`, `j ≥ 2`.
pub fn dv_matrix(lcs: &LinearCycleSet, i: usize, j: usize) -> Result<IntegerMatrix> {
    if j < 2 {
        return Err(Error::Parameter(format!("∂^v is defined for i ≥ 0, j ≥ 2, got ({i},{j})")));
    }
    Ok(matrix_from_terms(lcs.order(), i + j, |t| dv_terms(lcs, i, t)))
}

/// Positions `(i, j)` of total degree `n`, in block order (decreasing `i`).
pub fn positions(n: usize) -> Vec<(usize, usize)> {
    (0..n).rev().map(|i| (i, n - i)).collect()
}

/// Matrix identities of the bicomplex and the sub-bicomplexes, for all
/// positions with `i + j ≤ max_n`.
pub fn bicomplex_identity_check(lcs: &LinearCycleSet, max_n: usize, budget: &Budget) -> Result<Vec<IdentityCheck>> {
    budget.check_basis(lcs.order(), max_n)?;
    let order = lcs.order();
    let zero = lcs.zero();
    let mut out = Vec::new();
    let mut record = |name: &str, i: usize, j: usize, missing: Option<usize>| {
        out.push(IdentityCheck {
            name: name.to_string(),
            position: format!("({i},{j})"),
            holds: missing.is_none(),
            witness: missing,
        });
    };
    let first_nonzero = |m: &IntegerMatrix| (0..m.cols()).find(|&c| m.column(c).iter().any(|x| !x.is_zero()));
    for n in 1..=max_n {
        for (i, j) in positions(n) {
            if i >= 2 {
                let hh = dh_matrix(lcs, i - 1, j)?.checked_mul(&dh_matrix(lcs, i, j)?)?;
                record("∂h∂h = 0", i, j, first_nonzero(&hh));
            }
            if j >= 3 {
                let vv = dv_matrix(lcs, i, j - 1)?.checked_mul(&dv_matrix(lcs, i, j)?)?;
                record("∂v∂v = 0", i, j, first_nonzero(&vv));
            }
            if i >= 1 && j >= 2 {
                let left = dh_matrix(lcs, i, j - 1)?.checked_mul(&dv_matrix(lcs, i, j)?)?;
                let right = dv_matrix(lcs, i - 1, j)?.checked_mul(&dh_matrix(lcs, i, j)?)?;
                record("∂h∂v = ∂v∂h", i, j, first_nonzero(&left.checked_sub(&right)?));
            }
            let shuffles = shuffle_generators(order, i, j);
            let degenerate = degenerate_columns(order, n, zero);
            let targets_degenerate = degenerate_columns(order, n - 1, zero);
            if i >= 1 {
                let dh = dh_matrix(lcs, i, j)?;
                let target = shuffle_generators(order, i - 1, j);
                record("∂h preserves shuffles", i, j, outside_span(&dh.checked_mul(&shuffles)?, &target)?);
                record(
                    "∂h preserves degenerate tuples",
                    i,
                    j,
                    outside_span(&dh.checked_mul(&degenerate)?, &targets_degenerate)?,
                );
            }
            if j >= 2 {
                let dv = dv_matrix(lcs, i, j)?;
                let target = shuffle_generators(order, i, j - 1);
                record("∂v preserves shuffles", i, j, outside_span(&dv.checked_mul(&shuffles)?, &target)?);
                record(
                    "∂v preserves degenerate tuples",
                    i,
                    j,
                    outside_span(&dv.checked_mul(&degenerate)?, &targets_degenerate)?,
                );
            }
        }
    }
    Ok(out)
}

/// The first row reproduces the reduced complex, and the first column the
/// reduced complex of the trivial action up to linearity relations.
pub fn row_column_alignment(lcs: &LinearCycleSet, max_n: usize) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    for i in 1..max_n {
        let equal = dh_matrix(lcs, i, 1)? == reduced_boundary_matrix(lcs, i + 1)?;
        out.push(IdentityCheck {
            name: "∂h at j=1 equals the reduced boundary".into(),
            position: format!("({i},1)"),
            holds: equal,
            witness: None,
        });
    }
    let trivial = LinearCycleSet::assume_valid(lcs.add_table().clone(), BinaryTable::from_fn(lcs.order(), |_, b| b));
    for j in 2..=max_n {
        let minus_dv = dv_matrix(lcs, 0, j)?.scaled(-1);
        let reduced = matrix_from_terms(lcs.order(), j, |t| reduced_boundary_terms(&trivial, t));
        let diff = minus_dv.checked_sub(&reduced)?;
        out.push(IdentityCheck {
            name: "−∂v at i=0 equals the trivial-action boundary modulo linearity".into(),
            position: format!("(0,{j})"),
            holds: outside_span(&diff, &linearity_relations(lcs, j - 1)?)?.is_none(),
            witness: None,
        });
    }
    Ok(out)
}

/// Total coboundary `C^n → C^{n+1}` as a matrix on stacked value vectors.
pub fn total_coboundary_matrix(lcs: &LinearCycleSet, n: usize) -> Result<IntegerMatrix> {
    if n == 0 {
        return Err(Error::Degree("the total complex starts in degree 1".into()));
    }
    let block_in = TupleSpace::new(lcs.order(), n).len();
    let block_out = TupleSpace::new(lcs.order(), n + 1).len();
    let mut d = IntegerMatrix::zeros((n + 1) * block_out, n * block_in);
    let mut place = |row_block: usize, col_block: usize, m: &IntegerMatrix, s: i64| {
        // m maps A^{n+1} → A^n on chains; the cochain map is its transpose
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = &m[(r, c)];
                if !v.is_zero() {
                    d[(row_block * block_out + c, col_block * block_in + r)] += v * s;
                }
            }
        }
    };
    for (p, (i, j)) in positions(n + 1).into_iter().enumerate() {
        if i >= 1 {
            // f_{i−1,j} ∘ ∂^h_{i,j}
            let col = n - i;
            place(p, col, &dh_matrix(lcs, i, j)?, 1);
        }
        if j >= 2 {
            // (−1)^i f_{i,j−1} ∘ ∂^v_{i,j}
            let col = n - 1 - i;
            place(p, col, &dv_matrix(lcs, i, j)?, sign(i));
        }
    }
    Ok(d)
}

/// Block-diagonal generators of `C^n` (or `C^n_Norm`) inside `(ℤ/m)^{n|A|^n}`.
pub fn full_cochain_generators(lcs: &LinearCycleSet, n: usize, normalized: bool, m: u64) -> Result<IntegerMatrix> {
    let blocks: Vec<IntegerMatrix> = positions(n)
        .into_iter()
        .map(|(i, j)| kernel_mod_m(&shuffle_constraint_matrix(lcs, i, j, normalized)?, m))
        .collect::<Result<_>>()?;
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let cols: usize = blocks.iter().map(|b| b.cols()).sum();
    let mut g = IntegerMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in &blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                g[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    Ok(g)
}

fn check_full_budget(lcs: &LinearCycleSet, n: usize, budget: &Budget) -> Result<()> {
    let rank = |d: usize| (d as u128).saturating_mul(crate::budget::pow_u128(lcs.order() as u128, d));
    budget.check_total(format!("total rank of C^{} with |A| = {}", n + 1, lcs.order()), rank(n + 1))
}

/// `H^n(A; ℤ/m)` of the total complex with class generators.
pub fn full_cohomology_mod(
    lcs: &LinearCycleSet,
    n: usize,
    normalized: bool,
    m: u64,
    budget: &Budget,
) -> Result<CyclicDecomposition> {
    if n == 0 {
        return Err(Error::Degree("the total complex starts in degree 1".into()));
    }
    check_full_budget(lcs, n, budget)?;
    let gens = full_cochain_generators(lcs, n, normalized, m)?;
    let d_out = total_coboundary_matrix(lcs, n)?;
    let d_in = if n == 1 {
        IntegerMatrix::zeros(gens.rows(), 0)
    } else {
        total_coboundary_matrix(lcs, n - 1)?.checked_mul(&full_cochain_generators(lcs, n - 1, normalized, m)?)?
    };
    subquotient(&d_out, &d_in, &gens, m)
}

/// Invariant factors of `H^n(A; Γ)` (normalized: `H^n_Norm`).
pub fn full_cohomology(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    n: usize,
    normalized: bool,
    budget: &Budget,
) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Degree("the total complex starts in degree 1".into()));
    }
    check_full_budget(lcs, n, budget)?;
    let parts = factorwise(coeffs, |m| full_cohomology_mod(lcs, n, normalized, m, budget))?;
    Ok(merged_invariants(&parts))
}

/// Pointwise total coboundary of the blocks of a degree-`n` cochain.
pub fn full_coboundary(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, blocks: &[Cochain]) -> Result<Vec<Cochain>> {
    let n = blocks.len();
    if n == 0 {
        return Err(Error::Degree("the total complex starts in degree 1".into()));
    }
    for b in blocks {
        b.check_shape(lcs, coeffs)?;
        if b.degree != n {
            return Err(Error::Shape(format!("block of degree {} in a degree-{n} cochain", b.degree)));
        }
    }
    let block = |i: usize| &blocks[n - 1 - i];
    Ok(positions(n + 1)
        .into_iter()
        .map(|(i, j)| {
            Cochain::from_fn(lcs.order(), n + 1, |t| {
                let mut v = coeffs.zero();
                if i >= 1 {
                    v = coeffs.add(v, block(i - 1).evaluate(coeffs, &dh_terms(lcs, i, t)));
                }
                if j >= 2 {
                    let x = block(i).evaluate(coeffs, &dv_terms(lcs, i, t));
                    v = coeffs.add(v, coeffs.scale(sign(i), x));
                }
                v
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::z4_lcs;

    #[test]
    fn shuffles() {
        assert_eq!(partial_shuffle_terms(0, 1, &[1, 2]), vec![(vec![1, 2], 1), (vec![2, 1], -1)]);
        assert_eq!(partial_shuffle_terms(1, 1, &[1, 2, 3]), vec![(vec![1, 2, 3], 1), (vec![1, 3, 2], -1)]);
        let t = partial_shuffle_terms(0, 1, &[1, 2, 3]);
        assert_eq!(t.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, -1, 1]);
        assert_eq!(t[1].0, vec![2, 1, 3]);
        assert_eq!(t[2].0, vec![2, 3, 1]);
        assert!(partial_shuffles(0, 2, 2, 2).is_err());
        assert!(partial_shuffles(0, 2, 0, 2).is_err());
    }

    #[test]
    fn low_bidegree_differentials() {
        let a = z4_lcs();
        assert_eq!(dh_terms(&a, 1, &[1, 2]), vec![(vec![2], 1), (vec![2], -1)]);
        assert_eq!(dv_terms(&a, 0, &[1, 2]), vec![(vec![2], -1), (vec![3], 1), (vec![1], -1)]);
        assert!(dh_matrix(&a, 0, 2).is_err());
        assert!(dv_matrix(&a, 1, 1).is_err());
    }

    #[test]
    fn bicomplex_on_z4() {
        let a = z4_lcs();
        for c in bicomplex_identity_check(&a, 3, &Budget::default()).unwrap() {
            assert!(c.holds, "{c:?}");
        }
        for c in row_column_alignment(&a, 3).unwrap() {
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn degree_two_coboundary_matches_cocycle_identities() {
        let a = z4_lcs();
        let g2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let f = Cochain::from_fn(4, 2, |t| (t[0] * 3 + t[1]) % 2);
        let g = Cochain::from_fn(4, 2, |t| (t[0] * t[1]) % 2);
        let d = full_coboundary(&a, &g2, &[f.clone(), g.clone()]).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    let e20 = g2.sub(g2.add(f.get(&[a.dot(x, y), a.dot(x, z)]), f.get(&[x, z])), f.get(&[a.add(x, y), z]));
                    assert_eq!(d[0].get(&[x, y, z]), e20);
                    let lhs = g2.sub(g2.sub(f.get(&[x, a.add(y, z)]), f.get(&[x, y])), f.get(&[x, z]));
                    let rhs = g2.sub(g.get(&[a.dot(x, y), a.dot(x, z)]), g.get(&[y, z]));
                    assert_eq!(d[1].get(&[x, y, z]), g2.sub(rhs, lhs));
                    let e22 = g2.sub(
                        g2.add(g.get(&[y, z]), g.get(&[x, a.add(y, z)])),
                        g2.add(g.get(&[x, y]), g.get(&[a.add(x, y), z])),
                    );
                    assert_eq!(d[2].get(&[x, y, z]), e22);
                }
            }
        }
        // matrix and pointwise coboundaries agree
        let m = total_coboundary_matrix(&a, 2).unwrap();
        let v: Vec<num_bigint::BigInt> = f.values.iter().chain(&g.values).map(|&x| x.into()).collect();
        let w = m.mul_vec(&v);
        let pointwise: Vec<usize> = d.iter().flat_map(|c| c.values.clone()).collect();
        for (x, y) in w.iter().zip(pointwise) {
            assert_eq!(x.mod_floor(&2.into()), y.into());
        }
    }

    #[test]
    fn trivial_coefficients() {
        let a = z4_lcs();
        for n in 1..=2 {
            assert!(full_cohomology(&a, &FiniteAbelianGroup::trivial(), n, true, &Budget::default())
                .unwrap()
                .is_empty());
        }
    }

    use num_integer::Integer;
}
