//! The reduced complex of a linear cycle set, its normalized variant, the
//! cycle-set complex and the antisymmetrization comparison map.
//!
//! Chains live in the free module on `A^{×k}` modulo the linearity relations
//! `(…, a+a') − (…, a) − (…, a')` (and the degenerate tuples when
//! normalizing). Matrices are free-level lifts; column `t` holds the image of
//! the basis tuple `t`.

use itertools::Itertools;
use serde::Serialize;

use crate::budget::Budget;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::group::{normalize_invariants, FiniteAbelianGroup};
use crate::lattice::Lattice;
use crate::matrix::IntegerMatrix;
use crate::modular::{kernel_mod_m, submodule_quotient, subquotient, CyclicDecomposition};
use crate::structure::LinearCycleSet;
use crate::tuples::{FormalSum, TupleSpace};

fn check_degree(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Degree("degrees start at 1".into()));
    }
    Ok(())
}

/// Column-wise matrix of a map `A^{×k} → ℤ[A^{×(k−1)}]`; degree 1 maps to the
/// single empty tuple.
pub(crate) fn matrix_from_terms(
    order: usize,
    k: usize,
    terms: impl Fn(&[usize]) -> FormalSum,
) -> IntegerMatrix {
    let source = TupleSpace::new(order, k);
    let target = TupleSpace::new(order, k - 1);
    let columns: Vec<Vec<(usize, i64)>> = source.iter().map(|t| target.linearize(&terms(&t))).collect();
    IntegerMatrix::from_sparse_columns(target.len(), &columns)
}

/// Signed terms of `∂_k(a_1, …, a_k)`.
pub fn reduced_boundary_terms(lcs: &LinearCycleSet, t: &[usize]) -> FormalSum {
    let n = t.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(n);
    out.push((t[1..].iter().map(|&b| lcs.dot(t[0], b)).collect(), 1));
    for i in 1..=n - 2 {
        let mut merged = t[..i - 1].to_vec();
        merged.push(lcs.add(t[i - 1], t[i]));
        merged.extend_from_slice(&t[i + 1..]);
        out.push((merged, sign(i)));
    }
    let mut last = t[..n - 2].to_vec();
    last.push(t[n - 1]);
    out.push((last, sign(n - 1)));
    out
}

pub(crate) fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `∂_k` as an `|A|^{k−1} × |A|^k` matrix; `∂_1 = 0`.
pub fn reduced_boundary_matrix(lcs: &LinearCycleSet, k: usize) -> Result<IntegerMatrix> {
    check_degree(k)?;
    Ok(matrix_from_terms(lcs.order(), k, |t| reduced_boundary_terms(lcs, t)))
}

/// Generators `(p, a+a') − (p, a) − (p, a')` of the linearity relations in
/// `ℤ^{|A|^k}`, as columns.
pub fn linearity_relations(lcs: &LinearCycleSet, k: usize) -> Result<IntegerMatrix> {
    check_degree(k)?;
    let n = lcs.order();
    let space = TupleSpace::new(n, k);
    let zero = lcs.zero();
    let mut columns = Vec::new();
    for p in TupleSpace::new(n, k - 1).iter() {
        for a in 0..n {
            for b in a..n {
                if a == zero && b != zero {
                    continue;
                }
                let with = |x: usize| {
                    let mut t = p.clone();
                    t.push(x);
                    t
                };
                let col = space.linearize(&vec![(with(lcs.add(a, b)), 1), (with(a), -1), (with(b), -1)]);
                if !col.is_empty() {
                    columns.push(col);
                }
            }
        }
    }
    Ok(IntegerMatrix::from_sparse_columns(space.len(), &columns))
}

/// Basis vectors of the tuples with some coordinate equal to 0, as columns.
pub fn degenerate_generators(lcs: &LinearCycleSet, k: usize) -> Result<IntegerMatrix> {
    check_degree(k)?;
    let space = TupleSpace::new(lcs.order(), k);
    let zero = lcs.zero();
    let columns: Vec<Vec<(usize, i64)>> = space
        .iter()
        .enumerate()
        .filter(|(_, t)| t.contains(&zero))
        .map(|(i, _)| vec![(i, 1)])
        .collect();
    Ok(IntegerMatrix::from_sparse_columns(space.len(), &columns))
}

/// Lattice of chains that vanish in `RedC_k` (or `RedC^Norm_k`).
pub fn relation_generators(lcs: &LinearCycleSet, k: usize, normalized: bool) -> Result<IntegerMatrix> {
    let rel = linearity_relations(lcs, k)?;
    if normalized {
        rel.hstack(&degenerate_generators(lcs, k)?)
    } else {
        Ok(rel)
    }
}

/// Columns generating `RedC^k` (or its normalized subgroup) inside `(ℤ/m)^{|A|^k}`.
pub fn reduced_cochain_generators(lcs: &LinearCycleSet, k: usize, normalized: bool, m: u64) -> Result<IntegerMatrix> {
    let constraints = relation_generators(lcs, k, normalized)?.transpose();
    kernel_mod_m(&constraints, m)
}

/// `∂^k f = f ∘ ∂_{k+1}` evaluated pointwise.
pub fn reduced_coboundary(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    f: &Cochain,
    check_membership: bool,
) -> Result<Cochain> {
    f.check_shape(lcs, coeffs)?;
    if check_membership {
        if let Some(w) = f.linearity_witness(lcs, coeffs) {
            return Err(Error::NotReducedCochain(format!(
                "additivity in the last argument fails at {w:?}"
            )));
        }
    }
    Ok(Cochain::from_fn(lcs.order(), f.degree + 1, |t| {
        f.evaluate(coeffs, &reduced_boundary_terms(lcs, t))
    }))
}

/// Run `per_factor` for every cyclic factor and merge into invariant factors.
pub(crate) fn factorwise(
    coeffs: &FiniteAbelianGroup,
    per_factor: impl Fn(u64) -> Result<CyclicDecomposition>,
) -> Result<Vec<CyclicDecomposition>> {
    coeffs.factors().iter().map(|&m| per_factor(m)).collect()
}

pub(crate) fn merged_invariants(parts: &[CyclicDecomposition]) -> Vec<u64> {
    let orders: Vec<u64> = parts.iter().flat_map(|p| p.orders.iter().copied()).collect();
    normalize_invariants(&orders)
}

/// `RedH^k(A; ℤ/m)` with class generators in `(ℤ/m)^{|A|^k}`.
pub fn reduced_cohomology_mod(
    lcs: &LinearCycleSet,
    k: usize,
    normalized: bool,
    m: u64,
    budget: &Budget,
) -> Result<CyclicDecomposition> {
    check_degree(k)?;
    budget.check_basis(lcs.order(), k + 1)?;
    let gens = reduced_cochain_generators(lcs, k, normalized, m)?;
    let d_out = reduced_boundary_matrix(lcs, k + 1)?.transpose();
    let d_in = if k == 1 {
        IntegerMatrix::zeros(gens.rows(), 0)
    } else {
        let prev = reduced_cochain_generators(lcs, k - 1, normalized, m)?;
        reduced_boundary_matrix(lcs, k)?.transpose().checked_mul(&prev)?
    };
    subquotient(&d_out, &d_in, &gens, m)
}

/// Invariant factors of `RedH^k(A; Γ)` (normalized: `RedH^k_Norm`).
pub fn reduced_cohomology(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    k: usize,
    normalized: bool,
    budget: &Budget,
) -> Result<Vec<u64>> {
    check_degree(k)?;
    budget.check_basis(lcs.order(), k + 1)?;
    let parts = factorwise(coeffs, |m| reduced_cohomology_mod(lcs, k, normalized, m, budget))?;
    Ok(merged_invariants(&parts))
}

/// Invariant factors of the cocycle group `ker ∂^k ⊆ RedC^k(A; Γ)`.
pub fn reduced_cocycle_invariants(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    k: usize,
    normalized: bool,
    budget: &Budget,
) -> Result<Vec<u64>> {
    check_degree(k)?;
    budget.check_basis(lcs.order(), k + 1)?;
    let parts = factorwise(coeffs, |m| {
        let gens = reduced_cochain_generators(lcs, k, normalized, m)?;
        let d_out = reduced_boundary_matrix(lcs, k + 1)?.transpose();
        subquotient(&d_out, &IntegerMatrix::zeros(gens.rows(), 0), &gens, m)
    })?;
    Ok(merged_invariants(&parts))
}

/// Columns generating the reduced `k`-cocycles with values in `ℤ/m`.
pub fn reduced_cocycle_generators(lcs: &LinearCycleSet, k: usize, normalized: bool, m: u64) -> Result<IntegerMatrix> {
    let gens = reduced_cochain_generators(lcs, k, normalized, m)?;
    let d_out = reduced_boundary_matrix(lcs, k + 1)?.transpose();
    let coords = kernel_mod_m(&d_out.checked_mul(&gens)?, m)?;
    Ok(gens.checked_mul(&coords)?.reduce_mod(m))
}

/// Invariant factors of `RedH_k(A; Γ)` computed on the presented quotient.
pub fn reduced_homology(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    k: usize,
    normalized: bool,
    budget: &Budget,
) -> Result<Vec<u64>> {
    check_degree(k)?;
    budget.check_basis(lcs.order(), k + 1)?;
    let parts = factorwise(coeffs, |m| reduced_homology_mod(lcs, k, normalized, m))?;
    Ok(merged_invariants(&parts))
}

fn reduced_homology_mod(lcs: &LinearCycleSet, k: usize, normalized: bool, m: u64) -> Result<CyclicDecomposition> {
    let rank = TupleSpace::new(lcs.order(), k).len();
    let cycles = if k == 1 {
        IntegerMatrix::identity(rank)
    } else {
        // chains whose boundary vanishes modulo the relations one degree down
        let d = reduced_boundary_matrix(lcs, k)?;
        let rel = relation_generators(lcs, k - 1, normalized)?;
        kernel_mod_m(&d.hstack(&rel.scaled(-1))?, m)?.select_rows(0..rank)
    };
    let boundaries = reduced_boundary_matrix(lcs, k + 1)?.hstack(&relation_generators(lcs, k, normalized)?)?;
    submodule_quotient(&cycles, &boundaries, m)
}

/// Signed terms of the cycle-set boundary `∂^CS_k(a_1, …, a_k)`.
pub fn cs_boundary_terms(lcs: &LinearCycleSet, t: &[usize]) -> FormalSum {
    let n = t.len();
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let s = sign(i);
        let translated = (0..n).filter(|&j| j != i).map(|j| lcs.dot(t[i], t[j])).collect();
        let omitted = (0..n).filter(|&j| j != i).map(|j| t[j]).collect();
        out.push((translated, s));
        out.push((omitted, -s));
    }
    out
}

/// `∂^CS_k` as an `|A|^{k−1} × |A|^k` matrix; `∂^CS_1 = 0`.
pub fn cs_boundary_matrix(lcs: &LinearCycleSet, k: usize) -> Result<IntegerMatrix> {
    check_degree(k)?;
    Ok(matrix_from_terms(lcs.order(), k, |t| cs_boundary_terms(lcs, t)))
}

/// `∂^k_CS`, acting on value vectors: the transpose of `∂^CS_{k+1}`.
pub fn cs_coboundary_matrix(lcs: &LinearCycleSet, k: usize) -> Result<IntegerMatrix> {
    check_degree(k)?;
    Ok(cs_boundary_matrix(lcs, k + 1)?.transpose())
}

/// Invariant factors of `H^k_CS(A; Γ)`.
pub fn cs_cohomology(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, k: usize, budget: &Budget) -> Result<Vec<u64>> {
    check_degree(k)?;
    budget.check_basis(lcs.order(), k + 1)?;
    let parts = factorwise(coeffs, |m| {
        let rank = TupleSpace::new(lcs.order(), k).len();
        let d_in = if k == 1 {
            IntegerMatrix::zeros(rank, 0)
        } else {
            cs_coboundary_matrix(lcs, k - 1)?
        };
        subquotient(&cs_coboundary_matrix(lcs, k)?, &d_in, &IntegerMatrix::identity(rank), m)
    })?;
    Ok(merged_invariants(&parts))
}

/// Invariant factors of the cycle-set cocycle group `Z^k_CS(A; Γ)`.
pub fn cs_cocycle_invariants(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, k: usize, budget: &Budget) -> Result<Vec<u64>> {
    check_degree(k)?;
    budget.check_basis(lcs.order(), k + 1)?;
    let parts = factorwise(coeffs, |m| {
        let rank = TupleSpace::new(lcs.order(), k).len();
        subquotient(
            &cs_coboundary_matrix(lcs, k)?,
            &IntegerMatrix::zeros(rank, 0),
            &IntegerMatrix::identity(rank),
            m,
        )
    })?;
    Ok(merged_invariants(&parts))
}

pub(crate) fn permutation_sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    sign(inversions)
}

/// Antisymmetrization of the first `k−1` coordinates, before projection.
pub fn antisymmetrization_terms(t: &[usize]) -> FormalSum {
    let k = t.len();
    if k <= 1 {
        return vec![(t.to_vec(), 1)];
    }
    (0..k - 1)
        .permutations(k - 1)
        .map(|p| {
            let mut tuple: Vec<usize> = p.iter().map(|&i| t[i]).collect();
            tuple.push(t[k - 1]);
            (tuple, permutation_sign(&p))
        })
        .collect()
}

/// Matrix of `S_k` on free bases (`|A|^k × |A|^k`).
pub fn antisymmetrization_matrix(lcs: &LinearCycleSet, k: usize) -> Result<IntegerMatrix> {
    check_degree(k)?;
    let space = TupleSpace::new(lcs.order(), k);
    let columns: Vec<_> = space.iter().map(|t| space.linearize(&antisymmetrization_terms(&t))).collect();
    Ok(IntegerMatrix::from_sparse_columns(space.len(), &columns))
}

/// Outcome of one exact matrix identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub position: String,
    pub holds: bool,
    /// Basis index of a column on which the identity fails.
    pub witness: Option<usize>,
}

impl IdentityCheck {
    fn from_missing(name: &str, position: String, missing: Option<usize>) -> Self {
        IdentityCheck {
            name: name.to_string(),
            position,
            holds: missing.is_none(),
            witness: missing,
        }
    }
}

/// Columns of `m` that are not in the span of `generators`.
pub(crate) fn outside_span(m: &IntegerMatrix, generators: &IntegerMatrix) -> Result<Option<usize>> {
    if m.is_zero() {
        return Ok(None);
    }
    Lattice::new(generators).first_missing_column(m)
}

/// `∂_k S_k − S_{k−1} ∂^CS_k` lies in the linearity relations.
pub fn chain_map_check(lcs: &LinearCycleSet, k: usize) -> Result<IdentityCheck> {
    if k < 2 {
        return Err(Error::Degree("the chain-map identity is checked from degree 2".into()));
    }
    let left = reduced_boundary_matrix(lcs, k)?.checked_mul(&antisymmetrization_matrix(lcs, k)?)?;
    let right = antisymmetrization_matrix(lcs, k - 1)?.checked_mul(&cs_boundary_matrix(lcs, k)?)?;
    let diff = left.checked_sub(&right)?;
    let missing = outside_span(&diff, &linearity_relations(lcs, k - 1)?)?;
    Ok(IdentityCheck::from_missing("chain map ∂S = S∂CS", format!("k={k}"), missing))
}

/// `∂_{k−1} ∂_k ≡ 0`, `∂_k` preserving the linearity relations and the
/// degenerate subgroup, at degree `k ≥ 2`.
pub fn reduced_complex_checks(lcs: &LinearCycleSet, k: usize) -> Result<Vec<IdentityCheck>> {
    if k < 2 {
        return Err(Error::Degree("complex identities are checked from degree 2".into()));
    }
    let pos = format!("k={k}");
    let d = reduced_boundary_matrix(lcs, k)?;
    let mut out = Vec::new();
    let square = reduced_boundary_matrix(lcs, k - 1)?.checked_mul(&d)?;
    let square_missing = if k == 2 {
        (!square.is_zero()).then_some(0)
    } else {
        outside_span(&square, &linearity_relations(lcs, k - 2)?)?
    };
    out.push(IdentityCheck::from_missing("∂∂ = 0", pos.clone(), square_missing));
    let rel_prev = linearity_relations(lcs, k - 1)?;
    let image = d.checked_mul(&linearity_relations(lcs, k)?)?;
    out.push(IdentityCheck::from_missing(
        "∂ preserves linearity relations",
        pos.clone(),
        outside_span(&image, &rel_prev)?,
    ));
    let degen_image = d.checked_mul(&degenerate_generators(lcs, k)?)?;
    out.push(IdentityCheck::from_missing(
        "∂ preserves degenerate chains",
        pos,
        outside_span(&degen_image, &rel_prev.hstack(&degenerate_generators(lcs, k - 1)?)?)?,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{trivial_lcs, z4_lcs};

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2).unwrap()
    }

    #[test]
    fn low_degree_boundaries() {
        let a = z4_lcs();
        assert!(reduced_boundary_matrix(&a, 1).unwrap().is_zero());
        assert!(reduced_boundary_matrix(&a, 0).is_err());
        assert_eq!(reduced_boundary_terms(&a, &[1, 1]), vec![(vec![3], 1), (vec![1], -1)]);
        assert_eq!(
            reduced_boundary_terms(&a, &[1, 2, 3]),
            vec![(vec![2, 1], 1), (vec![3, 3], -1), (vec![1, 3], 1)]
        );
    }

    #[test]
    fn z4_example_invariants() {
        let b = Budget::default();
        assert_eq!(reduced_cohomology(&z4_lcs(), &z2(), 2, false, &b).unwrap(), vec![2, 2]);
        assert_eq!(cs_cocycle_invariants(&z4_lcs(), &z2(), 2, &b).unwrap(), vec![2; 13]);
        assert_eq!(cs_cohomology(&z4_lcs(), &z2(), 2, &b).unwrap(), vec![2; 12]);
    }

    #[test]
    fn trivial_examples() {
        let b = Budget::default();
        let t = trivial_lcs(2);
        assert_eq!(reduced_cohomology(&t, &z2(), 2, false, &b).unwrap(), vec![2]);
        assert_eq!(reduced_cohomology(&t, &z2(), 1, false, &b).unwrap(), vec![2]);
        assert_eq!(reduced_homology(&t, &z2(), 1, false, &b).unwrap(), vec![2]);
        assert_eq!(reduced_homology(&t, &FiniteAbelianGroup::trivial(), 2, false, &b).unwrap(), Vec::<u64>::new());
        // every map A×A → Γ is a cycle-set cocycle of a trivial cycle set
        assert_eq!(cs_cohomology(&t, &z2(), 2, &b).unwrap(), vec![2; 4]);
    }

    #[test]
    fn coboundary_of_linear_map() {
        let a = z4_lcs();
        let g = z2();
        let theta = Cochain::from_fn(4, 1, |t| t[0] % 2);
        let d = reduced_coboundary(&a, &g, &theta, true).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(d.get(&[x, y]), g.sub(theta.get(&[a.dot(x, y)]), theta.get(&[y])));
            }
        }
        let dd = reduced_coboundary(&a, &g, &d, true).unwrap();
        assert!(dd.is_zero());
        let bad = Cochain::from_fn(4, 1, |t| usize::from(t[0] == 1));
        assert!(matches!(reduced_coboundary(&a, &g, &bad, true), Err(Error::NotReducedCochain(_))));
    }

    #[test]
    fn identities_hold() {
        let a = z4_lcs();
        for k in 2..=4 {
            for c in reduced_complex_checks(&a, k).unwrap() {
                assert!(c.holds, "{c:?}");
            }
        }
        for k in 2..=3 {
            assert!(chain_map_check(&a, k).unwrap().holds);
        }
    }

    #[test]
    fn antisymmetrization_small() {
        assert_eq!(antisymmetrization_terms(&[1, 2]), vec![(vec![1, 2], 1)]);
        assert_eq!(antisymmetrization_terms(&[1, 2, 3]), vec![(vec![1, 2, 3], 1), (vec![2, 1, 3], -1)]);
    }
}
