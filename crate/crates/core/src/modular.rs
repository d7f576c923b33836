//! Linear algebra over `ℤ/m`: kernels, cokernels and subquotients of
//! submodules of `(ℤ/m)^N`, all driven by the Smith elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::normalize_invariants;
use crate::matrix::IntegerMatrix;
use crate::snf::{Diagonalizer, Track};

fn check_modulus(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    Ok(())
}

fn to_residue(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits u64")
}

/// Columns generating `{x ∈ (ℤ/m)^N : C·x ≡ 0 (mod m)}`, entries in `[0, m)`.
///
/// The generating set is complete but not necessarily minimal.
pub fn kernel_mod_m(c: &IntegerMatrix, m: u64) -> Result<IntegerMatrix> {
    check_modulus(m)?;
    let n = c.cols();
    let form = Diagonalizer::new(c.clone(), Some(m), Track::V).run();
    let v = form.v.as_ref().expect("tracked");
    let diag = form.diagonal();
    let big_m = BigInt::from(m);
    let mut columns: Vec<Vec<(usize, i64)>> = Vec::new();
    for i in 0..n {
        let step = match diag.get(i) {
            Some(d) => {
                let g = d.gcd(&big_m);
                (&big_m / g).to_u64().unwrap()
            }
            None => 1,
        };
        if step == m {
            continue;
        }
        let col: Vec<(usize, i64)> = (0..n)
            .filter_map(|row| {
                let r = (to_residue(&v[(row, i)], m) as u128 * step as u128 % m as u128) as u64;
                (r != 0).then_some((row, r as i64))
            })
            .collect();
        if !col.is_empty() {
            columns.push(col);
        }
    }
    Ok(IntegerMatrix::from_sparse_columns(n, &columns))
}

/// Cyclic decomposition of `(ℤ/m)^N / span(columns of Y)` with generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    /// Orders of the nontrivial cyclic summands (not chain-normalized).
    pub orders: Vec<u64>,
    /// One generator per summand, as residue vectors of length `N`.
    pub generators: Vec<Vec<u64>>,
}

impl CyclicDecomposition {
    pub fn invariants(&self) -> Vec<u64> {
        normalize_invariants(&self.orders)
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }
}

/// Cokernel of `Y: (ℤ/m)^q → (ℤ/m)^N`.
pub fn cokernel_mod_m(y: &IntegerMatrix, m: u64) -> Result<CyclicDecomposition> {
    check_modulus(m)?;
    let n = y.rows();
    let form = Diagonalizer::new(y.clone(), Some(m), Track::U_INV).run();
    let u_inv = form.u_inv.as_ref().expect("tracked");
    let diag = form.diagonal();
    let big_m = BigInt::from(m);
    let mut orders = Vec::new();
    let mut generators = Vec::new();
    for i in 0..n {
        let order = match diag.get(i) {
            Some(d) => d.gcd(&big_m).to_u64().unwrap(),
            None => m,
        };
        if order == 1 {
            continue;
        }
        orders.push(order);
        generators.push((0..n).map(|row| to_residue(&u_inv[(row, i)], m)).collect());
    }
    Ok(CyclicDecomposition { orders, generators })
}

/// `K / I` for submodules `I ⊆ K ⊆ (ℤ/m)^N` given by generating columns.
///
/// Fails with [`Error::Inconsistent`] when some generator of `I` is not in `K`.
pub fn submodule_quotient(
    big: &IntegerMatrix,
    small: &IntegerMatrix,
    m: u64,
) -> Result<CyclicDecomposition> {
    check_modulus(m)?;
    if big.rows() != small.rows() {
        return Err(Error::Shape(format!(
            "submodules live in different ambient modules ({} vs {} rows)",
            big.rows(),
            small.rows()
        )));
    }
    let n = big.rows();
    let p = big.cols();
    let q = small.cols();
    // K ≅ (ℤ/m)^p / ker(big); K/I ≅ (ℤ/m)^p / big⁻¹(I)
    let joined = big.hstack(&small.scaled(-1))?;
    let solutions = kernel_mod_m(&joined, m)?;
    let pre = solutions.select_rows(0..p);
    let z_part = solutions.select_rows(p..p + q);
    if q > 0 && !cokernel_mod_m(&z_part, m)?.orders.is_empty() {
        return Err(Error::Inconsistent(
            "boundary subgroup is not contained in the cycle subgroup".into(),
        ));
    }
    let coker = cokernel_mod_m(&pre, m)?;
    let generators = coker
        .generators
        .iter()
        .map(|y| {
            (0..n)
                .map(|row| {
                    let mut acc = BigInt::zero();
                    for (k, &yk) in y.iter().enumerate() {
                        if yk != 0 {
                            acc += &big[(row, k)] * yk;
                        }
                    }
                    to_residue(&acc, m)
                })
                .collect()
        })
        .collect();
    Ok(CyclicDecomposition {
        orders: coker.orders,
        generators,
    })
}

/// Full subquotient data `(ker D_out ∩ G) / im D_in` with class generators.
pub fn subquotient(
    d_out: &IntegerMatrix,
    d_in: &IntegerMatrix,
    generators: &IntegerMatrix,
    m: u64,
) -> Result<CyclicDecomposition> {
    check_modulus(m)?;
    let n = generators.rows();
    if d_out.cols() != n {
        return Err(Error::Shape(format!(
            "outgoing map has {} columns but the ambient module has rank {n}",
            d_out.cols()
        )));
    }
    if d_in.rows() != n {
        return Err(Error::Shape(format!(
            "incoming map has {} rows but the ambient module has rank {n}",
            d_in.rows()
        )));
    }
    let restricted = d_out.checked_mul(generators)?.reduce_mod(m);
    let coords = kernel_mod_m(&restricted, m)?;
    let cycles = generators.checked_mul(&coords)?.reduce_mod(m);
    submodule_quotient(&cycles, &d_in.reduce_mod(m), m)
}

/// Invariant factors of `(ker D_out ∩ G) / im D_in` inside `(ℤ/m)^N`.
///
/// `G` is spanned by the columns of `generators`, `im D_in` by the columns of
/// `d_in` (callers compose the incoming map with the generators of the
/// previous degree). The empty list is the trivial group.
pub fn subquotient_invariants(
    d_out: &IntegerMatrix,
    d_in: &IntegerMatrix,
    generators: &IntegerMatrix,
    m: u64,
) -> Result<Vec<u64>> {
    Ok(subquotient(d_out, d_in, generators, m)?.invariants())
}

/// Some `x` with `D·x ≡ c (mod m)`, or `None` when the system is unsolvable.
pub fn solve_mod_m(d: &IntegerMatrix, c: &[u64], m: u64) -> Result<Option<Vec<u64>>> {
    check_modulus(m)?;
    if c.len() != d.rows() {
        return Err(Error::Shape(format!(
            "right-hand side has length {} but the matrix has {} rows",
            c.len(),
            d.rows()
        )));
    }
    let form = Diagonalizer::new(d.clone(), Some(m), Track::U | Track::V).run();
    let u = form.u.as_ref().expect("tracked");
    let v = form.v.as_ref().expect("tracked");
    let rhs: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
    let w: Vec<u64> = u.mul_vec(&rhs).iter().map(|x| to_residue(x, m)).collect();
    let diag: Vec<u64> = form.diagonal().iter().map(|x| to_residue(x, m)).collect();
    let mut y = vec![0u64; d.cols()];
    for (i, &wi) in w.iter().enumerate() {
        let di = diag.get(i).copied().unwrap_or(0);
        let g = di.gcd(&m);
        if wi % g != 0 {
            return Ok(None);
        }
        if di == 0 {
            continue;
        }
        let modulus = m / g;
        let inv = mod_inverse((di / g) % modulus, modulus);
        y[i] = ((wi / g) as u128 * inv as u128 % modulus as u128) as u64;
    }
    let y: Vec<BigInt> = y.into_iter().map(BigInt::from).collect();
    Ok(Some(v.mul_vec(&y).iter().map(|x| to_residue(x, m)).collect()))
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}
