use num_bigint::BigInt;
use serde::Serialize;

use super::triple::{extract_cocycle, normalized_set_section, ExtensionTriple};
use super::{Flavor, TwoCocycle};
use crate::budget::Budget;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::FiniteAbelianGroup;
use crate::matrix::IntegerMatrix;
use crate::modular::solve_mod_m;
use crate::reduced::reduced_cochain_generators;
use crate::structure::LinearCycleSet;

/// `∂θ = (θ(a·b) − θ(b), θ(a+b) − θ(a) − θ(b))`.
pub fn coboundary_pair(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, theta: &Cochain) -> TwoCocycle {
    let t = |a: usize| theta.get(&[a]);
    let n = lcs.order();
    let f = Cochain::from_fn(n, 2, |x| coeffs.sub(t(lcs.dot(x[0], x[1])), t(x[1])));
    let g = Cochain::from_fn(n, 2, |x| coeffs.sub(t(lcs.add(x[0], x[1])), coeffs.add(t(x[0]), t(x[1]))));
    TwoCocycle::full(f, g)
}

fn flavor_of(c1: &TwoCocycle, c2: &TwoCocycle) -> Flavor {
    if c1.g.is_some() || c2.g.is_some() {
        Flavor::Full
    } else {
        Flavor::Reduced
    }
}

fn matches(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, c1: &TwoCocycle, c2: &TwoCocycle, theta: &[usize], flavor: Flavor) -> bool {
    let n = lcs.order();
    let (g1, g2) = (c1.g_or_zero(), c2.g_or_zero());
    for a in 0..n {
        for b in 0..n {
            let df = coeffs.sub(c2.f.get(&[a, b]), c1.f.get(&[a, b]));
            if df != coeffs.sub(theta[lcs.dot(a, b)], theta[b]) {
                return false;
            }
            if flavor == Flavor::Full {
                let dg = coeffs.sub(g2.get(&[a, b]), g1.get(&[a, b]));
                if dg != coeffs.sub(theta[lcs.add(a, b)], coeffs.add(theta[a], theta[b])) {
                    return false;
                }
            }
        }
    }
    true
}

fn check_pair(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, c1: &TwoCocycle, c2: &TwoCocycle) -> Result<()> {
    c1.check_shape(lcs, coeffs)?;
    c2.check_shape(lcs, coeffs)
}

/// Some θ with `c2 − c1 = ∂θ`, by exhaustive search over `Γ^A`.
///
/// Reduced cocycles only admit additive θ; `normalized` restricts the full
/// flavor to `θ(0) = 0`.
pub fn cocycles_cohomologous(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    c1: &TwoCocycle,
    c2: &TwoCocycle,
    normalized: bool,
    budget: &Budget,
    exec: Execution,
) -> Result<Option<Cochain>> {
    check_pair(lcs, coeffs, c1, c2)?;
    let flavor = flavor_of(c1, c2);
    let g = coeffs.order();
    let n = lcs.order();
    budget.check_theta(g, n)?;
    let zero = lcs.zero();
    let fix_zero = normalized || flavor == Flavor::Reduced;
    let free: Vec<usize> = (0..n).filter(|&a| !(fix_zero && a == zero)).collect();
    let space = crate::budget::pow_u128(g as u128, free.len()) as u64;
    Ok(exec.find_first(0..space, |mut code| {
        let mut theta = vec![0usize; n];
        for &a in &free {
            theta[a] = (code % g) as usize;
            code /= g;
        }
        if flavor == Flavor::Reduced
            && !(0..n).all(|a| (0..n).all(|b| theta[lcs.add(a, b)] == coeffs.add(theta[a], theta[b])))
        {
            return None;
        }
        matches(lcs, coeffs, c1, c2, &theta, flavor).then(|| Cochain::new(n, 1, theta).expect("shape"))
    }))
}

/// Same question as [`cocycles_cohomologous`], answered by solving
/// `∂(G·y) ≡ c2 − c1` modulo each cyclic factor of Γ.
pub fn cocycles_cohomologous_solver(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    c1: &TwoCocycle,
    c2: &TwoCocycle,
    normalized: bool,
) -> Result<Option<Cochain>> {
    check_pair(lcs, coeffs, c1, c2)?;
    let flavor = flavor_of(c1, c2);
    let n = lcs.order();
    let zero = lcs.zero();
    let mut d_rows: Vec<Vec<(usize, i64)>> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            d_rows.push(vec![(lcs.dot(a, b), 1), (b, -1)]);
        }
    }
    if flavor == Flavor::Full {
        for a in 0..n {
            for b in 0..n {
                d_rows.push(vec![(lcs.add(a, b), 1), (a, -1), (b, -1)]);
            }
        }
    }
    let d = IntegerMatrix::from_sparse_rows(n, &d_rows);
    let mut parts = Vec::new();
    for (k, &m) in coeffs.factors().iter().enumerate() {
        let gens = match flavor {
            Flavor::Reduced => reduced_cochain_generators(lcs, 1, false, m)?,
            Flavor::Full if normalized => {
                let cols: Vec<Vec<(usize, i64)>> = (0..n).filter(|&a| a != zero).map(|a| vec![(a, 1)]).collect();
                IntegerMatrix::from_sparse_columns(n, &cols)
            }
            Flavor::Full => IntegerMatrix::identity(n),
        };
        let rhs: Vec<u64> = {
            let c2v = c2.stacked_component(coeffs, k, flavor);
            let c1v = c1.stacked_component(coeffs, k, flavor);
            c2v.iter().zip(&c1v).map(|(&x, &y)| (x + m - y) % m).collect()
        };
        let y = match solve_mod_m(&d.checked_mul(&gens)?, &rhs, m)? {
            Some(y) => y,
            None => return Ok(None),
        };
        let y: Vec<BigInt> = y.into_iter().map(BigInt::from).collect();
        let theta = gens.mul_vec(&y);
        let m_big = BigInt::from(m);
        parts.push(
            theta
                .iter()
                .map(|v| {
                    let r = ((v % &m_big) + &m_big) % &m_big;
                    u64::try_from(r).expect("residue fits")
                })
                .collect::<Vec<u64>>(),
        );
    }
    let theta = Cochain::from_components(n, 1, coeffs, &parts);
    if !matches(lcs, coeffs, c1, c2, &theta.values, flavor) {
        return Err(Error::Inconsistent("solver returned a θ that does not bound the difference".into()));
    }
    Ok(Some(theta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecisionMethod {
    Search,
    Solver,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub theta: Option<Cochain>,
    /// `φ: E₁ → E₂` with `φι₁ = ι₂` and `π₂φ = π₁`, as a table on `E₁`.
    pub isomorphism: Option<Vec<usize>>,
    pub method: DecisionMethod,
}

/// Decide whether two extensions of `A` by `Γ` are equivalent, and if so
/// produce the isomorphism.
pub fn extensions_equivalent(
    e1: &ExtensionTriple,
    e2: &ExtensionTriple,
    budget: &Budget,
    exec: Execution,
) -> Result<EquivalenceVerdict> {
    e1.validate()?;
    e2.validate()?;
    if e1.coeffs != e2.coeffs {
        return Err(Error::Shape(format!("coefficients differ: {} vs {}", e1.coeffs, e2.coeffs)));
    }
    if e1.base != e2.base {
        return Err(Error::Shape("the extensions have different quotients".into()));
    }
    let (lcs, coeffs) = (&e1.base, &e1.coeffs);
    let s1 = normalized_set_section(e1);
    let s2 = normalized_set_section(e2);
    let c1 = extract_cocycle(e1, &s1, Flavor::Full)?;
    let c2 = extract_cocycle(e2, &s2, Flavor::Full)?;
    let (theta, method) = match cocycles_cohomologous(lcs, coeffs, &c1, &c2, true, budget, exec) {
        Ok(t) => (t, DecisionMethod::Search),
        Err(Error::Budget { .. }) => (cocycles_cohomologous_solver(lcs, coeffs, &c1, &c2, true)?, DecisionMethod::Solver),
        Err(e) => return Err(e),
    };
    let Some(theta) = theta else {
        return Ok(EquivalenceVerdict {
            equivalent: false,
            theta: None,
            isomorphism: None,
            method,
        });
    };
    let inv1 = e1.iota_inverse();
    let phi: Vec<usize> = (0..e1.total.order())
        .map(|x| {
            let a = e1.pi[x];
            let gamma = inv1[e1.total.sub(x, s1[a])].expect("x − s(π x) lies in ker π");
            e2.total.add(e2.iota[coeffs.add(gamma, theta.get(&[a]))], s2[a])
        })
        .collect();
    verify_isomorphism(e1, e2, &phi)?;
    Ok(EquivalenceVerdict {
        equivalent: true,
        theta: Some(theta),
        isomorphism: Some(phi),
        method,
    })
}

fn verify_isomorphism(e1: &ExtensionTriple, e2: &ExtensionTriple, phi: &[usize]) -> Result<()> {
    let fail = |what: String| Err(Error::Inconsistent(format!("constructed map is not an equivalence: {what}")));
    let n = phi.len();
    let mut seen = vec![false; n];
    if phi.iter().any(|&y| std::mem::replace(&mut seen[y], true)) {
        return fail("not bijective".into());
    }
    for x in 0..n {
        if e2.pi[phi[x]] != e1.pi[x] {
            return fail(format!("π₂φ ≠ π₁ at {x}"));
        }
        for y in 0..n {
            if phi[e1.total.add(x, y)] != e2.total.add(phi[x], phi[y])
                || phi[e1.total.dot(x, y)] != e2.total.dot(phi[x], phi[y])
            {
                return fail(format!("not a morphism at ({x}, {y})"));
            }
        }
    }
    if let Some(g) = (0..e1.iota.len()).find(|&g| phi[e1.iota[g]] != e2.iota[g]) {
        return fail(format!("φι₁ ≠ ι₂ at {g}"));
    }
    Ok(())
}
