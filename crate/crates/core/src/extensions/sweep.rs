use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_identities, raw_tables, TwoCocycle};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::FiniteAbelianGroup;
use crate::structure::{is_lcs, LinearCycleSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    /// `samples` pairs drawn from `ChaCha8(seed)`, stream `i` for sample `i`.
    Random { samples: u64, seed: u64 },
}

/// Outcome of checking "cocycle ⟺ the built tables are a linear cycle set".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub checked: u64,
    pub cocycles: u64,
    pub discrepancies: u64,
    /// Index of the first disagreeing map in the sweep order.
    pub first_discrepancy: Option<u64>,
}

const EXHAUSTIVE_LIMIT: u128 = 1 << 24;

fn decode(order: usize, g: u64, mut code: u128) -> Cochain {
    let values = (0..order * order)
        .map(|_| {
            let v = (code % g as u128) as usize;
            code /= g as u128;
            v
        })
        .collect();
    Cochain::new(order, 2, values).expect("shape")
}

fn random_cochain(order: usize, g: u64, rng: &mut ChaCha8Rng) -> Cochain {
    let values = (0..order * order).map(|_| rng.gen_range(0..g) as usize).collect();
    Cochain::new(order, 2, values).expect("shape")
}

fn run(space: u64, exec: Execution, test: impl Fn(u64) -> (bool, bool) + Sync + Send) -> SweepReport {
    let results = exec.map(0..space, |i| {
        let (cocycle, structure) = test(i);
        (cocycle, cocycle != structure)
    });
    SweepReport {
        checked: space,
        cocycles: results.iter().filter(|r| r.0).count() as u64,
        discrepancies: results.iter().filter(|r| r.1).count() as u64,
        first_discrepancy: results.iter().position(|r| r.1).map(|p| p as u64),
    }
}

fn space_size(order: usize, g: u64, copies: usize) -> Result<u64> {
    let n = crate::budget::pow_u128(g as u128, copies * order * order);
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::Budget {
            what: format!("|Γ|^({copies}·|A|²) = {g}^{}", copies * order * order),
            needed: n,
            limit: EXHAUSTIVE_LIMIT,
            hint: "; use a random sweep instead",
        });
    }
    Ok(n as u64)
}

/// Compare the reduced cocycle identities with the axioms of `Γ ×_f A`.
pub fn lemma_sweep_reduced(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    mode: SweepMode,
    exec: Execution,
) -> Result<SweepReport> {
    let (n, g) = (lcs.order(), coeffs.order());
    let test = |f: Cochain| {
        let c = TwoCocycle::reduced(f);
        let cocycle = check_identities(lcs, coeffs, &c).expect("shape").valid;
        let (add, dot) = raw_tables(lcs, coeffs, &c);
        (cocycle, is_lcs(&add, &dot))
    };
    Ok(match mode {
        SweepMode::Exhaustive => run(space_size(n, g, 1)?, exec, |i| test(decode(n, g, i as u128))),
        SweepMode::Random { samples, seed } => run(samples, exec, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            test(random_cochain(n, g, &mut rng))
        }),
    })
}

/// Compare the full cocycle identities with the axioms of `Γ ×_{f,g} A`.
pub fn lemma_sweep_full(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    mode: SweepMode,
    exec: Execution,
) -> Result<SweepReport> {
    let (n, g) = (lcs.order(), coeffs.order());
    let test = |f: Cochain, gg: Cochain| {
        let c = TwoCocycle::full(f, gg);
        let cocycle = check_identities(lcs, coeffs, &c).expect("shape").valid;
        let (add, dot) = raw_tables(lcs, coeffs, &c);
        (cocycle, is_lcs(&add, &dot))
    };
    Ok(match mode {
        SweepMode::Exhaustive => {
            let half = crate::budget::pow_u128(g as u128, n * n);
            run(space_size(n, g, 2)?, exec, |i| {
                let i = i as u128;
                test(decode(n, g, i % half), decode(n, g, i / half))
            })
        }
        SweepMode::Random { samples, seed } => run(samples, exec, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let f = random_cochain(n, g, &mut rng);
            test(f, random_cochain(n, g, &mut rng))
        }),
    })
}
