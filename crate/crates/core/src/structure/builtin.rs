use super::{brace_to_lcs, BinaryTable, Brace, LinearCycleSet, Structure};
use crate::error::{Error, Result};

/// `ℤ/n` with `a·b = b`.
pub fn trivial_lcs(n: usize) -> LinearCycleSet {
    assert!(n >= 1, "order must be positive");
    LinearCycleSet::assume_valid(
        BinaryTable::from_fn(n, |a, b| (a + b) % n),
        BinaryTable::from_fn(n, |_, b| b),
    )
}

/// `ℤ/4` with `a∘b = a + b + 2ab`; the inverse is `a⁻¹ = (2a−1)a`.
pub fn z4_brace() -> Brace {
    Brace::assume_valid(
        BinaryTable::from_fn(4, |a, b| (a + b) % 4),
        BinaryTable::from_fn(4, |a, b| (a + b + 2 * a * b) % 4),
    )
}

/// `ℤ/4` with `a·b = (1+2a)b`.
pub fn z4_lcs() -> LinearCycleSet {
    brace_to_lcs(&z4_brace())
}

/// Look up `trivial(n)`, `z4-brace` or `z4-lcs`.
pub fn builtin_structure(name: &str) -> Result<Structure> {
    let name = name.trim();
    match name {
        "z4-brace" => return Ok(Structure::Brace(z4_brace())),
        "z4-lcs" => return Ok(Structure::Lcs(z4_lcs())),
        _ => {}
    }
    let n = name
        .strip_prefix("trivial(")
        .and_then(|rest| rest.strip_suffix(')'))
        .and_then(|n| n.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::UnknownStructure(name.to_string()))?;
    Ok(Structure::Lcs(trivial_lcs(n)))
}
