//! Central extensions `0 → Γ → E → A → 0` built from 2-cocycles, and the
//! way back from an extension to its cocycle class.
//!
//! Elements of `Γ × A` are indexed as `γ·|A| + a`.

mod classify;
mod equivalence;
mod sweep;
mod triple;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::structure::{BinaryTable, Brace, LinearCycleSet};

pub use classify::{classify_extensions, ClassifiedExtension};
pub use equivalence::{
    coboundary_pair, cocycles_cohomologous, cocycles_cohomologous_solver, extensions_equivalent,
    DecisionMethod, EquivalenceVerdict,
};
pub use sweep::{lemma_sweep_full, lemma_sweep_reduced, SweepMode, SweepReport};
pub use triple::{
    extract_cocycle, find_linear_section, normalized_set_section, ExtensionFile, ExtensionTriple,
};

/// Which kind of extension: cycle type (direct-sum addition) or general.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Reduced,
    Full,
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reduced" | "cycle-type" => Ok(Flavor::Reduced),
            "full" | "general" => Ok(Flavor::Full),
            other => Err(Error::Parameter(format!(
                "unknown flavor `{other}` (expected reduced or full)"
            ))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Reduced => "reduced",
            Flavor::Full => "full",
        })
    }
}

/// A degree-2 cocycle candidate `(f, g)`; `g` is absent in the reduced flavor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCocycle {
    pub f: Cochain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Cochain>,
}

impl TwoCocycle {
    pub fn reduced(f: Cochain) -> Self {
        TwoCocycle { f, g: None }
    }

    pub fn full(f: Cochain, g: Cochain) -> Self {
        TwoCocycle { f, g: Some(g) }
    }

    pub fn flavor(&self) -> Flavor {
        if self.g.is_some() {
            Flavor::Full
        } else {
            Flavor::Reduced
        }
    }

    /// The `g` part, zero when absent.
    pub fn g_or_zero(&self) -> Cochain {
        self.g.clone().unwrap_or_else(|| Cochain::zero(self.f.order(), 2))
    }

    pub fn check_shape(&self, lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup) -> Result<()> {
        for c in std::iter::once(&self.f).chain(&self.g) {
            if c.degree != 2 {
                return Err(Error::Degree(format!("expected a 2-cochain, got degree {}", c.degree)));
            }
            c.check_shape(lcs, coeffs)?;
        }
        Ok(())
    }

    /// Residues in the `k`-th cyclic factor, stacked `[f; g]` for the full flavor.
    pub(crate) fn stacked_component(&self, coeffs: &FiniteAbelianGroup, k: usize, flavor: Flavor) -> Vec<u64> {
        let mut v = self.f.component(coeffs, k);
        if flavor == Flavor::Full {
            v.extend(self.g_or_zero().component(coeffs, k));
        }
        v
    }
}

/// On-disk cocycle: `{"coeff": "Z/2", "f": {...}, "g": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleFile {
    pub coeff: String,
    pub f: Cochain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Cochain>,
}

impl CocycleFile {
    pub fn new(coeffs: &FiniteAbelianGroup, c: &TwoCocycle) -> Self {
        CocycleFile {
            coeff: coeffs.to_string(),
            f: c.f.clone(),
            g: c.g.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn parts(&self) -> Result<(FiniteAbelianGroup, TwoCocycle)> {
        let coeffs: FiniteAbelianGroup = self.coeff.parse()?;
        Ok((
            coeffs,
            TwoCocycle {
                f: self.f.clone(),
                g: self.g.clone(),
            },
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CocycleIdentity {
    /// `g(b,c) + f(a,b+c) = f(a,b) + f(a,c) + g(a·b,a·c)`
    Linearity,
    /// `f(a+b,c) = f(a,c) + f(a·b,a·c)`
    Compatibility,
    /// `g(a,b) + g(a+b,c) = g(b,c) + g(a,b+c)`
    GAssociative,
    /// `g(a,b) = g(b,a)`
    GSymmetric,
}

impl CocycleIdentity {
    pub fn statement(self) -> &'static str {
        match self {
            CocycleIdentity::Linearity => "g(b,c) + f(a,b+c) = f(a,b) + f(a,c) + g(a·b,a·c)",
            CocycleIdentity::Compatibility => "f(a+b,c) = f(a,c) + f(a·b,a·c)",
            CocycleIdentity::GAssociative => "g(a,b) + g(a+b,c) = g(b,c) + g(a,b+c)",
            CocycleIdentity::GSymmetric => "g(a,b) = g(b,a)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleViolation {
    pub identity: CocycleIdentity,
    pub witness: Vec<usize>,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub valid: bool,
    /// Whether every value on a tuple containing `0` vanishes.
    pub normalized: bool,
    pub violations: Vec<CocycleViolation>,
}

impl fmt::Display for CocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "cocycle{}", if self.normalized { " (normalized)" } else { "" });
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?} ({}) fails at {:?} ({}×)", v.identity, v.identity.statement(), v.witness, v.count))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn check_identities(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, c: &TwoCocycle) -> Result<CocycleReport> {
    c.check_shape(lcs, coeffs)?;
    let n = lcs.order();
    let f = |a: usize, b: usize| c.f.get(&[a, b]);
    let g_full = c.g_or_zero();
    let g = |a: usize, b: usize| g_full.get(&[a, b]);
    let (s, d) = (|a, b| lcs.add(a, b), |a, b| lcs.dot(a, b));
    let p = |x, y| coeffs.add(x, y);

    let mut violations = Vec::new();
    let mut record = |identity: CocycleIdentity, arity: usize, holds: &dyn Fn(&[usize]) -> bool| {
        let mut first = None;
        let mut count = 0;
        for i in 0..n.pow(arity as u32) {
            let t = crate::tuples::TupleSpace::new(n, arity).tuple(i);
            if !holds(&t) {
                count += 1;
                first.get_or_insert(t);
            }
        }
        if let Some(witness) = first {
            violations.push(CocycleViolation { identity, witness, count });
        }
    };
    record(CocycleIdentity::Linearity, 3, &|t| {
        let (a, b, x) = (t[0], t[1], t[2]);
        p(g(b, x), f(a, s(b, x))) == p(p(f(a, b), f(a, x)), g(d(a, b), d(a, x)))
    });
    record(CocycleIdentity::Compatibility, 3, &|t| {
        let (a, b, x) = (t[0], t[1], t[2]);
        f(s(a, b), x) == p(f(a, x), f(d(a, b), d(a, x)))
    });
    if c.g.is_some() {
        record(CocycleIdentity::GAssociative, 3, &|t| {
            let (a, b, x) = (t[0], t[1], t[2]);
            p(g(a, b), g(s(a, b), x)) == p(g(b, x), g(a, s(b, x)))
        });
        record(CocycleIdentity::GSymmetric, 2, &|t| g(t[0], t[1]) == g(t[1], t[0]));
    }
    let zero = lcs.zero();
    let normalized = c.f.degenerate_witness(zero).is_none() && g_full.degenerate_witness(zero).is_none();
    Ok(CocycleReport {
        valid: violations.is_empty(),
        normalized,
        violations,
    })
}

/// Check a reduced 2-cocycle: additive in the second argument and
/// `f(a+b,c) = f(a,c) + f(a·b,a·c)`.
pub fn is_reduced_2cocycle(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, f: &Cochain) -> Result<CocycleReport> {
    check_identities(lcs, coeffs, &TwoCocycle::reduced(f.clone()))
}

/// Check a full 2-cocycle `(f, g)`.
pub fn is_full_2cocycle(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    f: &Cochain,
    g: &Cochain,
) -> Result<CocycleReport> {
    check_identities(lcs, coeffs, &TwoCocycle::full(f.clone(), g.clone()))
}

/// Check `c` against the identities of its own flavor.
pub fn check_cocycle(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, c: &TwoCocycle) -> Result<CocycleReport> {
    check_identities(lcs, coeffs, c)
}

pub(crate) fn element(base_order: usize, gamma: usize, a: usize) -> usize {
    gamma * base_order + a
}

pub(crate) fn split(base_order: usize, x: usize) -> (usize, usize) {
    (x / base_order, x % base_order)
}

/// Tables of `Γ ×_{f,g} A` without checking any axiom:
/// `(γ,a)+(γ',a') = (γ+γ'+g(a,a'), a+a')`, `(γ,a)·(γ',a') = (γ'+f(a,a'), a·a')`.
fn raw_tables(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, c: &TwoCocycle) -> (BinaryTable, BinaryTable) {
    let n = lcs.order();
    let total = n * coeffs.order() as usize;
    let g = c.g_or_zero();
    let add = BinaryTable::from_fn(total, |x, y| {
        let ((u, a), (v, b)) = (split(n, x), split(n, y));
        element(n, coeffs.add(coeffs.add(u, v), g.get(&[a, b])), lcs.add(a, b))
    });
    let dot = BinaryTable::from_fn(total, |x, y| {
        let ((_, a), (v, b)) = (split(n, x), split(n, y));
        element(n, coeffs.add(v, c.f.get(&[a, b])), lcs.dot(a, b))
    });
    (add, dot)
}

/// `(add, dot)` tables of `Γ ×_f A` for an arbitrary map `f`.
pub fn force_build_reduced(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    f: &Cochain,
) -> Result<(BinaryTable, BinaryTable)> {
    let c = TwoCocycle::reduced(f.clone());
    c.check_shape(lcs, coeffs)?;
    Ok(raw_tables(lcs, coeffs, &c))
}

/// `(add, dot)` tables of `Γ ×_{f,g} A` for arbitrary maps `f`, `g`.
pub fn force_build_full(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    f: &Cochain,
    g: &Cochain,
) -> Result<(BinaryTable, BinaryTable)> {
    let c = TwoCocycle::full(f.clone(), g.clone());
    c.check_shape(lcs, coeffs)?;
    Ok(raw_tables(lcs, coeffs, &c))
}

fn require_cocycle(lcs: &LinearCycleSet, coeffs: &FiniteAbelianGroup, c: &TwoCocycle) -> Result<()> {
    let report = check_identities(lcs, coeffs, c)?;
    if !report.valid {
        return Err(Error::Cocycle(report.to_string()));
    }
    Ok(())
}

/// The cycle-type extension `Γ ×_f A` with its structure maps.
pub fn build_extension_reduced(
    coeffs: &FiniteAbelianGroup,
    lcs: &LinearCycleSet,
    f: &Cochain,
) -> Result<ExtensionTriple> {
    build_extension(coeffs, lcs, &TwoCocycle::reduced(f.clone()))
}

/// The extension `Γ ×_{f,g} A` with its structure maps.
pub fn build_extension_full(
    coeffs: &FiniteAbelianGroup,
    lcs: &LinearCycleSet,
    f: &Cochain,
    g: &Cochain,
) -> Result<ExtensionTriple> {
    build_extension(coeffs, lcs, &TwoCocycle::full(f.clone(), g.clone()))
}

/// Build the extension of `c`'s flavor. The recorded section is
/// `a ↦ (−g(0,0), a)`, which is linear in the reduced flavor.
pub fn build_extension(coeffs: &FiniteAbelianGroup, lcs: &LinearCycleSet, c: &TwoCocycle) -> Result<ExtensionTriple> {
    require_cocycle(lcs, coeffs, c)?;
    let (add, dot) = raw_tables(lcs, coeffs, c);
    let n = lcs.order();
    let zero = lcs.zero();
    let g00 = c.g_or_zero().get(&[zero, zero]);
    let shift = coeffs.neg(g00);
    let triple = ExtensionTriple {
        coeffs: coeffs.clone(),
        base: lcs.clone(),
        total: LinearCycleSet::assume_valid(add, dot),
        iota: coeffs.elements().map(|gamma| element(n, coeffs.add(gamma, shift), zero)).collect(),
        pi: (0..n * coeffs.order() as usize).map(|x| split(n, x).1).collect(),
        section: Some((0..n).map(|a| element(n, shift, a)).collect()),
    };
    Ok(triple)
}

/// `f̄(a,b) = −f(a, a·b) + g(a,b)`: the cocycle of the same extension seen
/// through the linear cycle set `a·b = a⁻¹∘(a+b)`.
pub fn brace_to_lcs_cocycle(
    brace: &Brace,
    coeffs: &FiniteAbelianGroup,
    f: &Cochain,
    g: Option<&Cochain>,
) -> Cochain {
    let lcs = crate::structure::brace_to_lcs(brace);
    let g = g.cloned().unwrap_or_else(|| Cochain::zero(brace.order(), 2));
    Cochain::from_fn(brace.order(), 2, |t| {
        let (a, b) = (t[0], t[1]);
        coeffs.add(coeffs.neg(f.get(&[a, lcs.dot(a, b)])), g.get(&[a, b]))
    })
}

/// Inverse of [`brace_to_lcs_cocycle`]: `f(a,a') = −f̄(a, a∗a') + g(a, a∗a')`.
pub fn lcs_to_brace_cocycle(
    brace: &Brace,
    coeffs: &FiniteAbelianGroup,
    fbar: &Cochain,
    g: Option<&Cochain>,
) -> Cochain {
    let lcs = crate::structure::brace_to_lcs(brace);
    let g = g.cloned().unwrap_or_else(|| Cochain::zero(brace.order(), 2));
    Cochain::from_fn(brace.order(), 2, |t| {
        let (a, b) = (t[0], lcs.dot_inverse(t[0], t[1]));
        coeffs.add(coeffs.neg(fbar.get(&[a, b])), g.get(&[a, b]))
    })
}

/// The brace `(γ,a)∘(γ',a') = (γ+γ'+f(a,a'), a∘a')` with addition deformed by
/// `g` (direct sum when `g` is absent).
pub fn build_brace_extension(
    coeffs: &FiniteAbelianGroup,
    brace: &Brace,
    f: &Cochain,
    g: Option<&Cochain>,
) -> Result<Brace> {
    let lcs = crate::structure::brace_to_lcs(brace);
    let fbar = brace_to_lcs_cocycle(brace, coeffs, f, g);
    let c = TwoCocycle {
        f: fbar,
        g: g.cloned(),
    };
    for part in std::iter::once(f).chain(g) {
        part.check_shape(&lcs, coeffs)?;
    }
    require_cocycle(&lcs, coeffs, &c)?;
    let n = brace.order();
    let total = n * coeffs.order() as usize;
    let g = c.g_or_zero();
    let add = BinaryTable::from_fn(total, |x, y| {
        let ((u, a), (v, b)) = (split(n, x), split(n, y));
        element(n, coeffs.add(coeffs.add(u, v), g.get(&[a, b])), brace.add(a, b))
    });
    let circle = BinaryTable::from_fn(total, |x, y| {
        let ((u, a), (v, b)) = (split(n, x), split(n, y));
        element(n, coeffs.add(coeffs.add(u, v), f.get(&[a, b])), brace.circle(a, b))
    });
    Brace::new(add, circle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::full::full_coboundary;
    use crate::structure::{trivial_lcs, validate_lcs, z4_brace, z4_lcs, Axiom};

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2).unwrap()
    }

    #[test]
    fn flavor_names() {
        assert_eq!("cycle-type".parse::<Flavor>().unwrap(), Flavor::Reduced);
        assert_eq!("General".parse::<Flavor>().unwrap(), Flavor::Full);
        assert!("other".parse::<Flavor>().is_err());
    }

    #[test]
    fn reduced_cocycle_gives_lcs() {
        let a = z4_lcs();
        let phi = [0, 1, 1, 0];
        let f = Cochain::from_fn(4, 2, |t| (t[1] % 2) * phi[t[0]]);
        let report = is_reduced_2cocycle(&a, &z2(), &f).unwrap();
        assert!(report.valid, "{report}");
        let ext = build_extension_reduced(&z2(), &a, &f).unwrap();
        ext.validate().unwrap();
        assert_eq!(ext.total.order(), 8);
    }

    #[test]
    fn identities_match_total_coboundary() {
        let a = z4_lcs();
        let g2 = z2();
        for seed in 0..64u32 {
            let f = Cochain::from_fn(4, 2, |t| ((seed >> (t[0] + 2 * t[1]) % 5) & 1) as usize);
            let g = Cochain::from_fn(4, 2, |t| (((seed * 7) >> (t[0] * t[1]) % 6) & 1) as usize);
            let report = is_full_2cocycle(&a, &g2, &f, &g).unwrap();
            let d = full_coboundary(&a, &g2, &[f.clone(), g.clone()]).unwrap();
            assert_eq!(report.valid, d.iter().all(Cochain::is_zero), "seed {seed}");
        }
    }

    #[test]
    fn forced_build_fails_compatibility_only() {
        // f(a,b) = φ(a)·b with φ(0) = 1 is additive in b but not compatible
        let a = trivial_lcs(2);
        let f = Cochain::from_fn(2, 2, |t| usize::from(t[0] == 0) * t[1]);
        let report = is_reduced_2cocycle(&a, &z2(), &f).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].identity, CocycleIdentity::Compatibility);
        let (add, dot) = force_build_reduced(&a, &z2(), &f).unwrap();
        let axioms = validate_lcs(&add, &dot).unwrap();
        assert!(axioms.fails(Axiom::Compatibility));
        for ok in [Axiom::CycleSetCondition, Axiom::LeftDistributive, Axiom::LeftTranslationBijective] {
            assert!(!axioms.fails(ok), "{ok:?}");
        }
        assert!(matches!(build_extension_reduced(&z2(), &a, &f), Err(Error::Cocycle(_))));
    }

    #[test]
    fn brace_translation_is_table_exact() {
        let b = z4_brace();
        let g2 = z2();
        let lcs = crate::structure::brace_to_lcs(&b);
        let phi = [0, 1, 1, 0];
        let fbar = Cochain::from_fn(4, 2, |t| (t[1] % 2) * phi[t[0]]);
        let g = Cochain::from_fn(4, 2, |t| (t[0] % 2) * (t[1] % 2));
        let mut exercised = 0;
        for g_part in [None, Some(&g)] {
            let f = lcs_to_brace_cocycle(&b, &g2, &fbar, g_part);
            assert_eq!(brace_to_lcs_cocycle(&b, &g2, &f, g_part), fbar);
            let c = TwoCocycle { f: fbar.clone(), g: g_part.cloned() };
            if !check_cocycle(&lcs, &g2, &c).unwrap().valid {
                continue;
            }
            let brace = build_brace_extension(&g2, &b, &f, g_part).unwrap();
            let from_lcs = build_extension(&g2, &lcs, &c).unwrap().total;
            assert_eq!(crate::structure::brace_to_lcs(&brace), from_lcs);
            exercised += 1;
        }
        assert_eq!(exercised, 2);
    }
}
