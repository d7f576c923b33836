use serde_json::json;

use super::triple::ExtensionTriple;
use super::{build_extension, CocycleFile, Flavor, TwoCocycle};
use crate::budget::Budget;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::full::full_cohomology_mod;
use crate::group::FiniteAbelianGroup;
use crate::modular::CyclicDecomposition;
use crate::reduced::reduced_cohomology_mod;
use crate::structure::{LinearCycleSet, Structure, StructureFile};

/// One class of `H²` with a representative cocycle and its extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedExtension {
    pub class_index: usize,
    pub cocycle: TwoCocycle,
    pub extension: ExtensionTriple,
}

impl ClassifiedExtension {
    /// `{"class_index", "cocycle", "extension"}` with the extension as a structure file.
    pub fn to_json_value(&self) -> serde_json::Value {
        let ext = &self.extension;
        json!({
            "class_index": self.class_index,
            "cocycle": CocycleFile::new(&ext.coeffs, &self.cocycle),
            "extension": StructureFile::from_structure(&Structure::Lcs(ext.total.clone())),
        })
    }
}

/// One representative extension per class of `RedH²(A; Γ)` (reduced) or
/// `H²_Norm(A; Γ)` (full), classes listed in mixed radix over the cyclic
/// summands.
pub fn classify_extensions(
    lcs: &LinearCycleSet,
    coeffs: &FiniteAbelianGroup,
    flavor: Flavor,
    budget: &Budget,
) -> Result<Vec<ClassifiedExtension>> {
    let parts: Vec<CyclicDecomposition> = coeffs
        .factors()
        .iter()
        .map(|&m| match flavor {
            Flavor::Reduced => reduced_cohomology_mod(lcs, 2, false, m, budget),
            Flavor::Full => full_cohomology_mod(lcs, 2, true, m, budget),
        })
        .collect::<Result<_>>()?;
    let count: u128 = parts.iter().map(CyclicDecomposition::order).product();
    if count > budget.theta_limit {
        return Err(Error::Budget {
            what: "number of cohomology classes".into(),
            needed: count,
            limit: budget.theta_limit,
            hint: "",
        });
    }
    let n = lcs.order();
    let len = n * n;
    let width = match flavor {
        Flavor::Reduced => len,
        Flavor::Full => 2 * len,
    };
    let mut out = Vec::with_capacity(count as usize);
    for class_index in 0..count as usize {
        let mut code = class_index;
        let mut residues: Vec<Vec<u64>> = Vec::with_capacity(parts.len());
        for (part, &m) in parts.iter().zip(coeffs.factors()) {
            let mut v = vec![0u64; width];
            for (order, generator) in part.orders.iter().zip(&part.generators) {
                let digit = (code % *order as usize) as u64;
                code /= *order as usize;
                for (slot, &x) in v.iter_mut().zip(generator) {
                    *slot = (*slot + digit * x) % m;
                }
            }
            residues.push(v);
        }
        let block = |range: std::ops::Range<usize>| {
            let parts: Vec<Vec<u64>> = residues.iter().map(|v| v[range.clone()].to_vec()).collect();
            Cochain::from_components(n, 2, coeffs, &parts)
        };
        let cocycle = match flavor {
            Flavor::Reduced => TwoCocycle::reduced(block(0..len)),
            Flavor::Full => TwoCocycle::full(block(0..len), block(len..2 * len)),
        };
        let extension = build_extension(coeffs, lcs, &cocycle)?;
        out.push(ClassifiedExtension {
            class_index,
            cocycle,
            extension,
        });
    }
    Ok(out)
}
