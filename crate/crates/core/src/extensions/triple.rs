use serde::{Deserialize, Serialize};

use super::{Flavor, TwoCocycle};
use crate::budget::Budget;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::group::FiniteAbelianGroup;
use crate::structure::{BinaryTable, LinearCycleSet, Structure, StructureFile};

/// `0 → Γ --ι--> E --π--> A → 0`, with an optional recorded section of `π`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionTriple {
    pub coeffs: FiniteAbelianGroup,
    pub base: LinearCycleSet,
    pub total: LinearCycleSet,
    pub iota: Vec<usize>,
    pub pi: Vec<usize>,
    pub section: Option<Vec<usize>>,
}

/// `Γ` as a linear cycle set with trivial action.
pub(crate) fn coefficient_lcs(coeffs: &FiniteAbelianGroup) -> LinearCycleSet {
    let n = coeffs.order() as usize;
    LinearCycleSet::assume_valid(BinaryTable::from_fn(n, |x, y| coeffs.add(x, y)), BinaryTable::from_fn(n, |_, y| y))
}

/// First pair `(x, y)` on which `map` fails to preserve `+` or `·`.
fn morphism_witness(from: &LinearCycleSet, to: &LinearCycleSet, map: &[usize]) -> Option<(usize, usize, &'static str)> {
    let n = from.order();
    for x in 0..n {
        for y in 0..n {
            if map[from.add(x, y)] != to.add(map[x], map[y]) {
                return Some((x, y, "+"));
            }
            if map[from.dot(x, y)] != to.dot(map[x], map[y]) {
                return Some((x, y, "·"));
            }
        }
    }
    None
}

fn check_map(name: &str, map: &[usize], from: usize, to: usize) -> Result<()> {
    if map.len() != from {
        return Err(Error::Shape(format!("`{name}` has {} entries, expected {from}", map.len())));
    }
    if let Some(&bad) = map.iter().find(|&&v| v >= to) {
        return Err(Error::Shape(format!("`{name}` maps to {bad}, outside 0..{to}")));
    }
    Ok(())
}

impl ExtensionTriple {
    /// Check exactness, centrality and the morphism properties.
    pub fn validate(&self) -> Result<()> {
        let (g, a, e) = (self.coeffs.order() as usize, self.base.order(), self.total.order());
        check_map("iota", &self.iota, g, e)?;
        check_map("pi", &self.pi, e, a)?;
        let gamma = coefficient_lcs(&self.coeffs);
        if let Some((x, y, op)) = morphism_witness(&gamma, &self.total, &self.iota) {
            return Err(Error::Morphism(format!("ι does not preserve {op} at ({x}, {y})")));
        }
        if let Some((x, y, op)) = morphism_witness(&self.total, &self.base, &self.pi) {
            return Err(Error::Morphism(format!("π does not preserve {op} at ({x}, {y})")));
        }
        let mut hit = vec![false; e];
        for (i, &x) in self.iota.iter().enumerate() {
            if std::mem::replace(&mut hit[x], true) {
                return Err(Error::Morphism(format!("ι is not injective: {i} collides")));
            }
        }
        let mut covered = vec![false; a];
        for &y in &self.pi {
            covered[y] = true;
        }
        if let Some(miss) = covered.iter().position(|c| !c) {
            return Err(Error::Morphism(format!("π is not surjective: {miss} is missed")));
        }
        let zero = self.base.zero();
        if let Some(x) = (0..e).find(|&x| (self.pi[x] == zero) != hit[x]) {
            return Err(Error::Morphism(format!("ker π ≠ im ι at element {x}")));
        }
        // central: ι(γ)·x = x and x·ι(γ) = ι(γ)
        for &c in &self.iota {
            if let Some(x) = (0..e).find(|&x| self.total.dot(c, x) != x || self.total.dot(x, c) != c) {
                return Err(Error::Morphism(format!("ι(Γ) is not central: element {c} against {x}")));
            }
        }
        if let Some(s) = &self.section {
            check_section(self, s)?;
        }
        Ok(())
    }

    /// `ι⁻¹` as a partial table on `E`.
    pub(crate) fn iota_inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.total.order()];
        for (gamma, &x) in self.iota.iter().enumerate() {
            inv[x] = Some(gamma);
        }
        inv
    }

    pub fn to_file(&self) -> ExtensionFile {
        ExtensionFile {
            coeff: self.coeffs.to_string(),
            base: StructureFile::from_structure(&Structure::Lcs(self.base.clone())),
            total: StructureFile::from_structure(&Structure::Lcs(self.total.clone())),
            iota: self.iota.clone(),
            pi: self.pi.clone(),
            section: self.section.clone(),
        }
    }
}

fn check_section(ext: &ExtensionTriple, s: &[usize]) -> Result<()> {
    check_map("section", s, ext.base.order(), ext.total.order())?;
    if let Some(a) = (0..ext.base.order()).find(|&a| ext.pi[s[a]] != a) {
        return Err(Error::Section(format!("π(s({a})) = {} ≠ {a}", ext.pi[s[a]])));
    }
    Ok(())
}

/// On-disk extension triple. Element labels are kept as written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub coeff: String,
    pub base: StructureFile,
    pub total: StructureFile,
    pub iota: Vec<usize>,
    pub pi: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<usize>>,
}

impl ExtensionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("extension files serialize")
    }

    pub fn into_triple(&self) -> Result<ExtensionTriple> {
        let triple = ExtensionTriple {
            coeffs: self.coeff.parse()?,
            base: self.base.into_structure_exact()?.to_lcs(),
            total: self.total.into_structure_exact()?.to_lcs(),
            iota: self.iota.clone(),
            pi: self.pi.clone(),
            section: self.section.clone(),
        };
        triple.validate()?;
        Ok(triple)
    }
}

/// `s(0) = 0` and otherwise the lowest-index preimage.
pub fn normalized_set_section(ext: &ExtensionTriple) -> Vec<usize> {
    let zero = ext.base.zero();
    (0..ext.base.order())
        .map(|a| {
            if a == zero {
                ext.total.zero()
            } else {
                ext.pi.iter().position(|&y| y == a).expect("π is surjective")
            }
        })
        .collect()
}

/// An additive section of `π` (lowest in the search order), if one exists.
pub fn find_linear_section(ext: &ExtensionTriple, budget: &Budget, exec: Execution) -> Result<Option<Vec<usize>>> {
    let g = ext.coeffs.order() as usize;
    let n = ext.base.order();
    let space = budget.check_theta(g as u64, n)?;
    let base = normalized_set_section(ext);
    let total = &ext.total;
    Ok(exec.find_first(0..space as u64, |mut code| {
        let s: Vec<usize> = (0..n)
            .map(|a| {
                let digit = (code % g as u64) as usize;
                code /= g as u64;
                total.add(ext.iota[digit], base[a])
            })
            .collect();
        let linear = (0..n).all(|a| (0..n).all(|b| s[ext.base.add(a, b)] == total.add(s[a], s[b])));
        linear.then_some(s)
    }))
}

/// `f̃(a,a') = s(a)·s(a') − s(a·a')` and, in the full flavor,
/// `g̃(a,a') = s(a) + s(a') − s(a+a')`, pulled back along `ι`.
pub fn extract_cocycle(ext: &ExtensionTriple, section: &[usize], flavor: Flavor) -> Result<TwoCocycle> {
    check_section(ext, section)?;
    let (t, a) = (&ext.total, &ext.base);
    let n = a.order();
    if flavor == Flavor::Reduced {
        for x in 0..n {
            for y in 0..n {
                if section[a.add(x, y)] != t.add(section[x], section[y]) {
                    return Err(Error::Linearity(format!("s({x}+{y}) ≠ s({x}) + s({y})")));
                }
            }
        }
    }
    let inv = ext.iota_inverse();
    let pull = |v: usize, what: &str, x: usize, y: usize| {
        inv[v].ok_or_else(|| Error::Morphism(format!("{what}({x},{y}) = {v} is not in ι(Γ)")))
    };
    let mut f = Cochain::zero(n, 2);
    let mut g = Cochain::zero(n, 2);
    for x in 0..n {
        for y in 0..n {
            let fv = t.sub(t.dot(section[x], section[y]), section[a.dot(x, y)]);
            f.set(&[x, y], pull(fv, "f", x, y)?);
            let gv = t.sub(t.add(section[x], section[y]), section[a.add(x, y)]);
            g.set(&[x, y], pull(gv, "g", x, y)?);
        }
    }
    Ok(match flavor {
        Flavor::Reduced => TwoCocycle::reduced(f),
        Flavor::Full => TwoCocycle::full(f, g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{build_extension, check_cocycle};
    use crate::structure::z4_lcs;

    #[test]
    fn round_trips() {
        let a = z4_lcs();
        let g2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let phi = [0, 1, 1, 0];
        let f = Cochain::from_fn(4, 2, |t| (t[1] % 2) * phi[t[0]]);
        let ext = build_extension(&g2, &a, &TwoCocycle::reduced(f.clone())).unwrap();
        let s = ext.section.clone().unwrap();
        assert_eq!(extract_cocycle(&ext, &s, Flavor::Reduced).unwrap().f, f);
        let json = ext.to_file().to_json();
        let back = ExtensionFile::from_json(&json).unwrap().into_triple().unwrap();
        assert_eq!(back, ext);
        let found = find_linear_section(&ext, &Budget::default(), Execution::Sequential).unwrap();
        assert!(found.is_some());
    }

    #[test]
    fn full_with_nonzero_g00() {
        let a = crate::structure::trivial_lcs(2);
        let g2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let c = TwoCocycle::full(Cochain::zero(2, 2), Cochain::from_fn(2, 2, |_| 1));
        assert!(check_cocycle(&a, &g2, &c).unwrap().valid);
        let ext = build_extension(&g2, &a, &c).unwrap();
        ext.validate().unwrap();
        let got = extract_cocycle(&ext, ext.section.as_ref().unwrap(), Flavor::Full).unwrap();
        assert_eq!(got.f, c.f);
        assert!(got.g.unwrap().is_zero());
    }

    #[test]
    fn bad_sections_are_rejected() {
        let a = z4_lcs();
        let g2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let ext = build_extension(&g2, &a, &TwoCocycle::reduced(Cochain::zero(4, 2))).unwrap();
        assert!(matches!(extract_cocycle(&ext, &[0, 0, 0, 0], Flavor::Full), Err(Error::Section(_))));
        // (1,1) in place of (0,1): still a section, no longer additive
        let s = [0, 5, 2, 3];
        assert!(matches!(extract_cocycle(&ext, &s, Flavor::Reduced), Err(Error::Linearity(_))));
        assert!(extract_cocycle(&ext, &s, Flavor::Full).is_ok());
    }
}
