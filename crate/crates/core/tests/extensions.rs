use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcs_cohomology::cochain::Cochain;
use lcs_cohomology::extensions::{
    build_brace_extension, build_extension, brace_to_lcs_cocycle, check_cocycle, classify_extensions,
    coboundary_pair, cocycles_cohomologous, cocycles_cohomologous_solver, extensions_equivalent, extract_cocycle,
    lcs_to_brace_cocycle, lemma_sweep_full, lemma_sweep_reduced, normalized_set_section, ExtensionFile,
    ExtensionTriple, Flavor, SweepMode, TwoCocycle,
};
use lcs_cohomology::reduced::{reduced_cochain_generators, reduced_cocycle_generators};
use lcs_cohomology::structure::{trivial_lcs, z4_lcs};
use lcs_cohomology::verify::{corpus, z4_phi_cocycles};
use lcs_cohomology::{lcs_to_brace, Budget, Execution, FiniteAbelianGroup, LinearCycleSet};

const EXEC: Execution = Execution::Parallel;

fn coefficient_groups() -> Vec<FiniteAbelianGroup> {
    [vec![2], vec![3], vec![4], vec![2, 2]]
        .into_iter()
        .map(|f| FiniteAbelianGroup::new(f).unwrap())
        .collect()
}

fn add_pair(g: &FiniteAbelianGroup, c: &TwoCocycle, d: &TwoCocycle) -> TwoCocycle {
    TwoCocycle {
        f: c.f.add(g, &d.f),
        g: c.g.as_ref().map(|x| x.add(g, d.g.as_ref().unwrap())),
    }
}

fn random_theta(n: usize, g: &FiniteAbelianGroup, rng: &mut ChaCha8Rng) -> Cochain {
    Cochain::new(n, 1, (0..n).map(|_| rng.gen_range(0..g.order() as usize)).collect()).unwrap()
}

/// Additive θ: a random combination of the generators of `Hom(A, ℤ/m)`.
fn random_additive_theta(lcs: &LinearCycleSet, m: u64, rng: &mut ChaCha8Rng) -> Cochain {
    let gens = reduced_cochain_generators(lcs, 1, false, m).unwrap();
    let mut values = vec![0u64; lcs.order()];
    for j in 0..gens.cols() {
        let k: u64 = rng.gen_range(0..m);
        for (i, v) in values.iter_mut().enumerate() {
            *v = (*v + k * u64::try_from(&gens[(i, j)]).unwrap()) % m;
        }
    }
    Cochain::new(lcs.order(), 1, values.into_iter().map(|v| v as usize).collect()).unwrap()
}

fn is_isomorphism(e1: &ExtensionTriple, e2: &ExtensionTriple, phi: &[usize]) -> bool {
    let n = e1.total.order();
    let morphism = (0..n).all(|x| {
        (0..n).all(|y| {
            phi[e1.total.add(x, y)] == e2.total.add(phi[x], phi[y])
                && phi[e1.total.dot(x, y)] == e2.total.dot(phi[x], phi[y])
        })
    });
    let bijective = {
        let mut seen = vec![false; n];
        phi.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    };
    let commutes_iota = e1.iota.iter().zip(&e2.iota).all(|(&a, &b)| phi[a] == b);
    let commutes_pi = (0..n).all(|x| e2.pi[phi[x]] == e1.pi[x]);
    morphism && bijective && commutes_iota && commutes_pi
}

#[test]
fn sweeps_over_the_corpus_find_no_discrepancy() {
    let mut exhaustive = 0;
    for (name, lcs) in corpus(EXEC).unwrap() {
        for g in coefficient_groups() {
            let n = lcs.order();
            if n * g.order() as usize > 16 {
                continue;
            }
            let bits = |blocks: usize| (blocks * n * n) as f64 * (g.order() as f64).log2();
            let pick = |blocks: usize| {
                if bits(blocks) <= 16.0 {
                    SweepMode::Exhaustive
                } else {
                    SweepMode::Random { samples: 2000, seed: 11 }
                }
            };
            let reduced = lemma_sweep_reduced(&lcs, &g, pick(1), EXEC).unwrap();
            assert_eq!(reduced.discrepancies, 0, "{name} Γ={g} reduced {:?}", reduced.first_discrepancy);
            let full = lemma_sweep_full(&lcs, &g, pick(2), EXEC).unwrap();
            assert_eq!(full.discrepancies, 0, "{name} Γ={g} full {:?}", full.first_discrepancy);
            if pick(1) == SweepMode::Exhaustive {
                assert!(reduced.cocycles >= 1);
                exhaustive += 1;
            }
        }
    }
    assert!(exhaustive >= 10, "{exhaustive}");
}

#[test]
fn extraction_inverts_construction() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, lcs) in corpus(EXEC).unwrap() {
        for g in [FiniteAbelianGroup::cyclic(2).unwrap(), FiniteAbelianGroup::cyclic(3).unwrap()] {
            for flavor in [Flavor::Reduced, Flavor::Full] {
                for class in classify_extensions(&lcs, &g, flavor, &budget).unwrap() {
                    let c = match flavor {
                        Flavor::Reduced => class.cocycle.clone(),
                        // wander off the normalized representative
                        Flavor::Full => add_pair(&g, &class.cocycle, &coboundary_pair(&lcs, &g, &random_theta(lcs.order(), &g, &mut rng))),
                    };
                    let ext = build_extension(&g, &lcs, &c).unwrap();
                    ext.validate().unwrap();
                    // (0, a) has index a
                    let plain: Vec<usize> = (0..lcs.order()).collect();
                    assert_eq!(extract_cocycle(&ext, &plain, flavor).unwrap(), c, "{name} Γ={g} {flavor}");
                    let recorded = extract_cocycle(&ext, ext.section.as_ref().unwrap(), flavor).unwrap();
                    let w = cocycles_cohomologous(&lcs, &g, &c, &recorded, false, &budget, EXEC).unwrap();
                    assert!(w.is_some(), "{name} Γ={g} {flavor}");
                    let file = ExtensionFile::from_json(&ext.to_file().to_json()).unwrap();
                    assert_eq!(file.into_triple().unwrap(), ext);
                }
            }
        }
    }
}

#[test]
fn changing_the_section_changes_the_cocycle_by_a_coboundary() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, lcs) in corpus(EXEC).unwrap() {
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        for flavor in [Flavor::Reduced, Flavor::Full] {
            for class in classify_extensions(&lcs, &g, flavor, &budget).unwrap() {
                let ext = class.extension;
                let s = ext.section.clone().unwrap();
                let theta = match flavor {
                    Flavor::Reduced => random_additive_theta(&lcs, 4, &mut rng),
                    Flavor::Full => random_theta(lcs.order(), &g, &mut rng),
                };
                let shifted: Vec<usize> =
                    (0..lcs.order()).map(|a| ext.total.add(s[a], ext.iota[theta.get(&[a])])).collect();
                let c = extract_cocycle(&ext, &s, flavor).unwrap();
                let c2 = extract_cocycle(&ext, &shifted, flavor).unwrap();
                let d = coboundary_pair(&lcs, &g, &theta);
                // moving s by ι∘θ subtracts ∂θ
                assert_eq!(c2.f.add(&g, &d.f), c.f, "{name} {flavor}");
                if flavor == Flavor::Full {
                    assert_eq!(c2.g.as_ref().unwrap().add(&g, d.g.as_ref().unwrap()), c.g.clone().unwrap());
                }
                let witness = cocycles_cohomologous(&lcs, &g, &c, &c2, false, &budget, EXEC).unwrap();
                assert!(witness.is_some(), "{name} {flavor}");
            }
        }
    }
}

#[test]
fn equivalence_follows_cohomology_classes() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, lcs) in corpus(EXEC).unwrap() {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let classes = classify_extensions(&lcs, &g, Flavor::Full, &budget).unwrap();
        for (i, a) in classes.iter().enumerate() {
            for (j, b) in classes.iter().enumerate() {
                let v = extensions_equivalent(&a.extension, &b.extension, &budget, EXEC).unwrap();
                assert_eq!(v.equivalent, i == j, "{name} classes {i} {j}");
            }
            let mut theta = random_theta(lcs.order(), &g, &mut rng);
            theta.set(&[lcs.zero()], 0);
            let moved = add_pair(&g, &a.cocycle, &coboundary_pair(&lcs, &g, &theta));
            let other = build_extension(&g, &lcs, &moved).unwrap();
            let v = extensions_equivalent(&a.extension, &other, &budget, EXEC).unwrap();
            assert!(v.equivalent);
            assert!(is_isomorphism(&a.extension, &other, v.isomorphism.as_ref().unwrap()), "{name}");
        }
    }
}

#[test]
fn search_and_solver_agree() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = z4_lcs();
    let g = FiniteAbelianGroup::cyclic(2).unwrap();
    let phis = z4_phi_cocycles();
    for x in &phis {
        for y in &phis {
            let theta = random_additive_theta(&a, 2, &mut rng);
            let y2 = TwoCocycle::reduced(y.add(&g, &coboundary_pair(&a, &g, &theta).f));
            let x = TwoCocycle::reduced(x.clone());
            let search = cocycles_cohomologous(&a, &g, &x, &y2, true, &budget, EXEC).unwrap();
            let solver = cocycles_cohomologous_solver(&a, &g, &x, &y2, true).unwrap();
            assert_eq!(search.is_some(), solver.is_some());
            assert_eq!(search.is_some(), x.f == *y);
            if let Some(t) = search {
                assert_eq!(x.f.add(&g, &coboundary_pair(&a, &g, &t).f), y2.f);
            }
        }
    }
}

#[test]
fn split_and_cyclic_brace_extensions() {
    let brace = lcs_to_brace(&trivial_lcs(2));
    let g = FiniteAbelianGroup::cyclic(2).unwrap();
    let carry = Cochain::from_fn(2, 2, |t| t[0] * t[1]);
    let f = lcs_to_brace_cocycle(&brace, &g, &Cochain::zero(2, 2), Some(&carry));
    assert!(brace_to_lcs_cocycle(&brace, &g, &f, Some(&carry)).is_zero());
    let e = build_brace_extension(&g, &brace, &f, Some(&carry)).unwrap();
    // the additive group is cyclic of order 4
    let orders: Vec<usize> = (0..4)
        .map(|x| {
            let mut y = x;
            let mut k = 1;
            while y != e.zero() {
                y = e.add(y, x);
                k += 1;
            }
            k
        })
        .collect();
    assert!(orders.contains(&4), "{orders:?}");

    let split = build_brace_extension(&g, &brace, &Cochain::zero(2, 2), None).unwrap();
    assert!((0..4).all(|x| split.add(x, x) == split.zero()));
}

#[test]
fn invalid_cocycles_are_rejected_with_a_witness() {
    let a = z4_lcs();
    let g = FiniteAbelianGroup::cyclic(2).unwrap();
    let f = Cochain::from_fn(4, 2, |t| usize::from(t == [1, 1]));
    let report = check_cocycle(&a, &g, &TwoCocycle::reduced(f.clone())).unwrap();
    assert!(!report.valid);
    assert!(!report.violations.is_empty());
    assert!(build_extension(&g, &a, &TwoCocycle::reduced(f)).is_err());
}

#[test]
fn normalized_sections_hit_zero() {
    let budget = Budget::default();
    let g = FiniteAbelianGroup::cyclic(3).unwrap();
    for (_, lcs) in corpus(EXEC).unwrap() {
        for class in classify_extensions(&lcs, &g, Flavor::Full, &budget).unwrap() {
            let ext = class.extension;
            let s = normalized_set_section(&ext);
            assert_eq!(s[lcs.zero()], ext.total.zero());
            assert!((0..lcs.order()).all(|a| ext.pi[s[a]] == a));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_reduced_cocycles_build_valid_extensions(seed in any::<u64>(), m in 2u64..=4) {
        let a = z4_lcs();
        let g = FiniteAbelianGroup::cyclic(m).unwrap();
        let z = reduced_cocycle_generators(&a, 2, false, m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values = vec![0u64; 16];
        for j in 0..z.cols() {
            let k: u64 = rng.gen_range(0..m);
            for (i, v) in values.iter_mut().enumerate() {
                *v = (*v + k * u64::try_from(&z[(i, j)]).unwrap()) % m;
            }
        }
        let f = Cochain::new(4, 2, values.into_iter().map(|v| v as usize).collect()).unwrap();
        let c = TwoCocycle::reduced(f);
        prop_assert!(check_cocycle(&a, &g, &c).unwrap().valid);
        let ext = build_extension(&g, &a, &c).unwrap();
        prop_assert!(ext.validate().is_ok());
        let total = LinearCycleSet::new(ext.total.add_table().clone(), ext.total.dot_table().clone());
        prop_assert!(total.is_ok());
    }
}
