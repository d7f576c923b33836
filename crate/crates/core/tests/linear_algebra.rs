use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use lcs_cohomology::modular::{kernel_mod_m, solve_mod_m, subquotient};
use lcs_cohomology::{smith_normal_form, IntegerMatrix};

fn matrix(max_dim: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-range..=range, c), r)
    })
}

/// Fraction-free determinant.
fn bareiss(m: &IntegerMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Every vector of `(ℤ/m)^n`, as a list.
fn all_vectors(n: usize, m: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn apply(c: &IntegerMatrix, x: &[u64], m: u64) -> Vec<u64> {
    let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
    let mb = BigInt::from(m);
    c.mul_vec(&v)
        .iter()
        .map(|y| u64::try_from(((y % &mb) + &mb) % &mb).unwrap())
        .collect()
}

/// Submodule of `(ℤ/m)^n` generated by the columns, by closure.
fn span(gens: &IntegerMatrix, m: u64) -> BTreeSet<Vec<u64>> {
    let n = gens.rows();
    let cols: Vec<Vec<u64>> = (0..gens.cols())
        .map(|j| {
            let mb = BigInt::from(m);
            gens.column(j).iter().map(|x| u64::try_from(((x % &mb) + &mb) % &mb).unwrap()).collect()
        })
        .collect();
    let mut seen = BTreeSet::from([vec![0u64; n]]);
    let mut queue = VecDeque::from([vec![0u64; n]]);
    while let Some(v) = queue.pop_front() {
        for c in &cols {
            let w: Vec<u64> = v.iter().zip(c).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in matrix(12, 9)) {
        let m = IntegerMatrix::from_rows(&rows).unwrap();
        let snf = smith_normal_form(&m);
        let product = snf.u.checked_mul(&m).unwrap().checked_mul(&snf.v).unwrap();
        prop_assert_eq!(&product, &snf.s);
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    prop_assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        let d = snf.diagonal();
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero(), "{:?}", d);
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        prop_assert_eq!(bareiss(&snf.u).abs(), BigInt::one());
        prop_assert_eq!(bareiss(&snf.v).abs(), BigInt::one());
    }

    #[test]
    fn kernel_mod_m_matches_enumeration(rows in matrix(6, 5), m in 2u64..=4) {
        let c = IntegerMatrix::from_rows(&rows).unwrap();
        let n = c.cols();
        let kernel: BTreeSet<Vec<u64>> = all_vectors(n, m)
            .into_iter()
            .filter(|x| apply(&c, x, m).iter().all(|&y| y == 0))
            .collect();
        let gens = kernel_mod_m(&c, m).unwrap();
        prop_assert_eq!(span(&gens, m), kernel);
    }

    #[test]
    fn solver_finds_solutions_of_consistent_systems(rows in matrix(6, 6), m in 2u64..=6, seed in any::<u64>()) {
        let d = IntegerMatrix::from_rows(&rows).unwrap();
        let x0: Vec<u64> = (0..d.cols()).map(|i| (seed >> (3 * i)) % m).collect();
        let c = apply(&d, &x0, m);
        let x = solve_mod_m(&d, &c, m).unwrap().expect("x0 solves it");
        prop_assert_eq!(apply(&d, &x, m), c);
    }

    #[test]
    fn solver_refutes_exactly_the_unsolvable(rows in matrix(4, 4), m in 2u64..=4, target in any::<u64>()) {
        let d = IntegerMatrix::from_rows(&rows).unwrap();
        let c: Vec<u64> = (0..d.rows()).map(|i| (target >> (2 * i)) % m).collect();
        let solvable = all_vectors(d.cols(), m).iter().any(|x| apply(&d, x, m) == c);
        prop_assert_eq!(solve_mod_m(&d, &c, m).unwrap().is_some(), solvable);
    }

    #[test]
    fn subquotient_order_and_generators(rows in matrix(4, 3), m in 2u64..=4) {
        // ker D / im D' where D' = kernel generators scaled by 2, so im D' ⊆ ker D
        let d = IntegerMatrix::from_rows(&rows).unwrap();
        let n = d.cols();
        let gens = IntegerMatrix::identity(n);
        let ker = kernel_mod_m(&d, m).unwrap();
        let d_in = ker.scaled(2);
        let q = subquotient(&d, &d_in, &gens, m).unwrap();
        let big = span(&ker, m).len() as u128;
        let small = span(&d_in, m).len() as u128;
        prop_assert_eq!(q.order(), big / small);
        for g in &q.generators {
            prop_assert!(apply(&d, g, m).iter().all(|&y| y == 0));
        }
    }
}

#[test]
fn known_smith_forms() {
    let m = IntegerMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
    let d: Vec<i64> = smith_normal_form(&m).diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect();
    assert_eq!(d, vec![2, 6, 12]);
    let zero = IntegerMatrix::zeros(3, 2);
    assert_eq!(smith_normal_form(&zero).rank(), 0);
}
