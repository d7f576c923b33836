//! Smith normal form over ℤ.
//!
//! The elimination also runs in a "modular" mode in which every working
//! entry is reduced into `[0, m)`. That is only valid for questions asked
//! modulo `m` (kernels and cokernels of `(ℤ/m)`-linear maps): the row and
//! column lattices then always contain `mℤ^N`, so entries may be reduced at
//! will. The resulting diagonal need not form a divisibility chain.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntegerMatrix;

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal, `d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// The `min(rows, cols)` diagonal entries of `S`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries other than 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect()
    }
}

/// Exact Smith normal form with both transforms.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let form = Diagonalizer::new(m.clone(), None, Track::U | Track::V).run();
    SmithDecomposition {
        u: form.u.expect("tracked"),
        s: form.s,
        v: form.v.expect("tracked"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Track(u8);

impl Track {
    pub const U: Track = Track(1);
    pub const U_INV: Track = Track(2);
    pub const V: Track = Track(4);

    fn has(self, other: Track) -> bool {
        self.0 & other.0 != 0
    }
}

impl std::ops::BitOr for Track {
    type Output = Track;

    fn bitor(self, rhs: Track) -> Track {
        Track(self.0 | rhs.0)
    }
}

pub(crate) struct DiagonalForm {
    pub s: IntegerMatrix,
    pub u: Option<IntegerMatrix>,
    pub u_inv: Option<IntegerMatrix>,
    pub v: Option<IntegerMatrix>,
}

impl DiagonalForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }
}

pub(crate) struct Diagonalizer {
    s: IntegerMatrix,
    u: Option<IntegerMatrix>,
    u_inv: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
    modulus: Option<BigInt>,
}

impl Diagonalizer {
    pub fn new(mut s: IntegerMatrix, modulus: Option<u64>, track: Track) -> Self {
        let modulus = modulus.map(BigInt::from);
        if let Some(m) = &modulus {
            s = s.reduce_mod(m.try_into().expect("modulus fits u64"));
        }
        let (r, c) = s.shape();
        Diagonalizer {
            u: track.has(Track::U).then(|| IntegerMatrix::identity(r)),
            u_inv: track.has(Track::U_INV).then(|| IntegerMatrix::identity(r)),
            v: track.has(Track::V).then(|| IntegerMatrix::identity(c)),
            s,
            modulus,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    /// `row[dst] += k · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_row_multiple(dst, src, k);
        if let Some(m) = &self.modulus {
            self.s.reduce_row_mod(dst, m);
        }
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, k);
            if let Some(m) = &self.modulus {
                u.reduce_row_mod(dst, m);
            }
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col_multiple(src, dst, &-k);
            if let Some(m) = &self.modulus {
                ui.reduce_col_mod(src, m);
            }
        }
    }

    /// `col[dst] += k · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.s.add_col_multiple(dst, src, k);
        if let Some(m) = &self.modulus {
            self.s.reduce_col_mod(dst, m);
        }
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k);
            if let Some(m) = &self.modulus {
                v.reduce_col_mod(dst, m);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }

    fn min_abs_in(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in rows {
            for j in cols.clone() {
                let a = &self.s[(i, j)];
                if a.is_zero() {
                    continue;
                }
                let abs = a.abs();
                if abs.is_one() {
                    return Some((i, j));
                }
                if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                    best = Some(((i, j), abs));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Quotient used to clear `a` against the pivot `p`.
    fn quotient(&self, a: &BigInt, p: &BigInt) -> BigInt {
        if self.modulus.is_some() {
            a.div_floor(p)
        } else {
            // truncation keeps |remainder| < |p| for either sign
            a / p
        }
    }

    pub fn run(mut self) -> DiagonalForm {
        let (r, c) = self.s.shape();
        let n = r.min(c);
        for t in 0..n {
            let Some((pi, pj)) = self.min_abs_in(t..r, t..c) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.s[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..r {
                    if self.s[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.quotient(&self.s[(i, t)], &pivot);
                    self.add_row(i, t, &-q);
                    if !self.s[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..c {
                    if self.s[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.quotient(&self.s[(t, j)], &pivot);
                    self.add_col(j, t, &-q);
                    if !self.s[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // a remainder smaller than the pivot is left in row or column t
                    let col_best = self.min_abs_in(t + 1..r, t..t + 1);
                    let row_best = self.min_abs_in(t..t + 1, t + 1..c);
                    let pick = match (col_best, row_best) {
                        (Some(a), Some(b)) => {
                            if self.s[a].abs() <= self.s[b].abs() {
                                a
                            } else {
                                b
                            }
                        }
                        (Some(a), None) | (None, Some(a)) => a,
                        (None, None) => unreachable!("unclean pivot without remainder"),
                    };
                    self.swap_rows(t, pick.0);
                    self.swap_cols(t, pick.1);
                    continue;
                }
                if self.modulus.is_none() {
                    let pivot = self.s[(t, t)].clone();
                    let offender = (t + 1..r).find(|&i| {
                        (t + 1..c).any(|j| !self.s[(i, j)].is_multiple_of(&pivot))
                    });
                    if let Some(i) = offender {
                        self.add_row(t, i, &BigInt::one());
                        continue;
                    }
                }
                break;
            }
            if self.s[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
        DiagonalForm {
            s: self.s,
            u: self.u,
            u_inv: self.u_inv,
            v: self.v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn check(m: &IntegerMatrix) -> SmithDecomposition {
        let d = smith_normal_form(m);
        assert_eq!(&(&d.u * m) * &d.v, d.s, "U·M·V must equal S");
        let (r, c) = d.s.shape();
        for i in 0..r {
            for j in 0..c {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let diag = d.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility {diag:?}");
            } else {
                // zeros trail
            }
            assert!(!(w[0].is_zero() && !w[1].is_zero()));
        }
        d
    }

    #[test]
    fn hand_example() {
        // rows: [2,4],[4,8]; subtract 2·row0 from row1, then clear the row
        let d = check(&big(&[vec![2, 4], vec![4, 8]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::zero()]);
    }

    #[test]
    fn degenerate_inputs() {
        let z = IntegerMatrix::zeros(3, 5);
        assert_eq!(check(&z).s, z);
        let id = IntegerMatrix::identity(3);
        assert_eq!(check(&id).s, id);
        let empty = IntegerMatrix::zeros(0, 4);
        assert_eq!(check(&empty).s.shape(), (0, 4));
    }

    #[test]
    fn divisibility_is_enforced() {
        let d = check(&big(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let d = check(&big(&[vec![6, 4, 2], vec![4, 12, 8], vec![10, 2, 14]]));
        assert_eq!(d.diagonal()[0], BigInt::from(2));
    }
}
