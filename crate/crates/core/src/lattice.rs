//! Membership in integer column lattices, used to certify span-preservation
//! and "zero modulo relations" identities at the free-module level.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::snf::{Diagonalizer, Track};

/// The sublattice of `ℤ^N` spanned by the columns of a generator matrix.
pub struct Lattice {
    dim: usize,
    u: IntegerMatrix,
    diagonal: Vec<BigInt>,
}

impl Lattice {
    pub fn new(generators: &IntegerMatrix) -> Self {
        let form = Diagonalizer::new(generators.clone(), None, Track::U).run();
        let diagonal = form.diagonal();
        Lattice {
            dim: generators.rows(),
            u: form.u.expect("tracked"),
            diagonal,
        }
    }

    /// The zero lattice in `ℤ^dim`.
    pub fn zero(dim: usize) -> Self {
        Self::new(&IntegerMatrix::zeros(dim, 0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::Shape(format!(
                "vector of length {} tested against a lattice in Z^{}",
                v.len(),
                self.dim
            )));
        }
        let w = self.u.mul_vec(v);
        Ok(w.iter().enumerate().all(|(i, wi)| match self.diagonal.get(i) {
            Some(d) if !d.is_zero() => wi.is_multiple_of(d),
            _ => wi.is_zero(),
        }))
    }

    /// Whether every column of `m` lies in the lattice.
    pub fn contains_columns(&self, m: &IntegerMatrix) -> Result<bool> {
        for j in 0..m.cols() {
            if !self.contains(&m.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index of the first column of `m` outside the lattice, if any.
    pub fn first_missing_column(&self, m: &IntegerMatrix) -> Result<Option<usize>> {
        for j in 0..m.cols() {
            if !self.contains(&m.column(j))? {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let gens = IntegerMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]).unwrap();
        let l = Lattice::new(&gens);
        let v = |a: i64, b: i64| vec![BigInt::from(a), BigInt::from(b)];
        assert!(l.contains(&v(4, -3)).unwrap());
        assert!(!l.contains(&v(1, 0)).unwrap());
        assert!(l.contains(&v(0, 0)).unwrap());
        assert!(l.contains(&[BigInt::from(1)]).is_err());

        let line = Lattice::new(&IntegerMatrix::from_rows(&[vec![1i64], vec![1]]).unwrap());
        assert!(line.contains(&v(5, 5)).unwrap());
        assert!(!line.contains(&v(5, 4)).unwrap());
        assert!(Lattice::zero(2).contains(&v(0, 0)).unwrap());
    }
}
