//! Dense exact linear algebra over the rationals and prime fields.

mod bareiss;
mod generic;
mod modp;
mod multimod;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use bareiss::{bareiss_rank_profile, echelonize, integer_rows};
pub use generic::gauss_jordan;
pub use modp::{echelon_mod, is_prime, prev_prime, rank_mod, PrimeRows};
pub use multimod::{exact_rank, hadamard_log2, RankCertificate};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    /// Rows must share a length; `cols` is used when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Appends `v` as an extra column.
    pub fn with_column(&self, v: &[T]) -> Matrix<T> {
        assert_eq!(v.len(), self.rows);
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.push(v[i].clone());
        }
        Matrix { rows: self.rows, cols: self.cols + 1, data }
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }
}

pub type RationalMatrix = Matrix<BigRational>;
pub type IntMatrix = Matrix<BigInt>;

pub fn to_rational(m: &IntMatrix) -> RationalMatrix {
    m.map(|x| BigRational::from_integer(x.clone()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FieldTag {
    Rationals,
    Prime(u64),
}

impl Default for FieldTag {
    fn default() -> Self {
        FieldTag::Prime(crate::field::MERSENNE_61)
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "rational"),
            FieldTag::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(FieldTag::Rationals);
        }
        let p = s
            .strip_prefix("prime:")
            .or_else(|| if s == "prime" { Some("") } else { None })
            .ok_or_else(|| invalid!("field must be `rational` or `prime:P`, got `{s}`"))?;
        if p.is_empty() {
            return Ok(FieldTag::default());
        }
        let p: u64 = p.parse().map_err(|_| invalid!("bad prime `{p}`"))?;
        if !(3..1 << 62).contains(&p) || !is_prime(p) {
            return Err(invalid!("{p} is not a prime in [3, 2^62)"));
        }
        Ok(FieldTag::Prime(p))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EchelonResult<T> {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub reduced_rows: Matrix<T>,
}

/// Basis of the right null space, one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let ech = echelonize(m);
    kernel_from_rref(&ech, m.cols())
}

pub(crate) fn kernel_from_rref<T: crate::field::Scalar>(ech: &EchelonResult<T>, cols: usize) -> Vec<Vec<T>> {
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivot_columns {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (r, &pc) in ech.pivot_columns.iter().enumerate() {
            v[pc] = -ech.reduced_rows.get(r, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Whether `b` lies in the span of the columns of `m`.
pub fn in_column_space(m: &RationalMatrix, b: &[BigRational]) -> Result<bool> {
    if b.len() != m.rows() {
        return Err(invalid!("vector of length {} against {} rows", b.len(), m.rows()));
    }
    if b.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let base = bareiss_rank_profile(&integer_rows(m), m.cols()).0;
    let ext = bareiss_rank_profile(&integer_rows(&m.with_column(b)), m.cols() + 1).0;
    Ok(base == ext)
}

/// `m * v` for a rational matrix.
pub fn mat_vec(m: &RationalMatrix, v: &[BigRational]) -> Vec<BigRational> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .fold(BigRational::zero(), |s, x| s + x)
        })
        .collect()
}

/// Largest absolute value of an entry, as a bit length.
pub fn max_entry_bits(m: &IntMatrix) -> u64 {
    (0..m.rows()).flat_map(|i| m.row(i).iter()).map(|x| x.abs().bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Zp, MERSENNE_61};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn qm(rows: &[&[i64]]) -> RationalMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(), cols)
    }

    fn random_int(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> IntMatrix {
        Matrix::new(rows, cols, (0..rows * cols).map(|_| BigInt::from(rng.gen_range(lo..=hi))).collect())
    }

    #[test]
    fn echelon_examples() {
        let id = qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let e = echelonize(&id);
        assert_eq!((e.rank, e.pivot_columns.clone()), (3, vec![0, 1, 2]));
        assert_eq!(e.reduced_rows, id);
        let e = echelonize(&qm(&[&[1, 2], &[2, 4]]));
        assert_eq!((e.rank, e.pivot_columns), (1, vec![0]));
        let e = echelonize(&qm(&[&[1, 1, 0], &[0, 1, 1]]));
        assert_eq!((e.rank, e.pivot_columns), (2, vec![0, 1]));
        assert_eq!(e.reduced_rows, qm(&[&[1, 0, -1], &[0, 1, 1]]));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&qm(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
        assert!(kernel_basis(&qm(&[&[1, 0], &[0, 1]])).is_empty());
        assert_eq!(kernel_basis(&Matrix::filled(2, 3, q(0))).len(), 3);
    }

    #[test]
    fn column_space_examples() {
        let id = qm(&[&[1, 0], &[0, 1]]);
        assert!(in_column_space(&id, &[q(0), q(0)]).unwrap());
        assert!(in_column_space(&id, &[q(3), q(-7)]).unwrap());
        let col = qm(&[&[1], &[0]]);
        assert!(!in_column_space(&col, &[q(0), q(1)]).unwrap());
        assert!(in_column_space(&col, &[q(0)]).is_err());
    }

    #[test]
    fn field_tag_parsing() {
        assert_eq!("rational".parse::<FieldTag>().unwrap(), FieldTag::Rationals);
        assert_eq!("prime:101".parse::<FieldTag>().unwrap(), FieldTag::Prime(101));
        assert_eq!("prime".parse::<FieldTag>().unwrap(), FieldTag::Prime(MERSENNE_61));
        assert!("prime:100".parse::<FieldTag>().is_err());
        assert!("real".parse::<FieldTag>().is_err());
        assert_eq!(FieldTag::Prime(101).to_string(), "prime:101");
    }

    #[test]
    fn rational_and_prime_ranks_agree_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            // low-rank products make the comparison non-trivial
            let m = if rng.gen_bool(0.5) {
                random_int(&mut rng, 20, 30, -9, 9)
            } else {
                let k = rng.gen_range(1..20);
                let a = random_int(&mut rng, 20, k, -3, 3);
                let b = random_int(&mut rng, k, 30, -3, 3);
                let data = (0..20)
                    .flat_map(|i| {
                        let (a, b) = (&a, &b);
                        (0..30).map(move |j| (0..k).map(|t| a.get(i, t) * b.get(t, j)).sum::<BigInt>())
                    })
                    .collect();
                Matrix::new(20, 30, data)
            };
            let rational = bareiss_rank_profile(&m.row_vecs(), 30).0;
            let prime = rank_mod(&PrimeRows::from_int(&m, MERSENNE_61));
            let exact = exact_rank(&m, None).unwrap().rank;
            assert_eq!(rational, exact);
            if prime != rational {
                // a bad prime is possible in principle; the rational answer stands
                assert!(prime < rational);
            }
            assert_eq!(rational, bareiss_rank_profile(&m.transpose().row_vecs(), 20).0);
        }
    }

    #[test]
    fn kernel_vectors_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..10);
            let m = to_rational(&random_int(&mut rng, rows, cols, -2, 2));
            let ker = kernel_basis(&m);
            assert_eq!(ker.len(), cols - echelonize(&m).rank);
            for v in ker {
                assert!(mat_vec(&m, &v).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn generic_gauss_jordan_matches_bareiss() {
        type F = Zp<MERSENNE_61>;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = random_int(&mut rng, 6, 8, -2, 2);
            let r = to_rational(&m);
            let gj = gauss_jordan(r.clone());
            let ba = echelonize(&r);
            assert_eq!(gj, ba);
            let fp = gauss_jordan(m.map(F::from_bigint));
            let modp = echelon_mod(PrimeRows::from_int(&m, MERSENNE_61), true);
            assert_eq!(fp.pivot_columns, modp.pivot_columns);
            assert_eq!(fp.reduced_rows.map(|x| x.value()), modp.reduced_rows);
        }
    }
}
