//! Monomials in a fixed number of variables and the reverse lexicographic order.
//!
//! Variables are stored 0-based (`exponent(0)` is the exponent of `x_1`) and
//! displayed 1-based.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl TryFrom<Vec<u32>> for Monomial {
    type Error = std::convert::Infallible;

    fn try_from(exps: Vec<u32>) -> std::result::Result<Self, Self::Error> {
        Ok(Monomial::new(exps))
    }
}

impl From<Monomial> for Vec<u32> {
    fn from(m: Monomial) -> Self {
        m.exps
    }
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n], degree: 0 }
    }

    /// `x_{i+1}^e` in `n` variables.
    pub fn var_power(n: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; n];
        exps[i] = e;
        Monomial { exps, degree: e }
    }

    /// The square-free monomial `x_S` for a set of 0-based indices.
    pub fn from_subset(n: usize, subset: &[usize]) -> Self {
        let mut exps = vec![0; n];
        for &i in subset {
            exps[i] += 1;
        }
        Monomial::new(exps)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn max_exponent(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    pub fn is_square_free(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// 0-based indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    /// 0-based index of the last variable that occurs, `None` for `1`.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// True when the monomial only involves the first `k` variables.
    pub fn supported_in_first(&self, k: usize) -> bool {
        self.exps.iter().skip(k).all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.degree <= other.degree
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Multiplies by `x_{i+1}^e`.
    pub fn mul_var(&self, i: usize, e: u32) -> Monomial {
        let mut out = self.clone();
        out.exps[i] += e;
        out.degree += e;
        out
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    /// Same exponents viewed in `n` variables; fails if a dropped variable occurs.
    pub fn with_nvars(&self, n: usize) -> Option<Monomial> {
        if n < self.nvars() && !self.supported_in_first(n) {
            return None;
        }
        let mut exps = self.exps.clone();
        exps.resize(n, 0);
        Some(Monomial { exps, degree: self.degree })
    }

    /// Reverse lexicographic comparison: higher degree wins; within a degree
    /// `self > other` iff the last nonzero entry of `self - other` is negative.
    pub fn revlex_cmp(&self, other: &Monomial) -> Result<Ordering> {
        if self.nvars() != other.nvars() {
            return Err(invalid!(
                "revlex comparison of monomials in {} and {} variables",
                self.nvars(),
                other.nvars()
            ));
        }
        Ok(self.revlex_cmp_unchecked(other))
    }

    fn revlex_cmp_unchecked(&self, other: &Monomial) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable is larger
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

/// Variable count first, then reverse lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars().cmp(&other.nvars()).then_with(|| self.revlex_cmp_unchecked(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n` variables with every exponent at most
/// `cap` (`None` for unbounded), sorted revlex-descending.
pub fn enumerate_degree_piece(n: usize, d: u32, cap: Option<u32>) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let cap = cap.unwrap_or(d);
    let mut exps = vec![0u32; n];
    fill(&mut exps, 0, d, cap, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(exps: &mut [u32], pos: usize, remaining: u32, cap: u32, out: &mut Vec<Monomial>) {
    let n = exps.len();
    if pos == n - 1 {
        if remaining <= cap {
            exps[pos] = remaining;
            out.push(Monomial::new(exps.to_vec()));
            exps[pos] = 0;
        }
        return;
    }
    let slots_after = (n - pos - 1) as u64;
    for e in 0..=remaining.min(cap) {
        let rest = remaining - e;
        if u64::from(rest) > slots_after * u64::from(cap) {
            continue;
        }
        exps[pos] = e;
        fill(exps, pos + 1, rest, cap, out);
    }
    exps[pos] = 0;
}
