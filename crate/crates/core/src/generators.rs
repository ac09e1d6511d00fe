//! Explicit monomial generating sets for the reverse lexicographic initial
//! ideals of `(x_1^a, .., x_n^a, (x_1 + .. + x_n)^a)` when `a` is 2 or 3.
//!
//! Squares: `D_k` is the set of square-free degree-`k` monomials in
//! `x_1..x_{2k-2}` that are not divisible by any square-free monomial of
//! degree `k'` in `x_1..x_{2k'-2}` for `k' < k`.
//!
//! Cubes: `D_k` is the set of degree-`k` monomials with exponents at most 2 in
//! `x_1..x_{k-1}` whose exponent of `x_{k-1}` is at most 1. These sets are not
//! antichains across `k` (`x1^2*x2` divides `x1^2*x2^2`), so
//! [`initial_generators`] prunes non-minimal elements.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::monomial::{enumerate_degree_piece, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    Squares,
    Cubes,
    GenericPower(u32),
}

impl Case {
    pub fn power(self) -> u32 {
        match self {
            Case::Squares => 2,
            Case::Cubes => 3,
            Case::GenericPower(a) => a,
        }
    }

    /// `Squares` for 2, `Cubes` for 3, `GenericPower(a)` otherwise.
    pub fn for_power(a: u32) -> Case {
        match a {
            2 => Case::Squares,
            3 => Case::Cubes,
            a => Case::GenericPower(a),
        }
    }
}

/// Pure powers `x_i^a` (implicit) plus the listed non-pure-power generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub case: Case,
    pub n: usize,
    pub generators: Vec<Monomial>,
    pub pure_power_exponent: u32,
}

impl GeneratorSet {
    pub fn pure_powers(&self) -> Vec<Monomial> {
        (0..self.n).map(|i| Monomial::var_power(self.n, i, self.pure_power_exponent)).collect()
    }

    /// Pure powers followed by the other generators.
    pub fn all_generators(&self) -> Vec<Monomial> {
        let mut out = self.pure_powers();
        out.extend(self.generators.iter().cloned());
        out
    }

    pub fn len(&self) -> usize {
        self.n + self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn squares_dk(k: u32, n: usize) -> Result<Vec<Monomial>> {
    if k < 2 {
        return Err(invalid!("squares D_k needs k >= 2, got {k}"));
    }
    let span = 2 * k as usize - 2;
    if span > n {
        return Err(invalid!("squares D_{k} lives in {span} variables but n = {n}"));
    }
    Ok(enumerate_degree_piece(span, k, Some(1))
        .into_iter()
        .filter(|m| (2..k).all(|kk| !squares_prefix_hit(m, kk)))
        .map(|m| m.with_nvars(n).expect("widening never fails"))
        .collect())
}

/// Whether `m` has at least `k` distinct variables among `x_1..x_{2k-2}`,
/// i.e. is divisible by a square-free degree-`k` monomial in those variables.
fn squares_prefix_hit(m: &Monomial, k: u32) -> bool {
    let span = (2 * k as usize - 2).min(m.nvars());
    let hits = (0..span).filter(|&i| m.exponent(i) > 0).count();
    hits >= k as usize
}

pub fn cubes_dk(k: u32, n: usize) -> Result<Vec<Monomial>> {
    if k < 3 {
        return Err(invalid!("cubes D_k needs k >= 3, got {k}"));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let span = (k as usize - 1).min(n);
    let restrict_last = n >= k as usize - 1;
    Ok(enumerate_degree_piece(span, k, Some(2))
        .into_iter()
        .filter(|m| !restrict_last || m.exponent(span - 1) < 2)
        .map(|m| m.with_nvars(n).expect("widening never fails"))
        .collect())
}

/// Minimal generators of the combinatorial ideal up to `up_to_degree`.
pub fn initial_generators(case: Case, n: usize, up_to_degree: u32) -> Result<GeneratorSet> {
    if n == 0 {
        return Err(invalid!("need at least one variable"));
    }
    let a = case.power();
    if up_to_degree < a {
        return Err(invalid!("up_to_degree {up_to_degree} is below the power {a}"));
    }
    let mut generators = Vec::new();
    match case {
        Case::Squares => {
            let mut k = 2;
            while k <= up_to_degree && 2 * k as usize - 2 <= n {
                generators.extend(squares_dk(k, n)?);
                k += 1;
            }
        }
        Case::Cubes => {
            let top = up_to_degree.min(n as u32 + 1);
            for k in 3..=top {
                generators.extend(cubes_dk(k, n)?);
            }
            // lower-degree generators come first, so scanning the kept prefix suffices
            let mut kept: Vec<Monomial> = Vec::with_capacity(generators.len());
            for g in generators {
                if !kept.iter().any(|h| h.divides(&g)) {
                    kept.push(g);
                }
            }
            generators = kept;
        }
        Case::GenericPower(a) => {
            return Err(invalid!("no explicit generator family for power {a}"));
        }
    }
    Ok(GeneratorSet { case, n, generators, pure_power_exponent: a })
}

/// True iff some generator (pure powers included) divides `m`.
pub fn in_combinatorial_ideal(m: &Monomial, gens: &GeneratorSet) -> Result<bool> {
    if m.nvars() != gens.n {
        return Err(invalid!("monomial in {} variables, generators in {}", m.nvars(), gens.n));
    }
    if m.max_exponent() >= gens.pure_power_exponent {
        return Ok(true);
    }
    Ok(gens.generators.iter().any(|g| g.divides(m)))
}

/// Membership in the squares ideal straight from the counting description:
/// `m` is in it iff it is not square-free or, for some `k` with
/// `2k - 2 <= n` and `k <= up_to_degree`, it uses at least `k` of the
/// variables `x_1..x_{2k-2}`.
pub fn in_squares_ideal_direct(m: &Monomial, up_to_degree: u32) -> bool {
    if !m.is_square_free() {
        return true;
    }
    let n = m.nvars();
    (2..=up_to_degree).take_while(|&k| 2 * k as usize - 2 <= n).any(|k| squares_prefix_hit(m, k))
}
