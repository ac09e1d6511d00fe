//! Degree pieces of `I = (x_1^a, .., x_n^a, g_1, .., g_r)`, the echelon
//! oracle for revlex initial ideals, and ranks of multiplication maps on
//! `A = P_n / I`.
//!
//! Most matrices live in the "reduced" space: columns are the degree-`d`
//! monomials with every exponent below `a`, and rows are `m * g` with every
//! term divisible by a pure power deleted. The pure powers span a monomial
//! subspace, so the full picture is recovered by adding those monomials back.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::form::IntForm;
use crate::hilbert::{aci_hilbert, froberg_truncation, power_ci_hilbert};
use crate::linalg::{bareiss_rank_profile, echelon_mod, exact_rank, rank_mod, FieldTag, IntMatrix, Matrix, PrimeRows};
use crate::monomial::{enumerate_degree_piece, Monomial};
use crate::rng::{linear_coeffs, Stream};

#[derive(Clone, Debug, PartialEq)]
pub struct IdealSpec {
    pub n: usize,
    pub a: u32,
    /// Generators besides the pure powers, each homogeneous of degree `a`.
    pub extra_forms: Vec<IntForm>,
}

impl IdealSpec {
    /// `I_{n,a} = (x_1^a, .., x_n^a, (x_1 + .. + x_n)^a)`.
    pub fn aci(n: usize, a: u32) -> Result<Self> {
        if n == 0 || a == 0 {
            return Err(invalid!("need n >= 1 and a >= 1"));
        }
        Ok(IdealSpec { n, a, extra_forms: vec![IntForm::sum_of_variables(n).pow(a)] })
    }

    pub fn with_forms(n: usize, a: u32, extra_forms: Vec<IntForm>) -> Result<Self> {
        if n == 0 || a == 0 {
            return Err(invalid!("need n >= 1 and a >= 1"));
        }
        for f in &extra_forms {
            if f.nvars() != n || f.degree() != a {
                return Err(invalid!("extra form must be of degree {a} in {n} variables"));
            }
        }
        Ok(IdealSpec { n, a, extra_forms })
    }

    /// Pure powers plus `l_j^a` for linear forms with the given coefficients.
    pub fn with_linear_powers(n: usize, a: u32, linear: &[Vec<BigInt>]) -> Result<Self> {
        let forms = linear
            .iter()
            .map(|c| {
                if c.len() != n {
                    Err(invalid!("linear form has {} coefficients, expected {n}", c.len()))
                } else {
                    Ok(IntForm::linear(c).pow(a))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        IdealSpec::with_forms(n, a, forms)
    }

    /// True when this is `I_{n,a}`, whose Hilbert function is known in closed form.
    pub fn is_aci(&self) -> bool {
        self.extra_forms.len() == 1 && self.extra_forms[0] == IntForm::sum_of_variables(self.n).pow(self.a)
    }
}

/// Rows spanning a degree piece, with the monomials indexing the columns
/// in revlex-descending order.
#[derive(Clone, Debug)]
pub struct DegreePiece {
    pub columns: Vec<Monomial>,
    pub matrix: IntMatrix,
}

fn rows_for(columns: &[Monomial], generators: &[(IntForm, Vec<Monomial>)], cap: Option<u32>) -> IntMatrix {
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for (g, multipliers) in generators {
        for m in multipliers {
            let mut row = vec![BigInt::zero(); columns.len()];
            let mut any = false;
            for (t, c) in g.terms() {
                let mm = t.mul(m);
                if cap.is_some_and(|a| mm.max_exponent() >= a) {
                    continue;
                }
                row[index[&mm]] += c;
                any = true;
            }
            if any && row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows, columns.len())
}

/// Reduced rows `m * g` in `n` variables with exponents below `a`.
pub fn reduced_piece(n: usize, a: u32, forms: &[IntForm], d: u32) -> DegreePiece {
    let columns = enumerate_degree_piece(n, d, Some(a - 1));
    let generators: Vec<(IntForm, Vec<Monomial>)> = forms
        .iter()
        .filter(|g| g.degree() <= d && !g.is_zero())
        .map(|g| (g.clone(), enumerate_degree_piece(n, d - g.degree(), Some(a - 1))))
        .collect();
    let matrix = rows_for(&columns, &generators, Some(a));
    DegreePiece { columns, matrix }
}

/// All products `m * g` for generators `g` (pure powers included) and
/// monomials `m` of complementary degree; columns are all degree-`d` monomials.
pub fn ideal_degree_basis(spec: &IdealSpec, d: u32) -> DegreePiece {
    let columns = enumerate_degree_piece(spec.n, d, None);
    if d < spec.a {
        return DegreePiece { matrix: Matrix::from_rows(Vec::new(), columns.len()), columns };
    }
    let multipliers = enumerate_degree_piece(spec.n, d - spec.a, None);
    let mut generators: Vec<(IntForm, Vec<Monomial>)> = (0..spec.n)
        .map(|i| (IntForm::term(Monomial::var_power(spec.n, i, spec.a), BigInt::from(1)), multipliers.clone()))
        .collect();
    generators.extend(spec.extra_forms.iter().map(|g| (g.clone(), multipliers.clone())));
    DegreePiece { matrix: rows_for(&columns, &generators, None), columns }
}

pub fn reduced_degree_basis(spec: &IdealSpec, d: u32) -> DegreePiece {
    reduced_piece(spec.n, spec.a, &spec.extra_forms, d)
}

fn rank_in(m: &IntMatrix, field: FieldTag, upper_hint: Option<usize>) -> Result<usize> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    match field {
        FieldTag::Prime(p) => Ok(rank_mod(&PrimeRows::from_int(m, p))),
        FieldTag::Rationals => Ok(exact_rank(m, upper_hint)?.rank),
    }
}

fn pivots_in(m: &IntMatrix, field: FieldTag) -> Vec<usize> {
    match field {
        FieldTag::Prime(p) => echelon_mod(PrimeRows::from_int(m, p), false).pivot_columns,
        FieldTag::Rationals => bareiss_rank_profile(&m.row_vecs(), m.cols()).1,
    }
}

/// Degree-`d` monomials of `in(I)`, revlex-descending.
pub fn initial_degree_piece(spec: &IdealSpec, d: u32, field: FieldTag) -> Vec<Monomial> {
    let piece = reduced_degree_basis(spec, d);
    let leading: HashSet<&Monomial> = pivots_in(&piece.matrix, field).into_iter().map(|c| &piece.columns[c]).collect();
    enumerate_degree_piece(spec.n, d, None)
        .into_iter()
        .filter(|m| m.max_exponent() >= spec.a || leading.contains(m))
        .collect()
}

/// Degree-`d` monomials outside `in(I)`, revlex-descending.
pub fn standard_monomials(spec: &IdealSpec, d: u32, field: FieldTag) -> Vec<Monomial> {
    let piece = reduced_degree_basis(spec, d);
    let pivots: HashSet<usize> = pivots_in(&piece.matrix, field).into_iter().collect();
    piece.columns.into_iter().enumerate().filter(|(i, _)| !pivots.contains(i)).map(|(_, m)| m).collect()
}

/// Minimal generators of `in(I)` of degree `<= up_to` other than the pure powers.
pub fn minimal_initial_generators(spec: &IdealSpec, up_to: u32, field: FieldTag) -> Vec<Monomial> {
    let mut gens: Vec<Monomial> = Vec::new();
    let mut previous: HashSet<Monomial> = HashSet::new();
    for d in 1..=up_to {
        let piece: Vec<Monomial> =
            initial_degree_piece(spec, d, field).into_iter().filter(|m| m.max_exponent() < spec.a).collect();
        for m in &piece {
            let from_below = m.support().iter().any(|&i| {
                let lower = m.div(&Monomial::var_power(spec.n, i, 1)).expect("variable divides");
                previous.contains(&lower) || lower.max_exponent() >= spec.a
            });
            if !from_below {
                gens.push(m.clone());
            }
        }
        previous = piece.into_iter().collect();
    }
    gens
}

/// `N(a, d) = ceil(2d / (a - 1))`.
pub fn support_bound(a: u32, d: u32) -> Result<usize> {
    if a < 2 {
        return Err(invalid!("power must be at least 2"));
    }
    Ok((2 * d).div_ceil(a - 1) as usize)
}

/// Whether every non-pure-power minimal generator of `in(I_{n,a})` of degree
/// `<= d` involves only `x_1..x_{N(a,d)}`.
pub fn support_bound_check(n: usize, a: u32, d: u32, field: FieldTag) -> Result<bool> {
    if d < a || a < 2 {
        return Err(invalid!("need d >= a >= 2"));
    }
    let bound = support_bound(a, d)?;
    if n < bound {
        return Err(invalid!("need n >= N(a, d) = {bound}"));
    }
    let spec = IdealSpec::aci(n, a)?;
    Ok(minimal_initial_generators(&spec, d, field).iter().all(|m| m.supported_in_first(bound)))
}

/// Largest number of columns a degree piece may have before elimination is refused.
pub const PIECE_GUARD: usize = 60_000;

pub fn check_piece_size(n: usize, a: u32, d: u32) -> Result<()> {
    let cols = power_ci_hilbert(n, a, d as usize);
    if cols > PIECE_GUARD.into() {
        return Err(Error::ResourceGuard(format!("degree-{d} piece in {n} variables has {cols} columns (limit {PIECE_GUARD})")));
    }
    Ok(())
}

/// `dim A_d`, from the closed form for `I_{n,a}` and by elimination otherwise.
pub fn quotient_dim(spec: &IdealSpec, d: u32, field: FieldTag) -> Result<usize> {
    quotient_dim_at_least(spec, d, field, 0)
}

/// [`quotient_dim`] given a known lower bound on the dimension, which lets
/// the exact rank stop as soon as the bound is attained.
pub fn quotient_dim_at_least(spec: &IdealSpec, d: u32, field: FieldTag, lower: usize) -> Result<usize> {
    if spec.is_aci() {
        return Ok(aci_hilbert(spec.n, spec.a, d as usize).to_usize().expect("dimension fits usize"));
    }
    check_piece_size(spec.n, spec.a, d)?;
    let piece = reduced_degree_basis(spec, d);
    let cols = piece.columns.len();
    let r = rank_in(&piece.matrix, field, Some(cols.saturating_sub(lower)))?;
    Ok(cols - r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRank {
    pub d: u32,
    pub rank: usize,
    pub dim_below: usize,
    pub dim_at: usize,
}

impl MapRank {
    pub fn injective(&self) -> bool {
        self.rank == self.dim_below
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.dim_at
    }

    pub fn maximal_rank(&self) -> bool {
        self.rank == self.dim_below.min(self.dim_at)
    }
}

fn check_linear(spec: &IdealSpec, ell: &IntForm) -> Result<()> {
    if ell.nvars() != spec.n || ell.degree() != 1 {
        return Err(invalid!("expected a linear form in {} variables", spec.n));
    }
    Ok(())
}

/// Rank of `x ell: A_{d-1} -> A_d`, computed as `dim A_d - dim (A / ell A)_d`.
/// Eliminating the last variable with a nonzero coefficient presents
/// `A / ell A` as a quotient of a polynomial ring in `n - 1` variables.
pub fn multiplication_map_rank(spec: &IdealSpec, d: u32, ell: &IntForm, field: FieldTag) -> Result<MapRank> {
    check_linear(spec, ell)?;
    let n = spec.n;
    let dim_at = quotient_dim(spec, d, field)?;
    let dim_below = if d == 0 { 0 } else { quotient_dim(spec, d - 1, field)? };
    let coeffs: Vec<BigInt> = (0..n).map(|i| ell.coefficient(&Monomial::var_power(n, i, 1))).collect();
    let Some(k) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return Ok(MapRank { d, rank: 0, dim_below, dim_at });
    };
    let m = n - 1;
    let shrink = |i: usize| if i < k { i } else { i - 1 };
    let images: Vec<IntForm> = (0..n)
        .map(|i| {
            let mut c = vec![BigInt::zero(); m];
            if i == k {
                for (j, cj) in coeffs.iter().enumerate().filter(|&(j, _)| j != k) {
                    c[shrink(j)] = -cj.clone();
                }
            } else {
                c[shrink(i)] = coeffs[k].clone();
            }
            IntForm::linear(&c)
        })
        .collect();
    check_piece_size(m, spec.a, d)?;
    let mut forms = vec![images[k].pow(spec.a)];
    forms.extend(spec.extra_forms.iter().map(|g| g.substitute(&images, m)));
    let piece = reduced_piece(m, spec.a, &forms, d);
    let cols = piece.columns.len();
    let hint = cols.saturating_sub(dim_at.saturating_sub(dim_below));
    let coker = cols - rank_in(&piece.matrix, field, Some(hint))?;
    let rank = dim_at.checked_sub(coker).ok_or_else(|| {
        Error::InternalFault(format!("cokernel dimension {coker} exceeds dim A_{d} = {dim_at}"))
    })?;
    if rank > dim_below {
        return Err(Error::InternalFault(format!("map rank {rank} exceeds dim A_{} = {dim_below}", d.saturating_sub(1))));
    }
    Ok(MapRank { d, rank, dim_below, dim_at })
}

/// The same rank from the definition: stack `I_d` with `ell * mu` for the
/// standard monomials `mu` of degree `d - 1` and compare ranks.
pub fn multiplication_map_rank_direct(spec: &IdealSpec, d: u32, ell: &IntForm, field: FieldTag) -> Result<MapRank> {
    check_linear(spec, ell)?;
    let piece = reduced_degree_basis(spec, d);
    let below = if d == 0 { Vec::new() } else { standard_monomials(spec, d - 1, field) };
    let images = rows_for(&piece.columns, &[(ell.clone(), below.clone())], Some(spec.a));
    let r_ideal = rank_in(&piece.matrix, field, None)?;
    let r_all = rank_in(&piece.matrix.stack(&images), field, None)?;
    Ok(MapRank { d, rank: r_all - r_ideal, dim_below: below.len(), dim_at: piece.columns.len() - r_ideal })
}

/// A linear form with coefficients drawn from `seed`.
pub fn random_linear_form(n: usize, seed: u64) -> IntForm {
    IntForm::linear(&linear_coeffs(n, seed, Stream::MapForm))
}

/// How far a verdict can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    /// Ranks computed exactly over the rationals.
    Exact,
    /// A modular rank reached the largest possible value, which bounds the
    /// rational rank from below.
    PrimeLowerBound,
    /// Modular ranks only.
    PrimeOnly,
}

/// Largest map rank over the seeds (the generic rank is at least every
/// specialization), escalating to exact ranks when the prime-field answer
/// is not already certified.
fn seeded_rank(
    spec: &IdealSpec,
    d: u32,
    seeds: &[u64],
    field: FieldTag,
    verify_rational: bool,
) -> Result<(MapRank, Vec<usize>, Certainty)> {
    if seeds.is_empty() {
        return Err(invalid!("at least one seed is required"));
    }
    let run = |f: FieldTag| -> Result<Vec<MapRank>> {
        seeds.iter().map(|&s| multiplication_map_rank(spec, d, &random_linear_form(spec.n, s), f)).collect()
    };
    let mut ranks = run(field)?;
    let mut certainty = if field == FieldTag::Rationals { Certainty::Exact } else { Certainty::PrimeOnly };
    let best = *ranks.iter().max_by_key(|r| r.rank).unwrap();
    let agree = ranks.iter().all(|r| r.rank == best.rank);
    if certainty == Certainty::PrimeOnly {
        if best.maximal_rank() && !verify_rational {
            certainty = Certainty::PrimeLowerBound;
        } else if !agree || verify_rational {
            ranks = run(FieldTag::Rationals)?;
            certainty = Certainty::Exact;
        }
    }
    let best = *ranks.iter().max_by_key(|r| r.rank).unwrap();
    Ok((best, ranks.iter().map(|r| r.rank).collect(), certainty))
}

/// Smallest integer `n` with `n >= N(a, d) + (2d - 1) / (a - 1)`.
pub fn general_threshold(a: u32, d: u32) -> Result<usize> {
    Ok(support_bound(a, d)? + (2 * d - 1).div_ceil(a - 1) as usize)
}

/// The proven injectivity threshold: `3d - 2` for squares,
/// `ceil((3d - 3) / 2)` for cubes and the general bound otherwise.
pub fn proven_threshold(a: u32, d: u32) -> Result<usize> {
    match a {
        2 => Ok(3 * d as usize - 2),
        3 => Ok((3 * d as usize - 3).div_ceil(2)),
        _ => general_threshold(a, d),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub n: usize,
    pub d: u32,
    pub a: u32,
    pub dim_below: usize,
    pub dim_at: usize,
    pub rank: usize,
    pub seed_ranks: Vec<usize>,
    pub injective: bool,
    /// What the theorems predict: injective at or above the proven
    /// threshold, and for squares not injective below it.
    pub expected: Option<bool>,
    pub certainty: Certainty,
}

impl ThresholdRow {
    pub fn contradicts_theorem(&self) -> bool {
        self.expected.is_some_and(|e| e != self.injective)
    }
}

pub fn injectivity_threshold_check(
    a: u32,
    d: u32,
    ns: &[usize],
    seeds: &[u64],
    field: FieldTag,
    verify_rational: bool,
) -> Result<Vec<ThresholdRow>> {
    if a < 2 || d < a {
        return Err(invalid!("need d >= a >= 2"));
    }
    let threshold = proven_threshold(a, d)?;
    ns.iter()
        .map(|&n| {
            let spec = IdealSpec::aci(n, a)?;
            let (best, seed_ranks, certainty) = seeded_rank(&spec, d, seeds, field, verify_rational)?;
            let expected = if n >= threshold {
                Some(true)
            } else if a == 2 && d > 2 && n + 2 >= 2 * d as usize {
                Some(false)
            } else {
                None
            };
            Ok(ThresholdRow {
                n,
                d,
                a,
                dim_below: best.dim_below,
                dim_at: best.dim_at,
                rank: best.rank,
                seed_ranks,
                injective: best.injective(),
                expected,
                certainty,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeVerdict {
    pub d: u32,
    pub dim_below: usize,
    pub dim_at: usize,
    pub map_rank: usize,
    pub injective: bool,
    pub surjective: bool,
    pub maximal_rank: bool,
    pub certainty: Certainty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpReport {
    pub n: usize,
    pub a: u32,
    pub degrees: Vec<DegreeVerdict>,
    pub overall_wlp: bool,
    pub seeds_used: Vec<u64>,
}

/// Maximal-rank verdicts of `x ell: A_{d-1} -> A_d` for `I_{n,p}` and every
/// `d` up to the top nonzero degree.
pub fn wlp_sweep(n: usize, p: u32, seeds: &[u64], field: FieldTag, verify_rational: bool) -> Result<WlpReport> {
    if n < 2 || p < 1 {
        return Err(invalid!("need n >= 2 and p >= 1"));
    }
    let spec = IdealSpec::aci(n, p)?;
    let mut top = 0u32;
    while !aci_hilbert(n, p, top as usize + 1).is_zero() {
        top += 1;
    }
    let mut degrees = Vec::new();
    for d in 1..=top {
        let (best, _, certainty) = seeded_rank(&spec, d, seeds, field, verify_rational)?;
        degrees.push(DegreeVerdict {
            d,
            dim_below: best.dim_below,
            dim_at: best.dim_at,
            map_rank: best.rank,
            injective: best.injective(),
            surjective: best.surjective(),
            maximal_rank: best.maximal_rank(),
            certainty,
        });
    }
    let overall_wlp = degrees.iter().all(|v| v.maximal_rank);
    Ok(WlpReport { n, a: p, degrees, overall_wlp, seeds_used: seeds.to_vec() })
}

/// Matrix of `x (x_1 + .. + x_n)` between standard monomials of a monomial
/// ideal: rows indexed by `at`, columns by `below`.
pub fn monomial_map_matrix(below: &[Monomial], at: &[Monomial]) -> IntMatrix {
    let index: HashMap<&Monomial, usize> = at.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::filled(at.len(), below.len(), BigInt::zero());
    for (j, mu) in below.iter().enumerate() {
        for i in 0..mu.nvars() {
            if let Some(&r) = index.get(&mu.mul_var(i, 1)) {
                mat.set(r, j, BigInt::from(1));
            }
        }
    }
    mat
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WiebeRow {
    pub n: usize,
    pub a: u32,
    pub d: u32,
    pub monomial_injective: bool,
    pub generic_injective: bool,
}

impl WiebeRow {
    /// Injectivity on the monomial quotient must pass to the original one.
    pub fn consistent(&self) -> bool {
        !self.monomial_injective || self.generic_injective
    }
}

pub fn wiebe_check(n: usize, a: u32, d: u32, seeds: &[u64]) -> Result<WiebeRow> {
    if d == 0 {
        return Err(invalid!("need d >= 1"));
    }
    let spec = IdealSpec::aci(n, a)?;
    let below = standard_monomials(&spec, d - 1, FieldTag::Rationals);
    let at = standard_monomials(&spec, d, FieldTag::Rationals);
    let mono = monomial_map_matrix(&below, &at);
    let monomial_injective = bareiss_rank_profile(&mono.row_vecs(), mono.cols()).0 == below.len();
    let (best, _, _) = seeded_rank(&spec, d, seeds, FieldTag::Rationals, false)?;
    Ok(WiebeRow { n, a, d, monomial_injective, generic_injective: best.injective() })
}

/// Checks the vanishing property of kernel elements of `x (x_1 + .. + x_n)`
/// on `P / in(I_{n,a})` from degree `d - 1`: for every standard monomial `M`
/// of degree `2d - 1`, the coefficient of every degree-`(d-1)` divisor of
/// `M` is zero. Returns the number of kernel basis vectors examined.
pub fn eddings_vraciu_check(n: usize, a: u32, d: u32) -> Result<(bool, usize)> {
    if d == 0 {
        return Err(invalid!("need d >= 1"));
    }
    let spec = IdealSpec::aci(n, a)?;
    let below = standard_monomials(&spec, d - 1, FieldTag::Rationals);
    let at = standard_monomials(&spec, d, FieldTag::Rationals);
    let top = standard_monomials(&spec, 2 * d - 1, FieldTag::Rationals);
    let kernel = crate::linalg::kernel_basis(&crate::linalg::to_rational(&monomial_map_matrix(&below, &at)));
    let forced_zero: Vec<bool> = below.iter().map(|mu| top.iter().any(|big| mu.divides(big))).collect();
    let ok = kernel.iter().all(|v| v.iter().zip(&forced_zero).all(|(c, &z)| !z || c.is_zero()));
    Ok((ok, kernel.len()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobergRow {
    pub d: u32,
    pub predicted: u64,
    pub exact_dim: usize,
}

/// Exact dimensions of `P_n / (x_1^a, .., x_n^a, l_1^a, l_2^a)` for random
/// `l_1, l_2`, next to the truncated series for `n + 2` forms of degree `a`.
pub fn froberg_check(n: usize, a: u32, up_to: u32, seed: u64, field: FieldTag) -> Result<Vec<FrobergRow>> {
    let spec = IdealSpec::with_linear_powers(
        n,
        a,
        &[linear_coeffs(n, seed, Stream::ExtraForm1), linear_coeffs(n, seed, Stream::ExtraForm2)],
    )?;
    let series = froberg_truncation(n, &vec![a; n + 2], up_to as usize)?;
    (0..=up_to)
        .map(|d| {
            let predicted = series.coefficients.get(d as usize).map_or(0, |c| c.to_u64().expect("fits"));
            let exact_dim = quotient_dim_at_least(&spec, d, field, predicted as usize)?;
            Ok(FrobergRow { d, predicted, exact_dim })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{in_combinatorial_ideal, initial_generators, Case};
    use crate::hilbert::aci_hilbert;

    const Q: FieldTag = FieldTag::Rationals;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degree_basis_examples() {
        let spec = IdealSpec::aci(2, 2).unwrap();
        let b = ideal_degree_basis(&spec, 2);
        assert_eq!((b.matrix.rows(), b.matrix.cols()), (3, 3));
        assert_eq!(rank_in(&b.matrix, Q, None).unwrap(), 3);
        let spec = IdealSpec::aci(6, 2).unwrap();
        let b = ideal_degree_basis(&spec, 2);
        assert_eq!(b.matrix.cols(), 21);
        assert_eq!(rank_in(&b.matrix, Q, None).unwrap(), 7);
        let spec = IdealSpec::aci(2, 3).unwrap();
        assert_eq!(rank_in(&ideal_degree_basis(&spec, 3).matrix, Q, None).unwrap(), 3);
        assert_eq!(ideal_degree_basis(&spec, 2).matrix.rows(), 0);
    }

    #[test]
    fn initial_piece_examples() {
        let spec = IdealSpec::aci(6, 2).unwrap();
        let mut expect: Vec<Monomial> = (0..6).map(|i| Monomial::var_power(6, i, 2)).collect();
        expect.push(Monomial::from_subset(6, &[0, 1]));
        expect.sort_by(|a, b| b.cmp(a));
        assert_eq!(initial_degree_piece(&spec, 2, Q), expect);
        let spec = IdealSpec::aci(4, 2).unwrap();
        assert_eq!(initial_degree_piece(&spec, 3, Q).len(), 20);
        let spec = IdealSpec::aci(2, 3).unwrap();
        let mut expect = vec![mono(&[3, 0]), mono(&[0, 3]), mono(&[2, 1])];
        expect.sort_by(|a, b| b.cmp(a));
        assert_eq!(initial_degree_piece(&spec, 3, Q), expect);
    }

    #[test]
    fn reduced_and_full_bases_agree() {
        for (n, a) in [(3, 2), (4, 2), (5, 2), (3, 3), (4, 3), (3, 4)] {
            let spec = IdealSpec::aci(n, a).unwrap();
            for d in 0..=6u32 {
                let full = ideal_degree_basis(&spec, d);
                let pivots = pivots_in(&full.matrix, Q);
                let lead: Vec<Monomial> = pivots.into_iter().map(|c| full.columns[c].clone()).collect();
                assert_eq!(lead, initial_degree_piece(&spec, d, Q), "n={n} a={a} d={d}");
                let dim = full.columns.len() - lead.len();
                assert_eq!(dim as u64, aci_hilbert(n, a, d as usize).to_u64().unwrap());
            }
        }
    }

    #[test]
    fn oracle_matches_generators_small() {
        for n in 1..=7usize {
            let spec = IdealSpec::aci(n, 2).unwrap();
            let gens = initial_generators(Case::Squares, n, 5).unwrap();
            for d in 0..=4u32 {
                let oracle = initial_degree_piece(&spec, d, Q);
                let comb: Vec<Monomial> = enumerate_degree_piece(n, d, None)
                    .into_iter()
                    .filter(|m| in_combinatorial_ideal(m, &gens).unwrap())
                    .collect();
                assert_eq!(oracle, comb, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn support_bound_examples() {
        assert!(support_bound_check(6, 2, 3, Q).unwrap());
        assert!(support_bound_check(4, 3, 3, Q).unwrap());
        assert!(support_bound_check(8, 2, 4, Q).unwrap());
        assert!(support_bound_check(5, 2, 4, Q).is_err());
        assert_eq!(support_bound(4, 5).unwrap(), 4);
    }

    #[test]
    fn map_rank_examples() {
        let spec = IdealSpec::aci(7, 2).unwrap();
        let r = multiplication_map_rank(&spec, 3, &random_linear_form(7, 1), Q).unwrap();
        assert_eq!((r.rank, r.dim_below, r.dim_at), (20, 20, 28));
        let spec = IdealSpec::aci(6, 2).unwrap();
        let r = multiplication_map_rank(&spec, 3, &random_linear_form(6, 1), Q).unwrap();
        assert_eq!((r.rank, r.dim_below), (13, 14));
        let zero = IntForm::zero(6, 1);
        assert_eq!(multiplication_map_rank(&spec, 3, &zero, Q).unwrap().rank, 0);
        assert!(multiplication_map_rank(&spec, 3, &random_linear_form(5, 1), Q).is_err());
    }

    #[test]
    fn cokernel_route_matches_definition() {
        for (n, a) in [(3, 2), (4, 2), (5, 2), (6, 2), (3, 3), (4, 3), (3, 4)] {
            let spec = IdealSpec::aci(n, a).unwrap();
            for d in 1..=5u32 {
                for seed in 1..=2u64 {
                    let ell = random_linear_form(n, seed);
                    let fast = multiplication_map_rank(&spec, d, &ell, Q).unwrap();
                    let slow = multiplication_map_rank_direct(&spec, d, &ell, Q).unwrap();
                    assert_eq!(fast, slow, "n={n} a={a} d={d}");
                }
            }
        }
        // a spec that is not I_{n,a}: dimensions come from elimination
        let spec = IdealSpec::with_linear_powers(4, 2, &[linear_coeffs(4, 5, Stream::ExtraForm1)]).unwrap();
        for d in 1..=3 {
            let ell = random_linear_form(4, 2);
            assert_eq!(
                multiplication_map_rank(&spec, d, &ell, Q).unwrap(),
                multiplication_map_rank_direct(&spec, d, &ell, Q).unwrap()
            );
        }
    }

    #[test]
    fn prime_rank_is_a_lower_bound() {
        let spec = IdealSpec::aci(6, 2).unwrap();
        for d in 1..=4 {
            let ell = random_linear_form(6, 3);
            let q = multiplication_map_rank(&spec, d, &ell, Q).unwrap();
            let p = multiplication_map_rank(&spec, d, &ell, FieldTag::Prime(101)).unwrap();
            assert!(p.rank <= q.rank);
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(general_threshold(4, 4).unwrap(), 6);
        assert_eq!(general_threshold(4, 5).unwrap(), 7);
        assert_eq!(general_threshold(5, 5).unwrap(), 6);
        assert_eq!(proven_threshold(3, 5).unwrap(), 6);
        assert_eq!(proven_threshold(2, 4).unwrap(), 10);
        let rows = injectivity_threshold_check(2, 3, &[5, 6, 7, 8, 9], &[1, 2], FieldTag::default(), false).unwrap();
        let verdicts: Vec<bool> = rows.iter().map(|r| r.injective).collect();
        assert_eq!(verdicts, [false, false, true, true, true]);
        assert!(rows.iter().all(|r| !r.contradicts_theorem()));
    }

    #[test]
    fn wlp_examples() {
        assert!(wlp_sweep(7, 2, &[1, 2], Q, false).unwrap().overall_wlp);
        assert!(!wlp_sweep(6, 2, &[1, 2], Q, false).unwrap().overall_wlp);
        assert!(wlp_sweep(5, 3, &[1], FieldTag::default(), false).unwrap().overall_wlp);
    }

    #[test]
    fn cross_checks_small() {
        for n in 3..=6 {
            for d in 2..=3 {
                assert!(wiebe_check(n, 2, d, &[1]).unwrap().consistent());
                assert!(eddings_vraciu_check(n, 2, d).unwrap().0);
            }
        }
    }

    #[test]
    fn froberg_small() {
        let rows = froberg_check(5, 2, 3, 1, Q).unwrap();
        let dims: Vec<usize> = rows.iter().map(|r| r.exact_dim).collect();
        let predicted: Vec<u64> = rows.iter().map(|r| r.predicted).collect();
        assert_eq!(predicted, [1, 5, 8, 0]);
        assert_eq!(dims, [1, 5, 8, 1]);
    }
}
