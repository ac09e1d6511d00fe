//! Explicit kernel elements of `x L` on `P_n / (x_1^2, .., x_n^2, (x_1 + .. + x_n)^2)`
//! in degree `d - 1` when `n < 3d - 2`, with `L = a_1 x_1 + .. + a_n x_n`.
//!
//! `Q = sum_{|I| = d-1} a_I (sum_{|J| = n-2d+2} eps(|I & J|) a_J) x_I` and
//! `Q' = sum_{|K| = d-2} (sum_{|L| = d-2} psi(|K & L|) a_1..a_n / a_L) x_K`
//! satisfy `(d - 1) L Q = Q' (x_1 + .. + x_n)^2` modulo the squares, so
//! `L Q` lies in the ideal, while `Q` itself does not.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::form::RationalForm;
use crate::linalg::{exact_rank, in_column_space, IntMatrix, Matrix};
use crate::monomial::Monomial;
use crate::quotient::{reduced_degree_basis, IdealSpec};
use crate::rng::{rng_for, witness_values, Stream};
use crate::subsets::{binomial, Subsets};

/// Largest number of `(d-1)`-subsets a witness may index.
pub const SUBSET_GUARD: u64 = 1_000_000;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn mask(s: &[usize]) -> u64 {
    s.iter().fold(0, |m, &i| m | 1 << i)
}

fn subset_masks(n: usize, k: usize) -> Vec<u64> {
    Subsets::new(n, k).map(|s| mask(&s)).collect()
}

/// `eps(0) = 1`, `eps(t) = -t eps(t-1) / (d - t)` for `1 <= t <= d - 1`.
pub fn epsilon_table(d: u32) -> Result<Vec<BigRational>> {
    if d <= 2 {
        return Err(invalid!("epsilon table needs d > 2"));
    }
    let d = d as i64;
    let mut eps = vec![q(1)];
    for t in 1..d {
        let prev = eps[t as usize - 1].clone();
        eps.push(-prev * q(t) / q(d - t));
    }
    Ok(eps)
}

/// `psi(0) = 1`, `psi(1) = -2 / (d - 2)` and
/// `C(d-t, 2) psi(t) + t (d-t) psi(t-1) + C(t, 2) psi(t-2) = 0` for `2 <= t <= d - 2`.
pub fn psi_table(d: u32) -> Result<Vec<BigRational>> {
    if d <= 2 {
        return Err(invalid!("psi table needs d > 2"));
    }
    let d = d as i64;
    let c2 = |x: i64| q(x * (x - 1) / 2);
    let mut psi = vec![q(1), q(-2) / q(d - 2)];
    for t in 2..=d - 2 {
        let (p1, p2) = (psi[t as usize - 1].clone(), psi[t as usize - 2].clone());
        psi.push(-(q(t * (d - t)) * p1 + c2(t) * p2) / c2(d - t));
    }
    Ok(psi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumKind {
    Epsilon,
    Psi,
}

fn epsilon_sum_ok(eps: &[BigRational], d: u32, i: u64, j: u64) -> bool {
    let total = (0..64)
        .filter(|b| i >> b & 1 == 1)
        .map(|b| eps[((i & !(1 << b)) & j).count_ones() as usize].clone())
        .fold(BigRational::zero(), |s, x| s + x);
    let expect = if i & j == 0 { q(d as i64) } else { BigRational::zero() };
    total == expect
}

fn psi_sum_ok(psi: &[BigRational], d: u32, i: u64, l: u64) -> bool {
    let bits: Vec<u32> = (0..64).filter(|b| i >> b & 1 == 1).collect();
    let mut total = BigRational::zero();
    for (x, &u) in bits.iter().enumerate() {
        for &v in &bits[x + 1..] {
            total += psi[((i & !(1 << u) & !(1 << v)) & l).count_ones() as usize].clone();
        }
    }
    let expect = if i & l == 0 { q((d * (d - 1) / 2) as i64) } else { BigRational::zero() };
    total == expect
}

/// Checks the subset-sum identities behind the witness: exhaustively when
/// there are at most `2 * 10^5` subset pairs, otherwise on `trials` random pairs.
pub fn subset_sum_check(kind: SumKind, d: u32, n: usize, trials: usize, seed: u64) -> Result<bool> {
    let du = d as usize;
    if d <= 2 || n < du || n + 2 >= 3 * du {
        return Err(invalid!("identities need d > 2 and d <= n < 3d - 2 (n = {n}, d = {d})"));
    }
    let other = match kind {
        SumKind::Epsilon if n + 2 < 2 * du => return Err(invalid!("epsilon identity needs n >= 2d - 2")),
        SumKind::Epsilon => n + 2 - 2 * du,
        SumKind::Psi => du - 2,
    };
    let table = match kind {
        SumKind::Epsilon => epsilon_table(d)?,
        SumKind::Psi => psi_table(d)?,
    };
    let check = |i: u64, j: u64| match kind {
        SumKind::Epsilon => epsilon_sum_ok(&table, d, i, j),
        SumKind::Psi => psi_sum_ok(&table, d, i, j),
    };
    let pairs = binomial(n as u64, d as u64).saturating_mul(binomial(n as u64, other as u64));
    if pairs <= 200_000 {
        let others = subset_masks(n, other);
        return Ok(Subsets::new(n, du).all(|s| {
            let i = mask(&s);
            others.iter().all(|&j| check(i, j))
        }));
    }
    let mut rng = rng_for(seed, Stream::Witness);
    Ok((0..trials).all(|_| {
        let i = mask(&sample(&mut rng, n, du).into_vec());
        let j = mask(&sample(&mut rng, n, other).into_vec());
        check(i, j)
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessParams {
    pub n: usize,
    pub d: u32,
    pub a_values: Vec<BigRational>,
}

impl WitnessParams {
    pub fn new(n: usize, d: u32, a_values: Vec<BigRational>) -> Result<Self> {
        let du = d as usize;
        if d <= 2 || n + 2 >= 3 * du || n + 2 < 2 * du {
            return Err(invalid!("witness needs d > 2 and 2d - 2 <= n < 3d - 2 (n = {n}, d = {d})"));
        }
        if a_values.len() != n || a_values.iter().any(Zero::is_zero) {
            return Err(invalid!("need {n} nonzero values a_i"));
        }
        if n > 63 || binomial(n as u64, d as u64 - 1) > SUBSET_GUARD {
            return Err(Error::ResourceGuard(format!("C({n}, {}) exceeds {SUBSET_GUARD} subsets", d - 1)));
        }
        Ok(WitnessParams { n, d, a_values })
    }

    /// `a_i` drawn uniformly from `[1, 10^3]`.
    pub fn random(n: usize, d: u32, seed: u64) -> Result<Self> {
        let values = witness_values(n, seed).into_iter().map(BigRational::from_integer).collect();
        WitnessParams::new(n, d, values)
    }

    fn product(&self, m: u64) -> BigRational {
        (0..self.n).filter(|b| m >> b & 1 == 1).fold(q(1), |p, b| p * &self.a_values[b])
    }

    /// `L = a_1 x_1 + .. + a_n x_n`.
    pub fn linear_form(&self) -> RationalForm {
        RationalForm::linear(&self.a_values)
    }
}

fn square_free(n: usize, m: u64) -> Monomial {
    Monomial::from_subset(n, &(0..n).filter(|b| m >> b & 1 == 1).collect::<Vec<_>>())
}

/// `sum_{|J| = k} table(|I & J|) a_J`, grouped by the intersection size.
fn weighted_sum(params: &WitnessParams, table: &[BigRational], i: u64, js: &[(u64, BigRational)]) -> BigRational {
    let mut by_t = vec![BigRational::zero(); table.len().max(1) + params.n];
    for (j, aj) in js {
        by_t[(i & j).count_ones() as usize] += aj;
    }
    by_t.iter()
        .zip(table)
        .filter(|(s, _)| !s.is_zero())
        .map(|(s, t)| s * t)
        .fold(BigRational::zero(), |acc, x| acc + x)
}

/// Coefficients of `Q` on the `(d-1)`-subsets in colex order.
pub fn q_coefficients(params: &WitnessParams) -> Result<Vec<BigRational>> {
    let eps = epsilon_table(params.d)?;
    let du = params.d as usize;
    let js: Vec<(u64, BigRational)> =
        subset_masks(params.n, params.n + 2 - 2 * du).into_iter().map(|j| (j, params.product(j))).collect();
    Ok(subset_masks(params.n, du - 1).into_iter().map(|i| params.product(i) * weighted_sum(params, &eps, i, &js)).collect())
}

pub fn build_q(params: &WitnessParams) -> Result<RationalForm> {
    let coeffs = q_coefficients(params)?;
    let mut f = RationalForm::zero(params.n, params.d - 1);
    for (i, c) in Subsets::new(params.n, params.d as usize - 1).zip(coeffs) {
        f.add_term(Monomial::from_subset(params.n, &i), c);
    }
    Ok(f)
}

pub fn build_qprime(params: &WitnessParams) -> Result<RationalForm> {
    let psi = psi_table(params.d)?;
    let k = params.d as usize - 2;
    let all = params.product((1u64 << params.n) - 1);
    let ls: Vec<(u64, BigRational)> = subset_masks(params.n, k).into_iter().map(|l| (l, &all / params.product(l))).collect();
    let mut f = RationalForm::zero(params.n, params.d - 2);
    for km in subset_masks(params.n, k) {
        f.add_term(square_free(params.n, km), weighted_sum(params, &psi, km, &ls));
    }
    Ok(f)
}

/// `L Q` and `Q' (x_1 + .. + x_n)^2` with every term divisible by a square deleted.
pub fn congruence_sides(params: &WitnessParams) -> Result<(RationalForm, RationalForm)> {
    let lq = params.linear_form().mul_truncated(&build_q(params)?, 2);
    let sq = RationalForm::sum_of_variables(params.n).pow(2);
    let rhs = build_qprime(params)?.mul_truncated(&sq, 2);
    Ok((lq, rhs))
}

/// `(d - 1) L Q == Q' (x_1 + .. + x_n)^2` modulo the squares.
pub fn verify_congruence(params: &WitnessParams) -> Result<bool> {
    let (lq, rhs) = congruence_sides(params)?;
    Ok(lq.scale(&q(params.d as i64 - 1)) == rhs)
}

/// The 0/1 matrix with rows indexed by `(d-1)`-subsets, columns by
/// `(d-3)`-subsets, and a 1 where the column subset lies in the row subset.
pub fn containment_matrix(n: usize, d: u32) -> IntMatrix {
    let rows = subset_masks(n, d as usize - 1);
    let cols = subset_masks(n, d as usize - 3);
    let data = rows
        .iter()
        .flat_map(|&r| cols.iter().map(move |&c| BigInt::from(u8::from(c & r == c))))
        .collect();
    Matrix::new(rows.len(), cols.len(), data)
}

fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// `Q` is not in the ideal. Decided twice: by column-space membership in the
/// containment matrix, and by the rank of the degree-`(d-1)` piece of the
/// ideal with `Q` appended. Disagreement is an internal fault.
pub fn verify_nonmembership(params: &WitnessParams) -> Result<bool> {
    let coeffs = q_coefficients(params)?;
    let b: Vec<BigRational> = clear_denominators(&coeffs).into_iter().map(BigRational::from_integer).collect();
    let c = containment_matrix(params.n, params.d).map(|x| BigRational::from_integer(x.clone()));
    let by_columns = !in_column_space(&c, &b)?;

    let spec = IdealSpec::aci(params.n, 2)?;
    let piece = reduced_degree_basis(&spec, params.d - 1);
    let q_form = build_q(params)?;
    let q_row: Vec<BigRational> = piece.columns.iter().map(|m| q_form.coefficient(m)).collect();
    let q_row = Matrix::from_rows(vec![clear_denominators(&q_row)], piece.columns.len());
    let base = exact_rank(&piece.matrix, None)?.rank;
    let with_q = exact_rank(&piece.matrix.stack(&q_row), None)?.rank;
    let by_rank = with_q > base;
    if by_columns != by_rank {
        return Err(Error::InternalFault(format!(
            "nonmembership oracles disagree for n = {}, d = {}: column test {by_columns}, rank test {by_rank}",
            params.n, params.d
        )));
    }
    Ok(by_columns)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub n: usize,
    pub d: u32,
    pub seed: Option<u64>,
    pub a_values: Vec<String>,
    /// `(exponents, coefficient)` pairs in revlex-descending order.
    #[serde(rename = "Q_terms")]
    pub q_terms: Vec<(Vec<u32>, String)>,
    #[serde(rename = "Qprime_terms")]
    pub qprime_terms: Vec<(Vec<u32>, String)>,
    pub congruence_ok: bool,
    pub nonmembership_ok: bool,
}

fn term_list(f: &RationalForm) -> Vec<(Vec<u32>, String)> {
    f.terms().map(|(m, c)| (m.exponents().to_vec(), c.to_string())).collect()
}

pub fn witness_record(params: &WitnessParams, seed: Option<u64>) -> Result<WitnessRecord> {
    let terms = term_list;
    Ok(WitnessRecord {
        n: params.n,
        d: params.d,
        seed,
        a_values: params.a_values.iter().map(ToString::to_string).collect(),
        q_terms: terms(&build_q(params)?),
        qprime_terms: terms(&build_qprime(params)?),
        congruence_ok: verify_congruence(params)?,
        nonmembership_ok: verify_nonmembership(params)?,
    })
}

/// Rebuilds the witness from the stored `a_i` and checks that the stored
/// terms and verdicts are reproduced.
pub fn replay_record(record: &WitnessRecord) -> Result<bool> {
    let a_values = record
        .a_values
        .iter()
        .map(|v| v.parse::<BigRational>().map_err(|e| invalid!("bad value {v:?}: {e}")))
        .collect::<Result<Vec<_>>>()?;
    let params = WitnessParams::new(record.n, record.d, a_values)?;
    Ok(term_list(&build_q(&params)?) == record.q_terms
        && term_list(&build_qprime(&params)?) == record.qprime_terms
        && verify_congruence(&params)? == record.congruence_ok
        && verify_nonmembership(&params)? == record.nonmembership_ok)
}
