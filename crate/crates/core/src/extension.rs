//! Constructive extension of standard monomials: given a monomial outside the
//! combinatorial initial ideal, build a multiple of prescribed degree that is
//! still outside it. These multiples are the monomials `M` fed to the
//! vanishing-coefficient argument for kernels of `x_1 + .. + x_n`.

use crate::error::{invalid, Result};
use crate::generators::{in_combinatorial_ideal, in_squares_ideal_direct, initial_generators, Case};
use crate::monomial::Monomial;

/// One application of the squares extension step in `2d - 2` variables.
/// Prefers `x_{2d-2}` over `x_{2d-3}`; strips both and recurses when both occur.
fn squares_step(m: &Monomial, d: u32) -> Monomial {
    if d == 2 {
        // m = 1 in two variables
        return m.mul_var(1, 1);
    }
    let hi = 2 * d as usize - 3;
    let lo = hi - 1;
    if m.exponent(hi) == 0 {
        return m.mul_var(hi, 1);
    }
    if m.exponent(lo) == 0 {
        return m.mul_var(lo, 1);
    }
    let mut exps = m.exponents()[..lo].to_vec();
    let inner = squares_step(&Monomial::new(exps.clone()), d - 1);
    exps = inner.exponents().to_vec();
    exps.extend([1, 1]);
    Monomial::new(exps)
}

fn check_squares_input(m: &Monomial, d: u32) -> Result<Monomial> {
    if d < 2 {
        return Err(invalid!("squares extension needs d >= 2"));
    }
    let span = 2 * d as usize - 2;
    let local = m
        .with_nvars(span)
        .ok_or_else(|| invalid!("{m} is not supported in x1..x{span}"))?;
    if !local.is_square_free() {
        return Err(invalid!("{m} is not square-free"));
    }
    if local.degree() > d - 2 {
        return Err(invalid!("{m} has degree {} > d - 2 = {}", local.degree(), d - 2));
    }
    if in_squares_ideal_direct(&local, local.degree().max(2)) {
        return Err(invalid!("{m} lies in the squares initial ideal"));
    }
    Ok(local)
}

/// Single step: a multiple of degree `deg(m) + 1` outside the squares ideal in
/// `2d - 2` variables. `m` may live in more variables as long as it only uses
/// `x_1..x_{2d-2}`; the result has the same variable count as `m`.
pub fn extend_squares_step(m: &Monomial, d: u32) -> Result<Monomial> {
    let local = check_squares_input(m, d)?;
    Ok(squares_step(&local, d).with_nvars(m.nvars().max(local.nvars())).expect("widening"))
}

/// Iterated extension up to degree `d - 1`.
pub fn extend_squares(m: &Monomial, d: u32) -> Result<Monomial> {
    let mut cur = check_squares_input(m, d)?;
    while cur.degree() < d - 1 {
        cur = squares_step(&cur, d);
    }
    Ok(cur.with_nvars(m.nvars().max(cur.nvars())).expect("widening"))
}

/// For `n >= 3d - 2` and a square-free `mu` of degree `d - 1` outside the
/// squares ideal, a square-free multiple of degree `2d - 1` outside the ideal
/// generated in degrees `<= d`.
///
/// Variables of `mu` beyond `x_{2d-2}` are kept and topped up from
/// `x_{2d-1}..x_n` to exactly `d` of them.
pub fn squares_witness(mu: &Monomial, d: u32) -> Result<Monomial> {
    let n = mu.nvars();
    if d < 2 || n < 3 * d as usize - 2 {
        return Err(invalid!("squares witness needs d >= 2 and n >= 3d - 2 (n = {n}, d = {d})"));
    }
    if mu.degree() != d - 1 || !mu.is_square_free() || in_squares_ideal_direct(mu, d) {
        return Err(invalid!("{mu} is not a square-free standard monomial of degree d - 1"));
    }
    let span = 2 * d as usize - 2;
    let head = Monomial::new(mu.exponents()[..span].to_vec());
    let head = if head.degree() == d - 1 { head } else { extend_squares(&head, d)? };
    let mut exps = head.exponents().to_vec();
    exps.resize(n, 0);
    let mut tail: usize = (span..n).filter(|&i| mu.exponent(i) > 0).count();
    for i in span..n {
        if mu.exponent(i) > 0 {
            exps[i] = 1;
        }
    }
    for slot in exps.iter_mut().skip(span) {
        if tail == d as usize {
            break;
        }
        if *slot == 0 {
            *slot = 1;
            tail += 1;
        }
    }
    Ok(Monomial::new(exps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubesMode {
    /// From degree `<= d - 1` up to degree `d`, ending in `x_d` or `x_d^2`.
    ToDegreeD,
    /// From degree `d` to degree `d + 1`.
    OneStep,
}

fn cubes_member(m: &Monomial) -> bool {
    let n = m.nvars();
    if n == 0 {
        return false;
    }
    let up_to = m.degree().max(3);
    let gens = initial_generators(Case::Cubes, n, up_to).expect("valid parameters");
    in_combinatorial_ideal(m, &gens).expect("matching variable count")
}

fn ends_in_square_of(m: &Monomial, var: usize) -> bool {
    m.last_var() == Some(var) && m.exponent(var) == 2
}

/// One degree-raising step of the `ToDegreeD` construction in `d` variables.
fn cubes_step_a(m: &Monomial, d: usize) -> Monomial {
    if d == 1 {
        return m.mul_var(0, 1);
    }
    let last = d - 1;
    if m.exponent(last) < 2 {
        return m.mul_var(last, 1);
    }
    let inner = Monomial::new(m.exponents()[..last].to_vec());
    let lifted = cubes_step_a(&inner, d - 1);
    let mut exps = lifted.exponents().to_vec();
    exps.push(2);
    Monomial::new(exps)
}

fn cubes_to_degree(m: &Monomial, d: usize) -> Monomial {
    let mut cur = m.clone();
    while (cur.degree() as usize) < d {
        cur = cubes_step_a(&cur, d);
    }
    cur
}

fn cubes_step_b(m: &Monomial, d: usize) -> Monomial {
    let last = d - 1;
    if m.exponent(last) < 2 {
        return m.mul_var(last, 1);
    }
    let inner = Monomial::new(m.exponents()[..last].to_vec());
    let lifted = cubes_to_degree(&inner, d - 1);
    let mut exps = lifted.exponents().to_vec();
    exps.push(2);
    Monomial::new(exps)
}

/// Cubes extension for a monomial in `x_1..x_d` outside the cubes ideal in
/// `d` variables. The result has the same variable count as `m`.
pub fn extend_cubes(m: &Monomial, d: u32, mode: CubesMode) -> Result<Monomial> {
    let d = d as usize;
    if d == 0 {
        return Err(invalid!("cubes extension needs d >= 1"));
    }
    let local = m.with_nvars(d).ok_or_else(|| invalid!("{m} is not supported in x1..x{d}"))?;
    if cubes_member(&local) {
        return Err(invalid!("{m} lies in the cubes initial ideal"));
    }
    let out = match mode {
        CubesMode::ToDegreeD => {
            if local.degree() as usize > d - 1 {
                return Err(invalid!("{m} has degree above d - 1 = {}", d - 1));
            }
            cubes_to_degree(&local, d)
        }
        CubesMode::OneStep => {
            if local.degree() as usize != d {
                return Err(invalid!("{m} must have degree d = {d}"));
            }
            if d >= 2 && ends_in_square_of(&local, d - 2) {
                return Err(invalid!("{m} ends in x{}^2; this case is handled separately", d - 1));
            }
            cubes_step_b(&local, d)
        }
    };
    Ok(out.with_nvars(m.nvars().max(d)).expect("widening"))
}

/// For `mu` of degree `d - 1` in `n >= d - 1` variables, outside the cubes
/// ideal and not ending in `x_{d-2}^2`: a multiple of degree `2n - d + 2`
/// outside the ideal generated by the cubes generators of degree `<= d`.
/// The result is `mu~ * x_d^2 * .. * x_n^2` with `mu~` of degree `d` in
/// `x_1..x_{d-1}`.
pub fn cubes_witness(mu: &Monomial, d: u32) -> Result<Monomial> {
    let n = mu.nvars();
    let d = d as usize;
    if d < 3 || n + 1 < d {
        return Err(invalid!("cubes witness needs d >= 3 and n >= d - 1 (n = {n}, d = {d})"));
    }
    if mu.degree() as usize != d - 1 {
        return Err(invalid!("{mu} must have degree d - 1 = {}", d - 1));
    }
    if cubes_member(mu) {
        return Err(invalid!("{mu} lies in the cubes initial ideal"));
    }
    if ends_in_square_of(mu, d - 3) {
        return Err(invalid!("{mu} ends in x{}^2; this case is handled separately", d - 2));
    }
    let head_vars = d - 1;
    let head = Monomial::new(mu.exponents()[..head_vars].to_vec());
    let head = if head.degree() as usize == head_vars { head } else { cubes_to_degree(&head, head_vars) };
    let head = cubes_step_b(&head, head_vars);
    let mut exps = head.exponents().to_vec();
    exps.resize(n, 2);
    Ok(Monomial::new(exps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::initial_generators;
    use crate::monomial::enumerate_degree_piece;

    fn sf(n: usize, vars: &[usize]) -> Monomial {
        Monomial::from_subset(n, &vars.iter().map(|v| v - 1).collect::<Vec<_>>())
    }

    #[test]
    fn squares_worked_examples() {
        // d = 7, twelve variables. x1*x2 divides both monomials, so they are
        // rejected as inputs, but the step itself acts as described.
        let m = sf(12, &[1, 2, 3, 4, 12]);
        assert!(extend_squares_step(&m, 7).is_err());
        assert_eq!(squares_step(&m, 7), sf(12, &[1, 2, 3, 4, 11, 12]));
        let m = sf(12, &[1, 2, 3, 11, 12]);
        assert_eq!(squares_step(&m, 7), sf(12, &[1, 2, 3, 10, 11, 12]));
        // valid inputs of the same shapes
        let m = sf(12, &[1, 3, 5, 7, 12]);
        assert_eq!(extend_squares_step(&m, 7).unwrap(), sf(12, &[1, 3, 5, 7, 11, 12]));
        let m = sf(12, &[1, 3, 5, 11, 12]);
        assert_eq!(extend_squares(&m, 7).unwrap(), sf(12, &[1, 3, 5, 10, 11, 12]));
        let one = Monomial::one(2);
        let x = extend_squares(&one, 2).unwrap();
        assert_eq!(x.degree(), 1);
        assert!(!in_squares_ideal_direct(&x, 2));
    }

    #[test]
    fn squares_rejects_bad_input() {
        assert!(extend_squares(&sf(6, &[1, 2]), 4).is_err()); // in the ideal
        assert!(extend_squares(&Monomial::new(vec![2, 0, 0, 0, 0, 0]), 4).is_err());
        assert!(extend_squares(&sf(6, &[1, 3, 5]), 4).is_err()); // degree too high
        assert!(extend_squares(&sf(8, &[7]), 4).is_err()); // outside x1..x6
    }

    #[test]
    fn squares_extension_exhaustive() {
        for d in 2..=6u32 {
            let n = 2 * d as usize - 2;
            for deg in 0..=d - 2 {
                for m in enumerate_degree_piece(n, deg, Some(1)) {
                    if in_squares_ideal_direct(&m, d) {
                        continue;
                    }
                    let out = extend_squares(&m, d).unwrap();
                    assert_eq!(out.degree(), d - 1);
                    assert!(m.divides(&out));
                    assert!(!in_squares_ideal_direct(&out, d), "{m} -> {out}");
                }
            }
        }
    }

    #[test]
    fn squares_witness_exhaustive() {
        for d in 2..=4u32 {
            for n in 3 * d as usize - 2..=3 * d as usize {
                for mu in enumerate_degree_piece(n, d - 1, Some(1)) {
                    if in_squares_ideal_direct(&mu, d) {
                        continue;
                    }
                    let big = squares_witness(&mu, d).unwrap();
                    assert_eq!(big.degree(), 2 * d - 1);
                    assert!(mu.divides(&big));
                    assert!(!in_squares_ideal_direct(&big, d), "{mu} -> {big}");
                }
            }
        }
    }

    #[test]
    fn cubes_worked_examples() {
        // not divisible by x_d^2: multiply by x_d
        let m = Monomial::new(vec![1, 0, 1]);
        assert_eq!(extend_cubes(&m, 3, CubesMode::ToDegreeD).unwrap(), Monomial::new(vec![1, 0, 2]));
        // x_d^2 times something: recurse below and keep x_d^2
        let m = Monomial::new(vec![0, 0, 2]);
        let out = extend_cubes(&m, 3, CubesMode::ToDegreeD).unwrap();
        assert_eq!(out, Monomial::new(vec![0, 1, 2]));
        let m = Monomial::new(vec![1, 1, 1]);
        assert_eq!(extend_cubes(&m, 3, CubesMode::OneStep).unwrap(), Monomial::new(vec![1, 1, 2]));
    }

    #[test]
    fn cubes_one_step_refuses_trailing_square() {
        // x1*x2^2 in three variables ends in x2^2
        let m = Monomial::new(vec![1, 2, 0]);
        let err = extend_cubes(&m, 3, CubesMode::OneStep).unwrap_err();
        assert!(err.to_string().contains("handled separately"));
    }

    #[test]
    fn cubes_extension_exhaustive() {
        for d in 1..=6usize {
            let gens = initial_generators(Case::Cubes, d, (d as u32 + 1).max(3)).unwrap();
            for deg in 0..=d as u32 {
                for m in enumerate_degree_piece(d, deg, Some(2)) {
                    if in_combinatorial_ideal(&m, &gens).unwrap() {
                        continue;
                    }
                    if (deg as usize) < d {
                        let out = extend_cubes(&m, d as u32, CubesMode::ToDegreeD).unwrap();
                        assert_eq!(out.degree() as usize, d);
                        assert!(m.divides(&out));
                        assert!(!in_combinatorial_ideal(&out, &gens).unwrap());
                        assert_eq!(out.last_var(), Some(d - 1));
                        assert!(out.exponent(d - 1) >= 1);
                    } else if d < 2 || !ends_in_square_of(&m, d - 2) {
                        let out = extend_cubes(&m, d as u32, CubesMode::OneStep).unwrap();
                        assert_eq!(out.degree() as usize, d + 1);
                        assert!(m.divides(&out));
                        assert!(!in_combinatorial_ideal(&out, &gens).unwrap(), "{m} -> {out}");
                    }
                }
            }
        }
    }

    #[test]
    fn cubes_witness_exhaustive() {
        for n in 2..=7usize {
            for d in 3..=5usize.min(n + 1) {
                let full = initial_generators(Case::Cubes, n, (2 * n + 2) as u32).unwrap();
                let upto_d = initial_generators(Case::Cubes, n, d as u32).unwrap();
                for mu in enumerate_degree_piece(n, d as u32 - 1, Some(2)) {
                    if in_combinatorial_ideal(&mu, &full).unwrap() || ends_in_square_of(&mu, d - 3) {
                        continue;
                    }
                    let big = cubes_witness(&mu, d as u32).unwrap();
                    assert_eq!(big.degree() as usize, 2 * n + 2 - d);
                    assert!(mu.divides(&big));
                    assert!(!in_combinatorial_ideal(&big, &upto_d).unwrap(), "{mu} -> {big}");
                }
            }
        }
    }
}
