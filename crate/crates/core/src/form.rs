//! Sparse homogeneous polynomials keyed by monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{invalid, Result};
use crate::field::Ring;
use crate::monomial::Monomial;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form<T> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, T>,
}

pub type RationalForm = Form<BigRational>;
pub type IntForm = Form<BigInt>;

impl<T: Ring> Form<T> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Form { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn term(m: Monomial, c: T) -> Self {
        let mut f = Form::zero(m.nvars(), m.degree());
        f.add_term(m, c);
        f
    }

    /// `c_1 x_1 + .. + c_n x_n`.
    pub fn linear(coeffs: &[T]) -> Self {
        let n = coeffs.len();
        let mut f = Form::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(Monomial::var_power(n, i, 1), c.clone());
        }
        f
    }

    pub fn sum_of_variables(n: usize) -> Self {
        Form::linear(&vec![T::one(); n])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    /// Terms in revlex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter().rev()
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        assert_eq!(m.nvars(), self.nvars, "variable count mismatch");
        assert_eq!(m.degree(), self.degree, "form is homogeneous of degree {}", self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn checked_add(&self, other: &Form<T>) -> Result<Form<T>> {
        if self.nvars != other.nvars || (self.degree != other.degree && !self.is_zero() && !other.is_zero()) {
            return Err(invalid!("adding forms of different shapes"));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Form<T> {
        let mut out = Form::zero(self.nvars, self.degree);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Form<T>) -> Form<T> {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Form::zero(self.nvars, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x.clone() * y.clone());
            }
        }
        out
    }

    /// Multiplication followed by deletion of every term with an exponent `>= cap`.
    pub fn mul_truncated(&self, other: &Form<T>, cap: u32) -> Form<T> {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Form::zero(self.nvars, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m = a.mul(b);
                if m.max_exponent() < cap {
                    out.add_term(m, x.clone() * y.clone());
                }
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Form<T> {
        let mut out = Form::zero(self.nvars, self.degree + m.degree());
        for (a, x) in &self.terms {
            out.terms.insert(a.mul(m), x.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Form<T> {
        let mut out = Form::term(Monomial::one(self.nvars), T::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Remainder modulo `(x_1^a, .., x_n^a)`: drops every term with an exponent `>= a`.
    pub fn reduce_mod_powers(&self, a: u32) -> Form<T> {
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().filter(|(m, _)| m.max_exponent() < a).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// `self(images[0], .., images[n-1])` for linear forms `images` in a
    /// common number of variables.
    pub fn substitute(&self, images: &[Form<T>], target_nvars: usize) -> Form<T> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut powers: Vec<Vec<Form<T>>> =
            images.iter().map(|_| vec![Form::term(Monomial::one(target_nvars), T::one())]).collect();
        let mut out = Form::zero(target_nvars, self.degree);
        for (m, c) in &self.terms {
            let mut acc = Form::term(Monomial::one(target_nvars), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if e > 0 {
                    acc = acc.mul(&powers[i][e as usize]);
                }
            }
            for (m, c) in acc.terms {
                out.add_term(m, c);
            }
        }
        out
    }

    pub fn map<U: Ring, F: Fn(&T) -> U>(&self, f: F) -> Form<U> {
        let mut out = Form::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Form<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::binomial;

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn square_of_sum() {
        let s = IntForm::sum_of_variables(3).pow(2);
        assert_eq!(s.len(), 6);
        assert_eq!(s.coefficient(&Monomial::new(vec![2, 0, 0])), z(1));
        assert_eq!(s.coefficient(&Monomial::new(vec![1, 0, 1])), z(2));
        let r = s.reduce_mod_powers(2);
        assert_eq!(r.len(), 3);
        assert_eq!(s.mul_truncated(&IntForm::term(Monomial::one(3), z(1)), 2), r);
    }

    #[test]
    fn multinomial_coefficients() {
        // (x1 + .. + x4)^5: coefficient of x1^2 x2^2 x3 is 5!/(2!2!1!) = 30
        let f = IntForm::sum_of_variables(4).pow(5);
        assert_eq!(f.coefficient(&Monomial::new(vec![2, 2, 1, 0])), z(30));
        assert_eq!(f.len() as u64, binomial(8, 3));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = IntForm::linear(&[z(1), z(-1)]);
        let y = IntForm::linear(&[z(1), z(1)]);
        let p = x.mul(&y);
        assert_eq!(p.len(), 2);
        assert!(p.checked_add(&p.scale(&z(-1))).unwrap().is_zero());
        // (x1 + x2)^2 at x1 -> y1, x2 -> -y1 vanishes
        let sq = IntForm::sum_of_variables(2).pow(2);
        let images = [IntForm::linear(&[z(1)]), IntForm::linear(&[z(-1)])];
        assert!(sq.substitute(&images, 1).is_zero());
        let images = [IntForm::linear(&[z(2), z(0)]), IntForm::linear(&[z(1), z(3)])];
        assert_eq!(sq.substitute(&images, 2), IntForm::linear(&[z(3), z(3)]).pow(2));
        let order: Vec<String> = IntForm::sum_of_variables(2).pow(2).terms().map(|(m, _)| m.to_string()).collect();
        assert_eq!(order, ["x1^2", "x1*x2", "x2^2"]);
    }
}
