//! Univariate polynomials with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{common_denominator, Rational};
use crate::error::{Error, Result};

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `a + b·x`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::to_f64(c))
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `p(a + b·x)`
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let inner = Self::linear(a.clone(), b.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &inner) + &Self::constant(c.clone()))
    }

    /// `p(1 − x)`
    pub fn reflect(&self) -> Self {
        self.compose_linear(&Rational::one(), &-Rational::one())
    }

    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let Some(dd) = d.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let lead = d.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let f = &rem[k + dd] / &lead;
            if f.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &f * dc;
            }
            quot[k] = f;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic. Same roots as `p`, all simple.
    pub fn square_free(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem(&g).expect("gcd is nonzero");
        q.monic()
    }

    /// Integer coefficients with gcd one and positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = Rational::from_integer(common_denominator(&self.coeffs));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let sign = if ints.last().is_some_and(Signed::is_negative) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|x| x / &g * &sign).collect()
    }

    /// The primitive integer polynomial proportional to `self`.
    pub fn primitive(&self) -> Polynomial {
        Self::new(
            self.primitive_integer_coeffs()
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    /// True when `other = k · self` for some nonzero rational `k`.
    pub fn is_proportional_to(&self, other: &Polynomial) -> bool {
        self.primitive() == other.primitive() && self.is_zero() == other.is_zero()
    }

    /// Cauchy bound: every real root lies in `(−bound, bound)`.
    pub fn root_bound(&self) -> Rational {
        let Some(lead) = self.leading() else {
            return Rational::one();
        };
        let lead = lead.abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// Exact interpolation through `(x_i, y_i)`; Newton divided differences.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Polynomial> {
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(xj, _)| xj == xi) {
                return Err(Error::DuplicateAbscissa(xi.clone()));
            }
        }
        let n = points.len();
        let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        // Horner on the Newton form
        let mut p = Polynomial::zero();
        for i in (0..n).rev() {
            let factor = Polynomial::linear(-xs[i].clone(), Rational::one());
            p = &(&p * &factor) + &Polynomial::constant(dd[i].clone());
        }
        Ok(p)
    }

    /// Formats as e.g. `132192*c^2 - 132192*c + 25261`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.display_in("x"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q};

    #[test]
    fn arithmetic_and_division() {
        let p = Polynomial::from_ints(&[-2, 0, 1]);
        let d = Polynomial::from_ints(&[-1, 1]);
        let (quot, rem) = p.div_rem(&d).unwrap();
        assert_eq!(quot, Polynomial::from_ints(&[1, 1]));
        assert_eq!(rem, Polynomial::constant(int(-1)));
        assert_eq!(&(&quot * &d) + &rem, p);
        assert!(p.div_rem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn square_free_part() {
        // (x-1)^2 (x+2)
        let p = Polynomial::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p.square_free(), Polynomial::from_ints(&[-2, 1, 1]));
    }

    #[test]
    fn reflect_and_compose() {
        let p = Polynomial::from_ints(&[89, -243]);
        assert_eq!(p.reflect(), Polynomial::from_ints(&[-154, 243]));
        let sq = Polynomial::from_ints(&[0, 0, 1]);
        assert_eq!(sq.compose_linear(&q(-1, 2), &int(1)), Polynomial::new(vec![q(1, 4), int(-1), int(1)]));
    }

    #[test]
    fn interpolation_examples() {
        let one = Polynomial::interpolate(&[(int(0), int(1)), (int(1), int(1))]).unwrap();
        assert_eq!(one, Polynomial::constant(int(1)));
        let err = Polynomial::interpolate(&[(int(1), int(1)), (int(1), int(2))]);
        assert_eq!(err, Err(Error::DuplicateAbscissa(int(1))));
        let target = Polynomial::new(vec![q(-81, 1920), q(1360, 1920)]);
        let pts: Vec<_> = [q(3, 10), q(2, 5), q(1, 2), q(3, 5), q(7, 10)]
            .into_iter()
            .map(|c| {
                let y = target.eval(&c);
                (c, y)
            })
            .collect();
        assert_eq!(Polynomial::interpolate(&pts).unwrap(), target);
    }

    #[test]
    fn primitive_form() {
        let p = Polynomial::new(vec![q(-341, 3870720), q(89, 34560), q(-27, 5120)]);
        let coeffs: Vec<String> = p.primitive_integer_coeffs().iter().map(|c| c.to_string()).collect();
        assert_eq!(coeffs, ["341", "-9968", "20412"]);
        assert_eq!(p.display_in("c"), "-27/5120*c^2 + 89/34560*c - 341/3870720");
    }
}
