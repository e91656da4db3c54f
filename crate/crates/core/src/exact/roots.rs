//! Real-root isolation by Sturm sequences, with exact rational roots split
//! off first so they can be reported as points.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{int, round_decimal, to_f64, OpenInterval, Polynomial, Rational};
use crate::error::{Error, Result};

/// Exactly one root of `polynomial` lies in `[lo, hi]`. When `lo == hi` the
/// root is that rational; otherwise it is interior and simple, and the
/// polynomial has opposite signs at the endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    #[serde(skip)]
    pub polynomial: Polynomial,
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl IsolatingInterval {
    pub fn exact(root: Rational, polynomial: Polynomial) -> Self {
        Self {
            lo: root.clone(),
            hi: root,
            polynomial,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// True if the root is certainly strictly inside `window`.
    pub fn strictly_inside(&self, window: &OpenInterval) -> bool {
        if self.is_exact() {
            window.contains(&self.lo)
        } else {
            self.lo >= window.lo && self.hi <= window.hi
        }
    }

    /// True if the root is certainly outside the closed hull of `window`, or on
    /// its boundary.
    pub fn certainly_outside(&self, window: &OpenInterval) -> bool {
        if self.is_exact() {
            !window.contains(&self.lo)
        } else {
            self.hi <= window.lo || self.lo >= window.hi
        }
    }

    /// The paired root of `p(1 − x)`.
    pub fn reflect(&self) -> IsolatingInterval {
        IsolatingInterval {
            lo: Rational::one() - &self.hi,
            hi: Rational::one() - &self.lo,
            polynomial: self.polynomial.reflect(),
        }
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&self, width: &Rational) -> IsolatingInterval {
        let mut out = self.clone();
        if out.is_exact() {
            return out;
        }
        let mut lo_sign = out.polynomial.sign_at(&out.lo);
        while &out.width() > width {
            let mid = out.midpoint();
            let s = out.polynomial.sign_at(&mid);
            if s == 0 {
                out.lo = mid.clone();
                out.hi = mid;
                break;
            }
            if s == lo_sign {
                out.lo = mid;
                lo_sign = s;
            } else {
                out.hi = mid;
            }
        }
        out
    }

    /// Decimal rounded to `places`, refining until both endpoints agree.
    pub fn decimal(&self, places: usize) -> String {
        let mut iv = self.clone();
        let floor_width = Rational::new(BigInt::one(), BigInt::from(10u32).pow(places as u32 + 40));
        loop {
            let a = round_decimal(&iv.lo, places);
            if a == round_decimal(&iv.hi, places) || iv.width() <= floor_width {
                return a;
            }
            let target = iv.width() / int(2);
            iv = iv.refine(&target);
        }
    }

    /// Decimal with `sig` significant figures.
    pub fn significant(&self, sig: usize) -> String {
        let mut iv = self.clone();
        loop {
            if iv.lo.is_zero() && iv.hi.is_zero() {
                return round_decimal(&iv.lo, sig.saturating_sub(1));
            }
            let same_sign = iv.lo.signum() == iv.hi.signum() && !iv.lo.is_zero();
            if same_sign {
                let ea = decimal_exponent(&iv.lo);
                if ea == decimal_exponent(&iv.hi) {
                    let places = (sig as i64 - 1 - ea).max(0) as usize;
                    return iv.decimal(places);
                }
            }
            let target = iv.width() / int(2);
            iv = iv.refine(&target);
        }
    }
}

/// `floor(log10 |x|)` for nonzero `x`.
fn decimal_exponent(x: &Rational) -> i64 {
    let a = x.abs();
    let ten = int(10);
    let mut e = 0i64;
    let mut p = Rational::one();
    if a >= p {
        while a >= &p * &ten {
            p *= &ten;
            e += 1;
        }
    } else {
        while a < p {
            p /= &ten;
            e -= 1;
        }
    }
    e
}

/// Sturm chain `p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k)`.
pub fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

pub fn sign_changes(seq: &[Polynomial], x: &Rational) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct roots in `(a, b]` of the first polynomial in `seq`.
pub fn sturm_count(seq: &[Polynomial], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// Positive divisors of `n`; `None` when `n` is too large to factor by trial
/// division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let r = n.sqrt();
    for d in 1..=r {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d != n / d {
                large.push(BigInt::from(n / d));
            }
        }
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Rational roots of a square-free polynomial via the rational root theorem.
/// Returns `None` if the coefficients are too large to enumerate candidates.
fn rational_roots(p: &Polynomial) -> Option<Vec<Rational>> {
    let mut coeffs = p.primitive_integer_coeffs();
    let mut roots = Vec::new();
    if coeffs.is_empty() {
        return Some(roots);
    }
    if coeffs[0].is_zero() {
        roots.push(Rational::zero());
        while coeffs.first().is_some_and(Zero::is_zero) {
            coeffs.remove(0);
        }
    }
    if coeffs.len() <= 1 {
        return Some(roots);
    }
    let nums = divisors(&coeffs[0])?;
    let dens = divisors(coeffs.last().expect("nonempty"))?;
    if nums.len() * dens.len() > 100_000 {
        return None;
    }
    let reduced = Polynomial::new(coeffs.into_iter().map(Rational::from_integer).collect());
    let mut found = std::collections::BTreeSet::new();
    for a in &nums {
        for b in &dens {
            if !a.gcd(b).is_one() {
                continue;
            }
            for cand in [Rational::new(a.clone(), b.clone()), Rational::new(-a.clone(), b.clone())] {
                if reduced.eval(&cand).is_zero() {
                    found.insert(cand);
                }
            }
        }
    }
    roots.extend(found);
    Some(roots)
}

/// Isolates every distinct real root of `p` inside the open `window`.
/// Intervals are disjoint and sorted; rational roots come back as points.
pub fn isolate_real_roots(p: &Polynomial, window: &OpenInterval) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sqf = p.square_free();
    let mut cofactor = sqf.clone();
    let mut points = Vec::new();
    if let Some(rs) = rational_roots(&sqf) {
        for r in rs {
            cofactor = cofactor
                .div_rem(&Polynomial::linear(-r.clone(), Rational::one()))?
                .0;
            if window.contains(&r) {
                points.push(r);
            }
        }
    }

    let mut intervals: Vec<IsolatingInterval> = Vec::new();
    if cofactor.degree().unwrap_or(0) > 0 {
        let seq = sturm_sequence(&cofactor);
        let mut stack = vec![(window.lo.clone(), window.hi.clone())];
        // Endpoints may be roots only if the cofactor kept a rational root,
        // which happens when the candidate search was skipped.
        while let Some((a, b)) = stack.pop() {
            let count = sturm_count(&seq, &a, &b) - usize::from(cofactor.sign_at(&b) == 0);
            match count {
                0 => {}
                1 if cofactor.sign_at(&a) != 0 => {
                    intervals.push(IsolatingInterval {
                        lo: a,
                        hi: b,
                        polynomial: cofactor.clone(),
                    });
                }
                _ => {
                    let m = (&a + &b) / int(2);
                    if cofactor.sign_at(&m) == 0 {
                        intervals.push(IsolatingInterval::exact(m.clone(), sqf.clone()));
                    }
                    stack.push((a, m.clone()));
                    stack.push((m, b));
                }
            }
        }
    }

    // keep irrational intervals clear of the rational points
    for iv in intervals.iter_mut().filter(|iv| !iv.is_exact()) {
        while points.iter().any(|r| iv.lo <= *r && *r <= iv.hi) {
            let half = iv.width() / int(2);
            *iv = iv.refine(&half);
        }
    }
    intervals.extend(points.into_iter().map(|r| IsolatingInterval::exact(r, sqf.clone())));
    intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    intervals.dedup_by(|a, b| a.is_exact() && b.is_exact() && a.lo == b.lo);
    Ok(intervals)
}

/// All real roots, using the Cauchy bound as the window.
pub fn isolate_all_real_roots(p: &Polynomial) -> Result<Vec<IsolatingInterval>> {
    let b = p.square_free().root_bound();
    isolate_real_roots(p, &OpenInterval::new(-b.clone(), b)?)
}

pub fn refine_root(r: &IsolatingInterval, width: &Rational) -> IsolatingInterval {
    r.refine(width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn sqrt2() -> IsolatingInterval {
        let p = Polynomial::from_ints(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &OpenInterval::new(int(0), int(2)).unwrap()).unwrap();
        assert_eq!(roots.len(), 1);
        roots[0].clone()
    }

    #[test]
    fn sqrt_two() {
        let r = sqrt2();
        assert!(r.lo < q(1415, 1000) && r.hi > q(1414, 1000));
        let fine = refine_root(&r, &q(1, 1_000_000));
        assert!(fine.width() <= q(1, 1_000_000));
        assert!(fine.lo <= q(1414214, 1_000_000) && fine.hi >= q(1414213, 1_000_000));
        assert_eq!(r.decimal(6), "1.414214");
        assert_eq!(r.significant(3), "1.41");
    }

    #[test]
    fn rational_roots_are_points() {
        // (x - 1/3)(x^2 - 2)(x - 1/3)
        let p = &(&Polynomial::new(vec![q(-1, 3), int(1)]) * &Polynomial::new(vec![q(-1, 3), int(1)]))
            * &Polynomial::from_ints(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p, &OpenInterval::new(int(-3), int(3)).unwrap()).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots[1].is_exact() && roots[1].lo == q(1, 3));
        let same = refine_root(&roots[1], &q(1, 10));
        assert_eq!(same, roots[1]);
        // window endpoints are excluded
        let none = isolate_real_roots(&p, &OpenInterval::new(q(1, 3), int(1)).unwrap()).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            isolate_real_roots(&Polynomial::zero(), &OpenInterval::unit()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn significant_figures() {
        let p = Polynomial::from_ints(&[-1, 0, 200]); // 1/sqrt(200) = 0.0707106...
        let r = isolate_real_roots(&p, &OpenInterval::new(int(0), int(1)).unwrap()).unwrap();
        assert_eq!(r[0].significant(5), "0.070711");
    }
}
