//! Slice integration over bundle polytopes, shared by several test targets.

use num_traits::{One, Zero};
use toric_cke::exact::{int, Rational};

/// Polynomials in `t` as coefficient vectors, lowest degree first.
fn pmul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn ppow(a: &[Rational], k: usize) -> Vec<Rational> {
    (0..k).fold(vec![Rational::one()], |acc, _| pmul(&acc, a))
}

fn pintegral(p: &[Rational], lo: &Rational, hi: &Rational) -> Rational {
    let mut total = Rational::zero();
    for (k, c) in p.iter().enumerate() {
        let e = k as i32 + 1;
        total += c * (hi.pow(e) - lo.pow(e)) / int(e as i64);
    }
    total
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).map(int).fold(Rational::one(), |a, b| a * b)
}

/// Volume and `∫ x dV` of `{x : ⟨x, vᵢ⟩ ≥ −hᵢ}` for the rays of
/// `bundle_fan(m, r)`, integrating over the fibre coordinate `t = x_n`.
/// Each slice is a product of two simplices.
pub fn bundle_slices(m: usize, r: usize, h: &[Rational]) -> (Rational, Vec<Rational>) {
    let n = m + r + 1;
    let sum = |range: std::ops::Range<usize>| -> Rational { h[range].iter().sum() };
    // side lengths L₁(t) = t + a₁, L₂(t) = −t + a₂
    let a1 = &h[n] + sum(0..m);
    let a2 = &h[n + 1] + sum(m..m + r);
    let l1 = vec![a1.clone(), Rational::one()];
    let l2 = vec![a2.clone(), -Rational::one()];
    let lo = std::cmp::max(-h[n - 1].clone(), -a1);
    let hi = std::cmp::min(h[n + 2].clone(), a2);
    assert!(lo < hi);
    let slice = pmul(&ppow(&l1, m), &ppow(&l2, r))
        .into_iter()
        .map(|c| c / (factorial(m) * factorial(r)))
        .collect::<Vec<_>>();
    let volume = pintegral(&slice, &lo, &hi);
    let mut first = Vec::with_capacity(n);
    for i in 0..n - 1 {
        // slice centroid: −hᵢ + L/(k+1) along the simplex factor holding xᵢ
        let (l, k) = if i < m { (&l1, m) } else { (&l2, r) };
        let centroid: Vec<Rational> = vec![-h[i].clone() + &l[0] / int(k as i64 + 1), &l[1] / int(k as i64 + 1)];
        first.push(pintegral(&pmul(&slice, &centroid), &lo, &hi));
    }
    first.push(pintegral(&pmul(&slice, &[Rational::zero(), Rational::one()]), &lo, &hi));
    (volume, first)
}

