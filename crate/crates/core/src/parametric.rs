//! One-parameter polytope families `P(c) = {x : ⟨x, vᵢ⟩ ≥ −(pᵢ + qᵢ c)}`,
//! their chambers of constant combinatorial type, and the volume and moment
//! polynomials on a chamber.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::solve_int;
use crate::exact::{dot_int_rational, q, OpenInterval, Polynomial, Rational};
use crate::fan::Fan;
use crate::polytope::{enumerate_vertices, for_each_subset, moments, HPolytope, MomentData, VRep};

/// Sorted vertex incidence sets and facet flags.
pub type Signature = (Vec<BTreeSet<usize>>, Vec<bool>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricFamily {
    normals: Vec<Vec<i64>>,
    /// `(pᵢ, qᵢ)` with offset `pᵢ + qᵢ c`.
    offsets: Vec<(Rational, Rational)>,
    pub parameter_name: String,
}

impl ParametricFamily {
    pub fn new(normals: Vec<Vec<i64>>, offsets: Vec<(Rational, Rational)>) -> Result<Self> {
        if offsets.iter().all(|(_, s)| s.is_zero()) {
            return Err(Error::Precondition("family does not depend on c".into()));
        }
        // shape checks
        HPolytope::new(normals.clone(), offsets.iter().map(|(p, _)| p.clone()).collect())?;
        Ok(Self {
            normals,
            offsets,
            parameter_name: "c".into(),
        })
    }

    /// Offset `c` on the rays in `parametrized` (0-based), `base` elsewhere.
    pub fn from_rays(rays: &[Vec<i64>], parametrized: &[usize], base: &Rational) -> Result<Self> {
        if parametrized.is_empty() {
            return Err(Error::Precondition("no parametrized rays".into()));
        }
        if let Some(&i) = parametrized.iter().find(|&&i| i >= rays.len()) {
            return Err(Error::Precondition(format!("ray index {} out of range", i + 1)));
        }
        if !base.is_positive() {
            return Err(Error::Precondition("base offset must be positive".into()));
        }
        let offsets = (0..rays.len())
            .map(|i| {
                if parametrized.contains(&i) {
                    (Rational::zero(), Rational::from_integer(1.into()))
                } else {
                    (base.clone(), Rational::zero())
                }
            })
            .collect();
        Self::new(rays.to_vec(), offsets)
    }

    pub fn dim(&self) -> usize {
        self.normals[0].len()
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn offset_pairs(&self) -> &[(Rational, Rational)] {
        &self.offsets
    }

    /// Indices with a `c`-dependent offset.
    pub fn parametrized(&self) -> Vec<usize> {
        (0..self.offsets.len())
            .filter(|&i| !self.offsets[i].1.is_zero())
            .collect()
    }

    pub fn offsets_at(&self, c: &Rational) -> Vec<Rational> {
        self.offsets.iter().map(|(p, s)| p + s * c).collect()
    }

    pub fn at(&self, c: &Rational) -> Result<HPolytope> {
        HPolytope::new(self.normals.clone(), self.offsets_at(c))
    }

    pub fn vrep_at(&self, c: &Rational) -> Result<VRep> {
        enumerate_vertices(&self.at(c)?)
    }

    pub fn moments_at(&self, c: &Rational) -> Result<MomentData> {
        moments(&self.vrep_at(c)?)
    }

    /// `None` where the polytope is unbounded, empty or flat.
    pub fn signature_at(&self, c: &Rational) -> Result<Option<Signature>> {
        match self.vrep_at(c) {
            Ok(v) => Ok(Some(v.signature())),
            Err(e) if e.is_geometric() => Ok(None),
            Err(e) => Err(e),
        }
    }
}

pub fn family_from_fan(f: &Fan, parametrized: &[usize], base: &Rational) -> Result<ParametricFamily> {
    ParametricFamily::from_rays(&f.rays, parametrized, base)
}

/// Every `c` in `window` where some basic solution crosses another
/// inequality. The combinatorial type can only change at these points.
pub fn candidate_breakpoints(fam: &ParametricFamily, window: &OpenInterval) -> Result<Vec<Rational>> {
    let n = fam.dim();
    let k = fam.normals.len();
    let mut out = BTreeSet::new();
    let mut err = None;
    for_each_subset(k, n, &mut |idx| {
        let m: Vec<Vec<i64>> = idx.iter().map(|&i| fam.normals[i].clone()).collect();
        let p: Vec<Rational> = idx.iter().map(|&i| -fam.offsets[i].0.clone()).collect();
        let s: Vec<Rational> = idx.iter().map(|&i| -fam.offsets[i].1.clone()).collect();
        let (x0, x1) = match (solve_int(&m, &p), solve_int(&m, &s)) {
            (Ok(Some(a)), Ok(Some(b))) => (a, b),
            (Ok(_), Ok(_)) => return true,
            (Err(e), _) | (_, Err(e)) => {
                err = Some(e);
                return false;
            }
        };
        for j in (0..k).filter(|j| !idx.contains(j)) {
            let alpha = dot_int_rational(&fam.normals[j], &x0) + &fam.offsets[j].0;
            let beta = dot_int_rational(&fam.normals[j], &x1) + &fam.offsets[j].1;
            if !beta.is_zero() {
                let c = -alpha / beta;
                if window.contains(&c) {
                    out.insert(c);
                }
            }
        }
        true
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out.into_iter().collect()),
    }
}

/// Candidates at which the signature on the left differs from the right.
pub fn chamber_breakpoints(fam: &ParametricFamily, window: &OpenInterval) -> Result<Vec<Rational>> {
    let cands = candidate_breakpoints(fam, window)?;
    let mut marks = vec![window.lo.clone()];
    marks.extend(cands.iter().cloned());
    marks.push(window.hi.clone());
    let two = Rational::from_integer(2.into());
    let sigs: Vec<Option<Signature>> = marks
        .windows(2)
        .map(|w| fam.signature_at(&((&w[0] + &w[1]) / &two)))
        .collect::<Result<_>>()?;
    Ok(cands
        .into_iter()
        .enumerate()
        .filter(|(i, _)| sigs[*i] != sigs[i + 1])
        .map(|(_, c)| c)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub interval: OpenInterval,
    pub signature: Signature,
    pub samples: Vec<Rational>,
}

impl Chamber {
    /// `chamber ∩ (1 − chamber)`, where both `c` and `1 − c` lie in the chamber.
    pub fn symmetric_part(&self) -> Option<OpenInterval> {
        self.interval.intersect(&self.interval.reflect())
    }
}

/// `count` distinct interior points, including two close to the endpoints.
/// Denominators avoid small primes so samples miss simple breakpoints.
pub fn sample_points(interval: &OpenInterval, count: usize) -> Vec<Rational> {
    let mut ts = vec![q(1, 101), q(100, 101)];
    let slots = count.saturating_sub(2) as i64;
    for k in 1..=slots {
        ts.push(q(1000 * k + 7, 1000 * (slots + 1)));
    }
    ts.truncate(count);
    ts.sort();
    ts.iter().map(|t| interval.lerp(t)).collect()
}

pub fn certify_chamber(fam: &ParametricFamily, interval: &OpenInterval) -> Result<Chamber> {
    let violation = |reason: String| Error::ChamberViolation {
        lo: interval.lo.to_string(),
        hi: interval.hi.to_string(),
        reason,
    };
    let inner = chamber_breakpoints(fam, interval)?;
    if let Some(b) = inner.first() {
        return Err(violation(format!("combinatorial type changes at c = {b}")));
    }
    let samples = sample_points(interval, fam.dim() + 3);
    let mut signature = None;
    for s in &samples {
        let Some(sig) = fam.signature_at(s)? else {
            return Err(violation(format!("polytope degenerates at c = {s}")));
        };
        match &signature {
            None => signature = Some(sig),
            Some(first) if *first != sig => {
                return Err(violation(format!("signature differs at c = {s}")));
            }
            Some(_) => {}
        }
    }
    Ok(Chamber {
        interval: interval.clone(),
        signature: signature.expect("samples"),
        samples,
    })
}

/// The maximal chamber in `window` around `point`.
pub fn chamber_containing(fam: &ParametricFamily, point: &Rational, window: &OpenInterval) -> Result<Chamber> {
    if !window.contains(point) {
        return Err(Error::Precondition(format!("{point} is outside {window}")));
    }
    let bps = chamber_breakpoints(fam, window)?;
    if bps.contains(point) {
        return Err(Error::ChamberViolation {
            lo: point.to_string(),
            hi: point.to_string(),
            reason: "point is a breakpoint".into(),
        });
    }
    let lo = bps.iter().rev().find(|b| *b < point).unwrap_or(&window.lo).clone();
    let hi = bps.iter().find(|b| *b > point).unwrap_or(&window.hi).clone();
    certify_chamber(fam, &OpenInterval::new(lo, hi)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPolynomials {
    pub volume: Polynomial,
    /// `∫ x_j dV` for each coordinate.
    pub moments: Vec<Polynomial>,
    pub chamber: Chamber,
}

/// Interpolates on `n + 3` samples: volume from `n + 1` points, moments from
/// `n + 2`, each checked on the points left over.
pub fn family_polynomials(fam: &ParametricFamily, chamber: &Chamber) -> Result<FamilyPolynomials> {
    let n = fam.dim();
    let pts = sample_points(&chamber.interval, n + 3);
    let data: Vec<MomentData> = pts.iter().map(|c| fam.moments_at(c)).collect::<Result<_>>()?;

    let fit = |what: String, values: Vec<Rational>, used: usize, bound: usize| -> Result<Polynomial> {
        let pairs: Vec<(Rational, Rational)> = pts.iter().cloned().zip(values).collect();
        let p = Polynomial::interpolate(&pairs[..used])?;
        if pairs[used..].iter().any(|(x, y)| p.eval(x) != *y) {
            return Err(Error::DegreeBound { what, bound });
        }
        Ok(p)
    };
    let volume = fit(
        "volume".into(),
        data.iter().map(|m| m.volume.clone()).collect(),
        n + 1,
        n,
    )?;
    let moments = (0..n)
        .map(|j| {
            fit(
                format!("moment of x{}", j + 1),
                data.iter().map(|m| m.first_moments[j].clone()).collect(),
                n + 2,
                n + 1,
            )
        })
        .collect::<Result<_>>()?;
    Ok(FamilyPolynomials {
        volume,
        moments,
        chamber: chamber.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn dilated_square() -> ParametricFamily {
        let rays = vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]];
        ParametricFamily::from_rays(&rays, &[0, 1, 2, 3], &q(1, 2)).unwrap()
    }

    #[test]
    fn dilation_has_no_breakpoints() {
        let fam = dilated_square();
        let w = OpenInterval::new(q(1, 10), int(10)).unwrap();
        assert!(chamber_breakpoints(&fam, &w).unwrap().is_empty());
        let ch = certify_chamber(&fam, &w).unwrap();
        let polys = family_polynomials(&fam, &ch).unwrap();
        assert_eq!(polys.volume, Polynomial::from_ints(&[0, 0, 4]));
        assert!(polys.moments.iter().all(Polynomial::is_zero));
    }

    #[test]
    fn one_sided_family_changes_type() {
        // x >= -c, y >= 0, x + y <= 1, y <= 2 and the redundant y <= 3.
        // The cap y <= 2 becomes a facet once c > 1; y <= 3 never does.
        let fam = ParametricFamily::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1], vec![0, -1], vec![0, -1]],
            vec![
                (int(0), int(1)),
                (int(0), int(0)),
                (int(1), int(0)),
                (int(2), int(0)),
                (int(3), int(0)),
            ],
        )
        .unwrap();
        let w = OpenInterval::new(q(1, 10), int(5)).unwrap();
        assert_eq!(candidate_breakpoints(&fam, &w).unwrap(), vec![int(1), int(2)]);
        assert_eq!(chamber_breakpoints(&fam, &w).unwrap(), vec![int(1)]);
        assert!(certify_chamber(&fam, &OpenInterval::new(q(1, 2), int(2)).unwrap()).is_err());
        let ch = chamber_containing(&fam, &q(1, 2), &w).unwrap();
        assert_eq!(ch.interval, OpenInterval::new(q(1, 10), int(1)).unwrap());
        let polys = family_polynomials(&fam, &ch).unwrap();
        // right triangle with legs 1 + c
        assert_eq!(polys.volume, Polynomial::new(vec![q(1, 2), int(1), q(1, 2)]));
    }

    #[test]
    fn empty_parametrization_is_rejected() {
        let rays = vec![vec![1], vec![-1]];
        assert!(ParametricFamily::from_rays(&rays, &[], &q(1, 2)).is_err());
        assert!(ParametricFamily::from_rays(&rays, &[5], &q(1, 2)).is_err());
    }
}
