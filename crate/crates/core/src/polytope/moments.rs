use num_traits::Zero;

use super::{triangulate_with, AnchorRule, VRep};
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentData {
    pub volume: Rational,
    /// `∫_P x_j dV`.
    pub first_moments: Vec<Rational>,
    pub barycenter: Vec<Rational>,
}

pub fn moments(v: &VRep) -> Result<MomentData> {
    moments_with(v, AnchorRule::LexMin)
}

pub fn moments_with(v: &VRep, rule: AnchorRule) -> Result<MomentData> {
    let n = v.dim;
    let mut volume = Rational::zero();
    let mut first = vec![Rational::zero(); n];
    let count = Rational::from_integer((n + 1).into());
    for simplex in triangulate_with(v, rule) {
        let pts: Vec<&[Rational]> = simplex.iter().map(|&i| v.vertices[i].as_slice()).collect();
        let vol = super::simplex_volume(&pts);
        for (j, acc) in first.iter_mut().enumerate() {
            let sum: Rational = pts.iter().map(|p| &p[j]).sum();
            *acc += &vol * sum / &count;
        }
        volume += vol;
    }
    if volume.is_zero() {
        return Err(Error::Degenerate("zero volume".into()));
    }
    let barycenter = first.iter().map(|m| m / &volume).collect();
    Ok(MomentData {
        volume,
        first_moments: first,
        barycenter,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeVerdict {
    pub is_ke: bool,
    pub barycenter: Vec<Rational>,
}

/// Barycenter of the anticanonical polytope vanishes.
pub fn ke_verdict(m: &MomentData) -> KeVerdict {
    KeVerdict {
        is_ke: m.barycenter.iter().all(Zero::is_zero),
        barycenter: m.barycenter.clone(),
    }
}
