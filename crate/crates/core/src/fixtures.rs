//! Built-in fans, transforms and jobs for the worked examples.

use crate::error::Result;
use crate::exact::IntMatrix;
use crate::fan::{bundle_fan, Fan};
use crate::report::{BundleRef, CoordinateSpec, JobSpec, Parametrization, ReferenceValues};

/// `v ↦ A·v` for the five-dimensional bundle over `CP³ × CP¹`.
pub fn transform_5d() -> IntMatrix {
    IntMatrix::from_rows(&transform_5d_rows()).expect("5x5")
}

fn transform_5d_rows() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0],
        vec![0, 0, 1, 0, 0],
        vec![0, 0, 0, 1, 0],
        vec![-1, -1, -1, 2, -4],
    ]
}

/// `v ↦ A·v` for the six-dimensional bundle over `CP³ × CP²`.
pub fn transform_6d() -> IntMatrix {
    IntMatrix::from_rows(&transform_6d_rows()).expect("6x6")
}

fn transform_6d_rows() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![-3, -3, -3, 4, 4, -12],
    ]
}

/// Symmetry of the transformed five-dimensional rays: cycles three of
/// `e₁, e₂, e₃, −e₁−e₂−e₃` and swaps the two fibre-base rays.
pub fn symmetry_5d() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![0, 0, -1, 0, 0],
        vec![0, 1, -1, 0, 0],
        vec![1, 0, -1, 0, 0],
        vec![0, 0, 0, -1, 0],
        vec![0, 0, 0, 0, 1],
    ])
    .expect("5x5")
}

/// The six-dimensional symmetry as printed, with last row `(0,0,0,1,0,1)`.
/// It does not permute the transformed rays.
pub fn symmetry_6d_printed() -> IntMatrix {
    let mut rows = symmetry_6d_rows();
    rows[5] = vec![0, 0, 0, 1, 0, 1];
    IntMatrix::from_rows(&rows).expect("6x6")
}

/// The six-dimensional symmetry with last row `e₆`, which does.
pub fn symmetry_6d() -> IntMatrix {
    IntMatrix::from_rows(&symmetry_6d_rows()).expect("6x6")
}

fn symmetry_6d_rows() -> Vec<Vec<i64>> {
    vec![
        vec![0, 0, -1, 0, 0, 0],
        vec![0, 1, -1, 0, 0, 0],
        vec![1, 0, -1, 0, 0, 0],
        vec![0, 0, 0, 0, -1, 0],
        vec![0, 0, 0, 1, -1, 0],
        vec![0, 0, 0, 0, 0, 1],
    ]
}

/// Bundle `O ⊕ O(−1; 1, 1)` over `CP² × CP¹ × CP¹`.
pub fn remark_fan() -> Fan {
    let mut rays: Vec<Vec<i64>> = (0..5)
        .map(|i| (0..5).map(|j| i64::from(i == j)).collect())
        .collect();
    rays.extend([
        vec![-1, -1, 0, 0, 1],
        vec![0, 0, -1, 0, -1],
        vec![0, 0, 0, -1, -1],
        vec![0, 0, 0, 0, -1],
    ]);
    Fan::new(5, rays, "bundle over CP2 x CP1 x CP1")
}

pub const FIXTURE_NAMES: [&str; 4] = ["d5b", "d6", "d19", "remark-5d"];

pub fn fixture_description(name: &str) -> Option<&'static str> {
    Some(match name {
        "d5b" => "bundle(3,1) with its barycenter transform, divisors {4,7} parametrized",
        "d6" => "bundle(3,2) with its barycenter transform, divisors {4,5,8} parametrized",
        "d19" => "bundle(1,2), every divisor-class orbit",
        "remark-5d" => "9-ray bundle over CP2 x CP1 x CP1, every divisor-class orbit",
        _ => return None,
    })
}

pub fn fixture_job(name: &str) -> Option<JobSpec> {
    let mut job = JobSpec::default();
    match name {
        "d5b" => {
            job.bundle = Some(BundleRef { m: 3, r: 1 });
            job.transform = Some(transform_5d_rows());
            job.parametrized = Some(Parametrization::Rays(vec![4, 7]));
            job.window = "(1/4,3/4)".into();
            job.coordinate = Some(CoordinateSpec::Index(5));
            job.reference = Some(ReferenceValues {
                volume: Some("599/15".into()),
                first_moments: Some(["13/18", "13/18", "13/18", "-13/9", "26/9"].map(String::from).to_vec()),
                transformed_volume: Some("599/60".into()),
                transformed_first_moments: Some(["0", "0", "0", "0", "-13/72"].map(String::from).to_vec()),
                ..Default::default()
            });
        }
        "d6" => {
            job.bundle = Some(BundleRef { m: 3, r: 2 });
            job.transform = Some(transform_6d_rows());
            job.parametrized = Some(Parametrization::Rays(vec![4, 5, 8]));
            job.coordinate = Some(CoordinateSpec::Index(6));
            job.reference = Some(ReferenceValues {
                volume: Some("4039/45".into()),
                first_moments: Some(
                    ["23/42", "23/42", "23/42", "-46/63", "-46/63", "46/21"]
                        .map(String::from)
                        .to_vec(),
                ),
                transformed_volume: Some("4019/540".into()),
                transformed_first_moments: Some(["0", "0", "0", "0", "0", "-23/1512"].map(String::from).to_vec()),
                ..Default::default()
            });
        }
        "d19" => {
            job.bundle = Some(BundleRef { m: 1, r: 2 });
            job.parametrized = Some(Parametrization::auto());
            job.coordinate = Some(CoordinateSpec::auto());
        }
        "remark-5d" => {
            job.fan = Some(remark_fan());
            job.parametrized = Some(Parametrization::auto());
            job.coordinate = Some(CoordinateSpec::auto());
        }
        _ => return None,
    }
    Some(job)
}

/// `X_r = bundle(r, r−1)`, `Y_r = bundle(r+1, r−1)`.
pub fn conjecture_families(r: usize) -> Result<(Fan, Fan)> {
    Ok((bundle_fan(r, r - 1)?, bundle_fan(r + 1, r - 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn transforms_have_expected_determinants() {
        assert_eq!(transform_5d().det().unwrap(), BigInt::from(-4));
        assert_eq!(transform_6d().det().unwrap(), BigInt::from(-12));
        // e₄ ↦ −e₄ swaps the fibre-base rays
        assert_eq!(symmetry_5d().det().unwrap(), BigInt::from(-1));
        assert_eq!(symmetry_6d().det().unwrap(), BigInt::from(1));
    }

    #[test]
    fn every_fixture_resolves() {
        for name in FIXTURE_NAMES {
            assert!(fixture_job(name).is_some(), "{name}");
            assert!(fixture_description(name).is_some(), "{name}");
        }
        assert!(fixture_job("nope").is_none());
        assert!(remark_fan().validate().is_ok());
    }
}
