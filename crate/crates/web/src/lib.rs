//! Browser bindings for the static demo page in `www/`.
//!
//! Each exported function takes plain numbers or strings and returns a JSON
//! string; the `*_json` functions hold the logic so it can be tested natively.

use serde::Serialize;
use thiserror::Error;
use wasm_bindgen::prelude::*;

use toric_cke::cke::{moment_direction, solve_coupled, symmetry_direction, CoupledProblem};
use toric_cke::exact::{format_rational, parse_rational, to_f64, Rational};
use toric_cke::fan::{bundle_fan, divisor_classes, reductivity_verdict, Fan};
use toric_cke::parametric::{chamber_containing, family_polynomials, ParametricFamily};
use toric_cke::polytope::{enumerate_vertices, moments};
use toric_cke::OpenInterval;

#[derive(Debug, Error)]
pub enum WebError {
    #[error(transparent)]
    Core(#[from] toric_cke::Error),
    #[error("{0}")]
    Input(String),
}

type Result<T> = std::result::Result<T, WebError>;

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

#[derive(Serialize)]
struct BundleSummary {
    label: String,
    dim: usize,
    rays: Vec<Vec<i64>>,
    vertex_count: usize,
    volume: String,
    barycenter: Vec<String>,
    ke: bool,
    semisimple: bool,
    /// 1-based ray indices.
    orbits: Vec<Vec<usize>>,
}

fn orbits_of(f: &Fan) -> Result<Vec<Vec<usize>>> {
    Ok(divisor_classes(f)?
        .equivalence_classes()
        .into_iter()
        .filter(|c| c.len() >= 2)
        .collect())
}

pub fn bundle_summary_json(m: usize, r: usize) -> Result<String> {
    let f = bundle_fan(m, r)?;
    let v = enumerate_vertices(&f.anticanonical_polytope()?)?;
    let data = moments(&v)?;
    let summary = BundleSummary {
        label: f.label.clone(),
        dim: f.dim,
        rays: f.rays.clone(),
        vertex_count: v.vertices.len(),
        volume: format_rational(&data.volume),
        ke: data.barycenter.iter().all(|x| *x == Rational::from_integer(0.into())),
        barycenter: strs(&data.barycenter),
        semisimple: reductivity_verdict(&f)?.semisimple,
        orbits: orbits_of(&f)?.into_iter().map(|o| o.into_iter().map(|i| i + 1).collect()).collect(),
    };
    Ok(to_json(&summary))
}

/// Parses `"1,5"` into 0-based indices.
fn parse_orbit(orbit: &str, rays: usize) -> Result<Vec<usize>> {
    orbit
        .split(',')
        .map(|s| {
            let i: usize = s.trim().parse().map_err(|_| WebError::Input(format!("bad ray index {s:?}")))?;
            if i == 0 || i > rays {
                return Err(WebError::Input(format!("ray index {i} out of range 1..={rays}")));
            }
            Ok(i - 1)
        })
        .collect()
}

fn family(m: usize, r: usize, orbit: &str) -> Result<ParametricFamily> {
    let f = bundle_fan(m, r)?;
    let orbit = parse_orbit(orbit, f.ray_count())?;
    let half = Rational::new(1.into(), 2.into());
    Ok(ParametricFamily::from_rays(&f.rays, &orbit, &half)?)
}

#[derive(Serialize)]
struct Curve {
    chamber: String,
    window: Option<String>,
    direction: Vec<String>,
    /// Primitive integer coefficients, lowest degree first.
    numerator: Vec<String>,
    /// `(c, b(c) + b(1 − c))` along the direction.
    points: Vec<(f64, f64)>,
    roots: Vec<Root>,
}

#[derive(Serialize)]
struct Root {
    decimal: String,
    kahler: String,
}

pub fn coupled_curve_json(m: usize, r: usize, orbit: &str, samples: usize) -> Result<String> {
    let fam = family(m, r, orbit)?;
    let half = Rational::new(1.into(), 2.into());
    let chamber = chamber_containing(&fam, &half, &OpenInterval::unit())?;
    let direction = match symmetry_direction(&fam)? {
        Some(u) => u,
        None => moment_direction(&family_polynomials(&fam, &chamber)?)
            .ok_or_else(|| WebError::Input("the barycenter does not stay on a line for this orbit".into()))?,
    };
    let problem = CoupledProblem::with_direction(fam, chamber, direction)?;
    let window = problem.chamber.symmetric_part();
    let solved = solve_coupled(&problem, &OpenInterval::unit())?;

    let mom = problem.moment_along();
    let vol = problem.volume().clone();
    let residual = |c: f64| mom.eval_f64(c) / vol.eval_f64(c) + mom.eval_f64(1.0 - c) / vol.eval_f64(1.0 - c);
    let points = match &window {
        Some(w) => {
            let (lo, hi) = (to_f64(&w.lo), to_f64(&w.hi));
            let n = samples.max(2);
            (0..=n)
                .map(|k| {
                    let c = lo + (hi - lo) * (k as f64 + 0.5) / (n as f64 + 1.0);
                    (c, residual(c))
                })
                .collect()
        }
        None => Vec::new(),
    };
    let curve = Curve {
        chamber: problem.chamber.interval.to_string(),
        window: window.map(|w| w.to_string()),
        direction: strs(&problem.direction),
        numerator: solved.numerator.primitive_integer_coeffs().iter().map(ToString::to_string).collect(),
        points,
        roots: solved
            .solutions
            .iter()
            .map(|s| Root {
                decimal: s.decimal(),
                kahler: s.kahler.as_str().into(),
            })
            .collect(),
    };
    Ok(to_json(&curve))
}

#[derive(Serialize)]
struct Barycenter {
    c: String,
    volume: String,
    barycenter: Vec<String>,
    approx: Vec<f64>,
}

pub fn barycenter_at_json(m: usize, r: usize, orbit: &str, c: &str) -> Result<String> {
    let fam = family(m, r, orbit)?;
    let c = parse_rational(c)?;
    let data = fam.moments_at(&c)?;
    Ok(to_json(&Barycenter {
        c: format_rational(&c),
        volume: format_rational(&data.volume),
        approx: data.barycenter.iter().map(to_f64).collect(),
        barycenter: strs(&data.barycenter),
    }))
}

fn js<T>(r: Result<T>) -> std::result::Result<T, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

/// Polytope summary and divisor-class orbits of `bundle(m, r)`.
#[wasm_bindgen]
pub fn bundle_summary(m: usize, r: usize) -> std::result::Result<String, JsError> {
    js(bundle_summary_json(m, r))
}

/// The coupled residual on the orbit (comma-separated 1-based rays) and its roots.
#[wasm_bindgen]
pub fn coupled_curve(m: usize, r: usize, orbit: &str, samples: usize) -> std::result::Result<String, JsError> {
    js(coupled_curve_json(m, r, orbit, samples))
}

/// Exact barycenter of the deformed polytope at a rational `c`.
#[wasm_bindgen]
pub fn barycenter_at(m: usize, r: usize, orbit: &str, c: &str) -> std::result::Result<String, JsError> {
    js(barycenter_at_json(m, r, orbit, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn summary_of_the_five_dimensional_bundle() {
        let v = parse(bundle_summary_json(3, 1).unwrap());
        assert_eq!(v["volume"], "599/15");
        assert_eq!(v["vertex_count"], 16);
        assert_eq!(v["ke"], false);
        assert_eq!(v["orbits"], serde_json::json!([[1, 2, 3, 6], [4, 7]]));
    }

    #[test]
    fn curve_on_the_four_dimensional_bundle() {
        let v = parse(coupled_curve_json(1, 2, "1,5", 20).unwrap());
        assert_eq!(v["chamber"], "(1/4,1)");
        assert_eq!(v["numerator"], serde_json::json!(["23", "-112", "112"]));
        let roots: Vec<&str> = v["roots"].as_array().unwrap().iter().map(|r| r["decimal"].as_str().unwrap()).collect();
        assert_eq!(roots, ["0.288711", "0.711289"]);
        let pts = v["points"].as_array().unwrap();
        assert_eq!(pts.len(), 21);
        // the residual changes sign across each root
        let signs: Vec<bool> = pts.iter().map(|p| p[1].as_f64().unwrap() > 0.0).collect();
        assert_eq!(signs.windows(2).filter(|w| w[0] != w[1]).count(), 2);
    }

    #[test]
    fn barycenter_at_one_half() {
        // every offset is 1/2: half the anticanonical polytope, which is centred
        let v = parse(barycenter_at_json(1, 1, "1,3", "1/2").unwrap());
        let whole = parse(bundle_summary_json(1, 1).unwrap());
        let vol = parse_rational(v["volume"].as_str().unwrap()).unwrap();
        let full = parse_rational(whole["volume"].as_str().unwrap()).unwrap();
        assert_eq!(vol * Rational::from_integer(8.into()), full);
        assert!(v["approx"].as_array().unwrap().iter().all(|x| x.as_f64() == Some(0.0)));
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(matches!(coupled_curve_json(1, 2, "1,x", 5), Err(WebError::Input(_))));
        assert!(matches!(barycenter_at_json(1, 2, "9", "1/2"), Err(WebError::Input(_))));
        assert!(barycenter_at_json(1, 2, "1,5", "one half").is_err());
        assert!(bundle_summary_json(0, 2).is_err());
    }
}
