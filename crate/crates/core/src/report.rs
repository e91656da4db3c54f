//! Job documents and the analysis pipeline behind the command line tool:
//! polytope, KE verdict, reductivity, then the coupled equation per orbit.
//! Every rational leaves this module as a `"p/q"` string.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cke::{moment_direction, solve_coupled, symmetry_direction, CoupledProblem};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, IntMatrix, OpenInterval, Polynomial, Rational};
use crate::fan::{bundle_fan, demazure_roots_from_vertices, divisor_classes, verdict_from_roots, Fan};
use crate::parametric::{chamber_breakpoints, chamber_containing, ParametricFamily};
use crate::polytope::{enumerate_vertices, is_delzant, is_reflexive, ke_verdict, moments, HPolytope, MomentData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleRef {
    pub m: usize,
    pub r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutoOrbits {
    #[serde(rename = "auto-orbits")]
    AutoOrbits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Parametrization {
    /// 1-based ray indices.
    Rays(Vec<usize>),
    Keyword(AutoOrbits),
}

impl Parametrization {
    pub fn auto() -> Self {
        Parametrization::Keyword(AutoOrbits::AutoOrbits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Auto {
    #[serde(rename = "auto")]
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordinateSpec {
    /// 1-based coordinate.
    Index(usize),
    Keyword(Auto),
}

impl CoordinateSpec {
    pub fn auto() -> Self {
        CoordinateSpec::Keyword(Auto::Auto)
    }
}

/// Values quoted from elsewhere, compared against the computed ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceValues {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub barycenter: Option<Vec<String>>,
    /// `∫ x dV` over the polytope.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_moments: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transformed_volume: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transformed_barycenter: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transformed_first_moments: Option<Vec<String>>,
}

fn default_base() -> String {
    "1/2".into()
}

fn default_window() -> String {
    "(0,1)".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<Fan>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleRef>,
    /// Rows of `A`, applied as `v ↦ A·v`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrized: Option<Parametrization>,
    #[serde(default = "default_base")]
    pub base_offset: String,
    #[serde(default = "default_window")]
    pub window: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinate: Option<CoordinateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceValues>,
}

impl Default for JobSpec {
    fn default() -> Self {
        Self {
            fan: None,
            bundle: None,
            transform: None,
            parametrized: None,
            base_offset: default_base(),
            window: default_window(),
            coordinate: None,
            output: None,
            reference: None,
        }
    }
}

/// A job with every field checked and converted.
#[derive(Clone, Debug)]
pub struct ResolvedJob {
    pub fan: Fan,
    pub transform: Option<IntMatrix>,
    /// Rays after the transform.
    pub normals: Vec<Vec<i64>>,
    pub base: Rational,
    pub window: OpenInterval,
    /// Explicit 0-based orbit, or `None` for the divisor-class orbits.
    pub parametrized: Option<Vec<usize>>,
    /// Explicit 0-based coordinate, or `None` for automatic resolution.
    pub coordinate: Option<usize>,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "job",
            input: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job serializes")
    }

    pub fn resolve(&self) -> Result<ResolvedJob> {
        let fan = match (&self.fan, &self.bundle) {
            (Some(f), None) => f.clone(),
            (None, Some(b)) => bundle_fan(b.m, b.r)?,
            _ => {
                return Err(Error::Precondition(
                    "exactly one of `fan` and `bundle` must be given".into(),
                ))
            }
        };
        fan.validate()?;
        let transform = match &self.transform {
            Some(rows) => Some(IntMatrix::from_rows(rows)?),
            None => None,
        };
        let normals = match &transform {
            Some(a) => fan.transform_rays(a)?,
            None => fan.rays.clone(),
        };
        let base = parse_rational(&self.base_offset)?;
        if !base.is_positive() {
            return Err(Error::Precondition("base_offset must be positive".into()));
        }
        let window: OpenInterval = self.window.parse()?;
        let k = fan.ray_count();
        let parametrized = match &self.parametrized {
            None | Some(Parametrization::Keyword(_)) => None,
            Some(Parametrization::Rays(v)) => {
                if v.is_empty() {
                    return Err(Error::Precondition("parametrized ray list is empty".into()));
                }
                if let Some(&bad) = v.iter().find(|&&i| i == 0 || i > k) {
                    return Err(Error::Precondition(format!("ray index {bad} out of range 1..={k}")));
                }
                let mut v: Vec<usize> = v.iter().map(|i| i - 1).collect();
                v.sort_unstable();
                v.dedup();
                Some(v)
            }
        };
        let coordinate = match &self.coordinate {
            None | Some(CoordinateSpec::Keyword(_)) => None,
            Some(CoordinateSpec::Index(j)) => {
                if *j == 0 || *j > fan.dim {
                    return Err(Error::Precondition(format!(
                        "coordinate {j} out of range 1..={}",
                        fan.dim
                    )));
                }
                Some(j - 1)
            }
        };
        Ok(ResolvedJob {
            fan,
            transform,
            normals,
            base,
            window,
            parametrized,
            coordinate,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSummary {
    pub label: String,
    pub dim: usize,
    pub ray_count: usize,
    pub rays: Vec<Vec<i64>>,
    pub ray_sum: Vec<i64>,
    pub free_rank: usize,
    /// 1-based ray indices of linearly equivalent divisors.
    pub divisor_classes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSummary {
    pub vertex_count: usize,
    pub reflexive: bool,
    pub delzant: bool,
    pub volume: String,
    pub first_moments: Vec<String>,
    pub barycenter: Vec<String>,
    pub ke: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformedSummary {
    pub det: String,
    pub rays: Vec<Vec<i64>>,
    pub vertex_count: usize,
    pub volume: String,
    /// Anticanonical volume divided by `|det A|`.
    pub volume_via_det: String,
    pub volumes_agree: bool,
    pub first_moments: Vec<String>,
    pub barycenter: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductivitySummary {
    pub semisimple: bool,
    pub nill_sufficient: bool,
    pub roots: usize,
    pub semisimple_roots: usize,
    pub unipotent_roots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceCheck {
    pub quantity: String,
    pub reference: String,
    pub computed: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub interval: [String; 2],
    pub decimal: String,
    pub in_chamber: bool,
    pub kahler: String,
    pub complement_interval: [String; 2],
    /// Offsets of `α₁` as affine expressions in `c`, one per ray.
    pub offsets_c: Vec<String>,
    /// Offsets of `α₂`, the same expressions at `1 − c`.
    pub offsets_complement: Vec<String>,
    pub sums_to_anticanonical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    /// 1-based ray indices with offset `c`.
    pub parametrized: Vec<usize>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction_source: Option<String>,
    pub breakpoints: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chamber: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric_window: Option<String>,
    /// Coefficients, lowest degree first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub volume_poly: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub moment_polys: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub numerator: Vec<String>,
    pub solutions: Vec<SolutionReport>,
}

impl OrbitReport {
    fn failed(parametrized: &[usize], status: String) -> Self {
        Self {
            parametrized: parametrized.iter().map(|i| i + 1).collect(),
            status,
            direction: None,
            direction_source: None,
            breakpoints: Vec::new(),
            chamber: None,
            symmetric_window: None,
            volume_poly: Vec::new(),
            moment_polys: Vec::new(),
            numerator: Vec::new(),
            solutions: Vec::new(),
        }
    }

    pub fn valid_solutions(&self) -> usize {
        self.solutions.iter().filter(|s| s.kahler == "true").count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "KE")]
    Ke,
    #[serde(rename = "cKE-not-KE")]
    CkeNotKe,
    #[serde(rename = "reductive-no-cKE-found")]
    ReductiveNoCke,
    #[serde(rename = "non-reductive")]
    NonReductive,
    #[serde(rename = "inconclusive")]
    Inconclusive,
    /// Only the polytope and reductivity stages were run.
    #[serde(rename = "not-KE")]
    NotKe,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Ke => "KE",
            Classification::CkeNotKe => "cKE-not-KE",
            Classification::ReductiveNoCke => "reductive-no-cKE-found",
            Classification::NonReductive => "non-reductive",
            Classification::Inconclusive => "inconclusive",
            Classification::NotKe => "not-KE",
        }
    }

    /// Everything except `inconclusive` is a definite answer.
    pub fn is_decisive(self) -> bool {
        self != Classification::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub job: JobSpec,
    pub fan: FanSummary,
    pub polytope: PolytopeSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transformed: Option<TransformedSummary>,
    pub reductivity: ReductivitySummary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reference_checks: Vec<ReferenceCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub orbits: Vec<OrbitReport>,
    pub classification: Classification,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn poly_strs(p: &Polynomial) -> Vec<String> {
    strs(p.coeffs())
}

fn affine_str(p: &Rational, s: &Rational, var: &str) -> String {
    match (p.is_zero(), s.is_zero()) {
        (_, true) => format_rational(p),
        (true, false) if s == &Rational::from_integer(1.into()) => var.to_string(),
        (true, false) => format!("{}*{var}", format_rational(s)),
        (false, false) => format!("{} + {}*{var}", format_rational(p), format_rational(s)),
    }
}

struct Anticanonical {
    summary: PolytopeSummary,
    moments: MomentData,
    reductivity: ReductivitySummary,
}

fn anticanonical(fan: &Fan) -> Result<Anticanonical> {
    let h = fan.anticanonical_polytope()?;
    let v = enumerate_vertices(&h)?;
    let m = moments(&v)?;
    let ke = ke_verdict(&m);
    let roots = demazure_roots_from_vertices(fan, &v)?;
    let r = verdict_from_roots(fan, &roots);
    Ok(Anticanonical {
        summary: PolytopeSummary {
            vertex_count: v.vertices.len(),
            reflexive: is_reflexive(&h, &v)?,
            delzant: is_delzant(&v, h.normals()),
            volume: format_rational(&m.volume),
            first_moments: strs(&m.first_moments),
            barycenter: strs(&m.barycenter),
            ke: ke.is_ke,
        },
        moments: m,
        reductivity: ReductivitySummary {
            semisimple: r.semisimple,
            nill_sufficient: r.nill_sufficient,
            roots: r.roots,
            semisimple_roots: r.semisimple_roots,
            unipotent_roots: r.unipotent_roots,
        },
    })
}

fn transformed(job: &ResolvedJob, base: &MomentData) -> Result<Option<(TransformedSummary, MomentData)>> {
    let Some(a) = &job.transform else {
        return Ok(None);
    };
    let det = a.det()?;
    let h = HPolytope::anticanonical(&job.normals)?;
    let v = enumerate_vertices(&h)?;
    let m = moments(&v)?;
    let via = &base.volume / Rational::from_integer(det.abs());
    Ok(Some((
        TransformedSummary {
            det: det.to_string(),
            rays: job.normals.clone(),
            vertex_count: v.vertices.len(),
            volume: format_rational(&m.volume),
            volume_via_det: format_rational(&via),
            volumes_agree: via == m.volume,
            first_moments: strs(&m.first_moments),
            barycenter: strs(&m.barycenter),
        },
        m,
    )))
}

fn reference_checks(
    refs: Option<&ReferenceValues>,
    base: &MomentData,
    trans: Option<&MomentData>,
) -> Result<Vec<ReferenceCheck>> {
    let Some(refs) = refs else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut scalar = |name: &str, given: &Option<String>, computed: Option<&Rational>| -> Result<()> {
        if let (Some(g), Some(c)) = (given, computed) {
            let value = parse_rational(g)?;
            out.push(ReferenceCheck {
                quantity: name.into(),
                reference: format_rational(&value),
                computed: format_rational(c),
                agrees: &value == c,
            });
        }
        Ok(())
    };
    scalar("volume", &refs.volume, Some(&base.volume))?;
    scalar("transformed_volume", &refs.transformed_volume, trans.map(|m| &m.volume))?;
    let mut vector = |name: &str, given: &Option<Vec<String>>, computed: Option<&Vec<Rational>>| -> Result<()> {
        if let (Some(g), Some(c)) = (given, computed) {
            let value: Vec<Rational> = g.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
            out.push(ReferenceCheck {
                quantity: name.into(),
                reference: format!("({})", strs(&value).join(", ")),
                computed: format!("({})", strs(c).join(", ")),
                agrees: &value == c,
            });
        }
        Ok(())
    };
    vector("barycenter", &refs.barycenter, Some(&base.barycenter))?;
    vector("first_moments", &refs.first_moments, Some(&base.first_moments))?;
    vector(
        "transformed_barycenter",
        &refs.transformed_barycenter,
        trans.map(|m| &m.barycenter),
    )?;
    vector(
        "transformed_first_moments",
        &refs.transformed_first_moments,
        trans.map(|m| &m.first_moments),
    )?;
    Ok(out)
}

fn fan_summary(fan: &Fan) -> Result<FanSummary> {
    let classes = divisor_classes(fan)?;
    Ok(FanSummary {
        label: fan.label.clone(),
        dim: fan.dim,
        ray_count: fan.ray_count(),
        rays: fan.rays.clone(),
        ray_sum: fan.ray_sum(),
        free_rank: classes.free_rank,
        divisor_classes: classes
            .equivalence_classes()
            .into_iter()
            .map(|c| c.into_iter().map(|i| i + 1).collect())
            .collect(),
    })
}

/// Polytope, KE verdict and reductivity.
pub fn analyze(job: &JobSpec) -> Result<ReportDocument> {
    let resolved = job.resolve()?;
    let mut doc = analyze_resolved(job, &resolved)?.0;
    doc.classification = if doc.polytope.ke {
        Classification::Ke
    } else if !doc.reductivity.semisimple {
        Classification::NonReductive
    } else {
        Classification::NotKe
    };
    Ok(doc)
}

fn analyze_resolved(job: &JobSpec, resolved: &ResolvedJob) -> Result<(ReportDocument, MomentData)> {
    let fan = fan_summary(&resolved.fan)?;
    let anti = anticanonical(&resolved.fan)?;
    let trans = transformed(resolved, &anti.moments)?;
    let checks = reference_checks(
        job.reference.as_ref(),
        &anti.moments,
        trans.as_ref().map(|(_, m)| m),
    )?;
    Ok((
        ReportDocument {
            job: job.clone(),
            fan,
            polytope: anti.summary,
            transformed: trans.map(|(s, _)| s),
            reductivity: anti.reductivity,
            reference_checks: checks,
            orbits: Vec::new(),
            classification: Classification::Inconclusive,
        },
        anti.moments,
    ))
}

/// The full pipeline, including the coupled equation on each orbit.
pub fn run_cke(job: &JobSpec) -> Result<ReportDocument> {
    let resolved = job.resolve()?;
    let (mut doc, _) = analyze_resolved(job, &resolved)?;
    if doc.polytope.ke {
        doc.classification = Classification::Ke;
        return Ok(doc);
    }
    if !doc.reductivity.semisimple {
        doc.classification = Classification::NonReductive;
        return Ok(doc);
    }
    let orbits: Vec<Vec<usize>> = match &resolved.parametrized {
        Some(s) => vec![s.clone()],
        None => doc
            .fan
            .divisor_classes
            .iter()
            .filter(|c| c.len() >= 2)
            .map(|c| c.iter().map(|i| i - 1).collect())
            .collect(),
    };
    doc.orbits = orbits
        .iter()
        .map(|s| orbit_report(&resolved, s).unwrap_or_else(|e| OrbitReport::failed(s, format!("error: {e}"))))
        .collect();
    doc.classification = classify(&doc.orbits);
    Ok(doc)
}

fn classify(orbits: &[OrbitReport]) -> Classification {
    if orbits.iter().any(|o| o.valid_solutions() > 0) {
        Classification::CkeNotKe
    } else if orbits
        .iter()
        .any(|o| o.status != "solved" || o.solutions.iter().any(|s| s.kahler == "undecided"))
    {
        Classification::Inconclusive
    } else {
        Classification::ReductiveNoCke
    }
}

/// Coupled equation for one parametrized orbit (0-based ray indices).
pub fn orbit_report(job: &ResolvedJob, orbit: &[usize]) -> Result<OrbitReport> {
    let fam = ParametricFamily::from_rays(&job.normals, orbit, &job.base)?;
    let mut report = OrbitReport::failed(orbit, String::new());
    report.breakpoints = strs(&chamber_breakpoints(&fam, &job.window)?);
    let half = Rational::new(1.into(), 2.into());
    let chamber = chamber_containing(&fam, &half, &job.window)?;
    report.chamber = Some(chamber.interval.to_string());
    report.symmetric_window = chamber.symmetric_part().map(|w| w.to_string());

    let (direction, source) = match job.coordinate {
        Some(j) => {
            let mut u = vec![Rational::zero(); fam.dim()];
            u[j] = Rational::from_integer(1.into());
            (Some(u), "coordinate")
        }
        None => match symmetry_direction(&fam)? {
            Some(u) => (Some(u), "symmetry"),
            None => (None, "moments"),
        },
    };
    let problem = match direction {
        Some(u) => CoupledProblem::with_direction(fam, chamber, u)?,
        None => {
            // provisional direction only to obtain the polynomials
            let provisional = CoupledProblem::new(fam.clone(), chamber.clone(), 0)?;
            match moment_direction(&provisional.polynomials) {
                Some(u) => CoupledProblem {
                    coordinate: u.iter().position(|x| !x.is_zero()).expect("nonzero"),
                    direction: u,
                    ..provisional
                },
                None => {
                    report.volume_poly = poly_strs(&provisional.polynomials.volume);
                    report.moment_polys = provisional.polynomials.moments.iter().map(poly_strs).collect();
                    report.status =
                        "unresolved: no one-dimensional symmetry or moment direction; give a coordinate".into();
                    return Ok(report);
                }
            }
        }
    };
    report.direction = Some(strs(&problem.direction));
    report.direction_source = Some(source.into());
    report.volume_poly = poly_strs(&problem.polynomials.volume);
    report.moment_polys = problem.polynomials.moments.iter().map(poly_strs).collect();

    let solved = match solve_coupled(&problem, &job.window) {
        Ok(s) => s,
        Err(Error::Precondition(msg)) => {
            report.status = format!("reduction failed: {msg}");
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.numerator = solved.numerator.primitive_integer_coeffs().iter().map(|c| c.to_string()).collect();
    report.solutions = solved
        .solutions
        .iter()
        .map(|s| SolutionReport {
            interval: [format_rational(&s.root.lo), format_rational(&s.root.hi)],
            decimal: s.decimal(),
            in_chamber: s.in_chamber,
            kahler: s.kahler.as_str().into(),
            complement_interval: [
                format_rational(&s.complement_root.lo),
                format_rational(&s.complement_root.hi),
            ],
            offsets_c: s.offsets.iter().map(|(p, q)| affine_str(p, q, "c")).collect(),
            offsets_complement: s.offsets.iter().map(|(p, q)| affine_str(p, q, "(1-c)")).collect(),
            sums_to_anticanonical: s.sums_to_anticanonical(),
        })
        .collect();
    report.status = "solved".into();
    Ok(report)
}

/// One row of a bundle scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub m: usize,
    pub r: usize,
    pub dim: usize,
    pub ke: Option<bool>,
    pub semisimple: Option<bool>,
    pub classification: String,
    /// `(orbit, valid solutions)` per auto orbit, orbits 1-based.
    pub orbits: Vec<(Vec<usize>, usize)>,
    /// Whether `bundle(r, m)` gives the same verdicts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirror_agrees: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn scan_row(m: usize, r: usize) -> ScanRow {
    let job = JobSpec {
        bundle: Some(BundleRef { m, r }),
        parametrized: Some(Parametrization::auto()),
        coordinate: Some(CoordinateSpec::auto()),
        ..JobSpec::default()
    };
    match run_cke(&job) {
        Ok(doc) => {
            ScanRow {
                m,
                r,
                dim: doc.fan.dim,
                ke: Some(doc.polytope.ke),
                semisimple: Some(doc.reductivity.semisimple),
                classification: doc.classification.as_str().into(),
                orbits: doc
                    .orbits
                    .iter()
                    .map(|o| (o.parametrized.clone(), o.valid_solutions()))
                    .collect(),
                mirror_agrees: None,
                error: None,
            }
        }
        Err(e) => ScanRow {
            m,
            r,
            dim: m + r + 1,
            ke: None,
            semisimple: None,
            classification: "error".into(),
            orbits: Vec::new(),
            mirror_agrees: None,
            error: Some(e.to_string()),
        },
    }
}

/// Rows for every `bundle(m, r)` with `m, r ≥ 1` and `m + r + 1 ≤ max_dim`,
/// each compared with `bundle(r, m)`.
pub fn scan(max_dim: usize) -> Vec<ScanRow> {
    let mut rows: Vec<ScanRow> = Vec::new();
    for d in 3..=max_dim {
        for m in 1..d - 1 {
            let r = d - 1 - m;
            rows.push(scan_row(m, r));
        }
    }
    let verdict = |row: &ScanRow| {
        let mut counts: Vec<usize> = row.orbits.iter().map(|o| o.1).collect();
        counts.sort_unstable();
        (row.ke, row.semisimple, row.classification.clone(), counts)
    };
    let snapshot = rows.clone();
    for row in rows.iter_mut() {
        if let Some(mirror) = snapshot.iter().find(|o| o.m == row.r && o.r == row.m) {
            row.mirror_agrees = Some(verdict(row) == verdict(mirror));
        }
    }
    rows
}
