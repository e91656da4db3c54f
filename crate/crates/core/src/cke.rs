//! The two-coupled barycenter equation on a symmetric one-parameter family:
//! `b(P(c)) + b(P(1 − c)) = 0`, reduced to a single polynomial in `c`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::matrix::{null_space, rank};
use crate::exact::{int, isolate_real_roots, q, IntMatrix, IsolatingInterval, OpenInterval, Polynomial, Rational};
use crate::fan::{fixed_subspace, ray_automorphisms_with_labels};
use crate::parametric::{family_polynomials, Chamber, FamilyPolynomials, ParametricFamily};

#[derive(Clone, Debug)]
pub struct CoupledProblem {
    pub family: ParametricFamily,
    pub chamber: Chamber,
    /// The barycenter is expected to be a multiple of this vector.
    pub direction: Vec<Rational>,
    /// Index of the first nonzero entry of `direction`.
    pub coordinate: usize,
    pub polynomials: FamilyPolynomials,
    pub transform_used: Option<IntMatrix>,
    pub fan_label: String,
}

impl CoupledProblem {
    /// Distinguished coordinate `j` (0-based), direction `e_j`.
    pub fn new(family: ParametricFamily, chamber: Chamber, coordinate: usize) -> Result<Self> {
        let n = family.dim();
        if coordinate >= n {
            return Err(Error::Precondition(format!("coordinate {} out of range", coordinate + 1)));
        }
        let mut direction = vec![Rational::zero(); n];
        direction[coordinate] = Rational::one();
        Self::with_direction(family, chamber, direction)
    }

    pub fn with_direction(family: ParametricFamily, chamber: Chamber, direction: Vec<Rational>) -> Result<Self> {
        let Some(coordinate) = direction.iter().position(|x| !x.is_zero()) else {
            return Err(Error::Precondition("zero direction".into()));
        };
        if direction.len() != family.dim() {
            return Err(Error::Dimension("direction length".into()));
        }
        let polynomials = family_polynomials(&family, &chamber)?;
        Ok(Self {
            family,
            chamber,
            direction,
            coordinate,
            polynomials,
            transform_used: None,
            fan_label: String::new(),
        })
    }

    /// `m(c)` with `∫ x dV = m(c)·direction` when the reduction holds.
    pub fn moment_along(&self) -> Polynomial {
        let j = self.coordinate;
        self.polynomials.moments[j].scale(&(Rational::one() / &self.direction[j]))
    }

    pub fn volume(&self) -> &Polynomial {
        &self.polynomials.volume
    }
}

/// Ok when every moment polynomial is proportional to the direction;
/// otherwise the offending coordinates (0-based).
pub fn verify_reduction(p: &CoupledProblem) -> std::result::Result<(), Vec<usize>> {
    let j = p.coordinate;
    let mj = &p.polynomials.moments[j];
    let bad: Vec<usize> = (0..p.direction.len())
        .filter(|&i| i != j)
        .filter(|&i| {
            let lhs = p.polynomials.moments[i].scale(&p.direction[j]);
            let rhs = mj.scale(&p.direction[i]);
            !(&lhs - &rhs).is_zero()
        })
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// Primitive `N(c) = m(c)·V(1−c) + m(1−c)·V(c)`.
pub fn coupled_equation(p: &CoupledProblem) -> Result<Polynomial> {
    let v = p.volume();
    if let Ok(roots) = isolate_real_roots(v, &p.chamber.interval) {
        if !roots.is_empty() {
            return Err(Error::Inconsistent("volume polynomial vanishes inside the chamber".into()));
        }
    }
    let m = p.moment_along();
    let n = &(&m * &v.reflect()) + &(&m.reflect() * v);
    Ok(n.primitive())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KahlerVerdict {
    Kahler,
    NotKahler,
    Undecided,
}

impl KahlerVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            KahlerVerdict::Kahler => "true",
            KahlerVerdict::NotKahler => "false",
            KahlerVerdict::Undecided => "undecided",
        }
    }
}

/// Smallest isolating width tried before giving up on a boundary decision.
pub fn kahler_min_width() -> Rational {
    q(1, 1_000_000_000_000)
}

/// Whether `root` lies strictly inside `window`, refining as needed.
pub fn locate(root: &IsolatingInterval, window: &OpenInterval) -> (KahlerVerdict, IsolatingInterval) {
    let floor = kahler_min_width();
    let mut r = root.clone();
    loop {
        if r.strictly_inside(window) {
            return (KahlerVerdict::Kahler, r);
        }
        if r.certainly_outside(window) {
            return (KahlerVerdict::NotKahler, r);
        }
        if r.width() <= floor {
            return (KahlerVerdict::Undecided, r);
        }
        let half = r.width() / int(2);
        r = r.refine(&half);
    }
}

/// `c` and `1 − c` both inside the chamber, and every inequality a facet of a
/// simple polytope there.
pub fn kahler_check(p: &CoupledProblem, root: &IsolatingInterval) -> KahlerVerdict {
    let (sets, active) = &p.chamber.signature;
    let simple = sets
        .iter()
        .all(|s| s.iter().filter(|&&i| active[i]).count() == p.family.dim());
    if !active.iter().all(|&a| a) || !simple {
        return KahlerVerdict::NotKahler;
    }
    match p.chamber.symmetric_part() {
        Some(window) => locate(root, &window).0,
        None => KahlerVerdict::NotKahler,
    }
}

#[derive(Clone, Debug)]
pub struct CkeSolution {
    pub root: IsolatingInterval,
    pub numerator: Polynomial,
    pub in_chamber: bool,
    pub kahler: KahlerVerdict,
    /// The paired value `1 − c`.
    pub complement_root: IsolatingInterval,
    /// Offsets `(pᵢ, qᵢ)` of `b(c)`; `b(1 − c)` uses the same pairs at `1 − c`.
    pub offsets: Vec<(Rational, Rational)>,
}

impl CkeSolution {
    pub fn decimal(&self) -> String {
        self.root.decimal(6)
    }

    /// `b(c) + b(1 − c)` as affine functions of `c`.
    pub fn offset_sum(&self) -> Vec<(Rational, Rational)> {
        self.offsets
            .iter()
            .map(|(p, s)| (p + p + s, Rational::zero()))
            .collect()
    }

    /// `α₁ + α₂` equals the anticanonical class at the polytope level.
    pub fn sums_to_anticanonical(&self) -> bool {
        self.offset_sum().iter().all(|(p, s)| p.is_one() && s.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct CoupledSolve {
    pub numerator: Polynomial,
    /// True when `N ≡ 0`, so every `c` solves and `1/2` is reported.
    pub degenerate: bool,
    pub solutions: Vec<CkeSolution>,
}

/// Roots of the coupled equation in `window`, each checked for the Kähler
/// condition.
pub fn solve_coupled(p: &CoupledProblem, window: &OpenInterval) -> Result<CoupledSolve> {
    if let Err(bad) = verify_reduction(p) {
        let list: Vec<String> = bad.iter().map(|i| (i + 1).to_string()).collect();
        return Err(Error::Precondition(format!(
            "moments are not proportional to the direction at coordinates {}",
            list.join(", ")
        )));
    }
    let numerator = coupled_equation(p)?;
    let degenerate = numerator.is_zero();
    let roots = if degenerate {
        let half = q(1, 2);
        if window.contains(&half) {
            vec![IsolatingInterval::exact(half, Polynomial::linear(q(-1, 2), Rational::one()))]
        } else {
            Vec::new()
        }
    } else {
        isolate_real_roots(&numerator, window)?
    };
    let solutions = roots
        .into_iter()
        .map(|root| {
            let kahler = kahler_check(p, &root);
            let in_chamber = match p.chamber.symmetric_part() {
                Some(w) => locate(&root, &w).0 == KahlerVerdict::Kahler,
                None => false,
            };
            CkeSolution {
                complement_root: root.reflect(),
                numerator: numerator.clone(),
                in_chamber,
                kahler,
                offsets: p.family.offset_pairs().to_vec(),
                root,
            }
        })
        .collect();
    Ok(CoupledSolve {
        numerator,
        degenerate,
        solutions,
    })
}

/// Direction fixed by every symmetry of the family: automorphisms of the
/// normals preserving offsets act on the barycenter through their transpose.
/// `None` unless the fixed space is a line.
pub fn symmetry_direction(fam: &ParametricFamily) -> Result<Option<Vec<Rational>>> {
    let autos = ray_automorphisms_with_labels(fam.normals(), fam.offset_pairs())?;
    let dual: Vec<IntMatrix> = autos.iter().map(IntMatrix::transpose).collect();
    let fixed = fixed_subspace(&dual)?;
    Ok((fixed.len() == 1).then(|| normalize(fixed[0].clone())))
}

/// Direction spanned by the moment polynomials when they have rank one.
pub fn moment_direction(polys: &FamilyPolynomials) -> Option<Vec<Rational>> {
    let n = polys.moments.len();
    let width = polys.moments.iter().filter_map(Polynomial::degree).max()? + 1;
    // columns = coordinates, rows = coefficients
    let m: Vec<Vec<Rational>> = (0..width)
        .map(|k| polys.moments.iter().map(|p| p.coeff(k)).collect())
        .collect();
    if rank(&m) != 1 {
        return None;
    }
    let row = m.into_iter().find(|r| r.iter().any(|x| !x.is_zero()))?;
    debug_assert_eq!(row.len(), n);
    Some(normalize(row))
}

/// Scales so the first nonzero entry is one.
fn normalize(v: Vec<Rational>) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()).cloned() {
        Some(lead) => v.into_iter().map(|x| x / &lead).collect(),
        None => v,
    }
}

/// Orthogonal complement helper used by tests and reports: a basis of the
/// vectors `w` with `⟨w, u⟩ = 0`.
pub fn complement_basis(u: &[Rational]) -> Vec<Vec<Rational>> {
    null_space(&[u.to_vec()], u.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parametric::certify_chamber;

    fn square_problem() -> CoupledProblem {
        // every offset is c: pure dilation of a centred square
        let rays = vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]];
        let fam = ParametricFamily::from_rays(&rays, &[0, 1, 2, 3], &q(1, 2)).unwrap();
        let ch = certify_chamber(&fam, &OpenInterval::unit()).unwrap();
        CoupledProblem::new(fam, ch, 0).unwrap()
    }

    #[test]
    fn symmetric_family_is_degenerate() {
        let p = square_problem();
        assert!(verify_reduction(&p).is_ok());
        let n = coupled_equation(&p).unwrap();
        assert!(n.is_zero());
        let s = solve_coupled(&p, &OpenInterval::unit()).unwrap();
        assert!(s.degenerate);
        assert_eq!(s.solutions.len(), 1);
        assert_eq!(s.solutions[0].root.lo, q(1, 2));
        assert_eq!(s.solutions[0].kahler, KahlerVerdict::Kahler);
    }

    #[test]
    fn locate_handles_boundaries() {
        let w = OpenInterval::new(q(1, 4), q(3, 4)).unwrap();
        let inside = IsolatingInterval::exact(q(1, 2), Polynomial::linear(q(-1, 2), int(1)));
        assert_eq!(locate(&inside, &w).0, KahlerVerdict::Kahler);
        let edge = IsolatingInterval::exact(q(1, 4), Polynomial::linear(q(-1, 4), int(1)));
        assert_eq!(locate(&edge, &w).0, KahlerVerdict::NotKahler);
        // (3x − 1)³ = 10⁻⁴⁰ has its root about 1.5e-14 above 1/3
        let tiny = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(40));
        let p = &Polynomial::from_ints(&[-1, 9, -27, 27]) - &Polynomial::constant(tiny);
        let close = IsolatingInterval {
            lo: q(0, 1),
            hi: q(1, 2),
            polynomial: p,
        };
        let third = OpenInterval::new(q(1, 3), q(2, 3)).unwrap();
        assert_eq!(locate(&close, &third).0, KahlerVerdict::Undecided);
    }

    #[test]
    fn moment_direction_detects_rank_one() {
        let p = square_problem();
        assert!(moment_direction(&p.polynomials).is_none());
        assert_eq!(complement_basis(&[int(1), int(0)]).len(), 1);
    }
}
