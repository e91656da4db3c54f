//! Independent checks of the polytope engine: shoelace areas, Monte Carlo
//! volumes, cofactor determinants and slice integration on bundle polytopes.

mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::bundle_slices;
use toric_cke::exact::{int, q, to_f64, IntMatrix, Rational};
use toric_cke::fan::bundle_fan;
use toric_cke::parametric::{chamber_containing, family_polynomials, ParametricFamily};
use toric_cke::polytope::{enumerate_vertices, moments, HPolytope};
use toric_cke::OpenInterval;

fn random_polygon(rng: &mut StdRng) -> HPolytope {
    let mut normals = vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]];
    let mut offsets: Vec<Rational> = (0..4).map(|_| q(rng.gen_range(2..9), rng.gen_range(1..4))).collect();
    for _ in 0..rng.gen_range(1..5) {
        let n = vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
        if n == [0, 0] {
            continue;
        }
        normals.push(n);
        offsets.push(q(rng.gen_range(1..9), rng.gen_range(1..4)));
    }
    HPolytope::new(normals, offsets).unwrap()
}

fn shoelace(points: &[Vec<Rational>]) -> Rational {
    let cx: f64 = points.iter().map(|p| to_f64(&p[0])).sum::<f64>() / points.len() as f64;
    let cy: f64 = points.iter().map(|p| to_f64(&p[1])).sum::<f64>() / points.len() as f64;
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| {
        let ta = (to_f64(&a[1]) - cy).atan2(to_f64(&a[0]) - cx);
        let tb = (to_f64(&b[1]) - cy).atan2(to_f64(&b[0]) - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    let mut twice = Rational::zero();
    for i in 0..pts.len() {
        let (a, b) = (&pts[i], &pts[(i + 1) % pts.len()]);
        twice += &a[0] * &b[1] - &b[0] * &a[1];
    }
    twice.abs() / int(2)
}

#[test]
fn polygon_areas_match_shoelace() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..60 {
        let h = random_polygon(&mut rng);
        let Ok(v) = enumerate_vertices(&h) else { continue };
        let m = moments(&v).unwrap();
        assert_eq!(m.volume, shoelace(&v.vertices), "{h:?}");
    }
}

fn monte_carlo(h: &HPolytope, samples: usize, rng: &mut StdRng) -> (f64, f64) {
    let v = enumerate_vertices(h).unwrap();
    let n = h.dim();
    let lo: Vec<f64> = (0..n)
        .map(|j| v.vertices.iter().map(|p| to_f64(&p[j])).fold(f64::INFINITY, f64::min))
        .collect();
    let hi: Vec<f64> = (0..n)
        .map(|j| v.vertices.iter().map(|p| to_f64(&p[j])).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let boxvol: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let offsets: Vec<f64> = h.offsets().iter().map(to_f64).collect();
    let mut hits = 0usize;
    let mut x = vec![0.0; n];
    for _ in 0..samples {
        for j in 0..n {
            x[j] = rng.gen_range(lo[j]..hi[j]);
        }
        let inside = h.normals().iter().zip(&offsets).all(|(a, b)| {
            let s: f64 = a.iter().zip(&x).map(|(ai, xi)| *ai as f64 * xi).sum();
            s >= -b
        });
        hits += usize::from(inside);
    }
    let p = hits as f64 / samples as f64;
    let sigma = boxvol * (p * (1.0 - p) / samples as f64).sqrt();
    (boxvol * p, sigma)
}

#[test]
fn volumes_agree_with_monte_carlo_in_low_dimension() {
    let mut rng = StdRng::seed_from_u64(11);
    let cases = vec![
        // CP², CP¹×CP¹, F₁, CP³, CP¹×CP², a blown-up CP³
        vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![0, -1]],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 0], vec![0, 0, 1], vec![0, 0, -1]],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1], vec![1, 1, 1]],
    ];
    for normals in cases {
        let h = HPolytope::anticanonical(&normals).unwrap();
        let exact = to_f64(&moments(&enumerate_vertices(&h).unwrap()).unwrap().volume);
        let (est, sigma) = monte_carlo(&h, 200_000, &mut rng);
        assert!((est - exact).abs() < 5.0 * sigma + 1e-9, "{normals:?}: {est} vs {exact}");
    }
}

fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    if m.len() == 1 {
        return BigInt::from(m[0][0]);
    }
    let mut total = BigInt::zero();
    for (j, &a) in m[0].iter().enumerate() {
        if a == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect())
            .collect();
        let term = BigInt::from(a) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[test]
fn determinants_match_cofactor_expansion() {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 1..=6 {
        for _ in 0..20 {
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let m = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(m.det().unwrap(), cofactor_det(&rows), "{rows:?}");
        }
    }
}

#[test]
fn bundle_volumes_match_slice_integration() {
    for (m, r) in [(1, 1), (1, 2), (2, 1), (3, 1), (2, 2), (3, 2)] {
        let f = bundle_fan(m, r).unwrap();
        let data = moments(&enumerate_vertices(&f.anticanonical_polytope().unwrap()).unwrap()).unwrap();
        let (vol, first) = bundle_slices(m, r, &vec![Rational::one(); f.ray_count()]);
        assert_eq!(data.volume, vol, "bundle({m},{r})");
        assert_eq!(data.first_moments, first, "bundle({m},{r})");
    }
}

#[test]
fn slice_integration_reproduces_quoted_volumes() {
    let ones = |k| vec![Rational::one(); k];
    let (v5, m5) = bundle_slices(3, 1, &ones(8));
    assert_eq!(v5, q(599, 15));
    assert_eq!(m5[4], q(26, 9));
    let (v6, m6) = bundle_slices(3, 2, &ones(9));
    assert_eq!(v6, q(4039, 45));
    assert_eq!(m6[5], q(46, 21));
}

#[test]
fn four_dimensional_family_polynomials_match_slice_integration() {
    // bundle(1,2), each nontrivial divisor class parametrized in turn
    let f = bundle_fan(1, 2).unwrap();
    let half = q(1, 2);
    for orbit in [vec![0usize, 4], vec![1, 2, 5]] {
        let fam = ParametricFamily::from_rays(&f.rays, &orbit, &half).unwrap();
        let ch = chamber_containing(&fam, &half, &OpenInterval::unit()).unwrap();
        let polys = family_polynomials(&fam, &ch).unwrap();
        for k in 1..8 {
            let c = ch.interval.lerp(&q(k, 8));
            let (vol, first) = bundle_slices(1, 2, &fam.offsets_at(&c));
            assert_eq!(polys.volume.eval(&c), vol, "orbit {orbit:?} at {c}");
            for (j, mj) in first.iter().enumerate() {
                assert_eq!(&polys.moments[j].eval(&c), mj, "orbit {orbit:?} x{} at {c}", j + 1);
            }
        }
    }
}
