//! Fans given by their ray generators: validation, Demazure roots,
//! divisor classes, lattice transforms and ray-set automorphisms.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::matrix::{inverse, mat_mul, null_space, rank};
use crate::exact::{gcd_slice, smith_normal_form, IntMatrix, Rational, Smith};
use crate::polytope::{enumerate_vertices, HPolytope, VRep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub label: String,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, label: impl Into<String>) -> Self {
        Self {
            dim,
            rays,
            label: label.into(),
        }
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    /// Every violation of primitivity, distinctness, nonzero-ness and shape.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.dim == 0 {
            out.push("dimension must be positive".to_string());
        }
        for (i, v) in self.rays.iter().enumerate() {
            let name = format!("ray {} {:?}", i + 1, v);
            if v.len() != self.dim {
                out.push(format!("{name} has length {}, expected {}", v.len(), self.dim));
                continue;
            }
            if v.iter().all(|&x| x == 0) {
                out.push(format!("{name} is zero"));
            } else if gcd_slice(v) != 1 {
                out.push(format!("{name} is not primitive"));
            }
            if let Some(j) = self.rays[..i].iter().position(|w| w == v) {
                out.push(format!("{name} duplicates ray {}", j + 1));
            }
        }
        if self.rays.len() < self.dim + 1 {
            out.push(format!(
                "{} rays cannot span a complete fan in dimension {}",
                self.rays.len(),
                self.dim
            ));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidFan(v))
        }
    }

    /// `dim × #rays`, ray generators as columns.
    pub fn ray_matrix(&self) -> Result<IntMatrix> {
        IntMatrix::from_columns(&self.rays)
    }

    pub fn ray_sum(&self) -> Vec<i64> {
        (0..self.dim)
            .map(|j| self.rays.iter().map(|v| v[j]).sum())
            .collect()
    }

    /// `{x : ⟨x, v⟩ ≥ −1 for every ray v}`.
    pub fn anticanonical_polytope(&self) -> Result<HPolytope> {
        HPolytope::anticanonical(&self.rays)
    }

    pub fn apply_unimodular(&self, a: &IntMatrix) -> Result<Fan> {
        let det = a.det()?;
        if !det.abs().to_i64().is_some_and(|d| d == 1) {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(Fan {
            dim: self.dim,
            rays: self.transform_rays(a)?,
            label: self.label.clone(),
        })
    }

    /// `v ↦ a·v` for any nonsingular integer `a`. The images need not be
    /// primitive, so they are returned as bare normals rather than a fan.
    pub fn transform_rays(&self, a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
        if !a.is_square() || a.rows() != self.dim {
            return Err(Error::Dimension(format!(
                "{}x{} transform on a {}-dimensional fan",
                a.rows(),
                a.cols(),
                self.dim
            )));
        }
        if a.det()?.is_zero() {
            return Err(Error::Singular);
        }
        self.rays.iter().map(|v| a.mul_vec(v)).collect()
    }
}

/// Fan of the projectivisation of `O ⊕ O(−1, 1)` over `CP^m × CP^r`:
/// `e_1 … e_n`, then `−(e_1+…+e_m) + e_n`, `−(e_{m+1}+…+e_{m+r}) − e_n`, `−e_n`
/// with `n = m + r + 1`.
pub fn bundle_fan(m: usize, r: usize) -> Result<Fan> {
    if m == 0 || r == 0 {
        return Err(Error::Precondition("bundle factors need m, r >= 1".into()));
    }
    let n = m + r + 1;
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut rays: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut base1 = vec![0i64; n];
    base1[..m].fill(-1);
    base1[n - 1] = 1;
    let mut base2 = vec![0i64; n];
    base2[m..m + r].fill(-1);
    base2[n - 1] = -1;
    let mut last = vec![0i64; n];
    last[n - 1] = -1;
    rays.extend([base1, base2, last]);
    Ok(Fan::new(n, rays, format!("bundle({m},{r})")))
}

/// Demazure roots: `m ∈ M` with `⟨v_ρ, m⟩ = −1` for exactly one ray and
/// `⟨v_ρ', m⟩ ≥ 0` for all others.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSet {
    pub all: Vec<Vec<i64>>,
    /// Ray index (0-based) pairing to −1 with `all[i]`.
    pub witness: Vec<usize>,
    pub semisimple: Vec<Vec<i64>>,
    pub unipotent: Vec<Vec<i64>>,
}

fn pair(v: &[i64], m: &[i64]) -> i64 {
    v.iter().zip(m).map(|(a, b)| a * b).sum()
}

/// The unique ray with pairing −1, if `m` satisfies the root condition.
pub fn root_witness(rays: &[Vec<i64>], m: &[i64]) -> Option<usize> {
    let mut witness = None;
    for (i, v) in rays.iter().enumerate() {
        match pair(v, m) {
            -1 if witness.is_none() => witness = Some(i),
            p if p < 0 => return None,
            _ => {}
        }
    }
    witness
}

/// Roots lie in `{m : ⟨v, m⟩ ≥ −1}`. Its lattice points are searched depth
/// first over the vertex bounding box, pruning a prefix once some pairing
/// can no longer reach −1 or two pairings are forced negative.
pub fn demazure_roots(f: &Fan) -> Result<RootSet> {
    let poly = f.anticanonical_polytope()?;
    let vrep = enumerate_vertices(&poly)?;
    demazure_roots_from_vertices(f, &vrep)
}

pub fn demazure_roots_from_vertices(f: &Fan, vrep: &VRep) -> Result<RootSet> {
    let n = f.dim;
    let bound = |j: usize, lower: bool| -> Result<i64> {
        let it = vrep.vertices.iter().map(|v| &v[j]);
        let x = if lower { it.min() } else { it.max() }.expect("nonempty");
        let y = if lower { x.ceil() } else { x.floor() };
        y.to_integer().to_i64().ok_or(Error::Overflow("root search box"))
    };
    let lo: Vec<i64> = (0..n).map(|j| bound(j, true)).collect::<Result<_>>()?;
    let hi: Vec<i64> = (0..n).map(|j| bound(j, false)).collect::<Result<_>>()?;
    // suffix_max[k][t] = max of Σ_{j ≥ t} v_kj m_j over the box
    let suffix_max: Vec<Vec<i64>> = f
        .rays
        .iter()
        .map(|v| {
            let mut acc = vec![0i64; n + 1];
            for j in (0..n).rev() {
                acc[j] = acc[j + 1] + (v[j] * lo[j]).max(v[j] * hi[j]);
            }
            acc
        })
        .collect();

    struct Dfs<'a> {
        rays: &'a [Vec<i64>],
        lo: &'a [i64],
        hi: &'a [i64],
        suffix_max: &'a [Vec<i64>],
        m: Vec<i64>,
        partial: Vec<i64>,
        found: BTreeSet<Vec<i64>>,
    }

    impl Dfs<'_> {
        fn run(&mut self, t: usize) {
            let mut forced = 0;
            for (k, s) in self.partial.iter().enumerate() {
                let best = s + self.suffix_max[k][t];
                if best < -1 {
                    return;
                }
                if best < 0 {
                    forced += 1;
                }
            }
            if forced > 1 {
                return;
            }
            if t == self.m.len() {
                if root_witness(self.rays, &self.m).is_some() {
                    self.found.insert(self.m.clone());
                }
                return;
            }
            for x in self.lo[t]..=self.hi[t] {
                self.m[t] = x;
                for (k, v) in self.rays.iter().enumerate() {
                    self.partial[k] += v[t] * x;
                }
                self.run(t + 1);
                for (k, v) in self.rays.iter().enumerate() {
                    self.partial[k] -= v[t] * x;
                }
            }
        }
    }

    let mut dfs = Dfs {
        rays: &f.rays,
        lo: &lo,
        hi: &hi,
        suffix_max: &suffix_max,
        m: vec![0; n],
        partial: vec![0; f.rays.len()],
        found: BTreeSet::new(),
    };
    dfs.run(0);
    let found = dfs.found;
    let all: Vec<Vec<i64>> = found.iter().cloned().collect();
    let witness = all
        .iter()
        .map(|m| root_witness(&f.rays, m).expect("root"))
        .collect();
    let (semisimple, unipotent) = all.iter().cloned().partition(|m| {
        let neg: Vec<i64> = m.iter().map(|x| -x).collect();
        found.contains(&neg)
    });
    Ok(RootSet {
        all,
        witness,
        semisimple,
        unipotent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductivityVerdict {
    /// No unipotent roots, i.e. the identity component of Aut is reductive.
    pub semisimple: bool,
    /// Ray sum is zero (a sufficient condition for reductivity).
    pub nill_sufficient: bool,
    pub roots: usize,
    pub semisimple_roots: usize,
    pub unipotent_roots: usize,
}

pub fn reductivity_verdict(f: &Fan) -> Result<ReductivityVerdict> {
    let roots = demazure_roots(f)?;
    Ok(verdict_from_roots(f, &roots))
}

pub fn verdict_from_roots(f: &Fan, roots: &RootSet) -> ReductivityVerdict {
    ReductivityVerdict {
        semisimple: roots.unipotent.is_empty(),
        nill_sufficient: f.ray_sum().iter().all(|&x| x == 0),
        roots: roots.all.len(),
        semisimple_roots: roots.semisimple.len(),
        unipotent_roots: roots.unipotent.len(),
    }
}

/// Divisor class data. Linear equivalences among the torus-invariant
/// divisors are the image of `m ↦ (⟨m, v_i⟩)_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClassInfo {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    /// Basis of the relation lattice: `(⟨e_j, v_i⟩)_i` for each coordinate `j`.
    pub relation_basis: Vec<Vec<i64>>,
    smith: Smith,
}

impl DivisorClassInfo {
    /// True if `Σ r_i D_i ∼ 0`, i.e. `r = (⟨m, v_i⟩)_i` for an integral `m`.
    pub fn is_relation(&self, r: &[i64]) -> bool {
        let k = self.smith.u.rows();
        if r.len() != k {
            return false;
        }
        let Ok(ur) = self.smith.u.mul_vec(r) else {
            return false;
        };
        let diag = self.smith.diagonal();
        ur.iter().enumerate().all(|(i, &x)| match diag.get(i) {
            Some(&d) if d != 0 => x % d == 0,
            _ => x == 0,
        })
    }

    /// Groups ray indices (0-based) whose divisors are linearly equivalent.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let k = self.smith.u.rows();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..k {
            let home = classes.iter_mut().find(|cls| {
                let mut r = vec![0i64; k];
                r[cls[0]] = 1;
                r[i] -= 1;
                self.is_relation(&r)
            });
            match home {
                Some(cls) => cls.push(i),
                None => classes.push(vec![i]),
            }
        }
        classes
    }
}

pub fn divisor_classes(f: &Fan) -> Result<DivisorClassInfo> {
    let r = f.ray_matrix()?;
    let dual = r.transpose();
    let smith = smith_normal_form(&dual)?;
    if smith.rank() < f.dim {
        return Err(Error::Precondition(format!(
            "rays span a space of rank {} < {}",
            smith.rank(),
            f.dim
        )));
    }
    Ok(DivisorClassInfo {
        free_rank: f.ray_count() - smith.rank(),
        torsion: smith.torsion(),
        relation_basis: r.to_rows(),
        smith,
    })
}

/// Where `g` sends each ray, if it permutes the ray set.
pub fn permutation_of(g: &IntMatrix, rays: &[Vec<i64>]) -> Option<Vec<usize>> {
    let index: HashMap<&Vec<i64>, usize> = rays.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let perm = rays
        .iter()
        .map(|v| g.mul_vec(v).ok().and_then(|w| index.get(&w).copied()))
        .collect::<Option<Vec<_>>>()?;
    let distinct: BTreeSet<_> = perm.iter().collect();
    (distinct.len() == perm.len()).then_some(perm)
}

/// All unimodular `g` with `g·(ray set) = ray set`.
pub fn ray_automorphisms(rays: &[Vec<i64>]) -> Result<Vec<IntMatrix>> {
    ray_automorphisms_with_labels(rays, &vec![(); rays.len()])
}

/// As [`ray_automorphisms`], restricted to permutations that preserve
/// `labels` (e.g. the offsets of a polytope family).
pub fn ray_automorphisms_with_labels<L: PartialEq>(
    rays: &[Vec<i64>],
    labels: &[L],
) -> Result<Vec<IntMatrix>> {
    let k = rays.len();
    let n = rays.first().map_or(0, Vec::len);
    if labels.len() != k {
        return Err(Error::Dimension("one label per ray".into()));
    }
    let rq: Vec<Vec<Rational>> = rays
        .iter()
        .map(|v| v.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    if n == 0 || rank(&rq) < n {
        return Err(Error::Precondition("rays do not span the lattice".into()));
    }

    // Rays i, j have the same Gale vector iff e_i − e_j is a linear relation
    // over Q; class sizes are preserved by every automorphism.
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| rq.iter().map(|v| v[j].clone()).collect())
        .collect();
    let kernel = null_space(&cols, k);
    let gale: Vec<Vec<&Rational>> = (0..k).map(|i| kernel.iter().map(|b| &b[i]).collect()).collect();
    let class_size: Vec<usize> = (0..k)
        .map(|i| (0..k).filter(|&j| gale[j] == gale[i]).count())
        .collect();
    let compatible = |i: usize, j: usize| class_size[i] == class_size[j] && labels[i] == labels[j];

    // greedy basis among the rays
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..k {
        let mut trial: Vec<Vec<Rational>> = basis.iter().map(|&b| rq[b].clone()).collect();
        trial.push(rq[i].clone());
        if rank(&trial) == trial.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        }
    }
    // columns of `bmat` are the basis rays
    let bmat: Vec<Vec<Rational>> = (0..n)
        .map(|row| basis.iter().map(|&b| rq[b][row].clone()).collect())
        .collect();
    let binv = inverse(&bmat)?.ok_or(Error::Singular)?;
    let coords: Vec<Vec<Rational>> = rq
        .iter()
        .map(|v| {
            let col: Vec<Vec<Rational>> = v.iter().map(|x| vec![x.clone()]).collect();
            mat_mul(&binv, &col).into_iter().map(|r| r[0].clone()).collect()
        })
        .collect();
    let last_index: Vec<usize> = coords
        .iter()
        .map(|c| c.iter().rposition(|x| !x.is_zero()).expect("nonzero ray"))
        .collect();
    let lookup: HashMap<Vec<Rational>, usize> = rq.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();

    struct Search<'a> {
        n: usize,
        k: usize,
        rq: &'a [Vec<Rational>],
        basis: &'a [usize],
        coords: &'a [Vec<Rational>],
        last_index: &'a [usize],
        lookup: &'a HashMap<Vec<Rational>, usize>,
        binv: &'a [Vec<Rational>],
        images: Vec<usize>,
        found: Vec<IntMatrix>,
    }

    impl Search<'_> {
        fn image_of(&self, ray: usize) -> Vec<Rational> {
            let c = &self.coords[ray];
            (0..self.n)
                .map(|row| {
                    self.images
                        .iter()
                        .enumerate()
                        .filter(|(t, _)| !c[*t].is_zero())
                        .fold(Rational::zero(), |acc, (t, &img)| acc + &c[t] * &self.rq[img][row])
                })
                .collect()
        }

        fn run(&mut self, compatible: &dyn Fn(usize, usize) -> bool) {
            let t = self.images.len();
            if t == self.n {
                self.finish();
                return;
            }
            for cand in 0..self.k {
                if !compatible(self.basis[t], cand) || self.images.contains(&cand) {
                    continue;
                }
                self.images.push(cand);
                let ok = (0..self.k).filter(|&i| self.last_index[i] == t).all(|i| {
                    self.lookup
                        .get(&self.image_of(i))
                        .is_some_and(|&j| compatible(i, j))
                });
                if ok {
                    self.run(compatible);
                }
                self.images.pop();
            }
        }

        fn finish(&mut self) {
            // g = [images] · B^{-1}
            let img: Vec<Vec<Rational>> = (0..self.n)
                .map(|row| self.images.iter().map(|&j| self.rq[j][row].clone()).collect())
                .collect();
            let g = mat_mul(&img, self.binv);
            if let Some(gi) = IntMatrix::from_rational(&g) {
                if gi.is_unimodular() {
                    self.found.push(gi);
                }
            }
        }
    }

    let mut search = Search {
        n,
        k,
        rq: &rq,
        basis: &basis,
        coords: &coords,
        last_index: &last_index,
        lookup: &lookup,
        binv: &binv,
        images: Vec::with_capacity(n),
        found: Vec::new(),
    };
    search.run(&compatible);
    let mut found = search.found;
    found.sort_by_key(|m| m.to_rows());
    found.dedup();
    Ok(found)
}

/// Basis of `∩_g ker(g − I)`.
pub fn fixed_subspace(gens: &[IntMatrix]) -> Result<Vec<Vec<Rational>>> {
    let Some(first) = gens.first() else {
        return Err(Error::Precondition("no generators".into()));
    };
    let n = first.rows();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in gens {
        if !g.is_square() || g.rows() != n {
            return Err(Error::Dimension("generators must be square of equal size".into()));
        }
        for r in 0..n {
            rows.push(
                (0..n)
                    .map(|c| {
                        let x = g.get(r, c) - i64::from(r == c);
                        Rational::from_integer(BigInt::from(x))
                    })
                    .collect(),
            );
        }
    }
    Ok(null_space(&rows, n))
}
