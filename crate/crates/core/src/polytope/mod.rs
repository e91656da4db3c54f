//! Half-space polytopes `{x : ⟨x, vᵢ⟩ ≥ −bᵢ}` with exact vertex enumeration,
//! reflexivity / Delzant checks, triangulation and linear moments.

mod moments;
mod triangulate;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::{affine_rank, bareiss_det, null_space, rank, solve_int};
use crate::exact::{dot_int_rational, is_integral, Rational};

pub use moments::{ke_verdict, moments, moments_with, KeVerdict, MomentData};
pub use triangulate::{simplex_volume, triangulate, triangulate_with, AnchorRule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    normals: Vec<Vec<i64>>,
    offsets: Vec<Rational>,
}

impl HPolytope {
    pub fn new(normals: Vec<Vec<i64>>, offsets: Vec<Rational>) -> Result<Self> {
        let dim = normals.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::Dimension("empty normal list".into()));
        }
        if normals.len() != offsets.len() {
            return Err(Error::Dimension(format!(
                "{} normals but {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        if let Some(i) = normals.iter().position(|v| v.len() != dim) {
            return Err(Error::Dimension(format!("normal {} has wrong length", i + 1)));
        }
        if let Some(i) = normals.iter().position(|v| v.iter().all(|&x| x == 0)) {
            return Err(Error::Precondition(format!("normal {} is zero", i + 1)));
        }
        Ok(Self {
            dim,
            normals,
            offsets,
        })
    }

    /// All offsets equal to one.
    pub fn anticanonical(normals: &[Vec<i64>]) -> Result<Self> {
        Self::new(normals.to_vec(), vec![Rational::from_integer(1.into()); normals.len()])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// `⟨x, vᵢ⟩ + bᵢ`, non-negative on the polytope.
    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        dot_int_rational(&self.normals[i], x) + &self.offsets[i]
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        (0..self.len()).all(|i| !self.slack(i, x).is_negative())
    }

    /// Same normals, offsets replaced.
    pub fn with_offsets(&self, offsets: Vec<Rational>) -> Result<Self> {
        Self::new(self.normals.clone(), offsets)
    }

    /// True iff the recession cone `{y : ⟨y, vᵢ⟩ ≥ 0}` is `{0}`.
    pub fn is_bounded(&self) -> bool {
        let n = self.dim;
        let rows: Vec<Vec<Rational>> = self.normals.iter().map(|v| to_q(v)).collect();
        if rank(&rows) < n {
            return false;
        }
        // A nonzero pointed cone has an extreme ray cut out by n−1 independent rows.
        let mut found = false;
        for_each_subset(self.len(), n - 1, &mut |idx| {
            let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| rows[i].clone()).collect();
            let ns = null_space(&sub, n);
            if ns.len() == 1 {
                let d = &ns[0];
                let pairs: Vec<Rational> = self.normals.iter().map(|v| dot_int_rational(v, d)).collect();
                if pairs.iter().all(|p| !p.is_negative()) || pairs.iter().all(|p| !p.is_positive()) {
                    found = true;
                    return false;
                }
            }
            true
        });
        !found
    }
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns false.
pub(crate) fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return;
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub dim: usize,
    /// Sorted lexicographically.
    pub vertices: Vec<Vec<Rational>>,
    /// Inequalities tight at each vertex.
    pub incidence: Vec<BTreeSet<usize>>,
    /// Whether each inequality supports a facet.
    pub facet_active: Vec<bool>,
}

impl VRep {
    /// Vertex indices on which inequality `i` is tight.
    pub fn tight_vertices(&self, i: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.incidence[v].contains(&i))
            .collect()
    }

    /// Every vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> bool {
        self.incidence.iter().all(|inc| {
            inc.iter().filter(|&&i| self.facet_active[i]).count() == self.dim
        })
    }

    /// Combinatorial fingerprint: sorted incidence sets and the facet flags.
    pub fn signature(&self) -> (Vec<BTreeSet<usize>>, Vec<bool>) {
        let mut inc = self.incidence.clone();
        inc.sort();
        (inc, self.facet_active.clone())
    }
}

pub fn enumerate_vertices(h: &HPolytope) -> Result<VRep> {
    let n = h.dim();
    if h.len() < n + 1 {
        return Err(Error::Unbounded);
    }
    if !h.is_bounded() {
        return Err(Error::Unbounded);
    }
    let mut found: BTreeMap<Vec<Rational>, BTreeSet<usize>> = BTreeMap::new();
    let mut err = None;
    for_each_subset(h.len(), n, &mut |idx| {
        let m: Vec<Vec<i64>> = idx.iter().map(|&i| h.normals[i].clone()).collect();
        let rhs: Vec<Rational> = idx.iter().map(|&i| -h.offsets[i].clone()).collect();
        match solve_int(&m, &rhs) {
            Ok(Some(x)) => {
                if !found.contains_key(&x) && h.contains(&x) {
                    let tight = (0..h.len()).filter(|&i| h.slack(i, &x).is_zero()).collect();
                    found.insert(x, tight);
                }
                true
            }
            Ok(None) => true,
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    if found.is_empty() {
        return Err(Error::Degenerate("empty feasible set".into()));
    }
    let (vertices, incidence): (Vec<_>, Vec<_>) = found.into_iter().unzip();
    let refs: Vec<&[Rational]> = vertices.iter().map(Vec::as_slice).collect();
    let adim = affine_rank(&refs);
    if adim < n {
        return Err(Error::Degenerate(format!(
            "feasible set has dimension {adim} < {n}"
        )));
    }
    let facet_active = (0..h.len())
        .map(|i| {
            let pts: Vec<&[Rational]> = incidence
                .iter()
                .zip(&vertices)
                .filter(|(inc, _)| inc.contains(&i))
                .map(|(_, v)| v.as_slice())
                .collect();
            !pts.is_empty() && affine_rank(&pts) == n - 1
        })
        .collect();
    Ok(VRep {
        dim: n,
        vertices,
        incidence,
        facet_active,
    })
}

/// Offsets all one and every vertex integral.
pub fn is_reflexive(h: &HPolytope, v: &VRep) -> Result<bool> {
    let one = Rational::from_integer(1.into());
    if h.offsets().iter().any(|b| *b != one) {
        return Err(Error::Precondition("reflexivity needs all offsets equal to 1".into()));
    }
    if h.normals().iter().any(|n| crate::exact::gcd_slice(n) != 1) {
        return Err(Error::Precondition("reflexivity needs primitive normals".into()));
    }
    Ok(v.vertices.iter().all(|x| x.iter().all(is_integral)))
}

/// At every vertex exactly `n` tight normals, forming a lattice basis.
pub fn is_delzant(v: &VRep, normals: &[Vec<i64>]) -> bool {
    v.incidence.iter().all(|inc| {
        inc.len() == v.dim && {
            let m = inc
                .iter()
                .map(|&i| normals[i].iter().map(|&x| x.into()).collect())
                .collect();
            bareiss_det(m).abs() == 1.into()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, q};

    pub(crate) fn square() -> HPolytope {
        HPolytope::anticanonical(&[vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]).unwrap()
    }

    #[test]
    fn subsets_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, &mut |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }

    #[test]
    fn square_vertices() {
        let h = square()
            .with_offsets(vec![q(1, 2); 4])
            .unwrap();
        let v = enumerate_vertices(&h).unwrap();
        assert_eq!(v.vertices.len(), 4);
        assert_eq!(v.vertices[0], vec![q(-1, 2), q(-1, 2)]);
        assert!(v.facet_active.iter().all(|&a| a));
        assert!(v.is_simple());
    }

    #[test]
    fn unbounded_and_empty() {
        let wedge = HPolytope::anticanonical(&[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(enumerate_vertices(&wedge), Err(Error::Unbounded));
        let strip = HPolytope::anticanonical(&[vec![1, 0], vec![-1, 0], vec![1, 0]]).unwrap();
        assert_eq!(enumerate_vertices(&strip), Err(Error::Unbounded));
        let empty = HPolytope::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![int(-1), int(-1), int(1)],
        )
        .unwrap();
        assert!(matches!(enumerate_vertices(&empty), Err(Error::Degenerate(_))));
        let flat = HPolytope::new(
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![int(0), int(0), int(1), int(1)],
        )
        .unwrap();
        assert!(matches!(enumerate_vertices(&flat), Err(Error::Degenerate(_))));
    }

    #[test]
    fn redundant_inequality_is_inactive() {
        let h = HPolytope::new(
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1], vec![1, 1]],
            vec![int(1), int(1), int(1), int(1), int(5)],
        )
        .unwrap();
        let v = enumerate_vertices(&h).unwrap();
        assert_eq!(v.facet_active, vec![true, true, true, true, false]);
    }

    #[test]
    fn reflexive_and_delzant() {
        let h = square();
        let v = enumerate_vertices(&h).unwrap();
        assert!(is_reflexive(&h, &v).unwrap());
        assert!(is_delzant(&v, h.normals()));

        // vertices (-1,-1), (-1,3), (1,-1): still a lattice polygon
        let h = HPolytope::anticanonical(&[vec![1, 0], vec![0, 1], vec![-2, -1]]).unwrap();
        let v = enumerate_vertices(&h).unwrap();
        assert!(is_reflexive(&h, &v).unwrap());
        // vertex (2/3, -1)
        let h = HPolytope::anticanonical(&[vec![1, 0], vec![0, 1], vec![-3, -1]]).unwrap();
        let v = enumerate_vertices(&h).unwrap();
        assert!(v.vertices.contains(&vec![q(2, 3), int(-1)]));
        assert!(!is_reflexive(&h, &v).unwrap());

        let h = HPolytope::anticanonical(&[vec![1, 0], vec![0, 1], vec![-1, -2]]).unwrap();
        let v = enumerate_vertices(&h).unwrap();
        assert!(!is_delzant(&v, h.normals()));

        let half = square().with_offsets(vec![q(1, 2); 4]).unwrap();
        let v = enumerate_vertices(&half).unwrap();
        assert!(is_reflexive(&half, &v).is_err());
    }
}
