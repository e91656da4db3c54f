use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::VRep;
use crate::exact::matrix::{affine_rank, det};
use crate::exact::Rational;

/// Which vertex of each face the pulling triangulation cones from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AnchorRule {
    /// Lexicographically smallest vertex.
    #[default]
    LexMin,
    /// Lexicographically largest vertex.
    LexMax,
}

/// Pulling triangulation; each simplex is a list of `dim + 1` vertex indices.
pub fn triangulate(v: &VRep) -> Vec<Vec<usize>> {
    triangulate_with(v, AnchorRule::LexMin)
}

pub fn triangulate_with(v: &VRep, rule: AnchorRule) -> Vec<Vec<usize>> {
    let mut t = Puller {
        v,
        rule,
        memo: HashMap::new(),
    };
    let all: Vec<usize> = (0..v.vertices.len()).collect();
    t.face(&all, v.dim)
}

struct Puller<'a> {
    v: &'a VRep,
    rule: AnchorRule,
    memo: HashMap<Vec<usize>, Vec<Vec<usize>>>,
}

impl Puller<'_> {
    fn dimension(&self, face: &[usize]) -> usize {
        let pts: Vec<&[Rational]> = face.iter().map(|&i| self.v.vertices[i].as_slice()).collect();
        affine_rank(&pts)
    }

    /// `face` is sorted, of affine dimension `d`.
    fn face(&mut self, face: &[usize], d: usize) -> Vec<Vec<usize>> {
        if face.len() == d + 1 {
            return vec![face.to_vec()];
        }
        if let Some(hit) = self.memo.get(face) {
            return hit.clone();
        }
        let anchor = match self.rule {
            AnchorRule::LexMin => face[0],
            AnchorRule::LexMax => face[face.len() - 1],
        };
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..self.v.facet_active.len() {
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&p| self.v.incidence[p].contains(&i))
                .collect();
            if sub.len() >= d && sub.len() < face.len() && !sub.contains(&anchor) {
                facets.insert(sub);
            }
        }
        let mut out = Vec::new();
        for sub in facets {
            if self.dimension(&sub) + 1 != d {
                continue;
            }
            for mut s in self.face(&sub, d - 1) {
                s.push(anchor);
                s.sort_unstable();
                out.push(s);
            }
        }
        self.memo.insert(face.to_vec(), out.clone());
        out
    }
}

/// `|det(p₁ − p₀, …, p_n − p₀)| / n!`.
pub fn simplex_volume(points: &[&[Rational]]) -> Rational {
    let n = points.len() - 1;
    let p0 = points[0];
    let edges: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let d = det(&edges).expect("square edge matrix").abs();
    let fact: BigInt = (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    d / Rational::from_integer(fact)
}
