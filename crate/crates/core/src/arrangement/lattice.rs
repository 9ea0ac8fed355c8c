use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::point::ProjPoint;
use super::Arrangement;

/// An intersection point together with the (sorted) indices of the lines through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub point: ProjPoint,
    pub incident: Vec<usize>,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }

    pub fn contains_line(&self, i: usize) -> bool {
        self.incident.binary_search(&i).is_ok()
    }
}

/// All points where two or more lines meet, ordered by their incidence lists.
///
/// Every unordered pair of lines is accounted for by exactly one point.
pub fn intersection_lattice(a: &Arrangement) -> Vec<LatticePoint> {
    let m = a.m();
    let lines = a.lines();
    let mut covered = vec![false; m * m];
    let mut points = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if covered[i * m + j] {
                continue;
            }
            let p = lines[i].join(&lines[j]).expect("lines are distinct");
            let incident: Vec<usize> = (0..m).filter(|&k| p.incident(&lines[k])).collect();
            for (s, &u) in incident.iter().enumerate() {
                for &v in &incident[s + 1..] {
                    covered[u * m + v] = true;
                }
            }
            points.push(LatticePoint { point: p, incident });
        }
    }
    points
}

/// Counts `b_h` of lattice points of multiplicity `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub m: usize,
    pub counts: BTreeMap<usize, usize>,
}

impl MultiplicityProfile {
    pub fn from_lattice(m: usize, lattice: &[LatticePoint]) -> MultiplicityProfile {
        let mut counts = BTreeMap::new();
        for p in lattice {
            *counts.entry(p.multiplicity()).or_insert(0) += 1;
        }
        MultiplicityProfile { m, counts }
    }

    pub fn b(&self, h: usize) -> usize {
        self.counts.get(&h).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(if self.m > 0 { 1 } else { 0 })
    }

    /// `Σ_h C(h,2)·b_h`, which always equals `C(m,2)`.
    pub fn pair_count(&self) -> usize {
        self.counts.iter().map(|(&h, &b)| binom2(h) * b).sum()
    }

    pub fn satisfies_pair_identity(&self) -> bool {
        self.pair_count() == binom2(self.m)
    }
}

pub(crate) fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn multiplicity_profile(a: &Arrangement) -> MultiplicityProfile {
    MultiplicityProfile::from_lattice(a.m(), &intersection_lattice(a))
}

/// True iff one point lies on every line. A single line counts as a pencil.
pub fn is_pencil(a: &Arrangement) -> bool {
    let m = a.m();
    if m <= 2 {
        return true;
    }
    let p = a.lines()[0].join(&a.lines()[1]).expect("lines are distinct");
    a.lines()[2..].iter().all(|l| p.incident(l))
}
