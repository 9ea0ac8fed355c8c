//! Canonical form of the intersection lattice.
//!
//! The lattice of a line arrangement is determined by the line count and the
//! family of point-blocks of size ≥ 3 (double points are exactly the pairs not
//! covered by a block). The canonical form is the lexicographically least block
//! family over all relabelings reached by individualisation–refinement, with
//! branches over interchangeable lines (identical block membership) collapsed.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::lattice::intersection_lattice;
use super::Arrangement;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub m: usize,
    /// Blocks of size ≥ 3 under the canonical labeling, each sorted, sorted overall.
    pub blocks: Vec<Vec<usize>>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.m)?;
        for b in &self.blocks {
            let labels: Vec<String> = b.iter().map(usize::to_string).collect();
            write!(f, "|{}", labels.join("."))?;
        }
        Ok(())
    }
}

pub fn fingerprint(a: &Arrangement) -> Fingerprint {
    let blocks: Vec<Vec<usize>> = intersection_lattice(a)
        .into_iter()
        .filter(|p| p.multiplicity() >= 3)
        .map(|p| p.incident)
        .collect();
    canonical_form(a.m(), &blocks)
}

pub fn same_type(a: &Arrangement, b: &Arrangement) -> bool {
    a.m() == b.m() && fingerprint(a) == fingerprint(b)
}

/// Canonical form of an arbitrary family of blocks on `m` labelled points.
pub fn canonical_form(m: usize, blocks: &[Vec<usize>]) -> Fingerprint {
    let mut membership = vec![Vec::new(); m];
    for (bi, b) in blocks.iter().enumerate() {
        for &v in b {
            membership[v].push(bi);
        }
    }
    // Lines with equal membership can be swapped by an automorphism.
    let mut twin_rep = vec![0; m];
    let mut first_with: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for v in 0..m {
        twin_rep[v] = *first_with.entry(&membership[v]).or_insert(v);
    }
    let search = Search {
        blocks,
        membership: &membership,
        twin_rep: &twin_rep,
    };
    let colors = search.refine(vec![0; m]);
    let mut best = None;
    search.descend(colors, &mut best);
    Fingerprint {
        m,
        blocks: best.unwrap_or_default(),
    }
}

struct Search<'a> {
    blocks: &'a [Vec<usize>],
    membership: &'a [Vec<usize>],
    twin_rep: &'a [usize],
}

impl Search<'_> {
    /// Colour refinement on the line/block incidence graph until stable.
    /// Colours are ranks of signatures, so the result is labeling-invariant.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = count_classes(&colors);
        loop {
            let block_sigs: Vec<Vec<usize>> = self
                .blocks
                .iter()
                .map(|b| sorted(b.iter().map(|&v| colors[v]).collect()))
                .collect();
            let block_colors = rank(&block_sigs);
            let line_sigs: Vec<(usize, Vec<usize>)> = (0..colors.len())
                .map(|v| {
                    let around = sorted(self.membership[v].iter().map(|&b| block_colors[b]).collect());
                    (colors[v], around)
                })
                .collect();
            colors = rank(&line_sigs);
            let now = count_classes(&colors);
            if now == classes {
                return colors;
            }
            classes = now;
        }
    }

    fn descend(&self, colors: Vec<usize>, best: &mut Option<Vec<Vec<usize>>>) {
        let m = colors.len();
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            cells.entry(c).or_default().push(v);
        }
        let Some(target) = cells.values().find(|c| c.len() > 1) else {
            let encoded = self.encode(&colors);
            if best.as_ref().is_none_or(|b| encoded < *b) {
                *best = Some(encoded);
            }
            return;
        };
        let mut tried_reps = Vec::new();
        for &v in target {
            let rep = self.twin_rep[v];
            if tried_reps.contains(&rep) {
                continue;
            }
            tried_reps.push(rep);
            let split: Vec<(usize, usize)> = (0..m).map(|u| (colors[u], usize::from(u != v))).collect();
            self.descend(self.refine(rank(&split)), best);
        }
    }

    fn encode(&self, labels: &[usize]) -> Vec<Vec<usize>> {
        sorted(
            self.blocks
                .iter()
                .map(|b| sorted(b.iter().map(|&v| labels[v]).collect()))
                .collect(),
        )
    }
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut uniq: Vec<T> = sigs.to_vec();
    uniq.sort();
    uniq.dedup();
    sigs.iter()
        .map(|s| uniq.binary_search(s).expect("present"))
        .collect()
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn arr(triples: &[[i64; 3]]) -> Arrangement {
        Arrangement::from_int_triples(&Field::rationals(), triples).unwrap()
    }

    #[test]
    fn triangle_is_not_a_pencil() {
        let tri = arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let pen = arr(&[[1, 0, 0], [1, -1, 0], [1, -2, 0]]);
        assert!(!same_type(&tri, &pen));
        assert!(same_type(&tri, &tri));
    }

    #[test]
    fn near_pencil_realizations_agree() {
        let a = arr(&[[1, 0, 0], [1, -1, 0], [1, -2, 0], [1, -3, 0], [0, 0, 1]]);
        // four lines through [1:1:1] plus one more
        let b2 = arr(&[[1, -1, 0], [0, 1, -1], [1, 0, -1], [1, 1, -2], [3, 5, 7]]);
        let generic = arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]]);
        assert!(same_type(&a, &b2));
        assert!(!same_type(&a, &generic));
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let blocks = vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 4, 5]];
        let relabel = [5, 3, 1, 0, 2, 4];
        let moved: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| b.iter().map(|&v| relabel[v]).collect())
            .collect();
        assert_eq!(canonical_form(6, &blocks), canonical_form(6, &moved));
        let other = vec![vec![0, 1, 2], vec![2, 3, 4], vec![1, 3, 5]];
        // both are three triple points pairwise sharing a line, so these agree too
        assert_eq!(canonical_form(6, &blocks), canonical_form(6, &other));
        let chain = vec![vec![0, 1, 2], vec![2, 3, 4], vec![3, 5, 0]];
        let star = vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]];
        assert_ne!(canonical_form(7, &chain), canonical_form(7, &star));
    }
}
