//! Canonical labeling of hypergraphs by individualization and refinement.
//!
//! Vertices are coloured by valence, colours are refined by the multiset of
//! colours seen through incident hyperedges, and ties are broken by
//! individualizing each vertex of the first non-trivial cell in turn. The
//! search tree is explored completely; the certificate is the smallest
//! relabeled edge list over its leaves, and the number of leaves attaining
//! it is the order of the automorphism group.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// Relabeled hyperedges, each sorted, the list sorted.
    pub edges: Vec<Vec<usize>>,
    pub n: usize,
    /// `labeling[old] = new` for one leaf attaining the certificate.
    #[serde(skip)]
    pub labeling: Vec<usize>,
    pub automorphisms: u64,
}

struct Search<'a> {
    edges: &'a [Vec<usize>],
    incident: Vec<Vec<usize>>,
    active: Vec<usize>,
    best: Option<(Vec<Vec<usize>>, Vec<usize>)>,
    count: u64,
}

fn rank_by<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

impl Search<'_> {
    /// Refines colours (indexed by position in `active`) to equitability.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let pos: std::collections::HashMap<usize, usize> = self
            .active
            .iter()
            .enumerate()
            .map(|(p, &v)| (v, p))
            .collect();
        loop {
            let edge_sig: Vec<Vec<usize>> = self
                .edges
                .iter()
                .map(|e| {
                    let mut s: Vec<usize> = e.iter().map(|v| colors[pos[v]]).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            let keys: Vec<(usize, Vec<Vec<usize>>)> = self
                .active
                .iter()
                .enumerate()
                .map(|(p, &v)| {
                    let mut s: Vec<Vec<usize>> = self.incident[v]
                        .iter()
                        .map(|&j| edge_sig[j].clone())
                        .collect();
                    s.sort();
                    (colors[p], s)
                })
                .collect();
            let new = rank_by(&keys);
            let before = colors.iter().max().map_or(0, |m| m + 1);
            let after = new.iter().max().map_or(0, |m| m + 1);
            colors = new;
            if after == before {
                return colors;
            }
        }
    }

    fn visit(&mut self, colors: Vec<usize>) {
        let colors = self.refine(colors);
        let k = self.active.len();
        let mut cell_sizes = vec![0usize; k];
        for &c in &colors {
            cell_sizes[c] += 1;
        }
        let target = (0..k).find(|&c| cell_sizes[c] > 1);
        match target {
            None => self.leaf(&colors),
            Some(c) => {
                let members: Vec<usize> = (0..k).filter(|&p| colors[p] == c).collect();
                for &p in &members {
                    // the individualized vertex sorts before the rest of its cell
                    let keys: Vec<(usize, usize)> = colors
                        .iter()
                        .enumerate()
                        .map(|(q, &col)| (col, usize::from(col == c && q != p)))
                        .collect();
                    self.visit(rank_by(&keys));
                }
            }
        }
    }

    fn leaf(&mut self, colors: &[usize]) {
        let mut label = std::collections::HashMap::new();
        for (p, &v) in self.active.iter().enumerate() {
            label.insert(v, colors[p] + 1);
        }
        let mut cert: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| {
                let mut s: Vec<usize> = e.iter().map(|v| label[v]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        cert.sort();
        match &self.best {
            Some((b, _)) if *b < cert => {}
            Some((b, _)) if *b == cert => self.count += 1,
            _ => {
                let lab: Vec<usize> = self.active.iter().map(|v| label[v]).collect();
                self.best = Some((cert, lab));
                self.count = 1;
            }
        }
    }
}

/// Canonical form of a hypergraph on {1..n}. Isolated vertices receive the
/// largest labels and contribute k! automorphisms.
pub fn canonical_form(n: usize, edges: &[Vec<usize>]) -> CanonicalForm {
    let mut incident = vec![Vec::new(); n + 1];
    for (j, e) in edges.iter().enumerate() {
        for &v in e {
            incident[v].push(j);
        }
    }
    let active: Vec<usize> = (1..=n).filter(|&v| !incident[v].is_empty()).collect();
    let isolated: Vec<usize> = (1..=n).filter(|&v| incident[v].is_empty()).collect();
    let initial = rank_by(
        &active
            .iter()
            .map(|&v| incident[v].len())
            .collect::<Vec<_>>(),
    );
    let mut s = Search {
        edges,
        incident,
        active: active.clone(),
        best: None,
        count: 0,
    };
    if active.is_empty() {
        s.best = Some((edges.to_vec(), vec![]));
        s.count = 1;
    } else {
        s.visit(initial);
    }
    let (cert, lab) = s.best.unwrap();
    let mut labeling = vec![0; n + 1];
    for (p, &v) in active.iter().enumerate() {
        labeling[v] = lab[p];
    }
    for (k, &v) in isolated.iter().enumerate() {
        labeling[v] = active.len() + k + 1;
    }
    let fact: u64 = (1..=isolated.len() as u64).product();
    CanonicalForm {
        edges: cert,
        n,
        labeling,
        automorphisms: s.count * fact,
    }
}
