//! Canonical forms of finite relations up to isomorphism.
//!
//! Vertices are split into an ordered partition refined to equitability
//! (every vertex in a cell sees the same number of successors and
//! predecessors in every cell). Non-singleton cells are broken by
//! individualizing each candidate in turn; each discrete leaf gives a
//! relabeling, and the lexicographically least encoded relation wins.
//! Automorphisms found at equal leaves prune candidates lying in an already
//! explored orbit.

use crate::lattice::FiniteLattice;
use crate::set::ElemSet;

/// Canonical encoding plus the relabeling that produced it:
/// `labeling[v]` is the canonical position of vertex `v`.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub bytes: Vec<u8>,
    pub labeling: Vec<usize>,
}

/// Canonical byte sequence of a lattice: equal iff order-isomorphic.
pub fn canonical_form(lattice: &FiniteLattice) -> Vec<u8> {
    canonical_relation(&lattice_rows(lattice)).bytes
}

/// Hex rendering of [`canonical_form`], used as a stable lattice key.
pub fn canonical_hex(lattice: &FiniteLattice) -> String {
    canonical_form(lattice)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// `rows[i]` = strict successors of `i` in the order.
fn lattice_rows(lattice: &FiniteLattice) -> Vec<ElemSet> {
    (0..lattice.n()).map(|x| lattice.up(x).without(x)).collect()
}

/// Canonical form of a binary relation given as successor rows.
pub fn canonical_relation(rows: &[ElemSet]) -> Canonical {
    let n = rows.len();
    let mut preds = vec![ElemSet::EMPTY; n];
    for (i, row) in rows.iter().enumerate() {
        for j in row.iter() {
            preds[j].insert(i);
        }
    }
    let mut search = Search {
        succ: rows,
        pred: &preds,
        best: None,
        automorphisms: Vec::new(),
    };
    let mut root = vec![(0..n).collect::<Vec<usize>>()];
    if n == 0 {
        root.clear();
    }
    search.refine(&mut root);
    search.descend(root, &mut Vec::new());
    let (bytes, labeling) = search.best.unwrap_or_else(|| (encode(rows, &[]), Vec::new()));
    Canonical { bytes, labeling }
}

fn encode(rows: &[ElemSet], labeling: &[usize]) -> Vec<u8> {
    let n = rows.len();
    let mut relabeled = vec![0u64; n];
    for (v, row) in rows.iter().enumerate() {
        let mut bits = 0u64;
        for w in row.iter() {
            bits |= 1u64 << labeling[w];
        }
        relabeled[labeling[v]] = bits;
    }
    let mut out = Vec::with_capacity(1 + 8 * n);
    out.push(n as u8);
    for bits in relabeled {
        out.extend_from_slice(&bits.to_be_bytes());
    }
    out
}

struct Search<'a> {
    succ: &'a [ElemSet],
    pred: &'a [ElemSet],
    best: Option<(Vec<u8>, Vec<usize>)>,
    /// Automorphisms as vertex maps.
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Refines an ordered partition until equitable. Splits are ordered by
    /// the neighbour-count signature, which depends only on structure.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        loop {
            let masks: Vec<ElemSet> = cells.iter().map(|c| c.iter().copied().collect()).collect();
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(u8, u8)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let sig = masks
                            .iter()
                            .map(|m| {
                                (
                                    (self.succ[v] & *m).len() as u8,
                                    (self.pred[v] & *m).len() as u8,
                                )
                            })
                            .collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            // Cells only ever split, so a stable count means a stable partition.
            let changed = next.len() != cells.len();
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>, fixed: &mut Vec<usize>) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let candidates = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() && self.same_orbit(v, &explored, fixed) {
                continue;
            }
            explored.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&w| w != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            self.refine(&mut child);
            fixed.push(v);
            self.descend(child, fixed);
            fixed.pop();
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.succ.len();
        let mut labeling = vec![0usize; n];
        for (pos, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = pos;
        }
        let bytes = encode(self.succ, &labeling);
        match &self.best {
            None => self.best = Some((bytes, labeling)),
            Some((best_bytes, best_labeling)) => {
                if bytes < *best_bytes {
                    self.best = Some((bytes, labeling));
                } else if bytes == *best_bytes {
                    // best^-1 . this maps vertices to vertices preserving the relation.
                    let mut inverse = vec![0usize; n];
                    for (v, &p) in best_labeling.iter().enumerate() {
                        inverse[p] = v;
                    }
                    let gamma: Vec<usize> = labeling.iter().map(|&p| inverse[p]).collect();
                    if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                        self.automorphisms.push(gamma);
                    }
                }
            }
        }
    }

    /// Whether `v` shares an orbit with an explored candidate under the
    /// automorphisms that fix every individualized vertex.
    fn same_orbit(&self, v: usize, explored: &[usize], fixed: &[usize]) -> bool {
        let n = self.succ.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if fixed.iter().all(|&f| gamma[f] == f) {
                for (i, &g) in gamma.iter().enumerate() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, g));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }
}
