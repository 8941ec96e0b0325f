//! Finite loopless matroids on `{0, ..., N}` with a rank table memoized over all subsets.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{bits, Monomial};
use crate::lattice::HnfBuilder;

/// Ground sets are stored as bitmasks and the rank table has `2^ground_size` entries.
pub const MAX_GROUND_SIZE: usize = 20;

/// Circuit elimination is checked exhaustively up to this ground size unless overridden.
pub const DEFAULT_VALIDATION_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Circuits,
    Graph,
    Matrix,
    Builtin,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Source::Circuits => "circuits",
            Source::Graph => "graph",
            Source::Matrix => "matrix",
            Source::Builtin => "builtin",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flat {
    pub elements: Vec<usize>,
    pub rank: usize,
}

impl Flat {
    pub fn mask(&self) -> u64 {
        Monomial::from_indices(&self.elements).0
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// A strictly increasing chain of nonempty flats `J_1 ⊂ ... ⊂ J_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FlagOfFlats {
    pub chain: Vec<Flat>,
    pub proper: bool,
}

impl FlagOfFlats {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn is_consecutive(&self) -> bool {
        self.chain.iter().enumerate().all(|(i, j)| j.rank == i + 1)
    }
}

#[derive(Clone, Debug)]
pub struct Matroid {
    ground_size: usize,
    ranks: Vec<u8>,
    circuits: Vec<Vec<usize>>,
    flats: Vec<u64>,
    source: Source,
    validated: bool,
}

/// Two matroids are equal when they have the same ground set and rank function.
impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground_size == other.ground_size && self.ranks == other.ranks
    }
}

impl Eq for Matroid {}

fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

fn check_ground_size(ground_size: usize) -> Result<()> {
    if ground_size == 0 || ground_size > MAX_GROUND_SIZE {
        return Err(Error::InvalidInput(format!(
            "ground_size must be in 1..={MAX_GROUND_SIZE}, got {ground_size}"
        )));
    }
    Ok(())
}

fn sorted_subset(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// Sorts masks by the lexicographic order of their sorted elements.
fn sort_lex(masks: &mut [u64]) {
    masks.sort_by_key(|&m| (m.count_ones(), Monomial(m)));
}

impl Matroid {
    pub fn from_circuits(ground_size: usize, circuits: &[Vec<usize>]) -> Result<Self> {
        Self::from_circuits_with_bound(ground_size, circuits, DEFAULT_VALIDATION_BOUND)
    }

    /// Like [`Matroid::from_circuits`], checking circuit elimination only when
    /// `ground_size <= validation_bound`.
    pub fn from_circuits_with_bound(
        ground_size: usize,
        circuits: &[Vec<usize>],
        validation_bound: usize,
    ) -> Result<Self> {
        check_ground_size(ground_size)?;
        let mut masks = Vec::with_capacity(circuits.len());
        for c in circuits {
            if c.is_empty() {
                return Err(Error::InvalidInput("empty circuit".into()));
            }
            if let Some(&e) = c.iter().find(|&&e| e >= ground_size) {
                return Err(Error::InvalidInput(format!(
                    "circuit {c:?} mentions element {e} outside 0..{ground_size}"
                )));
            }
            if c.len() == 1 {
                return Err(Error::LoopDetected { element: c[0] });
            }
            let mask = Monomial::from_indices(c).0;
            if mask.count_ones() as usize != c.len() {
                return Err(Error::InvalidInput(format!(
                    "circuit {c:?} repeats an element"
                )));
            }
            masks.push(mask);
        }
        sort_lex(&mut masks);
        masks.dedup();

        for (i, &a) in masks.iter().enumerate() {
            for &b in &masks[i + 1..] {
                if a & b == a || a & b == b {
                    return Err(Error::CircuitAxiomViolation {
                        axiom: "incomparability",
                        first: sorted_subset(a),
                        second: sorted_subset(b),
                    });
                }
            }
        }

        let size = 1usize << ground_size;
        let mut dependent = vec![false; size];
        for &c in &masks {
            dependent[c as usize] = true;
        }
        for s in 1..size {
            if !dependent[s] {
                dependent[s] = bits(s as u64).any(|e| dependent[s & !(1 << e)]);
            }
        }

        let validated = ground_size <= validation_bound;
        if validated {
            for (i, &a) in masks.iter().enumerate() {
                for &b in &masks[i + 1..] {
                    for e in bits(a & b) {
                        if !dependent[((a | b) & !(1 << e)) as usize] {
                            return Err(Error::CircuitAxiomViolation {
                                axiom: "elimination",
                                first: sorted_subset(a),
                                second: sorted_subset(b),
                            });
                        }
                    }
                }
            }
        }

        let mut ranks = vec![0u8; size];
        for s in 1..size {
            ranks[s] = if dependent[s] {
                bits(s as u64)
                    .map(|e| ranks[s & !(1 << e)])
                    .max()
                    .unwrap_or(0)
            } else {
                (s as u64).count_ones() as u8
            };
        }
        let mut m = Self::from_rank_table(ground_size, ranks, Source::Circuits)?;
        m.validated = validated;
        Ok(m)
    }

    /// Graphic matroid; edge `i` is element `i`.
    pub fn from_graph(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_ground_size(edges.len())?;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidInput(format!(
                    "edge {i} = ({u}, {v}) has a vertex outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::LoopDetected { element: i });
            }
        }
        let n = edges.len();
        let mut ranks = vec![0u8; 1 << n];
        let mut parent = vec![0usize; vertex_count];
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (s, rank) in ranks.iter_mut().enumerate() {
            parent.iter_mut().enumerate().for_each(|(i, p)| *p = i);
            let mut r = 0;
            for e in bits(s as u64) {
                let (a, b) = (find(&mut parent, edges[e].0), find(&mut parent, edges[e].1));
                if a != b {
                    parent[a] = b;
                    r += 1;
                }
            }
            *rank = r;
        }
        Self::from_rank_table(n, ranks, Source::Graph)
    }

    /// Linear matroid of the columns of an integer matrix, with ranks taken over the rationals.
    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidInput(
                "matrix rows have different lengths".into(),
            ));
        }
        check_ground_size(ncols)?;
        let columns: Vec<Vec<BigInt>> = (0..ncols)
            .map(|j| rows.iter().map(|r| BigInt::from(r[j])).collect())
            .collect();
        let mut ranks = vec![0u8; 1 << ncols];
        for (s, rank) in ranks.iter_mut().enumerate().skip(1) {
            let mut h = HnfBuilder::new(rows.len());
            for e in bits(s as u64) {
                h.insert(columns[e].clone());
            }
            *rank = h.rank() as u8;
        }
        Self::from_rank_table(ncols, ranks, Source::Matrix)
    }

    fn from_rank_table(ground_size: usize, ranks: Vec<u8>, source: Source) -> Result<Self> {
        if let Some(e) = (0..ground_size).find(|&e| ranks[1 << e] == 0) {
            return Err(Error::LoopDetected { element: e });
        }
        let mut circuits = Vec::new();
        let mut flats = Vec::new();
        let full = full_mask(ground_size);
        for s in 0..(1u64 << ground_size) {
            let r = ranks[s as usize];
            let size = s.count_ones() as u8;
            if size > 0 && r + 1 == size && bits(s).all(|e| ranks[(s & !(1 << e)) as usize] == r) {
                circuits.push(s);
            }
            if bits(full & !s).all(|e| ranks[(s | 1 << e) as usize] > r) {
                flats.push(s);
            }
        }
        sort_lex(&mut circuits);
        flats.sort_by_key(|&m| (ranks[m as usize], Monomial(m)));
        Ok(Matroid {
            ground_size,
            ranks,
            circuits: circuits.into_iter().map(sorted_subset).collect(),
            flats,
            source,
            validated: true,
        })
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn ground_mask(&self) -> u64 {
        full_mask(self.ground_size)
    }

    pub fn source(&self) -> Source {
        self.source
    }

    /// Whether the circuit axioms were checked at construction.
    pub fn validated(&self) -> bool {
        self.validated
    }

    /// Rank of the whole matroid.
    pub fn rank(&self) -> usize {
        self.rank_mask(self.ground_mask())
    }

    pub fn rank_mask(&self, mask: u64) -> usize {
        self.ranks[mask as usize] as usize
    }

    pub fn rank_of(&self, subset: &[usize]) -> usize {
        self.rank_mask(self.mask_of(subset))
    }

    fn mask_of(&self, subset: &[usize]) -> u64 {
        assert!(
            subset.iter().all(|&e| e < self.ground_size),
            "subset {subset:?} outside the ground set"
        );
        Monomial::from_indices(subset).0
    }

    pub fn is_dependent_mask(&self, mask: u64) -> bool {
        self.rank_mask(mask) < mask.count_ones() as usize
    }

    pub fn closure_mask(&self, mask: u64) -> u64 {
        let r = self.rank_mask(mask);
        bits(self.ground_mask() & !mask)
            .filter(|&e| self.rank_mask(mask | 1 << e) == r)
            .fold(mask, |acc, e| acc | 1 << e)
    }

    pub fn closure(&self, subset: &[usize]) -> Flat {
        let mask = self.closure_mask(self.mask_of(subset));
        self.flat_of_mask(mask)
    }

    pub fn is_flat_mask(&self, mask: u64) -> bool {
        mask & !self.ground_mask() == 0 && self.closure_mask(mask) == mask
    }

    pub fn flat_of_mask(&self, mask: u64) -> Flat {
        Flat {
            elements: sorted_subset(mask),
            rank: self.rank_mask(mask),
        }
    }

    /// Flats of rank exactly `k`, in lexicographic order.
    pub fn flats(&self, k: usize) -> Vec<Flat> {
        self.flats
            .iter()
            .filter(|&&m| self.rank_mask(m) == k)
            .map(|&m| self.flat_of_mask(m))
            .collect()
    }

    /// Every flat, ordered by rank and then lexicographically.
    pub fn all_flats(&self) -> Vec<Flat> {
        self.flats.iter().map(|&m| self.flat_of_mask(m)).collect()
    }

    /// Length-`k` chains of nonempty flats (without the full ground set when `proper`);
    /// with `consecutive`, only chains with `rank(J_i) = i`.
    pub fn flags(&self, k: usize, proper: bool, consecutive: bool) -> Vec<FlagOfFlats> {
        let full = self.ground_mask();
        let candidates: Vec<u64> = self
            .flats
            .iter()
            .copied()
            .filter(|&m| m != 0 && !(proper && m == full))
            .collect();
        let mut out = Vec::new();
        let mut chain: Vec<u64> = Vec::with_capacity(k);
        self.extend_flags(&candidates, k, consecutive, &mut chain, &mut out);
        out.into_iter()
            .map(|c| FlagOfFlats {
                chain: c.into_iter().map(|m| self.flat_of_mask(m)).collect(),
                proper,
            })
            .collect()
    }

    fn extend_flags(
        &self,
        candidates: &[u64],
        k: usize,
        consecutive: bool,
        chain: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if chain.len() == k {
            out.push(chain.clone());
            return;
        }
        let depth = chain.len();
        for &m in candidates {
            if let Some(&last) = chain.last() {
                if m & last != last || m == last {
                    continue;
                }
            }
            if consecutive && self.rank_mask(m) != depth + 1 {
                continue;
            }
            chain.push(m);
            self.extend_flags(candidates, k, consecutive, chain, out);
            chain.pop();
        }
    }

    /// Minimal dependent sets, in lexicographic order.
    pub fn circuits(&self) -> &[Vec<usize>] {
        &self.circuits
    }

    /// Dependent subsets of the given size, in increasing bitmask order.
    pub fn dependent_sets(&self, size: usize) -> Vec<u64> {
        (0..=self.ground_mask())
            .filter(|&s| s.count_ones() as usize == size && self.is_dependent_mask(s))
            .collect()
    }

    /// Whether the restriction to `mask` is connected: no nonempty proper `A` with
    /// `r(A) + r(mask \ A) = r(mask)`.
    pub fn is_connected_mask(&self, mask: u64) -> bool {
        if mask == 0 {
            return false;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let total = self.rank_mask(mask);
        let mut sub = rest;
        loop {
            let a = sub | low;
            if a != mask && self.rank_mask(a) + self.rank_mask(mask & !a) == total {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & rest;
        }
    }

    pub fn is_simple(&self) -> bool {
        self.circuits.iter().all(|c| c.len() > 2)
    }
}
