//! GF(2) linear algebra over edge-indexed bit vectors, plus the two edge-set
//! spaces the decision procedure cares about: the cycle space and the span of
//! the 1-factor differences.

use crate::error::Result;
use crate::graph::{EdgeSet, Graph};
use crate::limits::Limits;
use crate::matchings;

/// Fixed-width bit vector over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zero(len: usize) -> Bits {
        Bits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_indices(len: usize, idx: &[usize]) -> Bits {
        let mut b = Bits::zero(len);
        for &i in idx {
            b.set(i, true);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the intersection with another vector.
    pub fn dot(&self, other: &Bits) -> u8 {
        assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        (ones % 2) as u8
    }
}

/// Incremental Gaussian elimination over GF(2) with row history. Each added
/// row is reduced against the pivots found so far; the history records which
/// original rows were combined, so an inconsistent row can name the exact
/// subset of inputs that contradict each other.
pub struct LinearSystem {
    width: usize,
    /// (pivot column, reduced row, rhs, history over original row indices)
    pivots: Vec<(usize, Bits, u8, Bits)>,
    rows_added: usize,
    capacity: usize,
}

/// Outcome of adding one row to a `LinearSystem`.
pub enum AddOutcome {
    /// The row became a new pivot.
    Independent,
    /// The row reduced to 0 = 0; `history` lists the original rows (by
    /// insertion index, including this one) that sum to zero.
    Dependent { history: Bits },
    /// The row reduced to 0 = 1; `history` lists the original rows whose sum
    /// is the contradiction.
    Inconsistent { history: Bits },
}

impl LinearSystem {
    /// `capacity` is the number of rows that will ever be added (needed to
    /// size the history vectors).
    pub fn new(width: usize, capacity: usize) -> LinearSystem {
        LinearSystem {
            width,
            pivots: Vec::new(),
            rows_added: 0,
            capacity,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn add_row(&mut self, mut bits: Bits, mut rhs: u8) -> AddOutcome {
        assert_eq!(bits.len(), self.width);
        assert!(self.rows_added < self.capacity, "row capacity exceeded");
        let mut history = Bits::zero(self.capacity);
        history.set(self.rows_added, true);
        self.rows_added += 1;
        for (col, row, r, h) in &self.pivots {
            if bits.get(*col) {
                bits.xor_assign(row);
                rhs ^= r;
                history.xor_assign(h);
            }
        }
        match bits.first_one() {
            Some(col) => {
                self.pivots.push((col, bits, rhs, history));
                AddOutcome::Independent
            }
            None if rhs == 0 => AddOutcome::Dependent { history },
            None => AddOutcome::Inconsistent { history },
        }
    }

    /// Any solution of the system added so far (free variables set to 0).
    /// Only meaningful if no inconsistent row was encountered.
    pub fn solve(&self) -> Bits {
        let mut x = Bits::zero(self.width);
        // Rows were only reduced against earlier pivots, so a pivot row may
        // still involve pivot columns introduced later. Substituting in
        // reverse insertion order resolves those first.
        for (col, row, rhs, _) in self.pivots.iter().rev() {
            let mut val = *rhs;
            for j in row.ones() {
                if j != *col && x.get(j) {
                    val ^= 1;
                }
            }
            x.set(*col, val == 1);
        }
        x
    }
}

/// Indicator vector of an edge set in the graph's edge order.
pub fn edge_indicator(g: &Graph, edges: &EdgeSet) -> Bits {
    let mut b = Bits::zero(g.edge_count());
    for e in edges {
        let i = g
            .edge_index(*e)
            .unwrap_or_else(|| panic!("edge {} not in graph", e));
        b.set(i, true);
    }
    b
}

pub fn indices_to_edges(g: &Graph, bits: &Bits) -> EdgeSet {
    bits.ones().iter().map(|&i| g.edges()[i]).collect()
}

/// Dimension of the cycle space: |E| - |V| + (number of components).
pub fn cycle_space_dim(g: &Graph) -> usize {
    g.edge_count() + g.components().len() - g.vertex_count()
}

/// Dimension of the span of `{χ(f Δ f')}` over pairs of 1-factors. Since
/// `χ(f1 Δ f2) = χ(f1 Δ f) + χ(f Δ f2)`, spanning against one fixed factor
/// is enough.
pub fn alternating_space_dimension(g: &Graph, limits: &Limits) -> Result<usize> {
    let factors = matchings::perfect_matchings(g, limits)?;
    if factors.len() < 2 {
        return Ok(0);
    }
    let f = &factors[0];
    let mut sys = LinearSystem::new(g.edge_count(), factors.len() - 1);
    for other in &factors[1..] {
        let diff: EdgeSet = f.symmetric_difference(other).cloned().collect();
        sys.add_row(edge_indicator(g, &diff), 0);
    }
    Ok(sys.rank())
}

/// Basis of the span of 1-factor differences, as edge sets.
pub fn alternating_space_basis(g: &Graph, limits: &Limits) -> Result<Vec<EdgeSet>> {
    let factors = matchings::perfect_matchings(g, limits)?;
    if factors.len() < 2 {
        return Ok(Vec::new());
    }
    let f = &factors[0];
    let mut sys = LinearSystem::new(g.edge_count(), factors.len() - 1);
    let mut basis = Vec::new();
    for other in &factors[1..] {
        let diff: EdgeSet = f.symmetric_difference(other).cloned().collect();
        if matches!(
            sys.add_row(edge_indicator(g, &diff), 0),
            AddOutcome::Independent
        ) {
            basis.push(diff);
        }
    }
    Ok(basis)
}
