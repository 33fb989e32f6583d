use super::matrix::F2Matrix;
use super::vector::F2Vec;
use crate::error::{input, internal, Result};

const NO_PIVOT: u32 = u32::MAX;

/// Incrementally built echelon basis. Every stored row has a distinct lowest
/// set bit (its pivot) and is zero at the pivots of earlier rows. Rows may
/// carry a tag vector that records which inserted vectors they combine.
///
/// The set of pivot columns depends only on the spanned subspace, so the
/// non-pivot columns give a canonical complement.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    tag_len: usize,
    rows: Vec<F2Vec>,
    tags: Vec<F2Vec>,
    pivot_row: Vec<u32>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ambient: usize, tag_len: usize) -> Self {
        Echelon {
            ambient,
            tag_len,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_row: vec![NO_PIVOT; ambient],
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_PIVOT
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the stored rows, returning the residual (zero at
    /// every pivot column) and the accumulated tag.
    pub fn reduce_tagged(&self, v: &F2Vec) -> (F2Vec, F2Vec) {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut v = v.clone();
        let mut tag = F2Vec::zeros(self.tag_len);
        let mut from = 0;
        while let Some(c) = v.next_one(from) {
            let r = self.pivot_row[c];
            if r != NO_PIVOT {
                v.add_assign(&self.rows[r as usize]);
                if self.tag_len > 0 {
                    tag.add_assign(&self.tags[r as usize]);
                }
            }
            from = c + 1;
        }
        (v, tag)
    }

    pub fn reduce(&self, v: &F2Vec) -> F2Vec {
        let mut v = v.clone();
        let mut from = 0;
        while let Some(c) = v.next_one(from) {
            let r = self.pivot_row[c];
            if r != NO_PIVOT {
                v.add_assign(&self.rows[r as usize]);
            }
            from = c + 1;
        }
        v
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns the residual tag when `v` was already in the span
    /// (a dependency), or `None` when it extended the basis.
    pub fn insert_tagged(&mut self, v: &F2Vec, tag: F2Vec) -> Option<F2Vec> {
        assert_eq!(tag.len(), self.tag_len, "tag length mismatch");
        let (res, acc) = self.reduce_tagged(v);
        let tag = tag.add(&acc);
        match res.first_one() {
            None => Some(tag),
            Some(p) => {
                self.pivot_row[p] = self.rows.len() as u32;
                self.pivots.push(p);
                self.rows.push(res);
                self.tags.push(tag);
                None
            }
        }
    }

    /// Inserts `v`; returns true when the rank grew.
    pub fn insert(&mut self, v: &F2Vec) -> bool {
        let res = self.reduce(v);
        match res.first_one() {
            None => false,
            Some(p) => {
                self.pivot_row[p] = self.rows.len() as u32;
                self.pivots.push(p);
                self.rows.push(res);
                if self.tag_len > 0 {
                    self.tags.push(F2Vec::zeros(self.tag_len));
                }
                true
            }
        }
    }

    /// Fully reduced row-echelon form with increasing pivots.
    pub fn to_subspace(&self) -> SubspaceBasis {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<F2Vec> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                if row.get(pivots[i]) {
                    row.add_assign(pivot_row);
                }
            }
        }
        SubspaceBasis {
            ambient: self.ambient,
            vectors: rows,
            pivots,
        }
    }
}

/// A subspace of F₂^ambient given by a basis in reduced row-echelon form with
/// strictly increasing pivot columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<F2Vec>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            vectors: (0..ambient).map(|i| F2Vec::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a F2Vec>) -> Self {
        let mut e = Echelon::new(ambient, 0);
        for v in vectors {
            e.insert(v);
        }
        e.to_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[F2Vec] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` modulo the subspace, zero at every pivot column.
    pub fn reduce(&self, v: &F2Vec) -> F2Vec {
        let mut v = v.clone();
        for (row, &p) in self.vectors.iter().zip(&self.pivots) {
            if v.get(p) {
                v.add_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        SubspaceBasis::span(self.ambient, self.vectors.iter().chain(&other.vectors))
    }

    /// Checks the echelon invariant: independent rows, increasing pivots,
    /// fully reduced.
    pub fn is_valid(&self) -> bool {
        if self.vectors.len() != self.pivots.len() {
            return false;
        }
        if self.pivots.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for (i, (row, &p)) in self.vectors.iter().zip(&self.pivots).enumerate() {
            if row.len() != self.ambient || row.first_one() != Some(p) {
                return false;
            }
            for (j, other) in self.vectors.iter().enumerate() {
                if i != j && other.get(p) {
                    return false;
                }
            }
        }
        true
    }
}

/// Rank, kernel and image (column space) of `m`.
pub fn rank_kernel_image(m: &F2Matrix) -> (usize, SubspaceBasis, SubspaceBasis) {
    let ncols = m.ncols();
    let mut e = Echelon::new(m.nrows(), ncols);
    let mut kernel = Vec::new();
    for (j, col) in m.columns().iter().enumerate() {
        if let Some(dep) = e.insert_tagged(col, F2Vec::unit(ncols, j)) {
            kernel.push(dep);
        }
    }
    let kernel = SubspaceBasis::span(ncols, kernel.iter());
    (e.rank(), kernel, e.to_subspace())
}

pub fn rank(m: &F2Matrix) -> usize {
    let mut e = Echelon::new(m.ncols(), 0);
    for row in m.rows() {
        e.insert(row);
    }
    e.rank()
}

/// Precomputed solver for `m·x = target` with a fixed matrix.
///
/// Columns are echelonized in index order; the returned particular solution
/// uses only the lowest-index independent columns (free variables are zero).
#[derive(Clone, Debug)]
pub struct LinearSolver {
    nrows: usize,
    echelon: Echelon,
}

impl LinearSolver {
    pub fn new(m: &F2Matrix) -> Self {
        let ncols = m.ncols();
        let mut echelon = Echelon::new(m.nrows(), ncols);
        for (j, col) in m.columns().iter().enumerate() {
            echelon.insert_tagged(col, F2Vec::unit(ncols, j));
        }
        LinearSolver {
            nrows: m.nrows(),
            echelon,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn solve(&self, target: &F2Vec) -> Result<Option<F2Vec>> {
        if target.len() != self.nrows {
            return Err(input(format!(
                "target length {} does not match {} rows",
                target.len(),
                self.nrows
            )));
        }
        let (res, tag) = self.echelon.reduce_tagged(target);
        Ok(res.is_zero().then_some(tag))
    }
}

pub fn solve(m: &F2Matrix, target: &F2Vec) -> Result<Option<F2Vec>> {
    LinearSolver::new(m).solve(target)
}

/// Coordinates on cycles/boundaries: a fixed complement of the boundaries
/// inside the cycles, chosen among the cycle basis vectors in order.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    cycles: SubspaceBasis,
    boundaries: SubspaceBasis,
    representatives: Vec<F2Vec>,
    echelon: Echelon,
}

impl QuotientMap {
    pub fn new(cycles: SubspaceBasis, boundaries: SubspaceBasis) -> Result<Self> {
        if cycles.ambient_dim() != boundaries.ambient_dim() {
            return Err(input("cycle and boundary spaces live in different ambients"));
        }
        if !cycles.contains_subspace(&boundaries) {
            return Err(internal("boundaries are not contained in cycles"));
        }
        let mut probe = Echelon::new(cycles.ambient_dim(), 0);
        for b in boundaries.vectors() {
            probe.insert(b);
        }
        let representatives: Vec<F2Vec> = cycles
            .vectors()
            .iter()
            .filter(|z| probe.insert(z))
            .cloned()
            .collect();
        let k = representatives.len();
        let mut echelon = Echelon::new(cycles.ambient_dim(), k);
        for b in boundaries.vectors() {
            echelon.insert_tagged(b, F2Vec::zeros(k));
        }
        for (i, z) in representatives.iter().enumerate() {
            echelon.insert_tagged(z, F2Vec::unit(k, i));
        }
        Ok(QuotientMap {
            cycles,
            boundaries,
            representatives,
            echelon,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.cycles.ambient_dim()
    }

    pub fn cycles(&self) -> &SubspaceBasis {
        &self.cycles
    }

    pub fn boundaries(&self) -> &SubspaceBasis {
        &self.boundaries
    }

    /// Cycle representatives of the complement basis.
    pub fn representatives(&self) -> &[F2Vec] {
        &self.representatives
    }

    /// Class coordinates of the cycle `v`.
    pub fn coordinates(&self, v: &F2Vec) -> Result<F2Vec> {
        if v.len() != self.ambient_dim() {
            return Err(input("vector length does not match the ambient space"));
        }
        let (res, tag) = self.echelon.reduce_tagged(v);
        if !res.is_zero() {
            return Err(input("vector is not a cycle"));
        }
        Ok(tag)
    }

    /// A cycle representing the class with the given coordinates.
    pub fn representative(&self, coords: &F2Vec) -> F2Vec {
        let mut v = F2Vec::zeros(self.ambient_dim());
        for i in coords.ones() {
            v.add_assign(&self.representatives[i]);
        }
        v
    }
}

pub fn quotient_coordinates(
    cycles: &SubspaceBasis,
    boundaries: &SubspaceBasis,
    v: &F2Vec,
) -> Result<F2Vec> {
    QuotientMap::new(cycles.clone(), boundaries.clone())?.coordinates(v)
}
