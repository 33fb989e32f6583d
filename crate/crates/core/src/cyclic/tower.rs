use crate::error::{input, Result};
use crate::f2linalg::{F2Matrix, F2Vec};
use crate::gralg::{Algebra, Monomial, Weight, WeightGrading};
use crate::hochschild::{tower_boundary, BarWord, Theory, UChain};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Column bounds `α ≤ p ≤ β` of a tower; `None` stands for `∓∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Bounds {
    pub lo: Option<i32>,
    pub hi: Option<i32>,
}

impl Bounds {
    pub const HH: Bounds = Bounds { lo: Some(0), hi: Some(0) };
    pub const PLUS: Bounds = Bounds { lo: Some(0), hi: None };
    pub const MINUS: Bounds = Bounds { lo: None, hi: Some(0) };
    pub const PER: Bounds = Bounds { lo: None, hi: None };

    pub fn new(lo: Option<i32>, hi: Option<i32>) -> Self {
        Bounds { lo, hi }
    }

    /// The [`Theory`] tag of chains living in this tower (column `p` holds
    /// `u^{-p}`).
    pub fn chain_theory(&self) -> Theory {
        if self.hi.is_some_and(|h| h <= 0) {
            Theory::Minus
        } else if self.lo.is_some_and(|l| l >= 0) {
            Theory::Plus
        } else {
            Theory::Per
        }
    }
}

/// The four homology theories.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum HomologyTheory {
    Hh,
    Hc,
    HcMinus,
    HcPer,
}

impl HomologyTheory {
    pub fn bounds(self) -> Bounds {
        match self {
            HomologyTheory::Hh => Bounds::HH,
            HomologyTheory::Hc => Bounds::PLUS,
            HomologyTheory::HcMinus => Bounds::MINUS,
            HomologyTheory::HcPer => Bounds::PER,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HomologyTheory::Hh => "hh",
            HomologyTheory::Hc => "hc",
            HomologyTheory::HcMinus => "hcminus",
            HomologyTheory::HcPer => "hcper",
        }
    }
}

/// Shared state for tower computations over one algebra: memoized bar
/// bases per (length, weight).
pub struct Towers<'a> {
    alg: &'a Algebra,
    bars: Mutex<HashMap<(usize, Weight), Arc<Vec<Vec<Monomial>>>>>,
}

impl<'a> Towers<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        Towers {
            alg,
            bars: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.alg
    }

    /// Upper bound on the number of bars of total weight `w`; `None` when
    /// the weight grading is trivial.
    pub fn max_bars(&self, w: &Weight) -> Option<usize> {
        match self.alg.grading() {
            WeightGrading::Trivial => None,
            _ => Some(w.0.iter().map(|&x| x as usize).sum()),
        }
    }

    /// Sequences of `len` non-unit standard monomials of total weight `w`.
    pub fn bar_sequences(&self, len: usize, w: &Weight) -> Result<Arc<Vec<Vec<Monomial>>>> {
        let key = (len, w.clone());
        if let Some(v) = self.bars.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        if self.max_bars(w).is_some_and(|m| m < len) {
            // Each bar carries positive weight.
        } else if len == 0 {
            if w.is_zero() {
                out.push(Vec::new());
            }
        } else {
            for f in w.below() {
                let rest_w = w.checked_sub(&f).unwrap();
                let basis = self.alg.basis_of_weight(&f)?;
                let mut firsts = basis.iter().filter(|m| !m.is_one()).peekable();
                if firsts.peek().is_none() {
                    continue;
                }
                let rest = self.bar_sequences(len - 1, &rest_w)?;
                for m in firsts {
                    for r in rest.iter() {
                        let mut s = Vec::with_capacity(len);
                        s.push(m.clone());
                        s.extend_from_slice(r);
                        out.push(s);
                    }
                }
            }
            out.sort();
        }
        let v = Arc::new(out);
        self.bars.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// All normalized bar words of length `len` and weight `w`, sorted.
    pub fn bar_words(&self, len: usize, w: &Weight) -> Result<Vec<BarWord>> {
        let mut out = Vec::new();
        for h in w.below() {
            let heads = self.alg.basis_of_weight(&h)?;
            if heads.is_empty() {
                continue;
            }
            let seqs = self.bar_sequences(len, &w.checked_sub(&h).unwrap())?;
            for head in heads.iter() {
                for s in seqs.iter() {
                    out.push(BarWord {
                        head: head.clone(),
                        bars: s.clone(),
                    });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// The column window `[p_lo, p_hi]` and truncation status of `T_n` in
    /// weight `w`.
    fn window(&self, bounds: Bounds, n: i64, w: &Weight, columns: i32) -> Result<(i64, i64, bool)> {
        let p_hi = bounds.hi.map_or(i64::MAX, |h| h as i64).min(n.div_euclid(2));
        let natural_lo = self.max_bars(w).map(|m| (n - m as i64 + 1).div_euclid(2));
        match bounds.lo {
            Some(lo) => Ok((natural_lo.map_or(lo as i64, |nl| nl.max(lo as i64)), p_hi, false)),
            None => {
                let window_lo = -(columns as i64);
                let p_lo = natural_lo.map_or(window_lo, |nl| nl.max(window_lo));
                // Truncated if some dropped column carries words.
                let mut truncated = false;
                let first_dropped = p_lo - 1;
                let last_checked = natural_lo.unwrap_or(first_dropped);
                let mut p = first_dropped;
                while p >= last_checked && p <= p_hi {
                    if !self.bar_words((n - 2 * p) as usize, w)?.is_empty() {
                        truncated = true;
                        break;
                    }
                    p -= 1;
                }
                Ok((p_lo, p_hi, truncated))
            }
        }
    }

    /// The basis of `T^{α,β}_n` in weight `w`, keeping columns `p ≥ -columns`
    /// when `α = -∞`.
    pub fn tower_basis(&self, bounds: Bounds, n: i64, w: &Weight, columns: i32) -> Result<TowerBasis> {
        let (p_lo, p_hi, truncated) = self.window(bounds, n, w, columns)?;
        let mut words = Vec::new();
        let mut p = p_hi;
        while p >= p_lo {
            let len = n - 2 * p;
            for word in self.bar_words(len as usize, w)? {
                words.push((p as i32, word));
            }
            p -= 1;
        }
        let index = words.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        Ok(TowerBasis {
            bounds,
            n,
            weight: w.clone(),
            columns,
            p_lo,
            p_hi,
            truncated,
            words,
            index,
        })
    }

    /// The slice `T_n → T_{n-1}` with its `B + b` matrix.
    pub fn build_tower(&self, bounds: Bounds, n: i64, w: &Weight, columns: i32) -> Result<TowerSlice> {
        let source = self.tower_basis(bounds, n, w, columns)?;
        let target = self.tower_basis(bounds, n - 1, w, columns)?;
        let mut entries = Vec::new();
        for (j, _) in source.words.iter().enumerate() {
            let d = tower_boundary(self.alg, &source.chain_of_index(j));
            let (v, _) = target.vector_of(&d)?;
            entries.extend(v.ones().map(|i| (i, j)));
        }
        let differential = F2Matrix::from_positions(target.len(), source.len(), entries)?;
        Ok(TowerSlice {
            source,
            target,
            differential,
        })
    }
}

/// An ordered basis of `T^{α,β}_n` in one weight: pairs (column, bar word).
#[derive(Clone, Debug)]
pub struct TowerBasis {
    pub bounds: Bounds,
    pub n: i64,
    pub weight: Weight,
    pub columns: i32,
    pub p_lo: i64,
    pub p_hi: i64,
    /// Whether the window `p ≥ -columns` dropped nonzero columns.
    pub truncated: bool,
    words: Vec<(i32, BarWord)>,
    index: HashMap<(i32, BarWord), usize>,
}

impl TowerBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[(i32, BarWord)] {
        &self.words
    }

    pub fn position(&self, column: i32, w: &BarWord) -> Option<usize> {
        self.index.get(&(column, w.clone())).copied()
    }

    pub fn chain_of_index(&self, j: usize) -> UChain {
        let (p, w) = &self.words[j];
        let mut x = UChain::zero(Theory::Per);
        x.toggle(-p, w.clone());
        x.with_theory(self.bounds.chain_theory())
    }

    pub fn chain_of(&self, v: &F2Vec) -> UChain {
        let mut x = UChain::zero(Theory::Per);
        for j in v.ones() {
            let (p, w) = &self.words[j];
            x.toggle(-p, w.clone());
        }
        x.with_theory(self.bounds.chain_theory())
    }

    /// Coordinates of a chain; words in columns left of the window are
    /// dropped and counted, words in columns right of the window (outside
    /// the quotient) are dropped silently, anything else is an input error.
    pub fn vector_of(&self, x: &UChain) -> Result<(F2Vec, usize)> {
        let mut v = F2Vec::zeros(self.len());
        let mut clipped = 0;
        for (&i, c) in x.entries() {
            let p = -i as i64;
            for w in c.words() {
                if let Some(j) = self.position(-i, w) {
                    v.flip(j);
                } else if p < self.p_lo && self.bounds.lo.is_none() {
                    clipped += 1;
                } else if self.bounds.lo.is_some_and(|lo| p < lo as i64) {
                    // Outside the quotient T^{α,·}.
                } else {
                    return Err(input(format!(
                        "u^{i}⊗{:?} is not in the tower basis at n = {}, weight {}",
                        w, self.n, self.weight
                    )));
                }
            }
        }
        Ok((v, clipped))
    }
}

/// One slice of a tower: `T_n → T_{n-1}` as a matrix.
#[derive(Clone, Debug)]
pub struct TowerSlice {
    pub source: TowerBasis,
    pub target: TowerBasis,
    pub differential: F2Matrix,
}

impl TowerSlice {
    pub fn basis(&self) -> &[(i32, BarWord)] {
        self.source.words()
    }
}
