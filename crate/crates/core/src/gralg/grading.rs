use serde::Serialize;
use smallvec::SmallVec;
use std::fmt;

/// The weight grading refining the internal degree.
///
/// Every computation in the crate splits into weight pieces. Monomial
/// relations admit one weight per generator; relations homogeneous in the
/// total degree admit a single integer weight; anything else only has the
/// trivial weight.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightGrading {
    PerGenerator,
    Total,
    Trivial,
}

/// A weight: a vector whose length depends on the [`WeightGrading`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub SmallVec<[u16; 4]>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Weight(SmallVec::from_elem(0, len))
    }

    pub fn from_slice(w: &[u16]) -> Self {
        Weight(w.iter().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u16) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Weight) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self - other` when `other ≤ self`.
    pub fn checked_sub(&self, other: &Weight) -> Option<Weight> {
        if other.le(self) {
            Some(Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    /// All weights `w` with `0 ≤ w ≤ self` componentwise, in lexicographic
    /// order.
    pub fn below(&self) -> Vec<Weight> {
        let mut out = vec![Weight(SmallVec::new())];
        for &bound in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
            for w in &out {
                for x in 0..=bound {
                    let mut w2 = w.clone();
                    w2.0.push(x);
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    }

    /// Half of the weight when every component is even.
    pub fn halve(&self) -> Option<Weight> {
        if self.0.iter().all(|x| x % 2 == 0) {
            Some(Weight(self.0.iter().map(|x| x / 2).collect()))
        } else {
            None
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}
