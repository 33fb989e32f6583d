use smallvec::SmallVec;
use std::cmp::Ordering;

pub type Exponents = SmallVec<[u16; 4]>;

/// A commutative monomial as an exponent vector over the generators.
///
/// The cached order degree is the weighted total degree used by the
/// degree-reverse-lexicographic order; it is derived from the exponents, so
/// equality and hashing agree with equality of exponent vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    odeg: u32,
    exps: Exponents,
}

impl Monomial {
    pub fn new(exps: Exponents, order_weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), order_weights.len());
        let odeg = exps.iter().zip(order_weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { odeg, exps }
    }

    pub fn one(ngens: usize) -> Self {
        Monomial {
            odeg: 0,
            exps: SmallVec::from_elem(0, ngens),
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn order_degree(&self) -> u32 {
        self.odeg
    }

    pub fn is_one(&self) -> bool {
        self.odeg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            odeg: self.odeg + other.odeg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            odeg: other.odeg - self.odeg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial, order_weights: &[u32]) -> Monomial {
        Monomial::new(
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
            order_weights,
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Total number of generator factors.
    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Monomial {
    /// Weighted degree first, then reverse lexicographic on generator index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.odeg.cmp(&other.odeg).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    #[test]
    fn grevlex_order() {
        let w = [1, 1, 1];
        let m = |e: [u16; 3]| Monomial::new(smallvec![e[0], e[1], e[2]], &w);
        assert!(m([1, 0, 0]) > m([0, 1, 0]));
        assert!(m([0, 1, 0]) > m([0, 0, 1]));
        assert!(m([2, 0, 0]) > m([1, 1, 0]));
        assert!(m([1, 1, 0]) > m([0, 2, 0]));
        assert!(m([0, 2, 0]) > m([1, 0, 1]));
        assert!(m([0, 0, 2]) > m([1, 0, 0]));
    }
}
