use super::monomial::Monomial;
use std::collections::BTreeSet;

/// An F₂-polynomial as a set of monomials, sorted by the monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeSet<Monomial>,
}

/// Elements of a presented algebra are polynomials in normal form.
pub type AlgebraElement = Poly;

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(m);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Poly::zero();
        for t in terms {
            p.toggle(t);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.last()
    }

    /// Adds a single monomial (coefficients live in F₂, so this toggles).
    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    /// Product in the polynomial ring (no reduction).
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn into_terms(self) -> BTreeSet<Monomial> {
        self.terms
    }
}
