use super::chain::{boundary_b, connes_b, BarWord, Chain};
use super::perms::{act, act_inverse, cyclic_shuffles, shuffles};
use crate::error::{input, Result};
use crate::gralg::{Algebra, Monomial};
use serde::Serialize;
use std::collections::BTreeMap;

/// Which completion of `k[u] ⊗ C_*(A)` a [`UChain`] lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    /// `k[u] ⊗ C`, exponents `i ≥ 0`.
    Minus,
    /// `k[u,u⁻¹]/uk[u] ⊗ C`, exponents `i ≤ 0`.
    Plus,
    /// `k[u,u⁻¹] ⊗ C`, any exponent.
    Per,
}

impl Theory {
    pub fn allows(self, i: i32) -> bool {
        match self {
            Theory::Minus => i >= 0,
            Theory::Plus => i <= 0,
            Theory::Per => true,
        }
    }
}

/// A finite sum `Σ uⁱ ⊗ cᵢ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UChain {
    theory: Theory,
    entries: BTreeMap<i32, Chain>,
}

impl UChain {
    pub fn zero(theory: Theory) -> Self {
        UChain {
            theory,
            entries: BTreeMap::new(),
        }
    }

    /// `uⁱ ⊗ c`; exponents outside the theory's range give zero for `Plus`
    /// (the quotient by `uk[u]`) and are rejected otherwise.
    pub fn single(theory: Theory, i: i32, c: Chain) -> Result<Self> {
        let mut x = UChain::zero(theory);
        if !theory.allows(i) {
            if theory == Theory::Plus {
                return Ok(x);
            }
            return Err(input(format!("exponent u^{i} not allowed in {theory:?}")));
        }
        if !c.is_zero() {
            x.entries.insert(i, c);
        }
        Ok(x)
    }

    pub fn unit(alg: &Algebra, theory: Theory) -> Self {
        let w = BarWord::new(alg.one_monomial(), Vec::new()).unwrap();
        let mut x = UChain::zero(theory);
        x.entries.insert(0, Chain::from_word(w));
        x
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn with_theory(mut self, theory: Theory) -> Self {
        self.theory = theory;
        self.entries.retain(|&i, _| theory.allows(i));
        self
    }

    pub fn entries(&self) -> &BTreeMap<i32, Chain> {
        &self.entries
    }

    pub fn get(&self, i: i32) -> Option<&Chain> {
        self.entries.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Toggles `uⁱ ⊗ w`, silently dropping exponents the theory forbids.
    pub fn toggle(&mut self, i: i32, w: BarWord) {
        if !self.theory.allows(i) {
            return;
        }
        let c = self.entries.entry(i).or_default();
        c.toggle(w);
        if c.is_zero() {
            self.entries.remove(&i);
        }
    }

    pub fn add_at(&mut self, i: i32, c: &Chain) {
        for w in c.words() {
            self.toggle(i, w.clone());
        }
    }

    pub fn add_assign(&mut self, other: &UChain) {
        for (&i, c) in &other.entries {
            self.add_at(i, c);
        }
    }

    pub fn add(&self, other: &UChain) -> UChain {
        let mut x = self.clone();
        x.add_assign(other);
        x
    }

    /// Multiplication by `uᵏ`.
    pub fn shift(&self, k: i32) -> UChain {
        let mut x = UChain::zero(self.theory);
        for (&i, c) in &self.entries {
            x.add_at(i + k, c);
        }
        x
    }

    /// Total homological degree `n` with `uⁱ ⊗ c` in degree `|c| − 2i`, if
    /// all terms agree.
    pub fn degree(&self) -> Option<i64> {
        let mut d = None;
        for (&i, c) in &self.entries {
            for w in c.words() {
                let n = w.len() as i64 - 2 * i as i64;
                if *d.get_or_insert(n) != n {
                    return None;
                }
            }
        }
        d
    }

    pub fn format(&self, alg: &Algebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.entries
            .iter()
            .map(|(i, c)| format!("u^{i}⊗({})", c.format(alg)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The tower differential `∂(uⁱ⊗x) = uⁱ⊗b(x) + u^{i+1}⊗B(x)`.
pub fn tower_boundary(alg: &Algebra, x: &UChain) -> UChain {
    let mut out = UChain::zero(x.theory);
    for (&i, c) in &x.entries {
        out.add_at(i, &boundary_b(alg, c));
        out.add_at(i + 1, &connes_b(alg, c));
    }
    out
}

/// The shuffle product `Σ_{τ∈S(p,q)} τ·(a₀b₀, a₁,…,a_p, b₁,…,b_q)`.
pub fn shuffle_product(alg: &Algebra, x: &Chain, y: &Chain) -> Chain {
    let mut out = Chain::zero();
    for a in x.words() {
        for b in y.words() {
            add_shuffle_words(alg, a, b, &mut out);
        }
    }
    out
}

fn add_shuffle_words(alg: &Algebra, a: &BarWord, b: &BarWord, out: &mut Chain) {
    let head = alg.mul_monomials(&a.head, &b.head);
    if head.is_zero() {
        return;
    }
    let mut items: Vec<Monomial> = Vec::with_capacity(a.len() + b.len());
    items.extend_from_slice(&a.bars);
    items.extend_from_slice(&b.bars);
    for tau in shuffles(a.len(), b.len()).iter() {
        let bars = act(tau, &items);
        for h in head.terms() {
            out.toggle(BarWord {
                head: h.clone(),
                bars: bars.clone(),
            });
        }
    }
}

/// The cyclic shuffle part `Σ_{σ∈CS(p+1,q+1)} σ⁻¹·(1, a₀,…,a_p, b₀,…,b_q)`.
pub fn cyclic_shuffle_product(alg: &Algebra, x: &Chain, y: &Chain) -> Chain {
    let mut out = Chain::zero();
    for a in x.words() {
        for b in y.words() {
            add_cyclic_words(alg, a, b, &mut out);
        }
    }
    out
}

fn add_cyclic_words(alg: &Algebra, a: &BarWord, b: &BarWord, out: &mut Chain) {
    if a.head.is_one() || b.head.is_one() {
        return;
    }
    let mut items: Vec<Monomial> = Vec::with_capacity(a.len() + b.len() + 2);
    items.push(a.head.clone());
    items.extend_from_slice(&a.bars);
    items.push(b.head.clone());
    items.extend_from_slice(&b.bars);
    for sigma in cyclic_shuffles(a.len() + 1, b.len() + 1).iter() {
        out.toggle(BarWord {
            head: alg.one_monomial(),
            bars: act_inverse(sigma, &items),
        });
    }
}

fn product_theory(x: Theory, y: Theory) -> Result<Theory> {
    use Theory::*;
    match (x, y) {
        (Minus, Minus) => Ok(Minus),
        (Minus, Plus) | (Plus, Minus) => Ok(Plus),
        (Minus, Per) | (Per, Minus) | (Per, Per) => Ok(Per),
        _ => Err(input(format!("no product between {x:?} and {y:?} chains"))),
    }
}

/// The chain-level product
/// `uⁱ⊗a · uʲ⊗b = u^{i+j}⊗sh(a,b) + u^{i+j+1}⊗sh′(a,b)`.
///
/// Minus chains act on plus and periodic chains; plus × plus and plus × per
/// are rejected.
pub fn mu_chain(alg: &Algebra, x: &UChain, y: &UChain) -> Result<UChain> {
    Ok(mu_chain_clipped(alg, x, y, None)?.0)
}

/// [`mu_chain`] with u-exponents above `max_exponent` discarded; also returns
/// the number of discarded bar words so callers can tell truncation from
/// genuine cancellation.
pub fn mu_chain_clipped(
    alg: &Algebra,
    x: &UChain,
    y: &UChain,
    max_exponent: Option<i32>,
) -> Result<(UChain, usize)> {
    let theory = product_theory(x.theory, y.theory)?;
    let mut out = UChain::zero(theory);
    let mut clipped = 0usize;
    for (&i, a) in &x.entries {
        for (&j, b) in &y.entries {
            for (k, part) in [
                (i + j, shuffle_product(alg, a, b)),
                (i + j + 1, cyclic_shuffle_product(alg, a, b)),
            ] {
                if !theory.allows(k) {
                    continue;
                }
                if max_exponent.is_some_and(|m| k > m) {
                    clipped += part.len();
                    continue;
                }
                out.add_at(k, &part);
            }
        }
    }
    Ok((out, clipped))
}
