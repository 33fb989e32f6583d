use crate::error::{input, Result};
use crate::gralg::{Algebra, Monomial, Poly, Weight};
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// A normalized bar word `a₀[a₁|…|aₙ]` with monomial entries; no bar entry is
/// the unit monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BarWord {
    pub head: Monomial,
    pub bars: Vec<Monomial>,
}

impl BarWord {
    /// Builds a word; returns `None` when some bar entry is the unit (such
    /// words vanish in the normalized complex).
    pub fn new(head: Monomial, bars: Vec<Monomial>) -> Option<Self> {
        if bars.iter().any(Monomial::is_one) {
            None
        } else {
            Some(BarWord { head, bars })
        }
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn weight(&self, alg: &Algebra) -> Weight {
        self.bars
            .iter()
            .fold(alg.weight(&self.head), |w, b| w.add(&alg.weight(b)))
    }

    /// Internal degree `|a₀| + Σ(|aᵢ| − 1)` (the upper degree); 0 when
    /// ungraded.
    pub fn upper_degree(&self, alg: &Algebra) -> i64 {
        if !alg.is_graded() {
            return 0;
        }
        alg.internal_degree(&self.head) as i64
            + self
                .bars
                .iter()
                .map(|b| alg.internal_degree(b) as i64 - 1)
                .sum::<i64>()
    }

    pub fn format(&self, alg: &Algebra) -> String {
        let mut s = alg.format_monomial(&self.head);
        s.push('[');
        for (i, b) in self.bars.iter().enumerate() {
            if i > 0 {
                s.push('|');
            }
            s.push_str(&alg.format_monomial(b));
        }
        s.push(']');
        s
    }
}

/// An F₂-combination of bar words.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, PartialOrd, Ord)]
pub struct Chain {
    terms: BTreeSet<BarWord>,
}

/// Hochschild chains are combinations of bar words.
pub type ChainElement = Chain;

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn from_word(w: BarWord) -> Self {
        let mut c = Chain::zero();
        c.terms.insert(w);
        c
    }

    pub fn from_words(words: impl IntoIterator<Item = BarWord>) -> Self {
        let mut c = Chain::zero();
        for w in words {
            c.toggle(w);
        }
        c
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

    pub fn words(&self) -> impl Iterator<Item = &BarWord> {
        self.terms.iter()
    }

    pub fn contains(&self, w: &BarWord) -> bool {
        self.terms.contains(w)
    }

    pub fn toggle(&mut self, w: BarWord) {
        if !self.terms.remove(&w) {
            self.terms.insert(w);
        }
    }

    pub fn add_assign(&mut self, other: &Chain) {
        for w in &other.terms {
            self.toggle(w.clone());
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_assign(other);
        c
    }

    /// Adds the multilinear expansion of `head[bars]` with polynomial entries;
    /// scalar parts of bar entries are discarded (they vanish in Ā).
    pub fn add_expanded(&mut self, head: &Poly, bars: &[Poly]) {
        let mut prefixes: Vec<Vec<Monomial>> = vec![Vec::new()];
        for b in bars {
            let mut next = Vec::new();
            for p in &prefixes {
                for m in b.terms().filter(|m| !m.is_one()) {
                    let mut q = p.clone();
                    q.push(m.clone());
                    next.push(q);
                }
            }
            prefixes = next;
            if prefixes.is_empty() {
                return;
            }
        }
        for h in head.terms() {
            for p in &prefixes {
                self.toggle(BarWord {
                    head: h.clone(),
                    bars: p.clone(),
                });
            }
        }
    }

    /// Homological degree and weight, or `None` for the zero chain or a
    /// chain mixing bidegrees.
    pub fn bidegree(&self, alg: &Algebra) -> Option<(usize, Weight)> {
        let mut it = self.terms.iter();
        let first = it.next()?;
        let d = (first.len(), first.weight(alg));
        for w in it {
            if w.len() != d.0 || w.weight(alg) != d.1 {
                return None;
            }
        }
        Some(d)
    }

    /// Parses text such as `1[x|y] + x[y]`; entries are polynomials in the
    /// generator names and are expanded multilinearly.
    pub fn parse(alg: &Algebra, text: &str) -> Result<Chain> {
        let mut out = Chain::zero();
        let mut depth = 0i32;
        let mut start = 0usize;
        let mut pieces = Vec::new();
        for (i, c) in text.char_indices() {
            match c {
                '[' => depth += 1,
                ']' => depth -= 1,
                '+' if depth == 0 => {
                    pieces.push(&text[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        pieces.push(&text[start..]);
        for piece in pieces {
            let piece = piece.trim();
            if piece.is_empty() || piece == "0" {
                continue;
            }
            let open = piece
                .find('[')
                .ok_or_else(|| input(format!("bar word `{piece}` lacks `[`")))?;
            let close = piece
                .rfind(']')
                .ok_or_else(|| input(format!("bar word `{piece}` lacks `]`")))?;
            let head = alg.parse(&piece[..open])?;
            let inner = piece[open + 1..close].trim();
            let bars: Vec<Poly> = if inner.is_empty() {
                Vec::new()
            } else {
                inner.split('|').map(|b| alg.parse(b)).collect::<Result<_>>()?
            };
            out.add_expanded(&head, &bars);
        }
        Ok(out)
    }

    pub fn format(&self, alg: &Algebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, w) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "{}", w.format(alg));
        }
        s
    }
}

/// The Hochschild boundary `b`.
pub fn boundary_b(alg: &Algebra, c: &Chain) -> Chain {
    let mut out = Chain::zero();
    for w in c.words() {
        add_b_word(alg, w, &mut out);
    }
    out
}

fn add_b_word(alg: &Algebra, w: &BarWord, out: &mut Chain) {
    let n = w.len();
    if n == 0 {
        return;
    }
    let head_first = alg.mul_monomials(&w.head, &w.bars[0]);
    for h in head_first.terms() {
        out.toggle(BarWord {
            head: h.clone(),
            bars: w.bars[1..].to_vec(),
        });
    }
    for i in 0..n - 1 {
        let prod = alg.mul_monomials(&w.bars[i], &w.bars[i + 1]);
        for m in prod.terms().filter(|m| !m.is_one()) {
            let mut bars = Vec::with_capacity(n - 1);
            bars.extend_from_slice(&w.bars[..i]);
            bars.push(m.clone());
            bars.extend_from_slice(&w.bars[i + 2..]);
            out.toggle(BarWord {
                head: w.head.clone(),
                bars,
            });
        }
    }
    let head_last = alg.mul_monomials(&w.bars[n - 1], &w.head);
    for h in head_last.terms() {
        out.toggle(BarWord {
            head: h.clone(),
            bars: w.bars[..n - 1].to_vec(),
        });
    }
}

/// Connes' operator `B(a₀[a₁|…|aₙ]) = Σᵢ 1[aᵢ|…|aₙ|a₀|…|aᵢ₋₁]`.
pub fn connes_b(alg: &Algebra, c: &Chain) -> Chain {
    let mut out = Chain::zero();
    for w in c.words() {
        add_connes_word(alg, w, &mut out);
    }
    out
}

fn add_connes_word(alg: &Algebra, w: &BarWord, out: &mut Chain) {
    if w.head.is_one() {
        return;
    }
    let mut cycle = Vec::with_capacity(w.len() + 1);
    cycle.push(w.head.clone());
    cycle.extend_from_slice(&w.bars);
    let n = cycle.len();
    for i in 0..n {
        let bars: Vec<Monomial> = (0..n).map(|k| cycle[(i + k) % n].clone()).collect();
        out.toggle(BarWord {
            head: alg.one_monomial(),
            bars,
        });
    }
}
