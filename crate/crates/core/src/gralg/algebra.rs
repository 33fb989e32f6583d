use super::grading::{Weight, WeightGrading};
use super::groebner::{groebner_basis, reduce};
use super::monomial::{Exponents, Monomial};
use super::parse::parse_polynomial;
use super::poly::Poly;
use crate::error::{input, Error, Result};
use smallvec::SmallVec;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GradingMode {
    Graded,
    Ungraded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// Explicit augmentation value; `None` means the default 0.
    pub augmentation: Option<bool>,
}

/// A finitely presented commutative F₂-algebra as read from input, before
/// validation and Gröbner completion.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub name: String,
    pub generators: Vec<Generator>,
    /// Each relation is a list of exponent vectors (an F₂-sum of monomials).
    pub relations: Vec<Vec<Exponents>>,
    pub mode: GradingMode,
}

impl AlgebraPresentation {
    /// Convenience constructor from generator `(name, degree)` pairs and
    /// relation strings.
    pub fn from_strings(
        name: &str,
        mode: GradingMode,
        generators: &[(&str, u32)],
        relations: &[&str],
    ) -> Result<Self> {
        let generators: Vec<Generator> = generators
            .iter()
            .map(|(n, d)| Generator {
                name: n.to_string(),
                degree: *d,
                augmentation: None,
            })
            .collect();
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let relations = relations
            .iter()
            .map(|r| {
                parse_polynomial(r, &names)
                    .map_err(|e| input(format!("relation `{r}`, column {}: {}", e.column, e.message)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraPresentation {
            name: name.to_string(),
            generators,
            relations,
            mode,
        })
    }
}

/// A validated presentation with its reduced Gröbner basis.
///
/// Monomials are ordered degree-reverse-lexicographically, the degree being
/// the internal degree in graded mode and the number of factors otherwise.
#[derive(Debug)]
pub struct Algebra {
    name: String,
    names: Vec<String>,
    degrees: Vec<u32>,
    mode: GradingMode,
    order_weights: Vec<u32>,
    relations: Vec<Poly>,
    gb: Vec<Poly>,
    augmentation: Option<Vec<bool>>,
    grading: WeightGrading,
    finite: bool,
    basis_cache: RwLock<HashMap<Weight, Arc<Vec<Monomial>>>>,
}

impl Algebra {
    pub fn new(p: &AlgebraPresentation) -> Result<Self> {
        let g = p.generators.len();
        let mut seen = BTreeSet::new();
        for gen in &p.generators {
            if !seen.insert(gen.name.clone()) {
                return Err(Error::Presentation(format!("duplicate generator `{}`", gen.name)));
            }
            match p.mode {
                GradingMode::Graded if gen.degree == 0 => {
                    return Err(Error::DegreeZeroGenerator(gen.name.clone()))
                }
                GradingMode::Ungraded if gen.degree != 0 => {
                    return Err(Error::Presentation(format!(
                        "generator `{}` has degree {} in ungraded mode",
                        gen.name, gen.degree
                    )))
                }
                _ => {}
            }
        }
        for r in &p.relations {
            if r.iter().any(|e| e.len() != g) {
                return Err(input("relation exponent vector has the wrong length"));
            }
        }
        let degrees: Vec<u32> = p.generators.iter().map(|g| g.degree).collect();
        let order_weights: Vec<u32> = degrees.iter().map(|&d| d.max(1)).collect();
        let relations: Vec<Poly> = p
            .relations
            .iter()
            .map(|r| Poly::from_terms(r.iter().map(|e| Monomial::new(e.clone(), &order_weights))))
            .filter(|r| !r.is_zero())
            .collect();

        // In both modes the order weights double as the homogeneity weights.
        let homogeneous = relations.iter().all(|r| {
            let mut ds = r.terms().map(|m| m.order_degree());
            let first = ds.next();
            ds.all(|d| Some(d) == first)
        });
        if p.mode == GradingMode::Graded && !homogeneous {
            return Err(Error::Presentation(
                "relation is not homogeneous in internal degree".into(),
            ));
        }
        let grading = if relations.iter().all(|r| r.len() == 1) {
            WeightGrading::PerGenerator
        } else if homogeneous {
            WeightGrading::Total
        } else {
            WeightGrading::Trivial
        };

        let gb = groebner_basis(&relations, &order_weights);
        let explicit = p.generators.iter().any(|g| g.augmentation.is_some());
        let values: Vec<bool> = p.generators.iter().map(|g| g.augmentation.unwrap_or(false)).collect();
        let consistent = relations.iter().all(|r| !eval_at(r, &values));
        let augmentation = match (consistent, explicit) {
            (true, _) => Some(values),
            (false, true) => {
                return Err(Error::Presentation(
                    "augmentation does not send every relation to 0".into(),
                ))
            }
            (false, false) => None,
        };

        let mut alg = Algebra {
            name: p.name.clone(),
            names: p.generators.iter().map(|g| g.name.clone()).collect(),
            degrees,
            mode: p.mode,
            order_weights,
            relations,
            gb,
            augmentation,
            grading,
            finite: false,
            basis_cache: RwLock::new(HashMap::new()),
        };
        alg.finite = alg.compute_finite();
        Ok(alg)
    }

    /// Polynomial algebra on the given generators.
    pub fn polynomial(name: &str, generators: &[(&str, u32)]) -> Result<Self> {
        let mode = if generators.iter().all(|g| g.1 == 0) {
            GradingMode::Ungraded
        } else {
            GradingMode::Graded
        };
        Self::new(&AlgebraPresentation::from_strings(name, mode, generators, &[])?)
    }

    pub fn from_strings(
        name: &str,
        mode: GradingMode,
        generators: &[(&str, u32)],
        relations: &[&str],
    ) -> Result<Self> {
        Self::new(&AlgebraPresentation::from_strings(name, mode, generators, relations)?)
    }

    fn compute_finite(&self) -> bool {
        (0..self.ngens()).all(|i| {
            self.gb.iter().any(|g| {
                let l = g.leading().unwrap().exponents();
                l[i] > 0 && l.iter().enumerate().all(|(j, &e)| j == i || e == 0)
            })
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn mode(&self) -> GradingMode {
        self.mode
    }

    pub fn is_graded(&self) -> bool {
        self.mode == GradingMode::Graded
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &[Poly] {
        &self.gb
    }

    pub fn grading(&self) -> WeightGrading {
        self.grading
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.finite
    }

    pub fn is_supplemented(&self) -> bool {
        self.augmentation.is_some()
    }

    /// True when the presentation has no relations.
    pub fn is_polynomial(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn order_weights(&self) -> &[u32] {
        &self.order_weights
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        assert_eq!(exps.len(), self.ngens());
        Monomial::new(exps.iter().copied().collect(), &self.order_weights)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.ngens())
    }

    pub fn one(&self) -> Poly {
        Poly::from_monomial(self.one_monomial())
    }

    pub fn generator(&self, i: usize) -> Poly {
        let mut e: Exponents = SmallVec::from_elem(0, self.ngens());
        e[i] = 1;
        self.normal_form(&Poly::from_monomial(Monomial::new(e, &self.order_weights)))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.gb.iter().any(|g| g.leading().unwrap().divides(m))
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        if self.gb.is_empty() {
            return p.clone();
        }
        reduce(p, &self.gb)
    }

    /// Parses a polynomial in the generator names and reduces it.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let terms = parse_polynomial(text, &self.names)
            .map_err(|e| input(format!("column {}: {}", e.column, e.message)))?;
        let p = Poly::from_terms(terms.into_iter().map(|e| Monomial::new(e, &self.order_weights)));
        Ok(self.normal_form(&p))
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Poly {
        let m = a.mul(b);
        if self.is_standard(&m) {
            Poly::from_monomial(m)
        } else {
            reduce(&Poly::from_monomial(m), &self.gb)
        }
    }

    pub fn multiply(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::zero();
        for x in a.terms() {
            for y in b.terms() {
                out.add_assign(&self.mul_monomials(x, y));
            }
        }
        out
    }

    pub fn square_monomial(&self, a: &Monomial) -> Poly {
        self.mul_monomials(a, a)
    }

    /// The augmentation value; errors when the algebra is not supplemented.
    pub fn augment(&self, a: &Poly) -> Result<bool> {
        let values = self.augmentation.as_ref().ok_or_else(|| {
            Error::NotSupplemented(format!(
                "no augmentation of `{}` sends every relation to 0",
                self.name
            ))
        })?;
        Ok(eval_at(a, values))
    }

    /// Internal degree (0 in ungraded mode).
    pub fn internal_degree(&self, m: &Monomial) -> u32 {
        match self.mode {
            GradingMode::Graded => m.order_degree(),
            GradingMode::Ungraded => 0,
        }
    }

    pub fn weight_len(&self) -> usize {
        match self.grading {
            WeightGrading::PerGenerator => self.ngens(),
            WeightGrading::Total => 1,
            WeightGrading::Trivial => 0,
        }
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.weight_len())
    }

    pub fn weight(&self, m: &Monomial) -> Weight {
        match self.grading {
            WeightGrading::PerGenerator => Weight(m.exponents().iter().copied().collect()),
            WeightGrading::Total => Weight(SmallVec::from_elem(m.order_degree() as u16, 1)),
            WeightGrading::Trivial => Weight(SmallVec::new()),
        }
    }

    /// The scalar degree reported for a weight: internal degree in graded
    /// mode, number of generator factors for homogeneous ungraded
    /// presentations, and 0 for the trivial weight.
    pub fn weight_degree(&self, w: &Weight) -> u32 {
        match self.grading {
            WeightGrading::PerGenerator => w
                .0
                .iter()
                .zip(&self.order_weights)
                .map(|(&x, &c)| x as u32 * c)
                .sum(),
            WeightGrading::Total => w.0[0] as u32,
            WeightGrading::Trivial => 0,
        }
    }

    /// All weights whose reported degree is `d`, sorted.
    pub fn weights_of_degree(&self, d: u32) -> Vec<Weight> {
        match self.grading {
            WeightGrading::Trivial => {
                if d == 0 {
                    vec![Weight::default()]
                } else {
                    vec![]
                }
            }
            WeightGrading::Total => vec![Weight(SmallVec::from_elem(d as u16, 1))],
            WeightGrading::PerGenerator => {
                let mut out = Vec::new();
                let mut cur: Exponents = SmallVec::new();
                self.weights_rec(0, d, &mut cur, &mut out);
                out.sort();
                out
            }
        }
    }

    fn weights_rec(&self, i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Weight>) {
        if i == self.ngens() {
            if left == 0 {
                out.push(Weight(cur.clone()));
            }
            return;
        }
        let c = self.order_weights[i];
        let mut e = 0u32;
        while e * c <= left {
            cur.push(e as u16);
            self.weights_rec(i + 1, left - e * c, cur, out);
            cur.pop();
            e += 1;
        }
    }

    /// Standard monomials of the given weight in increasing monomial order.
    pub fn basis_of_weight(&self, w: &Weight) -> Result<Arc<Vec<Monomial>>> {
        if let Some(b) = self.basis_cache.read().unwrap().get(w) {
            return Ok(b.clone());
        }
        let basis = Arc::new(self.compute_basis_of_weight(w)?);
        self.basis_cache.write().unwrap().insert(w.clone(), basis.clone());
        Ok(basis)
    }

    fn compute_basis_of_weight(&self, w: &Weight) -> Result<Vec<Monomial>> {
        if w.len() != self.weight_len() {
            return Err(input("weight has the wrong length for this algebra"));
        }
        let mut out = match self.grading {
            WeightGrading::PerGenerator => {
                let m = Monomial::new(w.0.clone(), &self.order_weights);
                if self.is_standard(&m) {
                    vec![m]
                } else {
                    vec![]
                }
            }
            WeightGrading::Total => {
                let mut out = Vec::new();
                let mut cur: Exponents = SmallVec::new();
                self.monomials_rec(0, w.0[0] as u32, &mut cur, &mut out);
                out
            }
            WeightGrading::Trivial => self.all_standard_monomials()?,
        };
        out.sort();
        Ok(out)
    }

    fn monomials_rec(&self, i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
        if i == self.ngens() {
            if left == 0 {
                let m = Monomial::new(cur.clone(), &self.order_weights);
                if self.is_standard(&m) {
                    out.push(m);
                }
            }
            return;
        }
        let c = self.order_weights[i];
        let mut e = 0u32;
        while e * c <= left {
            cur.push(e as u16);
            self.monomials_rec(i + 1, left - e * c, cur, out);
            cur.pop();
            e += 1;
        }
    }

    /// Every standard monomial; requires a finite-dimensional algebra.
    pub fn all_standard_monomials(&self) -> Result<Vec<Monomial>> {
        if !self.finite {
            return Err(Error::NotFiniteType(format!(
                "`{}` is infinite dimensional",
                self.name
            )));
        }
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut frontier = vec![self.one_monomial()];
        seen.insert(self.one_monomial());
        while let Some(m) = frontier.pop() {
            for i in 0..self.ngens() {
                let mut e: Exponents = m.exponents().iter().copied().collect();
                e[i] += 1;
                let next = Monomial::new(e, &self.order_weights);
                if self.is_standard(&next) && seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// The monomial basis of `A^d` in canonical order.
    ///
    /// Graded mode: standard monomials of internal degree `d`. Ungraded mode:
    /// only `d = 0` is meaningful and requires a finite-dimensional algebra.
    pub fn degree_basis(&self, d: u32) -> Result<Vec<Monomial>> {
        match self.mode {
            GradingMode::Graded => {
                let mut out = Vec::new();
                let mut cur: Exponents = SmallVec::new();
                self.monomials_rec(0, d, &mut cur, &mut out);
                out.sort();
                Ok(out)
            }
            GradingMode::Ungraded => {
                if d != 0 {
                    return Err(input("ungraded algebras live in internal degree 0"));
                }
                self.all_standard_monomials()
            }
        }
    }

    /// Dimension of the span of all degree-`d` monomials modulo the degree-`d`
    /// part of the relation ideal, by elimination rather than Gröbner normal
    /// forms. Used to cross-check [`Algebra::degree_basis`] in graded mode.
    pub fn degree_dimension_by_elimination(&self, d: u32) -> usize {
        use crate::f2linalg::{Echelon, F2Vec};
        let mut all = Vec::new();
        let mut cur: Exponents = SmallVec::new();
        self.all_monomials_rec(0, d, &mut cur, &mut all);
        let index: HashMap<&Monomial, usize> = all.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut e = Echelon::new(all.len(), 0);
        for r in &self.relations {
            let rd = r.leading().unwrap().order_degree();
            if rd > d {
                continue;
            }
            let mut mults = Vec::new();
            let mut cur: Exponents = SmallVec::new();
            self.all_monomials_rec(0, d - rd, &mut cur, &mut mults);
            for m in &mults {
                let p = r.mul_monomial(m);
                e.insert(&F2Vec::from_indices(all.len(), p.terms().map(|t| index[t])));
            }
        }
        all.len() - e.rank()
    }

    fn all_monomials_rec(&self, i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
        if i == self.ngens() {
            if left == 0 {
                out.push(Monomial::new(cur.clone(), &self.order_weights));
            }
            return;
        }
        let c = self.order_weights[i];
        let mut e = 0u32;
        while e * c <= left {
            cur.push(e as u16);
            self.all_monomials_rec(i + 1, left - e * c, cur, out);
            cur.pop();
            e += 1;
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut s = String::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.names[i]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms()
            .rev()
            .map(|m| self.format_monomial(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn eval_at(p: &Poly, values: &[bool]) -> bool {
    p.terms()
        .filter(|m| m.exponents().iter().zip(values).all(|(&e, &v)| e == 0 || v))
        .count()
        % 2
        == 1
}
