use super::monomial::{EllElement, EllMonomial, EllRing, Flavor, ModuleGen};
use crate::error::{internal, Error, Result};
use crate::f2linalg::{Echelon, F2Vec, SubspaceBasis};
use crate::gralg::{Algebra, Monomial, Poly, Weight, WeightGrading};
use std::collections::HashMap;
use std::sync::Arc;

/// One homogeneous piece of a flavor: candidate normal monomials, the span
/// of the relation instances, and the complementary canonical basis.
#[derive(Debug)]
pub struct EllSpace {
    pub flavor: Flavor,
    pub n: i64,
    pub weight: Weight,
    candidates: Vec<EllMonomial>,
    index: HashMap<EllMonomial, usize>,
    relations: Echelon,
    basis: Vec<usize>,
    coordinate: HashMap<usize, usize>,
}

impl EllSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Candidates in their fixed order (reverse canonical order).
    pub fn candidates(&self) -> &[EllMonomial] {
        &self.candidates
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// The relation span in candidate coordinates.
    pub fn relation_span(&self) -> SubspaceBasis {
        self.relations.to_subspace()
    }

    pub fn basis_monomials(&self) -> Vec<EllMonomial> {
        self.basis.iter().map(|&i| self.candidates[i].clone()).collect()
    }

    pub fn basis_element(&self, k: usize) -> EllElement {
        EllElement::from_monomial(self.candidates[self.basis[k]].clone())
    }

    /// An element as a vector over the candidates.
    pub fn vector_of(&self, x: &EllElement) -> Result<F2Vec> {
        let mut v = F2Vec::zeros(self.candidates.len());
        for t in x.terms() {
            let i = self.index.get(t).ok_or_else(|| {
                internal(format!(
                    "monomial {t:?} is not a candidate of {} at n = {}, weight {}",
                    self.flavor.name(),
                    self.n,
                    self.weight
                ))
            })?;
            v.flip(*i);
        }
        Ok(v)
    }

    pub fn element_of_vector(&self, v: &F2Vec) -> EllElement {
        let mut x = EllElement::zero();
        for i in v.ones() {
            x.toggle(self.candidates[i].clone());
        }
        x
    }

    /// Coordinates in the canonical basis.
    pub fn coordinates(&self, x: &EllElement) -> Result<F2Vec> {
        self.coordinates_of_vector(&self.vector_of(x)?)
    }

    pub fn coordinates_of_vector(&self, v: &F2Vec) -> Result<F2Vec> {
        let r = self.relations.reduce(v);
        let mut out = F2Vec::zeros(self.dim());
        for i in r.ones() {
            let k = self
                .coordinate
                .get(&i)
                .ok_or_else(|| internal("relation reduction left a pivot entry"))?;
            out.set(*k, true);
        }
        Ok(out)
    }

    pub fn is_zero(&self, x: &EllElement) -> Result<bool> {
        Ok(self.relations.contains(&self.vector_of(x)?))
    }

    pub fn element_of(&self, coords: &F2Vec) -> EllElement {
        let mut x = EllElement::zero();
        for k in coords.ones() {
            x.toggle(self.candidates[self.basis[k]].clone());
        }
        x
    }
}

/// Argument atoms of bounded weight.
struct Atoms {
    /// Standard monomials other than 1 with their weights.
    monomials: Vec<(Monomial, Weight)>,
    grading: WeightGrading,
}

impl Atoms {
    fn new(alg: &Algebra, w: &Weight) -> Result<Self> {
        let grading = alg.grading();
        let mut monomials = Vec::new();
        if grading == WeightGrading::Trivial {
            if !alg.is_finite_dimensional() {
                return Err(Error::NotFiniteType(
                    "ℓ needs a weight grading or a finite-dimensional algebra".into(),
                ));
            }
            for m in alg.all_standard_monomials()? {
                if !m.is_one() {
                    monomials.push((m, alg.zero_weight()));
                }
            }
        } else {
            for v in w.below() {
                for m in alg.basis_of_weight(&v)?.iter() {
                    if !m.is_one() {
                        monomials.push((m.clone(), v.clone()));
                    }
                }
            }
        }
        monomials.sort();
        Ok(Atoms { monomials, grading })
    }

    /// All standard monomials, including 1, of weight at most `w`.
    fn arguments(&self, alg: &Algebra, w: &Weight) -> Vec<(Monomial, Weight)> {
        let mut out = vec![(alg.one_monomial(), alg.zero_weight())];
        out.extend(
            self.monomials
                .iter()
                .filter(|(_, mw)| self.grading == WeightGrading::Trivial || mw.le(w))
                .cloned(),
        );
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Phi,
    Q,
    Delta,
}

/// Sets of `φ`, `q`, `δ` atoms whose weights add up to exactly `w`.
fn atom_sets(
    atoms: &Atoms,
    w: &Weight,
    with_delta: bool,
) -> Vec<(Vec<Monomial>, Vec<Monomial>, Vec<Monomial>)> {
    let mut list: Vec<(Kind, &Monomial, Weight)> = Vec::new();
    for (m, mw) in &atoms.monomials {
        let doubled = mw.scale(2);
        for kind in [Kind::Phi, Kind::Q] {
            list.push((kind, m, doubled.clone()));
        }
        if with_delta {
            list.push((Kind::Delta, m, mw.clone()));
        }
    }
    let trivial = atoms.grading == WeightGrading::Trivial;
    list.retain(|(_, _, aw)| trivial || aw.le(w));
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        list: &[(Kind, &Monomial, Weight)],
        start: usize,
        rest: &Weight,
        trivial: bool,
        chosen: &mut Vec<usize>,
        out: &mut Vec<(Vec<Monomial>, Vec<Monomial>, Vec<Monomial>)>,
    ) {
        if trivial || rest.is_zero() {
            let mut sets = (Vec::new(), Vec::new(), Vec::new());
            for &i in chosen.iter() {
                let (kind, m, _) = &list[i];
                match kind {
                    Kind::Phi => sets.0.push((*m).clone()),
                    Kind::Q => sets.1.push((*m).clone()),
                    Kind::Delta => sets.2.push((*m).clone()),
                }
            }
            sets.0.sort();
            sets.1.sort();
            sets.2.sort();
            out.push(sets);
            if !trivial {
                return;
            }
        }
        for i in start..list.len() {
            let next = if trivial {
                Some(rest.clone())
            } else {
                rest.checked_sub(&list[i].2)
            };
            if let Some(next) = next {
                chosen.push(i);
                rec(list, i + 1, &next, trivial, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(&list, 0, w, trivial, &mut chosen, &mut out);
    out
}

/// Normal monomials of a flavor at `(n, w)`, sorted in reverse canonical
/// order.
pub fn enumerate(alg: &Algebra, flavor: Flavor, n: i64, w: &Weight) -> Result<Vec<EllMonomial>> {
    let atoms = Atoms::new(alg, w)?;
    let mut out = Vec::new();
    if flavor.is_module() {
        // x·γ(m): x has no u.
        for (m, mw) in atoms.arguments(alg, w).into_iter().skip(1) {
            let Some(rest) = (if atoms.grading == WeightGrading::Trivial {
                Some(w.clone())
            } else {
                w.checked_sub(&mw)
            }) else {
                continue;
            };
            for (phi, q, delta) in atom_sets(&atoms, &rest, true) {
                if (q.len() + delta.len()) as i64 == n {
                    out.push(EllMonomial {
                        u: 0,
                        phi,
                        q,
                        delta,
                        module: Some(ModuleGen::Gamma(m.clone())),
                    });
                }
            }
        }
        // x·vⁱ: x has neither u nor δ.
        for (phi, q, _) in atom_sets(&atoms, w, false) {
            let rest = n - q.len() as i64;
            if rest >= 0 && rest % 2 == 0 {
                out.push(EllMonomial {
                    u: 0,
                    phi,
                    q,
                    delta: Vec::new(),
                    module: Some(ModuleGen::V((rest / 2) as u32)),
                });
            }
        }
    } else {
        for (phi, q, delta) in atom_sets(&atoms, w, flavor.has_delta()) {
            let twice = (q.len() + delta.len()) as i64 - n;
            if twice % 2 != 0 {
                continue;
            }
            let j = twice / 2;
            if (j < 0 && !flavor.is_laurent()) || (j != 0 && !flavor.has_u()) || (j > 0 && !delta.is_empty()) {
                continue;
            }
            out.push(EllMonomial {
                u: j as i32,
                phi,
                q,
                delta,
                module: None,
            });
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Instances of the defining relations over standard-monomial arguments of
/// weight at most `w`, in normal form. Each instance is homogeneous.
pub fn relation_instances(alg: &Algebra, flavor: Flavor, w: &Weight) -> Result<Vec<EllElement>> {
    let ring = EllRing::new(alg, flavor.ring());
    let atoms = Atoms::new(alg, w)?;
    let args = atoms.arguments(alg, w);
    let trivial = atoms.grading == WeightGrading::Trivial;
    let fits = |x: &Weight| trivial || x.le(w);
    let p = |m: &Monomial| Poly::from_monomial(m.clone());
    let mul = |a: &Monomial, b: &Monomial| alg.mul_monomials(a, b);
    let mut out = Vec::new();
    let mut push = |e: EllElement| {
        if !e.is_zero() {
            out.push(e);
        }
    };
    for (i, (a, wa)) in args.iter().enumerate() {
        // δ(a²) = 0 from the corrected additivity of q.
        if fits(&wa.scale(2)) {
            push(ring.delta(&alg.square_monomial(a)));
        }
        for (b, wb) in &args[i..] {
            let wab = wa.add(wb);
            // δ(ab)δ(c) + δ(bc)δ(a) + δ(ca)δ(b) = 0.
            for (c, wc) in args.iter().skip(i) {
                if c < b || !fits(&wab.add(wc)) {
                    continue;
                }
                let mut e = ring.mul(&ring.delta(&mul(a, b)), &ring.delta(&p(c)))?;
                e.add_assign(&ring.mul(&ring.delta(&mul(b, c)), &ring.delta(&p(a)))?);
                e.add_assign(&ring.mul(&ring.delta(&mul(c, a)), &ring.delta(&p(b)))?);
                push(e);
            }
            if fits(&wab.scale(2)) {
                // φ(ab) = φ(a)φ(b) + u q(a)q(b).
                let mut e = ring.phi(&mul(a, b));
                e.add_assign(&ring.mul(&ring.phi(&p(a)), &ring.phi(&p(b)))?);
                let qq = ring.mul(&ring.q(&p(a)), &ring.q(&p(b)))?;
                e.add_assign(&ring.mul(&ring.u_power(1), &qq)?);
                push(e);
                // q(ab) = q(a)φ(b) + φ(a)q(b).
                let mut e = ring.q(&mul(a, b));
                e.add_assign(&ring.mul(&ring.q(&p(a)), &ring.phi(&p(b)))?);
                e.add_assign(&ring.mul(&ring.phi(&p(a)), &ring.q(&p(b)))?);
                push(e);
            }
        }
        if !flavor.ring().has_delta() {
            continue;
        }
        for (b, wb) in &args {
            if !fits(&wa.add(&wb.scale(2))) {
                continue;
            }
            // δ(a)φ(b) = δ(ab²).
            let mut e = ring.mul(&ring.delta(&p(a)), &ring.phi(&p(b)))?;
            e.add_assign(&ring.delta(&alg.multiply(&p(a), &alg.square_monomial(b))));
            push(e);
            // δ(a)q(b) = δ(ab)δ(b).
            let mut e = ring.mul(&ring.delta(&p(a)), &ring.q(&p(b)))?;
            e.add_assign(&ring.mul(&ring.delta(&mul(a, b)), &ring.delta(&p(b)))?);
            push(e);
        }
    }
    if flavor.is_module() {
        let module = EllRing::new(alg, flavor);
        for (a, wa) in &args {
            for (b, wb) in &args {
                let wab = wa.add(wb);
                if fits(&wa.scale(2).add(wb)) {
                    // φ(a)γ(b) = γ(a²b).
                    let mut e = module.mul(&module.phi(&p(a)), &module.gamma(&p(b)))?;
                    e.add_assign(&module.gamma(&alg.multiply(&alg.square_monomial(a), &p(b))));
                    push(e);
                    // q(a)γ(b) = δ(a)γ(ab).
                    let mut e = module.mul(&module.q(&p(a)), &module.gamma(&p(b)))?;
                    e.add_assign(&module.mul(&module.delta(&p(a)), &module.gamma(&mul(a, b)))?);
                    push(e);
                }
                if fits(&wab) {
                    // δ(a)γ(b) = γ(a)δ(b).
                    let mut e = module.mul(&module.delta(&p(a)), &module.gamma(&p(b)))?;
                    e.add_assign(&module.mul(&module.gamma(&p(a)), &module.delta(&p(b)))?);
                    push(e);
                }
                // γ(a)δ(bc) + γ(ab)δ(c) + γ(ac)δ(b) = 0.
                for (c, wc) in args.iter() {
                    if c < b || !fits(&wab.add(wc)) {
                        continue;
                    }
                    let mut e = module.mul(&module.gamma(&p(a)), &module.delta(&mul(b, c)))?;
                    e.add_assign(&module.mul(&module.gamma(&mul(a, b)), &module.delta(&p(c)))?);
                    e.add_assign(&module.mul(&module.gamma(&mul(a, c)), &module.delta(&p(b)))?);
                    push(e);
                }
            }
            // δ(a)vⁱ = 0 is a rewrite; listed for completeness.
            let e = module.mul(&module.delta(&p(a)), &module.v(0))?;
            push(e);
        }
    }
    Ok(out)
}

/// Builds the space of a flavor at `(n, w)`.
pub fn build_space(alg: &Algebra, flavor: Flavor, n: i64, w: &Weight) -> Result<EllSpace> {
    let candidates = enumerate(alg, flavor, n, w)?;
    let index: HashMap<EllMonomial, usize> =
        candidates.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut relations = Echelon::new(candidates.len(), 0);
    if !candidates.is_empty() {
        let ring = EllRing::new(alg, flavor);
        let mut multipliers: HashMap<(Flavor, i64, Weight), Arc<Vec<EllMonomial>>> = HashMap::new();
        for inst in relation_instances(alg, flavor, w)? {
            let (ni, wi) = inst.bidegree(alg).expect("nonzero instance");
            let Some(rest) = w.checked_sub(&wi) else {
                continue;
            };
            let is_module_instance = inst.terms().any(|t| t.module.is_some());
            // Ring instances are multiplied by module monomials and vice versa.
            let mflavor = if is_module_instance { flavor.ring() } else { flavor };
            let key = (mflavor, n - ni, rest.clone());
            let mult = match multipliers.get(&key) {
                Some(m) => m.clone(),
                None => {
                    let m = Arc::new(enumerate(alg, mflavor, n - ni, &rest)?);
                    multipliers.insert(key, m.clone());
                    m
                }
            };
            let inst_terms: Vec<&EllMonomial> = inst.terms().collect();
            for m in mult.iter() {
                let mut v = F2Vec::zeros(candidates.len());
                for t in &inst_terms {
                    for r in ring.mul_monomials(m, t)?.terms() {
                        let i = index.get(r).ok_or_else(|| {
                            internal(format!("relation multiple {r:?} left the candidate set"))
                        })?;
                        v.flip(*i);
                    }
                }
                relations.insert(&v);
            }
        }
    }
    let basis: Vec<usize> = (0..candidates.len()).filter(|&i| !relations.is_pivot(i)).collect();
    let coordinate = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    Ok(EllSpace {
        flavor,
        n,
        weight: w.clone(),
        candidates,
        index,
        relations,
        basis,
        coordinate,
    })
}

