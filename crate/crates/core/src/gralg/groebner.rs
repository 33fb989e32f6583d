//! Buchberger completion over F₂.

use super::monomial::Monomial;
use super::poly::Poly;
use std::collections::VecDeque;

/// Fully reduces `p` modulo `basis` (every term, not only the leading one).
pub fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    let mut rest = p.clone();
    let mut out = Poly::zero();
    while let Some(lt) = rest.leading().cloned() {
        match basis.iter().find(|g| g.leading().is_some_and(|l| l.divides(&lt))) {
            Some(g) => {
                let q = g.leading().unwrap().quotient_of(&lt);
                rest.add_assign(&g.mul_monomial(&q));
            }
            None => {
                rest.toggle(lt.clone());
                out.toggle(lt);
            }
        }
    }
    out
}

fn s_polynomial(f: &Poly, g: &Poly, order_weights: &[u32]) -> Poly {
    let lf = f.leading().unwrap();
    let lg = g.leading().unwrap();
    let l = lf.lcm(lg, order_weights);
    f.mul_monomial(&lf.quotient_of(&l))
        .add(&g.mul_monomial(&lg.quotient_of(&l)))
}

/// The reduced Gröbner basis of the ideal generated by `generators`.
pub fn groebner_basis(generators: &[Poly], order_weights: &[u32]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in generators {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r);
        }
    }
    let mut pairs: VecDeque<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop_front() {
        let (li, lj) = (basis[i].leading().unwrap(), basis[j].leading().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        // Chain criterion: skip when some other leading term divides the lcm
        // and both of its pairs have already been handled.
        let l = li.lcm(lj, order_weights);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().unwrap().divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j], order_weights), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    minimize(basis)
}

fn minimize(basis: Vec<Poly>) -> Vec<Poly> {
    let leads: Vec<Monomial> = basis.iter().map(|g| g.leading().unwrap().clone()).collect();
    let mut kept: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, l)| {
            j != i && l.divides(&leads[i]) && (l != &leads[i] || j < i)
        });
        if !redundant {
            kept.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let lead = kept[i].leading().unwrap().clone();
        let others: Vec<Poly> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut tail = kept[i].clone();
        tail.toggle(lead.clone());
        let mut g = reduce(&tail, &others);
        g.toggle(lead);
        reduced.push(g);
    }
    reduced.sort_by(|a, b| a.leading().cmp(&b.leading()));
    reduced
}
