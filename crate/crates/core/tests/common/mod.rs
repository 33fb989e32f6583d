#![allow(dead_code)]

use cyclo2::cli::load_algebra;
use cyclo2::gralg::{Algebra, Monomial, Weight};
use cyclo2::hochschild::{BarWord, Chain};
use rand::Rng;
use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.alg"))
}

pub fn fixture(name: &str) -> Algebra {
    load_algebra(&fixture_path(name)).unwrap()
}

/// Standard monomials to draw chain entries from.
pub fn monomial_pool(a: &Algebra) -> Vec<Monomial> {
    if a.is_finite_dimensional() {
        a.all_standard_monomials().unwrap()
    } else {
        (0..=3).flat_map(|d| a.degree_basis(d).unwrap()).collect()
    }
}

/// A sum of up to six random normalized bar words with at most four bars.
pub fn random_chain(a: &Algebra, rng: &mut impl Rng) -> Chain {
    let pool = monomial_pool(a);
    let nonunit: Vec<Monomial> = pool.iter().filter(|m| !m.is_one()).cloned().collect();
    let mut c = Chain::zero();
    for _ in 0..rng.gen_range(1..=6) {
        let head = pool[rng.gen_range(0..pool.len())].clone();
        let len = if nonunit.is_empty() { 0 } else { rng.gen_range(0..=4) };
        let bars = (0..len).map(|_| nonunit[rng.gen_range(0..nonunit.len())].clone()).collect();
        c.toggle(BarWord::new(head, bars).unwrap());
    }
    c
}

/// Rank over F₂ of a list of rows, by plain elimination.
pub fn naive_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim Ω^n` of a polynomial ring in multidegree `h`: one basis form
/// `m·dx_J` for each set `J` of `n` generators all occurring in `h`.
pub fn omega_dim_polynomial(a: &Algebra, n: i64, h: &Weight) -> usize {
    assert!(a.is_polynomial());
    if n < 0 {
        return 0;
    }
    let support = h.0.iter().filter(|&&e| e > 0).count();
    binomial(support, n as usize)
}

/// Brute-force `HC⁻` dimensions of the dual numbers at windows `S = 4` and
/// `S = 5`, recorded before the verdict logic was wired: `(n, d, dim, dim)`.
pub fn recorded_dual_hcminus() -> Vec<(i64, u16, usize, usize)> {
    let text = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/dual_hcminus.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}
