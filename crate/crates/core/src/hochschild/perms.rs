use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

/// A permutation of `{1..n}` stored as its image tuple `(σ(1), …, σ(n))`.
pub type Permutation = Vec<u8>;

type Cache = RwLock<HashMap<(usize, usize), Arc<Vec<Permutation>>>>;

fn cached(cache: &'static OnceLock<Cache>, p: usize, q: usize, build: fn(usize, usize) -> Vec<Permutation>) -> Arc<Vec<Permutation>> {
    let cache = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().expect("permutation cache poisoned").get(&(p, q)) {
        return v.clone();
    }
    let v = Arc::new(build(p, q));
    cache
        .write()
        .expect("permutation cache poisoned")
        .entry((p, q))
        .or_insert(v)
        .clone()
}

/// The `(p,q)`-shuffles: permutations with `σ(1) < … < σ(p)` and
/// `σ(p+1) < … < σ(p+q)`, in lexicographic order of image tuples.
pub fn shuffles(p: usize, q: usize) -> Arc<Vec<Permutation>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, p, q, build_shuffles)
}

fn build_shuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    let mut out = Vec::new();
    // Choose the image set of {1..p}; the rest goes to {p+1..p+q}.
    for_each_subset(n, p, &mut |first: &[usize]| {
        let mut perm = vec![0u8; n];
        let mut in_first = vec![false; n];
        for (k, &pos) in first.iter().enumerate() {
            perm[k] = (pos + 1) as u8;
            in_first[pos] = true;
        }
        let mut k = p;
        for (pos, used) in in_first.iter().enumerate() {
            if !used {
                perm[k] = (pos + 1) as u8;
                k += 1;
            }
        }
        out.push(perm);
    });
    out.sort();
    out
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

/// The cyclic `(p,q)`-shuffles: sequences `(σ(1), …, σ(p+q))` obtained by
/// interleaving a rotation of `(1..p)` with a rotation of `(p+1..p+q)` in
/// which `1` appears before `p+1`. Sorted and deduplicated.
pub fn cyclic_shuffles(p: usize, q: usize) -> Arc<Vec<Permutation>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, p, q, build_cyclic_shuffles)
}

fn build_cyclic_shuffles(p: usize, q: usize) -> Vec<Permutation> {
    if p == 0 || q == 0 {
        return Vec::new();
    }
    let n = p + q;
    let mut out = BTreeSet::new();
    for r in 0..p {
        let left: Vec<u8> = (0..p).map(|k| ((r + k) % p + 1) as u8).collect();
        for s in 0..q {
            let right: Vec<u8> = (0..q).map(|k| ((s + k) % q + p + 1) as u8).collect();
            for_each_subset(n, p, &mut |slots: &[usize]| {
                let mut seq = vec![0u8; n];
                let mut is_left = vec![false; n];
                for (k, &pos) in slots.iter().enumerate() {
                    seq[pos] = left[k];
                    is_left[pos] = true;
                }
                let mut k = 0;
                for pos in 0..n {
                    if !is_left[pos] {
                        seq[pos] = right[k];
                        k += 1;
                    }
                }
                let one = seq.iter().position(|&x| x == 1).unwrap();
                let pivot = seq.iter().position(|&x| x as usize == p + 1).unwrap();
                if one < pivot {
                    out.insert(seq);
                }
            });
        }
    }
    out.into_iter().collect()
}

/// `σ·(c₁, …, cₙ)`: the entry `cᵢ` moves to position `σ(i)`.
pub fn act<T: Clone>(perm: &[u8], items: &[T]) -> Vec<T> {
    let mut out: Vec<Option<T>> = vec![None; items.len()];
    for (i, &target) in perm.iter().enumerate() {
        out[target as usize - 1] = Some(items[i].clone());
    }
    out.into_iter().map(|x| x.expect("not a permutation")).collect()
}

/// `σ⁻¹·(c₁, …, cₙ)`: position `k` receives `c_{σ(k)}`.
pub fn act_inverse<T: Clone>(perm: &[u8], items: &[T]) -> Vec<T> {
    perm.iter().map(|&s| items[s as usize - 1].clone()).collect()
}
