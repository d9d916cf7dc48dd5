//! Brute-force oracles and random inputs shared by the integration tests.
//! Nothing here calls into the solvers it is meant to check.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semifact::{AffineSemigroup, ElementVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ev(v: &[u64]) -> ElementVector {
    ElementVector::from(v.to_vec())
}

pub fn atoms_of(s: &AffineSemigroup) -> Vec<Vec<u64>> {
    s.atoms().iter().map(|a| a.to_vec()).collect()
}

/// `k` distinct values in `2..=max`, at most `k_max` of them.
pub fn random_numerical(rng: &mut ChaCha8Rng, k_max: usize, max: u64) -> AffineSemigroup {
    let k = rng.gen_range(2..=k_max);
    let mut pool: Vec<u64> = (2..=max).collect();
    pool.shuffle(rng);
    AffineSemigroup::numerical(&pool[..k]).unwrap()
}

/// Nonzero generators in `[0, max]^2`, at most `k_max` of them.
pub fn random_affine2(rng: &mut ChaCha8Rng, k_max: usize, max: u64) -> AffineSemigroup {
    let k = rng.gen_range(2..=k_max);
    let mut gens = Vec::new();
    while gens.len() < k {
        let g = vec![rng.gen_range(0..=max), rng.gen_range(0..=max)];
        if g != [0, 0] && !gens.contains(&g) {
            gens.push(g);
        }
    }
    AffineSemigroup::new(gens.into_iter().map(ElementVector::from).collect()).unwrap()
}

/// Every `z` with `sum z_i a_i = gamma`, by plain recursion over atoms.
pub fn brute_factorizations(atoms: &[Vec<u64>], gamma: &[u64]) -> BTreeSet<Vec<u64>> {
    fn go(
        atoms: &[Vec<u64>],
        i: usize,
        rest: Vec<u64>,
        z: &mut Vec<u64>,
        out: &mut BTreeSet<Vec<u64>>,
    ) {
        if i == atoms.len() {
            if rest.iter().all(|&r| r == 0) {
                out.insert(z.clone());
            }
            return;
        }
        let mut rest = rest;
        let mut c = 0;
        loop {
            z.push(c);
            go(atoms, i + 1, rest.clone(), z, out);
            z.pop();
            if !atoms[i].iter().zip(&rest).all(|(a, r)| a <= r) {
                break;
            }
            for (r, a) in rest.iter_mut().zip(&atoms[i]) {
                *r -= a;
            }
            c += 1;
        }
    }
    let mut out = BTreeSet::new();
    go(atoms, 0, gamma.to_vec(), &mut Vec::new(), &mut out);
    out
}

pub fn brute_dist(z: &[u64], w: &[u64]) -> u64 {
    let (mut up, mut down) = (0, 0);
    for (a, b) in z.iter().zip(w) {
        if a > b {
            up += a - b;
        } else {
            down += b - a;
        }
    }
    up.max(down)
}

/// Smallest `t` such that the factorizations are connected by steps of
/// distance at most `t`, by trying thresholds in increasing order.
pub fn brute_catenary(facts: &[Vec<u64>]) -> u64 {
    if facts.len() <= 1 {
        return 0;
    }
    let mut weights: Vec<u64> = Vec::new();
    for (i, z) in facts.iter().enumerate() {
        for w in &facts[i + 1..] {
            weights.push(brute_dist(z, w));
        }
    }
    weights.sort_unstable();
    weights.dedup();
    for t in weights {
        let mut seen = vec![false; facts.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..facts.len() {
                if !seen[j] && brute_dist(&facts[i], &facts[j]) <= t {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            return t;
        }
    }
    unreachable!("the complete graph is connected")
}

/// Tame degree of one element by definition, over atom `i` only.
pub fn brute_tame_at(facts: &[Vec<u64>], i: usize) -> u64 {
    let using: Vec<&Vec<u64>> = facts.iter().filter(|w| w[i] > 0).collect();
    if using.is_empty() {
        return 0;
    }
    facts
        .iter()
        .map(|z| using.iter().map(|w| brute_dist(z, w)).min().unwrap())
        .max()
        .unwrap_or(0)
}

/// Tame degree of a set of factorizations, over every atom.
pub fn brute_tame_of_set(facts: &[Vec<u64>]) -> u64 {
    let k = facts.first().map_or(0, Vec::len);
    (0..k).map(|i| brute_tame_at(facts, i)).max().unwrap_or(0)
}

/// All `x` in `N^k` with `|x| <= max_len`.
pub fn vectors_up_to_length(k: usize, max_len: u64) -> Vec<Vec<u64>> {
    fn go(k: usize, left: u64, x: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if x.len() == k {
            out.push(x.clone());
            return;
        }
        for c in 0..=left {
            x.push(c);
            go(k, left - c, x, out);
            x.pop();
        }
    }
    let mut out = Vec::new();
    go(k, max_len, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn image(atoms: &[Vec<u64>], z: &[u64]) -> Vec<u64> {
    let d = atoms[0].len();
    let mut out = vec![0; d];
    for (a, &c) in atoms.iter().zip(z) {
        for (o, x) in out.iter_mut().zip(a) {
            *o += c * x;
        }
    }
    out
}

/// `sup t_i(gamma)` over every `gamma = phi(x)` with `|x| <= max_len` that
/// lies in `a_i + S`, straight from the definition.
pub fn brute_tame_i(atoms: &[Vec<u64>], i: usize, max_len: u64) -> u64 {
    let mut seen = BTreeSet::new();
    let mut best = 0;
    for x in vectors_up_to_length(atoms.len(), max_len) {
        if x[i] == 0 {
            continue;
        }
        let gamma = image(atoms, &x);
        if !seen.insert(gamma.clone()) {
            continue;
        }
        let facts: Vec<Vec<u64>> = brute_factorizations(atoms, &gamma).into_iter().collect();
        best = best.max(brute_tame_at(&facts, i));
    }
    best
}

fn solves(matrix: &[Vec<i64>], x: &[u64]) -> bool {
    matrix
        .iter()
        .all(|row| row.iter().zip(x).map(|(&a, &c)| a * c as i64).sum::<i64>() == 0)
}

/// Nonzero solutions of `Mx = 0` in `[0, bound]^n`. The last coordinate is
/// solved from the first row when its coefficient there is nonzero.
pub fn brute_solutions(matrix: &[Vec<i64>], bound: u64) -> Vec<Vec<u64>> {
    let n = matrix[0].len();
    let pivot = matrix[0][n - 1];
    let free = if pivot != 0 { n - 1 } else { n };
    let mut out = Vec::new();
    let mut x = vec![0u64; n];
    loop {
        let mut candidate = Some(x.clone());
        if pivot != 0 {
            let partial: i64 = matrix[0][..free]
                .iter()
                .zip(&x)
                .map(|(&a, &c)| a * c as i64)
                .sum();
            candidate = if partial % pivot == 0
                && -partial / pivot >= 0
                && (-partial / pivot) as u64 <= bound
            {
                let mut y = x.clone();
                y[n - 1] = (-partial / pivot) as u64;
                Some(y)
            } else {
                None
            };
        }
        if let Some(y) = candidate {
            if y.iter().any(|&c| c > 0) && solves(matrix, &y) {
                out.push(y);
            }
        }
        let mut j = 0;
        while j < free {
            if x[j] < bound {
                x[j] += 1;
                break;
            }
            x[j] = 0;
            j += 1;
        }
        if j == free {
            return out;
        }
    }
}

/// Coordinate-wise minimal members, sorted.
pub fn brute_minimal(mut vecs: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    vecs.sort();
    vecs.dedup();
    let le = |a: &Vec<u64>, b: &Vec<u64>| a.iter().zip(b).all(|(x, y)| x <= y);
    let minimal: Vec<Vec<u64>> = vecs
        .iter()
        .filter(|x| !vecs.iter().any(|y| y != *x && le(y, x)))
        .cloned()
        .collect();
    minimal
}

/// Whether `x` is a sum of members of `basis`, by depth-first search.
pub fn decomposes(x: &[u64], basis: &[Vec<u64>]) -> bool {
    if x.iter().all(|&c| c == 0) {
        return true;
    }
    basis.iter().any(|b| {
        b.iter().zip(x).all(|(p, q)| p <= q) && {
            let rest: Vec<u64> = x.iter().zip(b).map(|(q, p)| q - p).collect();
            decomposes(&rest, basis)
        }
    })
}
