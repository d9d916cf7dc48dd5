//! Gröbner bases of pure-difference binomial ideals `<y^u - y^v>`.
//!
//! A binomial is stored as its two exponent vectors, leading term first.
//! Reducing a binomial by `y^a - y^b` rewrites whichever term is divisible by
//! `y^a`, so every intermediate object of Buchberger's algorithm stays a
//! binomial (or zero) and the monomial normal form does all the work.
//!
//! Two completion modes exist. The plain mode computes a Gröbner basis of the
//! ideal exactly as generated. The saturated mode also divides out common
//! monomial factors `y^u - y^v = y^g (y^u' - y^v')`; this is only sound when
//! the ideal is saturated with respect to the product of the variables, as
//! toric and lattice ideals are, and it keeps bases much smaller there.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};
use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::semigroup::AffineSemigroup;
use crate::vector::FactVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrLex,
    /// A distinguished block of variables dominates; lex inside each block.
    BlockElim,
}

/// A monomial order on exponent vectors of a fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    block: Vec<usize>,
    /// Variables in comparison order (block first for `BlockElim`).
    sequence: Vec<usize>,
}

impl TermOrder {
    /// Lex with `y_0 > y_1 > ... > y_{n-1}`.
    pub fn lex(n: usize) -> Self {
        Self::build(OrderKind::Lex, (0..n).collect(), Vec::new())
    }

    /// Total degree, ties broken by lex with `y_0 > y_1 > ...`.
    pub fn grlex(n: usize) -> Self {
        Self::build(OrderKind::GrLex, (0..n).collect(), Vec::new())
    }

    /// Lex comparing variables in the given order, most significant first.
    pub fn lex_with_priority(priority: Vec<usize>) -> Result<Self> {
        check_permutation(&priority)?;
        Ok(Self::build(OrderKind::Lex, priority, Vec::new()))
    }

    pub fn grlex_with_priority(priority: Vec<usize>) -> Result<Self> {
        check_permutation(&priority)?;
        Ok(Self::build(OrderKind::GrLex, priority, Vec::new()))
    }

    /// Elimination order: any monomial with a larger block part is larger.
    pub fn block_elim(n: usize, block: &[usize]) -> Result<Self> {
        let mut sorted = block.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != block.len() || sorted.last().is_some_and(|&b| b >= n) {
            return Err(Error::InvalidSubset(format!(
                "{block:?} is not a block of 0..{n}"
            )));
        }
        Ok(Self::build(OrderKind::BlockElim, (0..n).collect(), sorted))
    }

    fn build(kind: OrderKind, priority: Vec<usize>, block: Vec<usize>) -> Self {
        let sequence = if kind == OrderKind::BlockElim {
            let inside = priority.iter().copied().filter(|v| block.contains(v));
            let outside = priority.iter().copied().filter(|v| !block.contains(v));
            inside.chain(outside).collect()
        } else {
            priority.clone()
        };
        TermOrder {
            kind,
            priority,
            block,
            sequence,
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn num_vars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn block(&self) -> &[usize] {
        &self.block
    }

    pub fn cmp(&self, a: &[u64], b: &[u64]) -> Ordering {
        if self.kind == OrderKind::GrLex {
            let (da, db): (u64, u64) = (a.iter().sum(), b.iter().sum());
            if da != db {
                return da.cmp(&db);
            }
        }
        self.sequence
            .iter()
            .map(|&v| a[v].cmp(&b[v]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

fn check_permutation(p: &[usize]) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidSubset(format!("{p:?} is not a permutation")));
        }
    }
    Ok(())
}

/// `y^plus - y^minus` with `plus` the leading exponent; zero when both agree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    plus: FactVector,
    minus: FactVector,
}

impl Binomial {
    /// Orients `y^a - y^b` under `order`. Equal terms give the zero binomial.
    pub fn new(a: FactVector, b: FactVector, order: &TermOrder) -> Result<Self> {
        if a.dim() != order.num_vars() || b.dim() != order.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: order.num_vars(),
                found: if a.dim() != order.num_vars() {
                    a.dim()
                } else {
                    b.dim()
                },
            });
        }
        Ok(Self::oriented(a, b, order))
    }

    fn oriented(a: FactVector, b: FactVector, order: &TermOrder) -> Self {
        match order.cmp(&a, &b) {
            Ordering::Less => Binomial { plus: b, minus: a },
            Ordering::Greater => Binomial { plus: a, minus: b },
            Ordering::Equal => Self::zero(a.dim()),
        }
    }

    pub fn zero(n: usize) -> Self {
        Binomial {
            plus: FactVector::zero(n),
            minus: FactVector::zero(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.plus == self.minus
    }

    pub fn plus(&self) -> &FactVector {
        &self.plus
    }

    pub fn minus(&self) -> &FactVector {
        &self.minus
    }

    pub fn num_vars(&self) -> usize {
        self.plus.dim()
    }

    /// The binomial with the common monomial factor divided out.
    pub fn cancelled(&self) -> Self {
        let g = self.plus.meet(&self.minus);
        Binomial {
            plus: self.plus.checked_sub(&g).expect("meet lies below"),
            minus: self.minus.checked_sub(&g).expect("meet lies below"),
        }
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let term = |v: &FactVector| {
            let parts: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("y{}", i + 1)
                    } else {
                        format!("y{}^{e}", i + 1)
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        write!(f, "{} - {}", term(&self.plus), term(&self.minus))
    }
}

/// A finite set of binomials tied to the order they are oriented by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialIdealBasis {
    binomials: Vec<Binomial>,
    order: TermOrder,
    reduced: bool,
}

impl BinomialIdealBasis {
    /// Wraps binomials without any completion. Zero members are dropped and
    /// every member is re-oriented under `order`.
    pub fn new(binomials: Vec<Binomial>, order: TermOrder) -> Result<Self> {
        let mut out = Vec::with_capacity(binomials.len());
        for b in binomials {
            let b = Binomial::new(b.plus, b.minus, &order)?;
            if !b.is_zero() {
                out.push(b);
            }
        }
        Ok(BinomialIdealBasis {
            binomials: out,
            order,
            reduced: false,
        })
    }

    pub fn binomials(&self) -> &[Binomial] {
        &self.binomials
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.binomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.binomials.is_empty()
    }

    /// Ideal membership; meaningful when `self` is a Gröbner basis.
    pub fn contains(&self, f: &Binomial) -> bool {
        normal_form(f, self).is_zero()
    }
}

/// Rewrite rules `lead -> trail` with a support index on the leads.
#[derive(Default, Clone)]
struct Rules {
    leads: Vec<Vec<u64>>,
    trails: Vec<Vec<u64>>,
    buckets: HashMap<u128, Vec<usize>>,
    masks: Vec<u128>,
    alive: Vec<bool>,
}

fn mask_of(x: &[u64]) -> u128 {
    x.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(0u128, |m, (i, _)| m | (1u128 << (i % 128)))
}

fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl Rules {
    fn push(&mut self, lead: Vec<u64>, trail: Vec<u64>) -> usize {
        let id = self.leads.len();
        let mask = mask_of(&lead);
        let bucket = self.buckets.entry(mask).or_default();
        if bucket.is_empty() {
            self.masks.push(mask);
        }
        bucket.push(id);
        self.leads.push(lead);
        self.trails.push(trail);
        self.alive.push(true);
        id
    }

    fn divisor(&self, m: &[u64]) -> Option<usize> {
        let mask = mask_of(m);
        self.masks
            .iter()
            .filter(|&&k| k & !mask == 0)
            .find_map(|k| {
                self.buckets[k]
                    .iter()
                    .copied()
                    .find(|&r| self.alive[r] && divides(&self.leads[r], m))
            })
    }

    /// Rewrites `m` until no leading term divides it.
    fn reduce(&self, m: &mut [u64]) {
        while let Some(r) = self.divisor(m) {
            for ((c, &l), &t) in m.iter_mut().zip(&self.leads[r]).zip(&self.trails[r]) {
                *c = *c - l + t;
            }
        }
    }

    fn from_basis(g: &BinomialIdealBasis) -> Self {
        let mut rules = Rules::default();
        for b in &g.binomials {
            rules.push(b.plus.to_vec(), b.minus.to_vec());
        }
        rules
    }
}

/// Remainder of `f` on division by `g`.
pub fn normal_form(f: &Binomial, g: &BinomialIdealBasis) -> Binomial {
    if f.is_zero() {
        return f.clone();
    }
    let rules = Rules::from_basis(g);
    let (mut a, mut b) = (f.plus.to_vec(), f.minus.to_vec());
    rules.reduce(&mut a);
    rules.reduce(&mut b);
    Binomial::oriented(a.into(), b.into(), &g.order)
}

/// Buchberger state: rules plus pending S-pairs, smallest lcm degree first.
struct Completion<'a> {
    order: &'a TermOrder,
    saturate: bool,
    rules: Rules,
    pairs: BinaryHeap<Reverse<(u64, u64, usize, usize)>>,
    seq: u64,
    weights: Vec<u64>,
}

impl<'a> Completion<'a> {
    fn new(order: &'a TermOrder, saturate: bool) -> Self {
        Completion {
            order,
            saturate,
            rules: Rules::default(),
            pairs: BinaryHeap::new(),
            seq: 0,
            weights: vec![1; order.num_vars()],
        }
    }

    /// Fully reduced, oriented form of `y^a - y^b`, or `None` for zero.
    fn normalize(&self, mut a: Vec<u64>, mut b: Vec<u64>) -> Option<(Vec<u64>, Vec<u64>)> {
        loop {
            self.rules.reduce(&mut a);
            self.rules.reduce(&mut b);
            if a == b {
                return None;
            }
            if !self.saturate {
                break;
            }
            let mut changed = false;
            for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                let g = (*x).min(*y);
                if g > 0 {
                    *x -= g;
                    *y -= g;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        match self.order.cmp(&a, &b) {
            Ordering::Greater => Some((a, b)),
            Ordering::Less => Some((b, a)),
            Ordering::Equal => None,
        }
    }

    /// Gebauer-Möller update: new pairs survive only with a minimal lcm and
    /// non-coprime leading terms; rules the new leading term divides stop
    /// reducing and pairing, but their pending pairs are still processed.
    fn insert(&mut self, lead: Vec<u64>, trail: Vec<u64>) {
        let id = self.rules.push(lead, trail);
        let new_lead = &self.rules.leads[id];
        let mut candidates: Vec<(u64, bool, usize, Vec<u64>)> = (0..id)
            .filter(|&other| self.rules.alive[other])
            .map(|other| {
                let old = &self.rules.leads[other];
                let coprime = new_lead.iter().zip(old).all(|(&x, &y)| x == 0 || y == 0);
                let lcm: Vec<u64> = new_lead.iter().zip(old).map(|(&x, &y)| x.max(y)).collect();
                let degree = lcm.iter().zip(&self.weights).map(|(&e, &w)| e * w).sum();
                (degree, !coprime, other, lcm)
            })
            .collect();
        candidates.sort_unstable_by_key(|&(degree, overlap, other, _)| (degree, overlap, other));
        let mut kept: Vec<(u128, usize)> = Vec::new();
        for (c, (_, _, _, lcm)) in candidates.iter().enumerate() {
            let mask = mask_of(lcm);
            if kept
                .iter()
                .any(|&(m, k)| m & !mask == 0 && divides(&candidates[k].3, lcm))
            {
                continue;
            }
            kept.push((mask, c));
        }
        for (_, c) in kept {
            let (degree, overlap, other, _) = candidates[c];
            if overlap {
                self.seq += 1;
                self.pairs.push(Reverse((degree, self.seq, other, id)));
            }
        }
        for other in 0..id {
            if self.rules.alive[other] && divides(&self.rules.leads[id], &self.rules.leads[other]) {
                self.rules.alive[other] = false;
            }
        }
    }

    /// Whether a rule added after the pair `(i, j)` was formed makes it
    /// redundant: its leading term divides the lcm without sharing the lcm
    /// with either side.
    fn chained(&self, i: usize, j: usize, lcm: &[u64]) -> bool {
        let (li, lj) = (&self.rules.leads[i], &self.rules.leads[j]);
        let mask = mask_of(lcm);
        let strict =
            |a: &[u64], h: &[u64]| lcm.iter().zip(a).zip(h).any(|((&m, &x), &y)| x.max(y) < m);
        self.rules
            .masks
            .iter()
            .filter(|&&k| k & !mask == 0)
            .any(|k| {
                let bucket = &self.rules.buckets[k];
                let from = bucket.partition_point(|&h| h <= j);
                bucket[from..].iter().any(|&h| {
                    let lh = &self.rules.leads[h];
                    divides(lh, lcm) && strict(li, lh) && strict(lj, lh)
                })
            })
    }

    fn add_generator(&mut self, a: Vec<u64>, b: Vec<u64>) {
        if let Some((lead, trail)) = self.normalize(a, b) {
            self.insert(lead, trail);
        }
    }

    fn run(&mut self, budget: &Budget) -> Result<()> {
        while let Some(Reverse((_, _, i, j))) = self.pairs.pop() {
            budget.tick()?;
            let (li, lj) = (&self.rules.leads[i], &self.rules.leads[j]);
            let lcm: Vec<u64> = li.iter().zip(lj).map(|(&x, &y)| x.max(y)).collect();
            if self.chained(i, j, &lcm) {
                continue;
            }
            let shift = |lead: &[u64], trail: &[u64]| -> Vec<u64> {
                lcm.iter()
                    .zip(lead)
                    .zip(trail)
                    .map(|((&m, &l), &t)| m - l + t)
                    .collect()
            };
            let a = shift(li, &self.rules.trails[i]);
            let b = shift(lj, &self.rules.trails[j]);
            self.add_generator(a, b);
        }
        Ok(())
    }

    fn into_basis(self) -> BinomialIdealBasis {
        let binomials = (0..self.rules.leads.len())
            .filter(|&r| self.rules.alive[r])
            .map(|r| Binomial {
                plus: self.rules.leads[r].clone().into(),
                minus: self.rules.trails[r].clone().into(),
            })
            .collect();
        BinomialIdealBasis {
            binomials,
            order: self.order.clone(),
            reduced: false,
        }
    }
}

fn check_gens(gens: &[Binomial], order: &TermOrder) -> Result<()> {
    match gens.iter().find(|g| g.num_vars() != order.num_vars()) {
        Some(g) => Err(Error::DimensionMismatch {
            expected: order.num_vars(),
            found: g.num_vars(),
        }),
        None => Ok(()),
    }
}

fn complete(
    gens: &[Binomial],
    order: &TermOrder,
    saturate: bool,
    weights: Option<Vec<u64>>,
    budget: &Budget,
) -> Result<BinomialIdealBasis> {
    check_gens(gens, order)?;
    let mut engine = Completion::new(order, saturate);
    if let Some(w) = weights {
        engine.weights = w;
    }
    let degree =
        |x: &FactVector| -> u64 { x.iter().zip(&engine.weights).map(|(&e, &w)| e * w).sum() };
    let mut sorted: Vec<&Binomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| degree(&g.plus).max(degree(&g.minus)));
    for g in sorted {
        engine.add_generator(g.plus.to_vec(), g.minus.to_vec());
    }
    engine.run(budget)?;
    Ok(engine.into_basis())
}

/// A Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Binomial], order: &TermOrder) -> Result<BinomialIdealBasis> {
    buchberger_with_budget(gens, order, &Budget::unlimited())
}

pub fn buchberger_with_budget(
    gens: &[Binomial],
    order: &TermOrder,
    budget: &Budget,
) -> Result<BinomialIdealBasis> {
    complete(gens, order, false, None, budget)
}

/// Gröbner basis of the saturation of `<gens>` by the product of all
/// variables, which is `<gens>` itself for toric and lattice ideals.
pub fn buchberger_saturated(
    gens: &[Binomial],
    order: &TermOrder,
    budget: &Budget,
) -> Result<BinomialIdealBasis> {
    complete(gens, order, true, None, budget)
}

/// Adds generators to a Gröbner basis and completes again; pairs among the
/// old members are not revisited.
pub fn extend_basis(
    g: &BinomialIdealBasis,
    gens: &[Binomial],
    budget: &Budget,
) -> Result<BinomialIdealBasis> {
    check_gens(gens, &g.order)?;
    let mut engine = Completion::new(&g.order, false);
    for b in &g.binomials {
        engine.rules.push(b.plus.to_vec(), b.minus.to_vec());
    }
    for b in gens.iter().filter(|b| !b.is_zero()) {
        engine.add_generator(b.plus.to_vec(), b.minus.to_vec());
    }
    engine.run(budget)?;
    Ok(engine.into_basis())
}

/// The reduced Gröbner basis, sorted by leading term.
pub fn reduce_basis(g: &BinomialIdealBasis) -> BinomialIdealBasis {
    let order = &g.order;
    let mut members: Vec<&Binomial> = g.binomials.iter().filter(|b| !b.is_zero()).collect();
    members.sort_by(|x, y| {
        order
            .cmp(&x.plus, &y.plus)
            .then_with(|| order.cmp(&x.minus, &y.minus))
    });
    let mut minimal = Rules::default();
    for b in members {
        if minimal.divisor(&b.plus).is_none() {
            minimal.push(b.plus.to_vec(), b.minus.to_vec());
        }
    }
    let mut binomials = Vec::with_capacity(minimal.leads.len());
    for r in 0..minimal.leads.len() {
        let mut trail = minimal.trails[r].clone();
        minimal.reduce(&mut trail);
        binomials.push(Binomial {
            plus: minimal.leads[r].clone().into(),
            minus: trail.into(),
        });
    }
    BinomialIdealBasis {
        binomials,
        order: order.clone(),
        reduced: true,
    }
}

/// Generators of the toric ideal `ker(y_i -> t^{a_i})`, by eliminating `t`
/// from `<y_i - t^{a_i}>`. The result is the reduced Gröbner basis of the
/// toric ideal under lex.
pub fn toric_ideal(s: &AffineSemigroup) -> Result<BinomialIdealBasis> {
    toric_ideal_with_budget(s, &Budget::unlimited())
}

pub fn toric_ideal_with_budget(s: &AffineSemigroup, budget: &Budget) -> Result<BinomialIdealBasis> {
    let (k, d) = (s.num_atoms(), s.dim());
    let n = k + d;
    let order = TermOrder::block_elim(n, &(k..n).collect::<Vec<_>>())?;
    let gens: Vec<Binomial> = s
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, atom)| {
            let mut y = vec![0; n];
            y[i] = 1;
            let mut t = vec![0; n];
            t[k..].copy_from_slice(atom);
            Binomial::oriented(y.into(), t.into(), &order)
        })
        .collect();
    let mut weights: Vec<u64> = s.atoms().iter().map(|a| a.iter().sum()).collect();
    weights.extend(vec![1; d]);
    let full = reduce_basis(&complete(&gens, &order, true, Some(weights), budget)?);
    let lex = TermOrder::lex(k);
    let binomials = full
        .binomials
        .into_iter()
        .filter(|b| b.plus[k..].iter().chain(&b.minus[k..]).all(|&e| e == 0))
        .map(|b| Binomial {
            plus: b.plus[..k].to_vec().into(),
            minus: b.minus[..k].to_vec().into(),
        })
        .collect();
    Ok(BinomialIdealBasis {
        binomials,
        order: lex,
        reduced: true,
    })
}

/// Whether two generator sets span the same binomial ideal, by mutual
/// normal-form reduction against Gröbner bases.
pub fn same_ideal(f: &[Binomial], g: &[Binomial], n: usize) -> Result<bool> {
    let order = TermOrder::grlex(n);
    let reorient = |gens: &[Binomial]| -> Result<Vec<Binomial>> {
        gens.iter()
            .map(|b| Binomial::new(b.plus.clone(), b.minus.clone(), &order))
            .collect()
    };
    let (f, g) = (reorient(f)?, reorient(g)?);
    let gb_f = buchberger(&f, &order)?;
    let gb_g = buchberger(&g, &order)?;
    Ok(g.iter().all(|b| gb_f.contains(b)) && f.iter().all(|b| gb_g.contains(b)))
}
