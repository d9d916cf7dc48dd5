//! Catenary degrees of elements.
//!
//! The catenary degree of `gamma` is the bottleneck weight of a minimum
//! spanning tree of the complete graph on its factorizations, weighted by
//! `dist`. The naive route builds that graph outright. The dynamic route
//! builds the tree of `gamma` from the trees of the `gamma - a_i`: raising
//! coordinate `i` of every vertex maps a tree for `gamma - a_i` isometrically
//! into the graph of `gamma`, and together with the Graver pairs lying over
//! `gamma` these images contain a minimum spanning tree.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hilbert::graver_basis_with_budget;
use crate::semigroup::{AffineSemigroup, FactorizationSet};
use crate::vector::{dist_unchecked, ElementVector, FactVector};

/// An edge between two factorizations, lexicographically smaller end first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedEdge {
    a: FactVector,
    b: FactVector,
    weight: u64,
}

impl WeightedEdge {
    pub fn new(x: FactVector, y: FactVector) -> Result<Self> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                expected: x.dim(),
                found: y.dim(),
            });
        }
        Ok(Self::between(x, y))
    }

    fn between(x: FactVector, y: FactVector) -> Self {
        let weight = dist_unchecked(&x, &y);
        if x <= y {
            WeightedEdge { a: x, b: y, weight }
        } else {
            WeightedEdge { a: y, b: x, weight }
        }
    }

    pub fn endpoints(&self) -> (&FactVector, &FactVector) {
        (&self.a, &self.b)
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Image under raising coordinate `i` of both ends; same weight.
    pub fn bump(&self, i: usize) -> Self {
        WeightedEdge {
            a: self.a.bump(i),
            b: self.b.bump(i),
            weight: self.weight,
        }
    }

    fn key(&self) -> (u64, &FactVector, &FactVector) {
        (self.weight, &self.a, &self.b)
    }
}

impl PartialOrd for WeightedEdge {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Edges order by weight, then by endpoints.
impl Ord for WeightedEdge {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// A spanning tree of the factorization graph of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    vertices: FactorizationSet,
    edges: Vec<WeightedEdge>,
}

impl WeightedTree {
    pub fn vertices(&self) -> &FactorizationSet {
        &self.vertices
    }

    /// Ascending by weight.
    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    /// The largest edge weight, 0 without edges.
    pub fn bottleneck(&self) -> u64 {
        self.edges.last().map_or(0, |e| e.weight)
    }
}

/// Union-find with path compression and union by size.
struct Forest {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Forest {
    fn new(n: usize) -> Self {
        Forest {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut x, mut y) = (self.find(x), self.find(y));
        if x == y {
            return false;
        }
        if self.size[x] < self.size[y] {
            std::mem::swap(&mut x, &mut y);
        }
        self.parent[y] = x;
        self.size[x] += self.size[y];
        true
    }
}

/// Kruskal over edges already sorted ascending; `vertices` sorted.
fn kruskal(
    vertices: &[FactVector],
    sorted_edges: impl IntoIterator<Item = WeightedEdge>,
) -> Vec<WeightedEdge> {
    let index = |v: &FactVector| vertices.binary_search(v).expect("edge ends are vertices");
    let mut forest = Forest::new(vertices.len());
    let mut tree = Vec::with_capacity(vertices.len().saturating_sub(1));
    for e in sorted_edges {
        if tree.len() + 1 >= vertices.len() {
            break;
        }
        if forest.union(index(&e.a), index(&e.b)) {
            tree.push(e);
        }
    }
    tree
}

/// Catenary degree from the complete factorization graph.
pub fn catenary_naive(s: &AffineSemigroup, gamma: &ElementVector) -> Result<u64> {
    catenary_naive_with_budget(s, gamma, &Budget::unlimited())
}

pub fn catenary_naive_with_budget(
    s: &AffineSemigroup,
    gamma: &ElementVector,
    budget: &Budget,
) -> Result<u64> {
    let facts = s.factorizations_with_budget(gamma, budget)?;
    if facts.is_empty() {
        return Err(Error::NotInSemigroup(gamma.to_string()));
    }
    let z = facts.facts();
    let mut edges = Vec::with_capacity(z.len() * z.len().saturating_sub(1) / 2);
    for (i, x) in z.iter().enumerate() {
        budget.spend(z.len() as u64)?;
        for y in &z[i + 1..] {
            edges.push(WeightedEdge::between(x.clone(), y.clone()));
        }
    }
    edges.sort_unstable();
    Ok(kruskal(z, edges).last().map_or(0, |e| e.weight))
}

/// Memoized trees plus the Graver edges of the semigroup, indexed by the
/// element they lie over.
pub struct TreeMemo {
    graver: HashMap<ElementVector, Vec<WeightedEdge>>,
    store: Store,
}

enum Store {
    /// `None` marks elements known to lie outside the semigroup.
    Map(HashMap<ElementVector, Option<WeightedTree>>),
    /// Slot `g mod capacity` holds `(g, tree of g)` during an ascending sweep.
    Ring(Vec<Option<(u64, Option<WeightedTree>)>>),
}

impl TreeMemo {
    pub fn new(s: &AffineSemigroup) -> Result<Self> {
        Self::with_budget(s, &Budget::unlimited())
    }

    pub fn with_budget(s: &AffineSemigroup, budget: &Budget) -> Result<Self> {
        Ok(TreeMemo {
            graver: graver_index(s, budget)?,
            store: Store::Map(HashMap::new()),
        })
    }

    /// A ring buffer sized by the largest atom of a numerical semigroup.
    fn ring(s: &AffineSemigroup, budget: &Budget) -> Result<Self> {
        let capacity = s.atoms().iter().map(|a| a[0]).max().unwrap_or(1) as usize;
        Ok(TreeMemo {
            graver: graver_index(s, budget)?,
            store: Store::Ring(vec![None; capacity]),
        })
    }

    /// Memoized tree of `gamma`; `None` if not yet computed or not an element.
    pub fn get(&self, gamma: &ElementVector) -> Option<&WeightedTree> {
        self.lookup(gamma).and_then(Option::as_ref)
    }

    fn lookup(&self, gamma: &ElementVector) -> Option<&Option<WeightedTree>> {
        match &self.store {
            Store::Map(map) => map.get(gamma),
            Store::Ring(slots) => match &slots[gamma[0] as usize % slots.len()] {
                Some((h, tree)) if *h == gamma[0] => Some(tree),
                _ => None,
            },
        }
    }

    fn put(&mut self, gamma: ElementVector, tree: Option<WeightedTree>) {
        match &mut self.store {
            Store::Map(map) => {
                map.insert(gamma, tree);
            }
            Store::Ring(slots) => {
                let cap = slots.len();
                slots[gamma[0] as usize % cap] = Some((gamma[0], tree));
            }
        }
    }

    pub fn len(&self) -> usize {
        match &self.store {
            Store::Map(map) => map.values().filter(|t| t.is_some()).count(),
            Store::Ring(slots) => slots.iter().flatten().filter(|(_, t)| t.is_some()).count(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn graver_index(
    s: &AffineSemigroup,
    budget: &Budget,
) -> Result<HashMap<ElementVector, Vec<WeightedEdge>>> {
    let mut index: HashMap<ElementVector, Vec<WeightedEdge>> = HashMap::new();
    for (z, w) in graver_basis_with_budget(s, budget)?.pairs() {
        let gamma = s.phi(z)?;
        index
            .entry(gamma)
            .or_default()
            .push(WeightedEdge::between(z.clone(), w.clone()));
    }
    for edges in index.values_mut() {
        edges.sort_unstable();
    }
    Ok(index)
}

/// Tree of `gamma` from its memoized predecessors; `None` when `gamma` is
/// not an element. All predecessors must already be memoized.
fn build(s: &AffineSemigroup, gamma: &ElementVector, memo: &TreeMemo) -> Option<WeightedTree> {
    let k = s.num_atoms();
    if gamma.is_zero() {
        let vertices = FactorizationSet::from_parts(gamma.clone(), vec![FactVector::zero(k)]);
        return Some(WeightedTree {
            vertices,
            edges: Vec::new(),
        });
    }
    let mut children: Vec<(usize, &WeightedTree)> = Vec::new();
    for (i, atom) in s.atoms().iter().enumerate() {
        let Some(prev) = gamma.checked_sub(atom) else {
            continue;
        };
        if let Some(Some(tree)) = memo.lookup(&prev) {
            children.push((i, tree));
        }
    }
    if children.is_empty() {
        return None;
    }
    let mut vertices: Vec<FactVector> = children
        .iter()
        .flat_map(|(i, t)| t.vertices.facts().iter().map(move |v| v.bump(*i)))
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() == 1 {
        let vertices = FactorizationSet::from_parts(gamma.clone(), vertices);
        return Some(WeightedTree {
            vertices,
            edges: Vec::new(),
        });
    }
    // k-way merge of sorted edge lists: translated child trees and Graver edges.
    let mut sources: Vec<Box<dyn Iterator<Item = WeightedEdge> + '_>> = children
        .iter()
        .map(|&(i, t)| {
            Box::new(t.edges.iter().map(move |e| e.bump(i))) as Box<dyn Iterator<Item = _>>
        })
        .collect();
    if let Some(edges) = memo.graver.get(gamma) {
        sources.push(Box::new(edges.iter().cloned()));
    }
    let mut heads: BinaryHeap<Reverse<(WeightedEdge, usize)>> = BinaryHeap::new();
    for (src, it) in sources.iter_mut().enumerate() {
        if let Some(e) = it.next() {
            heads.push(Reverse((e, src)));
        }
    }
    let mut last: Option<WeightedEdge> = None;
    let merged = std::iter::from_fn(|| loop {
        let Reverse((e, src)) = heads.pop()?;
        if let Some(next) = sources[src].next() {
            heads.push(Reverse((next, src)));
        }
        if last.as_ref() != Some(&e) {
            last = Some(e.clone());
            return Some(e);
        }
    });
    let edges = kruskal(&vertices, merged);
    assert_eq!(
        edges.len() + 1,
        vertices.len(),
        "candidate graph must be connected"
    );
    let vertices = FactorizationSet::from_parts(gamma.clone(), vertices);
    Some(WeightedTree { vertices, edges })
}

/// Minimum spanning tree of the factorization graph of `gamma`, memoizing
/// every tree it depends on.
pub fn mwst(
    s: &AffineSemigroup,
    gamma: &ElementVector,
    memo: &mut TreeMemo,
) -> Result<WeightedTree> {
    mwst_with_budget(s, gamma, memo, &Budget::unlimited())
}

pub fn mwst_with_budget(
    s: &AffineSemigroup,
    gamma: &ElementVector,
    memo: &mut TreeMemo,
    budget: &Budget,
) -> Result<WeightedTree> {
    s.check_element(gamma)?;
    if matches!(memo.store, Store::Ring(_)) {
        memo.store = Store::Map(HashMap::new());
    }
    // Everything reachable by removing atoms, visited bottom-up.
    let mut pending: Vec<ElementVector> = vec![gamma.clone()];
    let mut seen: HashSet<ElementVector> = HashSet::new();
    let mut order: Vec<ElementVector> = Vec::new();
    while let Some(g) = pending.pop() {
        if memo.lookup(&g).is_some() || seen.contains(&g) {
            continue;
        }
        budget.tick()?;
        seen.insert(g.clone());
        for atom in s.atoms() {
            if let Some(prev) = g.checked_sub(atom) {
                pending.push(prev);
            }
        }
        order.push(g);
    }
    order.sort_by_key(|g| g.iter().sum::<u64>());
    for g in order {
        budget.tick()?;
        let tree = build(s, &g, memo);
        memo.put(g, tree);
    }
    memo.get(gamma)
        .cloned()
        .ok_or_else(|| Error::NotInSemigroup(gamma.to_string()))
}

/// Catenary degree via memoized spanning trees.
pub fn catenary_dynamic(s: &AffineSemigroup, gamma: &ElementVector) -> Result<u64> {
    catenary_dynamic_with_budget(s, gamma, &Budget::unlimited())
}

pub fn catenary_dynamic_with_budget(
    s: &AffineSemigroup,
    gamma: &ElementVector,
    budget: &Budget,
) -> Result<u64> {
    s.check_element(gamma)?;
    if s.is_numerical() {
        let sweep = catenary_range_with_budget(s, gamma[0], budget)?;
        return match sweep.last() {
            Some(&(g, c)) if g == gamma[0] => Ok(c),
            _ => Err(Error::NotInSemigroup(gamma.to_string())),
        };
    }
    let mut memo = TreeMemo::with_budget(s, budget)?;
    Ok(mwst_with_budget(s, gamma, &mut memo, budget)?.bottleneck())
}

/// `(g, c(g))` for every element `g <= bound` of a numerical semigroup, by an
/// ascending sweep that keeps only the last `max atom` trees.
pub fn catenary_range(s: &AffineSemigroup, bound: u64) -> Result<Vec<(u64, u64)>> {
    catenary_range_with_budget(s, bound, &Budget::unlimited())
}

pub fn catenary_range_with_budget(
    s: &AffineSemigroup,
    bound: u64,
    budget: &Budget,
) -> Result<Vec<(u64, u64)>> {
    if !s.is_numerical() {
        return Err(Error::UnsupportedDimension {
            expected: 1,
            found: s.dim(),
        });
    }
    let mut memo = TreeMemo::ring(s, budget)?;
    let mut out = Vec::new();
    for g in 0..=bound {
        budget.tick()?;
        let gamma = ElementVector::from(vec![g]);
        let tree = build(s, &gamma, &memo);
        if let Some(t) = &tree {
            out.push((g, t.bottleneck()));
        }
        memo.put(gamma, tree);
    }
    Ok(out)
}
