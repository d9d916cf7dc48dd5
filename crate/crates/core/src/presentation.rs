//! Minimal presentations, Betti elements and the bounds of the delta set.

use std::collections::BTreeSet;

use crate::budget::Budget;
use crate::error::Result;
use crate::grobner::toric_ideal_with_budget;
use crate::semigroup::AffineSemigroup;
use crate::vector::{ElementVector, FactVector};

/// Pairs `(z, w)` with `phi(z) = phi(w)` generating the kernel congruence,
/// none of them redundant. Each pair has its lexicographically larger side
/// first; the list is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    relations: Vec<(FactVector, FactVector)>,
}

impl Presentation {
    pub fn relations(&self) -> &[(FactVector, FactVector)] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

pub fn minimal_presentation(s: &AffineSemigroup) -> Result<Presentation> {
    minimal_presentation_with_budget(s, &Budget::unlimited())
}

pub fn minimal_presentation_with_budget(
    s: &AffineSemigroup,
    budget: &Budget,
) -> Result<Presentation> {
    let toric = toric_ideal_with_budget(s, budget)?;
    let candidates: BTreeSet<ElementVector> = toric
        .binomials()
        .iter()
        .map(|b| s.phi(b.plus()))
        .collect::<Result<_>>()?;
    let mut relations = Vec::new();
    for gamma in &candidates {
        relations.extend(relations_at(s, gamma, budget)?);
    }
    relations.sort();
    Ok(Presentation { relations })
}

/// The relations a minimal presentation needs in degree `gamma`: one fewer
/// than the number of classes of factorizations linked by shared support.
pub(crate) fn relations_at(
    s: &AffineSemigroup,
    gamma: &ElementVector,
    budget: &Budget,
) -> Result<Vec<(FactVector, FactVector)>> {
    let facts = s.factorizations_with_budget(gamma, budget)?.into_facts();
    let reps = component_representatives(&facts);
    let Some((first, rest)) = reps.split_first() else {
        return Ok(Vec::new());
    };
    Ok(rest
        .iter()
        .map(|&r| {
            let (a, b) = (facts[*first].clone(), facts[r].clone());
            if a > b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect())
}

/// Lex-least member of each common-support class, in increasing order.
/// `facts` must be sorted lexicographically.
fn component_representatives(facts: &[FactVector]) -> Vec<usize> {
    let n = facts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // Facts sharing an atom are linked through the first fact using it.
    let k = facts.first().map_or(0, |f| f.dim());
    let mut first_with: Vec<Option<usize>> = vec![None; k];
    for (idx, f) in facts.iter().enumerate() {
        for (i, &c) in f.iter().enumerate() {
            if c == 0 {
                continue;
            }
            match first_with[i] {
                None => first_with[i] = Some(idx),
                Some(other) => {
                    let (a, b) = (find(&mut parent, idx), find(&mut parent, other));
                    // Keep the smaller index as root so roots are lex-least.
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).collect()
}

/// The elements `phi(z)` over the relations of a minimal presentation.
pub fn betti_elements(s: &AffineSemigroup) -> Result<Vec<ElementVector>> {
    betti_elements_with_budget(s, &Budget::unlimited())
}

pub fn betti_elements_with_budget(
    s: &AffineSemigroup,
    budget: &Budget,
) -> Result<Vec<ElementVector>> {
    let p = minimal_presentation_with_budget(s, budget)?;
    betti_of(s, &p)
}

pub(crate) fn betti_of(s: &AffineSemigroup, p: &Presentation) -> Result<Vec<ElementVector>> {
    let set: BTreeSet<ElementVector> = p
        .relations
        .iter()
        .map(|(z, _)| s.phi(z))
        .collect::<Result<_>>()?;
    Ok(set.into_iter().collect())
}

/// `(min, max)` of the delta set: the gcd of the length differences of the
/// presentation and the largest element-wise delta over Betti elements.
/// `None` when every factorization of every element has the same length.
pub fn delta_bounds(s: &AffineSemigroup) -> Result<Option<(u64, u64)>> {
    delta_bounds_with_budget(s, &Budget::unlimited())
}

pub fn delta_bounds_with_budget(
    s: &AffineSemigroup,
    budget: &Budget,
) -> Result<Option<(u64, u64)>> {
    let p = minimal_presentation_with_budget(s, budget)?;
    bounds_of(s, &p, budget)
}

pub(crate) fn bounds_of(
    s: &AffineSemigroup,
    p: &Presentation,
    budget: &Budget,
) -> Result<Option<(u64, u64)>> {
    let min = p
        .relations
        .iter()
        .fold(0, |g, (z, w)| gcd(g, z.length().abs_diff(w.length())));
    if min == 0 {
        return Ok(None);
    }
    let mut max = None;
    for b in betti_of(s, p)? {
        let lengths = s.factorizations_with_budget(&b, budget)?.length_set();
        // Betti elements with a single length contribute nothing.
        if let Some(top) = lengths.windows(2).map(|w| w[1] - w[0]).max() {
            max = max.max(Some(top));
        }
    }
    Ok(max.map(|max| (min, max)))
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
