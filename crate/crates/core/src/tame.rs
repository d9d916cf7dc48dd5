//! Tame degrees of full affine semigroups, and block monoids.
//!
//! A semigroup is full when it contains every point of `N^d` lying in its
//! group. For full semigroups the factorizations of `gamma + S` are exactly
//! the `x` with `Ax >= gamma`, so the elements that decide the tame degree at
//! atom `i` come from the minimal solutions of one inequality system.

use std::collections::BTreeSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hilbert::{
    hilbert_basis_with_budget, minimal_solutions_with_budget, DiophantineSystem, Relation,
};
use crate::semigroup::{AffineSemigroup, CongruenceSystem};
use crate::vector::{dist_unchecked, ElementVector, FactVector};

/// A semigroup together with a congruence system cutting it out of `N^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSemigroupWitness {
    semigroup: AffineSemigroup,
    system: CongruenceSystem,
}

impl FullSemigroupWitness {
    /// The full semigroup defined by `system`.
    pub fn new(system: CongruenceSystem) -> Result<Self> {
        Self::with_budget(system, &Budget::unlimited())
    }

    pub fn with_budget(system: CongruenceSystem, budget: &Budget) -> Result<Self> {
        let semigroup = AffineSemigroup::from_equations_with_budget(system.clone(), budget)?;
        Ok(FullSemigroupWitness { semigroup, system })
    }

    /// Certifies fullness of an arbitrary semigroup. Without equations, the
    /// group of `s` is described by congruences from a diagonal form of its
    /// atom matrix, and `s` is full iff its atoms are the Hilbert basis of
    /// that system.
    pub fn from_semigroup(s: &AffineSemigroup) -> Result<Self> {
        Self::from_semigroup_with_budget(s, &Budget::unlimited())
    }

    pub fn from_semigroup_with_budget(s: &AffineSemigroup, budget: &Budget) -> Result<Self> {
        if let Some(system) = s.equations() {
            return Ok(FullSemigroupWitness {
                semigroup: s.clone(),
                system: system.clone(),
            });
        }
        let system = group_congruences(s)?;
        let basis = hilbert_basis_with_budget(&system.to_diophantine(), budget)?;
        let hilbert: Vec<&[u64]> = basis.vectors().iter().map(|v| v.coords()).collect();
        let atoms: Vec<&[u64]> = s.atoms().iter().map(|a| a.coords()).collect();
        if hilbert != atoms {
            return Err(Error::RequiresFull);
        }
        Ok(FullSemigroupWitness {
            semigroup: s.clone(),
            system,
        })
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        &self.semigroup
    }

    pub fn system(&self) -> &CongruenceSystem {
        &self.system
    }
}

/// Congruences `Ux ≡ 0` describing the group generated by the atoms of `s`,
/// read off a diagonalization `UAV = D` (row operations tracked in `U`).
fn group_congruences(s: &AffineSemigroup) -> Result<CongruenceSystem> {
    let (d, k) = (s.dim(), s.num_atoms());
    let mut m: Vec<Vec<i128>> = s
        .matrix()
        .into_iter()
        .map(|row| row.into_iter().map(i128::from).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..d)
        .map(|i| (0..d).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut rank = 0;
    while rank < d.min(k) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let pivot = (rank..d)
            .flat_map(|i| (rank..k).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(rank, pi);
        u.swap(rank, pi);
        for row in m.iter_mut() {
            row.swap(rank, pj);
        }
        let p = m[rank][rank];
        let mut clean = true;
        for i in rank + 1..d {
            let q = m[i][rank] / p;
            if q != 0 {
                let (pm, pu) = (m[rank].clone(), u[rank].clone());
                for (x, y) in m[i].iter_mut().zip(&pm) {
                    *x -= q * y;
                }
                for (x, y) in u[i].iter_mut().zip(&pu) {
                    *x -= q * y;
                }
            }
            clean &= m[i][rank] == 0;
        }
        for j in rank + 1..k {
            let q = m[rank][j] / p;
            if q != 0 {
                for row in m.iter_mut() {
                    row[j] -= q * row[rank];
                }
            }
            clean &= m[rank][j] == 0;
        }
        if clean {
            rank += 1;
        }
    }
    let to_i64 = |v: &[i128]| -> Result<Vec<i64>> {
        v.iter()
            .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow))
            .collect()
    };
    let mut rows = Vec::new();
    let mut moduli = Vec::new();
    for i in 0..d {
        let modulus = if i < rank {
            m[i][i].unsigned_abs() as u64
        } else {
            0
        };
        if modulus != 1 {
            rows.push(to_i64(&u[i])?);
            moduli.push(modulus);
        }
    }
    CongruenceSystem::new(rows, moduli, d)
}

/// The block monoid over `H ⊆ Z_{m_1} x ... x Z_{m_r}`: sequences of
/// elements of `H` (given by multiplicities) summing to zero. `H` defaults
/// to every nonzero element, in lexicographic order.
pub fn block_monoid(moduli: &[u64], subset: Option<&[Vec<u64>]>) -> Result<FullSemigroupWitness> {
    block_monoid_with_budget(moduli, subset, &Budget::unlimited())
}

pub fn block_monoid_with_budget(
    moduli: &[u64],
    subset: Option<&[Vec<u64>]>,
    budget: &Budget,
) -> Result<FullSemigroupWitness> {
    if moduli.is_empty() || moduli.iter().any(|&m| m < 2) {
        return Err(Error::InvalidSystem(format!(
            "moduli must be at least 2, got {moduli:?}"
        )));
    }
    let elements = match subset {
        None => group_elements(moduli)
            .into_iter()
            .filter(|g| g.iter().any(|&c| c > 0))
            .collect(),
        Some(h) => {
            let mut seen = BTreeSet::new();
            for g in h {
                if g.len() != moduli.len() || g.iter().zip(moduli).any(|(&c, &m)| c >= m) {
                    return Err(Error::InvalidSubset(format!(
                        "{g:?} is not an element of the group"
                    )));
                }
                if g.iter().all(|&c| c == 0) {
                    return Err(Error::InvalidSubset("the subset contains zero".into()));
                }
                if !seen.insert(g.clone()) {
                    return Err(Error::InvalidSubset(format!("{g:?} appears twice")));
                }
            }
            h.to_vec()
        }
    };
    let matrix = (0..moduli.len())
        .map(|r| elements.iter().map(|g| g[r] as i64).collect())
        .collect();
    let system = CongruenceSystem::new(matrix, moduli.to_vec(), elements.len())?;
    FullSemigroupWitness::with_budget(system, budget)
}

fn group_elements(moduli: &[u64]) -> Vec<Vec<u64>> {
    moduli.iter().fold(vec![Vec::new()], |acc, &m| {
        acc.into_iter()
            .flat_map(|prefix| {
                (0..m).map(move |c| {
                    let mut g = prefix.clone();
                    g.push(c);
                    g
                })
            })
            .collect()
    })
}

/// Minimal `x` with `Ax >= gamma`: the minimal factorizations of elements of
/// `gamma + S` when `S` is full.
pub fn minimals_principal_ideal(
    f: &FullSemigroupWitness,
    gamma: &ElementVector,
) -> Result<Vec<FactVector>> {
    minimals_principal_ideal_with_budget(f, gamma, &Budget::unlimited())
}

pub fn minimals_principal_ideal_with_budget(
    f: &FullSemigroupWitness,
    gamma: &ElementVector,
    budget: &Budget,
) -> Result<Vec<FactVector>> {
    let s = &f.semigroup;
    s.check_element(gamma)?;
    let rhs = gamma
        .iter()
        .map(|&g| i64::try_from(g).map_err(|_| Error::Overflow))
        .collect::<Result<_>>()?;
    let sys = DiophantineSystem::new(s.matrix(), s.num_atoms(), Relation::Geq, rhs, None)?;
    minimal_solutions_with_budget(&sys, budget)
}

/// The tame degree at atom `i` of a full semigroup.
pub fn tame_i_full(f: &FullSemigroupWitness, i: usize) -> Result<u64> {
    tame_i_full_with_budget(f, i, &Budget::unlimited())
}

pub fn tame_i_full_with_budget(f: &FullSemigroupWitness, i: usize, budget: &Budget) -> Result<u64> {
    let s = &f.semigroup;
    if i >= s.num_atoms() {
        return Err(Error::AtomIndex {
            index: i,
            count: s.num_atoms(),
        });
    }
    let mut tame = 0;
    for z in minimals_principal_ideal_with_budget(f, s.atom(i), budget)? {
        if z[i] > 0 {
            continue;
        }
        let gamma = s.phi(&z)?;
        let nearest = s
            .factorizations_with_budget(&gamma, budget)?
            .into_facts()
            .into_iter()
            .filter(|w| w[i] > 0)
            .min_by_key(FactVector::length)
            .expect("fullness puts gamma - a_i in the semigroup");
        // Minimality of z forces disjoint supports, so dist is the larger length.
        assert!(z.disjoint(&nearest), "{z} and {nearest} share support");
        debug_assert_eq!(
            dist_unchecked(&z, &nearest),
            z.length().max(nearest.length())
        );
        tame = tame.max(z.length().max(nearest.length()));
    }
    Ok(tame)
}

/// The tame degree of a full semigroup: the largest `tame_i_full`.
pub fn tame_full(f: &FullSemigroupWitness) -> Result<u64> {
    tame_full_with_budget(f, &Budget::unlimited())
}

pub fn tame_full_with_budget(f: &FullSemigroupWitness, budget: &Budget) -> Result<u64> {
    let all: Vec<usize> = (0..f.semigroup.num_atoms()).collect();
    tame_over_atoms(f, &all, budget)
}

/// Largest `tame_i_full` over the given atoms only. Whether that equals the
/// full tame degree is for the caller to know.
pub fn tame_over_atoms(f: &FullSemigroupWitness, atoms: &[usize], budget: &Budget) -> Result<u64> {
    let mut tame = 0;
    for &i in atoms {
        tame = tame.max(tame_i_full_with_budget(f, i, budget)?);
    }
    Ok(tame)
}

/// Tame degree of a set of factorizations of one element: over atoms used
/// by some but not all of them, the worst distance from a factorization
/// avoiding the atom to the nearest one using it.
pub fn tame_degree_of_factorizations(facts: &[FactVector]) -> u64 {
    let k = facts.first().map_or(0, FactVector::dim);
    let mut tame = 0;
    for i in 0..k {
        let (using, avoiding): (Vec<&FactVector>, Vec<&FactVector>) =
            facts.iter().partition(|z| z[i] > 0);
        if using.is_empty() {
            continue;
        }
        for z in avoiding {
            let nearest = using
                .iter()
                .map(|w| dist_unchecked(z, w))
                .min()
                .expect("nonempty");
            tame = tame.max(nearest);
        }
    }
    tame
}

/// Tame degree of `gamma`, from its factorizations.
pub fn element_tame_degree(s: &AffineSemigroup, gamma: &ElementVector) -> Result<u64> {
    Ok(tame_degree_of_factorizations(
        s.factorizations(gamma)?.facts(),
    ))
}
