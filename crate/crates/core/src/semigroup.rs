//! Affine semigroups, factorization sets and the per-element length invariants.

use std::collections::BTreeSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hilbert::{self, DiophantineSystem};
use crate::vector::{ElementVector, FactVector};

/// Congruence system `Bx ≡ 0 (mod m)` defining a full semigroup.
///
/// A modulus of 0 means the row is an equation over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    matrix: Vec<Vec<i64>>,
    moduli: Vec<u64>,
    vars: usize,
}

impl CongruenceSystem {
    pub fn new(matrix: Vec<Vec<i64>>, moduli: Vec<u64>, vars: usize) -> Result<Self> {
        if matrix.len() != moduli.len() {
            return Err(Error::InvalidSystem(format!(
                "{} rows but {} moduli",
                matrix.len(),
                moduli.len()
            )));
        }
        if let Some(row) = matrix.iter().find(|row| row.len() != vars) {
            return Err(Error::DimensionMismatch {
                expected: vars,
                found: row.len(),
            });
        }
        if vars == 0 {
            return Err(Error::InvalidSystem("system has no variables".into()));
        }
        Ok(CongruenceSystem {
            matrix,
            moduli,
            vars,
        })
    }

    /// Builds the system from rows, taking the variable count from the first row.
    pub fn from_rows(matrix: Vec<Vec<i64>>, moduli: Vec<u64>) -> Result<Self> {
        let vars = matrix.first().map(Vec::len).ok_or_else(|| {
            Error::InvalidSystem("equations need at least one row to fix the dimension".into())
        })?;
        Self::new(matrix, moduli, vars)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn to_diophantine(&self) -> DiophantineSystem {
        DiophantineSystem::congruences(self.matrix.clone(), self.moduli.clone(), self.vars)
            .expect("validated at construction")
    }

    pub fn is_satisfied_by(&self, x: &[u64]) -> bool {
        self.matrix.iter().zip(&self.moduli).all(|(row, &m)| {
            let value: i128 = row
                .iter()
                .zip(x)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum();
            if m == 0 {
                value == 0
            } else {
                value.rem_euclid(m as i128) == 0
            }
        })
    }
}

/// A finitely generated subsemigroup of `N^d`, stored by its atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSemigroup {
    dim: usize,
    atoms: Vec<ElementVector>,
    equations: Option<CongruenceSystem>,
}

impl AffineSemigroup {
    /// Builds the semigroup generated by `gens`, discarding redundant generators.
    pub fn new(gens: Vec<ElementVector>) -> Result<Self> {
        let dim = gens.first().ok_or(Error::EmptyGenerators)?.dim();
        for g in &gens {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        let mut atoms: Vec<ElementVector> = gens;
        atoms.sort();
        atoms.dedup();
        // A generator can only be a sum of generators below it, so one sweep
        // from the top reaches the fixed point.
        let mut i = atoms.len();
        while i > 0 {
            i -= 1;
            let g = atoms.remove(i);
            let others = AffineSemigroup {
                dim,
                atoms: atoms.clone(),
                equations: None,
            };
            if !others.contains_unchecked(&g) {
                atoms.insert(i, g);
            }
        }
        Ok(AffineSemigroup {
            dim,
            atoms,
            equations: None,
        })
    }

    /// Numerical semigroup shorthand: `numerical(&[3, 4, 5])`.
    pub fn numerical(gens: &[u64]) -> Result<Self> {
        Self::new(gens.iter().map(|&g| ElementVector::from(vec![g])).collect())
    }

    /// The full semigroup `{x in N^n : Bx ≡ 0}`; its atoms are the Hilbert basis.
    pub fn from_equations(system: CongruenceSystem) -> Result<Self> {
        Self::from_equations_with_budget(system, &Budget::unlimited())
    }

    pub fn from_equations_with_budget(system: CongruenceSystem, budget: &Budget) -> Result<Self> {
        let basis = hilbert::hilbert_basis_with_budget(&system.to_diophantine(), budget)?;
        if basis.vectors().is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut atoms: Vec<ElementVector> = basis
            .into_vectors()
            .into_iter()
            .map(|v| ElementVector::from(v.into_inner()))
            .collect();
        atoms.sort();
        Ok(AffineSemigroup {
            dim: system.vars(),
            atoms,
            equations: Some(system),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[ElementVector] {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> &ElementVector {
        &self.atoms[i]
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn equations(&self) -> Option<&CongruenceSystem> {
        self.equations.as_ref()
    }

    pub fn is_numerical(&self) -> bool {
        self.dim == 1
    }

    /// Atom matrix `A` (d rows, k columns).
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|r| self.atoms.iter().map(|a| a[r] as i64).collect())
            .collect()
    }

    pub fn check_element(&self, gamma: &ElementVector) -> Result<()> {
        if gamma.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: gamma.dim(),
            });
        }
        Ok(())
    }

    pub fn check_factorization(&self, z: &FactVector) -> Result<()> {
        if z.dim() != self.atoms.len() {
            return Err(Error::DimensionMismatch {
                expected: self.atoms.len(),
                found: z.dim(),
            });
        }
        Ok(())
    }

    /// Evaluates a factorization: `z_1 a_1 + ... + z_k a_k`.
    pub fn phi(&self, z: &FactVector) -> Result<ElementVector> {
        self.check_factorization(z)?;
        let mut out = vec![0u64; self.dim];
        for (zj, atom) in z.iter().zip(&self.atoms) {
            if *zj == 0 {
                continue;
            }
            for (o, a) in out.iter_mut().zip(atom.iter()) {
                let term = a.checked_mul(*zj).ok_or(Error::Overflow)?;
                *o = o.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(ElementVector::from(out))
    }

    pub fn contains(&self, gamma: &ElementVector) -> Result<bool> {
        self.check_element(gamma)?;
        Ok(self.contains_unchecked(gamma))
    }

    fn contains_unchecked(&self, gamma: &ElementVector) -> bool {
        if gamma.is_zero() {
            return true;
        }
        let mut found = false;
        FactorizationSearch::new(self, gamma).run(&mut |_| {
            found = true;
            false
        });
        found
    }

    /// All factorizations of `gamma`, in lexicographic order.
    pub fn factorizations(&self, gamma: &ElementVector) -> Result<FactorizationSet> {
        self.factorizations_with_budget(gamma, &Budget::unlimited())
    }

    /// Like [`Self::factorizations`], charging one step per factorization.
    pub fn factorizations_with_budget(
        &self,
        gamma: &ElementVector,
        budget: &Budget,
    ) -> Result<FactorizationSet> {
        self.check_element(gamma)?;
        let mut facts = Vec::new();
        let mut exceeded = None;
        FactorizationSearch::new(self, gamma).run(&mut |z| {
            if let Err(e) = budget.tick() {
                exceeded = Some(e);
                return false;
            }
            facts.push(FactVector::from(z.to_vec()));
            true
        });
        match exceeded {
            Some(e) => Err(e),
            None => Ok(FactorizationSet {
                element: gamma.clone(),
                facts,
            }),
        }
    }

    /// Sorted distinct factorization lengths of `gamma`.
    pub fn length_set(&self, gamma: &ElementVector) -> Result<Vec<u64>> {
        Ok(self.factorizations(gamma)?.length_set())
    }

    /// Successive differences of the length set of `gamma`.
    pub fn delta_of_element(&self, gamma: &ElementVector) -> Result<BTreeSet<u64>> {
        Ok(delta_of_lengths(&self.length_set(gamma)?))
    }
}

pub(crate) fn delta_of_lengths(lengths: &[u64]) -> BTreeSet<u64> {
    lengths.windows(2).map(|w| w[1] - w[0]).collect()
}

/// The factorizations of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    element: ElementVector,
    facts: Vec<FactVector>,
}

impl FactorizationSet {
    pub(crate) fn from_parts(element: ElementVector, facts: Vec<FactVector>) -> Self {
        FactorizationSet { element, facts }
    }

    pub fn element(&self) -> &ElementVector {
        &self.element
    }

    pub fn facts(&self) -> &[FactVector] {
        &self.facts
    }

    pub fn into_facts(self) -> Vec<FactVector> {
        self.facts
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn length_set(&self) -> Vec<u64> {
        let mut lengths: Vec<u64> = self.facts.iter().map(FactVector::length).collect();
        lengths.sort_unstable();
        lengths.dedup();
        lengths
    }
}

/// Depth-first search over atom multiplicities, first atom outermost.
struct FactorizationSearch<'a> {
    atoms: &'a [ElementVector],
    /// `reach[j][i]`: some atom with index >= j is nonzero in coordinate i.
    reach: Vec<Vec<bool>>,
    rest: Vec<u64>,
    z: Vec<u64>,
}

impl<'a> FactorizationSearch<'a> {
    fn new(s: &'a AffineSemigroup, gamma: &ElementVector) -> Self {
        let k = s.atoms.len();
        let mut reach = vec![vec![false; s.dim]; k + 1];
        for j in (0..k).rev() {
            reach[j] = reach[j + 1].clone();
            for (i, &a) in s.atoms[j].iter().enumerate() {
                if a > 0 {
                    reach[j][i] = true;
                }
            }
        }
        FactorizationSearch {
            atoms: &s.atoms,
            reach,
            rest: gamma.to_vec(),
            z: vec![0; k],
        }
    }

    /// Calls `visit` on each factorization; stops early when `visit` returns false.
    fn run(&mut self, visit: &mut dyn FnMut(&[u64]) -> bool) {
        self.descend(0, visit);
    }

    fn descend(&mut self, j: usize, visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        let k = self.atoms.len();
        if j == k {
            return if self.rest.iter().all(|&r| r == 0) {
                visit(&self.z)
            } else {
                true
            };
        }
        if self
            .rest
            .iter()
            .zip(&self.reach[j])
            .any(|(&r, &ok)| r > 0 && !ok)
        {
            return true;
        }
        let atom = &self.atoms[j];
        if j + 1 == k {
            // The last multiplicity is forced.
            let (i, a) = atom
                .iter()
                .enumerate()
                .find(|(_, &a)| a > 0)
                .expect("nonzero atom");
            let c = self.rest[i] / a;
            if atom.iter().zip(&self.rest).all(|(&a, &r)| a * c == r) {
                self.z[j] = c;
                let more = visit(&self.z);
                self.z[j] = 0;
                return more;
            }
            return true;
        }
        let bound = atom
            .iter()
            .zip(&self.rest)
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &r)| r / a)
            .min()
            .unwrap_or(0);
        let saved = self.rest.clone();
        let mut more = true;
        for c in 0..=bound {
            if c > 0 {
                for (r, &a) in self.rest.iter_mut().zip(atom.iter()) {
                    *r -= a;
                }
            }
            self.z[j] = c;
            if !self.descend(j + 1, visit) {
                more = false;
                break;
            }
        }
        self.z[j] = 0;
        self.rest = saved;
        more
    }
}
