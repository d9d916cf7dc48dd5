//! Nonnegative integer solutions of linear Diophantine systems: Hilbert bases,
//! minimal inhomogeneous solutions and Graver bases.
//!
//! Every system is first rewritten as a homogeneous equation system:
//! inequality rows get a slack column, congruence rows a multiplier column
//! `-m`, and a nonzero right-hand side `b` becomes the extra column `-b` whose
//! coordinate is capped at 1.
//!
//! Rows without a slack column are solved together by a search in the style
//! of Contejean and Devie: candidates grow one unit vector at a time, only in
//! directions that decrease the residual (`<Ax, Ae_j> < 0`), and any
//! candidate dominating a known solution is dropped. The search is
//! breadth-first by total degree, so each accepted solution is minimal.
//!
//! Slack columns make that search wander, so a row owning one is instead read
//! as the half-space where its slack is nonnegative and added afterwards by a
//! Pottier-style completion: sums of generators on opposite sides of the
//! hyperplane are reduced by smaller sign-compatible generators, and the
//! survivors on the nonnegative side generate the intersection.

use std::collections::{HashMap, HashSet};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::semigroup::AffineSemigroup;
use crate::vector::FactVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Geq,
}

/// `matrix x (relation) rhs`, optionally modulo per-row moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineSystem {
    matrix: Vec<Vec<i64>>,
    vars: usize,
    relation: Relation,
    rhs: Vec<i64>,
    moduli: Option<Vec<u64>>,
}

impl DiophantineSystem {
    pub fn new(
        matrix: Vec<Vec<i64>>,
        vars: usize,
        relation: Relation,
        rhs: Vec<i64>,
        moduli: Option<Vec<u64>>,
    ) -> Result<Self> {
        if let Some(row) = matrix.iter().find(|row| row.len() != vars) {
            return Err(Error::DimensionMismatch {
                expected: vars,
                found: row.len(),
            });
        }
        if rhs.len() != matrix.len() {
            return Err(Error::DimensionMismatch {
                expected: matrix.len(),
                found: rhs.len(),
            });
        }
        if let Some(m) = &moduli {
            if m.len() != matrix.len() {
                return Err(Error::DimensionMismatch {
                    expected: matrix.len(),
                    found: m.len(),
                });
            }
            if relation == Relation::Geq && m.iter().any(|&m| m != 0) {
                return Err(Error::InvalidSystem(
                    "inequality rows cannot carry a modulus".into(),
                ));
            }
        }
        Ok(DiophantineSystem {
            matrix,
            vars,
            relation,
            rhs,
            moduli,
        })
    }

    pub fn homogeneous(matrix: Vec<Vec<i64>>, vars: usize, relation: Relation) -> Result<Self> {
        let rows = matrix.len();
        Self::new(matrix, vars, relation, vec![0; rows], None)
    }

    pub fn congruences(matrix: Vec<Vec<i64>>, moduli: Vec<u64>, vars: usize) -> Result<Self> {
        let rows = matrix.len();
        Self::new(matrix, vars, Relation::Eq, vec![0; rows], Some(moduli))
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn rhs(&self) -> &[i64] {
        &self.rhs
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.iter().all(|&b| b == 0)
    }

    fn modulus(&self, row: usize) -> u64 {
        self.moduli.as_ref().map_or(0, |m| m[row])
    }

    pub fn is_solution(&self, x: &[u64]) -> bool {
        x.len() == self.vars
            && self.matrix.iter().enumerate().all(|(r, row)| {
                let value: i128 = row
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                let diff = value - self.rhs[r] as i128;
                match (self.relation, self.modulus(r)) {
                    (Relation::Geq, _) => diff >= 0,
                    (Relation::Eq, 0) => diff == 0,
                    (Relation::Eq, m) => diff.rem_euclid(m as i128) == 0,
                }
            })
    }

    /// The equivalent homogeneous equality system and the column layout.
    fn lower(&self) -> Lowered {
        let rows = self.rows();
        let mut columns: Vec<Vec<i64>> = (0..self.vars)
            .map(|j| {
                (0..rows)
                    .map(|r| match self.modulus(r) {
                        0 => self.matrix[r][j],
                        m => self.matrix[r][j].rem_euclid(m as i64),
                    })
                    .collect()
            })
            .collect();
        for r in 0..rows {
            let extra = match (self.relation, self.modulus(r)) {
                (Relation::Geq, _) => Some(-1),
                (Relation::Eq, 0) => None,
                (Relation::Eq, m) => Some(-(m as i64)),
            };
            if let Some(coef) = extra {
                let mut col = vec![0; rows];
                col[r] = coef;
                columns.push(col);
            }
        }
        let mut caps = vec![None; columns.len()];
        let pinned = if self.is_homogeneous() {
            None
        } else {
            let col = (0..rows)
                .map(|r| match self.modulus(r) {
                    0 => -self.rhs[r],
                    m => -self.rhs[r].rem_euclid(m as i64),
                })
                .collect();
            columns.push(col);
            caps.push(Some(1));
            Some(columns.len() - 1)
        };
        Lowered {
            columns,
            caps,
            rows,
            pinned,
        }
    }
}

struct Lowered {
    columns: Vec<Vec<i64>>,
    caps: Vec<Option<u64>>,
    rows: usize,
    pinned: Option<usize>,
}

/// Minimal generating set of the solution monoid of a homogeneous system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    vectors: Vec<FactVector>,
}

impl HilbertBasis {
    pub fn vectors(&self) -> &[FactVector] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<FactVector> {
        self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Primitive kernel pairs `(z, w)`, `Az = Aw`, disjoint supports, larger side first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraverBasis {
    pairs: Vec<(FactVector, FactVector)>,
}

impl GraverBasis {
    pub fn pairs(&self) -> &[(FactVector, FactVector)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn hilbert_basis(sys: &DiophantineSystem) -> Result<HilbertBasis> {
    hilbert_basis_with_budget(sys, &Budget::unlimited())
}

pub fn hilbert_basis_with_budget(sys: &DiophantineSystem, budget: &Budget) -> Result<HilbertBasis> {
    if !sys.is_homogeneous() {
        return Err(Error::InvalidSystem(
            "Hilbert basis needs a homogeneous system".into(),
        ));
    }
    let lowered = sys.lower();
    // Slack and multiplier coordinates are determined by the original ones,
    // so projection is a monoid isomorphism and needs no re-minimalization.
    let mut vectors: Vec<FactVector> = solve(&lowered, budget)?
        .into_iter()
        .map(|x| FactVector::from(x[..sys.vars].to_vec()))
        .collect();
    vectors.sort();
    vectors.dedup();
    Ok(HilbertBasis { vectors })
}

/// The coordinate-wise minimal solutions of an inhomogeneous system.
pub fn minimal_solutions(sys: &DiophantineSystem) -> Result<Vec<FactVector>> {
    minimal_solutions_with_budget(sys, &Budget::unlimited())
}

pub fn minimal_solutions_with_budget(
    sys: &DiophantineSystem,
    budget: &Budget,
) -> Result<Vec<FactVector>> {
    if sys.is_homogeneous() {
        // Zero solves it and lies below everything else.
        return Ok(vec![FactVector::zero(sys.vars)]);
    }
    let lowered = sys.lower();
    let pinned = lowered.pinned.expect("inhomogeneous systems pin a column");
    let raw = solve(&lowered, budget)?;
    let projected = raw
        .into_iter()
        .filter(|x| x[pinned] == 1)
        .map(|x| x[..sys.vars].to_vec())
        .collect();
    Ok(minimal_elements(projected)
        .into_iter()
        .map(FactVector::from)
        .collect())
}

/// Graver basis of the atom matrix, read off the Hilbert basis of `(A | -A)`.
pub fn graver_basis(s: &AffineSemigroup) -> Result<GraverBasis> {
    graver_basis_with_budget(s, &Budget::unlimited())
}

pub fn graver_basis_with_budget(s: &AffineSemigroup, budget: &Budget) -> Result<GraverBasis> {
    let k = s.num_atoms();
    let doubled: Vec<Vec<i64>> = s
        .matrix()
        .into_iter()
        .map(|row| row.iter().copied().chain(row.iter().map(|a| -a)).collect())
        .collect();
    let sys = DiophantineSystem::homogeneous(doubled, 2 * k, Relation::Eq)?;
    let basis = hilbert_basis_with_budget(&sys, budget)?;
    let mut pairs: Vec<(FactVector, FactVector)> = basis
        .into_vectors()
        .into_iter()
        .filter_map(|v| {
            let z = FactVector::from(v[..k].to_vec());
            let w = FactVector::from(v[k..].to_vec());
            if !z.disjoint(&w) || z.is_zero() || w.is_zero() {
                return None;
            }
            Some(if z > w { (z, w) } else { (w, z) })
        })
        .collect();
    pairs.sort();
    pairs.dedup();
    Ok(GraverBasis { pairs })
}

/// Keeps the coordinate-wise minimal vectors, sorted and deduplicated.
pub fn minimal_elements(mut vecs: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    vecs.sort_by(|a, b| {
        let (sa, sb): (u64, u64) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    vecs.dedup();
    let mut kept: Vec<Vec<u64>> = Vec::new();
    for v in vecs {
        if !kept.iter().any(|u| le(u, &v)) {
            kept.push(v);
        }
    }
    kept.sort();
    kept
}

fn le(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Support bitmask; coordinates past 128 fold onto earlier bits, which keeps
/// `mask(a) ⊆ mask(b)` a necessary condition for `a <= b`.
fn support_mask(x: &[u64]) -> u128 {
    x.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(0u128, |m, (i, _)| m | (1u128 << (i % 128)))
}

/// Solutions found so far, bucketed by support for the domination test.
#[derive(Default)]
struct SolutionIndex {
    buckets: HashMap<u128, Vec<Vec<u64>>>,
    masks: Vec<u128>,
    all: Vec<Vec<u64>>,
}

impl SolutionIndex {
    fn insert(&mut self, x: Vec<u64>) {
        let mask = support_mask(&x);
        let bucket = self.buckets.entry(mask).or_default();
        if bucket.is_empty() {
            self.masks.push(mask);
        }
        bucket.push(x.clone());
        self.all.push(x);
    }

    fn dominates(&self, x: &[u64], mask: u128) -> bool {
        self.masks
            .iter()
            .filter(|&&m| m & !mask == 0)
            .any(|m| self.buckets[m].iter().any(|s| le(s, x)))
    }
}

struct Candidate {
    x: Vec<u64>,
    residual: Vec<i64>,
}

/// Minimal nonzero solutions of `sum_j x_j columns[j] = 0` under the caps.
fn solve(sys: &Lowered, budget: &Budget) -> Result<Vec<Vec<u64>>> {
    let n = sys.columns.len();
    // A slack column: coefficient +-1, uncapped, zero outside its row.
    let slack_of = |r: usize| {
        (0..n).find(|&j| {
            let col = &sys.columns[j];
            col[r].abs() == 1
                && sys.caps[j].is_none()
                && col.iter().enumerate().all(|(q, &c)| q == r || c == 0)
        })
    };
    let (late, early): (Vec<usize>, Vec<usize>) =
        (0..sys.rows).partition(|&r| slack_of(r).is_some());
    let projected: Vec<Vec<i64>> = sys
        .columns
        .iter()
        .map(|col| early.iter().map(|&r| col[r]).collect())
        .collect();
    let mut gens = contejean_devie(&projected, &sys.caps, budget)?;
    for r in late {
        let row: Vec<i64> = (0..n).map(|j| sys.columns[j][r]).collect();
        let slack = slack_of(r);
        gens = add_hyperplane(gens, &row, &sys.caps, slack, budget)?;
    }
    Ok(gens)
}

struct Generator {
    x: Vec<u64>,
    value: i64,
}

/// Generators bucketed by support, for the reduction lookups.
#[derive(Default)]
struct Pool {
    all: Vec<Generator>,
    buckets: HashMap<u128, Vec<usize>>,
    masks: Vec<u128>,
}

impl Pool {
    fn push(&mut self, g: Generator) {
        let mask = support_mask(&g.x);
        let bucket = self.buckets.entry(mask).or_default();
        if bucket.is_empty() {
            self.masks.push(mask);
        }
        bucket.push(self.all.len());
        self.all.push(g);
    }

    /// A generator `g <= x` with `value(g)` between 0 and `value` inclusive.
    fn reducer(&self, x: &[u64], value: i64) -> Option<usize> {
        let mask = support_mask(x);
        let (lo, hi) = if value < 0 { (value, 0) } else { (0, value) };
        self.masks
            .iter()
            .filter(|&&m| m & !mask == 0)
            .find_map(|m| {
                self.buckets[m].iter().copied().find(|&g| {
                    let gv = self.all[g].value;
                    lo <= gv && gv <= hi && le(&self.all[g].x, x)
                })
            })
    }
}

/// Generators of the solutions of `row . x = 0` inside the monoid spanned by
/// `gens`, which must contain every minimal element of that monoid.
///
/// With `slack = Some(j)`, column `j` appears only in this row, with
/// coefficient `±1` and no cap. It is then determined by the others, and the
/// row becomes the half-space where that determined value is nonnegative.
fn add_hyperplane(
    mut gens: Vec<Vec<u64>>,
    row: &[i64],
    caps: &[Option<u64>],
    slack: Option<usize>,
    budget: &Budget,
) -> Result<Vec<Vec<u64>>> {
    let mut row = row.to_vec();
    if let Some(j) = slack {
        // x_j = -c * (rest of the row), so the half-space is that value >= 0.
        let c = row[j];
        row = row.iter().map(|&a| -c * a).collect();
        row[j] = 0;
        gens.retain(|x| x[j] == 0);
    }
    let row = row.as_slice();
    let value_of = |x: &[u64]| -> Result<i64> {
        x.iter().zip(row).try_fold(0i64, |acc, (&c, &a)| {
            i64::try_from(c)
                .ok()
                .and_then(|c| c.checked_mul(a))
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow)
        })
    };
    let mut pool = Pool::default();
    let mut sorted = gens;
    sorted.sort_by_key(|x| x.iter().sum::<u64>());
    for x in sorted {
        let value = value_of(&x)?;
        pool.push(Generator { x, value });
    }
    // Only sums across the hyperplane can be irreducible.
    let mut pos: Vec<usize> = Vec::new();
    let mut neg: Vec<usize> = Vec::new();
    let mut next = 0;
    while next < pool.all.len() {
        let partners = match pool.all[next].value.signum() {
            1 => {
                pos.push(next);
                neg.clone()
            }
            -1 => {
                neg.push(next);
                pos.clone()
            }
            _ => Vec::new(),
        };
        budget.spend(partners.len() as u64 + 1)?;
        for other in partners {
            let (a, b) = (&pool.all[next], &pool.all[other]);
            let mut x: Vec<u64> = a.x.iter().zip(&b.x).map(|(p, q)| p + q).collect();
            if x.iter()
                .zip(caps)
                .any(|(&c, cap)| cap.is_some_and(|cap| c > cap))
            {
                continue;
            }
            let mut value = a.value + b.value;
            while let Some(g) = pool.reducer(&x, value) {
                for (c, d) in x.iter_mut().zip(&pool.all[g].x) {
                    *c -= d;
                }
                value -= pool.all[g].value;
            }
            if x.iter().any(|&c| c > 0) {
                pool.push(Generator { x, value });
            }
        }
        next += 1;
    }
    let kept = pool.all.into_iter().filter_map(|g| match slack {
        None => (g.value == 0).then_some(g.x),
        Some(j) => (g.value >= 0).then(|| {
            let mut x = g.x;
            x[j] = g.value as u64;
            x
        }),
    });
    Ok(minimal_elements(kept.collect()))
}

/// Minimal nonzero solutions of `sum_j x_j columns[j] = 0` under the caps.
fn contejean_devie(
    columns: &[Vec<i64>],
    caps: &[Option<u64>],
    budget: &Budget,
) -> Result<Vec<Vec<u64>>> {
    let n = columns.len();
    let mut found = SolutionIndex::default();
    let mut frontier: Vec<Candidate> = Vec::new();
    for j in 0..n {
        let mut x = vec![0; n];
        x[j] = 1;
        let residual = columns[j].clone();
        if residual.iter().all(|&r| r == 0) {
            found.insert(x);
        } else {
            frontier.push(Candidate { x, residual });
        }
    }
    while !frontier.is_empty() {
        budget.spend(frontier.len() as u64)?;
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut next = Vec::new();
        let mut solved = Vec::new();
        for cand in &frontier {
            for (j, col) in columns.iter().enumerate() {
                if caps[j].is_some_and(|cap| cand.x[j] >= cap) {
                    continue;
                }
                let dot: i128 = cand
                    .residual
                    .iter()
                    .zip(col)
                    .map(|(&r, &c)| r as i128 * c as i128)
                    .sum();
                if dot >= 0 {
                    continue;
                }
                let mut x = cand.x.clone();
                x[j] += 1;
                if seen.contains(&x) {
                    continue;
                }
                if found.dominates(&x, support_mask(&x)) {
                    continue;
                }
                let residual = cand
                    .residual
                    .iter()
                    .zip(col)
                    .map(|(&r, &c)| r.checked_add(c).ok_or(Error::Overflow))
                    .collect::<Result<Vec<i64>>>()?;
                seen.insert(x.clone());
                if residual.iter().all(|&r| r == 0) {
                    solved.push(x);
                } else {
                    next.push(Candidate { x, residual });
                }
            }
        }
        // Solutions of equal degree never dominate each other.
        for x in solved {
            found.insert(x);
        }
        frontier = next;
    }
    Ok(found.all)
}
