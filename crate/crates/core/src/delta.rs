//! The delta set of a whole semigroup, by two independent routes.
//!
//! The ideal-chain route walks the ideals `I_j` generated by binomials
//! `y^z - y^w` with `Az = Aw` and `0 <= |z| - |w| <= j`: a gap `j` occurs
//! exactly when some generator of length difference `j` is new to the chain.
//! The homogenization route reads the gaps off the reduced lex Gröbner basis
//! of the toric ideal of `<(1,0), (1,a_1), ..., (1,a_k)>`, where every member
//! involving the extra variable has the shape `t^j y^z - y^w`.

use std::collections::{BTreeMap, BTreeSet};

use crate::budget::Budget;
use crate::error::Result;
use crate::grobner::{
    buchberger_saturated, buchberger_with_budget, extend_basis, normal_form, reduce_basis,
    toric_ideal_with_budget, Binomial, BinomialIdealBasis, TermOrder,
};
use crate::hilbert::{hilbert_basis_with_budget, DiophantineSystem, Relation};
use crate::presentation::{betti_of, bounds_of, minimal_presentation_with_budget};
use crate::semigroup::AffineSemigroup;
use crate::vector::{ElementVector, FactVector};

/// `<(1,0), (1,a_1), ..., (1,a_k)>`; atom 0 is the extra generator and atom
/// `i + 1` lifts atom `i` of the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogenizedSemigroup {
    base: AffineSemigroup,
    lifted: AffineSemigroup,
}

impl HomogenizedSemigroup {
    pub fn base(&self) -> &AffineSemigroup {
        &self.base
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        &self.lifted
    }

    pub fn generators(&self) -> &[ElementVector] {
        self.lifted.atoms()
    }
}

pub fn homogenize(s: &AffineSemigroup) -> Result<HomogenizedSemigroup> {
    let d = s.dim();
    let mut gens = vec![ElementVector::unit(d + 1, 0)];
    gens.extend(s.atoms().iter().map(|a| {
        let mut v = vec![1];
        v.extend_from_slice(a);
        ElementVector::from(v)
    }));
    let lifted = AffineSemigroup::new(gens.clone())?;
    // Leading 1s rule out redundancy, and sorting keeps the lifted atoms in
    // base order behind the extra generator.
    debug_assert_eq!(lifted.atoms(), gens.as_slice());
    Ok(HomogenizedSemigroup {
        base: s.clone(),
        lifted,
    })
}

/// State of the ideal-chain computation.
#[derive(Debug, Clone)]
pub struct DeltaChainState {
    basis: BinomialIdealBasis,
    delta: BTreeSet<u64>,
    step: u64,
    top: u64,
    buckets: BTreeMap<u64, Vec<(FactVector, FactVector)>>,
}

impl DeltaChainState {
    /// Gröbner basis (degree-lex) of the current chain ideal.
    pub fn basis(&self) -> &BinomialIdealBasis {
        &self.basis
    }

    /// Gaps confirmed so far.
    pub fn delta(&self) -> &BTreeSet<u64> {
        &self.delta
    }

    /// The minimum of the delta set; every gap is a multiple of it.
    pub fn step(&self) -> u64 {
        self.step
    }

    /// The maximum of the delta set.
    pub fn top(&self) -> u64 {
        self.top
    }

    /// Hilbert basis elements `(z, w)` with `|z| - |w| = slack`.
    pub fn bucket(&self, slack: u64) -> &[(FactVector, FactVector)] {
        self.buckets.get(&slack).map_or(&[], Vec::as_slice)
    }

    pub fn buckets(&self) -> &BTreeMap<u64, Vec<(FactVector, FactVector)>> {
        &self.buckets
    }

    fn binomials(&self, slack: u64) -> Vec<Binomial> {
        let order = self.basis.order();
        self.bucket(slack)
            .iter()
            .filter_map(|(z, w)| Binomial::new(z.clone(), w.clone(), order).ok())
            .filter(|b| !b.is_zero())
            .collect()
    }

    /// Whether some generator with this slack lies outside the current ideal.
    pub fn is_new(&self, slack: u64) -> bool {
        self.binomials(slack)
            .iter()
            .any(|b| !normal_form(b, &self.basis).is_zero())
    }

    /// Adds the generators with this slack to the ideal.
    pub fn absorb(&mut self, slack: u64, budget: &Budget) -> Result<()> {
        let gens = self.binomials(slack);
        self.basis = extend_basis(&self.basis, &gens, budget)?;
        Ok(())
    }

    /// Sets up the chain at `I_m`; `None` when all lengths agree.
    pub fn start(s: &AffineSemigroup, budget: &Budget) -> Result<Option<Self>> {
        let presentation = minimal_presentation_with_budget(s, budget)?;
        let Some((step, _)) = bounds_of(s, &presentation, budget)? else {
            return Ok(None);
        };
        let mut delta = BTreeSet::new();
        for b in betti_of(s, &presentation)? {
            delta.extend(
                s.factorizations_with_budget(&b, budget)?
                    .length_set()
                    .windows(2)
                    .map(|w| w[1] - w[0]),
            );
        }
        // The minimum always belongs to the delta set, Betti elements or not.
        delta.insert(step);
        let top = *delta.last().expect("nonempty");
        let buckets = slack_hilbert_basis(s, budget)?;
        let order = TermOrder::grlex(s.num_atoms());
        let mut state = DeltaChainState {
            basis: BinomialIdealBasis::new(Vec::new(), order.clone())?,
            delta,
            step,
            top,
            buckets,
        };
        let mut seed = state.binomials(0);
        seed.extend(state.binomials(step));
        state.basis = buchberger_with_budget(&seed, &order, budget)?;
        Ok(Some(state))
    }

    /// Walks `j = 2m, 3m, ...` below the maximum, recording new gaps.
    pub fn run(&mut self, budget: &Budget) -> Result<()> {
        let mut j = 2 * self.step;
        while j + self.step <= self.top {
            if self.is_new(j) {
                self.delta.insert(j);
                self.absorb(j, budget)?;
            }
            j += self.step;
        }
        Ok(())
    }
}

/// Hilbert basis of `Az = Aw, |z| - |w| = s`, bucketed by `s`.
fn slack_hilbert_basis(
    s: &AffineSemigroup,
    budget: &Budget,
) -> Result<BTreeMap<u64, Vec<(FactVector, FactVector)>>> {
    let k = s.num_atoms();
    let mut rows: Vec<Vec<i64>> = s
        .matrix()
        .into_iter()
        .map(|row| {
            let mut r = row.clone();
            r.extend(row.iter().map(|a| -a));
            r.push(0);
            r
        })
        .collect();
    let mut lengths = vec![1; k];
    lengths.extend(vec![-1; k]);
    lengths.push(-1);
    rows.push(lengths);
    let sys = DiophantineSystem::homogeneous(rows, 2 * k + 1, Relation::Eq)?;
    let mut buckets: BTreeMap<u64, Vec<(FactVector, FactVector)>> = BTreeMap::new();
    for v in hilbert_basis_with_budget(&sys, budget)?.into_vectors() {
        let z = FactVector::from(v[..k].to_vec());
        let w = FactVector::from(v[k..2 * k].to_vec());
        buckets.entry(v[2 * k]).or_default().push((z, w));
    }
    Ok(buckets)
}

pub fn delta_set_hilbert(s: &AffineSemigroup) -> Result<BTreeSet<u64>> {
    delta_set_hilbert_with_budget(s, &Budget::unlimited())
}

pub fn delta_set_hilbert_with_budget(
    s: &AffineSemigroup,
    budget: &Budget,
) -> Result<BTreeSet<u64>> {
    match DeltaChainState::start(s, budget)? {
        None => Ok(BTreeSet::new()),
        Some(mut state) => {
            state.run(budget)?;
            Ok(state.delta)
        }
    }
}

pub fn delta_set_grobner(s: &AffineSemigroup) -> Result<BTreeSet<u64>> {
    delta_set_grobner_with_budget(s, &Budget::unlimited())
}

pub fn delta_set_grobner_with_budget(
    s: &AffineSemigroup,
    budget: &Budget,
) -> Result<BTreeSet<u64>> {
    let basis = homogenized_lex_basis(s, budget)?;
    Ok(basis
        .binomials()
        .iter()
        .filter(|b| b.plus()[0] > 0 && b.minus()[0] == 0)
        .map(|b| b.plus()[0])
        .collect())
}

/// Reduced lex Gröbner basis, extra variable greatest, of the toric ideal of
/// the homogenized semigroup, started from its elimination basis.
pub fn homogenized_lex_basis(s: &AffineSemigroup, budget: &Budget) -> Result<BinomialIdealBasis> {
    let h = homogenize(s)?;
    let order = TermOrder::lex(s.num_atoms() + 1);
    let gens = toric_ideal_with_budget(h.semigroup(), budget)?;
    Ok(reduce_basis(&buchberger_saturated(
        gens.binomials(),
        &order,
        budget,
    )?))
}
