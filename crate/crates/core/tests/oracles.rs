//! Worked examples checked against independent brute-force enumeration.

mod common;

use std::collections::BTreeSet;

use common::*;
use semifact::catenary::{catenary_dynamic, catenary_naive, mwst, TreeMemo};
use semifact::delta::{delta_set_grobner, delta_set_hilbert};
use semifact::grobner::{normal_form, toric_ideal, Binomial, BinomialIdealBasis, TermOrder};
use semifact::hilbert::{graver_basis, minimal_solutions, DiophantineSystem, Relation};
use semifact::presentation::{betti_elements, delta_bounds, minimal_presentation};
use semifact::tame::{block_monoid, minimals_principal_ideal, tame_i_full, FullSemigroupWitness};
use semifact::{dist, AffineSemigroup, CongruenceSystem, FactVector};

fn facts_of(s: &AffineSemigroup, gamma: &[u64]) -> BTreeSet<Vec<u64>> {
    s.factorizations(&ev(gamma))
        .unwrap()
        .facts()
        .iter()
        .map(|z| z.to_vec())
        .collect()
}

fn vecs(v: &[FactVector]) -> BTreeSet<Vec<u64>> {
    v.iter().map(|z| z.to_vec()).collect()
}

/// Length sets of every `g <= bound` of a numerical semigroup, by dynamic
/// programming over "remove one atom".
fn length_sets_up_to(atoms: &[u64], bound: u64) -> Vec<BTreeSet<u64>> {
    let mut sets = vec![BTreeSet::new(); bound as usize + 1];
    sets[0].insert(0);
    for g in 1..=bound as usize {
        let mut here = BTreeSet::new();
        for &a in atoms {
            if a as usize <= g {
                here.extend(sets[g - a as usize].iter().map(|l| l + 1));
            }
        }
        sets[g] = here;
    }
    sets
}

fn successive_gaps(lengths: &BTreeSet<u64>) -> BTreeSet<u64> {
    let l: Vec<u64> = lengths.iter().copied().collect();
    l.windows(2).map(|w| w[1] - w[0]).collect()
}

#[test]
fn redundant_generators_are_dropped() {
    let s = AffineSemigroup::numerical(&[3, 4, 5, 7]).unwrap();
    assert_eq!(atoms_of(&s), vec![vec![3], vec![4], vec![5]]);
    assert!(!brute_factorizations(&[vec![3], vec![4], vec![5]], &[7]).is_empty());
}

#[test]
fn membership_matches_enumeration() {
    let s = AffineSemigroup::numerical(&[3, 4, 5]).unwrap();
    let atoms = atoms_of(&s);
    for g in 0..40 {
        let expected = !brute_factorizations(&atoms, &[g]).is_empty();
        assert_eq!(s.contains(&ev(&[g])).unwrap(), expected, "{g}");
    }
    assert!(!s.contains(&ev(&[2])).unwrap());
}

#[test]
fn factorizations_of_450() {
    let s = AffineSemigroup::numerical(&[11, 36, 39]).unwrap();
    let got = facts_of(&s, &[450]);
    assert!(got.contains(&vec![6, 2, 8]));
    assert!(got.contains(&vec![24, 3, 2]));
    // Bounded triple loop, independent of the recursive oracle.
    let mut expected = BTreeSet::new();
    for a in 0..=450 / 11 {
        for b in 0..=450 / 36 {
            for c in 0..=450 / 39 {
                if 11 * a + 36 * b + 39 * c == 450 {
                    expected.insert(vec![a, b, c]);
                }
            }
        }
    }
    assert_eq!(got, expected);
}

#[test]
fn factorizations_match_brute_force_on_random_semigroups() {
    let mut rng = rng(11);
    for _ in 0..25 {
        let s = random_numerical(&mut rng, 5, 50);
        let atoms = atoms_of(&s);
        for g in 0..=150 {
            assert_eq!(
                facts_of(&s, &[g]),
                brute_factorizations(&atoms, &[g]),
                "{atoms:?} at {g}"
            );
        }
    }
    for _ in 0..15 {
        let s = random_affine2(&mut rng, 4, 6);
        let atoms = atoms_of(&s);
        for x in 0..=12 {
            for y in 0..=12 {
                assert_eq!(facts_of(&s, &[x, y]), brute_factorizations(&atoms, &[x, y]));
            }
        }
    }
}

#[test]
fn length_sets_and_deltas_of_17_33_53_71() {
    let s = AffineSemigroup::numerical(&[17, 33, 53, 71]).unwrap();
    let sets = length_sets_up_to(&[17, 33, 53, 71], 2000);
    for g in [266u64, 283, 300] {
        let expected = &sets[g as usize];
        assert_eq!(
            s.length_set(&ev(&[g])).unwrap(),
            expected.iter().copied().collect::<Vec<_>>()
        );
        let delta = s.delta_of_element(&ev(&[g])).unwrap();
        assert_eq!(delta, successive_gaps(expected));
        assert!(delta.contains(&6), "{g}: {delta:?}");
    }
    let l266: Vec<u64> = s.length_set(&ev(&[266])).unwrap();
    assert!(l266.windows(2).any(|w| w[1] - w[0] == 6));

    // The whole delta set against the union over every element up to 2000.
    let union: BTreeSet<u64> = sets.iter().flat_map(successive_gaps).collect();
    let by_hilbert = delta_set_hilbert(&s).unwrap();
    assert_eq!(by_hilbert, union);
    assert_eq!(delta_set_grobner(&s).unwrap(), union);
    assert!(union.contains(&6));

    let (min, max) = delta_bounds(&s).unwrap().unwrap();
    assert_eq!(min, *union.iter().next().unwrap());
    assert_eq!(max, *union.iter().next_back().unwrap());
    assert!(6 >= min && 6 <= max && 6 % min == 0);
}

#[test]
fn small_deltas() {
    let s = AffineSemigroup::numerical(&[3, 4, 5]).unwrap();
    assert_eq!(s.length_set(&ev(&[8])).unwrap(), vec![2]);
    assert!(s.delta_of_element(&ev(&[8])).unwrap().is_empty());
    assert_eq!(s.delta_of_element(&ev(&[9])).unwrap(), BTreeSet::from([1]));
    assert_eq!(s.delta_of_element(&ev(&[10])).unwrap(), BTreeSet::from([1]));

    let s = AffineSemigroup::numerical(&[2, 3]).unwrap();
    let sets = length_sets_up_to(&[2, 3], 200);
    let union: BTreeSet<u64> = sets.iter().flat_map(successive_gaps).collect();
    assert_eq!(union, BTreeSet::from([1]));
    assert_eq!(delta_set_grobner(&s).unwrap(), union);
    assert_eq!(delta_set_hilbert(&s).unwrap(), union);
}

#[test]
fn distances() {
    let d = |a: &[u64], b: &[u64]| {
        dist(&FactVector::from(a.to_vec()), &FactVector::from(b.to_vec())).unwrap()
    };
    assert_eq!(d(&[1, 0, 1], &[0, 2, 0]), 2);
    assert_eq!(d(&[9, 7, 0], &[0, 0, 9]), 16);
    assert_eq!(d(&[4, 4, 4], &[4, 4, 4]), 0);
    assert_eq!(
        d(&[1, 0, 1], &[0, 2, 0]),
        brute_dist(&[1, 0, 1], &[0, 2, 0])
    );
    assert!(dist(&FactVector::from(vec![1]), &FactVector::from(vec![1, 2])).is_err());
}

/// Kernel vectors of `atoms` with entries up to `bound`, kept when no other
/// kernel vector sits below them in both halves.
fn brute_graver(atoms: &[Vec<u64>], bound: u64) -> BTreeSet<(Vec<u64>, Vec<u64>)> {
    let k = atoms.len();
    let mut doubled: Vec<Vec<u64>> = atoms.to_vec();
    doubled.extend(atoms.iter().cloned());
    let mut matrix: Vec<Vec<i64>> = vec![Vec::new(); atoms[0].len()];
    for (j, a) in doubled.iter().enumerate() {
        for (r, &x) in a.iter().enumerate() {
            matrix[r].push(if j < k { x as i64 } else { -(x as i64) });
        }
    }
    brute_minimal(brute_solutions(&matrix, bound))
        .into_iter()
        .map(|v| (v[..k].to_vec(), v[k..].to_vec()))
        .filter(|(z, w)| z.iter().zip(w).all(|(a, b)| a.min(b) == &0) && z > w)
        .collect()
}

#[test]
fn graver_bases_against_kernel_enumeration() {
    let s = AffineSemigroup::numerical(&[2, 3]).unwrap();
    let got: BTreeSet<(Vec<u64>, Vec<u64>)> = graver_basis(&s)
        .unwrap()
        .pairs()
        .iter()
        .map(|(z, w)| (z.to_vec(), w.to_vec()))
        .collect();
    assert_eq!(got, BTreeSet::from([(vec![3, 0], vec![0, 2])]));
    assert_eq!(got, brute_graver(&atoms_of(&s), 6));

    let s = AffineSemigroup::numerical(&[3, 4, 5]).unwrap();
    let got: BTreeSet<(Vec<u64>, Vec<u64>)> = graver_basis(&s)
        .unwrap()
        .pairs()
        .iter()
        .map(|(z, w)| (z.to_vec(), w.to_vec()))
        .collect();
    assert_eq!(got, brute_graver(&atoms_of(&s), 5));
    for listed in [
        (vec![1, 0, 1], vec![0, 2, 0]),
        (vec![1, 3, 0], vec![0, 0, 3]),
        (vec![2, 1, 0], vec![0, 0, 2]),
        (vec![3, 0, 0], vec![0, 1, 1]),
        (vec![4, 0, 0], vec![0, 3, 0]),
        (vec![5, 0, 0], vec![0, 0, 3]),
    ] {
        assert!(got.contains(&listed), "{listed:?}");
    }
}

#[test]
fn minimal_solutions_of_small_inequalities() {
    let sys = DiophantineSystem::new(vec![vec![3, 5, 7]], 3, Relation::Geq, vec![3], None).unwrap();
    let got = vecs(&minimal_solutions(&sys).unwrap());
    assert_eq!(
        got,
        BTreeSet::from([vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
    );

    let sys = DiophantineSystem::new(vec![vec![1]], 1, Relation::Geq, vec![1], None).unwrap();
    assert_eq!(
        vecs(&minimal_solutions(&sys).unwrap()),
        BTreeSet::from([vec![1]])
    );

    // Minimal factorizations of elements of 3 + <3,5,7>: solve
    // (A | -A)(x; y) = 3, project onto x and keep the minimal ones.
    let sys = DiophantineSystem::new(
        vec![vec![3, 5, 7, -3, -5, -7]],
        6,
        Relation::Eq,
        vec![3],
        None,
    )
    .unwrap();
    let projected: Vec<Vec<u64>> = minimal_solutions(&sys)
        .unwrap()
        .iter()
        .map(|v| v[..3].to_vec())
        .collect();
    let got: BTreeSet<Vec<u64>> = brute_minimal(projected).into_iter().collect();
    let expected = BTreeSet::from([vec![0, 0, 2], vec![0, 1, 1], vec![0, 2, 0], vec![1, 0, 0]]);
    assert_eq!(got, expected);

    let atoms = [vec![3], vec![5], vec![7]];
    let in_ideal = |x: &Vec<u64>| {
        let g = image(&atoms, x)[0];
        g >= 3 && !brute_factorizations(&atoms, &[g - 3]).is_empty()
    };
    let brute: BTreeSet<Vec<u64>> = brute_minimal(
        vectors_up_to_length(3, 4)
            .into_iter()
            .filter(in_ideal)
            .collect(),
    )
    .into_iter()
    .collect();
    assert_eq!(brute, expected);
}

fn z3_block_monoid() -> FullSemigroupWitness {
    block_monoid(&[3], Some(&[vec![1], vec![2]])).unwrap()
}

#[test]
fn block_monoid_of_z3() {
    let f = z3_block_monoid();
    let atoms = atoms_of(f.semigroup());
    // Minimal nonzero solutions of x + 2y = 0 mod 3 in a box.
    let mut sols = Vec::new();
    for x in 0..=6u64 {
        for y in 0..=6u64 {
            if (x + 2 * y) % 3 == 0 && x + y > 0 {
                sols.push(vec![x, y]);
            }
        }
    }
    assert_eq!(atoms, brute_minimal(sols));
    assert_eq!(atoms, vec![vec![0, 3], vec![1, 1], vec![3, 0]]);

    assert_eq!(
        atoms_of(block_monoid(&[2], Some(&[vec![1]])).unwrap().semigroup()),
        vec![vec![2]]
    );
}

#[test]
fn principal_ideal_minimals_in_the_z3_block_monoid() {
    let f = z3_block_monoid();
    let atoms = atoms_of(f.semigroup());
    let got = vecs(&minimals_principal_ideal(&f, &ev(&[1, 1])).unwrap());
    // Atoms are sorted (0,3), (1,1), (3,0): the listed answers are the
    // single (1,1) and the pair (3,0) + (0,3).
    assert_eq!(got, BTreeSet::from([vec![0, 1, 0], vec![1, 0, 1]]));

    let brute: Vec<Vec<u64>> = vectors_up_to_length(3, 4)
        .into_iter()
        .filter(|x| {
            let g = image(&atoms, x);
            g[0] >= 1 && g[1] >= 1
        })
        .collect();
    assert_eq!(got, brute_minimal(brute).into_iter().collect());
}

#[test]
fn tame_degree_at_the_mixed_atom_of_the_z3_block_monoid() {
    let f = z3_block_monoid();
    let atoms = atoms_of(f.semigroup());
    let i = atoms.iter().position(|a| a == &vec![1, 1]).unwrap();
    assert_eq!(tame_i_full(&f, i).unwrap(), 3);
    assert_eq!(brute_tame_i(&atoms, i, 6), 3);
    // The only minimal z avoiding (1,1) is (0,3) + (3,0); its element (3,3)
    // otherwise factors only as three copies of (1,1).
    let facts: Vec<Vec<u64>> = brute_factorizations(&atoms, &[3, 3]).into_iter().collect();
    assert_eq!(facts, vec![vec![0, 3, 0], vec![1, 0, 1]]);
    assert_eq!(brute_tame_at(&facts, i), 3);

    let n =
        FullSemigroupWitness::from_semigroup(&AffineSemigroup::numerical(&[1]).unwrap()).unwrap();
    assert_eq!(tame_i_full(&n, 0).unwrap(), 0);
    assert_eq!(
        vecs(&minimals_principal_ideal(&n, &ev(&[5])).unwrap()),
        BTreeSet::from([vec![5]])
    );
}

#[test]
fn presentations_and_betti_elements() {
    let s = AffineSemigroup::numerical(&[2, 3]).unwrap();
    let p = minimal_presentation(&s).unwrap();
    let rel: Vec<(Vec<u64>, Vec<u64>)> = p
        .relations()
        .iter()
        .map(|(z, w)| (z.to_vec(), w.to_vec()))
        .collect();
    assert_eq!(rel, vec![(vec![3, 0], vec![0, 2])]);
    assert_eq!(betti_elements(&s).unwrap(), vec![ev(&[6])]);

    let s = AffineSemigroup::numerical(&[3, 4, 5]).unwrap();
    assert_eq!(
        betti_elements(&s).unwrap(),
        vec![ev(&[8]), ev(&[9]), ev(&[10])]
    );
    assert_eq!(delta_bounds(&s).unwrap(), Some((1, 1)));

    let free = AffineSemigroup::new(vec![ev(&[1, 0]), ev(&[0, 1])]).unwrap();
    assert!(minimal_presentation(&free).unwrap().is_empty());
    assert!(betti_elements(&free).unwrap().is_empty());
    assert_eq!(delta_bounds(&free).unwrap(), None);
    assert!(toric_ideal(&free).unwrap().is_empty());
}

#[test]
fn toric_ideal_of_2_3_is_principal() {
    let s = AffineSemigroup::numerical(&[2, 3]).unwrap();
    let order = TermOrder::lex(2);
    let expected = Binomial::new(vec![3, 0].into(), vec![0, 2].into(), &order).unwrap();
    let gb = toric_ideal(&s).unwrap();
    assert!(semifact::grobner::same_ideal(gb.binomials(), &[expected], 2).unwrap());
}

/// Binomials `y^z - y^w` of total degree at most `deg` with `Az = Aw`, by
/// enumerating factorizations of every element reached.
fn small_kernel_binomials(atoms: &[Vec<u64>], deg: u64, order: &TermOrder) -> Vec<Binomial> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for x in vectors_up_to_length(atoms.len(), deg) {
        let g = image(atoms, &x);
        if !seen.insert(g.clone()) {
            continue;
        }
        let facts: Vec<Vec<u64>> = brute_factorizations(atoms, &g).into_iter().collect();
        for z in &facts {
            for w in &facts {
                if z < w {
                    out.push(Binomial::new(z.clone().into(), w.clone().into(), order).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn grlex_basis_of_3_4_5_contains_the_kernel() {
    let s = AffineSemigroup::numerical(&[3, 4, 5]).unwrap();
    let order = TermOrder::grlex(3);
    let gens: Vec<Binomial> = minimal_presentation(&s)
        .unwrap()
        .relations()
        .iter()
        .map(|(z, w)| Binomial::new(z.clone(), w.clone(), &order).unwrap())
        .collect();
    let gb: BinomialIdealBasis = semifact::grobner::buchberger(&gens, &order).unwrap();
    let atoms = atoms_of(&s);
    for (z, w) in brute_graver(&atoms, 5) {
        let f = Binomial::new(z.into(), w.into(), &order).unwrap();
        assert!(normal_form(&f, &gb).is_zero(), "{f}");
    }
    for f in small_kernel_binomials(&atoms, 6, &order) {
        assert!(normal_form(&f, &gb).is_zero(), "{f}");
    }
}

#[test]
fn catenary_against_threshold_search() {
    let s = AffineSemigroup::numerical(&[11, 36, 39]).unwrap();
    let atoms = atoms_of(&s);
    for g in [351u64, 450] {
        let facts: Vec<Vec<u64>> = brute_factorizations(&atoms, &[g]).into_iter().collect();
        assert_eq!(brute_catenary(&facts), 16);
        assert_eq!(catenary_naive(&s, &ev(&[g])).unwrap(), 16);
        assert_eq!(catenary_dynamic(&s, &ev(&[g])).unwrap(), 16);
    }
    let mut rng = rng(5);
    for _ in 0..15 {
        let s = random_numerical(&mut rng, 4, 25);
        let atoms = atoms_of(&s);
        for g in 0..=120 {
            let facts: Vec<Vec<u64>> = brute_factorizations(&atoms, &[g]).into_iter().collect();
            if facts.is_empty() {
                continue;
            }
            assert_eq!(
                catenary_naive(&s, &ev(&[g])).unwrap(),
                brute_catenary(&facts),
                "{atoms:?} at {g}"
            );
        }
    }
}

#[test]
fn small_spanning_trees() {
    let s = AffineSemigroup::numerical(&[3, 4, 5]).unwrap();
    let mut memo = TreeMemo::new(&s).unwrap();
    let tree = mwst(&s, &ev(&[8]), &mut memo).unwrap();
    assert_eq!(tree.vertices().len(), 2);
    assert_eq!(tree.edges().len(), 1);
    let (a, b) = tree.edges()[0].endpoints();
    assert_eq!((a.to_vec(), b.to_vec()), (vec![0, 2, 0], vec![1, 0, 1]));
    assert_eq!(tree.edges()[0].weight(), 2);

    let tree = mwst(&s, &ev(&[3]), &mut memo).unwrap();
    assert_eq!((tree.vertices().len(), tree.edges().len()), (1, 0));
    assert_eq!(
        catenary_dynamic(&s, &ev(&[9])).unwrap(),
        brute_dist(&[3, 0, 0], &[0, 1, 1])
    );
    assert_eq!(catenary_dynamic(&s, &ev(&[0])).unwrap(), 0);
    assert_eq!(catenary_naive(&s, &ev(&[3])).unwrap(), 0);

    let s = AffineSemigroup::numerical(&[11, 36, 39]).unwrap();
    let mut memo = TreeMemo::new(&s).unwrap();
    let tree = mwst(&s, &ev(&[450]), &mut memo).unwrap();
    assert_eq!(tree.bottleneck(), 16);
    let heavy = tree.edges().iter().find(|e| e.weight() == 16).unwrap();
    let (a, b) = heavy.endpoints();
    let common: Vec<u64> = a.iter().zip(b.iter()).map(|(x, y)| *x.min(y)).collect();
    let strip = |v: &FactVector| {
        v.iter()
            .zip(&common)
            .map(|(x, c)| x - c)
            .collect::<Vec<u64>>()
    };
    let mut pair = [strip(a), strip(b)];
    pair.sort();
    assert_eq!(pair, [vec![0, 0, 9], vec![9, 7, 0]]);
}

#[test]
fn congruence_witness_round_trip() {
    // x + y even: atoms (2,0), (1,1), (0,2); tame degree 2.
    let sys = CongruenceSystem::from_rows(vec![vec![1, 1]], vec![2]).unwrap();
    let f = FullSemigroupWitness::new(sys).unwrap();
    let atoms = atoms_of(f.semigroup());
    assert_eq!(atoms, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    let best = (0..atoms.len())
        .map(|i| brute_tame_i(&atoms, i, 6))
        .max()
        .unwrap();
    assert_eq!(semifact::tame::tame_full(&f).unwrap(), best);
    assert_eq!(best, 2);
}
