mod common;

use std::collections::BTreeSet;

use common::models;
use pgroup_core::linalg::Echelon;
use pgroup_core::subgroup::{
    abelian_invariants, central_intersection, derived_subgroup, lower_central_term, subgroup_closure,
    subgroup_exponent,
};
use pgroup_core::testing::all_elements;
use pgroup_core::{NormalWord, PcPresentation, PcSubgroup};
use proptest::prelude::*;

/// Elements of `<seeds>` (or its normal closure) by closing under products
/// and conjugation, without any echelon machinery.
fn brute_closure(pc: &PcPresentation, seeds: &[NormalWord], normal: bool) -> BTreeSet<NormalWord> {
    let mut set = BTreeSet::from([pc.identity()]);
    let mut gens: Vec<NormalWord> = seeds.to_vec();
    loop {
        if normal {
            let conj: Vec<NormalWord> = gens
                .iter()
                .flat_map(|x| (0..pc.ngens()).map(move |g| (x, g)))
                .map(|(x, g)| pc.conjugate(x, &pc.gen(g)))
                .collect();
            gens.extend(conj);
        }
        let mut next = set.clone();
        for x in &set {
            for g in &gens {
                next.insert(pc.multiply(x, g));
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
        gens = set.iter().cloned().collect();
    }
}

fn elements_of(pc: &PcPresentation, sub: &PcSubgroup) -> BTreeSet<NormalWord> {
    all_elements(pc).into_iter().filter(|x| sub.contains(pc, x)).collect()
}

fn heisenberg() -> PcPresentation {
    models().remove(0).pc_presentation()
}

#[test]
fn heisenberg_examples() {
    let pc = heisenberg();
    assert!(subgroup_closure(&pc, &[], true).is_trivial());
    let centre = subgroup_closure(&pc, &[pc.gen(2)], true);
    assert_eq!(centre.order_exponent(), 1);
    let a1 = subgroup_closure(&pc, &[pc.gen(0)], true);
    assert_eq!(a1.order_exponent(), 2);
    assert_eq!(elements_of(&pc, &a1), brute_closure(&pc, &[pc.gen(0)], true));
    assert!(a1.contains(&pc, &pc.gen(2)) && !a1.contains(&pc, &pc.gen(1)));

    let derived = derived_subgroup(&pc);
    assert_eq!(derived, centre);
    assert_eq!(lower_central_term(&pc, 2), centre);
    assert!(lower_central_term(&pc, 3).is_trivial());
    assert_eq!(central_intersection(&pc, &centre, &derived).unwrap(), centre);
    assert!(central_intersection(&pc, &PcSubgroup::trivial(), &derived).unwrap().is_trivial());

    assert_eq!(abelian_invariants(&pc, &centre).unwrap(), vec![3]);
    assert_eq!(subgroup_exponent(&pc, &centre).unwrap(), 3);
    assert!(abelian_invariants(&pc, &PcSubgroup::trivial()).unwrap().is_empty());
    assert_eq!(subgroup_exponent(&pc, &PcSubgroup::trivial()).unwrap(), 1);
}

#[test]
fn abelian_group_has_trivial_derived_subgroup() {
    let pc = models().remove(2).pc_presentation().truncate(1).unwrap();
    assert!(derived_subgroup(&pc).is_trivial());
}

#[test]
fn closures_match_brute_force_on_every_cyclic_seed() {
    for model in models() {
        let pc = model.pc_presentation();
        for x in all_elements(&pc).iter().step_by(3) {
            for normal in [false, true] {
                let sub = subgroup_closure(&pc, std::slice::from_ref(x), normal);
                let brute = brute_closure(&pc, std::slice::from_ref(x), normal);
                assert_eq!(elements_of(&pc, &sub), brute, "{}", model.name);
                assert_eq!(brute.len(), (model.p as usize).pow(sub.order_exponent() as u32));
            }
        }
    }
}

#[test]
fn lower_central_terms_match_brute_force() {
    for model in models() {
        let pc = model.pc_presentation();
        let mut term: BTreeSet<NormalWord> = all_elements(&pc).into_iter().collect();
        for k in 1..6 {
            assert_eq!(elements_of(&pc, &lower_central_term(&pc, k)), term, "{} gamma_{k}", model.name);
            let comms: Vec<NormalWord> = term
                .iter()
                .flat_map(|x| all_elements(&pc).into_iter().map(move |y| (x.clone(), y)))
                .map(|(x, y)| pc.commutator(&x, &y))
                .collect();
            term = brute_closure(&pc, &comms, true);
        }
    }
}

/// Counts elements with `x^(p^k) = 1` to read off abelian invariants.
fn brute_invariants(pc: &PcPresentation, elems: &BTreeSet<NormalWord>) -> Vec<u128> {
    let p = pc.prime() as u128;
    let mut counts = Vec::new();
    let mut k = 0;
    loop {
        let c = elems
            .iter()
            .filter(|x| pc.power(x, p.pow(k) as i64).is_identity())
            .count();
        counts.push(c);
        if c == elems.len() {
            break;
        }
        k += 1;
    }
    // |{x : x^(p^k) = 1}| = prod p^min(e_i, k), so consecutive ratios count
    // the factors of order at least p^k
    let mut at_least: Vec<u32> = counts
        .windows(2)
        .map(|w| ((w[1] / w[0]) as f64).log(p as f64).round() as u32)
        .collect();
    at_least.push(0);
    let mut out = Vec::new();
    for k in (0..at_least.len() - 1).rev() {
        for _ in 0..at_least[k] - at_least[k + 1] {
            out.push(p.pow(k as u32 + 1));
        }
    }
    out
}

#[test]
fn abelian_invariants_match_element_counts() {
    for model in models() {
        let pc = model.pc_presentation();
        for x in all_elements(&pc).iter().step_by(5) {
            for y in all_elements(&pc).iter().step_by(11) {
                if !pc.commutator(x, y).is_identity() {
                    continue;
                }
                let sub = subgroup_closure(&pc, &[x.clone(), y.clone()], false);
                let brute = brute_invariants(&pc, &elements_of(&pc, &sub));
                assert_eq!(abelian_invariants(&pc, &sub).unwrap(), brute, "{}", model.name);
            }
        }
    }
}

fn model_and_seeds() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (0..models().len()).prop_flat_map(|m| {
        let model = &models()[m];
        let (n, p) = (model.gens.len(), model.p);
        (
            Just(m),
            prop::collection::vec(prop::collection::vec(0..p, n), 0..4),
        )
    })
}

fn words(seeds: &[Vec<u32>]) -> Vec<NormalWord> {
    seeds.iter().cloned().map(NormalWord::from_exponents).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_independent_of_seed_order((m, seeds) in model_and_seeds(), normal: bool) {
        let pc = models()[m].pc_presentation();
        let forward = subgroup_closure(&pc, &words(&seeds), normal);
        let mut rev = words(&seeds);
        rev.reverse();
        prop_assert_eq!(&forward, &subgroup_closure(&pc, &rev, normal));
        prop_assert_eq!(elements_of(&pc, &forward), brute_closure(&pc, &words(&seeds), normal));
    }

    #[test]
    fn adding_a_seed_multiplies_the_order_by_a_power_of_p(
        (m, seeds) in model_and_seeds(),
        pick in any::<prop::sample::Index>(),
        normal: bool,
    ) {
        let pc = models()[m].pc_presentation();
        let elems = all_elements(&pc);
        let x = pick.get(&elems).clone();
        let old = subgroup_closure(&pc, &words(&seeds), normal);
        let mut more = words(&seeds);
        more.push(x.clone());
        let new = subgroup_closure(&pc, &more, normal);
        prop_assert!(new.order_exponent() >= old.order_exponent());
        prop_assert!(old.is_subgroup_of(&pc, &new));
        prop_assert_eq!(old.contains(&pc, &x), new.order_exponent() == old.order_exponent());
    }

    #[test]
    fn central_intersection_is_the_set_intersection((m, seeds) in model_and_seeds(), k in 0usize..3) {
        let pc = models()[m].pc_presentation();
        let elems = all_elements(&pc);
        let centre: Vec<NormalWord> = elems
            .iter()
            .filter(|x| (0..pc.ngens()).all(|g| pc.commutator(x, &pc.gen(g)).is_identity()))
            .cloned()
            .collect();
        let c = subgroup_closure(&pc, &centre[..centre.len().min(k + 1)], false);
        let d = subgroup_closure(&pc, &words(&seeds), false);
        let both = central_intersection(&pc, &c, &d).unwrap();
        prop_assert!(both.is_subgroup_of(&pc, &c) && both.is_subgroup_of(&pc, &d));
        let expected: BTreeSet<NormalWord> = elems
            .iter()
            .filter(|x| c.contains(&pc, x) && d.contains(&pc, x))
            .cloned()
            .collect();
        prop_assert_eq!(elements_of(&pc, &both), expected);
    }

    #[test]
    fn echelon_rows_are_independent_of_insertion_order(
        rows in prop::collection::vec(prop::collection::vec(0u32..5, 6), 0..8),
    ) {
        let build = |rows: &mut dyn Iterator<Item = Vec<u32>>| {
            let mut e = Echelon::new(5, 6);
            for r in rows {
                e.insert(r);
            }
            (0..6).map(|c| e.row(c).map(<[u32]>::to_vec)).collect::<Vec<_>>()
        };
        let forward = build(&mut rows.iter().cloned());
        let backward = build(&mut rows.iter().rev().cloned());
        prop_assert_eq!(forward, backward);
    }
}

#[test]
fn non_central_subgroup_is_rejected_by_central_intersection() {
    let pc = heisenberg();
    let sub = subgroup_closure(&pc, &[pc.gen(0)], false);
    assert!(central_intersection(&pc, &sub, &PcSubgroup::whole(&pc)).is_err());
}
