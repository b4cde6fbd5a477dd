//! Invariants over seeded random inputs.

use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;

use nssets::colimit::{
    complement_full, coproduct, is_abyss, is_cartesian, is_eden, product_with_interval, pushout, Subcomplex,
};
use nssets::corpus::{random_eden, random_map, random_poset, random_set, random_subcomplex, rng};
use nssets::delta::Operator;
use nssets::desing::{desingularize, desingularize_with, TieBreak};
use nssets::homology::{chains, euler_characteristic, homology};
use nssets::iso::are_isomorphic;
use nssets::poset::{is_sieve, nerve, pc, poset_iso, sharp};
use nssets::sset::{simplex, SimpMap};
use nssets::strom::{cobase_change_strom, strom_from_barratt_eden, strom_sd2, verify_strom};
use nssets::subdivision::{b_map, sd};
use nssets::{FinSimpSet, NormalSimplex, SimplexId};

fn set(seed: u64, nonsingular: bool) -> Arc<FinSimpSet> {
    Arc::new(random_set(&mut rng(seed), 2, 8, nonsingular))
}

fn small(seed: u64, nonsingular: bool) -> Arc<FinSimpSet> {
    Arc::new(random_set(&mut rng(seed), 2, 5, nonsingular))
}

fn same_map(f: &SimpMap, g: &SimpMap) -> bool {
    f.images() == g.images()
}

fn operator() -> impl Strategy<Value = Operator> {
    (0usize..4, 0usize..4, any::<prop::sample::Index>()).prop_map(|(m, n, i)| {
        let all = Operator::all(m, n);
        all[i.index(all.len())].clone()
    })
}

fn composable() -> impl Strategy<Value = (Operator, Operator, Operator)> {
    (0usize..4, 0usize..4, 0usize..4, 0usize..4, any::<[prop::sample::Index; 3]>()).prop_map(|(a, b, c, d, i)| {
        let pick = |m, n, k: &prop::sample::Index| {
            let all = Operator::all(m, n);
            all[k.index(all.len())].clone()
        };
        (pick(c, d, &i[0]), pick(b, c, &i[1]), pick(a, b, &i[2]))
    })
}

/// Every vertex-sequence-distinct way of acting on `x` by operators into its degree.
fn brute_embedded(x: &FinSimpSet, id: SimplexId) -> bool {
    let s = NormalSimplex::nondegenerate(id);
    let mut seen = HashSet::new();
    (0..=id.dim + 1).all(|m| Operator::all(m, id.dim).iter().all(|a| seen.insert(x.act(&s, a).unwrap())))
}

fn brute_injective(f: &SimpMap) -> bool {
    let x = f.source();
    let top = 2 * x.dim().unwrap_or(0) + 1;
    (0..=top).all(|n| {
        let mut seen = HashSet::new();
        x.simplices_of_degree(n).iter().all(|s| seen.insert(f.apply(s)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operators_factor_as_epi_then_mono(a in operator()) {
        let (epi, mono) = a.epi_mono_factor();
        prop_assert!(epi.is_surjective());
        prop_assert!(mono.is_injective());
        prop_assert_eq!(mono.compose(&epi).unwrap(), a.clone());
        let section = epi.minimal_section().unwrap();
        prop_assert!(epi.compose(&section).unwrap().is_identity());
    }

    #[test]
    fn operator_composition_is_associative((a, b, c) in composable()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn actions_are_associative_and_normal(seed in any::<u64>(), ns in any::<bool>()) {
        let x = set(seed, ns);
        prop_assert!(nssets::accept::check_associativity(&x).unwrap());
        prop_assert!(nssets::accept::check_normal_forms(&x).unwrap());
    }

    #[test]
    fn embeddedness_matches_brute_force(seed in any::<u64>(), ns in any::<bool>()) {
        let x = small(seed, ns);
        for id in x.ids() {
            prop_assert_eq!(x.is_embedded(id).unwrap(), brute_embedded(&x, id), "{:?}", id);
        }
        prop_assert_eq!(x.is_nonsingular(), x.ids().all(|id| brute_embedded(&x, id)));
    }

    #[test]
    fn degreewise_injectivity_matches_brute_force(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (x, y) = (small(s1, s1 % 2 == 0), small(s2, false));
        if let Some(f) = random_map(&mut rng(s1 ^ s2), &x, &y) {
            prop_assert_eq!(f.is_degreewise_injective(), brute_injective(&f));
        }
        let a = random_subcomplex(&mut rng(s2), &x);
        let (_, inc) = a.inclusion();
        prop_assert!(inc.is_degreewise_injective());
        prop_assert!(brute_injective(&inc));
    }

    #[test]
    fn nerves_recover_their_posets(seed in any::<u64>(), size in 1usize..7) {
        let p = random_poset(&mut rng(seed), size);
        let n = nerve(&p);
        prop_assert!(n.is_nonsingular());
        prop_assert!(poset_iso(&pc(&n), &p).is_some());
    }

    #[test]
    fn subcomplexes_are_sieves(seed in any::<u64>(), ns in any::<bool>()) {
        let x = set(seed, ns);
        let a = random_subcomplex(&mut rng(seed.wrapping_add(1)), &x);
        let members: Vec<usize> = a.members().iter().map(|&id| x.global_index(id)).collect();
        prop_assert!(is_sieve(&sharp(&x), &members));
    }

    #[test]
    fn chains_square_to_zero(seed in any::<u64>(), ns in any::<bool>()) {
        let x = set(seed, ns);
        prop_assert!(chains(&x).is_complex());
        prop_assert_eq!(homology(&x).euler_characteristic(), euler_characteristic(&x));
    }

    #[test]
    fn interval_product_identities(seed in any::<u64>(), ns in any::<bool>()) {
        let x = set(seed, ns);
        let p = product_with_interval(&x);
        let id = SimpMap::identity(&x);
        prop_assert!(same_map(&p.pr1.compose(&p.i0).unwrap(), &id));
        prop_assert!(same_map(&p.pr1.compose(&p.i1).unwrap(), &id));
        for (e, inc) in [(0, &p.i0), (1, &p.i1)] {
            let end = p.pr2.compose(inc).unwrap();
            prop_assert!(x.ids().all(|s| end.image(s).base == SimplexId::new(0, e)));
        }
        prop_assert!(p.i0.is_degreewise_injective() && p.i1.is_degreewise_injective());
    }

    #[test]
    fn eden_pullbacks_paste(seed in any::<u64>()) {
        // A' = f⁻¹(A) over an eden A ⊆ X: the right square is cartesian, and so
        // is the left one exactly when the outer one is.
        let x = set(seed, true);
        let a = random_eden(&mut rng(seed.wrapping_add(1)), &x);
        let y = small(seed.wrapping_add(2), false);
        let Some(f) = random_map(&mut rng(seed.wrapping_add(3)), &y, &x) else { return Ok(()) };
        let chi = nssets::colimit::eden_characteristic(&a).unwrap();
        let pt = Arc::new(simplex(0));
        let interval = chi.target().clone();
        let e0 = SimpMap::from_images(pt.clone(), interval.clone(), vec![vec![NormalSimplex::nondegenerate(SimplexId::new(0, 0))]]).unwrap();
        let (a_set, a_inc) = a.inclusion();
        let right = is_cartesian(&SimpMap::to_point(&a_set, &pt).unwrap(), &a_inc, &e0, &chi).unwrap();
        prop_assert!(right);
        for pre in [true, false] {
            let members: Vec<SimplexId> = y
                .ids()
                .filter(|&s| pre && a.contains(f.image(s).base))
                .collect();
            let b = Subcomplex::new(&y, members).unwrap();
            let (b_set, b_inc) = b.inclusion();
            let top = a.corestrict(&f.compose(&b_inc).unwrap(), &a_set).unwrap();
            let left = is_cartesian(&top, &b_inc, &a_inc, &f).unwrap();
            let outer = is_cartesian(&SimpMap::to_point(&b_set, &pt).unwrap(), &b_inc, &e0, &chi.compose(&f).unwrap()).unwrap();
            prop_assert_eq!(left, outer);
            if pre {
                prop_assert!(left);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn desingularization_is_a_reflection(seed in any::<u64>()) {
        let x = set(seed, false);
        let d = desingularize(&x).unwrap();
        prop_assert!(d.dx.is_nonsingular());
        prop_assert!(d.eta.is_degreewise_surjective());
        prop_assert!(desingularize(&d.dx).unwrap().eta.is_isomorphism());
        prop_assert!(poset_iso(&pc(&x), &pc(&d.dx)).is_some());
        for order in [TieBreak::First, TieBreak::Last] {
            let e = desingularize_with(&x, order).unwrap();
            prop_assert!(are_isomorphic(&e.dx, &d.dx).is_some());
        }
        if x.is_nonsingular() {
            prop_assert!(d.eta.is_isomorphism());
        }
    }

    #[test]
    fn edens_survive_cobase_change(s1 in any::<u64>(), s2 in any::<u64>()) {
        let x = set(s1, true);
        let a = random_eden(&mut rng(s2), &x);
        let c = small(s2, s2 % 2 == 0);
        let (a_set, a_inc) = a.inclusion();
        let Some(f) = random_map(&mut rng(s1 ^ s2), &a_set, &c) else { return Ok(()) };
        let p = pushout(&a_inc, &f).unwrap();
        prop_assert!(is_eden(&Subcomplex::image(&p.right_leg)));
    }

    #[test]
    fn doubling_along_edens_and_abysses_stays_nonsingular(s1 in any::<u64>(), s2 in any::<u64>()) {
        let x = set(s1, true);
        let e = random_eden(&mut rng(s2), &x);
        let a = complement_full(&e);
        prop_assert!(is_abyss(&a));
        for sub in [e, a] {
            let (_, inc) = sub.inclusion();
            prop_assert!(pushout(&inc, &inc).unwrap().apex.is_nonsingular());
        }
    }

    #[test]
    fn subdivision_invariants(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (x, y) = (set(s1, s1 % 3 == 0), small(s2, false));
        let sx = sd(&x).unwrap();
        prop_assert_eq!(homology(&sx), homology(&x));
        prop_assert_eq!(b_map(&x).unwrap().is_isomorphism(), x.is_nonsingular());
        let (xy, _) = coproduct(&[x.clone(), y.clone()]);
        let (sxy, _) = coproduct(&[sx, sd(&y).unwrap()]);
        prop_assert!(are_isomorphic(&sd(&xy).unwrap(), &sxy).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn strom_constructors_verify(s1 in any::<u64>(), s2 in any::<u64>()) {
        let x = small(s1, true);
        let eden = random_eden(&mut rng(s2), &x);
        prop_assert!(verify_strom(&strom_from_barratt_eden(&x, &eden).unwrap()).unwrap().passed());
        let a = random_subcomplex(&mut rng(s2.wrapping_add(1)), &x);
        prop_assert!(verify_strom(&strom_sd2(&x, &a).unwrap()).unwrap().passed());
    }

    #[test]
    fn strom_pushouts_are_homotopy_pushouts(s1 in any::<u64>(), s2 in any::<u64>()) {
        let x = small(s1, true);
        let a = random_subcomplex(&mut rng(s2), &x);
        let s = strom_sd2(&x, &a).unwrap();
        let c = small(s2, true);
        let Some(f) = random_map(&mut rng(s1 ^ s2), s.source(), &c) else { return Ok(()) };

        let hat = cobase_change_strom(&s, &f).unwrap();
        prop_assert!(verify_strom(&hat).unwrap().passed());
        let p = pushout(&s.k, &f).unwrap();
        prop_assert_eq!(homology(&p.apex), homology(&desingularize(&p.apex).unwrap().dx));

        // a two-stage composite: k followed by its own cobase change along k
        let twice = cobase_change_strom(&s, &s.k).unwrap();
        prop_assert!(verify_strom(&twice).unwrap().passed());
        let composite = twice.k.compose(&s.k).unwrap();
        let q = pushout(&composite, &f).unwrap();
        prop_assert_eq!(homology(&q.apex), homology(&desingularize(&q.apex).unwrap().dx));
    }
}
