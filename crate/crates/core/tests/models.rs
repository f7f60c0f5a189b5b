mod common;

use common::*;
use partition_logic::automaton::automaton_from_states;
use partition_logic::fixtures::{BUG_LOGIC, L12_AM, L12_GUM, L12_LOGIC, PENTAGON_LOGIC};
use partition_logic::generate::{random_automaton, random_diagram, random_gum};
use partition_logic::gum::{gum_from_states, BLANK};
use partition_logic::logic::logics_isomorphic;
use partition_logic::sim::{predict, Experiment, Model};
use partition_logic::states::{
    enumerate_two_valued_states, is_separating, is_unital, partition_logic_from_states,
};
use partition_logic::translate::{automaton_to_gum, gum_to_automaton, verify_round_trip};
use partition_logic::{Gum, MealyAutomaton};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn l12_urn_and_automaton_share_their_logic() {
    let g = Gum::parse(L12_GUM).unwrap();
    let a = MealyAutomaton::parse(L12_AM).unwrap();
    let (lg, la) = (g.logic().unwrap(), a.logic().unwrap());
    assert_eq!(lg, la);
    let w = logics_isomorphic(&lg, &la).unwrap().unwrap();
    assert_eq!(w.ground_map, vec![0, 1, 2, 3, 4]);
}

#[test]
fn gum_to_automaton_reproduces_l12_automaton() {
    let g = Gum::parse(L12_GUM).unwrap();
    let (a, _) = gum_to_automaton(&g, None).unwrap();
    assert_eq!(a.to_string(), L12_AM);
    let (back, _) = automaton_to_gum(&a, None).unwrap();
    for u in g.ball_types() {
        for (c, i) in [("red", "0"), ("green", "1")] {
            assert_eq!(back.observe(u, i).unwrap(), g.observe(u, c).unwrap());
        }
    }
}

#[test]
fn synthesized_bug_gum_reproduces_colour_table() {
    let d = diagram(BUG_LOGIC);
    let s = enumerate_two_valued_states(&d);
    let g = gum_from_states(&d, &s).unwrap().gum;
    let corrected = bug_colors_corrected();
    for (row, state) in BUG_STATES.iter().enumerate() {
        let k = s
            .iter()
            .position(|m| *m == bits(state))
            .expect("table state enumerated");
        let ball = &g.ball_types()[k];
        let shown: Vec<u8> = g
            .colors()
            .iter()
            .map(|c| g.observe(ball, c).unwrap().parse().unwrap())
            .collect();
        assert_eq!(shown, corrected[row], "row {}", row + 1);
    }
}

#[test]
fn synthesis_fixed_point_for_fixture_logics() {
    for src in [L12_LOGIC, BUG_LOGIC, PENTAGON_LOGIC] {
        let d = diagram(src);
        let s = enumerate_two_valued_states(&d);
        assert!(is_separating(&s, &d));
        let target = partition_logic_from_states(&d, &s).unwrap();
        let g = gum_from_states(&d, &s).unwrap().gum;
        let a = automaton_from_states(&d, &s).unwrap();
        assert!(logics_isomorphic(&g.logic().unwrap(), &target)
            .unwrap()
            .is_some());
        assert!(logics_isomorphic(&a.logic().unwrap(), &target)
            .unwrap()
            .is_some());
        assert!(
            partition_logic::logic::diagrams_isomorphic(&g.logic().unwrap().diagram(), &d)
                .unwrap()
                .is_some()
        );
    }
}

#[test]
fn synthesized_automata_never_emit_blank_and_forget_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let d = random_diagram(&mut rng, 10, 5);
        let s = enumerate_two_valued_states(&d);
        if s.is_empty() {
            continue;
        }
        let a = automaton_from_states(&d, &s).unwrap();
        let mut image = std::collections::BTreeSet::new();
        for st in 0..a.states().len() {
            for i in 0..a.inputs().len() {
                assert_ne!(a.outputs()[a.lambda(st, i)], BLANK);
                image.insert(a.delta(st, i));
            }
        }
        assert_eq!(image.len(), 1);
    }
}

#[test]
fn synthesized_models_match_state_logic_when_separating_and_unital() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    for _ in 0..300 {
        let d = random_diagram(&mut rng, 10, 5);
        let s = enumerate_two_valued_states(&d);
        if s.is_empty() || !is_separating(&s, &d) || !is_unital(&s, &d) {
            continue;
        }
        checked += 1;
        let target = partition_logic_from_states(&d, &s).unwrap();
        let g = gum_from_states(&d, &s).unwrap().gum;
        assert!(logics_isomorphic(&g.logic().unwrap(), &target)
            .unwrap()
            .is_some());
    }
    assert!(checked > 20, "only {checked} separating samples");
}

#[test]
fn translations_preserve_logics() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..300 {
        let g = random_gum(&mut rng, 6, 6, 6);
        assert!(verify_round_trip(&g));
        let (a, _) = gum_to_automaton(&g, None).unwrap();
        assert!(logics_isomorphic(&a.logic().unwrap(), &g.logic().unwrap())
            .unwrap()
            .is_some());

        let a = random_automaton(&mut rng, 6, 6, 6);
        let (g, _) = automaton_to_gum(&a, None).unwrap();
        assert!(logics_isomorphic(&g.logic().unwrap(), &a.logic().unwrap())
            .unwrap()
            .is_some());
    }
}

#[test]
fn prediction_is_invariant_under_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let g = random_gum(&mut rng, 6, 4, 5);
        let (a, map) = gum_to_automaton(&g, None).unwrap();
        let n = g.ball_types().len();
        let raw: Vec<u32> = (0..n).map(|_| rng.gen_range(1..5)).collect();
        let total: u32 = raw.iter().sum();
        let prior: Vec<_> = raw
            .iter()
            .map(|&x| partition_logic::Rational::new(x.into(), total.into()))
            .collect();
        for c in g.colors() {
            let eg = Experiment::new(Model::Gum(g.clone()), prior.clone(), c, 0, 0).unwrap();
            let input = map.context.forward(c).unwrap();
            let ea =
                Experiment::new(Model::Automaton(a.clone()), prior.clone(), input, 0, 0).unwrap();
            let pg: Vec<_> = predict(&eg)
                .into_iter()
                .map(|(v, p)| (map.symbol.forward(&v).unwrap().to_string(), p))
                .collect();
            assert_eq!(pg, predict(&ea));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn color_partitions_cover_ball_types(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gum(&mut rng, 8, 4, 4);
        for c in g.colors() {
            let p = g.color_partition(c).unwrap();
            let mut all: Vec<usize> = p.iter().flatten().copied().collect();
            prop_assert!(p.iter().all(|cell| !cell.is_empty()));
            all.sort_unstable();
            prop_assert_eq!(all, (0..g.ball_types().len()).collect::<Vec<_>>());
        }
        let pl = g.logic().unwrap();
        prop_assert_eq!(pl.ground(), g.ball_types());
    }

    #[test]
    fn constancy_holds_when_colors_use_disjoint_symbols(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nu = rng.gen_range(1..6);
        let nc = rng.gen_range(1..4);
        // Color c only uses symbols 3c, 3c+1, 3c+2.
        let symbols: Vec<String> = (0..3 * nc).map(|v| v.to_string()).collect();
        let lookup = (0..nu).map(|_| (0..nc).map(|c| 3 * c + rng.gen_range(0..3)).collect()).collect();
        let g = Gum::from_indices(
            (0..nu).map(|u| u.to_string()).collect(),
            (0..nc).map(|c| format!("c{c}")).collect(),
            symbols,
            lookup,
        ).unwrap();
        prop_assert!(g.satisfies_constancy());
    }

    #[test]
    fn run_is_compositional(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automaton(&mut rng, 6, 3, 4);
        let s0 = rng.gen_range(0..a.states().len());
        let w1: Vec<usize> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..a.inputs().len())).collect();
        let w2: Vec<usize> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..a.inputs().len())).collect();
        let whole: Vec<usize> = w1.iter().chain(&w2).copied().collect();
        let (o1, mid) = a.run_indices(s0, &w1);
        let (o2, end) = a.run_indices(mid, &w2);
        let (o, end2) = a.run_indices(s0, &whole);
        prop_assert_eq!(o, [o1, o2].concat());
        prop_assert_eq!(end, end2);
    }

    #[test]
    fn input_partitions_cover_states(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_automaton(&mut rng, 8, 4, 4);
        for i in a.inputs() {
            let p = a.input_partition(i).unwrap();
            let mut all: Vec<usize> = p.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..a.states().len()).collect::<Vec<_>>());
        }
    }
}
