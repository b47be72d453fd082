use dpl_core::agentfile::{parse_agent, write_agent};
use dpl_core::dynamics::{self, DynamicsConfig, Operation};
use dpl_core::oracle::{self, random_formula, random_program, trial_rng, ProgramShape};
use dpl_core::program::{max_consistent, max_consistent_strata, Attitude};
use dpl_core::semantics::{induced_model, models_equal, DEFAULT_WORLD_CAP};
use dpl_core::syntax::{parse_formula, print_formula, to_conj_clause, to_dnf, DnfFormula};
use dpl_core::PlanLibrary;
use proptest::prelude::*;
use rand::Rng;

fn truth_table(f: impl Fn(u64) -> bool, symbols: usize) -> Vec<bool> {
    (0..1u64 << symbols).map(f).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>(), depth in 0u32..6) {
        let vocab = oracle::vocabulary(3);
        let lib = PlanLibrary::empty();
        let phi = random_formula(&mut trial_rng(seed, 0), 3, &lib, depth);
        let text = print_formula(&phi, &vocab, &lib);
        prop_assert_eq!(parse_formula(&text, &vocab, &lib).unwrap(), phi);
    }

    #[test]
    fn normal_forms_keep_truth_tables(seed in any::<u64>(), symbols in 1usize..5) {
        let mut rng = trial_rng(seed, 1);
        let q = oracle::random_dnf(&mut rng, symbols);
        let f = q.to_formula();
        let back = to_dnf(&f).unwrap();
        prop_assert_eq!(
            truth_table(|v| back.holds(v), symbols),
            truth_table(|v| f.eval_prop(v), symbols)
        );
        let c = oracle::random_clause(&mut rng, symbols, 0, 3);
        let cf = c.to_formula();
        prop_assert_eq!(to_conj_clause(&cf).unwrap(), c.clone());
        prop_assert_eq!(
            truth_table(|v| c.holds(v), symbols),
            truth_table(|v| cf.eval_prop(v), symbols)
        );
    }

    #[test]
    fn clause_entailment_matches_truth_tables(seed in any::<u64>(), symbols in 1usize..5) {
        let mut rng = trial_rng(seed, 2);
        let post = oracle::random_consistent_clause(&mut rng, symbols, 0, 3);
        let q = oracle::random_dnf(&mut rng, symbols);
        let semantic = (0..1u64 << symbols).all(|v| !post.holds(v) || q.holds(v));
        prop_assert_eq!(post.entails(&q), semantic);
    }

    #[test]
    fn max_is_consistent_and_drawn_from_kept_strata(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 3);
        let ag = random_program(&mut rng, &ProgramShape::small(4));
        for base in [ag.beliefs(), ag.desires()] {
            let max = max_consistent_strata(base).unwrap();
            prop_assert!(max.literals.is_consistent());
            let mut from_kept = dpl_core::syntax::LiteralSet::new();
            for rank in &max.kept {
                for f in base.stratum(*rank) {
                    from_kept.extend(&to_conj_clause(f).unwrap());
                }
            }
            prop_assert_eq!(&from_kept, &max.literals);
            prop_assert_eq!(max_consistent(base).unwrap(), max.literals);
        }
    }

    #[test]
    fn agent_files_round_trip(seed in any::<u64>(), symbols in 1usize..5) {
        let ag = random_program(&mut trial_rng(seed, 4), &ProgramShape::small(symbols));
        prop_assert_eq!(parse_agent(&write_agent(&ag)).unwrap(), ag);
    }

    #[test]
    fn operations_leave_knowledge_alone(seed in any::<u64>(), op in 0usize..5) {
        let op = Operation::ALL[op];
        let mut rng = trial_rng(seed, 5);
        let ag = random_program(&mut rng, &ProgramShape::small(3));
        let phi = oracle::random_argument(&mut rng, &ag, op);
        if let Ok(next) = dynamics::apply(&ag, op, &phi, &DynamicsConfig::default()) {
            if op != Operation::Announce {
                prop_assert_eq!(next.knowledge(), ag.knowledge());
            }
            // contraction rewrites the rank-0 mirror of knowledge it touches
            let known = ag.knowledge_literals().unwrap().symbols();
            let touches_knowledge = op.is_contraction() && phi.symbols().iter().any(|s| known.contains(s));
            if !touches_knowledge {
                prop_assert!(next.is_coherent().unwrap());
            }
        }
    }

    #[test]
    fn revision_succeeds(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 6);
        let ag = random_program(&mut rng, &ProgramShape::small(4));
        let k = ag.knowledge_literals().unwrap();
        let phi = oracle::random_consistent_clause(&mut rng, 4, 1, 2);
        prop_assume!(k.union(&phi).is_consistent());
        let cfg = DynamicsConfig::default();
        let q = DnfFormula::single(phi.clone());
        let b = dynamics::revise_belief(&ag, &phi, &cfg).unwrap();
        prop_assert!(b.query(Attitude::Belief, &q).unwrap());
        let d = dynamics::revise_desire(&ag, &phi, &cfg).unwrap();
        prop_assert!(d.query(Attitude::Goal, &q).unwrap());
    }

    #[test]
    fn contraction_succeeds_outside_knowledge(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 7);
        let ag = random_program(&mut rng, &ProgramShape::small(4));
        let q = oracle::random_literal_disjunction(&mut rng, 4);
        prop_assume!(!ag.query(Attitude::Knowledge, &q).unwrap());
        let cfg = DynamicsConfig::default();
        let b = dynamics::contract_belief(&ag, &q, &cfg).unwrap();
        prop_assert!(!b.query(Attitude::Belief, &q).unwrap());
        let d = dynamics::contract_desire(&ag, &q, &cfg).unwrap();
        prop_assert!(!d.query(Attitude::Goal, &q).unwrap());
    }

    #[test]
    fn announcement_and_revision_commute_with_models(seed in any::<u64>(), symbols in 1usize..5) {
        let cfg = DynamicsConfig::strict();
        let mut rng = trial_rng(seed, 8);
        let ag = random_program(&mut rng, &ProgramShape::small(symbols));
        let op = [Operation::Announce, Operation::ReviseBelief, Operation::ReviseDesire]
            [rng.gen_range(0..3)];
        let phi = oracle::random_argument(&mut rng, &ag, op);
        let c = oracle::compare(&ag, op, &phi, &cfg).unwrap();
        prop_assert!(!c.mismatch.any(), "{}", c.report());
    }

    #[test]
    fn induced_models_are_stable_under_file_round_trip(seed in any::<u64>()) {
        let ag = random_program(&mut trial_rng(seed, 9), &ProgramShape::small(3));
        let again = parse_agent(&write_agent(&ag)).unwrap();
        let a = induced_model(&ag, DEFAULT_WORLD_CAP).unwrap();
        let b = induced_model(&again, DEFAULT_WORLD_CAP).unwrap();
        prop_assert!(models_equal(&a, &b).unwrap());
    }
}
