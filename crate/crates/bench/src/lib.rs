//! Input generators shared by the benchmarks.

use dpl_core::oracle::{self, random_program, trial_rng, ProgramShape};
use dpl_core::program::StratifiedBase;
use dpl_core::AgentProgram;
use rand::Rng;

/// A conjunctive base with `n` distinct entries of 1 to 3 literals spread over
/// `n / 4` strata. The vocabulary grows with `n` so that conflicts stay
/// frequent but not universal.
pub fn conjunctive_base(n: usize, seed: u64) -> StratifiedBase {
    let mut rng = trial_rng(seed, n as u64);
    let symbols = (n / 8).max(8);
    let strata = (n / 4).max(1) as u32;
    let mut base = StratifiedBase::new();
    while base.len() < n {
        let c = oracle::random_clause(&mut rng, symbols, 1, 3);
        base.insert(c.to_formula(), rng.gen_range(0..strata));
    }
    base
}

/// A random coherent program over `symbols` symbols with a few plans.
pub fn program(symbols: usize, seed: u64) -> AgentProgram {
    let shape = ProgramShape {
        symbols,
        max_strata: 4,
        max_formulas: 2,
        max_literals: 3,
        max_plans: 3,
    };
    random_program(&mut trial_rng(seed, symbols as u64), &shape)
}
