use f2lab_core::adversary::{find_checkpoint, side_of, Side};
use f2lab_core::free_group::{Letter, Word};
use f2lab_core::machines::{build_always_accept, build_parity_cheat, build_quad_cancel, random_machine};
use f2lab_core::simulator::{run, run_traced, splice_steps, Direction, MachineSpec, Move, SpecBuilder, Verdict};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SYMBOLS: [&str; 5] = ["a", "b", "A", "B", "_"];

/// Moves right over the input and accepts on the first blank.
fn sweeper() -> MachineSpec {
    let mut b = SpecBuilder::new(&["sweep", "acc", "rej"], &SYMBOLS, "_", "sweep", "acc", "rej");
    for s in ["a", "b", "A", "B"] {
        b.rule("sweep", s, "sweep", s, Move::R);
    }
    b.rule("sweep", "_", "acc", "_", Move::R);
    b.build().unwrap()
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, n: usize) -> Word {
    Word::new((0..n).map(|_| Letter::ALL[rng.random_range(0..4)]).collect())
}

#[test]
fn sweeper_examples() {
    let m = sweeper();
    let t = run_traced(&m, &w("abABbaBA"), 100);
    assert_eq!(t.outcome.verdict, Verdict::Accepted);
    assert_eq!(t.outcome.steps, 9);
    let sweep = m.header().state_id("sweep").unwrap();
    for c in 1..=8 {
        let seq = t.crossings_at(c);
        assert_eq!(seq.len(), 1, "c={c}");
        assert_eq!(seq[0].direction, Direction::LR);
    }
    let seq = t.crossings_at(3);
    assert_eq!(seq[0].state, sweep);
    assert!(t.crossings_at(0).is_empty());
    assert!(t.crossings_at(20).is_empty());
    assert_eq!(find_checkpoint(&t, 8, 1).unwrap(), Some((2, 1)));
    assert_eq!(find_checkpoint(&t, 8, 0).unwrap(), None);
    assert!(find_checkpoint(&t, 4, 1).is_err());

    let u = run_traced(&m, &w("aaaaAAAA"), 100);
    let v = run_traced(&m, &w("bbbbBBBB"), 100);
    assert_eq!(splice_steps(&u, &v, 4).unwrap(), 9);
    assert_eq!(splice_steps(&v, &u, 4).unwrap(), 9);
}

#[test]
fn bundled_examples() {
    let aa = build_always_accept();
    let t = run_traced(&aa, &w("aA"), 10);
    assert!(t.visits(1) >= 1);
    assert!(t.touched_boundaries().all(|c| t.crossings_at(c).len() <= 1));
    assert_eq!(run(&aa, &w("abAB"), 10).steps, 1);
    assert_eq!(run(&aa, &Word::empty(), 10).verdict, Verdict::Accepted);

    let q = build_quad_cancel();
    assert_eq!(run(&q, &w("aA"), 1000).verdict, Verdict::Accepted);
    assert_eq!(run(&q, &w("ab"), 1000).verdict, Verdict::Rejected);
    let out = run(&q, &w("aA"), 0);
    assert_eq!((out.verdict, out.steps), (Verdict::BudgetExceeded, 0));

    let p = build_parity_cheat();
    let t = run_traced(&p, &w("aaaaAAAA"), 100);
    let seq = t.crossings_at(2);
    assert_eq!(seq.len(), 1);
    assert_eq!(seq[0].direction, Direction::LR);
    assert_eq!(seq[0].state, p.header().state_id("p_ee").unwrap());
    assert_eq!(t.crossing_sequence_at(2).render(p.header()), "LR:p_ee");
}

#[test]
fn traced_and_plain_runs_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut halted = 0;
    for trial in 0..10_000 {
        let k = rng.random_range(3..=6);
        let m = random_machine(&mut rng, k);
        let n = rng.random_range(0..=16);
        let input = random_word(&mut rng, n);
        let budget = rng.random_range(0..2_000);
        let plain = run(&m, &input, budget);
        let t = run_traced(&m, &input, budget);
        assert_eq!(plain, t.outcome, "trial {trial}");
        assert_eq!(t.total_visits(), t.outcome.steps + 1, "trial {trial}");
        if t.outcome.verdict.is_halted() {
            halted += 1;
        } else {
            assert_eq!(t.outcome.steps, budget);
        }
        let (lo, hi) = t.visited_range();
        assert!(lo <= t.outcome.final_head && t.outcome.final_head <= hi);
        let crossings: usize = t.touched_boundaries().map(|c| t.crossings_at(c).len()).sum();
        assert_eq!(crossings as u64, t.outcome.steps, "every step moves the head");
        for c in t.touched_boundaries() {
            let seq = t.crossings_at(c);
            assert!(seq.len() as u64 <= 2 * t.visits(c), "trial {trial} c={c}");
            // Directions alternate, starting away from the start cell.
            let first = if c >= 1 { Direction::LR } else { Direction::RL };
            for (i, x) in seq.iter().enumerate() {
                let expect = if i % 2 == 0 { first } else { other(first) };
                assert_eq!(x.direction, expect);
            }
            // The side is the parity of the sequence length.
            let right = t.outcome.final_head > c;
            let start_right = c < 1;
            assert_eq!(right, start_right ^ (seq.len() % 2 == 1), "trial {trial} c={c}");
            assert_eq!(t.left_steps(c) + t.right_steps(c), t.outcome.steps);
        }
    }
    assert!(halted > 1000, "only {halted} runs halted");
}

fn other(d: Direction) -> Direction {
    match d {
        Direction::LR => Direction::RL,
        Direction::RL => Direction::LR,
    }
}

#[test]
fn side_matches_sequence_parity() {
    let p = build_parity_cheat();
    let t = run_traced(&p, &w("abbaABBA"), 100);
    for c in 2..4 {
        assert_eq!(side_of(&t, c), Side::Right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn runs_are_deterministic(seed in any::<u64>(), n in 0usize..20, budget in 0u64..5_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_machine(&mut rng, 5);
        let input = random_word(&mut rng, n);
        let a = run_traced(&m, &input, budget);
        let b = run_traced(&m, &input, budget);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn larger_budgets_do_not_change_halting_runs(seed in any::<u64>(), n in 0usize..20, budget in 0u64..3_000, extra in 0u64..3_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_machine(&mut rng, 4);
        let input = random_word(&mut rng, n);
        let a = run(&m, &input, budget);
        let b = run(&m, &input, budget + extra);
        if a.verdict.is_halted() {
            prop_assert_eq!(a, b);
        } else {
            prop_assert_eq!(a.steps, budget);
            prop_assert!(b.steps >= budget);
        }
    }
}
