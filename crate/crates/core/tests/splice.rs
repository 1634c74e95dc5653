use f2lab_core::adversary::{check_splice, Side};
use f2lab_core::free_group::{gen_lemma_family, Letter, Word};
use f2lab_core::machines::{build_always_accept, build_parity_cheat, build_quad_cancel, random_machine};
use f2lab_core::simulator::{run_traced, splice_steps, MachineSpec, RunTrace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 100_000;

fn random_letters(rng: &mut ChaCha8Rng, n: usize) -> Vec<Letter> {
    (0..n).map(|_| Letter::ALL[rng.random_range(0..4)]).collect()
}

/// Half the time `v` shares a random-length prefix with `u`, which makes
/// equal crossing sequences far more common.
fn input_pair(rng: &mut ChaCha8Rng) -> (Word, Word) {
    let n = rng.random_range(1..=24);
    let u = random_letters(rng, n);
    let v = if rng.random_bool(0.5) {
        let keep = rng.random_range(0..=n);
        let mut v = u[..keep].to_vec();
        v.extend(random_letters(rng, n - keep));
        v
    } else {
        random_letters(rng, n)
    };
    (Word::new(u), Word::new(v))
}

fn pigeonhole_holds(t: &RunTrace, n: usize) -> bool {
    let q = (n / 4) as u64;
    let min = (n / 4..n / 2).map(|c| t.visits(c as i64)).min().unwrap();
    min * q <= t.outcome.steps + 1
}

fn crossing_bound_holds(t: &RunTrace) -> bool {
    t.touched_boundaries().all(|c| t.crossings_at(c).len() as u64 <= 2 * t.visits(c))
}

#[test]
fn splice_lemma_on_random_machines() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut checked, mut nonempty, mut both_sides) = (0u64, 0u64, [0u64; 2]);
    let mut trial = 0;
    while nonempty < 2_000 {
        trial += 1;
        assert!(trial < 200_000, "too few informative triples: {nonempty}");
        let k = rng.random_range(3..=6);
        let m = random_machine(&mut rng, k);
        let (u, v) = input_pair(&mut rng);
        let tu = run_traced(&m, &u, BUDGET);
        let tv = run_traced(&m, &v, BUDGET);
        if !tu.outcome.verdict.is_halted() || !tv.outcome.verdict.is_halted() {
            continue;
        }
        for t in [&tu, &tv] {
            assert!(crossing_bound_holds(t));
            if u.len() >= 4 {
                assert!(pigeonhole_holds(t, u.len()));
            }
        }
        for c in 1..=u.len() {
            match check_splice(&m, &u, &tu, &v, &tv, c) {
                Ok(Some(s)) => {
                    checked += 1;
                    if s.shared_len > 0 {
                        nonempty += 1;
                        both_sides[(s.side == Side::Right) as usize] += 1;
                    }
                    assert_eq!(splice_steps(&tu, &tv, c as i64).unwrap(), s.predicted_steps);
                }
                Ok(None) => assert!(splice_steps(&tu, &tv, c as i64).is_err()),
                Err(e) => panic!("trial {trial}: {e}\n{m}\nu={u} v={v} c={c}"),
            }
        }
    }
    assert!(checked >= 2_000);
    assert!(both_sides.iter().all(|&x| x > 50), "{both_sides:?}");
}

fn splice_all_pairs(m: &MachineSpec, n: usize) -> usize {
    let f = gen_lemma_family(n, None, None).unwrap();
    let traces: Vec<RunTrace> = f.words.iter().map(|w| run_traced(m, w, BUDGET)).collect();
    let mut checked = 0;
    for (i, u) in f.words.iter().enumerate() {
        for (j, v) in f.words.iter().enumerate() {
            for c in 1..=n {
                if check_splice(m, u, &traces[i], v, &traces[j], c).unwrap().is_some() {
                    checked += 1;
                }
            }
        }
    }
    checked
}

#[test]
fn splice_lemma_on_bundled_machines() {
    for n in [8, 12] {
        assert!(splice_all_pairs(&build_quad_cancel(), n) > 0);
        assert!(splice_all_pairs(&build_parity_cheat(), n) > 0);
        assert!(splice_all_pairs(&build_always_accept(), n) > 0);
    }
}

#[test]
fn splice_with_itself_is_the_run() {
    let m = build_quad_cancel();
    let w: Word = "abBAbaAB".parse().unwrap();
    let t = run_traced(&m, &w, BUDGET);
    for c in 1..=8 {
        assert_eq!(splice_steps(&t, &t, c).unwrap(), t.outcome.steps);
    }
}
