//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use f2lab::certificate;
use f2lab_core::adversary::{
    check_splice, epsilon_bound, min_guarantee_n, run_adversary, verify_certificate, AdversaryConfig,
    AdversaryOutcome, Mode,
};
use f2lab_core::bench::{fit_exponent, run_family, FamilyKind, DEFAULT_SIZES};
use f2lab_core::free_group::{
    family_alpha, free_reduce, gen_lemma_family, is_trivial, prefix_element, verify_family, Letter, Word,
};
use f2lab_core::machines::{
    build_always_accept, build_parity_cheat, build_quad_cancel, build_twotape_linear, random_machine, CATALOG,
};
use f2lab_core::simulator::{parse_machine, run_traced, Machine, RunTrace, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_words(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let next: Vec<Word> = frontier
            .iter()
            .flat_map(|v| {
                Letter::ALL.iter().map(move |&l| {
                    let mut ls = v.letters().to_vec();
                    ls.push(l);
                    Word::new(ls)
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Half uniform words, half trivial words built by inserting cancelling
/// pairs, some of those with one letter changed.
fn random_words(count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.random_range(0..=max_len);
            let letter = |rng: &mut ChaCha8Rng| Letter::ALL[rng.random_range(0..4)];
            if i % 2 == 0 {
                return Word::new((0..n).map(|_| letter(&mut rng)).collect());
            }
            let mut ls = Vec::with_capacity(n);
            while ls.len() + 2 <= n {
                let l = letter(&mut rng);
                let at = rng.random_range(0..=ls.len());
                ls.insert(at, l.inverse());
                ls.insert(at, l);
            }
            if i % 4 == 1 && !ls.is_empty() {
                let at = rng.random_range(0..ls.len());
                ls[at] = letter(&mut rng);
            }
            Word::new(ls)
        })
        .collect()
}

fn oracle_equivalence() -> Check {
    let exhaustive = all_words(8);
    ensure(exhaustive.len() == 87_381, || format!("{} words of length <= 8", exhaustive.len()))?;
    let random = random_words(10_000, 200, 1);
    let trivial_random = random.iter().filter(|w| is_trivial(w)).count();
    let mut report = Vec::new();
    for (name, m) in [
        ("quad_cancel", Machine::OneTape(build_quad_cancel())),
        ("twotape_linear", Machine::TwoTape(build_twotape_linear())),
    ] {
        let start = Instant::now();
        let mut disagreements = 0;
        for w in exhaustive.iter().chain(&random) {
            let n = w.len().max(1) as u64;
            let out = m.run(w, 64 * n * n);
            let expected = if is_trivial(w) { Verdict::Accepted } else { Verdict::Rejected };
            if out.verdict != expected {
                disagreements += 1;
            }
        }
        let elapsed = start.elapsed();
        ensure(disagreements == 0, || format!("{name}: {disagreements} disagreements"))?;
        ensure(elapsed < Duration::from_secs(60), || format!("{name}: {elapsed:?} >= 60 s"))?;
        report.push(format!("{name} {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(format!(
        "87381 exhaustive + 10000 random ({trivial_random} trivial), 0 disagreements; {}",
        report.join(", ")
    ))
}

fn exponent_contrast() -> Check {
    let mut report = Vec::new();
    for (name, m, lo, hi) in [
        ("quad_cancel", Machine::OneTape(build_quad_cancel()), 1.8, 2.2),
        ("twotape_linear", Machine::TwoTape(build_twotape_linear()), 0.9, 1.2),
    ] {
        let s = run_family(&m, FamilyKind::WorstCase, &DEFAULT_SIZES, 0, None).map_err(|e| e.to_string())?;
        ensure(s.iter().all(|x| x.verdict == Verdict::Accepted), || format!("{name}: truncated or rejected run"))?;
        let f = fit_exponent(&s).map_err(|e| e.to_string())?;
        ensure((lo..=hi).contains(&f.slope), || format!("{name}: slope {:.4} outside [{lo}, {hi}]", f.slope))?;
        ensure(f.r_squared >= 0.99, || format!("{name}: r_squared {:.5} < 0.99", f.r_squared))?;
        report.push(format!("{name} slope {:.4} r2 {:.5}", f.slope, f.r_squared));
    }
    Ok(report.join(", "))
}

fn witness_family() -> Check {
    for n in [8usize, 12, 16, 20, 24] {
        let f = gen_lemma_family(n, None, None).map_err(|e| e.to_string())?;
        ensure(f.words.len() == 1 << (n / 4), || format!("n={n}: size {}", f.words.len()))?;
        ensure(f.words.iter().all(|w| w.len() == n && is_trivial(w)), || format!("n={n}: bad word"))?;
        for t in n / 4..n / 2 {
            let mut p: Vec<_> = f.words.iter().map(|w| prefix_element(w, t).unwrap()).collect();
            p.sort();
            p.dedup();
            ensure(p.len() == f.words.len(), || format!("n={n} t={t}: prefix collision"))?;
        }
        ensure(verify_family(&f).passed(), || format!("n={n}: verify_family failed"))?;
    }
    Ok("n = 8..24: sizes 2^(n/4), all trivial, prefixes distinct for every t".into())
}

struct SpliceStats {
    triples: u64,
    nonempty: u64,
    runs: u64,
    splice_violations: Vec<String>,
    pigeonhole_violations: Vec<String>,
}

fn pigeonhole(t: &RunTrace, n: usize) -> Result<(), String> {
    for c in t.touched_boundaries() {
        let (k, v) = (t.crossings_at(c).len() as u64, t.visits(c));
        if k > 2 * v {
            return Err(format!("|crossings({c})| = {k} > 2 * visits = {}", 2 * v));
        }
    }
    let q = (n / 4) as u64;
    if q > 0 {
        let min = (n / 4..n / 2).map(|c| t.visits(c as i64)).min().unwrap();
        if min * q > t.outcome.steps + 1 {
            return Err(format!("n={n}: min visits {min} > (steps+1)/(n/4) = {}/{q}", t.outcome.steps + 1));
        }
    }
    Ok(())
}

fn splice_suite() -> SpliceStats {
    const BUDGET: u64 = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut s = SpliceStats {
        triples: 0,
        nonempty: 0,
        runs: 0,
        splice_violations: Vec::new(),
        pigeonhole_violations: Vec::new(),
    };
    let mut pairs = 0;
    while s.nonempty < 1_000 && pairs < 100_000 {
        pairs += 1;
        let k = rng.random_range(3..=6);
        let m = random_machine(&mut rng, k);
        let n = rng.random_range(1..=24);
        let letters = |rng: &mut ChaCha8Rng, n: usize| -> Vec<Letter> {
            (0..n).map(|_| Letter::ALL[rng.random_range(0..4)]).collect()
        };
        let u = letters(&mut rng, n);
        let v = if rng.random_bool(0.5) {
            let keep = rng.random_range(0..=n);
            let mut v = u[..keep].to_vec();
            v.extend(letters(&mut rng, n - keep));
            v
        } else {
            letters(&mut rng, n)
        };
        let (u, v) = (Word::new(u), Word::new(v));
        let tu = run_traced(&m, &u, BUDGET);
        let tv = run_traced(&m, &v, BUDGET);
        if !tu.outcome.verdict.is_halted() || !tv.outcome.verdict.is_halted() {
            continue;
        }
        for (w, t) in [(&u, &tu), (&v, &tv)] {
            s.runs += 1;
            if let Err(e) = pigeonhole(t, w.len()) {
                s.pigeonhole_violations.push(format!("{w}: {e}"));
            }
        }
        for c in 1..=n {
            match check_splice(&m, &u, &tu, &v, &tv, c) {
                Ok(Some(r)) => {
                    s.triples += 1;
                    s.nonempty += (r.shared_len > 0) as u64;
                }
                Ok(None) => {}
                Err(e) => s.splice_violations.push(format!("u={u} v={v} c={c}: {e}")),
            }
        }
    }
    s
}

fn splice_lemma(s: &SpliceStats) -> Check {
    ensure(s.splice_violations.is_empty(), || {
        format!("{} violations, first: {}", s.splice_violations.len(), s.splice_violations[0])
    })?;
    ensure(s.triples >= 1_000, || format!("only {} triples", s.triples))?;
    Ok(format!(
        "{} triples with equal sequences ({} non-empty), 0 violations",
        s.triples, s.nonempty
    ))
}

fn pigeonhole_bounds(s: &SpliceStats) -> Check {
    ensure(s.pigeonhole_violations.is_empty(), || {
        format!("{} violations, first: {}", s.pigeonhole_violations.len(), s.pigeonhole_violations[0])
    })?;
    Ok(format!("{} halting traced runs, 0 violations", s.runs))
}

fn refutation() -> Check {
    let cfg = AdversaryConfig {
        mode: Mode::Empirical,
        n_max: 32,
        ..AdversaryConfig::default()
    };
    let mut report = Vec::new();
    for (name, m) in [("always_accept", build_always_accept()), ("parity_cheat", build_parity_cheat())] {
        let start = Instant::now();
        let r = run_adversary(&m, name, &cfg).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(r.outcome == AdversaryOutcome::Refuted, || format!("{name}: {}", r.outcome.as_str()))?;
        ensure(elapsed < Duration::from_secs(10), || format!("{name}: {elapsed:?} >= 10 s"))?;
        let c = r.certificate.unwrap();
        verify_certificate(&m, &c, 128 * 32 * 32).map_err(|e| format!("{name}: {e}"))?;
        if name == "parity_cheat" {
            let got = (
                c.n,
                c.word1.to_string(),
                c.word2.to_string(),
                c.checkpoint,
                c.hybrid.to_string(),
                c.hybrid_reduced.to_string(),
            );
            let want = (8, "aaaaAAAA".into(), "bbaaAABB".into(), 2, "aaaaAABB".into(), "aaBB".into());
            ensure(got == want, || format!("parity_cheat certificate {got:?}"))?;
        }
        report.push(format!("{name} n={} in {:.3}s", c.n, elapsed.as_secs_f64()));
    }
    Ok(format!("{}; certificates verified from scratch", report.join(", ")))
}

fn soundness() -> Check {
    let m = build_quad_cancel();
    let mut outcomes = Vec::new();
    for (mode, cap) in [(Mode::Empirical, None), (Mode::Guaranteed, None), (Mode::Guaranteed, Some(1 << 20))] {
        let cfg = AdversaryConfig {
            mode,
            n_max: 24,
            cap,
            ..AdversaryConfig::default()
        };
        let r = run_adversary(&m, "quad_cancel", &cfg).map_err(|e| e.to_string())?;
        ensure(r.outcome != AdversaryOutcome::Refuted && r.certificate.is_none(), || {
            format!("{} refuted a correct machine", mode.as_str())
        })?;
        let collisions: u64 = r.per_n.iter().map(|l| l.search.collision_count).sum();
        ensure(collisions == 0, || format!("{}: {collisions} collisions", mode.as_str()))?;
        outcomes.push(format!("{} -> {}", mode.as_str(), r.outcome.as_str()));
    }
    Ok(outcomes.join(", "))
}

fn threshold() -> Check {
    let bound = epsilon_bound(2, family_alpha(), 4.0).map_err(|e| e.to_string())?;
    ensure(bound == 0.0625, || format!("epsilon_bound = {bound:?}"))?;
    let n = min_guarantee_n(2, 1.0 / 32.0, family_alpha(), 4.0).map_err(|e| e.to_string())?;
    ensure(n == Some(44), || format!("min_guarantee_n = {n:?}"))?;
    Ok("epsilon_bound = 0.0625, min_guarantee_n = 44".into())
}

fn round_trips() -> Check {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    for e in CATALOG {
        let path = root.join("machines").join(format!("{}.tm", e.name));
        let text = std::fs::read_to_string(&path).map_err(|err| format!("{}: {err}", path.display()))?;
        let parsed = parse_machine(&text).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(parsed == (e.build)(), || format!("{}: file differs from builder", e.name))?;
        ensure(parsed.to_string() == text, || format!("{}: not byte-identical", e.name))?;
    }
    for name in ["always_accept", "parity_cheat"] {
        let path = root.join("tests/data").join(format!("{name}.cert"));
        let text = std::fs::read_to_string(&path).map_err(|err| format!("{}: {err}", path.display()))?;
        let cert = certificate::from_text(&text).map_err(|err| err.to_string())?;
        ensure(certificate::to_text(&cert) == text, || format!("{name}.cert: not byte-identical"))?;
        ensure(!free_reduce(&cert.hybrid).is_identity(), || format!("{name}.cert: trivial hybrid"))?;
    }
    Ok(format!("{} machine files, 2 certificate files", CATALOG.len()))
}

fn main() {
    let splice = splice_suite();
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("quadratic/linear contrast", Box::new(exponent_contrast)),
        ("witness family", Box::new(witness_family)),
        ("splice lemma", Box::new(|| splice_lemma(&splice))),
        ("pigeonhole", Box::new(|| pigeonhole_bounds(&splice))),
        ("refutation end-to-end", Box::new(refutation)),
        ("soundness", Box::new(soundness)),
        ("threshold arithmetic", Box::new(threshold)),
        ("round-trips", Box::new(round_trips)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
