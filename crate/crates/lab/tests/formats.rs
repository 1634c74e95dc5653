use f2lab::certificate::{from_text, to_text};
use f2lab_core::adversary::{CounterexampleCertificate, NamedCrossing, Side};
use f2lab_core::free_group::{free_reduce, Letter, Word};
use f2lab_core::machines::random_machine;
use f2lab_core::simulator::{parse_machine, Direction, Machine};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..4usize, 0..=max).prop_map(|v| Word::new(v.into_iter().map(|i| Letter::ALL[i]).collect()))
}

fn crossing() -> impl Strategy<Value = NamedCrossing> {
    (any::<bool>(), "[a-z][a-z0-9_]{0,6}").prop_map(|(lr, state)| NamedCrossing {
        direction: if lr { Direction::LR } else { Direction::RL },
        state,
    })
}

prop_compose! {
    fn certificate()(
        machine_name in "[a-z][a-z0-9_.-]{0,12}",
        digest in "[0-9a-f]{64}",
        strict_alphabet in any::<bool>(),
        n in 0usize..10_000,
        checkpoint in 0usize..10_000,
        word1 in word(30),
        word2 in word(30),
        crossing in prop::collection::vec(crossing(), 0..6),
        right in any::<bool>(),
        hybrid in word(30),
        accept_word2 in any::<bool>(),
        accept_hybrid in any::<bool>(),
        steps_word2 in any::<u64>(),
        steps_hybrid in any::<u64>(),
    ) -> CounterexampleCertificate {
        CounterexampleCertificate {
            machine_name,
            machine_digest: digest,
            strict_alphabet,
            n,
            checkpoint,
            word1,
            word2,
            crossing,
            side: if right { Side::Right } else { Side::Left },
            hybrid_reduced: free_reduce(&hybrid),
            hybrid,
            accept_word2,
            accept_hybrid,
            steps_word2,
            steps_hybrid,
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn certificates_round_trip(c in certificate()) {
        let text = to_text(&c);
        let parsed = from_text(&text).unwrap();
        prop_assert_eq!(&parsed, &c);
        prop_assert_eq!(to_text(&parsed), text);
    }

    #[test]
    fn random_machine_files_round_trip(seed in any::<u64>(), k in 3usize..9) {
        let m = random_machine(&mut ChaCha8Rng::seed_from_u64(seed), k);
        let text = m.to_string();
        let parsed = parse_machine(&text).unwrap();
        prop_assert_eq!(&parsed, &Machine::OneTape(m));
        prop_assert_eq!(parsed.to_string(), text);
    }
}
