//! Emitting and re-parsing documents is the identity.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tpa_core::io::{self, PathOrder};
use tpa_core::{random, Error, SemisimpleSequence};

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn quiver_documents(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let alg = random::random_algebra(&mut r, 6, 12, 4);
        let text = io::emit_quiver(&alg);
        prop_assert_eq!(io::parse_quiver(&text).unwrap(), alg);
    }

    #[test]
    fn module_documents(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let alg = random::random_algebra(&mut r, 5, 8, 3);
        let m = random::random_monomial_module(&mut r, &alg, 3, 40);
        let text = io::emit_module(&alg, &m);
        prop_assert_eq!(io::parse_module(&alg, &text, PathOrder::RightToLeft).unwrap(), m);
    }

    #[test]
    fn sequence_documents(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let alg = random::random_algebra(&mut r, 5, 8, 3);
        let rows = (0..=alg.bound())
            .map(|_| (0..alg.vertex_count()).map(|_| r.gen_range(0..50u64)).collect())
            .collect();
        let s = SemisimpleSequence::from_rows(rows).unwrap();
        prop_assert_eq!(io::parse_sequence(&alg, &io::emit_sequence(&s)).unwrap(), s);
    }

    #[test]
    fn paths_read_in_either_direction(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let alg = random::random_algebra(&mut r, 4, 8, 3);
        let q = alg.quiver();
        for v in q.vertices() {
            for p in q.enumerate_paths(v, alg.bound()) {
                let written = q.format_path(&p);
                prop_assert_eq!(&io::parse_path(&alg, &written, PathOrder::RightToLeft).unwrap(), &p);
                if !p.is_trivial() {
                    let flipped: Vec<&str> = written.split('*').rev().collect();
                    prop_assert_eq!(&io::parse_path(&alg, &flipped.join("*"), PathOrder::LeftToRight).unwrap(), &p);
                }
            }
        }
    }
}

#[test]
fn unknown_vertex_and_zero_bound_are_positioned_errors() {
    for (text, line, column) in [
        ("L = 1\nvertices a b\nx: a -> c\n", 3, 9),
        ("name z\nL = 0\nvertices a\n", 2, 5),
        ("L = 2\nvertices a\nx: a -> a\nx: a -> a\n", 4, 1),
    ] {
        match io::parse_quiver(text) {
            Err(Error::Parse(e)) => assert_eq!((e.line, e.column), (line, column), "{text:?}"),
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }
}
