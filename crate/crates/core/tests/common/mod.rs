#![allow(dead_code)]

use horadam::{make_sequence, Named, Rational, Sequence};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut StdRng, nonzero: bool) -> Rational {
    loop {
        let num = rng.gen_range(-4i64..=4);
        let den = rng.gen_range(1i64..=3);
        if nonzero && num == 0 {
            continue;
        }
        return Rational::new(num, den).unwrap();
    }
}

/// A sequence with small random rational parameters and initials, p, q != 0.
pub fn random_sequence(rng: &mut StdRng) -> Sequence {
    let p = small_rational(rng, true);
    let q = small_rational(rng, true);
    make_sequence(p, q, small_rational(rng, false), small_rational(rng, false)).unwrap()
}

/// Two sequences sharing a random recurrence.
pub fn random_pair(rng: &mut StdRng) -> (Sequence, Sequence) {
    let g = random_sequence(rng);
    let h = g
        .with_initials(small_rational(rng, false), small_rational(rng, false))
        .unwrap();
    (g, h)
}

/// The base/companion pairs (F,L), (P,Q), (J,j).
pub fn named_pairs() -> Vec<(Sequence, Sequence)> {
    vec![
        (Named::Fibonacci.sequence(), Named::Lucas.sequence()),
        (Named::Pell.sequence(), Named::PellLucas.sequence()),
        (Named::Jacobsthal.sequence(), Named::JacobsthalLucas.sequence()),
    ]
}

/// Runs the CLI in-process: (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = horadam::cli::run(
        std::iter::once("horadam").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
