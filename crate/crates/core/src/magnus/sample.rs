//! Random words for property checks and the CLI.

use super::word::FreeWord;
use super::relator_word;
use rand::Rng;

/// A random reduced word with up to `max_len` syllables and exponents in [−3, 3].
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, rank: usize, max_len: usize) -> FreeWord {
    let n = rng.gen_range(0..=max_len);
    let letters: Vec<(usize, i64)> = (0..n)
        .map(|_| {
            let e = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (rng.gen_range(1..=rank), e)
        })
        .collect();
    FreeWord::from_letters(rank, letters)
}

/// A random word in the second Zassenhaus term: products of conjugated squares and commutators.
pub fn random_depth2_word<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> FreeWord {
    let mut w = FreeWord::identity(rank);
    for _ in 0..rng.gen_range(1..=3) {
        let a = random_word(rng, rank, 3);
        let piece = if rng.gen_bool(0.5) {
            FreeWord::commutator(&a, &random_word(rng, rank, 3))
        } else {
            a.pow(2)
        };
        w = w.mul(&piece.conjugate_by(&random_word(rng, rank, 2)));
    }
    w
}

/// A random word in the third Zassenhaus term.
pub fn random_depth3_word<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> FreeWord {
    let mut w = FreeWord::identity(rank);
    for _ in 0..rng.gen_range(1..=3) {
        let piece = match rng.gen_range(0..4) {
            0 => {
                let ab = FreeWord::commutator(&random_word(rng, rank, 3), &random_word(rng, rank, 3));
                FreeWord::commutator(&ab, &random_word(rng, rank, 3))
            }
            1 => FreeWord::gen(rank, rng.gen_range(1..=rank)).pow(4),
            2 => FreeWord::commutator(&random_word(rng, rank, 2), &random_word(rng, rank, 2)).pow(2),
            _ => {
                let np = 4 * rng.gen_range(1..50u64) + 1;
                let y = random_depth2_word(rng, rank);
                relator_word(rng.gen_range(1..=rank), np, &y).expect("norm is 1 mod 4")
            }
        };
        w = w.mul(&piece.conjugate_by(&random_word(rng, rank, 2)));
    }
    w
}
