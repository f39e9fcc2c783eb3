//! Seeded brute-force search for a non-Koszul quadratic presentation, with
//! literal bar homology as the only oracle. Run with `--ignored`; the first
//! hit is frozen in `tests/koszul_verdicts.rs`.

use koszulkit_core::exactlin::Rational;
use koszulkit_core::graded::{Generator, TruncationBounds};
use koszulkit_core::koszul::bar_tor_dims;
use koszulkit_core::presentations::{canonical_comm_pairs, QuadraticCommPresentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_presentation(rng: &mut impl Rng) -> QuadraticCommPresentation {
    let n = rng.gen_range(3..=4);
    let gens: Vec<Generator> = (0..n).map(|i| Generator::new(format!("x{i}"), rng.gen_range(1..=2) * 2)).collect();
    let pairs = canonical_comm_pairs(&gens);
    let count = rng.gen_range(2..=pairs.len().min(5));
    let relations = (0..count)
        .map(|_| {
            let lead = pairs[rng.gen_range(0..pairs.len())];
            let deg = gens[lead.0].degree + gens[lead.1].degree;
            pairs
                .iter()
                .filter(|p| gens[p.0].degree + gens[p.1].degree == deg)
                .filter_map(|p| {
                    let c = if *p == lead { rng.gen_range(1..=1) } else { rng.gen_range(-1..=1) * i64::from(rng.gen_bool(0.4)) };
                    (c != 0).then(|| (Rational::from_integer(c), p.0, p.1))
                })
                .collect()
        })
        .collect();
    QuadraticCommPresentation::from_terms(gens, relations).expect("homogeneous by construction")
}

#[test]
#[ignore]
fn search_non_koszul() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bounds = TruncationBounds::new(4, 16).unwrap();
    for attempt in 0..2000 {
        let p = random_presentation(&mut rng);
        let tor = bar_tor_dims(&p, bounds);
        if let Some(hit) = tor.first_off_diagonal() {
            println!("attempt {attempt}: {hit:?}\n{p:?}");
            return;
        }
    }
    panic!("no hit");
}
