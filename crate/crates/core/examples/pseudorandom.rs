//! Edge frequencies between vertex pairs of the Whitehead graph of a long
//! random word cluster around 1/(r(2r-1)).

use peripheral::genericity::{chunk_rng, pair_frequencies, uniform_pair_frequency};
use peripheral::words::{random_cyclically_reduced_word, CyclicWord};

fn main() -> peripheral::Result<()> {
    let mut rng = chunk_rng(9, 0);
    for rank in 2..=4 {
        let w = random_cyclically_reduced_word(rank, 10_000, &mut rng);
        let f = pair_frequencies(rank, &CyclicWord::of(&w)?);
        let centre = uniform_pair_frequency(rank);
        let spread = f.iter().map(|x| (x - centre).abs()).fold(0.0, f64::max);
        println!("rank {rank}: {} pairs, centre {centre:.4}, largest deviation {spread:.4}", f.len());
    }
    Ok(())
}
