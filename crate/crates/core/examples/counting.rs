//! Closed-form word counts checked against enumeration.

use peripheral::words::{count_cyclically_reduced, count_reduced, count_with_cyclic_reduction, enumerate_reduced_words};

fn main() -> peripheral::Result<()> {
    for rank in [2, 3] {
        println!("rank {rank}");
        for n in 1..=8 {
            let enumerated = enumerate_reduced_words(rank, n, 10_000_000)?.filter(|w| w.is_cyclically_reduced()).count();
            println!(
                "  n={n:2} reduced {:>8} cyclically reduced {:>8} (enumerated {enumerated})",
                count_reduced(rank, n),
                count_cyclically_reduced(rank, n)
            );
        }
    }
    println!("words of length n conjugate to a fixed cyclically reduced word of length 2, rank 2:");
    for n in 2..=10 {
        println!("  n={n:2} {}", count_with_cyclic_reduction(2, n, 2));
    }
    Ok(())
}
