//! Failure of "every two-letter word occurs" decays exponentially in the
//! length; exact values for short words, sampled values for long ones.

use peripheral::genericity::{decay_fit, exact_fraction, mc_fraction, rows_to_csv, PropertySpec};

fn main() -> peripheral::Result<()> {
    let spec = PropertySpec::B(1);
    let mut rows = Vec::new();
    for n in [8, 10, 12] {
        rows.push(exact_fraction(&spec, 2, n, 10_000_000)?);
    }
    for n in (20..=80).step_by(10) {
        rows.push(mc_fraction(&spec, 2, n, 100_000, 8)?);
    }
    print!("{}", rows_to_csv(&rows));
    let fit = decay_fit(&rows)?;
    println!("failure ~ exp({:.3} - {:.4} n), r^2 = {:.4}", fit.b, fit.c, fit.r_squared);
    Ok(())
}
