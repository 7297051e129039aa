//! Random peripheral structures from the ball of reduced words, written in
//! the pattern file format.

use peripheral::cutsets::certify_lower_bound;
use peripheral::genericity::{random_peripheral_structure, LengthModel};

fn main() -> peripheral::Result<()> {
    for seed in 0..3 {
        let p = random_peripheral_structure(2, 400, 3, seed, LengthModel::Ball)?;
        print!("{}", p.to_file_string());
        println!("# {:?}\n", certify_lower_bound(&p));
    }
    Ok(())
}
