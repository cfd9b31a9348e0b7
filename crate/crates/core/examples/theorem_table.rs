//! Worst-case bounds over m^_0 <= 8 for each image dimension, aggregated
//! case by case and compared with the closed-form table.

use qfano::birationality::{aggregate_bounds, theorem8_table};

fn main() -> Result<(), qfano::Error> {
    println!("{:>3} {:>6} {:>6} {:>6}", "r", "dim 3", "dim 2", "dim 1");
    for r in 2..=24 {
        let agg = aggregate_bounds(r)?;
        assert_eq!(agg, theorem8_table(r)?);
        println!("{r:>3} {:>6} {:>6} {:>6}", agg[&3], agg[&2], agg[&1]);
    }
    Ok(())
}
