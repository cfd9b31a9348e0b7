//! Searches for every basket with P[-1..-5] = (0, 1, 0, 1, 0).

use std::time::Instant;

use qfano::enumeration::{enumerate, EnumerationConstraints};

fn main() -> Result<(), qfano::Error> {
    let constraints = EnumerationConstraints {
        max_index: Some(30),
        ..Default::default()
    }
    .with(1, 0)
    .with(2, 1)
    .with(3, 0)
    .with(4, 1)
    .with(5, 0);

    let start = Instant::now();
    let found = enumerate(&constraints)?;
    println!("{} basket(s) in {:.2?}", found.len(), start.elapsed());
    for b in &found {
        let profile = b.profile(12)?;
        let values: Vec<String> = profile.values.iter().map(|(_, v)| v.to_string()).collect();
        println!(
            "{b}  P[-1] = {}  -K^3 = {}  P = ({})",
            b.p1(),
            b.anti_k3(),
            values.join(",")
        );
    }
    Ok(())
}
