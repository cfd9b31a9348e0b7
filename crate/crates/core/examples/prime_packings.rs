//! Prime packings: two points (b1, r1), (b2, r2) with |b1 r2 - b2 r1| = 1
//! merge into (b1 + b2, r1 + r2).

use qfano::basket::parse_points;
use qfano::enumeration::{packing_closure, prime_packing};

fn main() -> Result<(), qfano::Error> {
    let points = parse_points("(1,2),(1,3)")?;
    let packed = prime_packing(&points, 0, 1)?;
    println!(
        "(1,2) + (1,3) -> {:?}",
        packed.iter().map(|q| (q.b(), q.r())).collect::<Vec<_>>()
    );

    let start = parse_points("9x(1,2),(1,3),(1,7)")?;
    let closure = packing_closure(&start);
    println!(
        "{} baskets reachable from 9x(1,2),(1,3),(1,7):",
        closure.len()
    );
    for points in &closure {
        let terms: Vec<String> = points
            .iter()
            .map(|q| format!("({},{})", q.b(), q.r()))
            .collect();
        println!("  {}", terms.join(","));
    }
    Ok(())
}
