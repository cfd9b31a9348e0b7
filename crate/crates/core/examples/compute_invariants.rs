//! Volume, Cartier index and the first anti-plurigenera of a basket.
//!
//! cargo run --example compute_invariants -- "9x(1,2),(1,3),(1,7)" 0

use qfano::FormalBasket;

fn main() -> Result<(), qfano::Error> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "9x(1,2),(1,3),(1,7)".into());
    let p1: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let basket = FormalBasket::parse(&text, p1)?;
    println!("basket {basket}  P[-1] = {p1}");
    println!("-K^3 = {}", basket.anti_k3());
    println!("r = {}, g = {}", basket.cartier_index(), basket.genus());

    let profile = basket.profile(12)?;
    for (m, v) in &profile.values {
        println!("P[-{m}] = {v}");
    }
    match profile.mhat0 {
        Some(m) => println!("m^_0 = {m}"),
        None => println!("P[-m] < 2 up to m = 12"),
    }

    // Serre duality: P[-m] = -chi((m+1)K)
    for m in 1..=5 {
        assert_eq!(basket.anti_plurigenus_exact(m), -basket.chi_mk(m + 1));
    }
    Ok(())
}
