//! Splits the anti-plurigenus series along residues mod r into a cubic part
//! and a line `A n + C(t)`, and compares `A` with its closed form.

use qfano::series::{decompose_series, slope_a, slope_bound_at};
use qfano::FormalBasket;

fn main() -> Result<(), qfano::Error> {
    let basket = FormalBasket::parse("9x(1,2),(1,3),(1,7)", 0)?;
    let r = basket.cartier_index();
    println!("closed form A = {}", slope_a(&basket));

    for t in [0, 1, 6, 13, 41] {
        let d = decompose_series(&basket, t)?;
        println!("t = {t:>2}: A = {}, C(t) = {}", d.a, d.c_t);
        for n in -2..=2 {
            print!("  Q({n}) = {}", d.eval(n));
        }
        println!();
    }

    let k3 = basket.anti_k3();
    for t in [2, 6, 20] {
        println!(
            "lower bound on A from t = {t}: {}",
            slope_bound_at(r, t, &k3)?
        );
    }
    Ok(())
}
