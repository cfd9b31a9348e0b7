//! Birationality bounds for a few geometric cases, and the epsilon
//! criterion behind them.

use qfano::birationality::{birational_bound, epsilon, refine_zeta, GenusClass, GeometricCase};

fn show(label: &str, case: &GeometricCase) -> Result<(), qfano::Error> {
    let b = birational_bound(case)?;
    println!(
        "{label}: m >= {} ({}; thresholds {})",
        b.m_min, b.theorem, b.thresholds
    );
    for note in &b.notes {
        println!("    {note}");
    }
    Ok(())
}

fn main() -> Result<(), qfano::Error> {
    show(
        "image dim 3, m^_0 = 8",
        &GeometricCase::new(8, 3, 5, GenusClass::Unknown)?,
    )?;
    show(
        "image dim 2, m^_0 = 8, r = 2",
        &GeometricCase::new(8, 2, 2, GenusClass::Unknown)?,
    )?;
    show(
        "curve image, r = 3",
        &GeometricCase::new(8, 1, 3, GenusClass::Unknown)?,
    )?;
    show(
        "curve image, m1 = 6",
        &GeometricCase::new(2, 1, 5, GenusClass::Positive)?.with_m1(6),
    )?;
    show("standard", &GeometricCase::standard(1)?)?;

    let case = GeometricCase::new(4, 2, 1000, GenusClass::Positive)?;
    let zeta = refine_zeta(&case)?;
    println!("refined zeta for m^_0 = 4: {zeta}");
    for m in [20, 24, 28] {
        let (eps, eps0) = epsilon(&case, m, &zeta);
        println!("  eps({m}) = {eps}, ceil = {eps0}");
    }
    Ok(())
}
