use polyszego_core::format::{parse_real, parse_zzbar, to_pretty};
use polyszego_core::{szego_project, verify_decomposition, Ellipse};

#[test]
fn library_example() -> polyszego_core::Result<()> {
    let e = Ellipse::centered(2, 1);
    let d = szego_project(&e, &parse_zzbar("zbar")?)?;
    assert_eq!(to_pretty(&d.projection), "(3/5)*z");
    assert!(verify_decomposition(&d, &e)?.passed());

    let u = e.to_ellipsoid().harmonic_extension(&parse_real("x^2", 2)?)?;
    assert_eq!(to_pretty(&u), "(4/5)*x^2 + (-4/5)*y^2 + (4/5)");
    Ok(())
}
