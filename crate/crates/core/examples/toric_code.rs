//! The toric code as the double of ℤ/2: verification, Gauss sums, modular relations.
use modcat::constructors::double_abelian;
use modcat::fusion::DEFAULT_MAX_RANK;

fn main() -> modcat::Result<()> {
    let md = double_abelian(&[2]);
    println!("rank {}", md.rank());
    println!("twists: {:?}", md.twists().iter().map(|t| t.to_string()).collect::<Vec<_>>());

    let report = md.validate_premodular(DEFAULT_MAX_RANK);
    println!("premodular axioms hold: {}", report.is_valid());

    let modularity = md.is_modular()?;
    println!("modular: {} (S² = dim·C: {})", modularity.modular, modularity.s_squared_is_dim_c);
    let g = md.gauss_sums()?;
    println!("dim = {}, τ⁺ = {}, τ⁻ = {}", md.global_dim(), g.plus, g.minus);
    println!("anomaly free: {}", md.is_anomaly_free()?);
    println!("(ST)³ ∝ S², S⁴ = 1: {}", md.verify_modular_relations()?.holds());
    println!("fusion from Verlinde matches: {}", md.verlinde_matches()?);
    Ok(())
}
