//! The congruence property: ker ρ contains Γ(ord T).
use modcat::constructors::{diagonal_dn, double_abelian};
use modcat::sl2z::{congruence_check, renormalizations, SL2Word};

fn main() -> modcat::Result<()> {
    let w = SL2Word::parse("stst")?;
    println!("{w} = {:?}", w.matrix()?);

    let md = double_abelian(&[3]);
    for rep in renormalizations(&md)? {
        println!("λ = {}, μ = {}, canonical: {}", rep.lambda, rep.mu, rep.canonical);
    }
    for (name, md) in [("C(ℤ/3)", md), ("D_5", diagonal_dn(5)?)] {
        let r = congruence_check(&md)?;
        println!(
            "{name}: ord T = {}, level {}, {} cosets, {} Schreier generators, all scalar: {}, all one: {:?}",
            r.t_order,
            r.level,
            r.cosets,
            r.generators,
            r.all_scalar(),
            r.all_one
        );
    }
    Ok(())
}
