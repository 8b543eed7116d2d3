//! Splitting modular data into prime factors.
use modcat::constructors::{deligne_product, diagonal_dn, double_abelian};
use modcat::fusion::DEFAULT_MAX_RANK;

fn main() -> modcat::Result<()> {
    let toric = double_abelian(&[2]);
    let d3 = diagonal_dn(3)?;
    for (name, md) in [("toric code", toric.clone()), ("C(ℤ/3)", double_abelian(&[3])), ("toric ⊠ D_3", deligne_product(&toric, &d3))] {
        let f = md.prime_factorize(DEFAULT_MAX_RANK)?;
        println!("{name}: rank {}, prime: {}", md.rank(), f.is_prime);
        println!("  prime subrings: {:?}", f.prime_subrings.iter().map(|s| s.members().to_vec()).collect::<Vec<_>>());
        for fac in &f.factorizations {
            println!("  factorization: {:?}", fac.iter().map(|s| s.members().to_vec()).collect::<Vec<_>>());
        }
    }
    Ok(())
}
