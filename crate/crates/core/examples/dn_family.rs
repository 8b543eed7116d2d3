//! The diagonal family D_N for odd N and its Gauss sums.
use modcat::constructors::diagonal_dn;

fn main() -> modcat::Result<()> {
    for n in [3, 5, 7, 9] {
        let md = diagonal_dn(n)?;
        let g = md.gauss_sums()?;
        println!(
            "D_{n}: rank {}, dim {}, τ⁺ ≈ {:.4}, anomaly free: {}",
            md.rank(),
            md.global_dim(),
            g.plus.approx(),
            md.is_anomaly_free()?
        );
    }
    // even N is not in the family
    println!("D_4: {}", diagonal_dn(4).unwrap_err());
    Ok(())
}
