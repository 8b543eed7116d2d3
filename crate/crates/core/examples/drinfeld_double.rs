//! The Drinfeld double D(S₃): labels, dimensions and twists.
use modcat::constructors::drinfeld_double_labeled;
use modcat::groups::{builtin, DEFAULT_ORDER_BOUND};

fn main() -> modcat::Result<()> {
    let g = builtin::s3();
    let (md, labels) = drinfeld_double_labeled(&g, DEFAULT_ORDER_BOUND)?;
    println!("rank {}, dim {}", md.rank(), md.global_dim());
    for (k, l) in labels.iter().enumerate() {
        println!(
            "  simple {k}: class {} character {} dim {} twist {}",
            l.class,
            l.character,
            md.dims()[k],
            md.twists()[k]
        );
    }
    println!("modular: {}", md.is_modular()?.modular);
    println!("anomaly free: {}", md.is_anomaly_free()?);
    Ok(())
}
