//! Exact arithmetic in cyclotomic fields.
use modcat::cyclotomic::sqrt_rational;
use modcat::Cyc;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> modcat::Result<()> {
    let z5 = Cyc::root(5, 1);
    // 1 + ζ + ζ² + ζ³ + ζ⁴ = 0
    let sum: Cyc = (0..5).map(|k| z5.pow(k)).sum();
    println!("sum of fifth roots: {sum}");

    // golden ratio as -ζ5² - ζ5³
    let phi = -(&z5.pow(2) + &z5.pow(3));
    println!("phi = {phi} ≈ {:.6}", phi.approx().re);
    println!("phi² - phi - 1 = {}", &(&phi * &phi - &phi) - &Cyc::one());

    let sqrt5 = sqrt_rational(&BigRational::from_integer(BigInt::from(5)))?;
    println!("√5 = {sqrt5} (conductor {})", sqrt5.conductor());
    println!("2·phi - 1 == √5: {}", &(&phi * &Cyc::from_int(2)) - &Cyc::one() == sqrt5);

    // mixing conductors lifts to the lcm
    let w = &Cyc::root(3, 1) * &Cyc::root(4, 1);
    println!("ζ3·ζ4 = {w}, conductor {}", w.conductor());
    println!("galois σ_5(ζ12) = {}", Cyc::root(12, 1).galois(5));
    println!("1/phi = {}", phi.inv()?);
    Ok(())
}
